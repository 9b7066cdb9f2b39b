#include "cli_support.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "noisylab/csv.hpp"
#include "noisylab/dataio.hpp"
#include "noisylab/errors.hpp"
#include "noisylab/parallel.hpp"

namespace noisylab::cli {

void add_common(CLI::App* app, CommonFlags& flags) {
  app->add_option("--seed", flags.seed, "Base seed (default: NOISYLAB_SEED, then 1)");
  app->add_option("--threads", flags.threads, "Worker threads (default: all cores)")
      ->check(CLI::PositiveNumber);
  app->add_option("--out", flags.out, "Output directory")->capture_default_str();
}

std::uint64_t resolve_seed(const CommonFlags& flags) {
  if (flags.seed) return *flags.seed;
  if (const char* env = std::getenv("NOISYLAB_SEED"); env != nullptr && *env != '\0') {
    std::uint64_t value = 0;
    const char* end = env + std::char_traits<char>::length(env);
    const auto [ptr, ec] = std::from_chars(env, end, value);
    if (ec != std::errc() || ptr != end) {
      throw UsageError(std::string("NOISYLAB_SEED is not an unsigned integer: ") + env);
    }
    return value;
  }
  return 1;
}

unsigned resolve_threads(const CommonFlags& flags) {
  return flags.threads > 0 ? flags.threads : default_threads();
}

void add_data_flags(OptionSet& opts, DataFlags& flags) {
  opts.add("data", flags.data, "Input CSV")->required();
  opts.add_list("features", flags.features, "Feature columns (default: all unassigned columns)");
  opts.add("label", flags.label, "Ground-truth label column (default: 'label' if present)");
  opts.add("votes", flags.votes, "Positive-vote total column (default: 'votes' if present)");
  opts.add_list("annotators", flags.annotators, "One 0/1 column per annotator");
  opts.add_list("class-counts", flags.class_counts, "Positive and negative vote-count columns");
  opts.add("m", flags.m, "Group size m")->check(CLI::PositiveNumber);
  opts.flag("standardize", flags.standardize, "Standardise features to mean 0, sd 1");
}

LabelledDataset load_dataset(const DataFlags& flags) {
  const CsvTable table = read_csv(flags.data);
  ColumnSchema schema;
  schema.features = flags.features;
  if (!flags.label.empty()) {
    schema.label = flags.label;
  } else if (table.column_index("label")) {
    schema.label = "label";
  }
  schema.annotators = flags.annotators;
  schema.class_counts = flags.class_counts;
  if (!flags.votes.empty()) {
    schema.votes = flags.votes;
  } else if (flags.m && flags.annotators.empty() && flags.class_counts.empty() &&
             table.column_index("votes")) {
    schema.votes = "votes";
  }
  if (schema.features.empty() && !schema.votes && table.column_index("votes")) {
    // An unused "votes" column is never a feature.
    for (const auto& h : table.header) {
      if (h != "votes" && h != schema.label.value_or("") &&
          std::find(schema.annotators.begin(), schema.annotators.end(), h) == schema.annotators.end() &&
          std::find(schema.class_counts.begin(), schema.class_counts.end(), h) == schema.class_counts.end()) {
        schema.features.push_back(h);
      }
    }
  }
  schema.group_size = flags.m.value_or(0);
  if (schema.votes && !flags.m) throw UsageError("--m is required for a vote-total column");
  LabelledDataset data = dataset_from_table(table, schema);
  if (flags.standardize) data = standardize(data).data;
  return data;
}

void require_votes(const LabelledDataset& data, const DataFlags& flags) {
  if (!data.votes) throw UsageError("this command needs votes (--votes, --annotators or --class-counts)");
  if (!flags.m) throw UsageError("--m is required when votes are used");
}

void require_labels(const LabelledDataset& data) {
  if (!data.labels) throw UsageError("this command needs a ground-truth label column (--label)");
}

Manifest::Manifest(std::string command, std::uint64_t seed, Json config,
                   std::filesystem::path out_dir)
    : command_(std::move(command)), seed_(seed), config_(std::move(config)),
      out_dir_(std::move(out_dir)) {
  std::filesystem::create_directories(out_dir_);
}

std::filesystem::path Manifest::output(const std::string& name) {
  outputs_.push_back(name);
  return out_dir_ / name;
}

void Manifest::write() const {
  Json j;
  j["command"] = command_;
  j["version"] = NOISYLAB_VERSION;
  j["seed"] = seed_;
  j["config"] = config_;
  j["outputs"] = outputs_;
  j["failures"] = failures_;
  write_json(out_dir_ / (command_ + ".manifest.json"), j);
}

Json read_json(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw DataError(path.string() + ": " + e.what());
  }
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("cannot write " + path.string());
  out << text;
  if (!out) throw DataError("write failed: " + path.string());
}

void write_json(const std::filesystem::path& path, const Json& j) {
  write_text(path, j.dump(2) + "\n");
}

Json matrix_json(const Eigen::MatrixXd& a) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index k = 0; k < a.cols(); ++k) row.push_back(a(i, k));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json model_json(const LogisticModel& model, const std::vector<std::string>& names) {
  Json j;
  std::vector<std::string> labels{"(intercept)"};
  labels.insert(labels.end(), names.begin(), names.end());
  j["names"] = labels;
  const Eigen::VectorXd coef = model.coefficients();
  j["coefficients"] = std::vector<double>(coef.data(), coef.data() + coef.size());
  return j;
}

LogisticModel read_model(const std::filesystem::path& path, Eigen::Index dim) {
  const Json j = read_json(path);
  const Json* coef = nullptr;
  if (j.contains("coefficients")) {
    coef = &j["coefficients"];
  } else if (j.contains("model") && j["model"].contains("coefficients")) {
    coef = &j["model"]["coefficients"];
  }
  if (coef == nullptr || !coef->is_array()) {
    throw DataError(path.string() + ": no 'coefficients' array");
  }
  if (static_cast<Eigen::Index>(coef->size()) != dim + 1) {
    throw DataError(path.string() + ": expected " + std::to_string(dim + 1) + " coefficients");
  }
  Eigen::VectorXd v(dim + 1);
  for (Eigen::Index k = 0; k <= dim; ++k) {
    const auto& c = (*coef)[static_cast<std::size_t>(k)];
    if (!c.is_number()) throw DataError(path.string() + ": non-numeric coefficient");
    v[k] = c.get<double>();
  }
  return LogisticModel::from_coefficients(v);
}

namespace {

std::string scalar_text(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_float()) return format_number(v.get<double>());
  return v.dump();
}

}  // namespace

std::vector<std::string> replay_arguments(const Json& manifest) {
  if (!manifest.contains("command") || !manifest.contains("config") || !manifest.contains("seed")) {
    throw DataError("manifest lacks command, config or seed");
  }
  std::vector<std::string> args{manifest["command"].get<std::string>()};
  for (const auto& [key, value] : manifest["config"].items()) {
    if (value.is_null()) continue;
    if (value.is_boolean()) {
      if (value.get<bool>()) args.push_back("--" + key);
      continue;
    }
    if (value.is_array()) {
      if (value.empty()) continue;
      std::string joined;
      for (const auto& item : value) {
        if (!joined.empty()) joined += ',';
        joined += scalar_text(item);
      }
      args.push_back("--" + key);
      args.push_back(joined);
      continue;
    }
    if (value.is_string() && value.get<std::string>().empty()) continue;
    args.push_back("--" + key);
    args.push_back(scalar_text(value));
  }
  args.push_back("--seed");
  args.push_back(std::to_string(manifest["seed"].get<std::uint64_t>()));
  return args;
}

}  // namespace noisylab::cli
