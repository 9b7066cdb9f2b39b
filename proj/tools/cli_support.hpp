#pragma once

#include <CLI11.hpp>
#include <Eigen/Dense>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <json.hpp>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "noisylab/dataset.hpp"
#include "noisylab/models.hpp"

namespace noisylab::cli {

using Json = nlohmann::ordered_json;

// Bad flag values that CLI11 cannot catch on its own.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum ExitCode : int {
  kOk = 0,
  kInternal = 1,
  kUsage = 2,
  kData = 3,
  kConvergence = 4,
  kIdentifiability = 5,
};

// Registers options on a subcommand and remembers how to write each one back
// into the manifest config, so `replay` reproduces the exact invocation.
class OptionSet {
 public:
  explicit OptionSet(CLI::App* app) : app_(app) {}

  template <class T>
  CLI::Option* add(const std::string& name, T& target, const std::string& help) {
    auto* opt = app_->add_option("--" + name, target, help);
    writers_.push_back([name, &target](Json& j) { j[name] = to_json(target); });
    return opt;
  }

  template <class T>
  CLI::Option* add_list(const std::string& name, std::vector<T>& target, const std::string& help) {
    auto* opt = app_->add_option("--" + name, target, help)->delimiter(',');
    writers_.push_back([name, &target](Json& j) { j[name] = target; });
    return opt;
  }

  CLI::Option* flag(const std::string& name, bool& target, const std::string& help) {
    auto* opt = app_->add_flag("--" + name, target, help);
    writers_.push_back([name, &target](Json& j) { j[name] = target; });
    return opt;
  }

  Json config() const {
    Json j = Json::object();
    for (const auto& w : writers_) w(j);
    return j;
  }

  CLI::App* app() const { return app_; }

 private:
  template <class T>
  static Json to_json(const T& v) {
    return Json(v);
  }
  template <class T>
  static Json to_json(const std::optional<T>& v) {
    return v ? Json(*v) : Json(nullptr);
  }

  CLI::App* app_;
  std::vector<std::function<void(Json&)>> writers_;
};

// --seed, --threads and --out, shared by every command. None of them enter
// the manifest config; seed is recorded separately.
struct CommonFlags {
  std::optional<std::uint64_t> seed;
  unsigned threads = 0;
  std::string out = ".";
};
void add_common(CLI::App* app, CommonFlags& flags);

// --seed, else NOISYLAB_SEED, else 1.
std::uint64_t resolve_seed(const CommonFlags& flags);
unsigned resolve_threads(const CommonFlags& flags);

struct DataFlags {
  std::string data;
  std::vector<std::string> features;
  std::string label;
  std::string votes;
  std::vector<std::string> annotators;
  std::vector<std::string> class_counts;
  std::optional<long> m;
  bool standardize = false;
};
void add_data_flags(OptionSet& opts, DataFlags& flags);
// Loads --data. `label` defaults to a column of that name when present, and
// so does `votes` once --m is given. An unassigned `votes` column is never
// taken as a feature.
LabelledDataset load_dataset(const DataFlags& flags);
// Throws UsageError unless the dataset carries votes.
void require_votes(const LabelledDataset& data, const DataFlags& flags);
void require_labels(const LabelledDataset& data);

class Manifest {
 public:
  Manifest(std::string command, std::uint64_t seed, Json config, std::filesystem::path out_dir);
  // Path inside the output directory; the file name is recorded.
  std::filesystem::path output(const std::string& name);
  void failures(const std::string& key, long count) { failures_[key] = count; }
  void write() const;

 private:
  std::string command_;
  std::uint64_t seed_;
  Json config_;
  std::filesystem::path out_dir_;
  std::vector<std::string> outputs_;
  Json failures_ = Json::object();
};

Json read_json(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, const std::string& text);
void write_json(const std::filesystem::path& path, const Json& j);
Json matrix_json(const Eigen::MatrixXd& a);
Json model_json(const LogisticModel& model, const std::vector<std::string>& names);
// Reads "coefficients" (intercept first) from a fit JSON file.
LogisticModel read_model(const std::filesystem::path& path, Eigen::Index dim);

// Reconstructs argv (without the program name) from a manifest.
std::vector<std::string> replay_arguments(const Json& manifest);

}  // namespace noisylab::cli
