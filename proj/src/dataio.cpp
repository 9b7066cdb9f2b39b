#include "noisylab/dataio.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fmt/format.h>
#include <numeric>
#include <set>

#include "noisylab/errors.hpp"

namespace noisylab {

void LabelledDataset::validate() const {
  const auto n = static_cast<std::size_t>(features.rows());
  if (static_cast<std::size_t>(features.cols()) != column_names.size()) {
    throw DataError("dataset: column names do not match the feature matrix");
  }
  if (!features.allFinite()) throw DataError("dataset: non-finite feature entry");
  if (labels) {
    if (labels->size() != n) throw DataError("dataset: label count differs from row count");
    for (int z : *labels) {
      if (z != 0 && z != 1) throw DataError("dataset: labels must be 0 or 1");
    }
  }
  if (votes) {
    if (votes->size() != n) throw DataError("dataset: vote count differs from row count");
    if (group_size < 1) throw DataError("dataset: votes present without a group size");
    for (long v : *votes) {
      if (v < 0 || v > group_size) throw DataError("dataset: vote total outside [0, m]");
    }
  }
}

BinomialResponse LabelledDataset::label_response() const {
  NOISYLAB_EXPECTS(labels.has_value(), "dataset has no ground-truth labels");
  return BinomialResponse::labels(*labels);
}

BinomialResponse LabelledDataset::vote_response() const {
  NOISYLAB_EXPECTS(votes.has_value(), "dataset has no votes");
  return BinomialResponse::votes(*votes, group_size);
}

LabelledDataset LabelledDataset::subset(const std::vector<std::size_t>& rows) const {
  LabelledDataset out;
  out.column_names = column_names;
  out.group_size = group_size;
  out.features.resize(static_cast<Eigen::Index>(rows.size()), features.cols());
  if (labels) out.labels.emplace();
  if (votes) out.votes.emplace();
  for (std::size_t i = 0; i < rows.size(); ++i) {
    NOISYLAB_EXPECTS(rows[i] < static_cast<std::size_t>(features.rows()), "subset: row out of range");
    out.features.row(static_cast<Eigen::Index>(i)) = features.row(static_cast<Eigen::Index>(rows[i]));
    if (labels) out.labels->push_back((*labels)[rows[i]]);
    if (votes) out.votes->push_back((*votes)[rows[i]]);
  }
  return out;
}

namespace {

std::size_t require_column(const CsvTable& t, const std::string& name) {
  const auto idx = t.column_index(name);
  if (!idx) throw DataError(fmt::format("missing column '{}'", name));
  return *idx;
}

// Data rows are reported by file line (header is line 1).
double parse_double(const std::string& cell, std::size_t row, const std::string& column) {
  double value = 0.0;
  const char* first = cell.data();
  const char* last = cell.data() + cell.size();
  while (first < last && *first == ' ') ++first;
  while (last > first && last[-1] == ' ') --last;
  if (first < last && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || first == last || !std::isfinite(value)) {
    throw DataError(fmt::format("line {}, column '{}': not a finite number: '{}'", row + 2, column, cell));
  }
  return value;
}

long parse_count(const std::string& cell, std::size_t row, const std::string& column) {
  const double v = parse_double(cell, row, column);
  if (v != std::floor(v) || v < 0.0) {
    throw DataError(fmt::format("line {}, column '{}': expected a non-negative integer, got '{}'",
                                row + 2, column, cell));
  }
  return static_cast<long>(v);
}

}  // namespace

LabelledDataset dataset_from_table(const CsvTable& t, const ColumnSchema& schema) {
  const int vote_modes = (schema.votes ? 1 : 0) + (schema.annotators.empty() ? 0 : 1) +
                         (schema.class_counts.empty() ? 0 : 1);
  if (vote_modes > 1) throw DataError("schema: give votes as a total, annotators or class counts, not several");
  if (schema.votes && schema.group_size < 1) {
    throw DataError("schema: a vote-total column needs a declared group size m");
  }
  if (!schema.class_counts.empty() && schema.class_counts.size() != 2) {
    throw DataError("schema: class counts need exactly two columns (positive, negative)");
  }

  std::set<std::string> used;
  if (schema.label) used.insert(*schema.label);
  if (schema.votes) used.insert(*schema.votes);
  used.insert(schema.annotators.begin(), schema.annotators.end());
  used.insert(schema.class_counts.begin(), schema.class_counts.end());

  std::vector<std::string> feature_names = schema.features;
  if (feature_names.empty()) {
    for (const auto& h : t.header) {
      if (!used.contains(h)) feature_names.push_back(h);
    }
  }
  if (feature_names.empty()) throw DataError("schema: no feature columns");
  std::vector<std::size_t> feature_idx;
  for (const auto& name : feature_names) feature_idx.push_back(require_column(t, name));

  const std::size_t n = t.rows.size();
  LabelledDataset out;
  out.column_names = feature_names;
  out.features.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(feature_idx.size()));
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = 0; k < feature_idx.size(); ++k) {
      out.features(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(k)) =
          parse_double(t.rows[j][feature_idx[k]], j, feature_names[k]);
    }
  }

  if (schema.label) {
    const auto idx = require_column(t, *schema.label);
    out.labels.emplace(n);
    for (std::size_t j = 0; j < n; ++j) {
      const long z = parse_count(t.rows[j][idx], j, *schema.label);
      if (z > 1) {
        throw DataError(fmt::format("line {}, column '{}': label must be 0 or 1", j + 2, *schema.label));
      }
      (*out.labels)[j] = static_cast<int>(z);
    }
  }

  if (schema.votes) {
    const auto idx = require_column(t, *schema.votes);
    out.group_size = schema.group_size;
    out.votes.emplace(n);
    for (std::size_t j = 0; j < n; ++j) {
      const long v = parse_count(t.rows[j][idx], j, *schema.votes);
      if (v > schema.group_size) {
        throw DataError(fmt::format("line {}, column '{}': vote total {} exceeds m = {}", j + 2,
                                    *schema.votes, v, schema.group_size));
      }
      (*out.votes)[j] = v;
    }
  } else if (!schema.annotators.empty()) {
    std::vector<std::size_t> idx;
    for (const auto& a : schema.annotators) idx.push_back(require_column(t, a));
    out.group_size = static_cast<long>(idx.size());
    if (schema.group_size != 0 && schema.group_size != out.group_size) {
      throw DataError("schema: declared m differs from the number of annotator columns");
    }
    out.votes.emplace(n, 0);
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < idx.size(); ++k) {
        const long z = parse_count(t.rows[j][idx[k]], j, schema.annotators[k]);
        if (z > 1) {
          throw DataError(fmt::format("line {}, column '{}': annotator label must be 0 or 1", j + 2,
                                      schema.annotators[k]));
        }
        (*out.votes)[j] += z;
      }
    }
  } else if (!schema.class_counts.empty()) {
    const auto pos = require_column(t, schema.class_counts[0]);
    const auto neg = require_column(t, schema.class_counts[1]);
    out.group_size = schema.group_size;
    out.votes.emplace(n);
    for (std::size_t j = 0; j < n; ++j) {
      const long a = parse_count(t.rows[j][pos], j, schema.class_counts[0]);
      const long b = parse_count(t.rows[j][neg], j, schema.class_counts[1]);
      if (out.group_size == 0) out.group_size = a + b;
      if (a + b != out.group_size) {
        throw DataError(fmt::format("line {}: class counts sum to {}, expected m = {}", j + 2, a + b,
                                    out.group_size));
      }
      (*out.votes)[j] = a;
    }
  }
  out.validate();
  return out;
}

LabelledDataset load_csv(const std::filesystem::path& path, const ColumnSchema& schema) {
  return dataset_from_table(read_csv(path), schema);
}

CsvTable dataset_to_table(const LabelledDataset& data) {
  CsvTable t;
  t.header = data.column_names;
  if (data.labels) t.header.emplace_back("label");
  if (data.votes) t.header.emplace_back("votes");
  for (Eigen::Index j = 0; j < data.rows(); ++j) {
    std::vector<std::string> row;
    for (Eigen::Index k = 0; k < data.dim(); ++k) row.push_back(format_number(data.features(j, k)));
    if (data.labels) row.push_back(std::to_string((*data.labels)[static_cast<std::size_t>(j)]));
    if (data.votes) row.push_back(std::to_string((*data.votes)[static_cast<std::size_t>(j)]));
    t.rows.push_back(std::move(row));
  }
  return t;
}

Standardization fit_standardization(const LabelledDataset& data) {
  const Eigen::Index n = data.rows();
  NOISYLAB_EXPECTS(n >= 2, "standardize: need at least two rows");
  Standardization s;
  s.means = data.features.colwise().mean().transpose();
  s.sds.resize(data.dim());
  for (Eigen::Index k = 0; k < data.dim(); ++k) {
    const double ss = (data.features.col(k).array() - s.means[k]).square().sum();
    s.sds[k] = std::sqrt(ss / static_cast<double>(n - 1));
    if (!(s.sds[k] > 0.0)) {
      throw DataError(fmt::format("column '{}' has zero variance", data.column_names[static_cast<std::size_t>(k)]));
    }
  }
  return s;
}

LabelledDataset apply_standardization(const LabelledDataset& data, const Standardization& s) {
  NOISYLAB_EXPECTS(s.means.size() == data.dim() && s.sds.size() == data.dim(),
                   "standardize: transform dimension mismatch");
  LabelledDataset out = data;
  for (Eigen::Index k = 0; k < data.dim(); ++k) {
    out.features.col(k) = (data.features.col(k).array() - s.means[k]) / s.sds[k];
  }
  return out;
}

Standardized standardize(const LabelledDataset& data) {
  auto transform = fit_standardization(data);
  auto scaled = apply_standardization(data, transform);
  return {std::move(scaled), std::move(transform)};
}

Split make_split(std::size_t total, std::size_t train_size, Rng& rng) {
  NOISYLAB_EXPECTS(train_size >= 1 && train_size < total, "split: need 0 < train size < N");
  std::vector<std::size_t> order(total);
  std::iota(order.begin(), order.end(), std::size_t{0});
  rng.shuffle(order);
  Split s;
  s.train.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(train_size));
  s.test.assign(order.begin() + static_cast<std::ptrdiff_t>(train_size), order.end());
  std::sort(s.train.begin(), s.train.end());
  std::sort(s.test.begin(), s.test.end());
  return s;
}

}  // namespace noisylab
