#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "noisylab/csv.hpp"
#include "noisylab/dataset.hpp"
#include "noisylab/rng.hpp"

namespace noisylab {

// Column roles for ingestion. Votes may be given in exactly one of three ways:
// a positive-vote total column with a declared group size, one 0/1 column per
// annotator, or a (positive, negative) pair of class-count columns.
struct ColumnSchema {
  std::vector<std::string> features;  // empty: every column without another role
  std::optional<std::string> label;
  std::optional<std::string> votes;
  long group_size = 0;
  std::vector<std::string> annotators;
  std::vector<std::string> class_counts;
};

LabelledDataset dataset_from_table(const CsvTable& table, const ColumnSchema& schema);
LabelledDataset load_csv(const std::filesystem::path& path, const ColumnSchema& schema);

// Features, then `label`, then `votes` when present.
CsvTable dataset_to_table(const LabelledDataset& data);

struct Standardization {
  Eigen::VectorXd means;
  Eigen::VectorXd sds;  // sample sd, n − 1 denominator
};

// Column means and sds; throws DataError naming any zero-variance column.
Standardization fit_standardization(const LabelledDataset& data);
LabelledDataset apply_standardization(const LabelledDataset& data, const Standardization& s);

struct Standardized {
  LabelledDataset data;
  Standardization transform;
};
Standardized standardize(const LabelledDataset& data);

struct SplitPlan {
  long train_size = 0;
  std::uint64_t seed = 1;
  long repetitions = 1;
};

struct Split {
  std::vector<std::size_t> train;  // ascending
  std::vector<std::size_t> test;   // ascending
};

// Uniform random train/test partition without stratification.
Split make_split(std::size_t total, std::size_t train_size, Rng& rng);

}  // namespace noisylab
