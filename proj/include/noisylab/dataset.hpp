#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

#include "noisylab/logreg.hpp"

namespace noisylab {

// Features with optional ground-truth labels Z (0/1, 1 = positive class) and
// optional positive-vote totals S₁ out of group_size annotators.
struct LabelledDataset {
  Eigen::MatrixXd features;
  std::vector<std::string> column_names;
  std::optional<std::vector<int>> labels;
  std::optional<std::vector<long>> votes;
  long group_size = 0;

  Eigen::Index rows() const { return features.rows(); }
  Eigen::Index dim() const { return features.cols(); }

  // Throws DataError when sizes disagree or entries are out of range.
  void validate() const;

  DesignMatrix design() const { return DesignMatrix(features); }
  BinomialResponse label_response() const;
  BinomialResponse vote_response() const;

  // Rows in the given order (duplicates allowed, as for bootstrap resamples).
  LabelledDataset subset(const std::vector<std::size_t>& rows) const;
};

}  // namespace noisylab
