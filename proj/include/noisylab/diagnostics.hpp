#pragma once

#include <optional>
#include <span>
#include <vector>

#include "noisylab/models.hpp"

namespace noisylab {

struct VoteGroupSummary {
  long votes = 0;  // v, positive votes received
  long count = 0;  // n_v
  double mean_tau = 0.0;
  std::optional<double> se;  // sd/√n_v, absent for singleton groups
};

// Average posterior τ₁ within each vote group v = 0..m. Empty groups are
// omitted. The result does not depend on the input order.
std::vector<VoteGroupSummary> vote_group_means(std::span<const double> tau1,
                                               std::span<const long> positive, long group_size);

struct ObservedExpected {
  double tau = 0.0;
  double expected = 0.0;  // m τ
  long observed = 0;
  CountInterval band;
  bool in_band = false;
};

std::vector<ObservedExpected> expected_vs_observed(std::span<const double> tau1,
                                                   std::span<const long> positive,
                                                   const GroupModel& group, double level);

// Fraction of rows whose observed count lies inside its prediction band.
double band_coverage(std::span<const ObservedExpected> rows);

}  // namespace noisylab
