#include "noisylab/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>

#include "noisylab/errors.hpp"
#include "noisylab/stats.hpp"

namespace noisylab {

std::vector<VoteGroupSummary> vote_group_means(std::span<const double> tau1,
                                               std::span<const long> positive, long group_size) {
  NOISYLAB_EXPECTS(tau1.size() == positive.size(), "vote_group_means: length mismatch");
  std::vector<std::vector<double>> groups(static_cast<std::size_t>(group_size) + 1);
  for (std::size_t j = 0; j < tau1.size(); ++j) {
    NOISYLAB_EXPECTS(positive[j] >= 0 && positive[j] <= group_size,
                     fmt::format("vote count {} at row {} outside [0, {}]", positive[j], j, group_size));
    groups[static_cast<std::size_t>(positive[j])].push_back(tau1[j]);
  }
  std::vector<VoteGroupSummary> out;
  for (std::size_t v = 0; v < groups.size(); ++v) {
    auto& g = groups[v];
    if (g.empty()) continue;
    // Sorting fixes the summation order, so permuted inputs give identical bits.
    std::sort(g.begin(), g.end());
    VoteGroupSummary row;
    row.votes = static_cast<long>(v);
    row.count = static_cast<long>(g.size());
    row.mean_tau = stats::mean(g);
    if (g.size() >= 2) row.se = stats::sample_sd(g) / std::sqrt(static_cast<double>(g.size()));
    out.push_back(row);
  }
  return out;
}

std::vector<ObservedExpected> expected_vs_observed(std::span<const double> tau1,
                                                   std::span<const long> positive,
                                                   const GroupModel& group, double level) {
  NOISYLAB_EXPECTS(tau1.size() == positive.size(), "expected_vs_observed: length mismatch");
  const double m = static_cast<double>(group.group_size());
  std::vector<ObservedExpected> out;
  out.reserve(tau1.size());
  for (std::size_t j = 0; j < tau1.size(); ++j) {
    ObservedExpected row;
    row.tau = tau1[j];
    row.expected = m * tau1[j];
    row.observed = positive[j];
    row.band = dm_prediction_interval(group, ProbabilityVector::binary(tau1[j]), level);
    row.in_band = row.observed >= row.band.lo && row.observed <= row.band.hi;
    out.push_back(row);
  }
  return out;
}

double band_coverage(std::span<const ObservedExpected> rows) {
  NOISYLAB_EXPECTS(!rows.empty(), "band_coverage: no rows");
  const auto inside = std::count_if(rows.begin(), rows.end(), [](const auto& r) { return r.in_band; });
  return static_cast<double>(inside) / static_cast<double>(rows.size());
}

}  // namespace noisylab
