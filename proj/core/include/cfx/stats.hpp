#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "cfx/sedc.hpp"

namespace cfx {

struct ContingencyTable {
  std::uint64_t n11 = 0;  // both succeed
  std::uint64_t n12 = 0;  // first only
  std::uint64_t n21 = 0;  // second only
  std::uint64_t n22 = 0;  // neither

  std::uint64_t total() const { return n11 + n12 + n21 + n22; }
  std::uint64_t discordant() const { return n12 + n21; }
};

struct MidPResult {
  double p_exact = 1.0;
  double p_mid = 1.0;
};

/// One-sided exact McNemar test on the discordant pairs, plus the mid-p
/// variant (exact p minus half the point probability of the larger count).
/// Equal discordant counts give p_exact = 1. Log-space binomial pmf, so n up
/// to 1e5 is fine. Throws std::invalid_argument when n12 + n21 = 0.
MidPResult mcnemar_mid_p(const ContingencyTable& t);

/// Percent of results with status found and switching point <= 30.
double percentage_explained(const std::vector<Explanation>& results);

struct MetricSummary {
  double median = 0.0;
  double q1 = 0.0;
  double q3 = 0.0;
  std::size_t count = 0;
};

/// Median and quartiles as medians of the lower/upper halves (each half
/// includes the middle element when the count is odd).
MetricSummary summarize(std::vector<double> values);
MetricSummary summarize_switching_points(const std::vector<int>& values);

/// Matched-pairs success counts; a and b hold per-instance 0/1 outcomes.
ContingencyTable pairwise_success_table(const std::vector<int>& a,
                                        const std::vector<int>& b);

}  // namespace cfx
