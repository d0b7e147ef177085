#include "cfx/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cfx {

namespace {

double log_binomial_pmf_half(std::uint64_t x, std::uint64_t n) {
  return std::lgamma(static_cast<double>(n) + 1.0) -
         std::lgamma(static_cast<double>(x) + 1.0) -
         std::lgamma(static_cast<double>(n - x) + 1.0) -
         static_cast<double>(n) * std::log(2.0);
}

double median_of(const std::vector<double>& v, std::size_t lo, std::size_t hi) {
  std::size_t n = hi - lo;
  std::size_t mid = lo + n / 2;
  if (n % 2 == 1) return v[mid];
  return 0.5 * (v[mid - 1] + v[mid]);
}

}  // namespace

MidPResult mcnemar_mid_p(const ContingencyTable& t) {
  std::uint64_t n = t.discordant();
  if (n == 0)
    throw std::invalid_argument("mcnemar_mid_p: no discordant pairs");
  std::uint64_t hi = std::max(t.n12, t.n21);
  std::uint64_t lo = std::min(t.n12, t.n21);

  MidPResult r;
  if (t.n12 == t.n21) {
    r.p_exact = 1.0;
    r.p_mid = 1.0 - 0.5 * std::exp(log_binomial_pmf_half(hi, n));
  } else {
    double sum = 0.0;
    for (std::uint64_t x = 0; x <= lo; ++x)
      sum += std::exp(log_binomial_pmf_half(x, n));
    r.p_exact = sum;
    r.p_mid = sum - 0.5 * std::exp(log_binomial_pmf_half(hi, n));
  }
  r.p_exact = std::clamp(r.p_exact, 0.0, 1.0);
  r.p_mid = std::clamp(r.p_mid, 0.0, 1.0);
  return r;
}

double percentage_explained(const std::vector<Explanation>& results) {
  if (results.empty())
    throw std::invalid_argument("percentage_explained: empty input");
  std::size_t hits = 0;
  for (const auto& e : results)
    if (e.status == SearchStatus::found && e.switching_point <= 30) ++hits;
  return 100.0 * static_cast<double>(hits) /
         static_cast<double>(results.size());
}

MetricSummary summarize(std::vector<double> values) {
  if (values.empty()) throw std::invalid_argument("summarize: empty input");
  std::sort(values.begin(), values.end());
  std::size_t n = values.size();
  std::size_t half = (n + 1) / 2;  // each half includes the middle when odd
  MetricSummary s;
  s.count = n;
  s.median = median_of(values, 0, n);
  s.q1 = median_of(values, 0, half);
  s.q3 = median_of(values, n - half, n);
  return s;
}

MetricSummary summarize_switching_points(const std::vector<int>& values) {
  std::vector<double> v(values.begin(), values.end());
  return summarize(std::move(v));
}

ContingencyTable pairwise_success_table(const std::vector<int>& a,
                                        const std::vector<int>& b) {
  if (a.size() != b.size())
    throw std::invalid_argument("pairwise_success_table: length mismatch");
  ContingencyTable t;
  for (std::size_t i = 0; i < a.size(); ++i) {
    bool sa = a[i] != 0, sb = b[i] != 0;
    if (sa && sb)
      ++t.n11;
    else if (sa)
      ++t.n12;
    else if (sb)
      ++t.n21;
    else
      ++t.n22;
  }
  return t;
}

}  // namespace cfx
