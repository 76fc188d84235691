#include "colloc/measures.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace colloc {

namespace {

void require_valid(const BigramStats& s, const char* op) {
  if (s.c12 == 0) {
    throw std::domain_error(std::string(op) + ": undefined for zero joint count");
  }
  if (!s.valid()) {
    throw std::invalid_argument(std::string(op) + ": counts violate invariants (c12=" +
                                std::to_string(s.c12) + " c1=" + std::to_string(s.c1) +
                                " c2=" + std::to_string(s.c2) + " n=" + std::to_string(s.n) + ")");
  }
}

// k*log(p) + (n-k)*log(1-p) with 0*log(0) = 0.
double binom_loglik(double p, double k, double n) {
  double acc = 0.0;
  if (k > 0.0) acc += k * std::log(p);
  if (n - k > 0.0) acc += (n - k) * std::log1p(-p);
  return acc;
}

}  // namespace

bool BigramStats::valid() const noexcept {
  return n >= 1 && c12 >= 1 && c12 <= c1 && c12 <= c2 && c1 <= n && c2 <= n;
}

bool BigramStats::consistent() const noexcept {
  return c1 + c2 <= n + c12;
}

BigramStats BigramStats::clamped(std::uint64_t c12, std::uint64_t c1,
                                 std::uint64_t c2, std::uint64_t n) {
  if (c12 < 1 || c12 > c1 || c12 > c2 || c12 > n) {
    throw std::invalid_argument("BigramStats::clamped: joint count out of range");
  }
  BigramStats s;
  s.c12 = c12;
  s.n = n;
  s.c1 = std::min(c1, n);
  s.c2 = std::min(c2, n - s.c1 + c12);
  return s;
}

double pmi(const BigramStats& s) {
  require_valid(s, "pmi");
  const double joint = static_cast<double>(s.c12) * static_cast<double>(s.n);
  const double indep = static_cast<double>(s.c1) * static_cast<double>(s.c2);
  return std::log2(joint / indep);
}

double t_stat(const BigramStats& s, VarianceMode mode) {
  require_valid(s, "t_stat");
  if (s.c12 == s.n) {
    return std::numeric_limits<double>::infinity();
  }
  const double n = static_cast<double>(s.n);
  const double xbar = static_cast<double>(s.c12) / n;
  const double mu = (static_cast<double>(s.c1) / n) * (static_cast<double>(s.c2) / n);
  const double s2 = mode == VarianceMode::kFull ? xbar * (1.0 - xbar) : xbar;
  return (xbar - mu) / std::sqrt(s2 / n);
}

double log_likelihood_ratio(const BigramStats& s) {
  require_valid(s, "log_likelihood_ratio");
  if (!s.consistent()) {
    throw std::invalid_argument("log_likelihood_ratio: marginals exceed position count "
                                "(c1 + c2 - c12 > n); clamp the counts first");
  }
  const double k1 = static_cast<double>(s.c12);
  const double n1 = static_cast<double>(s.c1);
  const double k2 = static_cast<double>(s.c2 - s.c12);
  const double n2 = static_cast<double>(s.n - s.c1);
  const double p1 = k1 / n1;
  const double p2 = n2 > 0.0 ? k2 / n2 : 0.0;
  const double p = static_cast<double>(s.c2) / static_cast<double>(s.n);
  return 2.0 * (binom_loglik(p1, k1, n1) + binom_loglik(p2, k2, n2) -
                binom_loglik(p, k1, n1) - binom_loglik(p, k2, n2));
}

MeasureVector measure_all(const BigramStats& s, VarianceMode mode) {
  MeasureVector m;
  m.mi = pmi(s);
  m.t = t_stat(s, mode);
  m.t_degenerate = s.c12 == s.n;
  m.llr = log_likelihood_ratio(s);
  return m;
}

}  // namespace colloc
