#pragma once

#include <cstdint>

namespace colloc {

/// Contingency counts for one ordered bigram (w1, w2).
///
/// c12 is the joint count of the pair, c1/c2 the occurrence counts of the
/// member words, and n the total number of bigram positions in the corpus.
/// Valid counts satisfy 1 <= c12 <= min(c1, c2), c1 <= n, c2 <= n, n >= 1.
struct BigramStats {
  std::uint64_t c12 = 0;
  std::uint64_t c1 = 0;
  std::uint64_t c2 = 0;
  std::uint64_t n = 0;

  bool valid() const noexcept;

  /// True when the implied 2x2 contingency table has no negative cell,
  /// i.e. c1 + c2 - c12 <= n. Unigram marginals taken over a fragmented
  /// corpus (many short runs between stop words) can violate this even
  /// though each count is individually in range.
  bool consistent() const noexcept;

  /// Builds stats from table counts, projecting the marginals into the
  /// feasible contingency region: c1 is capped at n, then c2 is capped at
  /// n - c1 + c12. Only degenerate corpora are affected; counts from any
  /// corpus with marginals below the position count pass through unchanged.
  /// Requires 1 <= c12 <= min(c1, c2, n).
  static BigramStats clamped(std::uint64_t c12, std::uint64_t c1,
                             std::uint64_t c2, std::uint64_t n);
};

/// Variance plug-in for the t statistic. kFull uses the Bernoulli variance
/// xbar*(1-xbar); kSimplified drops the (1-xbar) factor, matching the
/// approximation common in published worked examples.
enum class VarianceMode { kFull, kSimplified };

/// The three association measures for one bigram. mi is in bits, t and llr
/// are dimensionless; llr is >= 0 up to rounding. When c12 == n the sample
/// variance of the t statistic vanishes; t is then pinned to +infinity and
/// flagged so downstream stages can treat it separately.
struct MeasureVector {
  double mi = 0.0;
  double t = 0.0;
  double llr = 0.0;
  bool t_degenerate = false;
};

/// Pointwise mutual information, log2((c12/n) / ((c1/n)*(c2/n))).
/// Throws std::domain_error when c12 == 0, std::invalid_argument on other
/// invariant violations.
double pmi(const BigramStats& s);

/// t statistic (xbar - mu) / sqrt(s2/n) with xbar = c12/n and
/// mu = (c1/n)*(c2/n). Returns +infinity for the degenerate c12 == n case.
double t_stat(const BigramStats& s, VarianceMode mode = VarianceMode::kFull);

/// Dunning log-likelihood ratio -2 log(lambda) for the nested binomial
/// hypotheses "w2 independent of w1" vs "w2 dependent on w1", using the
/// count mapping k1 = c12, n1 = c1, k2 = c2 - c12, n2 = n - c1 and the
/// convention 0*log(0) = 0. Requires consistent() in addition to valid().
double log_likelihood_ratio(const BigramStats& s);

/// All three measures at once; component-wise equal to the functions above.
MeasureVector measure_all(const BigramStats& s,
                          VarianceMode mode = VarianceMode::kFull);

}  // namespace colloc
