#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "colloc/corpus.hpp"
#include "colloc/prune.hpp"

namespace colloc {

struct PlantedPair {
  std::string w1;
  std::string w2;
  double boost = 1.0;  // multiplier on the joint probability
};

/// Recipe for a synthetic corpus: Zipfian unigrams with first-order
/// dependence on the planted pairs. After a planted source word, its target
/// follows with probability boost * P(target); the rest of the vocabulary
/// is rescaled to keep a proper distribution.
struct SynthSpec {
  std::size_t vocab_size = 2000;
  std::size_t corpus_tokens = 100000;
  double zipf_exponent = 1.0;
  std::vector<PlantedPair> planted;
  double stop_fraction = 0.05;
  std::uint64_t seed = 42;
};

struct GoldSet {
  std::vector<PlantedPair> pairs;
};

struct SynthCorpus {
  std::string text;
  StopList stops;
  GoldSet gold;
};

/// Spec with n_planted pairs of uniform boost over the 2*n_planted distinct
/// words ranked just below the Zipf head (ranks 10 and up): one anchor pair
/// of the two most frequent reserved words, the rest paired inversely by
/// frequency so every pair's expected joint count is safely positive while
/// boost * P(target) stays small.
SynthSpec make_default_spec(std::size_t vocab_size, std::size_t corpus_tokens,
                            double zipf_exponent, std::size_t n_planted, double boost,
                            double stop_fraction, std::uint64_t seed);

/// Samples the corpus. Deterministic: same spec and seed give byte-identical
/// text. Throws on an invalid spec or when a source word's boosted target
/// mass reaches 1 (the pair probabilities cannot be renormalized).
SynthCorpus generate(const SynthSpec& spec);

struct GradeMetrics {
  double recall = 0.0;     // planted pairs found among the candidate rows
  double reduction = 0.0;  // excluded / (candidates + excluded)
  std::uint64_t candidate_count = 0;
  std::uint64_t excluded_count = 0;
};

/// Scores pipeline output against the planted pairs. Requires a non-empty
/// gold set and disjoint candidate/excluded tables.
GradeMetrics grade(const std::vector<ReportRow>& candidates,
                   const std::vector<ReportRow>& excluded, const GoldSet& gold);

}  // namespace colloc
