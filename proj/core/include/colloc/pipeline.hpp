#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "colloc/em.hpp"
#include "colloc/io.hpp"
#include "colloc/prune.hpp"
#include "colloc/synth.hpp"

namespace colloc {

/// Number of mixture components: a pinned k, or cross-validated selection
/// over [k_min, k_max].
struct ClusterChoice {
  bool auto_select = true;
  int k = 0;
  int k_min = 2;
  int k_max = 15;
};

struct PipelineConfig {
  std::string corpus_path;
  std::string stoplist_path;
  std::string out_dir;
  std::uint64_t min_count = 1;
  ClusterChoice clusters;
  double threshold = 0.30;
  double noise_mad_factor = 3.0;
  double tol = 1e-6;
  int max_iter = 500;
  std::uint64_t seed = 42;
  VarianceMode variance = VarianceMode::kFull;
  TokenizerConfig tokenizer;
  int threads = 0;  // EM workers, 0 = hardware concurrency (results identical)
  int folds = 10;   // cross-validation folds for auto k
  bool export_features = false;
};

/// Range checks for every field; returns all violations, not just the first.
std::vector<std::string> validate_config(const PipelineConfig& cfg);

/// Corpus empty after stop-list filtering (no bigram survives).
class empty_corpus_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ExtractResult {
  Summary summary;
  int chosen_k = 0;
  std::size_t distinct_bigrams = 0;
  std::uint64_t corpus_tokens = 0;
  MixtureModel model;
  std::vector<ReportRow> candidates;
  std::vector<ReportRow> excluded;
  BuildDiagnostics diagnostics;
};

/// The full run: tokenize, filter, measure, normalize, cluster, prune,
/// write candidates.tsv / excluded.tsv / summary.tsv / points.csv /
/// model.json into out_dir. Throws file_error on unreadable inputs and
/// empty_corpus_error when no bigram survives filtering.
ExtractResult run_extract(const PipelineConfig& cfg);

struct SynthEvalResult {
  GradeMetrics metrics;
  ExtractResult extract;
};

/// Generates the synthetic corpus into cfg.out_dir (corpus.txt,
/// stoplist.txt, gold.tsv), runs the extract pipeline on it, grades the
/// result against the gold set and writes metrics.json.
SynthEvalResult run_synth_eval(const SynthSpec& spec, PipelineConfig cfg);

}  // namespace colloc
