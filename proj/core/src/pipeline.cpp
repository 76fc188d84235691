#include "colloc/pipeline.hpp"

#include <cmath>

namespace colloc {

namespace fs = std::filesystem;

std::vector<std::string> validate_config(const PipelineConfig& cfg) {
  std::vector<std::string> errs;
  if (cfg.corpus_path.empty()) errs.push_back("corpus path is required");
  if (cfg.stoplist_path.empty()) errs.push_back("stoplist path is required");
  if (cfg.out_dir.empty()) errs.push_back("output directory is required");
  if (!(cfg.threshold >= 0.0 && cfg.threshold <= 1.0)) {
    errs.push_back("threshold out of [0,1]");
  }
  if (std::isnan(cfg.noise_mad_factor) || cfg.noise_mad_factor < 0.0) {
    errs.push_back("noise-mad-factor must be >= 0 (inf disables the rule)");
  }
  if (!(cfg.tol > 0.0)) errs.push_back("tol must be > 0");
  if (cfg.max_iter < 1) errs.push_back("max-iter must be >= 1");
  if (cfg.min_count < 1) errs.push_back("min-count must be >= 1");
  if (cfg.threads < 0) errs.push_back("threads must be >= 0");
  if (cfg.folds < 2) errs.push_back("folds must be >= 2");
  if (cfg.clusters.auto_select) {
    if (cfg.clusters.k_min < 1) errs.push_back("clusters: k_min must be >= 1");
    if (cfg.clusters.k_max < cfg.clusters.k_min) {
      errs.push_back("clusters: k_max must be >= k_min");
    }
  } else if (cfg.clusters.k < 1) {
    errs.push_back("clusters must be >= 1");
  }
  return errs;
}

ExtractResult run_extract(const PipelineConfig& cfg) {
  const std::string corpus_text = read_file(cfg.corpus_path);
  const std::string stop_text = read_file(cfg.stoplist_path);

  const std::vector<Token> tokens = tokenize(corpus_text, cfg.tokenizer);
  const StopList sl = load_stoplist(stop_text, cfg.tokenizer);
  BigramTable table = extract_bigrams(tokens, sl);
  filter_min_count(table, cfg.min_count);
  if (table.pairs.empty()) {
    throw empty_corpus_error("no bigram survives stop-list and frequency filtering");
  }

  const FeatureSet features = build_points(table, cfg.variance);
  std::vector<Vec3> coords;
  coords.reserve(features.points.size());
  for (const FeaturePoint& p : features.points) coords.push_back(p.coords);

  EmConfig em_cfg;
  em_cfg.tol = cfg.tol;
  em_cfg.max_iter = cfg.max_iter;
  em_cfg.threads = cfg.threads;

  ExtractResult result;
  const std::size_t n = coords.size();
  if (cfg.clusters.auto_select) {
    // Cross-validation needs enough points per fold; degrade to a single
    // component on tiny inputs rather than failing the run.
    const int k_cap = static_cast<int>(std::min<std::size_t>(cfg.clusters.k_max, n));
    if (n >= static_cast<std::size_t>(2 * cfg.folds) && k_cap >= cfg.clusters.k_min) {
      result.chosen_k = select_k(coords, cfg.clusters.k_min, k_cap, cfg.folds, cfg.seed, em_cfg);
    } else {
      result.chosen_k = 1;
    }
  } else {
    result.chosen_k = cfg.clusters.k;
  }

  result.model = em_fit(coords, result.chosen_k, cfg.seed, em_cfg);
  const Assignment a = assign(result.model, coords, cfg.noise_mad_factor);
  std::vector<ClusterVerdict> verdicts = prune(result.model, cfg.threshold);
  tally_members(verdicts, a);

  result.summary = summarize(verdicts, a, n);
  result.candidates = emit_candidates(features.points, a, verdicts);
  result.excluded = emit_excluded(features.points, a, verdicts);
  result.distinct_bigrams = n;
  result.corpus_tokens = table.corpus_tokens;
  result.diagnostics = features.diagnostics;

  const fs::path out(cfg.out_dir);
  fs::create_directories(out);
  write_file(out / "candidates.tsv", format_report_rows(result.candidates));
  write_file(out / "excluded.tsv", format_report_rows(result.excluded));
  write_file(out / "summary.tsv", format_summary(result.summary));
  write_file(out / "points.csv", format_points_csv(features.points, a));
  write_file(out / "model.json", format_model_json(result.model));
  if (cfg.export_features) {
    write_file(out / "features.csv", format_feature_points_csv(features));
  }
  return result;
}

SynthEvalResult run_synth_eval(const SynthSpec& spec, PipelineConfig cfg) {
  const fs::path out(cfg.out_dir);
  fs::create_directories(out);

  const SynthCorpus corpus = generate(spec);
  write_file(out / "corpus.txt", corpus.text);
  std::string stop_text;
  for (const std::string& s : corpus.stops.entries) stop_text += s + '\n';
  write_file(out / "stoplist.txt", stop_text);
  write_file(out / "gold.tsv", format_gold_tsv(corpus.gold));

  cfg.corpus_path = (out / "corpus.txt").string();
  cfg.stoplist_path = (out / "stoplist.txt").string();

  SynthEvalResult result;
  result.extract = run_extract(cfg);
  result.metrics = grade(result.extract.candidates, result.extract.excluded, corpus.gold);
  write_file(out / "metrics.json", format_metrics_json(result.metrics));
  return result;
}

}  // namespace colloc
