// colloc: single binary driving the collocation-candidate pipeline.
//
// `extract` runs corpus -> bigrams -> (MI, t, LLR) -> EM clusters -> pruned
// candidate/excluded tables. `synth-eval` generates a synthetic corpus with
// planted collocations, runs extract on it and grades the output.
//
// Exit codes: 0 success, 1 usage or validation failure, 2 missing input
// file, 3 corpus empty after stop-list/frequency filtering.

#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "colloc/pipeline.hpp"

namespace {

struct ClusterFlag {
  std::string value = "auto";
};

bool parse_clusters(const std::string& s, colloc::ClusterChoice& out, std::string& err) {
  if (s == "auto") {
    out = colloc::ClusterChoice{};
    return true;
  }
  if (s.rfind("auto:", 0) == 0) {
    const std::size_t sep = s.find(':', 5);
    if (sep == std::string::npos) {
      err = "clusters: expected auto:MIN:MAX, got '" + s + "'";
      return false;
    }
    try {
      out.auto_select = true;
      out.k_min = std::stoi(s.substr(5, sep - 5));
      out.k_max = std::stoi(s.substr(sep + 1));
      return true;
    } catch (const std::exception&) {
      err = "clusters: expected auto:MIN:MAX, got '" + s + "'";
      return false;
    }
  }
  try {
    std::size_t used = 0;
    const int k = std::stoi(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    out.auto_select = false;
    out.k = k;
    return true;
  } catch (const std::exception&) {
    err = "clusters: expected a positive integer, 'auto' or 'auto:MIN:MAX', got '" + s + "'";
    return false;
  }
}

void print_summary(const colloc::ExtractResult& r) {
  const colloc::Summary& s = r.summary;
  auto ids = [](const std::vector<int>& v) {
    if (v.empty()) return std::string("-");
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i > 0) out += ',';
      out += std::to_string(v[i]);
    }
    return out;
  };
  std::printf("bigrams\t%llu\n", static_cast<unsigned long long>(s.total_bigrams));
  std::printf("clusters\t%d\n", r.chosen_k);
  std::printf("retained\t%s\t%llu\t%.2f\n", ids(s.retained_clusters).c_str(),
              static_cast<unsigned long long>(s.retained_count), s.retained_pct);
  std::printf("excluded\t%s\t%llu\t%.2f\n", ids(s.excluded_clusters).c_str(),
              static_cast<unsigned long long>(s.excluded_count), s.excluded_pct);
  std::printf("noise\t-\t%llu\t%.2f\n", static_cast<unsigned long long>(s.noise_count),
              s.noise_pct);
  std::printf("candidates\t%llu\n", static_cast<unsigned long long>(s.candidate_count()));
}

int fail_with(const std::vector<std::string>& errors) {
  for (const std::string& e : errors) std::cerr << "error: " << e << "\n";
  return 1;
}

int run_extract_cmd(colloc::PipelineConfig cfg, const ClusterFlag& clusters) {
  std::vector<std::string> errors;
  std::string cluster_err;
  if (!parse_clusters(clusters.value, cfg.clusters, cluster_err)) {
    errors.push_back(cluster_err);
  }
  for (const std::string& e : colloc::validate_config(cfg)) errors.push_back(e);
  if (!errors.empty()) return fail_with(errors);

  try {
    const colloc::ExtractResult result = colloc::run_extract(cfg);
    if (result.diagnostics.clamped_marginals > 0) {
      std::cerr << "note: " << result.diagnostics.clamped_marginals
                << " bigram(s) needed the marginal feasibility clamp\n";
    }
    for (const std::string& e : result.diagnostics.errors) {
      std::cerr << "warning: " << e << "\n";
    }
    print_summary(result);
    return 0;
  } catch (const colloc::file_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const colloc::empty_corpus_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

int run_synth_cmd(colloc::PipelineConfig cfg, const ClusterFlag& clusters,
                  std::size_t vocab, std::size_t tokens, double zipf, std::size_t planted,
                  double boost, double stop_fraction) {
  std::vector<std::string> errors;
  std::string cluster_err;
  if (!parse_clusters(clusters.value, cfg.clusters, cluster_err)) {
    errors.push_back(cluster_err);
  }
  cfg.corpus_path = "<generated>";
  cfg.stoplist_path = "<generated>";
  for (const std::string& e : colloc::validate_config(cfg)) errors.push_back(e);
  if (planted == 0) errors.push_back("planted must be >= 1");
  if (!errors.empty()) return fail_with(errors);

  try {
    const colloc::SynthSpec spec = colloc::make_default_spec(vocab, tokens, zipf, planted,
                                                             boost, stop_fraction, cfg.seed);
    const colloc::SynthEvalResult result = colloc::run_synth_eval(spec, cfg);
    std::printf("recall\t%.4f\n", result.metrics.recall);
    std::printf("reduction\t%.4f\n", result.metrics.reduction);
    std::printf("candidates\t%llu\n",
                static_cast<unsigned long long>(result.metrics.candidate_count));
    std::printf("excluded\t%llu\n",
                static_cast<unsigned long long>(result.metrics.excluded_count));
    return 0;
  } catch (const colloc::file_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"collocation candidate extraction: score adjacent bigrams with "
               "PMI / t / log-likelihood ratio, cluster the 3D measure space with "
               "EM and prune clusters where collocations are implausible"};
  app.require_subcommand(1);

  colloc::PipelineConfig cfg;
  ClusterFlag clusters;

  auto* ext = app.add_subcommand("extract", "run the pipeline on a corpus");
  ext->add_option("--corpus", cfg.corpus_path, "UTF-8 corpus file");
  ext->add_option("--stoplist", cfg.stoplist_path,
                  "stop list: one token per line, '#' comments");
  ext->add_option("--out", cfg.out_dir,
                  "output directory for candidates.tsv, excluded.tsv, summary.tsv, "
                  "points.csv, model.json");
  ext->add_option("--min-count", cfg.min_count, "drop bigrams rarer than this")
      ->capture_default_str();
  ext->add_option("--clusters", clusters.value,
                  "component count: K, 'auto' (cross-validated over 2..15) or auto:MIN:MAX")
      ->capture_default_str();
  ext->add_option("--threshold", cfg.threshold,
                  "retain a cluster iff some centroid coordinate reaches this")
      ->capture_default_str();
  ext->add_option("--noise-mad-factor", cfg.noise_mad_factor,
                  "noise cut: log-density below median - FACTOR*MAD ('inf' disables)")
      ->capture_default_str();
  ext->add_option("--tol", cfg.tol, "EM relative log-likelihood tolerance")
      ->capture_default_str();
  ext->add_option("--max-iter", cfg.max_iter, "EM iteration cap")->capture_default_str();
  ext->add_option("--seed", cfg.seed, "seed for every random choice in the run")
      ->capture_default_str();
  std::string variance = "full";
  ext->add_option("--variance", variance, "t-statistic variance: full | simplified")
      ->capture_default_str();
  ext->add_option("--threads", cfg.threads, "EM worker threads (0 = hardware)")
      ->capture_default_str();
  ext->add_option("--folds", cfg.folds, "cross-validation folds for auto cluster count")
      ->capture_default_str();
  ext->add_flag("--strip-diacritics", cfg.tokenizer.strip_diacritics,
                "strip Arabic diacritics and tatweel while tokenizing");
  ext->add_option("--separators", cfg.tokenizer.separators,
                  "separator codepoints in addition to Unicode whitespace")
      ->capture_default_str();
  ext->add_flag("--export-features", cfg.export_features,
                "also write features.csv (raw + normalized measures per bigram)");

  std::size_t vocab = 2000;
  std::size_t tokens = 100000;
  double zipf = 1.0;
  std::size_t planted = 50;
  double boost = 30.0;
  double stop_fraction = 0.05;
  auto* synth = app.add_subcommand(
      "synth-eval", "generate a corpus with planted collocations, run extract, grade");
  synth->add_option("--vocab", vocab, "content vocabulary size")->capture_default_str();
  synth->add_option("--tokens", tokens, "corpus length in tokens")->capture_default_str();
  synth->add_option("--zipf", zipf, "unigram Zipf exponent")->capture_default_str();
  synth->add_option("--planted", planted, "number of planted collocation pairs")
      ->capture_default_str();
  synth->add_option("--boost", boost, "joint-probability multiplier for planted pairs")
      ->capture_default_str();
  synth->add_option("--stop-fraction", stop_fraction, "fraction of stop-word tokens")
      ->capture_default_str();
  synth->add_option("--seed", cfg.seed, "seed for generation and clustering")
      ->capture_default_str();
  synth->add_option("--out", cfg.out_dir, "output directory")->capture_default_str();
  synth->add_option("--clusters", clusters.value, "as in extract")->capture_default_str();
  synth->add_option("--threshold", cfg.threshold, "as in extract")->capture_default_str();
  synth->add_option("--noise-mad-factor", cfg.noise_mad_factor, "as in extract")
      ->capture_default_str();
  synth->add_option("--threads", cfg.threads, "as in extract")->capture_default_str();
  synth->add_option("--folds", cfg.folds, "as in extract")->capture_default_str();
  synth->add_option("--min-count", cfg.min_count, "as in extract")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  if (variance == "simplified") {
    cfg.variance = colloc::VarianceMode::kSimplified;
  } else if (variance != "full") {
    return fail_with({"variance must be 'full' or 'simplified', got '" + variance + "'"});
  }

  if (ext->parsed()) return run_extract_cmd(cfg, clusters);
  return run_synth_cmd(cfg, clusters, vocab, tokens, zipf, planted, boost, stop_fraction);
}
