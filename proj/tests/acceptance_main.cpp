// Acceptance suite: one pass/fail line per criterion, exit code = number of
// failures. Tolerances are pinned in the checks themselves.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "colloc/em.hpp"
#include "colloc/io.hpp"
#include "colloc/measures.hpp"
#include "colloc/pipeline.hpp"
#include "colloc/prune.hpp"
#include "colloc/rng.hpp"
#include "colloc/synth.hpp"
#include "oracles.hpp"

namespace fs = std::filesystem;
using colloc::BigramStats;
using colloc::MixtureModel;
using colloc::Vec3;

namespace {

struct Runner {
  int failures = 0;

  void run(const std::string& name, const std::function<bool(std::string&)>& body) {
    std::string detail;
    bool ok = false;
    const auto start = std::chrono::steady_clock::now();
    try {
      ok = body(detail);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("[%s] %s (%.2fs)%s%s\n", ok ? "PASS" : "FAIL", name.c_str(), secs,
                detail.empty() ? "" : " -- ", detail.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
  }
};

double gauss(colloc::Rng& rng) {
  const double u1 = std::max(rng.uniform(), 1e-12);
  const double u2 = rng.uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * 3.14159265358979323846 * u2);
}

fs::path work_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "colloc_accept_work" / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

bool measure_oracle_equivalence(std::string& detail) {
  const auto start = std::chrono::steady_clock::now();
  std::size_t checked = 0;
  double worst = 0.0;
  bool ok = true;
  oracle::for_each_valid_stats(50, [&](std::uint64_t c12, std::uint64_t c1,
                                       std::uint64_t c2, std::uint64_t n) {
    const BigramStats s{c12, c1, c2, n};
    const double d_pmi =
        std::fabs(colloc::pmi(s) - static_cast<double>(oracle::pmi(c12, c1, c2, n)));
    const double d_llr = std::fabs(colloc::log_likelihood_ratio(s) -
                                   static_cast<double>(oracle::llr(c12, c1, c2, n)));
    double d_t = 0.0;
    if (oracle::t_degenerate(c12, n)) {
      if (!colloc::measure_all(s).t_degenerate) ok = false;
    } else {
      d_t = std::fabs(colloc::t_stat(s) - static_cast<double>(oracle::t_stat(c12, c1, c2, n)));
    }
    worst = std::max({worst, d_pmi, d_llr, d_t});
    if (d_pmi > 1e-9 || d_llr > 1e-9 || d_t > 1e-9) ok = false;
    ++checked;
  });
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::ostringstream os;
  os << checked << " tables, worst |diff| " << worst << ", " << secs << "s";
  detail = os.str();
  return ok && secs < 10.0;
}

bool independence_triple_zero(std::string& detail) {
  std::size_t hits = 0;
  bool ok = true;
  oracle::for_each_valid_stats(50, [&](std::uint64_t c12, std::uint64_t c1,
                                       std::uint64_t c2, std::uint64_t n) {
    if (c12 * n != c1 * c2) return;
    ++hits;
    const BigramStats s{c12, c1, c2, n};
    if (std::fabs(colloc::pmi(s)) > 1e-12) ok = false;
    if (std::fabs(colloc::log_likelihood_ratio(s)) > 1e-9) ok = false;
    if (c12 != n && std::fabs(colloc::t_stat(s)) > 1e-9) ok = false;
  });
  detail = std::to_string(hits) + " independent tables";
  return ok && hits > 100;
}

bool llr_non_negative(std::string& detail) {
  colloc::Rng rng(0xACCE97);
  std::size_t tested = 0;
  double min_llr = 1e300;
  while (tested < 10000) {
    BigramStats s;
    s.n = 2 + rng.uniform_index(20000);
    s.c1 = 1 + rng.uniform_index(s.n);
    s.c2 = 1 + rng.uniform_index(s.n);
    s.c12 = 1 + rng.uniform_index(std::min(s.c1, s.c2));
    if (!s.valid() || !s.consistent()) continue;
    min_llr = std::min(min_llr, colloc::log_likelihood_ratio(s));
    ++tested;
  }
  // The 0*log(0) boundary families. c12 == c1: w1 is always followed by w2;
  // c12 == c2: w2 only ever follows w1.
  for (std::uint64_t c = 1; c <= 50; ++c) {
    const BigramStats always{c, c, 2 * c, 100 * c};
    min_llr = std::min(min_llr, colloc::log_likelihood_ratio(always));
    const BigramStats only{c, 2 * c, c, 100 * c};
    min_llr = std::min(min_llr, colloc::log_likelihood_ratio(only));
  }
  const double ref = colloc::log_likelihood_ratio({10, 10, 10, 1000});
  const bool ref_ok = std::fabs(ref - static_cast<double>(oracle::llr(10, 10, 10, 1000))) <
                          1e-9 &&
                      std::fabs(ref - 112.00306870969468) < 1e-9;
  std::ostringstream os;
  os << tested << " random tables, min llr " << min_llr << ", (10,10,10,1000) -> " << ref;
  detail = os.str();
  return min_llr >= -1e-9 && ref_ok;
}

bool em_invariants(std::string& detail) {
  const auto start = std::chrono::steady_clock::now();
  colloc::Rng rng(0x5EED);
  bool ok = true;
  int datasets = 0;
  for (int round = 0; round < 100; ++round) {
    const std::size_t n = 50 + rng.uniform_index(1951);
    const int k = 1 + static_cast<int>(rng.uniform_index(6));
    std::vector<Vec3> pts;
    pts.reserve(n);
    // Half the datasets are clustered blobs, half uniform noise.
    if (round % 2 == 0) {
      const int blobs = 1 + static_cast<int>(rng.uniform_index(4));
      std::vector<Vec3> centers;
      for (int b = 0; b < blobs; ++b) {
        centers.push_back(Vec3{rng.uniform(), rng.uniform(), rng.uniform()});
      }
      for (std::size_t i = 0; i < n; ++i) {
        const Vec3& c = centers[rng.uniform_index(centers.size())];
        pts.push_back(Vec3{c[0] + 0.05 * gauss(rng), c[1] + 0.05 * gauss(rng),
                           c[2] + 0.05 * gauss(rng)});
      }
    } else {
      for (std::size_t i = 0; i < n; ++i) {
        pts.push_back(Vec3{rng.uniform(), rng.uniform(), rng.uniform()});
      }
    }
    const MixtureModel m = colloc::em_fit(pts, k, 7000 + round);
    ++datasets;
    for (std::size_t i = 1; i < m.ll_trace.size(); ++i) {
      if (m.ll_trace[i] < m.ll_trace[i - 1] - 1e-9) ok = false;
    }
    double wsum = 0;
    for (const double w : m.weights) wsum += w;
    if (std::fabs(wsum - 1.0) > 1e-9) ok = false;
    const colloc::Assignment a = colloc::assign(m, pts);
    for (std::size_t i = 0; i < n; ++i) {
      double rsum = 0;
      for (const double r : a.responsibilities[i]) rsum += r;
      if (std::fabs(rsum - 1.0) > 1e-9) ok = false;
    }
    if (k == 1) {
      Vec3 mean{0, 0, 0};
      for (const Vec3& p : pts) {
        for (int d = 0; d < 3; ++d) mean[d] += p[d];
      }
      for (int d = 0; d < 3; ++d) mean[d] /= static_cast<double>(n);
      Vec3 var{0, 0, 0};
      for (const Vec3& p : pts) {
        for (int d = 0; d < 3; ++d) var[d] += (p[d] - mean[d]) * (p[d] - mean[d]);
      }
      for (int d = 0; d < 3; ++d) {
        var[d] = std::max(1e-6, var[d] / static_cast<double>(n));
        if (std::fabs(m.means[0][d] - mean[d]) > 1e-9) ok = false;
        if (std::fabs(m.variances[0][d] - var[d]) > 1e-9) ok = false;
      }
    }
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::ostringstream os;
  os << datasets << " datasets, " << secs << "s";
  detail = os.str();
  return ok && datasets >= 100 && secs < 60.0;
}

bool two_blob_recovery(std::string& detail) {
  int good = 0;
  for (int seed = 0; seed < 100; ++seed) {
    colloc::Rng rng(123456 + seed);
    std::vector<Vec3> pts;
    for (int i = 0; i < 100; ++i) {
      pts.push_back(
          Vec3{0.1 + 0.03 * gauss(rng), 0.1 + 0.03 * gauss(rng), 0.1 + 0.03 * gauss(rng)});
    }
    for (int i = 0; i < 100; ++i) {
      pts.push_back(
          Vec3{0.9 + 0.03 * gauss(rng), 0.9 + 0.03 * gauss(rng), 0.9 + 0.03 * gauss(rng)});
    }
    Vec3 mean_a{0, 0, 0};
    Vec3 mean_b{0, 0, 0};
    for (int i = 0; i < 100; ++i) {
      for (int d = 0; d < 3; ++d) {
        mean_a[d] += pts[i][d] / 100.0;
        mean_b[d] += pts[100 + i][d] / 100.0;
      }
    }
    const MixtureModel m = colloc::em_fit(pts, 2, static_cast<std::uint64_t>(seed));
    auto dist = [](const Vec3& x, const Vec3& y) {
      double s = 0;
      for (int d = 0; d < 3; ++d) s += (x[d] - y[d]) * (x[d] - y[d]);
      return std::sqrt(s);
    };
    const bool direct = dist(m.means[0], mean_a) < 0.05 && dist(m.means[1], mean_b) < 0.05;
    const bool crossed = dist(m.means[0], mean_b) < 0.05 && dist(m.means[1], mean_a) < 0.05;
    if (direct || crossed) ++good;
  }
  detail = std::to_string(good) + "/100 seeds recovered";
  return good >= 95;
}

bool table_one_arithmetic(std::string& detail) {
  const colloc::Summary s =
      colloc::make_summary(20247, {1, 2, 3, 5, 7, 9}, {4, 6, 8}, 13241, 7006, 0);
  std::ostringstream os;
  os << "13241/20247 -> " << s.retained_pct << ", 7006/20247 -> " << s.excluded_pct;
  detail = os.str();
  return s.retained_pct == 65.40 && s.excluded_pct == 34.60;
}

bool pruning_rule(std::string& detail) {
  colloc::Rng rng(0xB07);
  bool ok = true;
  for (int i = 0; i < 1000; ++i) {
    MixtureModel m;
    m.k = 1 + static_cast<int>(rng.uniform_index(6));
    for (int j = 0; j < m.k; ++j) {
      m.means.push_back(Vec3{rng.uniform(), rng.uniform(), rng.uniform()});
      m.variances.push_back(Vec3{1e-3, 1e-3, 1e-3});
      m.weights.push_back(1.0 / m.k);
    }
    const double t1 = rng.uniform();
    const double t2 = std::min(1.0, t1 + rng.uniform() * (1.0 - t1));
    const auto v1 = colloc::prune(m, t1);
    const auto v2 = colloc::prune(m, t2);
    for (int j = 0; j < m.k; ++j) {
      const double mx = std::max({m.means[j][0], m.means[j][1], m.means[j][2]});
      if (v1[j].retained != (mx >= t1)) ok = false;
      if (v2[j].retained && !v1[j].retained) ok = false;  // monotone in the threshold
    }
  }
  detail = "1000 random models";
  return ok;
}

colloc::SynthEvalResult run_default_synth(const fs::path& out) {
  colloc::PipelineConfig cfg;
  cfg.out_dir = out.string();
  const colloc::SynthSpec spec =
      colloc::make_default_spec(2000, 100000, 1.0, 50, 30.0, 0.05, 42);
  return colloc::run_synth_eval(spec, cfg);
}

bool e2e_default_metrics(std::string& detail, colloc::SynthEvalResult& result,
                         fs::path& out_dir) {
  const auto start = std::chrono::steady_clock::now();
  out_dir = work_dir("e2e_default");
  result = run_default_synth(out_dir);
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::ostringstream os;
  os << "recall " << result.metrics.recall << ", reduction " << result.metrics.reduction
     << ", k " << result.extract.chosen_k << ", " << result.extract.distinct_bigrams
     << " bigrams, " << secs << "s";
  detail = os.str();
  return result.metrics.recall >= 0.90 && result.metrics.reduction >= 0.20 && secs < 60.0;
}

bool determinism(std::string& detail) {
  const fs::path dir = work_dir("determinism");
  const colloc::SynthSpec spec = colloc::make_default_spec(500, 30000, 1.0, 10, 30.0, 0.05, 9);
  const colloc::SynthCorpus corpus = colloc::generate(spec);
  colloc::write_file(dir / "corpus.txt", corpus.text);
  std::string stops;
  for (const std::string& s : corpus.stops.entries) stops += s + '\n';
  colloc::write_file(dir / "stop.txt", stops);

  auto run = [&](const std::string& name, int threads) {
    colloc::PipelineConfig cfg;
    cfg.corpus_path = (dir / "corpus.txt").string();
    cfg.stoplist_path = (dir / "stop.txt").string();
    cfg.out_dir = (dir / name).string();
    cfg.clusters.auto_select = false;
    cfg.clusters.k = 7;
    cfg.threads = threads;
    colloc::run_extract(cfg);
    return cfg.out_dir;
  };
  const std::string a = run("a", 1);
  const std::string b = run("b", 1);
  const std::string c = run("c", 4);
  for (const char* name :
       {"candidates.tsv", "excluded.tsv", "summary.tsv", "points.csv", "model.json"}) {
    const std::string ref = colloc::read_file(fs::path(a) / name);
    if (ref != colloc::read_file(fs::path(b) / name)) {
      detail = std::string(name) + " differs between identical runs";
      return false;
    }
    if (ref != colloc::read_file(fs::path(c) / name)) {
      detail = std::string(name) + " differs across thread counts";
      return false;
    }
  }
  detail = "5 artifacts identical across reruns and threads 1 vs 4";
  return true;
}

bool normalization_bounds(std::string& detail, const fs::path& e2e_dir) {
  // Checked on the real artifact of the end-to-end run.
  const std::string csv = colloc::read_file(e2e_dir / "points.csv");
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);  // header
  double lo[3] = {1e300, 1e300, 1e300};
  double hi[3] = {-1e300, -1e300, -1e300};
  std::size_t rows = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    double x, y, z;
    int cluster;
    if (std::sscanf(line.c_str(), "%lf,%lf,%lf,%d", &x, &y, &z, &cluster) != 4) {
      detail = "unparseable row: " + line;
      return false;
    }
    const double v[3] = {x, y, z};
    for (int d = 0; d < 3; ++d) {
      if (v[d] < -1e-9 || v[d] > 1.0 + 1e-9) {
        detail = "coordinate out of [0,1]: " + line;
        return false;
      }
      lo[d] = std::min(lo[d], v[d]);
      hi[d] = std::max(hi[d], v[d]);
    }
    ++rows;
  }
  // 6-decimal output rounding allowed.
  constexpr double eps = 5e-7;
  for (int d = 0; d < 3; ++d) {
    if (hi[d] > lo[d]) {
      if (lo[d] > eps || hi[d] < 1.0 - eps) {
        std::ostringstream os;
        os << "dimension " << d << " spans [" << lo[d] << ", " << hi[d] << "]";
        detail = os.str();
        return false;
      }
    }
  }
  detail = std::to_string(rows) + " points in bounds, extrema attained per dimension";
  return rows > 0;
}

}  // namespace

int main() {
  Runner r;
  r.run("measure oracle equivalence: exhaustive N<=50 within 1e-9, under 10s",
        measure_oracle_equivalence);
  r.run("independence triple-zero: c12*N == c1*c2 forces all measures to 0",
        independence_triple_zero);
  r.run("llr non-negativity: 10000 random tables plus 0*log(0) boundaries",
        llr_non_negative);
  r.run("EM invariant suite: 100 datasets, monotone LL, normalized weights/responsibilities",
        em_invariants);
  r.run("two-blob recovery: centroids within 0.05 on >= 95 of 100 seeds",
        two_blob_recovery);
  r.run("summary arithmetic: 13241/20247 -> 65.40 and 7006/20247 -> 34.60",
        table_one_arithmetic);
  r.run("pruning rule: retained iff max centroid coordinate >= threshold, monotone",
        pruning_rule);

  colloc::SynthEvalResult e2e;
  fs::path e2e_dir;
  r.run("end-to-end synthetic run: recall >= 0.90, reduction >= 0.20, under 60s",
        [&](std::string& d) { return e2e_default_metrics(d, e2e, e2e_dir); });
  r.run("determinism: byte-identical artifacts across reruns and thread counts",
        determinism);
  r.run("normalization bounds: coordinates in [0,1] attaining 0 and 1 per dimension",
        [&](std::string& d) { return normalization_bounds(d, e2e_dir); });

  std::printf("%d criterion(s) failed\n", r.failures);
  return r.failures;
}
