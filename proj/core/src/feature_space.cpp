#include "colloc/feature_space.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace colloc {

namespace {

double scale(double value, double lo, double hi) {
  if (!(hi > lo)) return 0.0;
  return std::clamp((value - lo) / (hi - lo), 0.0, 1.0);
}

}  // namespace

NormalizationParams fit_normalizer(const std::vector<MeasureVector>& raws) {
  if (raws.empty()) {
    throw std::invalid_argument("fit_normalizer: empty population");
  }
  constexpr double kInf = std::numeric_limits<double>::infinity();
  Vec3 lo{kInf, kInf, kInf};
  Vec3 hi{-kInf, -kInf, -kInf};
  auto take = [](double v, double& mn, double& mx) {
    mn = std::min(mn, v);
    mx = std::max(mx, v);
  };
  for (const MeasureVector& m : raws) {
    take(m.mi, lo[0], hi[0]);
    if (!m.t_degenerate) take(m.t, lo[1], hi[1]);
    take(m.llr, lo[2], hi[2]);
  }
  NormalizationParams p;
  for (int d = 0; d < 3; ++d) {
    if (lo[d] > hi[d]) {  // every value excluded (all-degenerate t axis)
      lo[d] = hi[d] = 0.0;
    }
    p.min[d] = lo[d];
    p.max[d] = hi[d];
  }
  return p;
}

Vec3 normalize(const MeasureVector& raw, const NormalizationParams& p) {
  Vec3 c;
  c[0] = scale(raw.mi, p.min[0], p.max[0]);
  // A degenerate t is maximal evidence, but the zero-range convention wins:
  // a dimension with no spread never scores above the pruning threshold.
  c[1] = raw.t_degenerate ? (p.max[1] > p.min[1] ? 1.0 : 0.0)
                          : scale(raw.t, p.min[1], p.max[1]);
  c[2] = scale(raw.llr, p.min[2], p.max[2]);
  return c;
}

FeatureSet build_points(const BigramTable& table, VarianceMode mode) {
  if (table.pairs.empty()) {
    throw std::invalid_argument("build_points: empty bigram table");
  }
  FeatureSet fs;
  fs.points.reserve(table.pairs.size());
  for (const auto& [pair, c12] : table.pairs) {
    const auto u1 = table.unigrams.find(pair.first);
    const auto u2 = table.unigrams.find(pair.second);
    if (u1 == table.unigrams.end() || u2 == table.unigrams.end()) {
      fs.diagnostics.errors.push_back(pair.first + " " + pair.second +
                                      ": missing unigram count");
      continue;
    }
    try {
      const BigramStats raw_stats{c12, u1->second, u2->second, table.positions};
      const BigramStats stats =
          BigramStats::clamped(c12, u1->second, u2->second, table.positions);
      if (stats.c1 != raw_stats.c1 || stats.c2 != raw_stats.c2) {
        ++fs.diagnostics.clamped_marginals;
      }
      FeaturePoint pt;
      pt.w1 = pair.first;
      pt.w2 = pair.second;
      pt.raw = measure_all(stats, mode);
      if (pt.raw.t_degenerate) ++fs.diagnostics.degenerate_t;
      fs.points.push_back(std::move(pt));
    } catch (const std::exception& e) {
      fs.diagnostics.errors.push_back(pair.first + " " + pair.second + ": " + e.what());
    }
  }
  if (fs.points.empty()) {
    throw std::invalid_argument("build_points: no bigram produced a measurable point");
  }
  std::vector<MeasureVector> raws;
  raws.reserve(fs.points.size());
  for (const FeaturePoint& pt : fs.points) raws.push_back(pt.raw);
  fs.norm = fit_normalizer(raws);
  for (FeaturePoint& pt : fs.points) pt.coords = normalize(pt.raw, fs.norm);
  return fs;
}

}  // namespace colloc
