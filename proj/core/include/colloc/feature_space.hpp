#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "colloc/corpus.hpp"
#include "colloc/measures.hpp"

namespace colloc {

/// A point in the (mi, t, llr) measure space.
using Vec3 = std::array<double, 3>;

/// Per-dimension min/max of the raw measures over the whole bigram
/// population; the parameters of the min-max normalization.
struct NormalizationParams {
  Vec3 min{0.0, 0.0, 0.0};
  Vec3 max{0.0, 0.0, 0.0};
};

/// One distinct bigram with its raw measures and normalized coordinates
/// x = N(mi), y = N(t), z = N(llr), each in [0, 1].
struct FeaturePoint {
  std::string w1;
  std::string w2;
  MeasureVector raw;
  Vec3 coords{0.0, 0.0, 0.0};
};

struct BuildDiagnostics {
  /// Bigrams whose marginals needed the feasibility projection.
  std::size_t clamped_marginals = 0;
  /// Bigrams with a degenerate t statistic (c12 == n).
  std::size_t degenerate_t = 0;
  /// Per-bigram failures; the batch never aborts.
  std::vector<std::string> errors;
};

struct FeatureSet {
  std::vector<FeaturePoint> points;  // one per distinct bigram, (w1, w2) order
  NormalizationParams norm;
  BuildDiagnostics diagnostics;
};

/// Per-dimension min/max over the population. Degenerate t values are
/// excluded from fitting the t dimension. Throws on an empty collection.
NormalizationParams fit_normalizer(const std::vector<MeasureVector>& raws);

/// (value - min) / (max - min) per dimension, clamped to [0, 1]. A
/// zero-range dimension maps to 0. A degenerate t maps to 1 on the t axis
/// when that axis has any spread, otherwise to 0 like the rest of it.
Vec3 normalize(const MeasureVector& raw, const NormalizationParams& p);

/// Computes raw measures for every distinct bigram in the table, fits the
/// normalizer over the population and assembles the feature points.
FeatureSet build_points(const BigramTable& table,
                        VarianceMode mode = VarianceMode::kFull);

}  // namespace colloc
