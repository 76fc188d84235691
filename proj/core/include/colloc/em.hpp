#pragma once

#include <cstdint>
#include <vector>

#include "colloc/feature_space.hpp"

namespace colloc {

struct EmConfig {
  /// Stop when the log-likelihood improvement drops below
  /// tol * max(1, |previous log-likelihood|).
  double tol = 1e-6;
  int max_iter = 500;
  /// Lower bound on every per-dimension variance; keeps components from
  /// collapsing onto duplicated points.
  double variance_floor = 1e-6;
  /// Worker threads for the E-step; 0 means hardware concurrency. Results
  /// are bit-identical for every thread count: accumulation runs over
  /// fixed-size blocks combined in block order.
  int threads = 1;
};

/// A fitted diagonal-covariance Gaussian mixture over the 3D measure space.
struct MixtureModel {
  int k = 0;
  std::uint64_t seed = 0;
  std::vector<double> weights;     // sum to 1
  std::vector<Vec3> means;         // centroids c_k
  std::vector<Vec3> variances;     // diagonal, >= variance_floor
  double log_likelihood = 0.0;     // at the last E-step
  int iterations = 0;
  std::vector<double> ll_trace;    // log-likelihood per iteration, non-decreasing
};

/// Per-point cluster decision. Cluster ids are 1-based; kNoise marks points
/// whose mixture density is a robust outlier and which stay unclassified.
struct Assignment {
  static constexpr int kNoise = 0;
  std::vector<int> cluster;
  std::vector<std::vector<double>> responsibilities;  // rows sum to 1
  std::vector<double> log_density;                    // total mixture log-density
};

/// Fits a k-component mixture by EM: k-means++-style seeding of the means
/// from the supplied seed, uniform initial weights, per-dimension global
/// variance as initial variances, then alternating E/M steps until the
/// log-likelihood improvement falls below tol or max_iter is reached.
/// Throws when points is empty, k < 1, k > point count, or a coordinate is
/// not finite.
MixtureModel em_fit(const std::vector<Vec3>& points, int k, std::uint64_t seed,
                    const EmConfig& cfg = {});

/// Picks k in [k_min, k_max] by folds-fold cross-validated held-out
/// log-likelihood; ties break toward smaller k. Throws when there are not
/// enough points for the fold count or for fitting k_max components.
int select_k(const std::vector<Vec3>& points, int k_min, int k_max, int folds,
             std::uint64_t seed, const EmConfig& cfg = {});

/// Argmax-responsibility cluster per point. A point is relabeled kNoise iff
/// its mixture log-density falls below median - noise_mad_factor * MAD of
/// all per-point log-densities. An infinite factor (or zero MAD) disables
/// the rule.
Assignment assign(const MixtureModel& model, const std::vector<Vec3>& points,
                  double noise_mad_factor = 3.0);

/// Total mixture log-density of one point under a fitted model.
double mixture_log_density(const MixtureModel& model, const Vec3& x);

}  // namespace colloc
