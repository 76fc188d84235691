#include "colloc/em.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <thread>

#include "colloc/rng.hpp"

namespace colloc {

namespace {

constexpr double kLog2Pi = 1.8378770664093454836;
constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Fixed accumulation block: the E-step reduction always runs over blocks of
// this size combined in block order, so results do not depend on the thread
// count.
constexpr std::size_t kBlockSize = 2048;

struct Component {
  double log_weight;
  Vec3 mean;
  Vec3 inv_var;
  double log_norm;  // -0.5 * sum_d (log(2*pi) + log var_d)
};

std::vector<Component> precompute(const MixtureModel& m) {
  std::vector<Component> comps(m.k);
  for (int k = 0; k < m.k; ++k) {
    Component& c = comps[k];
    c.log_weight = m.weights[k] > 0.0 ? std::log(m.weights[k]) : kNegInf;
    c.mean = m.means[k];
    double log_det = 0.0;
    for (int d = 0; d < 3; ++d) {
      c.inv_var[d] = 1.0 / m.variances[k][d];
      log_det += std::log(m.variances[k][d]);
    }
    c.log_norm = -0.5 * (3.0 * kLog2Pi + log_det);
    comps[k] = c;
  }
  return comps;
}

// Posterior responsibilities of one point; returns its mixture log-density.
double point_posterior(const std::vector<Component>& comps, const Vec3& x,
                       double* resp) {
  const int k = static_cast<int>(comps.size());
  double best = kNegInf;
  for (int j = 0; j < k; ++j) {
    const Component& c = comps[j];
    double quad = 0.0;
    for (int d = 0; d < 3; ++d) {
      const double diff = x[d] - c.mean[d];
      quad += diff * diff * c.inv_var[d];
    }
    resp[j] = c.log_weight + c.log_norm - 0.5 * quad;
    best = std::max(best, resp[j]);
  }
  double sum = 0.0;
  for (int j = 0; j < k; ++j) {
    resp[j] = std::exp(resp[j] - best);
    sum += resp[j];
  }
  for (int j = 0; j < k; ++j) resp[j] /= sum;
  return best + std::log(sum);
}

void run_blocks(std::size_t n_blocks, int threads, const std::function<void(std::size_t)>& body) {
  int t = threads <= 0 ? static_cast<int>(std::thread::hardware_concurrency()) : threads;
  t = std::max(1, std::min(t, static_cast<int>(n_blocks)));
  if (t == 1) {
    for (std::size_t b = 0; b < n_blocks; ++b) body(b);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(t);
  for (int i = 0; i < t; ++i) {
    pool.emplace_back([&] {
      for (std::size_t b; (b = next.fetch_add(1)) < n_blocks;) body(b);
    });
  }
  for (std::thread& th : pool) th.join();
}

struct BlockAccum {
  double ll = 0.0;
  std::vector<double> nk;
  std::vector<Vec3> sum_x;
  std::vector<Vec3> sum_xx;

  explicit BlockAccum(int k)
      : nk(k, 0.0), sum_x(k, Vec3{0, 0, 0}), sum_xx(k, Vec3{0, 0, 0}) {}
};

std::vector<Vec3> seed_means(const std::vector<Vec3>& points, int k, Rng& rng) {
  const std::size_t n = points.size();
  std::vector<Vec3> centers;
  centers.reserve(k);
  centers.push_back(points[rng.uniform_index(n)]);
  std::vector<double> d2(n, 0.0);
  auto dist2 = [](const Vec3& a, const Vec3& b) {
    double s = 0.0;
    for (int d = 0; d < 3; ++d) s += (a[d] - b[d]) * (a[d] - b[d]);
    return s;
  };
  for (std::size_t i = 0; i < n; ++i) d2[i] = dist2(points[i], centers[0]);
  while (centers.size() < static_cast<std::size_t>(k)) {
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) total += d2[i];
    std::size_t pick;
    if (total > 0.0) {
      const double target = rng.uniform() * total;
      double cum = 0.0;
      pick = n - 1;
      for (std::size_t i = 0; i < n; ++i) {
        cum += d2[i];
        if (cum > target) {
          pick = i;
          break;
        }
      }
    } else {  // all remaining distances zero (duplicated points)
      pick = rng.uniform_index(n);
    }
    centers.push_back(points[pick]);
    for (std::size_t i = 0; i < n; ++i) {
      d2[i] = std::min(d2[i], dist2(points[i], centers.back()));
    }
  }
  return centers;
}

double median_of(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace

MixtureModel em_fit(const std::vector<Vec3>& points, int k, std::uint64_t seed,
                    const EmConfig& cfg) {
  const std::size_t n = points.size();
  if (n == 0) throw std::invalid_argument("em_fit: no points");
  if (k < 1) throw std::invalid_argument("em_fit: k must be >= 1");
  if (static_cast<std::size_t>(k) > n) {
    throw std::invalid_argument("em_fit: k exceeds point count");
  }
  for (const Vec3& p : points) {
    for (int d = 0; d < 3; ++d) {
      if (!std::isfinite(p[d])) throw std::invalid_argument("em_fit: non-finite coordinate");
    }
  }

  MixtureModel model;
  model.k = k;
  model.seed = seed;
  Rng rng(seed);
  model.means = seed_means(points, k, rng);
  model.weights.assign(k, 1.0 / k);

  Vec3 global_mean{0, 0, 0};
  for (const Vec3& p : points) {
    for (int d = 0; d < 3; ++d) global_mean[d] += p[d];
  }
  for (int d = 0; d < 3; ++d) global_mean[d] /= static_cast<double>(n);
  Vec3 global_var{0, 0, 0};
  for (const Vec3& p : points) {
    for (int d = 0; d < 3; ++d) {
      const double diff = p[d] - global_mean[d];
      global_var[d] += diff * diff;
    }
  }
  for (int d = 0; d < 3; ++d) {
    global_var[d] = std::max(cfg.variance_floor, global_var[d] / static_cast<double>(n));
  }
  model.variances.assign(k, global_var);

  const std::size_t n_blocks = (n + kBlockSize - 1) / kBlockSize;
  std::vector<BlockAccum> blocks(n_blocks, BlockAccum(k));
  double prev_ll = kNegInf;

  for (int iter = 0; iter < cfg.max_iter; ++iter) {
    const std::vector<Component> comps = precompute(model);
    run_blocks(n_blocks, cfg.threads, [&](std::size_t b) {
      BlockAccum acc(k);
      std::vector<double> resp(k);
      const std::size_t lo = b * kBlockSize;
      const std::size_t hi = std::min(n, lo + kBlockSize);
      for (std::size_t i = lo; i < hi; ++i) {
        acc.ll += point_posterior(comps, points[i], resp.data());
        for (int j = 0; j < k; ++j) {
          acc.nk[j] += resp[j];
          for (int d = 0; d < 3; ++d) {
            acc.sum_x[j][d] += resp[j] * points[i][d];
            acc.sum_xx[j][d] += resp[j] * points[i][d] * points[i][d];
          }
        }
      }
      blocks[b] = std::move(acc);
    });

    BlockAccum total(k);
    for (const BlockAccum& acc : blocks) {
      total.ll += acc.ll;
      for (int j = 0; j < k; ++j) {
        total.nk[j] += acc.nk[j];
        for (int d = 0; d < 3; ++d) {
          total.sum_x[j][d] += acc.sum_x[j][d];
          total.sum_xx[j][d] += acc.sum_xx[j][d];
        }
      }
    }

    model.ll_trace.push_back(total.ll);
    model.log_likelihood = total.ll;
    model.iterations = iter + 1;
    if (iter > 0 && total.ll - prev_ll < cfg.tol * std::max(1.0, std::abs(prev_ll))) {
      break;  // parameters from the previous M-step stay in effect
    }
    prev_ll = total.ll;

    for (int j = 0; j < k; ++j) {
      model.weights[j] = total.nk[j] / static_cast<double>(n);
      if (total.nk[j] > 0.0) {
        for (int d = 0; d < 3; ++d) {
          const double mean = total.sum_x[j][d] / total.nk[j];
          model.means[j][d] = mean;
          model.variances[j][d] =
              std::max(cfg.variance_floor, total.sum_xx[j][d] / total.nk[j] - mean * mean);
        }
      } else {  // dead component: keep its mean, floor its variance
        model.variances[j] = Vec3{cfg.variance_floor, cfg.variance_floor, cfg.variance_floor};
      }
    }
  }
  return model;
}

double mixture_log_density(const MixtureModel& model, const Vec3& x) {
  const std::vector<Component> comps = precompute(model);
  std::vector<double> resp(model.k);
  return point_posterior(comps, x, resp.data());
}

Assignment assign(const MixtureModel& model, const std::vector<Vec3>& points,
                  double noise_mad_factor) {
  if (model.k < 1) throw std::invalid_argument("assign: unfitted model");
  const std::vector<Component> comps = precompute(model);
  Assignment a;
  const std::size_t n = points.size();
  a.cluster.resize(n);
  a.responsibilities.resize(n);
  a.log_density.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    a.responsibilities[i].resize(model.k);
    a.log_density[i] = point_posterior(comps, points[i], a.responsibilities[i].data());
    int best = 0;
    for (int j = 1; j < model.k; ++j) {
      if (a.responsibilities[i][j] > a.responsibilities[i][best]) best = j;
    }
    a.cluster[i] = best + 1;
  }
  if (n > 0 && std::isfinite(noise_mad_factor)) {
    const double med = median_of(a.log_density);
    std::vector<double> dev(n);
    for (std::size_t i = 0; i < n; ++i) dev[i] = std::abs(a.log_density[i] - med);
    const double mad = median_of(std::move(dev));
    if (mad > 1e-12) {
      const double cut = med - noise_mad_factor * mad;
      for (std::size_t i = 0; i < n; ++i) {
        if (a.log_density[i] < cut) a.cluster[i] = Assignment::kNoise;
      }
    }
  }
  return a;
}

int select_k(const std::vector<Vec3>& points, int k_min, int k_max, int folds,
             std::uint64_t seed, const EmConfig& cfg) {
  const std::size_t n = points.size();
  if (k_min < 1 || k_max < k_min) throw std::invalid_argument("select_k: bad k range");
  if (folds < 2) throw std::invalid_argument("select_k: need at least 2 folds");
  if (n < static_cast<std::size_t>(folds)) {
    throw std::invalid_argument("select_k: fewer points than folds");
  }
  const std::size_t max_test = (n + folds - 1) / folds;
  if (n - max_test < static_cast<std::size_t>(k_max)) {
    throw std::invalid_argument("select_k: not enough points to fit k_max on every fold");
  }

  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  Rng shuffle_rng(mix_seed(seed ^ 0x666f6c6473ull));  // "folds"
  for (std::size_t i = n - 1; i > 0; --i) {
    std::swap(order[i], order[shuffle_rng.uniform_index(i + 1)]);
  }

  // Fold fits only rank k values against each other, so they can run at a
  // looser tolerance than the final fit.
  EmConfig fold_cfg = cfg;
  fold_cfg.tol = cfg.tol * 100.0;

  int best_k = k_min;
  double best_score = kNegInf;
  for (int k = k_min; k <= k_max; ++k) {
    double held_out = 0.0;
    for (int f = 0; f < folds; ++f) {
      std::vector<Vec3> train;
      std::vector<Vec3> test;
      train.reserve(n - n / folds);
      for (std::size_t i = 0; i < n; ++i) {
        (static_cast<int>(i % folds) == f ? test : train).push_back(points[order[i]]);
      }
      const std::uint64_t fit_seed =
          mix_seed(seed ^ (static_cast<std::uint64_t>(k) * 1000003ull +
                           static_cast<std::uint64_t>(f)));
      const MixtureModel m = em_fit(train, k, fit_seed, fold_cfg);
      const std::vector<Component> comps = precompute(m);
      std::vector<double> resp(k);
      for (const Vec3& x : test) held_out += point_posterior(comps, x, resp.data());
    }
    const double score = held_out / static_cast<double>(n);
    if (score > best_score) {
      best_score = score;
      best_k = k;
    }
  }
  return best_k;
}

}  // namespace colloc
