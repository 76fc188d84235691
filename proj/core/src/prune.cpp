#include "colloc/prune.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace colloc {

namespace {

std::vector<ReportRow> emit_rows(const std::vector<FeaturePoint>& points,
                                 const Assignment& a,
                                 const std::vector<ClusterVerdict>& verdicts,
                                 bool want_retained) {
  if (points.size() != a.cluster.size()) {
    throw std::invalid_argument("emit: assignment does not cover the points");
  }
  std::vector<ReportRow> rows;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const int c = a.cluster[i];
    bool include;
    if (c == Assignment::kNoise) {
      include = want_retained;  // noise stays in the candidate pool
    } else {
      const auto& v = verdicts.at(static_cast<std::size_t>(c - 1));
      include = v.retained == want_retained;
    }
    if (include) {
      rows.push_back(ReportRow{c, points[i].w1, points[i].w2, points[i].coords});
    }
  }
  std::sort(rows.begin(), rows.end(), [](const ReportRow& a, const ReportRow& b) {
    if (a.cluster != b.cluster) return a.cluster < b.cluster;
    if (a.coords[2] != b.coords[2]) return a.coords[2] > b.coords[2];
    if (a.w1 != b.w1) return a.w1 < b.w1;
    return a.w2 < b.w2;
  });
  return rows;
}

}  // namespace

double percent_of(std::uint64_t count, std::uint64_t total) {
  const double pct = 100.0 * static_cast<double>(count) / static_cast<double>(total);
  return std::floor(pct * 100.0 + 0.5) / 100.0;
}

std::vector<ClusterVerdict> prune(const MixtureModel& model, double threshold) {
  if (!(threshold >= 0.0 && threshold <= 1.0)) {
    throw std::invalid_argument("prune: threshold must lie in [0, 1]");
  }
  std::vector<ClusterVerdict> verdicts(model.k);
  for (int j = 0; j < model.k; ++j) {
    ClusterVerdict& v = verdicts[j];
    v.cluster_id = j + 1;
    v.centroid = model.means[j];
    v.retained = std::max({v.centroid[0], v.centroid[1], v.centroid[2]}) >= threshold;
  }
  return verdicts;
}

void tally_members(std::vector<ClusterVerdict>& verdicts, const Assignment& a) {
  for (ClusterVerdict& v : verdicts) v.member_count = 0;
  for (const int c : a.cluster) {
    if (c == Assignment::kNoise) continue;
    if (c < 1 || static_cast<std::size_t>(c) > verdicts.size()) {
      throw std::invalid_argument("tally_members: cluster id outside the verdict set");
    }
    ++verdicts[static_cast<std::size_t>(c - 1)].member_count;
  }
}

Summary make_summary(std::uint64_t total, std::vector<int> retained_ids,
                     std::vector<int> excluded_ids, std::uint64_t retained,
                     std::uint64_t excluded, std::uint64_t noise) {
  if (total == 0) throw std::invalid_argument("summary: zero total");
  if (retained + excluded + noise != total) {
    throw std::invalid_argument("summary: counts do not add up to the total");
  }
  Summary s;
  s.total_bigrams = total;
  s.retained_clusters = std::move(retained_ids);
  s.excluded_clusters = std::move(excluded_ids);
  s.retained_count = retained;
  s.excluded_count = excluded;
  s.noise_count = noise;
  s.retained_pct = percent_of(retained, total);
  s.excluded_pct = percent_of(excluded, total);
  s.noise_pct = percent_of(noise, total);
  return s;
}

Summary summarize(const std::vector<ClusterVerdict>& verdicts, const Assignment& a,
                  std::uint64_t total) {
  if (total != a.cluster.size()) {
    throw std::invalid_argument("summarize: total does not match the assignment");
  }
  std::uint64_t retained = 0;
  std::uint64_t excluded = 0;
  std::uint64_t noise = 0;
  for (const int c : a.cluster) {
    if (c == Assignment::kNoise) {
      ++noise;
    } else if (verdicts.at(static_cast<std::size_t>(c - 1)).retained) {
      ++retained;
    } else {
      ++excluded;
    }
  }
  std::vector<int> retained_ids;
  std::vector<int> excluded_ids;
  for (const ClusterVerdict& v : verdicts) {
    (v.retained ? retained_ids : excluded_ids).push_back(v.cluster_id);
  }
  return make_summary(total, std::move(retained_ids), std::move(excluded_ids), retained,
                      excluded, noise);
}

std::vector<ReportRow> emit_candidates(const std::vector<FeaturePoint>& points,
                                       const Assignment& a,
                                       const std::vector<ClusterVerdict>& verdicts) {
  return emit_rows(points, a, verdicts, true);
}

std::vector<ReportRow> emit_excluded(const std::vector<FeaturePoint>& points,
                                     const Assignment& a,
                                     const std::vector<ClusterVerdict>& verdicts) {
  return emit_rows(points, a, verdicts, false);
}

}  // namespace colloc
