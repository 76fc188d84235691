#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "colloc/em.hpp"
#include "colloc/feature_space.hpp"

namespace colloc {

/// Retain/exclude decision for one cluster. A cluster is retained iff the
/// largest centroid coordinate reaches the threshold.
struct ClusterVerdict {
  int cluster_id = 0;  // 1-based
  Vec3 centroid{0.0, 0.0, 0.0};
  bool retained = false;
  std::uint64_t member_count = 0;
};

/// The run summary: three-way accounting (retained clusters, excluded
/// clusters, noise). Noise points stay in the candidate pool, so the
/// candidate total is retained_count + noise_count.
struct Summary {
  std::uint64_t total_bigrams = 0;
  std::vector<int> retained_clusters;
  std::vector<int> excluded_clusters;
  std::uint64_t retained_count = 0;
  std::uint64_t excluded_count = 0;
  std::uint64_t noise_count = 0;
  double retained_pct = 0.0;
  double excluded_pct = 0.0;
  double noise_pct = 0.0;

  std::uint64_t candidate_count() const { return retained_count + noise_count; }
};

/// One emitted report row; cluster 0 encodes noise. The mi/t/llr columns
/// hold the normalized coordinates.
struct ReportRow {
  int cluster = 0;
  std::string w1;
  std::string w2;
  Vec3 coords{0.0, 0.0, 0.0};
};

/// 100 * count / total rounded half-up to 2 decimals.
double percent_of(std::uint64_t count, std::uint64_t total);

/// Applies the centroid threshold: retained iff max coordinate >= threshold
/// (inclusive). member_count is left at 0; see tally_members.
/// Requires 0 <= threshold <= 1.
std::vector<ClusterVerdict> prune(const MixtureModel& model, double threshold);

/// Fills member_count from an assignment over the same model.
void tally_members(std::vector<ClusterVerdict>& verdicts, const Assignment& a);

/// Pure summary arithmetic from pre-tallied counts; throws when total is 0
/// or the counts do not add up to it.
Summary make_summary(std::uint64_t total, std::vector<int> retained_ids,
                     std::vector<int> excluded_ids, std::uint64_t retained,
                     std::uint64_t excluded, std::uint64_t noise);

/// Tallies the assignment against the verdicts and builds the summary.
Summary summarize(const std::vector<ClusterVerdict>& verdicts, const Assignment& a,
                  std::uint64_t total);

/// Rows for members of retained clusters plus noise points, ordered by
/// cluster (noise first), then descending normalized llr, then (w1, w2).
std::vector<ReportRow> emit_candidates(const std::vector<FeaturePoint>& points,
                                       const Assignment& a,
                                       const std::vector<ClusterVerdict>& verdicts);

/// Rows for members of excluded clusters, same ordering.
std::vector<ReportRow> emit_excluded(const std::vector<FeaturePoint>& points,
                                     const Assignment& a,
                                     const std::vector<ClusterVerdict>& verdicts);

}  // namespace colloc
