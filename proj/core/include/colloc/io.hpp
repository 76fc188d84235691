#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "colloc/em.hpp"
#include "colloc/feature_space.hpp"
#include "colloc/prune.hpp"
#include "colloc/synth.hpp"

namespace colloc {

/// A file that could not be read or written; path() names it.
class file_error : public std::runtime_error {
 public:
  file_error(const std::string& what, std::filesystem::path path)
      : std::runtime_error(what + ": " + path.string()), path_(std::move(path)) {}
  const std::filesystem::path& path() const noexcept { return path_; }

 private:
  std::filesystem::path path_;
};

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const std::string& contents);

/// candidates.tsv / excluded.tsv: header cluster\tw1\tw2\tmi\tt\tllr, noise
/// rows labeled NOISE, values to 6 decimals with '.' separator.
std::string format_report_rows(const std::vector<ReportRow>& rows);

/// summary.tsv: three rows (retained clusters, excluded clusters, noise)
/// with explicit counts and percentages so either noise accounting can be
/// recomputed.
std::string format_summary(const Summary& s);

/// points.csv: x,y,z,cluster with noise encoded as cluster 0.
std::string format_points_csv(const std::vector<FeaturePoint>& points, const Assignment& a);

/// features.csv: w1,w2,mi,t,llr,x,y,z -- raw measures plus normalized
/// coordinates per distinct bigram.
std::string format_feature_points_csv(const FeatureSet& fs);

/// Model dump with everything assign() needs: k, seed, weights, centroids,
/// variances, log_likelihood, iterations.
std::string format_model_json(const MixtureModel& m);
MixtureModel parse_model_json(const std::string& text);

/// gold.tsv: w1\tw2\tboost.
std::string format_gold_tsv(const GoldSet& gold);
GoldSet parse_gold_tsv(const std::string& text);

/// metrics.json: recall, reduction, candidate_count, excluded_count.
std::string format_metrics_json(const GradeMetrics& m);

}  // namespace colloc
