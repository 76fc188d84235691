#include <doctest.h>

#include <cmath>
#include <set>

#include "colloc/io.hpp"
#include "colloc/prune.hpp"
#include "colloc/rng.hpp"

using colloc::Assignment;
using colloc::ClusterVerdict;
using colloc::MixtureModel;
using colloc::ReportRow;
using colloc::Summary;
using colloc::Vec3;

namespace {

MixtureModel model_with(const std::vector<Vec3>& centroids) {
  MixtureModel m;
  m.k = static_cast<int>(centroids.size());
  m.means = centroids;
  m.weights.assign(m.k, 1.0 / m.k);
  m.variances.assign(m.k, Vec3{1e-3, 1e-3, 1e-3});
  return m;
}

}  // namespace

TEST_CASE("prune applies the max-coordinate threshold inclusively") {
  const auto v = colloc::prune(
      model_with({Vec3{0.32, 0.05, 0.02}, Vec3{0.29, 0.29, 0.29}, Vec3{0.1, 0.30, 0.0}}),
      0.30);
  CHECK(v[0].retained);        // one measure exceeds 30%
  CHECK_FALSE(v[1].retained);  // all below the cut
  CHECK(v[2].retained);        // exact boundary counts as retained
  CHECK(v[0].cluster_id == 1);
  CHECK(v[2].cluster_id == 3);
}

TEST_CASE("threshold 0 retains everything, threshold above 1 is rejected") {
  const auto all = colloc::prune(model_with({Vec3{0, 0, 0}, Vec3{0.5, 0, 0}}), 0.0);
  CHECK(all[0].retained);
  CHECK(all[1].retained);
  CHECK_THROWS_AS(colloc::prune(model_with({Vec3{0, 0, 0}}), 1.5), std::invalid_argument);
  CHECK_THROWS_AS(colloc::prune(model_with({Vec3{0, 0, 0}}), -0.1), std::invalid_argument);
}

TEST_CASE("retained iff max coordinate reaches the threshold, monotone in the threshold") {
  colloc::Rng rng(616);
  for (int i = 0; i < 300; ++i) {
    const Vec3 c{rng.uniform(), rng.uniform(), rng.uniform()};
    const double t1 = rng.uniform();
    const double t2 = std::min(1.0, t1 + rng.uniform() * (1.0 - t1));
    const auto v1 = colloc::prune(model_with({c}), t1);
    const auto v2 = colloc::prune(model_with({c}), t2);
    CHECK(v1[0].retained == (std::max({c[0], c[1], c[2]}) >= t1));
    if (v2[0].retained) CHECK(v1[0].retained);  // raising the cut never un-excludes
  }
}

TEST_CASE("tally_members counts cluster membership and flags stray ids") {
  auto verdicts = colloc::prune(model_with({Vec3{0.5, 0, 0}, Vec3{0, 0, 0}}), 0.3);
  Assignment a;
  a.cluster = {1, 1, 2, Assignment::kNoise, 1};
  colloc::tally_members(verdicts, a);
  CHECK(verdicts[0].member_count == 3);
  CHECK(verdicts[1].member_count == 1);

  Assignment bad;
  bad.cluster = {3};
  CHECK_THROWS_AS(colloc::tally_members(verdicts, bad), std::invalid_argument);
}

TEST_CASE("summary reproduces the published arithmetic exactly") {
  const Summary s =
      colloc::make_summary(20247, {1, 2, 3, 5, 7, 9}, {4, 6, 8}, 13241, 7006, 0);
  CHECK(s.retained_pct == 65.40);
  CHECK(s.excluded_pct == 34.60);
  CHECK(s.retained_count + s.excluded_count + s.noise_count == s.total_bigrams);
  CHECK(s.candidate_count() == 13241);
}

TEST_CASE("percentages are rounded half-up to two decimals") {
  CHECK(colloc::percent_of(1, 3) == 33.33);
  CHECK(colloc::percent_of(2, 3) == 66.67);
  CHECK(colloc::percent_of(1, 8) == 12.50);
  CHECK(colloc::percent_of(5, 4000) == 0.13);  // 0.125 rounds up
  CHECK(colloc::percent_of(10, 10) == 100.00);
}

TEST_CASE("summary percentages add up to 100 within a cent") {
  colloc::Rng rng(99);
  for (int i = 0; i < 200; ++i) {
    const std::uint64_t r = rng.uniform_index(5000);
    const std::uint64_t e = rng.uniform_index(5000);
    const std::uint64_t n = rng.uniform_index(500);
    if (r + e + n == 0) continue;
    const Summary s = colloc::make_summary(r + e + n, {1}, {2}, r, e, n);
    CHECK(std::fabs(s.retained_pct + s.excluded_pct + s.noise_pct - 100.0) <= 0.01 + 1e-9);
  }
}

TEST_CASE("summarize cross-checks totals") {
  const auto verdicts = colloc::prune(model_with({Vec3{0.5, 0, 0}, Vec3{0, 0, 0}}), 0.3);
  Assignment a;
  a.cluster = {1, 2, 2, Assignment::kNoise};
  const Summary s = colloc::summarize(verdicts, a, 4);
  CHECK(s.retained_count == 1);
  CHECK(s.excluded_count == 2);
  CHECK(s.noise_count == 1);
  CHECK(s.retained_clusters == std::vector<int>{1});
  CHECK(s.excluded_clusters == std::vector<int>{2});
  CHECK(s.candidate_count() == 2);
  CHECK_THROWS_AS(colloc::summarize(verdicts, a, 5), std::invalid_argument);
  CHECK_THROWS_AS(colloc::summarize(verdicts, Assignment{}, 0), std::invalid_argument);
}

namespace {

struct Fixture {
  std::vector<colloc::FeaturePoint> points;
  Assignment assignment;
  std::vector<ClusterVerdict> verdicts;

  // Two retained clusters (1, 3), one excluded (2), one noise point.
  Fixture() {
    auto add = [&](const char* w1, const char* w2, int cluster, double z) {
      colloc::FeaturePoint p;
      p.w1 = w1;
      p.w2 = w2;
      p.coords = Vec3{0.5, 0.5, z};
      points.push_back(p);
      assignment.cluster.push_back(cluster);
    };
    add("b", "c", 1, 0.9);
    add("a", "b", 1, 0.9);   // llr tie with (b,c): lexicographic order decides
    add("d", "e", 2, 0.7);
    add("e", "f", 3, 0.2);
    add("x", "y", Assignment::kNoise, 0.1);
    add("c", "d", 1, 0.95);
    verdicts = colloc::prune(
        model_with({Vec3{0.6, 0, 0}, Vec3{0.1, 0.1, 0.1}, Vec3{0, 0.4, 0}}), 0.3);
  }
};

}  // namespace

TEST_CASE("emit_candidates and emit_excluded partition the points") {
  Fixture f;
  const auto cand = colloc::emit_candidates(f.points, f.assignment, f.verdicts);
  const auto excl = colloc::emit_excluded(f.points, f.assignment, f.verdicts);

  CHECK(cand.size() + excl.size() == f.points.size());
  std::set<std::pair<std::string, std::string>> seen;
  for (const ReportRow& r : cand) seen.insert({r.w1, r.w2});
  for (const ReportRow& r : excl) {
    CHECK(seen.count({r.w1, r.w2}) == 0);
    seen.insert({r.w1, r.w2});
  }
  CHECK(seen.size() == f.points.size());

  // The excluded table contains exactly cluster 2's member.
  REQUIRE(excl.size() == 1);
  CHECK(excl[0].w1 == "d");
  CHECK(excl[0].cluster == 2);

  // Noise rides along as a candidate, ordered before the numbered clusters.
  CHECK(cand[0].cluster == Assignment::kNoise);
  CHECK(cand[0].w1 == "x");
}

TEST_CASE("candidate rows order by cluster, then llr desc, then words") {
  Fixture f;
  const auto cand = colloc::emit_candidates(f.points, f.assignment, f.verdicts);
  // After noise: cluster 1 by z descending 0.95, then the 0.9 tie broken
  // lexicographically (a,b) < (b,c), then cluster 3.
  REQUIRE(cand.size() == 5);
  CHECK(cand[1].w1 == "c");
  CHECK(cand[2].w1 == "a");
  CHECK(cand[3].w1 == "b");
  CHECK(cand[4].cluster == 3);
}

TEST_CASE("report rows format as TSV with NOISE labels and 6 decimals") {
  Fixture f;
  const auto cand = colloc::emit_candidates(f.points, f.assignment, f.verdicts);
  const std::string tsv = colloc::format_report_rows(cand);
  CHECK(tsv.rfind("cluster\tw1\tw2\tmi\tt\tllr\n", 0) == 0);
  CHECK(tsv.find("NOISE\tx\ty\t0.500000\t0.500000\t0.100000\n") != std::string::npos);
  CHECK(tsv.find("1\tc\td\t0.500000\t0.500000\t0.950000\n") != std::string::npos);
}

TEST_CASE("summary formats as the three-row table") {
  const Summary s = colloc::make_summary(10, {1, 2}, {3}, 6, 3, 1);
  const std::string tsv = colloc::format_summary(s);
  CHECK(tsv == "total\tcandidate\tclusters\tcount\tpct\n"
               "10\tyes\t1,2\t6\t60.00\n"
               "10\tno\t3\t3\t30.00\n"
               "10\tyes\tnoise\t1\t10.00\n");
}

TEST_CASE("model json round-trips everything assign needs") {
  MixtureModel m = model_with({Vec3{0.25, 0.5, 0.75}, Vec3{0.1, 0.2, 0.3}});
  m.seed = 42;
  m.log_likelihood = -123.456;
  m.iterations = 17;
  const MixtureModel back = colloc::parse_model_json(colloc::format_model_json(m));
  CHECK(back.k == m.k);
  CHECK(back.seed == m.seed);
  CHECK(back.weights == m.weights);
  CHECK(back.means == m.means);
  CHECK(back.variances == m.variances);
  CHECK(back.log_likelihood == m.log_likelihood);
  CHECK(back.iterations == m.iterations);
  CHECK_THROWS(colloc::parse_model_json("{\"k\": 2, \"seed\": 0, \"weights\": [1.0]}"));
}
