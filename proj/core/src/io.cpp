#include "colloc/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace colloc {

namespace {

std::string fixed6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

std::string fixed2(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

// Tokens cannot contain whitespace, but a non-default separator set can
// leave commas inside them; quote such fields.
std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"") == std::string::npos) return s;
  std::string out = "\"";
  for (const char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string join_ids(const std::vector<int>& ids) {
  if (ids.empty()) return "-";
  std::string out;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (i > 0) out += ',';
    out += std::to_string(ids[i]);
  }
  return out;
}

}  // namespace

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw file_error("cannot open file", path);
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw file_error("cannot read file", path);
  return ss.str();
}

void write_file(const std::filesystem::path& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw file_error("cannot open file for writing", path);
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  out.flush();
  if (!out) throw file_error("cannot write file", path);
}

std::string format_report_rows(const std::vector<ReportRow>& rows) {
  std::string out = "cluster\tw1\tw2\tmi\tt\tllr\n";
  for (const ReportRow& r : rows) {
    out += r.cluster == Assignment::kNoise ? "NOISE" : std::to_string(r.cluster);
    out += '\t';
    out += r.w1;
    out += '\t';
    out += r.w2;
    for (int d = 0; d < 3; ++d) {
      out += '\t';
      out += fixed6(r.coords[d]);
    }
    out += '\n';
  }
  return out;
}

std::string format_summary(const Summary& s) {
  std::string out = "total\tcandidate\tclusters\tcount\tpct\n";
  const std::string total = std::to_string(s.total_bigrams);
  out += total + "\tyes\t" + join_ids(s.retained_clusters) + '\t' +
         std::to_string(s.retained_count) + '\t' + fixed2(s.retained_pct) + '\n';
  out += total + "\tno\t" + join_ids(s.excluded_clusters) + '\t' +
         std::to_string(s.excluded_count) + '\t' + fixed2(s.excluded_pct) + '\n';
  out += total + "\tyes\tnoise\t" + std::to_string(s.noise_count) + '\t' +
         fixed2(s.noise_pct) + '\n';
  return out;
}

std::string format_points_csv(const std::vector<FeaturePoint>& points, const Assignment& a) {
  std::string out = "x,y,z,cluster\n";
  for (std::size_t i = 0; i < points.size(); ++i) {
    const Vec3& c = points[i].coords;
    out += fixed6(c[0]) + ',' + fixed6(c[1]) + ',' + fixed6(c[2]) + ',' +
           std::to_string(a.cluster[i]) + '\n';
  }
  return out;
}

std::string format_feature_points_csv(const FeatureSet& fs) {
  std::string out = "w1,w2,mi,t,llr,x,y,z\n";
  for (const FeaturePoint& p : fs.points) {
    out += csv_field(p.w1) + ',' + csv_field(p.w2) + ',' + fixed6(p.raw.mi) + ',' + fixed6(p.raw.t) + ',' +
           fixed6(p.raw.llr) + ',' + fixed6(p.coords[0]) + ',' + fixed6(p.coords[1]) +
           ',' + fixed6(p.coords[2]) + '\n';
  }
  return out;
}

std::string format_model_json(const MixtureModel& m) {
  nlohmann::json j;
  j["k"] = m.k;
  j["seed"] = m.seed;
  j["weights"] = m.weights;
  j["centroids"] = m.means;
  j["variances"] = m.variances;
  j["log_likelihood"] = m.log_likelihood;
  j["iterations"] = m.iterations;
  return j.dump(2) + "\n";
}

MixtureModel parse_model_json(const std::string& text) {
  const nlohmann::json j = nlohmann::json::parse(text);
  MixtureModel m;
  m.k = j.at("k").get<int>();
  m.seed = j.at("seed").get<std::uint64_t>();
  m.weights = j.at("weights").get<std::vector<double>>();
  m.means = j.at("centroids").get<std::vector<Vec3>>();
  m.variances = j.at("variances").get<std::vector<Vec3>>();
  m.log_likelihood = j.at("log_likelihood").get<double>();
  m.iterations = j.at("iterations").get<int>();
  if (m.k < 1 || m.weights.size() != static_cast<std::size_t>(m.k) ||
      m.means.size() != static_cast<std::size_t>(m.k) ||
      m.variances.size() != static_cast<std::size_t>(m.k)) {
    throw std::invalid_argument("model json: inconsistent component counts");
  }
  return m;
}

std::string format_gold_tsv(const GoldSet& gold) {
  std::string out = "w1\tw2\tboost\n";
  for (const PlantedPair& p : gold.pairs) {
    out += p.w1 + '\t' + p.w2 + '\t' + fixed6(p.boost) + '\n';
  }
  return out;
}

GoldSet parse_gold_tsv(const std::string& text) {
  GoldSet gold;
  std::istringstream in(text);
  std::string line;
  bool header = true;
  while (std::getline(in, line)) {
    if (header) {
      header = false;
      continue;
    }
    if (line.empty()) continue;
    const std::size_t t1 = line.find('\t');
    const std::size_t t2 = t1 == std::string::npos ? std::string::npos : line.find('\t', t1 + 1);
    if (t2 == std::string::npos) throw std::invalid_argument("gold tsv: malformed line: " + line);
    gold.pairs.push_back(PlantedPair{line.substr(0, t1), line.substr(t1 + 1, t2 - t1 - 1),
                                     std::stod(line.substr(t2 + 1))});
  }
  return gold;
}

std::string format_metrics_json(const GradeMetrics& m) {
  nlohmann::json j;
  j["recall"] = m.recall;
  j["reduction"] = m.reduction;
  j["candidate_count"] = m.candidate_count;
  j["excluded_count"] = m.excluded_count;
  return j.dump(2) + "\n";
}

}  // namespace colloc
