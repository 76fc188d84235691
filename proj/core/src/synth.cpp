#include "colloc/synth.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>
#include <stdexcept>

#include "colloc/rng.hpp"

namespace colloc {

namespace {

constexpr std::size_t kStopWords = 10;
constexpr std::size_t kPlantRankStart = 10;  // 1-based rank of the window start
constexpr std::size_t kTokensPerLine = 17;

std::string content_word(std::size_t rank, int width) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "w%0*zu", width, rank);
  return buf;
}

std::string stop_word(std::size_t i) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "s%02zu", i + 1);
  return buf;
}

int digits(std::size_t n) {
  int w = 1;
  while (n >= 10) {
    n /= 10;
    ++w;
  }
  return w;
}

void validate(const SynthSpec& spec) {
  std::vector<std::string> errs;
  if (spec.vocab_size < 2) errs.push_back("vocab_size must be >= 2");
  if (spec.corpus_tokens < 2) errs.push_back("corpus_tokens must be >= 2");
  if (!(spec.stop_fraction >= 0.0 && spec.stop_fraction < 1.0)) {
    errs.push_back("stop_fraction must lie in [0, 1)");
  }
  for (const PlantedPair& p : spec.planted) {
    if (p.boost < 1.0) errs.push_back(p.w1 + " " + p.w2 + ": boost must be >= 1");
    if (p.w1 == p.w2) errs.push_back(p.w1 + " " + p.w2 + ": self-pair");
  }
  if (!errs.empty()) {
    std::string msg = "invalid synth spec:";
    for (const std::string& e : errs) msg += " " + e + ";";
    throw std::invalid_argument(msg);
  }
}

}  // namespace

SynthSpec make_default_spec(std::size_t vocab_size, std::size_t corpus_tokens,
                            double zipf_exponent, std::size_t n_planted, double boost,
                            double stop_fraction, std::uint64_t seed) {
  SynthSpec spec;
  spec.vocab_size = vocab_size;
  spec.corpus_tokens = corpus_tokens;
  spec.zipf_exponent = zipf_exponent;
  spec.stop_fraction = stop_fraction;
  spec.seed = seed;
  if (n_planted == 0) return spec;

  // One anchor pair sits just below the Zipf head, its target picked so the
  // boosted conditional probability lands near 0.3: the pair's joint count
  // reaches the hundreds, as the strongest collocations in real corpora do.
  // Without such a pair the t and llr scales have no real top and min-max
  // normalization parks the unremarkable bulk mid-axis instead of near
  // zero. Pushing the anchor further up the head backfires: its mass
  // inflates the target's marginal and depletes its source's other
  // successors, both of which fabricate deep negative t outliers. The
  // remaining pairs occupy the 2*(n-1) ranks from 10 up, sources paired
  // with targets in inverse frequency order so every expected joint count
  // stays safely positive while the conditional probabilities stay small.
  const int width = digits(vocab_size);
  double z = 0.0;
  for (std::size_t r = 1; r <= vocab_size; ++r) {
    z += std::pow(static_cast<double>(r), -zipf_exponent);
  }
  const double raw_tgt = zipf_exponent > 0.0
                             ? std::pow(boost / (0.3 * z), 1.0 / zipf_exponent)
                             : 3.0;
  const std::size_t anchor_tgt = std::min<std::size_t>(
      vocab_size, std::max<std::size_t>(3, static_cast<std::size_t>(std::lround(raw_tgt))));
  const std::size_t anchor_src = std::max<std::size_t>(
      2, std::min<std::size_t>(anchor_tgt - 1,
                               static_cast<std::size_t>(std::lround(0.6 * anchor_tgt))));
  spec.planted.push_back(PlantedPair{content_word(anchor_src, width),
                                     content_word(anchor_tgt, width), boost});

  const std::size_t need = 2 * (n_planted - 1);
  std::vector<std::size_t> window;
  window.reserve(need);
  for (std::size_t r = kPlantRankStart; window.size() < need; ++r) {
    if (r != anchor_src && r != anchor_tgt) window.push_back(r);
  }
  if (!window.empty() && window.back() > vocab_size) {
    throw std::invalid_argument("make_default_spec: vocabulary too small for the planted pairs");
  }
  for (std::size_t i = 0; i + 1 < n_planted; ++i) {
    spec.planted.push_back(PlantedPair{content_word(window[i], width),
                                       content_word(window[need - 1 - i], width), boost});
  }
  return spec;
}

SynthCorpus generate(const SynthSpec& spec) {
  validate(spec);
  const std::size_t v = spec.vocab_size;
  const int width = digits(v);

  // Zipfian pmf / cdf over ranks 1..v.
  std::vector<double> pmf(v);
  double z = 0.0;
  for (std::size_t r = 1; r <= v; ++r) {
    pmf[r - 1] = std::pow(static_cast<double>(r), -spec.zipf_exponent);
    z += pmf[r - 1];
  }
  std::vector<double> cdf(v);
  double cum = 0.0;
  for (std::size_t r = 0; r < v; ++r) {
    pmf[r] /= z;
    cum += pmf[r];
    cdf[r] = cum;
  }
  cdf[v - 1] = 1.0;

  // Resolve planted words to ranks and build the per-source boost tables.
  auto resolve = [&](const std::string& w) -> std::size_t {
    std::size_t r = 0;
    bool ok = w.size() >= 2 && w[0] == 'w';
    for (std::size_t i = 1; ok && i < w.size(); ++i) {
      ok = w[i] >= '0' && w[i] <= '9';
      r = r * 10 + static_cast<std::size_t>(w[i] - '0');
    }
    if (!ok || r < 1 || r > v) {
      throw std::invalid_argument("generate: planted word '" + w + "' not in vocabulary");
    }
    return r - 1;
  };
  struct Target {
    std::size_t rank;
    double prob;  // boosted conditional probability, boost * pmf[rank]
  };
  std::map<std::size_t, std::vector<Target>> targets_of;
  for (const PlantedPair& p : spec.planted) {
    targets_of[resolve(p.w1)].push_back(Target{resolve(p.w2), p.boost * pmf[resolve(p.w2)]});
  }
  for (auto& [src, targets] : targets_of) {
    double boosted_mass = 0.0;
    double base_mass = 0.0;
    for (const Target& t : targets) {
      boosted_mass += t.prob;
      base_mass += pmf[t.rank];
    }
    if (boosted_mass >= 1.0 - 1e-9 || base_mass >= 1.0) {
      throw std::invalid_argument("generate: boosted probabilities for source '" +
                                  content_word(src + 1, width) + "' exceed 1");
    }
  }

  Rng rng(spec.seed);
  auto draw_base = [&] {
    const double u = rng.uniform();
    const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    return static_cast<std::size_t>(it - cdf.begin());
  };

  SynthCorpus out;
  out.gold.pairs = spec.planted;
  if (spec.stop_fraction > 0.0) {
    for (std::size_t i = 0; i < kStopWords; ++i) out.stops.entries.insert(stop_word(i));
  }
  out.text.reserve(spec.corpus_tokens * (width + 2));

  constexpr std::size_t kNoPrev = static_cast<std::size_t>(-1);
  std::size_t prev = kNoPrev;
  for (std::size_t pos = 0; pos < spec.corpus_tokens; ++pos) {
    std::string token;
    if (spec.stop_fraction > 0.0 && rng.uniform() < spec.stop_fraction) {
      token = stop_word(rng.uniform_index(kStopWords));
      prev = kNoPrev;
    } else {
      std::size_t rank;
      const auto t_it = prev == kNoPrev ? targets_of.end() : targets_of.find(prev);
      if (t_it != targets_of.end()) {
        const std::vector<Target>& targets = t_it->second;
        double boosted_mass = 0.0;
        for (const Target& t : targets) boosted_mass += t.prob;
        const double u = rng.uniform();
        if (u < boosted_mass) {
          double cum_t = 0.0;
          rank = targets.back().rank;
          for (const Target& t : targets) {
            cum_t += t.prob;
            if (u < cum_t) {
              rank = t.rank;
              break;
            }
          }
        } else {
          // Complement: base distribution conditioned on non-target ranks,
          // scaled to 1 - boosted_mass. Rejection keeps the probabilities exact.
          auto is_target = [&](std::size_t r) {
            for (const Target& t : targets) {
              if (t.rank == r) return true;
            }
            return false;
          };
          do {
            rank = draw_base();
          } while (is_target(rank));
        }
      } else {
        rank = draw_base();
      }
      token = content_word(rank + 1, width);
      prev = rank;
    }
    out.text += token;
    out.text += (pos + 1) % kTokensPerLine == 0 ? '\n' : ' ';
  }
  if (!out.text.empty() && out.text.back() == ' ') out.text.back() = '\n';
  return out;
}

GradeMetrics grade(const std::vector<ReportRow>& candidates,
                   const std::vector<ReportRow>& excluded, const GoldSet& gold) {
  if (gold.pairs.empty()) throw std::invalid_argument("grade: empty gold set");
  std::set<std::pair<std::string, std::string>> cand_pairs;
  for (const ReportRow& r : candidates) cand_pairs.insert({r.w1, r.w2});
  for (const ReportRow& r : excluded) {
    if (cand_pairs.count({r.w1, r.w2})) {
      throw std::invalid_argument("grade: tables not disjoint at " + r.w1 + " " + r.w2);
    }
  }
  std::size_t hit = 0;
  for (const PlantedPair& p : gold.pairs) {
    if (cand_pairs.count({p.w1, p.w2})) ++hit;
  }
  GradeMetrics m;
  m.candidate_count = candidates.size();
  m.excluded_count = excluded.size();
  m.recall = static_cast<double>(hit) / static_cast<double>(gold.pairs.size());
  const std::uint64_t denom = m.candidate_count + m.excluded_count;
  m.reduction = denom == 0 ? 0.0 : static_cast<double>(m.excluded_count) / static_cast<double>(denom);
  return m;
}

}  // namespace colloc
