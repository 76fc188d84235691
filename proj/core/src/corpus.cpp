#include "colloc/corpus.hpp"

#include <algorithm>

namespace colloc {

namespace {

struct Decoded {
  char32_t cp;
  std::size_t length;
};

// Strict UTF-8 decode of the sequence starting at text[pos]: rejects stray
// continuation bytes, overlong encodings, surrogates and values > U+10FFFF.
Decoded decode_utf8(std::string_view text, std::size_t pos) {
  const auto byte = [&](std::size_t i) { return static_cast<unsigned char>(text[i]); };
  const unsigned char b0 = byte(pos);
  if (b0 < 0x80) return {b0, 1};
  auto cont = [&](std::size_t i) {
    return pos + i < text.size() && (byte(pos + i) & 0xC0) == 0x80;
  };
  if ((b0 & 0xE0) == 0xC0) {
    if (!cont(1)) throw decode_error(pos);
    const char32_t cp = ((b0 & 0x1Fu) << 6) | (byte(pos + 1) & 0x3Fu);
    if (cp < 0x80) throw decode_error(pos);
    return {cp, 2};
  }
  if ((b0 & 0xF0) == 0xE0) {
    if (!cont(1) || !cont(2)) throw decode_error(pos);
    const char32_t cp =
        ((b0 & 0x0Fu) << 12) | ((byte(pos + 1) & 0x3Fu) << 6) | (byte(pos + 2) & 0x3Fu);
    if (cp < 0x800 || (cp >= 0xD800 && cp <= 0xDFFF)) throw decode_error(pos);
    return {cp, 3};
  }
  if ((b0 & 0xF8) == 0xF0) {
    if (!cont(1) || !cont(2) || !cont(3)) throw decode_error(pos);
    const char32_t cp = ((b0 & 0x07u) << 18) | ((byte(pos + 1) & 0x3Fu) << 12) |
                        ((byte(pos + 2) & 0x3Fu) << 6) | (byte(pos + 3) & 0x3Fu);
    if (cp < 0x10000 || cp > 0x10FFFF) throw decode_error(pos);
    return {cp, 4};
  }
  throw decode_error(pos);
}

void append_utf8(std::string& out, char32_t cp) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

bool is_unicode_whitespace(char32_t cp) {
  switch (cp) {
    case 0x09: case 0x0A: case 0x0B: case 0x0C: case 0x0D: case 0x20:
    case 0x85: case 0xA0: case 0x1680: case 0x2028: case 0x2029:
    case 0x202F: case 0x205F: case 0x3000:
      return true;
    default:
      return cp >= 0x2000 && cp <= 0x200A;
  }
}

// Tashkeel U+064B..U+065F, dagger alif U+0670, tatweel U+0640.
bool is_arabic_diacritic(char32_t cp) {
  return (cp >= 0x064B && cp <= 0x065F) || cp == 0x0670 || cp == 0x0640;
}

class Rules {
 public:
  explicit Rules(const TokenizerConfig& cfg) : strip_diacritics_(cfg.strip_diacritics) {
    std::size_t pos = 0;
    while (pos < cfg.separators.size()) {
      const Decoded d = decode_utf8(cfg.separators, pos);
      separators_.push_back(d.cp);
      pos += d.length;
    }
    std::sort(separators_.begin(), separators_.end());
  }

  bool is_separator(char32_t cp) const {
    return is_unicode_whitespace(cp) ||
           std::binary_search(separators_.begin(), separators_.end(), cp);
  }

  bool drop(char32_t cp) const { return strip_diacritics_ && is_arabic_diacritic(cp); }

 private:
  std::vector<char32_t> separators_;
  bool strip_diacritics_;
};

}  // namespace

std::vector<Token> tokenize(std::string_view corpus_text, const TokenizerConfig& rules) {
  const Rules r(rules);
  std::vector<Token> tokens;
  std::string current;
  auto flush = [&] {
    if (!current.empty()) {
      tokens.push_back(Token{std::move(current), tokens.size()});
      current.clear();
    }
  };
  std::size_t pos = 0;
  while (pos < corpus_text.size()) {
    const Decoded d = decode_utf8(corpus_text, pos);
    if (r.is_separator(d.cp)) {
      flush();
    } else if (!r.drop(d.cp)) {
      append_utf8(current, d.cp);
    }
    pos += d.length;
  }
  flush();
  return tokens;
}

StopList load_stoplist(std::string_view contents, const TokenizerConfig& rules) {
  StopList sl;
  std::size_t start = 0;
  while (start <= contents.size()) {
    std::size_t end = contents.find('\n', start);
    if (end == std::string_view::npos) end = contents.size();
    std::string_view line = contents.substr(start, end - start);
    while (!line.empty() && (line.front() == ' ' || line.front() == '\t' || line.front() == '\r')) {
      line.remove_prefix(1);
    }
    if (!line.empty() && line.front() != '#') {
      for (Token& t : tokenize(line, rules)) {
        sl.entries.insert(std::move(t.text));
      }
    }
    if (end == contents.size()) break;
    start = end + 1;
  }
  return sl;
}

BigramTable extract_bigrams(const std::vector<Token>& tokens, const StopList& sl) {
  BigramTable table;
  table.corpus_tokens = tokens.size();
  std::vector<bool> stop(tokens.size());
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    stop[i] = sl.contains(tokens[i].text);
    if (!stop[i]) {
      ++table.unigrams[tokens[i].text];
    }
  }
  for (std::size_t i = 0; i + 1 < tokens.size(); ++i) {
    if (!stop[i] && !stop[i + 1]) {
      ++table.pairs[{tokens[i].text, tokens[i + 1].text}];
      ++table.positions;
    }
  }
  return table;
}

void filter_min_count(BigramTable& table, std::uint64_t min_count) {
  if (min_count <= 1) return;
  for (auto it = table.pairs.begin(); it != table.pairs.end();) {
    if (it->second < min_count) {
      it = table.pairs.erase(it);
    } else {
      ++it;
    }
  }
}

}  // namespace colloc
