#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace colloc {

/// One corpus token: normalized UTF-8 text plus its 0-based index in the
/// token stream. Token text is never empty and never contains a separator.
struct Token {
  std::string text;
  std::size_t position = 0;
};

struct TokenizerConfig {
  /// Separator codepoints in addition to Unicode whitespace, as a UTF-8
  /// string. Defaults to ASCII punctuation plus the Arabic question mark,
  /// comma and semicolon.
  std::string separators = ".,;:!?\xD8\x9F\xD8\x8C\xD8\x9B\"'()[]{}";
  /// Strip Arabic diacritics (tashkeel, dagger alif) and tatweel.
  bool strip_diacritics = false;
};

/// Invalid UTF-8 in an input; byte_offset() locates the offending byte.
class decode_error : public std::runtime_error {
 public:
  explicit decode_error(std::size_t byte_offset)
      : std::runtime_error("invalid UTF-8 at byte offset " + std::to_string(byte_offset)),
        offset_(byte_offset) {}
  std::size_t byte_offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

/// Tokens barred from forming collocations. Membership is exact string
/// equality after the tokenizer's normalization.
struct StopList {
  std::set<std::string> entries;

  bool contains(const std::string& token) const { return entries.count(token) != 0; }
  bool empty() const { return entries.empty(); }
};

/// Adjacent-bigram counts over the stop-filtered token stream.
///
/// positions (N) is the number of counted adjacent pairs; corpus_tokens (T)
/// the raw token count including stop words. For an unfiltered table the
/// pair counts sum to positions; filter_min_count() removes rare pairs but
/// leaves positions unchanged (it still counts every adjacency).
struct BigramTable {
  std::map<std::pair<std::string, std::string>, std::uint64_t> pairs;
  std::map<std::string, std::uint64_t> unigrams;
  std::uint64_t positions = 0;
  std::uint64_t corpus_tokens = 0;
};

/// Splits corpus text on Unicode whitespace and the configured separator
/// set. Throws decode_error on malformed UTF-8.
std::vector<Token> tokenize(std::string_view corpus_text, const TokenizerConfig& rules = {});

/// Parses a stop list: one entry per line, blank lines and lines starting
/// with '#' ignored, entries normalized with the same tokenizer rules.
StopList load_stoplist(std::string_view contents, const TokenizerConfig& rules = {});

/// Counts adjacent pairs (l_i, l_i+1) where neither member is a stop word.
/// Stop words break adjacency: no pair is formed across a removed token.
/// Unigram counts cover every non-stop token occurrence.
BigramTable extract_bigrams(const std::vector<Token>& tokens, const StopList& sl);

/// Drops pairs with count < min_count. positions is left as counted so the
/// remaining pairs keep their corpus-wide statistics.
void filter_min_count(BigramTable& table, std::uint64_t min_count);

}  // namespace colloc
