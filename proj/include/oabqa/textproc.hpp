// Text normalization and tokenization for the vector space model.
#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace oabqa::text {

/// Lowercase, no digits, no punctuation, no whitespace.
using Token = std::string;

struct PreprocessConfig {
  bool remove_stopwords = false;
  bool strip_diacritics = true;
  /// Entries are stored normalized with the same strip_diacritics setting.
  std::unordered_set<std::string> stopwords;
};

/// Case-folds, replaces punctuation (P*, S*), decimal digits (Nd) and control
/// characters with spaces. With `strip_diacritics`, the text is decomposed
/// (NFD) first and combining marks are dropped. Format characters (Cf, e.g.
/// soft hyphens) are removed. Does not collapse whitespace.
std::string normalize(std::string_view raw, bool strip_diacritics);

/// Splits on runs of Unicode white space; empty pieces are dropped.
std::vector<Token> tokenize(std::string_view normalized);

std::vector<Token> preprocess(std::string_view raw, const PreprocessConfig& cfg);

/// Reads a stopword list: one entry per line, `#` starts a comment, blank
/// lines ignored. Entries are normalized; an entry that normalizes to several
/// tokens contributes each of them.
std::unordered_set<std::string> read_stopwords(std::istream& in, bool strip_diacritics);
std::unordered_set<std::string> load_stopwords(const std::filesystem::path& path, bool strip_diacritics);

}  // namespace oabqa::text
