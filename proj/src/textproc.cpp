#include "oabqa/textproc.hpp"

#include <unicode/normalizer2.h>
#include <unicode/uchar.h>
#include <unicode/unistr.h>
#include <unicode/utf8.h>

#include <fstream>
#include <istream>
#include <stdexcept>

#include "oabqa/corpus.hpp"

namespace oabqa::text {

namespace {

const icu::Normalizer2& nfd() {
  UErrorCode status = U_ZERO_ERROR;
  const icu::Normalizer2* n = icu::Normalizer2::getNFDInstance(status);
  if (U_FAILURE(status) || n == nullptr) throw std::runtime_error("ICU: NFD normalizer unavailable");
  return *n;
}

void append_utf8(std::string& out, UChar32 c) {
  char buf[U8_MAX_LENGTH];
  int32_t len = 0;
  UBool error = false;
  U8_APPEND(reinterpret_cast<uint8_t*>(buf), len, U8_MAX_LENGTH, c, error);
  if (!error) out.append(buf, static_cast<std::size_t>(len));
}

constexpr uint32_t kToSpace = U_GC_P_MASK | U_GC_S_MASK | U_GC_ND_MASK | U_GC_CC_MASK;

}  // namespace

std::string normalize(std::string_view raw, bool strip_diacritics) {
  icu::UnicodeString s = icu::UnicodeString::fromUTF8(
      icu::StringPiece(raw.data(), static_cast<int32_t>(raw.size())));
  if (strip_diacritics) {
    UErrorCode status = U_ZERO_ERROR;
    s = nfd().normalize(s, status);
    if (U_FAILURE(status)) throw std::runtime_error("ICU: normalization failed");
  }
  std::string out;
  out.reserve(raw.size());
  for (int32_t i = 0; i < s.length();) {
    const UChar32 c = s.char32At(i);
    i += U16_LENGTH(c);
    const uint32_t mask = U_GET_GC_MASK(c);
    if (strip_diacritics && (mask & U_GC_M_MASK) != 0) continue;
    if ((mask & U_GC_CF_MASK) != 0) continue;
    if ((mask & kToSpace) != 0) {
      out.push_back(' ');
      continue;
    }
    UChar32 folded = u_foldCase(c, U_FOLD_CASE_DEFAULT);
    // a few characters (U+0130) have no simple case folding
    if (u_isUUppercase(folded)) folded = u_tolower(folded);
    append_utf8(out, folded);
  }
  return out;
}

std::vector<Token> tokenize(std::string_view normalized) {
  std::vector<Token> tokens;
  const auto* bytes = reinterpret_cast<const uint8_t*>(normalized.data());
  const auto length = static_cast<int32_t>(normalized.size());
  int32_t start = -1;
  int32_t i = 0;
  while (i < length) {
    const int32_t pos = i;
    UChar32 c = 0;
    U8_NEXT(bytes, i, length, c);
    const bool space = c >= 0 && u_isUWhiteSpace(c);
    if (space) {
      if (start >= 0) tokens.emplace_back(normalized.substr(start, pos - start));
      start = -1;
    } else if (start < 0) {
      start = pos;
    }
  }
  if (start >= 0) tokens.emplace_back(normalized.substr(start));
  return tokens;
}

std::vector<Token> preprocess(std::string_view raw, const PreprocessConfig& cfg) {
  auto tokens = tokenize(normalize(raw, cfg.strip_diacritics));
  if (cfg.remove_stopwords && !cfg.stopwords.empty()) {
    std::erase_if(tokens, [&](const Token& t) { return cfg.stopwords.contains(t); });
  }
  return tokens;
}

std::unordered_set<std::string> read_stopwords(std::istream& in, bool strip_diacritics) {
  std::unordered_set<std::string> words;
  std::string line;
  while (std::getline(in, line)) {
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    for (auto& t : tokenize(normalize(line, strip_diacritics))) words.insert(std::move(t));
  }
  return words;
}

std::unordered_set<std::string> load_stopwords(const std::filesystem::path& path, bool strip_diacritics) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError(path.string() + ": cannot open stopword file");
  return read_stopwords(in, strip_diacritics);
}

}  // namespace oabqa::text
