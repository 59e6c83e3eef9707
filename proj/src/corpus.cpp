#include "oabqa/corpus.hpp"

#include <expat.h>

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <map>
#include <memory>
#include <ostream>
#include <regex>
#include <set>
#include <sstream>

namespace oabqa {

std::optional<Letter> letter_from_char(char c) {
  switch (c) {
    case 'A': return Letter::A;
    case 'B': return Letter::B;
    case 'C': return Letter::C;
    case 'D': return Letter::D;
    default: return std::nullopt;
  }
}

namespace {

std::string position_prefix(std::size_t line, std::size_t column) {
  if (line == 0) return {};
  std::string p = "line " + std::to_string(line);
  if (column != 0) p += ", column " + std::to_string(column);
  return p + ": ";
}

}  // namespace

FormatError::FormatError(const std::string& what, std::size_t line, std::size_t column)
    : DataError(position_prefix(line, column) + what), line_(line), column_(column) {}

namespace corpus {

const Question* Exam::find(int number) const {
  auto it = std::find_if(questions.begin(), questions.end(),
                         [&](const Question& q) { return q.number == number; });
  return it == questions.end() ? nullptr : &*it;
}

const Article* Norm::find(std::string_view id) const {
  auto it = std::find_if(articles.begin(), articles.end(),
                         [&](const Article& a) { return a.id == id; });
  return it == articles.end() ? nullptr : &*it;
}

std::string collapse_whitespace(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  bool pending_space = false;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const unsigned char c = static_cast<unsigned char>(s[i]);
    bool ws = c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' || c == '\f';
    // U+00A0 NO-BREAK SPACE is common in converted legal texts
    if (c == 0xC2 && i + 1 < s.size() && static_cast<unsigned char>(s[i + 1]) == 0xA0) {
      ws = true;
      ++i;
    }
    if (ws) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) out.push_back(' ');
    pending_space = false;
    out.push_back(static_cast<char>(c));
  }
  return out;
}

namespace {

std::optional<std::pair<int, int>> split_exam_id(std::string_view id) {
  const auto dash = id.find('-');
  if (dash == std::string_view::npos) return std::nullopt;
  int year = 0, edition = 0;
  auto [p1, e1] = std::from_chars(id.data(), id.data() + dash, year);
  auto [p2, e2] = std::from_chars(id.data() + dash + 1, id.data() + id.size(), edition);
  if (e1 != std::errc{} || e2 != std::errc{} || p1 != id.data() + dash ||
      p2 != id.data() + id.size())
    return std::nullopt;
  return std::pair{year, edition};
}

std::optional<int> parse_positive_int(std::string_view s) {
  int v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || p != s.data() + s.size() || v <= 0) return std::nullopt;
  return v;
}

void strip_bom(std::string& line) {
  if (line.rfind("\xEF\xBB\xBF", 0) == 0) line.erase(0, 3);
}

struct NumberedLine {
  std::size_t number;
  std::string text;
};

std::vector<NumberedLine> read_lines(std::istream& in) {
  std::vector<NumberedLine> lines;
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    ++n;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (n == 1) strip_bom(line);
    lines.push_back({n, line});
  }
  return lines;
}

bool is_blank(std::string_view s) {
  return s.find_first_not_of(" \t") == std::string_view::npos;
}

std::string join_normalized(const std::vector<std::string>& parts) {
  std::string joined;
  for (const auto& p : parts) {
    if (!joined.empty()) joined.push_back(' ');
    joined += p;
  }
  return collapse_whitespace(joined);
}

// "A) text", "A:CORRECT) text", "A)" -- letter is any of A..E so that a fifth
// alternative is reported as a count error rather than silently appended.
struct AlternativeMarker {
  char letter;
  bool correct;
  std::string rest;
};

std::optional<AlternativeMarker> match_alternative(std::string_view line) {
  if (line.size() < 2 || line[0] < 'A' || line[0] > 'E') return std::nullopt;
  std::size_t pos = 1;
  bool correct = false;
  constexpr std::string_view kCorrect = ":CORRECT";
  if (line.substr(pos, kCorrect.size()) == kCorrect) {
    correct = true;
    pos += kCorrect.size();
  }
  if (pos >= line.size() || line[pos] != ')') return std::nullopt;
  ++pos;
  if (pos < line.size() && line[pos] != ' ') return std::nullopt;
  return AlternativeMarker{line[0], correct, std::string(line.substr(pos))};
}

Question parse_question_block(const std::vector<NumberedLine>& block) {
  static const std::regex kHeader(R"(QUESTION ([0-9]+)(?: AREA (.+))?)");
  auto it = std::find_if(block.begin(), block.end(),
                         [](const NumberedLine& l) { return !is_blank(l.text); });
  const std::size_t header_line = it->number;
  std::smatch m;
  const std::string header = collapse_whitespace(it->text);
  if (!std::regex_match(header, m, kHeader))
    throw FormatError("expected 'QUESTION <n>' but found '" + it->text + "'", header_line);

  Question q;
  const auto number = parse_positive_int(m[1].str());
  if (!number) throw FormatError("invalid question number '" + m[1].str() + "'", header_line);
  q.number = *number;
  if (m[2].matched) q.area = collapse_whitespace(m[2].str());
  const std::string label = "question " + std::to_string(q.number);

  std::vector<std::string> statement;
  ++it;
  for (; it != block.end(); ++it) {
    if (collapse_whitespace(it->text) == "OPTIONS") break;
    statement.push_back(it->text);
  }
  if (it == block.end()) throw FormatError(label + ": missing OPTIONS line", header_line);
  const std::size_t options_line = it->number;
  ++it;

  struct RawAlternative {
    char letter;
    bool correct;
    std::size_t line;
    std::vector<std::string> parts;
  };
  std::vector<RawAlternative> raw;
  for (; it != block.end(); ++it) {
    if (is_blank(it->text)) continue;
    if (auto marker = match_alternative(it->text)) {
      raw.push_back({marker->letter, marker->correct, it->number, {marker->rest}});
    } else if (raw.empty()) {
      throw FormatError(label + ": text after OPTIONS does not start an alternative", it->number);
    } else {
      raw.back().parts.push_back(it->text);
    }
  }

  q.statement = join_normalized(statement);
  if (q.statement.empty())
    throw ValidationError(position_prefix(header_line, 0) + label + ": empty statement");
  if (raw.size() != 4)
    throw ValidationError(position_prefix(options_line, 0) + label + ": expected 4 alternatives, found " +
                          std::to_string(raw.size()));
  int correct_count = 0;
  for (std::size_t i = 0; i < 4; ++i) {
    const Letter expected = kAllLetters[i];
    if (raw[i].letter != to_char(expected))
      throw ValidationError(position_prefix(raw[i].line, 0) + label + ": alternative " +
                            std::string(1, raw[i].letter) + " out of order, expected " +
                            std::string(1, to_char(expected)));
    q.alternatives[i].letter = expected;
    q.alternatives[i].text = join_normalized(raw[i].parts);
    if (q.alternatives[i].text.empty())
      throw ValidationError(position_prefix(raw[i].line, 0) + label + ": alternative " +
                            std::string(1, to_char(expected)) + " is empty");
    if (raw[i].correct) {
      ++correct_count;
      q.answer_key = expected;
    }
  }
  if (correct_count > 1)
    throw ValidationError(position_prefix(options_line, 0) + label + ": more than one alternative marked CORRECT");
  return q;
}

}  // namespace

bool exam_id_less(std::string_view a, std::string_view b) {
  const auto pa = split_exam_id(a);
  const auto pb = split_exam_id(b);
  if (pa && pb && *pa != *pb) return *pa < *pb;
  return a < b;
}

Exam parse_exam(std::istream& in) {
  static const std::regex kExamHeader(R"(EXAM ([0-9]{4}-[0-9]+))");
  const auto lines = read_lines(in);
  if (lines.empty()) throw FormatError("empty input, expected 'EXAM <year>-<edition>'", 1);

  Exam exam;
  std::smatch m;
  const std::string header = lines.front().text;
  if (!std::regex_match(header, m, kExamHeader))
    throw FormatError("malformed header '" + header + "', expected 'EXAM <year>-<edition>'", 1);
  exam.exam_id = m[1].str();

  std::set<int> seen;
  std::vector<NumberedLine> block;
  auto flush = [&] {
    const bool has_content = std::any_of(block.begin(), block.end(),
                                         [](const NumberedLine& l) { return !is_blank(l.text); });
    if (has_content) {
      Question q = parse_question_block(block);
      if (!seen.insert(q.number).second)
        throw ValidationError(position_prefix(block.front().number, 0) + "duplicate question number " +
                              std::to_string(q.number));
      exam.questions.push_back(std::move(q));
    }
    block.clear();
  };
  for (std::size_t i = 1; i < lines.size(); ++i) {
    if (lines[i].text == "---") {
      flush();
    } else {
      block.push_back(lines[i]);
    }
  }
  flush();
  return exam;
}

void emit_exam(const Exam& exam, std::ostream& out) {
  out << "EXAM " << exam.exam_id << '\n';
  for (const auto& q : exam.questions) {
    out << "---\n";
    out << "QUESTION " << q.number;
    if (q.area) out << " AREA " << *q.area;
    out << '\n' << q.statement << '\n' << "OPTIONS\n";
    for (const auto& alt : q.alternatives) {
      out << to_char(alt.letter);
      if (q.answer_key == alt.letter) out << ":CORRECT";
      out << ") " << alt.text << '\n';
    }
  }
}

// ---------------------------------------------------------------------------
// Norm XML

namespace {

std::string ascii_lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

std::string_view local_name(std::string_view qname) {
  const auto colon = qname.rfind(':');
  return colon == std::string_view::npos ? qname : qname.substr(colon + 1);
}

const char* find_attribute(const XML_Char** attrs, std::string_view lower_name) {
  for (std::size_t i = 0; attrs[i] != nullptr; i += 2) {
    if (ascii_lower(local_name(attrs[i])) == lower_name) return attrs[i + 1];
  }
  return nullptr;
}

struct NormBuilder {
  XML_Parser parser = nullptr;
  std::size_t depth = 0;
  std::optional<std::string> root_urn;
  std::optional<std::string> metadata_urn;
  std::size_t article_depth = 0;  // 0 when outside any article
  std::string current_id;
  std::size_t current_line = 0;
  std::string buffer;
  std::vector<Article> articles;
  std::vector<std::size_t> article_lines;
  std::optional<FormatError> error;

  void fail(const std::string& what) {
    if (!error)
      error.emplace(what, XML_GetCurrentLineNumber(parser),
                    static_cast<std::size_t>(XML_GetCurrentColumnNumber(parser)) + 1);
    XML_StopParser(parser, XML_FALSE);
  }

  void start(const XML_Char* name, const XML_Char** attrs) {
    const std::string lname = ascii_lower(local_name(name));
    if (depth == 0) {
      if (const char* urn = find_attribute(attrs, "urn")) root_urn = collapse_whitespace(urn);
    }
    ++depth;
    if (lname == "identificacao" && !metadata_urn) {
      if (const char* urn = find_attribute(attrs, "urn")) metadata_urn = collapse_whitespace(urn);
    }
    if (lname == "artigo") {
      if (article_depth != 0) {
        fail("nested article element inside '" + current_id + "'");
        return;
      }
      const char* id = find_attribute(attrs, "id");
      if (id == nullptr) {
        fail("article element without id attribute");
        return;
      }
      article_depth = depth;
      current_id = id;
      current_line = XML_GetCurrentLineNumber(parser);
      buffer.clear();
      return;
    }
    // element boundaries inside an article separate words
    if (article_depth != 0) buffer.push_back(' ');
  }

  void end() {
    if (article_depth != 0 && depth == article_depth) {
      articles.push_back({current_id, collapse_whitespace(buffer)});
      article_lines.push_back(current_line);
      article_depth = 0;
    } else if (article_depth != 0) {
      buffer.push_back(' ');
    }
    --depth;
  }

  void text(const XML_Char* s, int len) {
    if (article_depth != 0) buffer.append(s, static_cast<std::size_t>(len));
  }
};

void XMLCALL on_start(void* data, const XML_Char* name, const XML_Char** attrs) {
  static_cast<NormBuilder*>(data)->start(name, attrs);
}
void XMLCALL on_end(void* data, const XML_Char*) { static_cast<NormBuilder*>(data)->end(); }
void XMLCALL on_text(void* data, const XML_Char* s, int len) {
  static_cast<NormBuilder*>(data)->text(s, len);
}

struct ParserDeleter {
  void operator()(XML_Parser p) const { XML_ParserFree(p); }
};

}  // namespace

Norm parse_norm(std::istream& in) {
  std::unique_ptr<std::remove_pointer_t<XML_Parser>, ParserDeleter> parser(XML_ParserCreate("UTF-8"));
  if (!parser) throw std::runtime_error("cannot allocate XML parser");
  NormBuilder builder;
  builder.parser = parser.get();
  XML_SetUserData(parser.get(), &builder);
  XML_SetElementHandler(parser.get(), on_start, on_end);
  XML_SetCharacterDataHandler(parser.get(), on_text);

  std::array<char, 1 << 14> chunk{};
  bool done = false;
  while (!done) {
    in.read(chunk.data(), chunk.size());
    const auto got = static_cast<int>(in.gcount());
    done = got < static_cast<int>(chunk.size());
    if (XML_Parse(parser.get(), chunk.data(), got, done ? XML_TRUE : XML_FALSE) == XML_STATUS_ERROR) {
      if (builder.error) throw *builder.error;
      throw FormatError(std::string("XML: ") + XML_ErrorString(XML_GetErrorCode(parser.get())),
                        XML_GetCurrentLineNumber(parser.get()),
                        static_cast<std::size_t>(XML_GetCurrentColumnNumber(parser.get())) + 1);
    }
  }
  if (builder.error) throw *builder.error;

  Norm norm;
  if (builder.root_urn) {
    norm.urn = *builder.root_urn;
  } else if (builder.metadata_urn) {
    norm.urn = *builder.metadata_urn;
  } else {
    throw ValidationError("norm has no urn attribute on its root element");
  }
  if (builder.articles.empty()) throw ValidationError("norm " + norm.urn + " has no article elements");

  static const std::regex kArticleId(R"(art[0-9]+[A-Za-z0-9_.\-]*)");
  std::set<std::string> ids;
  for (std::size_t i = 0; i < builder.articles.size(); ++i) {
    const auto& a = builder.articles[i];
    const std::string where = position_prefix(builder.article_lines[i], 0);
    if (!std::regex_match(a.id, kArticleId))
      throw ValidationError(where + "invalid article id '" + a.id + "'");
    if (!ids.insert(a.id).second) throw ValidationError(where + "duplicate article id '" + a.id + "'");
    if (a.text.empty()) throw ValidationError(where + "article '" + a.id + "' has no text");
  }
  norm.articles = std::move(builder.articles);
  return norm;
}

// ---------------------------------------------------------------------------
// Golden CSV

namespace {

std::vector<std::string> split_csv_record(std::string_view line, std::size_t line_no) {
  std::vector<std::string> fields;
  std::string field;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        field.push_back('"');
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        field.push_back(c);
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(collapse_whitespace(field));
      field.clear();
    } else {
      field.push_back(c);
    }
  }
  if (quoted) throw FormatError("unterminated quoted field", line_no);
  fields.push_back(collapse_whitespace(field));
  return fields;
}

}  // namespace

std::vector<GoldenEntry> load_golden(std::istream& in) {
  const auto lines = read_lines(in);
  if (lines.empty()) throw FormatError("empty golden file, expected a header row", 1);

  const auto header = split_csv_record(lines.front().text, 1);
  std::map<std::string, std::size_t> column;
  for (std::size_t i = 0; i < header.size(); ++i) column.emplace(header[i], i);
  std::array<std::size_t, 4> idx{};
  constexpr std::array<const char*, 4> kColumns{"exam_id", "question_number", "norm_urn", "articles"};
  for (std::size_t i = 0; i < kColumns.size(); ++i) {
    auto it = column.find(kColumns[i]);
    if (it == column.end()) throw FormatError(std::string("missing column '") + kColumns[i] + "'", 1);
    idx[i] = it->second;
  }
  const std::size_t needed = *std::max_element(idx.begin(), idx.end()) + 1;

  std::vector<GoldenEntry> entries;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    if (is_blank(lines[i].text)) continue;
    const std::size_t line_no = lines[i].number;
    const auto fields = split_csv_record(lines[i].text, line_no);
    if (fields.size() < needed)
      throw FormatError("missing column: expected " + std::to_string(header.size()) + " fields, found " +
                            std::to_string(fields.size()),
                        line_no);
    GoldenEntry e;
    e.exam_id = fields[idx[0]];
    if (e.exam_id.empty()) throw FormatError("empty exam_id", line_no);
    const auto number = parse_positive_int(fields[idx[1]]);
    if (!number) throw FormatError("invalid question_number '" + fields[idx[1]] + "'", line_no);
    e.question_number = *number;
    e.norm_urn = fields[idx[2]];
    if (e.norm_urn.empty()) throw FormatError("empty norm_urn", line_no);
    std::string_view articles = fields[idx[3]];
    while (!articles.empty()) {
      const auto semi = articles.find(';');
      std::string id = collapse_whitespace(articles.substr(0, semi));
      if (!id.empty()) e.article_ids.push_back(std::move(id));
      if (semi == std::string_view::npos) break;
      articles.remove_prefix(semi + 1);
    }
    if (e.article_ids.empty())
      throw ValidationError(position_prefix(line_no, 0) + "empty article list for " + e.exam_id + " #" +
                            std::to_string(e.question_number));
    entries.push_back(std::move(e));
  }
  return entries;
}

// ---------------------------------------------------------------------------
// Files

namespace {

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError(path.string() + ": cannot open file");
  return in;
}

template <class Fn>
auto with_path(const std::filesystem::path& path, Fn&& fn) {
  auto in = open_input(path);
  try {
    return fn(in);
  } catch (const FormatError& e) {
    throw FormatError(path.string() + ": " + e.what(), 0);
  } catch (const ValidationError& e) {
    throw ValidationError(path.string() + ": " + e.what());
  }
}

}  // namespace

Exam load_exam_file(const std::filesystem::path& path) {
  return with_path(path, [](std::istream& in) { return parse_exam(in); });
}

std::vector<Exam> load_exam_dir(const std::filesystem::path& dir) {
  std::error_code ec;
  if (!std::filesystem::is_directory(dir, ec)) throw DataError(dir.string() + ": not a directory");
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".txt") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  std::vector<Exam> exams;
  std::map<std::string, std::filesystem::path> seen;
  for (const auto& f : files) {
    Exam e = load_exam_file(f);
    auto [it, inserted] = seen.emplace(e.exam_id, f);
    if (!inserted)
      throw ValidationError(f.string() + ": exam " + e.exam_id + " already defined in " + it->second.string());
    exams.push_back(std::move(e));
  }
  std::stable_sort(exams.begin(), exams.end(),
                   [](const Exam& a, const Exam& b) { return exam_id_less(a.exam_id, b.exam_id); });
  return exams;
}

Norm load_norm_file(const std::filesystem::path& path) {
  return with_path(path, [](std::istream& in) { return parse_norm(in); });
}

std::vector<GoldenEntry> load_golden_file(const std::filesystem::path& path) {
  return with_path(path, [](std::istream& in) { return load_golden(in); });
}

std::vector<std::string> cross_validate(const std::vector<GoldenEntry>& golden,
                                        const std::vector<Exam>& exams,
                                        const std::vector<Norm>& norms) {
  std::vector<std::string> problems;
  std::set<std::pair<std::string, int>> keys;
  for (const auto& g : golden) {
    const std::string label = g.exam_id + " #" + std::to_string(g.question_number);
    if (!keys.emplace(g.exam_id, g.question_number).second) problems.push_back(label + ": duplicate golden entry");
    auto exam = std::find_if(exams.begin(), exams.end(), [&](const Exam& e) { return e.exam_id == g.exam_id; });
    if (exam == exams.end()) {
      problems.push_back(label + ": exam " + g.exam_id + " not loaded");
    } else if (exam->find(g.question_number) == nullptr) {
      problems.push_back(label + ": question not found in exam");
    }
    auto norm = std::find_if(norms.begin(), norms.end(), [&](const Norm& n) { return n.urn == g.norm_urn; });
    if (norm == norms.end()) {
      problems.push_back(label + ": norm " + g.norm_urn + " not loaded");
      continue;
    }
    for (const auto& id : g.article_ids) {
      if (norm->find(id) == nullptr) problems.push_back(label + ": article " + id + " not in " + g.norm_urn);
    }
  }
  return problems;
}

}  // namespace corpus
}  // namespace oabqa
