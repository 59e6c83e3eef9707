// Exam, norm and golden-set parsing.
#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace oabqa {

enum class Letter : std::uint8_t { A = 0, B = 1, C = 2, D = 3 };

inline constexpr std::array<Letter, 4> kAllLetters{Letter::A, Letter::B, Letter::C, Letter::D};

constexpr char to_char(Letter l) { return static_cast<char>('A' + static_cast<int>(l)); }
constexpr std::size_t to_index(Letter l) { return static_cast<std::size_t>(l); }
std::optional<Letter> letter_from_char(char c);

/// Base class of every error raised while reading input data.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input does not follow the expected syntax. `line` is 1-based, 0 when unknown.
class FormatError : public DataError {
 public:
  FormatError(const std::string& what, std::size_t line, std::size_t column = 0);
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// Input is syntactically fine but violates a structural invariant.
class ValidationError : public DataError {
 public:
  using DataError::DataError;
};

namespace corpus {

struct Alternative {
  Letter letter = Letter::A;
  std::string text;

  friend bool operator==(const Alternative&, const Alternative&) = default;
};

struct Question {
  int number = 0;
  std::optional<std::string> area;
  std::string statement;
  std::array<Alternative, 4> alternatives;
  std::optional<Letter> answer_key;  // absent for annulled questions

  const Alternative& alternative(Letter l) const { return alternatives[to_index(l)]; }
  bool annulled() const { return !answer_key.has_value(); }

  friend bool operator==(const Question&, const Question&) = default;
};

struct Exam {
  std::string exam_id;  // "<year>-<edition>"
  std::vector<Question> questions;

  const Question* find(int number) const;

  friend bool operator==(const Exam&, const Exam&) = default;
};

struct Article {
  std::string id;  // "art28"
  std::string text;

  friend bool operator==(const Article&, const Article&) = default;
};

struct Norm {
  std::string urn;
  std::vector<Article> articles;

  const Article* find(std::string_view id) const;

  friend bool operator==(const Norm&, const Norm&) = default;
};

struct GoldenEntry {
  std::string exam_id;
  int question_number = 0;
  std::string norm_urn;
  std::vector<std::string> article_ids;

  friend bool operator==(const GoldenEntry&, const GoldenEntry&) = default;
};

/// Collapses whitespace runs (space, tab, CR, LF, VT, FF) to single spaces and trims.
std::string collapse_whitespace(std::string_view s);

/// Orders exam ids "<year>-<edition>" numerically; falls back to string order.
bool exam_id_less(std::string_view a, std::string_view b);

Exam parse_exam(std::istream& in);
/// Writes the line format read by parse_exam.
void emit_exam(const Exam& exam, std::ostream& out);

Norm parse_norm(std::istream& in);

std::vector<GoldenEntry> load_golden(std::istream& in);

// File helpers. Errors are rethrown with the path prefixed to the message.
Exam load_exam_file(const std::filesystem::path& path);
/// Parses every `*.txt` in `dir`, ordered by exam id.
std::vector<Exam> load_exam_dir(const std::filesystem::path& dir);
Norm load_norm_file(const std::filesystem::path& path);
std::vector<GoldenEntry> load_golden_file(const std::filesystem::path& path);

/// Checks that every golden entry refers to an existing exam question and a
/// loaded norm with the listed articles. Returns one message per problem.
std::vector<std::string> cross_validate(const std::vector<GoldenEntry>& golden,
                                        const std::vector<Exam>& exams,
                                        const std::vector<Norm>& norms);

}  // namespace corpus
}  // namespace oabqa
