#include "oabqa/report.hpp"

#include <iomanip>
#include <map>
#include <ostream>
#include <sstream>

namespace oabqa::report {

namespace {

Json letter_or_null(const std::optional<Letter>& l) {
  return l ? Json(std::string(1, to_char(*l))) : Json(nullptr);
}

const corpus::GoldenEntry* find_golden(std::span<const corpus::GoldenEntry> golden, const std::string& exam_id,
                                       int number) {
  for (const auto& g : golden) {
    if (g.exam_id == exam_id && g.question_number == number) return &g;
  }
  return nullptr;
}

std::string join(const std::vector<std::string>& v, char sep) {
  std::string out;
  for (const auto& s : v) {
    if (!out.empty()) out.push_back(sep);
    out += s;
  }
  return out;
}

}  // namespace

Json prediction_record(const experiments::Prediction& p, const corpus::GoldenEntry* golden) {
  Json j;
  j["record"] = "prediction";
  j["mode"] = experiments::to_string(p.mode);
  j["exam_id"] = p.exam_id;
  j["question_number"] = p.question_number;
  j["chosen_letter"] = letter_or_null(p.chosen_letter);
  j["answer_key"] = letter_or_null(p.answer_key);
  j["norm_urn"] = p.justification.norm_urn;
  j["article_id"] = p.justification.article_id;
  j["distance"] = p.distance;
  j["tie"] = p.tie;
  if (golden != nullptr) {
    const auto s = experiments::score(p, *golden);
    j["golden_norm_urn"] = golden->norm_urn;
    j["golden_article_ids"] = golden->article_ids;
    j["answer_correct"] = s.answer_correct ? Json(*s.answer_correct) : Json(nullptr);
    j["justification_correct"] = s.justification_correct;
  }
  return j;
}

Json metrics_record(const experiments::ExperimentRun& run) {
  const auto& m = run.metrics;
  Json j;
  j["record"] = "metrics";
  j["mode"] = experiments::to_string(run.mode);
  j["n"] = m.n;
  j["skipped"] = run.warnings.size();
  j["answer_correct"] = m.answer_correct;
  j["answer_correct_strict"] = m.answer_correct_strict;
  j["justification_correct"] = m.justification_correct;
  j["justification_correct_strict"] = m.justification_correct_strict;
  j["both_correct"] = m.both_correct;
  j["both_correct_strict"] = m.both_correct_strict;
  j["ties"] = m.ties;
  return j;
}

Json results_document(std::span<const experiments::ExperimentRun> runs, std::span<const corpus::GoldenEntry> golden,
                      const Json* config) {
  Json doc = Json::array();
  if (config != nullptr) {
    Json c;
    c["record"] = "config";
    c["config"] = *config;
    doc.push_back(std::move(c));
  }
  for (const auto& run : runs) {
    for (const auto& p : run.predictions) {
      doc.push_back(prediction_record(p, find_golden(golden, p.exam_id, p.question_number)));
    }
    for (const auto& w : run.warnings) {
      Json j;
      j["record"] = "warning";
      j["mode"] = experiments::to_string(run.mode);
      j["exam_id"] = w.exam_id;
      j["question_number"] = w.question_number;
      j["message"] = w.message;
      doc.push_back(std::move(j));
    }
    doc.push_back(metrics_record(run));
  }
  return doc;
}

void write_results(const Json& document, std::ostream& out) { out << document.dump(2) << '\n'; }

void print_summary(std::span<const experiments::ExperimentRun> runs, std::ostream& out) {
  auto ratio = [](std::size_t k, std::size_t n) { return std::to_string(k) + "/" + std::to_string(n); };
  out << std::left << std::setw(6) << "mode" << std::setw(5) << "n" << std::setw(10) << "answer" << std::setw(10)
      << "answer*" << std::setw(10) << "justif" << std::setw(10) << "justif*" << std::setw(10) << "both"
      << std::setw(10) << "both*" << std::setw(6) << "ties"
      << "skipped\n";
  for (const auto& run : runs) {
    const auto& m = run.metrics;
    const bool exp1 = run.mode == experiments::Mode::exp1;
    auto answer_col = [&](std::size_t k) { return exp1 ? ratio(k, m.n) : std::string("-"); };
    out << std::setw(6) << experiments::to_string(run.mode) << std::setw(5) << m.n << std::setw(10)
        << answer_col(m.answer_correct) << std::setw(10) << answer_col(m.answer_correct_strict) << std::setw(10)
        << ratio(m.justification_correct, m.n) << std::setw(10) << ratio(m.justification_correct_strict, m.n)
        << std::setw(10) << answer_col(m.both_correct) << std::setw(10) << answer_col(m.both_correct_strict)
        << std::setw(6) << m.ties << run.warnings.size() << '\n';
  }
  out << "(* strict: tied predictions count as wrong)\n";
}

void write_diff_report(const experiments::ExperimentRun& run, std::span<const corpus::GoldenEntry> golden,
                       std::ostream& out) {
  out << "# " << experiments::to_string(run.mode) << "\n";
  out << "exam\tq\tgolden\tpredicted\tdistance\tjustification_ok\tanswer\ttie\n";
  for (const auto& p : run.predictions) {
    const auto* g = find_golden(golden, p.exam_id, p.question_number);
    const auto s = g ? experiments::score(p, *g) : experiments::Score{};
    out << p.exam_id << '\t' << p.question_number << '\t'
        << (g ? g->norm_urn + "#" + join(g->article_ids, ';') : std::string("?")) << '\t'
        << p.justification.norm_urn << "#" << p.justification.article_id << '\t' << std::setprecision(6)
        << p.distance << '\t' << (s.justification_correct ? "yes" : "NO") << '\t';
    if (p.chosen_letter) {
      out << to_char(*p.chosen_letter) << "/" << (p.answer_key ? to_char(*p.answer_key) : '?')
          << (s.answer_correct.value_or(false) ? " ok" : " WRONG");
    } else {
      out << '-';
    }
    out << '\t' << (p.tie ? "tie" : "") << '\n';
  }
  for (const auto& w : run.warnings) out << w.exam_id << '\t' << w.question_number << "\tskipped: " << w.message << '\n';
}

}  // namespace oabqa::report
