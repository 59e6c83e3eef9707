#include "oabqa/experiments.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace oabqa::experiments {

std::string_view to_string(Mode mode) {
  switch (mode) {
    case Mode::exp1: return "exp1";
    case Mode::exp2: return "exp2";
    case Mode::exp3: return "exp3";
  }
  return "?";
}

std::optional<Mode> mode_from_string(std::string_view s) {
  if (s == "exp1") return Mode::exp1;
  if (s == "exp2") return Mode::exp2;
  if (s == "exp3") return Mode::exp3;
  return std::nullopt;
}

Score score(const Prediction& p, const corpus::GoldenEntry& golden) {
  Score s;
  if (p.chosen_letter) s.answer_correct = p.answer_key.has_value() && *p.chosen_letter == *p.answer_key;
  s.justification_correct =
      p.justification.norm_urn == golden.norm_urn &&
      std::find(golden.article_ids.begin(), golden.article_ids.end(), p.justification.article_id) !=
          golden.article_ids.end();
  return s;
}

namespace {

void require_key(const corpus::Question& q) {
  if (!q.answer_key)
    throw std::invalid_argument("question " + std::to_string(q.number) + " is annulled (no answer key)");
}

Prediction justify_correct_answer(const corpus::GoldenEntry& entry, const corpus::Question& question,
                                  const graph::BaseGraph& base, const EngineConfig& cfg, Mode mode,
                                  Execution exec) {
  require_key(question);
  const Letter key = *question.answer_key;
  const auto statement = text::preprocess(question.statement, cfg.preprocess);
  const std::map<Letter, std::vector<text::Token>> alternatives{
      {key, text::preprocess(question.alternative(key).text, cfg.preprocess)}};
  const auto g = graph::attach_query(base, statement, alternatives, exec);
  const auto j = graph::shortest_justification(g, key);

  Prediction p;
  p.exam_id = entry.exam_id;
  p.question_number = question.number;
  p.mode = mode;
  p.answer_key = key;
  p.justification = j.article;
  p.distance = j.distance;
  p.tie = graph::near_optimal_articles(g, key, cfg.tie_epsilon) > 1;
  return p;
}

}  // namespace

Prediction run_exp1(const std::string& exam_id, const corpus::Question& question,
                    const graph::BaseGraph& combined, const EngineConfig& cfg, Execution exec) {
  require_key(question);
  const auto statement = text::preprocess(question.statement, cfg.preprocess);
  std::map<Letter, std::vector<text::Token>> alternatives;
  for (const auto& alt : question.alternatives) alternatives[alt.letter] = text::preprocess(alt.text, cfg.preprocess);
  const auto g = graph::attach_query(combined, statement, alternatives, exec);
  const auto ranking = graph::rank_alternatives(g, cfg.tie_epsilon);
  const auto& top = ranking.order.front();

  Prediction p;
  p.exam_id = exam_id;
  p.question_number = question.number;
  p.mode = Mode::exp1;
  p.chosen_letter = top.letter;
  p.answer_key = question.answer_key;
  p.justification = top.justification.article;
  p.distance = top.justification.distance;
  p.tie = ranking.tie;
  return p;
}

Prediction run_exp2(const corpus::GoldenEntry& entry, const corpus::Question& question,
                    const graph::BaseGraph& norm_graph, const EngineConfig& cfg, Execution exec) {
  const auto& sources = norm_graph.source_norms();
  if (sources.size() != 1 || sources.front() != entry.norm_urn)
    throw ValidationError("exp2: graph for " + entry.exam_id + " #" + std::to_string(entry.question_number) +
                          " is not built from norm " + entry.norm_urn);
  return justify_correct_answer(entry, question, norm_graph, cfg, Mode::exp2, exec);
}

Prediction run_exp3(const corpus::GoldenEntry& entry, const corpus::Question& question,
                    const graph::BaseGraph& combined, const EngineConfig& cfg, Execution exec) {
  const auto& sources = combined.source_norms();
  if (std::find(sources.begin(), sources.end(), entry.norm_urn) == sources.end())
    throw ValidationError("exp3: combined graph does not contain norm " + entry.norm_urn);
  return justify_correct_answer(entry, question, combined, cfg, Mode::exp3, exec);
}

Metrics evaluate(std::span<const Prediction> predictions, std::span<const corpus::GoldenEntry> golden) {
  std::map<std::pair<std::string, int>, const corpus::GoldenEntry*> by_key;
  for (const auto& g : golden) by_key.emplace(std::pair{g.exam_id, g.question_number}, &g);

  Metrics m;
  std::string orphans;
  for (const auto& p : predictions) {
    auto it = by_key.find({p.exam_id, p.question_number});
    if (it == by_key.end()) {
      orphans += (orphans.empty() ? "" : ", ") + p.exam_id + " #" + std::to_string(p.question_number);
      continue;
    }
    const Score s = score(p, *it->second);
    ++m.n;
    if (p.tie) ++m.ties;
    const bool answer = s.answer_correct.value_or(false);
    if (answer) {
      ++m.answer_correct;
      if (!p.tie) ++m.answer_correct_strict;
    }
    if (s.justification_correct) {
      ++m.justification_correct;
      if (!p.tie) ++m.justification_correct_strict;
    }
    if (answer && s.justification_correct) {
      ++m.both_correct;
      if (!p.tie) ++m.both_correct_strict;
    }
  }
  if (!orphans.empty()) throw ValidationError("predictions without golden entry: " + orphans);
  return m;
}

// ---------------------------------------------------------------------------

Engine::Engine(std::vector<corpus::Exam> exams, std::vector<corpus::Norm> norms,
               std::vector<corpus::GoldenEntry> golden, EngineConfig cfg, Execution exec)
    : exams_(std::move(exams)), norms_(std::move(norms)), golden_(std::move(golden)), cfg_(std::move(cfg)) {
  if (!(cfg_.tie_epsilon >= 0.0)) throw std::invalid_argument("tie epsilon must be >= 0");
  if (norms_.empty()) throw ValidationError("no norms loaded");
  const auto problems = corpus::cross_validate(golden_, exams_, norms_);
  if (!problems.empty()) {
    std::string msg = "golden set does not match the loaded corpus:";
    for (const auto& p : problems) msg += "\n  " + p;
    throw ValidationError(msg);
  }
  for (const auto& norm : norms_) {
    if (per_norm_.contains(norm.urn)) throw ValidationError("norm " + norm.urn + " loaded twice");
    per_norm_.emplace(norm.urn, graph::build_base_graph(std::span(&norm, 1), cfg_.preprocess, cfg_.log_base, exec));
  }
  combined_ = graph::build_base_graph(norms_, cfg_.preprocess, cfg_.log_base, exec);
}

const graph::BaseGraph& Engine::norm_graph(const std::string& urn) const {
  auto it = per_norm_.find(urn);
  if (it == per_norm_.end()) throw ValidationError("norm " + urn + " not loaded");
  return it->second;
}

const corpus::Question& Engine::question(const std::string& exam_id, int number) const {
  for (const auto& e : exams_) {
    if (e.exam_id != exam_id) continue;
    if (const auto* q = e.find(number)) return *q;
  }
  throw ValidationError("question " + exam_id + " #" + std::to_string(number) + " not loaded");
}

ExperimentRun Engine::run(Mode mode, Execution exec) const {
  std::vector<std::optional<Prediction>> slots(golden_.size());
  parallel_for(golden_.size(), exec, [&](std::size_t i) {
    const auto& entry = golden_[i];
    const auto& q = question(entry.exam_id, entry.question_number);
    if (q.annulled()) return;
    switch (mode) {
      case Mode::exp1: slots[i] = run_exp1(entry.exam_id, q, combined_, cfg_); break;
      case Mode::exp2: slots[i] = run_exp2(entry, q, norm_graph(entry.norm_urn), cfg_); break;
      case Mode::exp3: slots[i] = run_exp3(entry, q, combined_, cfg_); break;
    }
  });

  ExperimentRun run;
  run.mode = mode;
  for (std::size_t i = 0; i < golden_.size(); ++i) {
    if (slots[i]) {
      run.predictions.push_back(std::move(*slots[i]));
    } else {
      run.warnings.push_back({golden_[i].exam_id, golden_[i].question_number, "annulled question skipped"});
    }
  }
  auto by_question = [](const auto& a, const auto& b) {
    if (a.exam_id != b.exam_id) return corpus::exam_id_less(a.exam_id, b.exam_id);
    return a.question_number < b.question_number;
  };
  std::sort(run.predictions.begin(), run.predictions.end(), by_question);
  std::sort(run.warnings.begin(), run.warnings.end(), by_question);
  run.metrics = evaluate(run.predictions, golden_);
  if (run.metrics.both_correct > std::min(run.metrics.answer_correct, run.metrics.justification_correct) ||
      std::max(run.metrics.answer_correct, run.metrics.justification_correct) > run.metrics.n)
    throw std::logic_error("metrics invariant violated");
  return run;
}

}  // namespace oabqa::experiments
