// The three evaluation setups and golden-set scoring.
//
//   exp1  statement + all four alternatives over the combined base graph; the
//         closest alternative is the answer, its article the justification.
//   exp2  statement + correct alternative over the graph of the norm named by
//         the golden entry; only the justification is predicted.
//   exp3  as exp2, over the combined graph of all loaded norms.
#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "oabqa/corpus.hpp"
#include "oabqa/graph.hpp"
#include "oabqa/parallel.hpp"
#include "oabqa/textproc.hpp"
#include "oabqa/vsm.hpp"

namespace oabqa::experiments {

enum class Mode { exp1, exp2, exp3 };

std::string_view to_string(Mode mode);
std::optional<Mode> mode_from_string(std::string_view s);

struct EngineConfig {
  text::PreprocessConfig preprocess;
  vsm::LogBase log_base = vsm::LogBase::natural;
  double tie_epsilon = 1e-9;
};

struct Prediction {
  std::string exam_id;
  int question_number = 0;
  Mode mode = Mode::exp2;
  std::optional<Letter> chosen_letter;  // exp1 only
  std::optional<Letter> answer_key;
  graph::ArticleRef justification;
  double distance = 0.0;
  /// exp1: the two closest alternatives are within epsilon.
  /// exp2/exp3: more than one article is within epsilon of the best path.
  bool tie = false;
};

/// "strict" counters treat tied predictions as wrong.
struct Metrics {
  std::size_t n = 0;
  std::size_t answer_correct = 0;
  std::size_t answer_correct_strict = 0;
  std::size_t justification_correct = 0;
  std::size_t justification_correct_strict = 0;
  std::size_t both_correct = 0;
  std::size_t both_correct_strict = 0;
  std::size_t ties = 0;

  friend bool operator==(const Metrics&, const Metrics&) = default;
};

struct Score {
  std::optional<bool> answer_correct;  // exp1 only
  bool justification_correct = false;
};

/// Correct justification: same norm URN and the article is one of the listed ones.
Score score(const Prediction& p, const corpus::GoldenEntry& golden);

/// Requires an answer key (throws std::invalid_argument for annulled questions).
Prediction run_exp1(const std::string& exam_id, const corpus::Question& question,
                    const graph::BaseGraph& combined, const EngineConfig& cfg,
                    Execution exec = Execution::serial);

/// `norm_graph` must be built from the single norm named by `entry`
/// (ValidationError otherwise).
Prediction run_exp2(const corpus::GoldenEntry& entry, const corpus::Question& question,
                    const graph::BaseGraph& norm_graph, const EngineConfig& cfg,
                    Execution exec = Execution::serial);

Prediction run_exp3(const corpus::GoldenEntry& entry, const corpus::Question& question,
                    const graph::BaseGraph& combined, const EngineConfig& cfg,
                    Execution exec = Execution::serial);

/// Order-insensitive. Throws ValidationError listing predictions that have no
/// golden entry.
Metrics evaluate(std::span<const Prediction> predictions, std::span<const corpus::GoldenEntry> golden);

struct Warning {
  std::string exam_id;
  int question_number = 0;
  std::string message;
};

struct ExperimentRun {
  Mode mode = Mode::exp2;
  std::vector<Prediction> predictions;  // ordered by (exam id, question number)
  std::vector<Warning> warnings;
  Metrics metrics;
};

/// Owns the parsed corpus and the base graphs: one per norm and one combined
/// over all norms in load order.
class Engine {
 public:
  /// Cross-validates golden entries against exams and norms before building
  /// anything; throws ValidationError listing every problem.
  Engine(std::vector<corpus::Exam> exams, std::vector<corpus::Norm> norms,
         std::vector<corpus::GoldenEntry> golden, EngineConfig cfg,
         Execution exec = Execution::parallel);

  /// Golden entries are evaluated in parallel unless `exec` is serial.
  /// Annulled questions are skipped with a warning.
  ExperimentRun run(Mode mode, Execution exec = Execution::parallel) const;

  const EngineConfig& config() const { return cfg_; }
  const std::vector<corpus::Exam>& exams() const { return exams_; }
  const std::vector<corpus::Norm>& norms() const { return norms_; }
  const std::vector<corpus::GoldenEntry>& golden() const { return golden_; }
  const graph::BaseGraph& combined_graph() const { return combined_; }
  const graph::BaseGraph& norm_graph(const std::string& urn) const;
  const corpus::Question& question(const std::string& exam_id, int number) const;

 private:
  std::vector<corpus::Exam> exams_;
  std::vector<corpus::Norm> norms_;
  std::vector<corpus::GoldenEntry> golden_;
  EngineConfig cfg_;
  std::map<std::string, graph::BaseGraph> per_norm_;
  graph::BaseGraph combined_;
};

}  // namespace oabqa::experiments
