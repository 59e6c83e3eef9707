// Serial vs OpenMP timings for the hot kernels on a synthetic corpus sized like
// the three-norm corpus (324 articles). Results of both paths are compared and
// the program exits 1 if they differ.
//
//   bench_kernels [questions] [repeats]
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <random>
#include <string>
#include <vector>

#include "oabqa/experiments.hpp"
#include "oabqa/parallel.hpp"

using namespace oabqa;
using Clock = std::chrono::steady_clock;

namespace {

std::string random_text(std::mt19937_64& rng, std::size_t min_words, std::size_t max_words) {
  std::uniform_int_distribution<std::size_t> len(min_words, max_words);
  // Zipf-ish: low ids are common, so documents share vocabulary.
  std::geometric_distribution<int> word(0.004);
  std::string s;
  for (std::size_t n = len(rng); n > 0; --n) s += "w" + std::to_string(word(rng)) + " ";
  return s;
}

template <class Fn>
double best_ms(int repeats, Fn&& fn) {
  double best = 1e300;
  for (int i = 0; i < repeats; ++i) {
    const auto t0 = Clock::now();
    fn();
    best = std::min(best, std::chrono::duration<double, std::milli>(Clock::now() - t0).count());
  }
  return best;
}

}  // namespace

int main(int argc, char** argv) {
  const int questions = argc > 1 ? std::atoi(argv[1]) : 200;
  const int repeats = argc > 2 ? std::atoi(argv[2]) : 5;
  std::mt19937_64 rng(20161919);

  std::vector<corpus::Norm> norms;
  const std::array<std::pair<const char*, int>, 3> split{{{"urn:n1", 89}, {"urn:n2", 169}, {"urn:n3", 66}}};
  for (const auto& [urn, count] : split) {
    corpus::Norm n{urn, {}};
    for (int i = 1; i <= count; ++i) n.articles.push_back({"art" + std::to_string(i), random_text(rng, 20, 400)});
    norms.push_back(std::move(n));
  }

  corpus::Exam exam{"2020-01", {}};
  std::vector<corpus::GoldenEntry> golden;
  for (int q = 1; q <= questions; ++q) {
    corpus::Question question;
    question.number = q;
    question.statement = random_text(rng, 30, 150);
    for (Letter l : kAllLetters) question.alternatives[to_index(l)] = {l, random_text(rng, 5, 40)};
    question.answer_key = kAllLetters[rng() % 4];
    exam.questions.push_back(std::move(question));
    const auto& norm = norms[rng() % norms.size()];
    golden.push_back({exam.exam_id, q, norm.urn, {norm.articles[rng() % norm.articles.size()].id}});
  }

  const experiments::Engine engine({exam}, norms, golden, {});
  std::printf("threads: %d, articles: %zu, questions: %d, best of %d\n", max_threads(),
              engine.combined_graph().size(), questions, repeats);

  bool same = true;

  const std::vector<std::vector<text::Token>> docs = [&] {
    std::vector<std::vector<text::Token>> d;
    for (const auto& n : norms)
      for (const auto& a : n.articles) d.push_back(text::preprocess(a.text, {}));
    return d;
  }();
  std::vector<graph::ArticleRef> refs;
  for (const auto& a : engine.combined_graph().articles()) refs.push_back(a.ref);
  const double base_s = best_ms(repeats, [&] { (void)graph::BaseGraph::from_documents(refs, docs, vsm::LogBase::natural, Execution::serial); });
  const double base_p = best_ms(repeats, [&] { (void)graph::BaseGraph::from_documents(refs, docs, vsm::LogBase::natural, Execution::parallel); });
  std::printf("%-22s serial %9.2f ms   parallel %9.2f ms   speedup %.2fx\n", "base graph", base_s, base_p,
              base_s / base_p);

  const auto& q0 = exam.questions.front();
  const auto statement = text::preprocess(q0.statement, {});
  std::map<Letter, std::vector<text::Token>> alts;
  for (const auto& a : q0.alternatives) alts[a.letter] = text::preprocess(a.text, {});
  const auto& base = engine.combined_graph();
  const double attach_s = best_ms(repeats * 20, [&] { (void)graph::attach_query(base, statement, alts, Execution::serial); });
  const double attach_p = best_ms(repeats * 20, [&] { (void)graph::attach_query(base, statement, alts, Execution::parallel); });
  {
    const auto a = graph::attach_query(base, statement, alts, Execution::serial);
    const auto b = graph::attach_query(base, statement, alts, Execution::parallel);
    for (std::size_t n = 0; n < a.node_count(); ++n) {
      const auto ea = a.out_edges(n);
      const auto eb = b.out_edges(n);
      same = same && ea.size() == eb.size();
      for (std::size_t e = 0; same && e < ea.size(); ++e) same = ea[e].to == eb[e].to && ea[e].weight == eb[e].weight;
    }
  }
  std::printf("%-22s serial %9.3f ms   parallel %9.3f ms   speedup %.2fx\n", "attach_query", attach_s, attach_p,
              attach_s / attach_p);

  for (auto mode : {experiments::Mode::exp1, experiments::Mode::exp2, experiments::Mode::exp3}) {
    experiments::ExperimentRun rs, rp;
    const double s = best_ms(repeats, [&] { rs = engine.run(mode, Execution::serial); });
    const double p = best_ms(repeats, [&] { rp = engine.run(mode, Execution::parallel); });
    same = same && rs.metrics == rp.metrics && rs.predictions.size() == rp.predictions.size();
    for (std::size_t i = 0; same && i < rs.predictions.size(); ++i) {
      same = rs.predictions[i].justification == rp.predictions[i].justification &&
             rs.predictions[i].distance == rp.predictions[i].distance &&
             rs.predictions[i].chosen_letter == rp.predictions[i].chosen_letter;
    }
    const std::string label = "Engine::run " + std::string(experiments::to_string(mode));
    std::printf("%-22s serial %9.2f ms   parallel %9.2f ms   speedup %.2fx\n", label.c_str(), s, p, s / p);
  }

  std::printf("serial and parallel results %s\n", same ? "identical" : "DIFFER");
  return same ? 0 : 1;
}
