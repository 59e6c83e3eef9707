#include "oabqa/cli.hpp"

#include "CLI11.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#include "oabqa/corpus.hpp"
#include "oabqa/report.hpp"

namespace oabqa::cli {

namespace fs = std::filesystem;

std::optional<fs::path> default_stopword_file() {
#ifdef OABQA_DEFAULT_STOPWORDS
  const fs::path p(OABQA_DEFAULT_STOPWORDS);
  std::error_code ec;
  if (fs::is_regular_file(p, ec)) return p;
#endif
  return std::nullopt;
}

namespace {

std::string plural(std::size_t n, const std::string& word) {
  return std::to_string(n) + " " + word + (n == 1 ? "" : "s");
}

std::string_view to_string(RunMode m) {
  switch (m) {
    case RunMode::exp1: return "exp1";
    case RunMode::exp2: return "exp2";
    case RunMode::exp3: return "exp3";
    case RunMode::all: return "all";
  }
  return "?";
}

std::vector<experiments::Mode> modes_of(RunMode m) {
  switch (m) {
    case RunMode::exp1: return {experiments::Mode::exp1};
    case RunMode::exp2: return {experiments::Mode::exp2};
    case RunMode::exp3: return {experiments::Mode::exp3};
    case RunMode::all: return {experiments::Mode::exp1, experiments::Mode::exp2, experiments::Mode::exp3};
  }
  return {};
}

void require_exists(const fs::path& p, const std::string& what) {
  std::error_code ec;
  if (!fs::exists(p, ec)) throw DataError(p.string() + ": " + what + " does not exist");
}

template <class Fn>
int guarded(std::ostream& err, Fn&& fn) {
  try {
    return fn();
  } catch (const DataError& e) {
    err << "error: " << e.what() << '\n';
    return kDataError;
  } catch (const std::logic_error& e) {
    err << "internal error: " << e.what() << '\n';
    return kInternalError;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kInternalError;
  }
}

}  // namespace

nlohmann::ordered_json to_json(const RunConfig& cfg) {
  nlohmann::ordered_json j;
  j["exam_dir"] = cfg.exam_dir.string();
  j["norm_files"] = nlohmann::ordered_json::array();
  for (const auto& n : cfg.norm_files) j["norm_files"].push_back(n.string());
  j["golden_file"] = cfg.golden_file.string();
  j["stopword_file"] = cfg.stopword_file ? nlohmann::ordered_json(cfg.stopword_file->string()) : nullptr;
  j["mode"] = to_string(cfg.mode);
  j["tie_epsilon"] = cfg.tie_epsilon;
  j["log_base"] = cfg.log_base == vsm::LogBase::natural ? "natural" : "ten";
  j["strip_diacritics"] = cfg.strip_diacritics;
  j["output"] = cfg.output.string();
  return j;
}

int cmd_parse_exams(const fs::path& exam_dir, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    std::error_code ec;
    if (!fs::is_directory(exam_dir, ec)) throw DataError(exam_dir.string() + ": not a directory");
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(exam_dir)) {
      if (entry.is_regular_file() && entry.path().extension() == ".txt") files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());

    std::vector<corpus::Exam> exams;
    std::size_t failures = 0;
    for (const auto& f : files) {
      try {
        exams.push_back(corpus::load_exam_file(f));
      } catch (const DataError& e) {
        err << "error: " << e.what() << '\n';
        ++failures;
      }
    }
    std::stable_sort(exams.begin(), exams.end(), [](const corpus::Exam& a, const corpus::Exam& b) {
      return corpus::exam_id_less(a.exam_id, b.exam_id);
    });
    std::size_t total = 0;
    for (const auto& e : exams) {
      const auto annulled = std::count_if(e.questions.begin(), e.questions.end(),
                                          [](const corpus::Question& q) { return q.annulled(); });
      out << e.exam_id << '\t' << plural(e.questions.size(), "question");
      if (annulled > 0) out << " (" << annulled << " annulled)";
      out << '\n';
      total += e.questions.size();
    }
    out << plural(exams.size(), "exam") << ", " << plural(total, "question") << '\n';
    return failures == 0 ? kSuccess : kDataError;
  });
}

int cmd_parse_norms(const std::vector<fs::path>& files, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    std::size_t failures = 0;
    std::size_t total = 0;
    for (const auto& f : files) {
      try {
        const auto norm = corpus::load_norm_file(f);
        out << norm.urn << '\t' << plural(norm.articles.size(), "article") << '\t' << f.string() << '\n';
        total += norm.articles.size();
      } catch (const DataError& e) {
        err << "error: " << e.what() << '\n';
        ++failures;
      }
    }
    out << plural(files.size() - failures, "norm") << ", " << plural(total, "article") << '\n';
    return failures == 0 ? kSuccess : kDataError;
  });
}

int cmd_evaluate(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (!(cfg.tie_epsilon >= 0.0)) {
      err << "error: --tie-epsilon must be >= 0\n";
      return static_cast<int>(kUsageError);
    }
    require_exists(cfg.exam_dir, "exam directory");
    require_exists(cfg.golden_file, "golden file");
    for (const auto& n : cfg.norm_files) require_exists(n, "norm file");
    if (cfg.stopword_file) require_exists(*cfg.stopword_file, "stopword file");

    experiments::EngineConfig engine_cfg;
    engine_cfg.log_base = cfg.log_base;
    engine_cfg.tie_epsilon = cfg.tie_epsilon;
    engine_cfg.preprocess.strip_diacritics = cfg.strip_diacritics;
    if (cfg.stopword_file) {
      engine_cfg.preprocess.remove_stopwords = true;
      engine_cfg.preprocess.stopwords = text::load_stopwords(*cfg.stopword_file, cfg.strip_diacritics);
    }

    auto exams = corpus::load_exam_dir(cfg.exam_dir);
    std::vector<corpus::Norm> norms;
    for (const auto& n : cfg.norm_files) norms.push_back(corpus::load_norm_file(n));
    auto golden = corpus::load_golden_file(cfg.golden_file);

    const Execution exec = cfg.serial ? Execution::serial : Execution::parallel;
    const experiments::Engine engine(std::move(exams), std::move(norms), std::move(golden), engine_cfg, exec);

    std::vector<experiments::ExperimentRun> runs;
    for (auto mode : modes_of(cfg.mode)) runs.push_back(engine.run(mode, exec));

    const auto config_json = to_json(cfg);
    const auto doc = report::results_document(runs, engine.golden(), cfg.print_config ? &config_json : nullptr);
    {
      std::ofstream f(cfg.output, std::ios::binary);
      if (!f) throw DataError(cfg.output.string() + ": cannot open for writing");
      report::write_results(doc, f);
      if (!f) throw DataError(cfg.output.string() + ": write failed");
    }
    if (cfg.diff_report) {
      std::ofstream f(*cfg.diff_report, std::ios::binary);
      if (!f) throw DataError(cfg.diff_report->string() + ": cannot open for writing");
      for (const auto& r : runs) report::write_diff_report(r, engine.golden(), f);
    }
    if (cfg.vocab_dump) {
      std::ofstream f(*cfg.vocab_dump, std::ios::binary);
      if (!f) throw DataError(cfg.vocab_dump->string() + ": cannot open for writing");
      engine.combined_graph().vocabulary().dump_tsv(f);
    }

    if (cfg.print_config) out << config_json.dump(2) << '\n';
    report::print_summary(runs, out);
    out << "results written to " << cfg.output.string() << '\n';
    return static_cast<int>(kSuccess);
  });
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Shortest-path justification retrieval for multiple-choice bar exam questions", "oabqa"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "", "INI/TOML file; evaluate options go in an [evaluate] section (flags take precedence)");

  fs::path exam_dir;
  auto* parse_exams = app.add_subcommand("parse-exams", "Parse an exam directory and print question counts");
  parse_exams->add_option("exam_dir", exam_dir, "Directory with *.txt exam files")->required();

  std::vector<fs::path> norm_paths;
  auto* parse_norms = app.add_subcommand("parse-norms", "Parse norm XML files and print article counts");
  parse_norms->add_option("norm_files", norm_paths, "Norm XML files")->required();

  RunConfig cfg;
  std::string mode = "all";
  std::string log_base = "natural";
  std::string stopwords;
  bool no_stopwords = false;
  bool no_strip = false;
  std::string diff_report, vocab_dump;
  int threads = 0;
  auto* evaluate = app.add_subcommand("evaluate", "Run the experiments and score them against the golden set");
  evaluate->add_option("--exams", cfg.exam_dir, "Directory with *.txt exam files")->required();
  evaluate->add_option("--norm", cfg.norm_files, "Norm XML file (repeatable; order fixes the combined graph)")
      ->required();
  evaluate->add_option("--golden", cfg.golden_file, "Golden-set CSV")->required();
  evaluate->add_option("--stopwords", stopwords, "Stopword list (default: shipped Portuguese list)");
  evaluate->add_flag("--no-stopwords", no_stopwords, "Disable stopword removal");
  evaluate->add_option("--mode", mode, "exp1, exp2, exp3 or all")
      ->check(CLI::IsMember({"exp1", "exp2", "exp3", "all"}));
  evaluate->add_option("--tie-epsilon", cfg.tie_epsilon, "Absolute tolerance for ties")
      ->check(CLI::NonNegativeNumber);
  evaluate->add_option("--log-base", log_base, "IDF logarithm base: natural or ten")
      ->check(CLI::IsMember({"natural", "ten"}));
  evaluate->add_flag("--no-strip-diacritics", no_strip, "Keep diacritics when normalizing");
  evaluate->add_option("--out", cfg.output, "Results JSON file");
  evaluate->add_flag("--print-config", cfg.print_config, "Echo the resolved configuration into the results file");
  evaluate->add_option("--diff-report", diff_report, "Write a per-question diff report (TSV)");
  evaluate->add_option("--dump-vocab", vocab_dump, "Write term/doc_freq/idf of the combined corpus (TSV)");
  evaluate->add_flag("--serial", cfg.serial, "Use the serial reference path instead of OpenMP");
  evaluate->add_option("--threads", threads, "OpenMP thread count (0: runtime default)")
      ->check(CLI::NonNegativeNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? static_cast<int>(kSuccess) : static_cast<int>(kUsageError);
  }

  if (*parse_exams) return cmd_parse_exams(exam_dir, out, err);
  if (*parse_norms) return cmd_parse_norms(norm_paths, out, err);

  cfg.mode = mode == "exp1"   ? RunMode::exp1
             : mode == "exp2" ? RunMode::exp2
             : mode == "exp3" ? RunMode::exp3
                              : RunMode::all;
  cfg.log_base = log_base == "ten" ? vsm::LogBase::ten : vsm::LogBase::natural;
  cfg.strip_diacritics = !no_strip;
  if (no_stopwords && !stopwords.empty()) {
    err << "error: --stopwords and --no-stopwords are mutually exclusive\n";
    return kUsageError;
  }
  if (!stopwords.empty()) {
    cfg.stopword_file = fs::path(stopwords);
  } else if (!no_stopwords) {
    cfg.stopword_file = default_stopword_file();
  }
  if (!diff_report.empty()) cfg.diff_report = fs::path(diff_report);
  if (!vocab_dump.empty()) cfg.vocab_dump = fs::path(vocab_dump);
#ifdef _OPENMP
  if (threads > 0) omp_set_num_threads(threads);
#endif
  return cmd_evaluate(cfg, out, err);
}

}  // namespace oabqa::cli
