#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "oabqa/cli.hpp"
#include "support/test_support.hpp"

namespace fs = std::filesystem;
using namespace oabqa;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "oabqa");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& name) : path(fs::temp_directory_path() / ("oabqa_cli_" + name)) {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::vector<std::string> evaluate_args(const fs::path& out) {
  const auto f = testing::fixture_path;
  return {"evaluate",
          "--exams", f("exams"),
          "--norm", f("norms/lei8906_excerpt.xml"),
          "--norm", f("norms/regulamento_geral_excerpt.xml"),
          "--norm", f("norms/codigo_etica_excerpt.xml"),
          "--golden", f("golden.csv"),
          "--out", out.string()};
}

}  // namespace

TEST_CASE("parse-exams on a single minimal exam") {
  TempDir dir("minimal");
  fs::copy_file(testing::fixture_path("exams/minimal.txt"), dir.path / "minimal.txt");
  const auto r = run_cli({"parse-exams", dir.path.string()});
  CHECK(r.code == 0);
  CHECK(r.out == "2010-01\t1 question\n1 exam, 1 question\n");
}

TEST_CASE("parse-exams reports the malformed file and exits 2") {
  TempDir dir("malformed");
  fs::copy_file(testing::fixture_path("exams/minimal.txt"), dir.path / "minimal.txt");
  std::ofstream(dir.path / "broken.txt") << "EXAM 2011-02\n---\nQUESTION 1\nstatement\nOPTIONS\nA) only one\n";
  const auto r = run_cli({"parse-exams", dir.path.string()});
  CHECK(r.code == 2);
  CHECK(r.err.find("broken.txt") != std::string::npos);
  CHECK(r.out.find("1 exam, 1 question") != std::string::npos);
}

TEST_CASE("parse-norms counts articles per norm") {
  const auto r = run_cli({"parse-norms", testing::fixture_path("norms/lei8906_excerpt.xml"),
                          testing::fixture_path("norms/codigo_etica_excerpt.xml")});
  CHECK(r.code == 0);
  CHECK(r.out.find("urn:lex:br:federal:lei:1994;8906\t8 articles") != std::string::npos);
  CHECK(r.out.find("2 norms, 12 articles") != std::string::npos);
}

TEST_CASE("usage errors exit 1") {
  CHECK(run_cli({}).code == 1);
  CHECK(run_cli({"frobnicate"}).code == 1);
  CHECK(run_cli({"evaluate", "--exams", "x"}).code == 1);
  TempDir dir("usage");
  auto args = evaluate_args(dir.path / "r.json");
  args.insert(args.end(), {"--mode", "exp9"});
  CHECK(run_cli(args).code == 1);
  args = evaluate_args(dir.path / "r.json");
  args.insert(args.end(), {"--no-stopwords", "--stopwords", "x.txt"});
  CHECK(run_cli(args).code == 1);
}

TEST_CASE("missing inputs are data errors") {
  TempDir dir("missing");
  auto args = evaluate_args(dir.path / "r.json");
  args[2] = (dir.path / "nowhere").string();
  const auto r = run_cli(args);
  CHECK(r.code == 2);
  CHECK(r.err.find("nowhere") != std::string::npos);
}

TEST_CASE("evaluate runs all three experiments and writes JSON") {
  TempDir dir("evaluate");
  const auto r = run_cli(evaluate_args(dir.path / "r.json"));
  REQUIRE(r.code == 0);
  CHECK(r.out.find("\nexp1 ") != std::string::npos);
  CHECK(r.out.find("\nexp2 ") != std::string::npos);
  CHECK(r.out.find("\nexp3 ") != std::string::npos);
  const auto doc = nlohmann::json::parse(slurp(dir.path / "r.json"));
  std::size_t predictions = 0, metrics = 0;
  for (const auto& rec : doc) {
    if (rec["record"] == "prediction") ++predictions;
    if (rec["record"] == "metrics") ++metrics;
  }
  CHECK(predictions == 12);
  CHECK(metrics == 3);
}

TEST_CASE("evaluate output is byte-identical across runs and execution paths") {
  TempDir dir("determinism");
  auto a = evaluate_args(dir.path / "a.json");
  auto b = evaluate_args(dir.path / "b.json");
  auto c = evaluate_args(dir.path / "c.json");
  c.push_back("--serial");
  REQUIRE(run_cli(a).code == 0);
  REQUIRE(run_cli(b).code == 0);
  REQUIRE(run_cli(c).code == 0);
  const auto first = slurp(dir.path / "a.json");
  CHECK(!first.empty());
  CHECK(first == slurp(dir.path / "b.json"));
  CHECK(first == slurp(dir.path / "c.json"));
}

TEST_CASE("--print-config, --config file and flag precedence") {
  TempDir dir("config");
  std::ofstream(dir.path / "run.ini") << "[evaluate]\nmode=exp2\ntie-epsilon=0.5\nlog-base=ten\n";
  auto args = evaluate_args(dir.path / "r.json");
  args.insert(args.end(), {"--config", (dir.path / "run.ini").string(), "--print-config", "--tie-epsilon", "0.25"});
  const auto r = run_cli(args);
  REQUIRE(r.code == 0);
  const auto doc = nlohmann::json::parse(slurp(dir.path / "r.json"));
  REQUIRE(doc.front()["record"] == "config");
  const auto& cfg = doc.front()["config"];
  CHECK(cfg["mode"] == "exp2");
  CHECK(cfg["log_base"] == "ten");
  CHECK(cfg["tie_epsilon"] == 0.25);
  CHECK(cfg["stopword_file"].is_string());
  CHECK(r.out.find("\nexp1 ") == std::string::npos);
}

TEST_CASE("--diff-report and --dump-vocab write their files") {
  TempDir dir("extras");
  auto args = evaluate_args(dir.path / "r.json");
  args.insert(args.end(), {"--mode", "exp3", "--no-stopwords", "--diff-report", (dir.path / "d.tsv").string(),
                           "--dump-vocab", (dir.path / "v.tsv").string()});
  REQUIRE(run_cli(args).code == 0);
  CHECK(slurp(dir.path / "d.tsv").rfind("# exp3\nexam\tq\t", 0) == 0);
  const auto vocab = slurp(dir.path / "v.tsv");
  CHECK(vocab.rfind("term\tdoc_freq\tidf\n", 0) == 0);
  CHECK(vocab.find("\nadvocacia\t") != std::string::npos);
}
