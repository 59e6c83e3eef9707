// Command-line front end. Exit codes: 0 success, 1 usage error, 2 data or
// parse error, 3 internal invariant violation.
#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "oabqa/experiments.hpp"

namespace oabqa::cli {

enum ExitCode : int { kSuccess = 0, kUsageError = 1, kDataError = 2, kInternalError = 3 };

enum class RunMode { exp1, exp2, exp3, all };

struct RunConfig {
  std::filesystem::path exam_dir;
  std::vector<std::filesystem::path> norm_files;
  std::filesystem::path golden_file;
  std::optional<std::filesystem::path> stopword_file;
  RunMode mode = RunMode::all;
  double tie_epsilon = 1e-9;
  vsm::LogBase log_base = vsm::LogBase::natural;
  bool strip_diacritics = true;
  std::filesystem::path output = "results.json";
  bool print_config = false;
  bool serial = false;
  std::optional<std::filesystem::path> diff_report;
  std::optional<std::filesystem::path> vocab_dump;
};

/// Shipped Portuguese stopword list, if it exists in the source tree.
std::optional<std::filesystem::path> default_stopword_file();

nlohmann::ordered_json to_json(const RunConfig& cfg);

int cmd_parse_exams(const std::filesystem::path& exam_dir, std::ostream& out, std::ostream& err);
int cmd_parse_norms(const std::vector<std::filesystem::path>& files, std::ostream& out, std::ostream& err);
int cmd_evaluate(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// Parses arguments and dispatches to a subcommand.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace oabqa::cli
