// Results file, summary table and per-question diff report.
#pragma once

#include <iosfwd>
#include <span>

#include "json.hpp"
#include "oabqa/experiments.hpp"

namespace oabqa::report {

using Json = nlohmann::ordered_json;

/// `golden` may be null; scoring fields are then omitted.
Json prediction_record(const experiments::Prediction& p, const corpus::GoldenEntry* golden);
Json metrics_record(const experiments::ExperimentRun& run);

/// JSON array: optional config record, then for every run its prediction
/// records, warning records and a trailing metrics record.
Json results_document(std::span<const experiments::ExperimentRun> runs,
                      std::span<const corpus::GoldenEntry> golden, const Json* config = nullptr);

void write_results(const Json& document, std::ostream& out);

void print_summary(std::span<const experiments::ExperimentRun> runs, std::ostream& out);

/// One line per golden question: expected vs predicted, with correctness and tie flags.
void write_diff_report(const experiments::ExperimentRun& run, std::span<const corpus::GoldenEntry> golden,
                       std::ostream& out);

}  // namespace oabqa::report
