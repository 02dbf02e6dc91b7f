#pragma once

#include <json.hpp>
#include <ostream>
#include <span>

#include "candy/analysis.hpp"
#include "candy/engine.hpp"

namespace candy::report {

using Json = nlohmann::ordered_json;

Json to_json(const Configuration& conf);
/// Keys: initial, transient, period, window, stabilization, conserved_total, rounds_executed.
Json to_json(const RunResult& run);
Json to_json(const GraphSummary& graph);
Json to_json(const VerificationReport& report);
Json to_json(const ThresholdRow& row);
Json to_json(const AbundanceTrace& trace);

/// Wraps a command result as {"header": {...}, "result": ...}. The header
/// carries run metadata and is excluded from golden comparisons.
Json envelope(std::string_view command, Json result);

// CSV: a header line followed by data rows; configurations are quoted.
void write_csv(std::ostream& os, const RunResult& run);
/// One row per run when records were kept, else one row per counterexample.
void write_csv(std::ostream& os, const VerificationReport& report);
void write_csv(std::ostream& os, std::span<const ThresholdRow> rows);

void write_text(std::ostream& os, const RunResult& run);
void write_text(std::ostream& os, const VerificationReport& report);
void write_text(std::ostream& os, const GraphSummary& graph, std::span<const ThresholdRow> rows);

}  // namespace candy::report
