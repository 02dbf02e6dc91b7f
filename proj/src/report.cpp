#include "candy/report.hpp"

#include <iomanip>

#include "candy/version.hpp"

namespace candy::report {

namespace {

std::string quoted(const Configuration& conf) { return '"' + conf.to_string() + '"'; }

std::string optional_number(const std::optional<std::uint64_t>& x) {
  return x ? std::to_string(*x) : std::string();
}

}  // namespace

Json to_json(const Configuration& conf) {
  Json out = Json::array();
  for (auto x : conf.counts()) out.push_back(x);
  return out;
}

Json to_json(const RunResult& run) {
  Json window = Json::array();
  for (const auto& conf : run.periodic_window) window.push_back(to_json(conf));
  Json stabilization = Json::array();
  for (const auto& r : run.per_vertex_stabilization)
    stabilization.push_back(r ? Json(*r) : Json(nullptr));
  return Json{{"initial", to_json(run.initial)},
              {"transient", run.transient_length},
              {"period", run.period_length},
              {"window", std::move(window)},
              {"stabilization", std::move(stabilization)},
              {"conserved_total", run.initial.total()},
              {"rounds_executed", run.rounds_executed}};
}

Json to_json(const GraphSummary& graph) {
  return Json{{"label", graph.label},
              {"vertices", graph.vertices},
              {"edges", graph.edges},
              {"threshold", graph.threshold}};
}

Json to_json(const VerificationReport& report) {
  Json mode;
  if (const auto* s = std::get_if<Sampled>(&report.mode))
    mode = Json{{"kind", "sampled"}, {"seed", s->seed}, {"count", s->count}};
  else
    mode = Json{{"kind", "exhaustive"}};

  Json counterexamples = Json::array();
  for (const auto& ce : report.counterexamples) {
    counterexamples.push_back(Json{{"initial", to_json(ce.initial)},
                                   {"budget_exceeded", !ce.run.has_value()},
                                   {"run", ce.run ? to_json(*ce.run) : Json(nullptr)}});
  }
  const bool theorem_applies =
      report.graph.threshold <= 0 || report.candies >= static_cast<Candies>(report.graph.threshold);
  return Json{{"graph", to_json(report.graph)},
              {"candies", report.candies},
              {"theorem_applies", theorem_applies},
              {"mode", std::move(mode)},
              {"runs", report.runs},
              {"all_stabilized", report.all_stabilized},
              {"max_transient", report.max_transient},
              {"budget_exceeded", report.budget_exceeded},
              {"counterexamples", std::move(counterexamples)}};
}

Json to_json(const ThresholdRow& row) {
  return Json{{"candies", row.candies},
              {"runs", row.runs},
              {"all_stabilize", row.all_stabilize},
              {"all_terminate", row.all_terminate},
              {"witness", row.witness ? to_json(*row.witness) : Json(nullptr)},
              {"max_transient", row.max_transient},
              {"budget_exceeded", row.budget_exceeded},
              {"at_or_above_threshold", row.at_or_above_threshold}};
}

Json to_json(const AbundanceTrace& trace) {
  Json violations = Json::array();
  for (const auto& v : trace.violations)
    violations.push_back(Json{{"round", v.round}, {"rule", to_string(v.rule)}});
  return Json{{"abundant_sets", trace.abundant_sets},
              {"abundant_totals", trace.abundant_totals},
              {"violations", std::move(violations)}};
}

Json envelope(std::string_view command, Json result) {
  return Json{{"header", Json{{"tool", "candy"}, {"version", kVersion}, {"command", command}}},
              {"result", std::move(result)}};
}

void write_csv(std::ostream& os, const RunResult& run) {
  os << "round,configuration\n";
  for (std::size_t k = 0; k < run.periodic_window.size(); ++k)
    os << run.transient_length + k << ',' << quoted(run.periodic_window[k]) << '\n';
}

void write_csv(std::ostream& os, const VerificationReport& report) {
  os << "initial,transient,period,stabilized\n";
  if (!report.records.empty()) {
    for (const auto& rec : report.records) {
      os << quoted(rec.initial) << ',' << optional_number(rec.transient) << ','
         << optional_number(rec.period) << ','
         << (rec.period ? (*rec.period == 1 ? "true" : "false") : "") << '\n';
    }
    return;
  }
  for (const auto& ce : report.counterexamples) {
    os << quoted(ce.initial) << ','
       << (ce.run ? std::to_string(ce.run->transient_length) : std::string()) << ','
       << (ce.run ? std::to_string(ce.run->period_length) : std::string()) << ",false\n";
  }
}

void write_csv(std::ostream& os, std::span<const ThresholdRow> rows) {
  os << "candies,runs,all_stabilize,all_terminate,witness,max_transient,budget_exceeded,"
        "at_or_above_threshold\n";
  for (const auto& row : rows) {
    os << row.candies << ',' << row.runs << ',' << std::boolalpha << row.all_stabilize << ','
       << row.all_terminate << ',' << (row.witness ? quoted(*row.witness) : std::string())
       << ',' << row.max_transient << ',' << row.budget_exceeded << ','
       << row.at_or_above_threshold << '\n';
  }
}

void write_text(std::ostream& os, const RunResult& run) {
  os << "initial     " << run.initial.to_string() << " (c=" << run.initial.total() << ")\n"
     << "transient   " << run.transient_length << "\n"
     << "period      " << run.period_length << "\n";
  for (const auto& conf : run.periodic_window) os << "  " << conf.to_string() << '\n';
  os << "stabilized  ";
  for (std::size_t v = 0; v < run.per_vertex_stabilization.size(); ++v) {
    const auto& r = run.per_vertex_stabilization[v];
    os << (v ? " " : "") << (r ? std::to_string(*r) : std::string("-"));
  }
  os << '\n';
}

void write_text(std::ostream& os, const VerificationReport& report) {
  os << "graph          " << report.graph.label << " (|V|=" << report.graph.vertices
     << ", |E|=" << report.graph.edges << ", threshold " << report.graph.threshold << ")\n"
     << "candies        " << report.candies << "\n"
     << "runs           " << report.runs << "\n"
     << "all stabilized " << (report.all_stabilized ? "yes" : "no") << "\n"
     << "max transient  " << report.max_transient << "\n";
  if (report.budget_exceeded) os << "budget exceeded " << report.budget_exceeded << "\n";
  for (const auto& ce : report.counterexamples) {
    os << "  counterexample " << ce.initial.to_string();
    if (ce.run)
      os << " (T=" << ce.run->transient_length << ", P=" << ce.run->period_length << ")\n";
    else
      os << " (round budget exceeded)\n";
  }
}

void write_text(std::ostream& os, const GraphSummary& graph, std::span<const ThresholdRow> rows) {
  os << "graph " << graph.label << " (|V|=" << graph.vertices << ", |E|=" << graph.edges
     << ", threshold " << graph.threshold << ")\n";
  os << std::setw(8) << "c" << std::setw(12) << "runs" << std::setw(11) << "stabilize"
     << std::setw(11) << "terminate" << "  witness\n";
  for (const auto& row : rows) {
    os << std::setw(8) << row.candies << std::setw(12) << row.runs << std::setw(11)
       << (row.all_stabilize ? "all" : "no") << std::setw(11) << (row.all_terminate ? "all" : "no")
       << "  " << (row.witness ? row.witness->to_string() : std::string("-")) << '\n';
  }
  os << "(terminate: every run ends in a fixed point where no vertex fires)\n";
}

}  // namespace candy::report
