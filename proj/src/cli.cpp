#include "candy/cli.hpp"

#include <CLI11.hpp>
#include <charconv>
#include <fstream>
#include <optional>
#include <sstream>

#include "candy/analysis.hpp"
#include "candy/error.hpp"
#include "candy/report.hpp"
#include "candy/version.hpp"

namespace candy::cli {

namespace {

enum class Format { json, csv, text };

struct GraphSource {
  std::string file;
  std::string family;
  bool normalize = false;
};

struct Loaded {
  Graph graph;
  std::string label;
};

Loaded load_graph(const GraphSource& src) {
  if (!src.family.empty()) {
    auto fam = parse_family(src.family);
    return {generate(fam), fam.to_spec()};
  }
  std::ifstream in(src.file);
  if (!in) throw PreconditionError("cannot read graph file '" + src.file + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return {from_edge_list(buffer.str(), {src.normalize}), src.file};
}

// "12", "threshold" or "threshold+5".
Candies parse_candies(std::string_view text, const Graph& g) {
  auto as_uint = [&](std::string_view tok) {
    Candies value = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (tok.empty() || ec != std::errc{} || ptr != tok.data() + tok.size())
      throw ParseError("invalid candy count '" + std::string(text) + "'");
    return value;
  };
  if (text.starts_with("threshold")) {
    auto threshold = std::max<std::int64_t>(0, stabilization_threshold(g));
    auto rest = text.substr(9);
    if (rest.empty()) return static_cast<Candies>(threshold);
    if (rest.front() != '+') throw ParseError("invalid candy count '" + std::string(text) + "'");
    return static_cast<Candies>(threshold) + as_uint(rest.substr(1));
  }
  return as_uint(text);
}

std::pair<Candies, Candies> parse_range(std::string_view text, const Graph& g) {
  auto dots = text.find("..");
  if (dots == std::string_view::npos) {
    auto c = parse_candies(text, g);
    return {c, c};
  }
  return {parse_candies(text.substr(0, dots), g), parse_candies(text.substr(dots + 2), g)};
}

void warn_if_empty(Candies c, std::ostream& err) {
  if (c == 0) err << "candy: warning: c = 0; the all-zero configuration is trivially fixed\n";
}

void emit(std::ostream& out, std::string_view command, const report::Json& body) {
  out << report::envelope(command, body).dump(2) << '\n';
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Candy-passing game simulator and stabilization checker", "candy"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  GraphSource source;
  Format format = Format::json;
  std::string config_text;
  std::string candies_text;
  std::string mode_text = "exhaustive";
  std::uint64_t seed = 1;
  std::uint64_t samples = 10'000;
  unsigned threads = 1;
  std::uint64_t cap = 1'000'000;
  SimulateOptions sim;

  const std::map<std::string, Format> formats{
      {"json", Format::json}, {"csv", Format::csv}, {"text", Format::text}};

  auto add_graph = [&](CLI::App* cmd) {
    auto* file = cmd->add_option("--graph", source.file, "Edge-list file");
    auto* fam = cmd->add_option("--family", source.family,
                                "Family spec: cycle:N path:N complete:N star:N "
                                "circulant:N:K1,K2 random:N:M:seedS");
    file->excludes(fam);
    cmd->add_flag("--normalize", source.normalize, "Relabel sparse vertex ids");
    cmd->add_option("--output", format, "json|csv|text")
        ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));
  };
  auto add_budget = [&](CLI::App* cmd) {
    cmd->add_option("--max-rounds", sim.max_rounds, "Round budget per run")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--memory-cap", sim.memory_cap_states,
                    "Stored configurations before constant-memory detection");
  };
  auto add_harness = [&](CLI::App* cmd) {
    add_budget(cmd);
    cmd->add_option("--threads", threads, "Worker threads (0 = all cores)");
    cmd->add_option("--cap", cap, "Exhaustive enumeration cap per candy count");
  };

  auto* simulate_cmd = app.add_subcommand("simulate", "Run one game to its periodic regime");
  add_graph(simulate_cmd);
  add_budget(simulate_cmd);
  simulate_cmd
      ->add_option("--config", config_text, "Counts like 3,0,0 or uniform-random:SEED")
      ->required();
  simulate_cmd->add_option("--candies", candies_text, "Total for uniform-random configs");

  auto* threshold_cmd = app.add_subcommand("threshold", "Print 4|E| - |V|");
  add_graph(threshold_cmd);

  auto* verify_cmd = app.add_subcommand("verify", "Check that every distribution stabilizes");
  add_graph(verify_cmd);
  add_harness(verify_cmd);
  verify_cmd->add_option("--candies", candies_text, "N, threshold or threshold+K")->required();
  verify_cmd->add_option("--mode", mode_text, "exhaustive|sampled")
      ->check(CLI::IsMember({"exhaustive", "sampled"}));
  verify_cmd->add_option("--seed", seed, "Sampling seed");
  verify_cmd->add_option("--samples", samples, "Sampled distributions");

  auto* sweep_cmd = app.add_subcommand("sweep", "Exhaustive verdict for each c in a range");
  add_graph(sweep_cmd);
  add_harness(sweep_cmd);
  sweep_cmd->add_option("--candies", candies_text, "Range A..B (bounds may use threshold)")
      ->required();

  auto* gen_cmd = app.add_subcommand("gen", "Write a family graph as an edge list");
  add_graph(gen_cmd);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << '\n';
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "candy: error: " << e.what() << '\n';
    return kUsage;
  }

  auto* cmd = app.get_subcommands().front();
  if (source.file.empty() && source.family.empty()) {
    err << "candy: error: " << cmd->get_name() << " needs --graph FILE or --family SPEC\n";
    return kUsage;
  }

  try {
    auto [graph, label] = load_graph(source);
    const std::string name = cmd->get_name();

    if (name == "threshold") {
      const auto threshold = stabilization_threshold(graph);
      if (format == Format::text) {
        out << threshold << '\n';
      } else if (format == Format::csv) {
        out << "graph,vertices,edges,threshold\n"
            << label << ',' << graph.vertex_count() << ',' << graph.edge_count() << ','
            << threshold << '\n';
      } else {
        emit(out, name, report::to_json(GraphSummary{label, graph.vertex_count(),
                                                             graph.edge_count(), threshold}));
      }
      return kOk;
    }

    if (name == "gen") {
      if (format == Format::json) {
        report::Json edges = report::Json::array();
        for (auto [u, v] : graph.edges()) edges.push_back({u, v});
        emit(out, name,
             report::Json{{"graph", report::to_json(GraphSummary{label, graph.vertex_count(),
                                                                 graph.edge_count(),
                                                                 stabilization_threshold(graph)})},
                          {"edges", std::move(edges)}});
      } else {
        if (format == Format::text) out << "# " << label << '\n';
        out << to_edge_list(graph);
      }
      return kOk;
    }

    if (name == "simulate") {
      Configuration initial;
      if (config_text.starts_with("uniform-random:")) {
        if (candies_text.empty()) {
          err << "candy: error: uniform-random configurations need --candies\n";
          return kUsage;
        }
        std::uint64_t config_seed = 0;
        auto tok = std::string_view(config_text).substr(15);
        auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), config_seed);
        if (tok.empty() || ec != std::errc{} || ptr != tok.data() + tok.size())
          throw ParseError("invalid seed in '" + config_text + "'");
        Rng rng(config_seed);
        initial = random_distribution(graph.vertex_count(), parse_candies(candies_text, graph), rng);
      } else {
        initial = Configuration::parse(config_text);
      }
      warn_if_empty(initial.total(), err);
      auto result = simulate(graph, initial, sim);
      if (format == Format::csv)
        report::write_csv(out, result);
      else if (format == Format::text)
        report::write_text(out, result);
      else
        emit(out, name, report::to_json(result));
      return kOk;
    }

    VerifyOptions options;
    options.simulate = sim;
    options.threads = threads;
    options.exhaustive_cap = cap;
    options.graph_label = label;

    if (name == "verify") {
      const Candies c = parse_candies(candies_text, graph);
      warn_if_empty(c, err);
      VerifyMode mode = Exhaustive{};
      if (mode_text == "sampled") mode = Sampled{seed, samples};
      options.record_runs = format == Format::csv;
      auto result = verify_theorem(graph, c, mode, options);
      if (format == Format::csv)
        report::write_csv(out, result);
      else if (format == Format::text)
        report::write_text(out, result);
      else
        emit(out, name, report::to_json(result));
      if (result.budget_exceeded) return kBudget;
      return result.all_stabilized ? kOk : kCounterexample;
    }

    // sweep
    auto [c_min, c_max] = parse_range(candies_text, graph);
    auto rows = minimal_universal_stabilization(graph, c_min, c_max, options);
    GraphSummary summary{label, graph.vertex_count(), graph.edge_count(),
                         stabilization_threshold(graph)};
    if (format == Format::csv) {
      report::write_csv(out, rows);
    } else if (format == Format::text) {
      report::write_text(out, summary, rows);
    } else {
      report::Json table = report::Json::array();
      for (const auto& row : rows) table.push_back(report::to_json(row));
      emit(out, name,
           report::Json{{"graph", report::to_json(summary)},
                        {"termination_meaning",
                         "every run reaches a fixed point with an empty firing set"},
                        {"rows", std::move(table)}});
    }
    bool budget = false;
    bool theorem_violated = false;
    for (const auto& row : rows) {
      budget |= row.budget_exceeded > 0;
      theorem_violated |= row.at_or_above_threshold && row.witness.has_value();
    }
    if (budget) return kBudget;
    return theorem_violated ? kCounterexample : kOk;
  } catch (const BudgetExceeded& e) {
    err << "candy: error: " << e.what() << '\n';
    return kBudget;
  } catch (const CapExceeded& e) {
    err << "candy: error: " << e.what() << '\n';
    return kBudget;
  } catch (const Error& e) {
    err << "candy: error: " << e.what() << '\n';
    return kUsage;
  }
}

}  // namespace candy::cli
