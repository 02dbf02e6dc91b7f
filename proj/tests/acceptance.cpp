// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails. All checks are exact.

#include <atomic>
#include <chrono>
#include <functional>
#include <iostream>
#include <mutex>
#include <random>
#include <sstream>
#include <string>

#include "candy/analysis.hpp"
#include "candy/error.hpp"
#include "support/oracles.hpp"

using namespace candy;

namespace {

struct Verdict {
  bool pass = true;
  std::string detail;
};

Configuration conf(std::initializer_list<Candies> xs) { return Configuration(std::vector<Candies>(xs)); }

struct Named {
  std::string name;
  Graph graph;
};

std::vector<Named> desk_graphs() {
  return {
      {"C_3", generate(GraphFamily::cycle(3))},     {"C_4", generate(GraphFamily::cycle(4))},
      {"C_5", generate(GraphFamily::cycle(5))},     {"P_3", generate(GraphFamily::path(3))},
      {"P_4", generate(GraphFamily::path(4))},      {"K_4", generate(GraphFamily::complete(4))},
      {"K_{1,3}", generate(GraphFamily::star(4))},
  };
}

// Every stabilized run on a connected graph with >= 2 vertices is routed
// here; its fixed point must fire everywhere or nowhere.
class FixedPointAudit {
 public:
  void observe(const Graph& g, const RunResult& run) {
    if (!run.stabilized() || g.vertex_count() < 2) return;
    const auto& fixed = run.periodic_window.front();
    std::size_t firing = 0;
    for (VertexId v = 0; v < g.vertex_count(); ++v) firing += fixed[v] >= g.degree(v);
    ++seen_;
    if (firing == 0) ++silent_;
    else if (firing == g.vertex_count()) ++all_fire_;
    else {
      std::lock_guard lock(mutex_);
      if (violations_.size() < 5) violations_.push_back(fixed.to_string());
      ++violation_count_;
    }
  }

  std::function<void(const RunResult&)> hook(const Graph& g) {
    return [this, &g](const RunResult& run) { observe(g, run); };
  }

  Verdict verdict() const {
    std::ostringstream os;
    os << seen_ << " fixed points (" << silent_ << " silent, " << all_fire_ << " all firing), "
       << violation_count_ << " violations";
    for (const auto& v : violations_) os << " [" << v << "]";
    return {violation_count_ == 0 && seen_ > 0, os.str()};
  }

 private:
  std::atomic<std::uint64_t> seen_{0}, silent_{0}, all_fire_{0}, violation_count_{0};
  std::mutex mutex_;
  std::vector<std::string> violations_;
};

FixedPointAudit audit;

VerifyOptions harness_options(const Graph& g) {
  VerifyOptions options;
  options.threads = 0;
  options.on_run = audit.hook(g);
  return options;
}

// 1. Exhaustive check at the threshold.
Verdict exhaustive_theorem() {
  Verdict v;
  std::ostringstream os;
  for (const auto& [name, g] : desk_graphs()) {
    const auto c = static_cast<Candies>(stabilization_threshold(g));
    auto report = verify_theorem(g, c, Exhaustive{}, harness_options(g));
    const bool ok = report.all_stabilized && report.budget_exceeded == 0 &&
                    report.runs == composition_count(g.vertex_count(), c);
    v.pass &= ok;
    os << name << " c=" << c << " runs=" << report.runs << " ce=" << report.counterexamples.size()
       << (ok ? "" : " FAIL") << "; ";
  }
  v.detail = os.str();
  return v;
}

// 2. Sampled check at threshold and threshold+5.
Verdict sampled_theorem() {
  const std::vector<Named> graphs{
      {"C_10", generate(GraphFamily::cycle(10))},
      {"K_5", generate(GraphFamily::complete(5))},
      {"circulant(10,{1,2})", generate(GraphFamily::circulant(10, {1, 2}))},
      {"random(8,12,42)", generate(GraphFamily::random_connected(8, 12, 42))},
  };
  Verdict v;
  std::ostringstream os;
  for (const auto& [name, g] : graphs) {
    const auto threshold = static_cast<Candies>(stabilization_threshold(g));
    for (Candies extra : {Candies{0}, Candies{5}}) {
      auto report = verify_theorem(g, threshold + extra, Sampled{42, 10'000}, harness_options(g));
      const bool ok = report.all_stabilized && report.runs == 10'000;
      v.pass &= ok;
      os << name << " c=" << threshold + extra << (ok ? " ok" : " FAIL") << "; ";
    }
  }
  v.detail = os.str();
  return v;
}

// 3. Cycles: threshold 3n.
Verdict cycle_threshold() {
  for (std::size_t n = 3; n <= 100; ++n) {
    if (stabilization_threshold(generate(GraphFamily::cycle(n))) != 3 * static_cast<std::int64_t>(n))
      return {false, "n=" + std::to_string(n)};
  }
  return {true, "n = 3..100"};
}

// 4. k-regular circulants: threshold (2k-1)n.
Verdict regular_threshold() {
  std::size_t checked = 0;
  for (std::size_t n = 6; n <= 12; ++n) {
    std::vector<std::pair<std::size_t, std::vector<std::size_t>>> cases{{2, {1}}, {4, {1, 2}}};
    // A 3-regular graph needs an even vertex count; offset n/2 adds one neighbor.
    if (n % 2 == 0) cases.push_back({3, {1, n / 2}});
    for (const auto& [k, offsets] : cases) {
      auto g = generate(GraphFamily::circulant(n, offsets));
      if (!g.is_regular() || g.degree(0) != k)
        return {false, "circulant(" + std::to_string(n) + ") is not " + std::to_string(k) + "-regular"};
      if (stabilization_threshold(g) != static_cast<std::int64_t>((2 * k - 1) * n))
        return {false, "n=" + std::to_string(n) + " k=" + std::to_string(k)};
      ++checked;
    }
  }
  return {true, std::to_string(checked) + " circulants, k in {2,3,4}, n in 6..12 (k=3 on even n)"};
}

Graph random_connected_graph(std::mt19937_64& rng, std::size_t max_n) {
  const std::size_t n = 2 + rng() % (max_n - 1);
  const std::size_t lo = n - 1, hi = n * (n - 1) / 2;
  return generate(GraphFamily::random_connected(n, lo + rng() % (hi - lo + 1), rng()));
}

// 5. Step-level bounds and full-trajectory abundant-vertex checks.
Verdict abundance_suite() {
  std::mt19937_64 rng(5);
  std::uint64_t steps = 0, step_violations = 0;
  while (steps < 100'000) {
    auto g = random_connected_graph(rng, 12);
    const std::size_t n = g.vertex_count();
    const Candies c = rng() % (4 * g.edge_count() + 3 * n);
    std::vector<Candies> x(n, 0);
    for (Candies k = 0; k < c; ++k) ++x[rng() % n];
    Configuration cur(x);
    for (int r = 0; r < 25; ++r, ++steps) {
      auto next = step(g, cur);
      bool ok = next.total() == cur.total();
      for (VertexId v = 0; v < n; ++v)
        if (cur[v] >= g.degree(v) && next[v] > cur[v]) ok = false;
      auto a0 = abundant_set(g, cur);
      auto a1 = abundant_set(g, next);
      ok &= std::includes(a0.begin(), a0.end(), a1.begin(), a1.end());
      ok &= abundant_total(g, next) <= abundant_total(g, cur);
      step_violations += !ok;
      cur = std::move(next);
    }
  }

  std::uint64_t trajectories = 0, trace_violations = 0, periodic = 0;
  while (trajectories < 1000) {
    auto g = random_connected_graph(rng, 10);
    const std::size_t n = g.vertex_count();
    // Spread c over both sides of the threshold.
    const Candies c = rng() % (2 * static_cast<Candies>(stabilization_threshold(g)) + 1);
    std::vector<Candies> x(n, 0);
    for (Candies k = 0; k < c; ++k) ++x[rng() % n];
    auto trace = abundance_monitor(g, Configuration(x));
    audit.observe(g, trace.run);
    trace_violations += trace.violations.size();
    periodic += !trace.run.stabilized();
    ++trajectories;
  }
  std::ostringstream os;
  os << steps << " steps (" << step_violations << " violations), " << trajectories
     << " trajectories (" << periodic << " with P>1, " << trace_violations << " violations)";
  return {step_violations == 0 && trace_violations == 0, os.str()};
}

// 6. At c = threshold every configuration has an abundant vertex or is 2deg-1 everywhere.
Verdict pigeonhole() {
  std::uint64_t checked = 0, failures = 0, equality_cases = 0;
  for (const auto& [name, g] : desk_graphs()) {
    const auto c = static_cast<Candies>(stabilization_threshold(g));
    for (const auto& parts : enumerate_distributions(g.vertex_count(), c)) {
      Configuration x(parts);
      ++checked;
      if (!pigeonhole_check(g, x)) ++failures;
      if (abundant_set(g, x).empty()) ++equality_cases;
    }
  }
  std::ostringstream os;
  os << checked << " configurations, " << equality_cases << " equality cases, " << failures
     << " violations";
  // Exactly one equality-case configuration exists per graph.
  return {failures == 0 && equality_cases == desk_graphs().size(), os.str()};
}

// 8. Golden trajectories, each first reproduced by the naive oracle.
Verdict golden() {
  std::ostringstream os;
  bool pass = true;
  auto expect = [&](bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      os << what << " mismatch; ";
    }
  };

  auto p3 = generate(GraphFamily::path(3));
  auto t = oracle::run(oracle::path(3), {2, 0, 0});
  expect(t.transient == 2 && t.period == 2 && t.states[2] == oracle::Counts{0, 2, 0} &&
             t.states[3] == oracle::Counts{1, 0, 1},
         "oracle P_3");
  auto r = simulate(p3, conf({2, 0, 0}));
  expect(r.transient_length == 2 && r.period_length == 2 &&
             r.periodic_window == std::vector<Configuration>{conf({0, 2, 0}), conf({1, 0, 1})},
         "P_3 (2,0,0)");

  auto c4 = generate(GraphFamily::cycle(4));
  t = oracle::run(oracle::cycle(4), {12, 0, 0, 0});
  expect(t.transient == 5 && t.period == 1 && t.states[5] == oracle::Counts{6, 2, 2, 2},
         "oracle C_4");
  r = simulate(c4, conf({12, 0, 0, 0}));
  expect(r.transient_length == 5 && r.period_length == 1 &&
             r.periodic_window.front() == conf({6, 2, 2, 2}),
         "C_4 (12,0,0,0)");

  auto c3 = generate(GraphFamily::cycle(3));
  t = oracle::run(oracle::cycle(3), {6, 0, 0});
  std::vector<Candies> oracle_totals;
  for (const auto& s : t.states) {
    Candies total = 0;
    for (auto x : s) total += x >= 4 ? x : 0;
    oracle_totals.push_back(total);
  }
  expect(oracle_totals == std::vector<Candies>{6, 4, 0}, "oracle C_3 totals");
  auto trace = abundance_monitor(c3, conf({6, 0, 0}));
  const std::vector<Candies> prefix(trace.abundant_totals.begin(),
                                    trace.abundant_totals.begin() + 3);
  expect(prefix == std::vector<Candies>{6, 4, 0} && trace.ok(), "C_3 (6,0,0) totals");

  if (pass) os << "P_3 (2,0,0) T=2 P=2; C_4 (12,0,0,0) T=5 -> (6,2,2,2); C_3 (6,0,0) totals 6,4,0";
  return {pass, os.str()};
}

// 9. simulate vs store-everything oracle.
Verdict oracle_equivalence() {
  std::mt19937_64 rng(9);
  std::uint64_t mismatches = 0, periodic = 0;
  for (int i = 0; i < 1000; ++i) {
    const std::size_t n = 1 + rng() % 6;
    auto edges = oracle::random_edges(n, 0.6, rng);
    auto g = Graph::from_edges(n, edges);
    std::vector<Candies> x(n, 0);
    const Candies c = rng() % 21;
    for (Candies k = 0; k < c; ++k) ++x[rng() % n];
    auto t = oracle::run(oracle::adjacency_of(g), x);
    auto run = simulate(g, Configuration(x));
    if (oracle::connected(n, edges)) audit.observe(g, run);
    mismatches += run.transient_length != t.transient || run.period_length != t.period;
    periodic += t.period > 1;
  }
  std::ostringstream os;
  os << "1000 instances (" << periodic << " with P>1), " << mismatches << " mismatches";
  return {mismatches == 0, os.str()};
}

// 10. Observations on cycles; only c >= 3n is binding.
Verdict empirical_probes() {
  std::ostringstream os;
  bool pass = true;
  for (std::size_t n = 3; n <= 6; ++n) {
    auto g = generate(GraphFamily::cycle(n));
    auto rows = minimal_universal_stabilization(g, 0, 3 * n, harness_options(g));
    const auto& at = rows[3 * n - 2];
    bool below_n_terminates = true;
    for (std::size_t c = 0; c < n; ++c) below_n_terminates &= rows[c].all_terminate;
    Candies smallest_universal = 3 * n;
    for (std::size_t c = 3 * n + 1; c-- > 0;) {
      if (!rows[c].all_stabilize) break;
      smallest_universal = c;
    }
    for (std::size_t c = 3 * n; c < rows.size(); ++c) pass &= rows[c].all_stabilize;
    os << "C_" << n << ": c=3n-2 " << (at.all_stabilize ? "all stabilize" : "NOT all stabilize")
       << ", c<n " << (below_n_terminates ? "all terminate" : "NOT all terminate")
       << ", all stabilize for c in " << smallest_universal << ".." << 3 * n << "; ";
  }
  return {pass, os.str()};
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* title;
    std::function<Verdict()> run;
  };
  const std::vector<Criterion> criteria{
      {1, "theorem, exhaustive at threshold", exhaustive_theorem},
      {2, "theorem, sampled at threshold and threshold+5", sampled_theorem},
      {3, "cycle threshold is 3n", cycle_threshold},
      {4, "k-regular threshold is (2k-1)n", regular_threshold},
      {5, "abundant-vertex monotonicity suite", abundance_suite},
      {6, "pigeonhole dichotomy at threshold", pigeonhole},
      {8, "golden trajectories", golden},
      {9, "oracle equivalence of (T,P)", oracle_equivalence},
      {10, "empirical probes on cycles (binding only for c >= 3n)", empirical_probes},
      // Runs last: it audits fixed points gathered by the suites above.
      {7, "fixed-point dichotomy", [] { return audit.verdict(); }},
  };

  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = c.run();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                        std::chrono::steady_clock::now() - start)
                        .count();
    std::cout << (v.pass ? "[PASS] " : "[FAIL] ") << "criterion " << c.id << ": " << c.title
              << " -- " << v.detail << " (" << ms << " ms)" << std::endl;
    failed += !v.pass;
  }
  std::cout << (failed ? "acceptance FAILED: " : "acceptance passed: ") << criteria.size() - failed
            << "/" << criteria.size() << " criteria" << std::endl;
  return failed ? 1 : 0;
}
