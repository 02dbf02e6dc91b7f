#include "candy/analysis.hpp"

#include <algorithm>
#include <atomic>
#include <numeric>
#include <thread>

#include "candy/error.hpp"

namespace candy {

std::vector<VertexId> abundant_set(const Graph& g, const Configuration& conf) {
  check_dimensions(g, conf);
  std::vector<VertexId> out;
  for (VertexId v = 0; v < g.vertex_count(); ++v)
    if (conf[v] >= 2 * g.degree(v)) out.push_back(v);
  return out;
}

Candies abundant_total(const Graph& g, const Configuration& conf) {
  Candies total = 0;
  for (auto v : abundant_set(g, conf)) total += conf[v];
  return total;
}

std::string_view to_string(AbundanceRule rule) noexcept {
  switch (rule) {
    case AbundanceRule::set_grew: return "abundant_set_grew";
    case AbundanceRule::total_increased: return "abundant_total_increased";
    case AbundanceRule::loss_without_decrease: return "loss_without_total_decrease";
    case AbundanceRule::window_set_varies: return "abundant_set_varies_in_window";
    case AbundanceRule::window_count_varies: return "abundant_count_varies_in_window";
  }
  return "?";
}

AbundanceTrace abundance_monitor(const Graph& g, const Configuration& initial, SimulateOptions options) {
  AbundanceTrace trace;
  trace.run = simulate(g, initial, options);
  const auto last = trace.run.transient_length + trace.run.period_length;

  RoundRunner runner(g);
  const std::size_t n = g.vertex_count();
  std::vector<Candies> cur(initial.counts().begin(), initial.counts().end());
  std::vector<Candies> next(n);
  auto record = [&](std::span<const Candies> counts) {
    std::vector<VertexId> set;
    Candies total = 0;
    for (VertexId v = 0; v < n; ++v) {
      if (counts[v] >= g.double_degrees()[v]) {
        set.push_back(v);
        total += counts[v];
      }
    }
    trace.abundant_sets.push_back(std::move(set));
    trace.abundant_totals.push_back(total);
  };

  record(cur);
  for (std::uint64_t r = 1; r <= last; ++r) {
    runner.advance(cur, next);
    record(next);
    const auto& before = trace.abundant_sets[r - 1];
    const auto& after = trace.abundant_sets[r];
    if (!std::includes(before.begin(), before.end(), after.begin(), after.end()))
      trace.violations.push_back({r, AbundanceRule::set_grew});
    if (trace.abundant_totals[r] > trace.abundant_totals[r - 1])
      trace.violations.push_back({r, AbundanceRule::total_increased});
    const bool lost = std::any_of(before.begin(), before.end(),
                                  [&](VertexId v) { return next[v] < cur[v]; });
    if (lost && !(trace.abundant_totals[r] < trace.abundant_totals[r - 1]))
      trace.violations.push_back({r, AbundanceRule::loss_without_decrease});
    cur.swap(next);
  }

  const auto& window = trace.run.periodic_window;
  const auto t = trace.run.transient_length;
  for (std::size_t k = 1; k < window.size(); ++k) {
    if (trace.abundant_sets[t + k] != trace.abundant_sets[t])
      trace.violations.push_back({t + k, AbundanceRule::window_set_varies});
    for (auto v : trace.abundant_sets[t]) {
      if (window[k][v] != window[0][v]) {
        trace.violations.push_back({t + k, AbundanceRule::window_count_varies});
        break;
      }
    }
  }
  return trace;
}

// ---------------------------------------------------------------------------
// Compositions

std::uint64_t composition_count(std::size_t n, Candies c) noexcept {
  constexpr auto kSaturated = ~std::uint64_t{0};
  if (n == 0) return c == 0 ? 1 : 0;
  // C(c+k, k) = prod_{i=1..k} (c+i)/i; every prefix product is an integer.
  // Dividing out gcd(result, i) first leaves i/g dividing c+i exactly.
  std::uint64_t result = 1;
  for (std::uint64_t i = 1; i < n; ++i) {
    const std::uint64_t g = std::gcd(result, i);
    std::uint64_t factor = 0;
    if (__builtin_add_overflow(c, i, &factor)) return kSaturated;
    factor /= i / g;
    if (__builtin_mul_overflow(result / g, factor, &result)) return kSaturated;
  }
  return result;
}

Compositions::Compositions(std::size_t n, Candies c) : n_(n), c_(c) {
  if (n == 0) throw PreconditionError("compositions need at least one part");
}

Compositions::iterator Compositions::begin() const {
  iterator it;
  it.parts_.assign(n_, 0);
  it.parts_.back() = c_;
  it.done_ = false;
  return it;
}

Compositions::iterator& Compositions::iterator::operator++() {
  // Successor: bump the entry before the last nonzero one and move the
  // remainder of that nonzero entry to the end.
  std::size_t j = parts_.size() - 1;
  while (j > 0 && parts_[j] == 0) --j;
  if (j == 0) {
    done_ = true;
    parts_.clear();
    return *this;
  }
  const Candies rest = parts_[j] - 1;
  ++parts_[j - 1];
  parts_[j] = 0;
  parts_.back() = rest;
  return *this;
}

Configuration random_distribution(std::size_t n, Candies c, Rng& rng) {
  std::vector<Candies> counts(n, 0);
  for (Candies i = 0; i < c; ++i) ++counts[uniform_below(rng, n)];
  return Configuration(std::move(counts));
}

bool pigeonhole_check(const Graph& g, const Configuration& conf) {
  check_dimensions(g, conf);
  const auto threshold = stabilization_threshold(g);
  if (threshold > 0 && conf.total() < static_cast<Candies>(threshold))
    throw PreconditionError("configuration holds " + std::to_string(conf.total()) +
                            " candies, below the threshold " + std::to_string(threshold));
  bool equality_case = true;
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    if (conf[v] >= 2 * g.degree(v)) return true;
    if (conf[v] + 1 != 2 * g.degree(v)) equality_case = false;
  }
  return equality_case;
}

// ---------------------------------------------------------------------------
// Harness

namespace {

constexpr std::size_t kBatch = 4096;

struct Outcome {
  std::optional<RunResult> run;  // empty: budget exceeded
};

unsigned resolve_threads(unsigned requested) {
  if (requested != 0) return requested;
  return std::max(1u, std::thread::hardware_concurrency());
}

void run_batch(const Graph& g, std::span<const Configuration> initials,
               std::span<Outcome> outcomes, const VerifyOptions& options) {
  auto work = [&](std::size_t i) {
    try {
      outcomes[i].run = simulate(g, initials[i], options.simulate);
      if (options.on_run) options.on_run(*outcomes[i].run);
    } catch (const BudgetExceeded&) {
      outcomes[i].run.reset();
    }
  };
  const unsigned threads =
      std::min<std::size_t>(resolve_threads(options.threads), initials.size());
  if (threads <= 1) {
    for (std::size_t i = 0; i < initials.size(); ++i) work(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> pool;
  pool.reserve(threads);
  for (unsigned t = 0; t < threads; ++t)
    pool.emplace_back([&] {
      for (std::size_t i; (i = next.fetch_add(1)) < initials.size();) work(i);
    });
}

struct Tally {
  VerificationReport report;
  bool all_terminate = true;
};

// Feeds distributions from `produce` through the worker pool in batches and
// folds outcomes in production order.
template <class Produce>
void run_all(const Graph& g, const VerifyOptions& options, Tally& tally, Produce&& produce) {
  std::vector<Configuration> batch;
  std::vector<Outcome> outcomes;
  auto flush = [&] {
    outcomes.assign(batch.size(), Outcome{});
    run_batch(g, batch, outcomes, options);
    auto& report = tally.report;
    for (std::size_t i = 0; i < batch.size(); ++i) {
      auto& out = outcomes[i];
      ++report.runs;
      if (options.record_runs) {
        RunRecord rec{batch[i], std::nullopt, std::nullopt};
        if (out.run) {
          rec.transient = out.run->transient_length;
          rec.period = out.run->period_length;
        }
        report.records.push_back(std::move(rec));
      }
      if (!out.run) {
        ++report.budget_exceeded;
        tally.all_terminate = false;
        report.counterexamples.push_back({batch[i], std::nullopt});
        continue;
      }
      report.max_transient = std::max(report.max_transient, out.run->transient_length);
      if (out.run->stabilized()) {
        const auto& fixed = out.run->periodic_window.front();
        for (VertexId v = 0; v < g.vertex_count() && tally.all_terminate; ++v)
          if (fixed[v] >= g.degree(v)) tally.all_terminate = false;
      } else {
        tally.all_terminate = false;
        report.counterexamples.push_back({batch[i], std::move(out.run)});
      }
    }
    batch.clear();
  };
  produce([&](Configuration conf) {
    batch.push_back(std::move(conf));
    if (batch.size() == kBatch) flush();
  });
  if (!batch.empty()) flush();
}

void finalize(VerificationReport& report) {
  auto& ce = report.counterexamples;
  std::stable_sort(ce.begin(), ce.end(),
                   [](const auto& a, const auto& b) { return a.initial < b.initial; });
  ce.erase(std::unique(ce.begin(), ce.end(),
                       [](const auto& a, const auto& b) { return a.initial == b.initial; }),
           ce.end());
  report.all_stabilized = ce.empty();
}

Tally verify_impl(const Graph& g, Candies c, const VerifyMode& mode, const VerifyOptions& options) {
  if (!is_connected(g)) throw DisconnectedGraphError();
  Tally tally;
  auto& report = tally.report;
  report.graph = {options.graph_label, g.vertex_count(), g.edge_count(),
                  stabilization_threshold(g)};
  report.candies = c;
  report.mode = mode;

  const std::size_t n = g.vertex_count();
  if (std::holds_alternative<Exhaustive>(mode)) {
    if (composition_count(n, c) > options.exhaustive_cap)
      throw CapExceeded(c, options.exhaustive_cap);
    run_all(g, options, tally, [&](auto&& emit) {
      for (const auto& parts : enumerate_distributions(n, c)) emit(Configuration(parts));
    });
  } else {
    const auto& sampled = std::get<Sampled>(mode);
    Rng rng(sampled.seed);
    run_all(g, options, tally, [&](auto&& emit) {
      for (std::uint64_t i = 0; i < sampled.count; ++i) emit(random_distribution(n, c, rng));
    });
  }
  finalize(report);
  return tally;
}

}  // namespace

VerificationReport verify_theorem(const Graph& g, Candies c, const VerifyMode& mode,
                                  const VerifyOptions& options) {
  return verify_impl(g, c, mode, options).report;
}

std::vector<ThresholdRow> minimal_universal_stabilization(const Graph& g, Candies c_min,
                                                          Candies c_max,
                                                          const VerifyOptions& options) {
  if (c_min > c_max) throw PreconditionError("empty candy range");
  if (!is_connected(g)) throw DisconnectedGraphError();
  for (Candies c = c_min;; ++c) {
    if (composition_count(g.vertex_count(), c) > options.exhaustive_cap)
      throw CapExceeded(c, options.exhaustive_cap);
    if (c == c_max) break;
  }

  const auto threshold = stabilization_threshold(g);
  std::vector<ThresholdRow> rows;
  for (Candies c = c_min;; ++c) {
    auto tally = verify_impl(g, c, Exhaustive{}, options);
    const auto& report = tally.report;
    ThresholdRow row;
    row.candies = c;
    row.runs = report.runs;
    row.all_stabilize = report.all_stabilized;
    row.all_terminate = tally.all_terminate;
    for (const auto& ce : report.counterexamples) {
      if (ce.run) {
        row.witness = ce.initial;
        break;
      }
    }
    row.max_transient = report.max_transient;
    row.budget_exceeded = report.budget_exceeded;
    row.at_or_above_threshold = threshold <= 0 || c >= static_cast<Candies>(threshold);
    rows.push_back(std::move(row));
    if (c == c_max) break;
  }
  return rows;
}

}  // namespace candy
