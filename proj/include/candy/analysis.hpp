#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "candy/engine.hpp"
#include "candy/graph.hpp"
#include "candy/rng.hpp"

namespace candy {

/// Vertices holding at least 2 deg(v) candies, ascending.
std::vector<VertexId> abundant_set(const Graph& g, const Configuration& conf);

/// Candy held by abundant vertices.
Candies abundant_total(const Graph& g, const Configuration& conf);

// ---------------------------------------------------------------------------
// Abundant-vertex monitor

enum class AbundanceRule {
  set_grew,               // a vertex became abundant
  total_increased,        // abundant total went up
  loss_without_decrease,  // an abundant vertex lost candy but the total did not drop
  window_set_varies,      // abundant set differs inside the periodic window
  window_count_varies,    // an abundant vertex's count differs inside the window
};

std::string_view to_string(AbundanceRule rule) noexcept;

struct AbundanceViolation {
  std::uint64_t round;  // the later round of the offending transition
  AbundanceRule rule;

  friend bool operator==(const AbundanceViolation&, const AbundanceViolation&) = default;
};

/// Abundant sets and totals for rounds 0..T+P of one trajectory.
struct AbundanceTrace {
  std::vector<std::vector<VertexId>> abundant_sets;
  std::vector<Candies> abundant_totals;
  std::vector<AbundanceViolation> violations;
  RunResult run;

  bool ok() const noexcept { return violations.empty(); }
};

AbundanceTrace abundance_monitor(const Graph& g, const Configuration& initial,
                           SimulateOptions options = {});

// ---------------------------------------------------------------------------
// Compositions

/// C(c+n-1, n-1), saturating at UINT64_MAX.
std::uint64_t composition_count(std::size_t n, Candies c) noexcept;

/// Every composition of c into n non-negative parts, lexicographically
/// ascending: (0,..,0,c) first, (c,0,..,0) last.
class Compositions {
 public:
  class iterator {
   public:
    using value_type = std::vector<Candies>;
    using difference_type = std::ptrdiff_t;

    iterator() = default;
    const std::vector<Candies>& operator*() const noexcept { return parts_; }
    const std::vector<Candies>* operator->() const noexcept { return &parts_; }
    iterator& operator++();
    iterator operator++(int) {
      auto copy = *this;
      ++*this;
      return copy;
    }
    friend bool operator==(const iterator& a, const iterator& b) noexcept {
      return a.done_ == b.done_ && (a.done_ || a.parts_ == b.parts_);
    }

   private:
    friend class Compositions;
    std::vector<Candies> parts_;
    bool done_ = true;
  };

  Compositions(std::size_t n, Candies c);

  iterator begin() const;
  iterator end() const { return {}; }
  std::uint64_t size() const noexcept { return composition_count(n_, c_); }

 private:
  std::size_t n_;
  Candies c_;
};

inline Compositions enumerate_distributions(std::size_t n, Candies c) { return {n, c}; }

/// Balls-in-boxes draw: each of the c candies lands on a uniform vertex.
Configuration random_distribution(std::size_t n, Candies c, Rng& rng);

/// True iff conf has an abundant vertex or holds exactly 2 deg(v) - 1 at
/// every vertex. Throws PreconditionError when the total is below the
/// stabilization threshold.
bool pigeonhole_check(const Graph& g, const Configuration& conf);

// ---------------------------------------------------------------------------
// Verification harness

struct Exhaustive {
  friend bool operator==(const Exhaustive&, const Exhaustive&) = default;
};
struct Sampled {
  std::uint64_t seed = 0;
  std::uint64_t count = 0;
  friend bool operator==(const Sampled&, const Sampled&) = default;
};
using VerifyMode = std::variant<Exhaustive, Sampled>;

struct VerifyOptions {
  SimulateOptions simulate;
  /// Worker threads; 0 picks the hardware concurrency.
  unsigned threads = 1;
  /// Largest allowed composition count in exhaustive mode.
  std::uint64_t exhaustive_cap = 1'000'000;
  /// Keep one RunRecord per distribution (for per-run CSV).
  bool record_runs = false;
  /// Label stored in the report's graph summary, e.g. a family spec.
  std::string graph_label;
  /// Called for every completed run, possibly from several threads at once.
  std::function<void(const RunResult&)> on_run;
};

struct GraphSummary {
  std::string label;
  std::size_t vertices = 0;
  std::size_t edges = 0;
  std::int64_t threshold = 0;
};

/// One run that did not reach a fixed point. `run` is empty when the round
/// budget ran out before a repeat was seen.
struct Counterexample {
  Configuration initial;
  std::optional<RunResult> run;
};

struct RunRecord {
  Configuration initial;
  std::optional<std::uint64_t> transient;
  std::optional<std::uint64_t> period;
};

struct VerificationReport {
  GraphSummary graph;
  Candies candies = 0;
  VerifyMode mode;
  std::uint64_t runs = 0;
  bool all_stabilized = true;
  /// Sorted by initial configuration, duplicates removed.
  std::vector<Counterexample> counterexamples;
  std::uint64_t max_transient = 0;
  std::uint64_t budget_exceeded = 0;
  std::vector<RunRecord> records;
};

/// Simulates every (exhaustive) or seeded-random (sampled) distribution of
/// c candies and reports those that do not reach period 1. The result is
/// independent of the thread count. Throws DisconnectedGraphError and, in
/// exhaustive mode, CapExceeded.
VerificationReport verify_theorem(const Graph& g, Candies c, const VerifyMode& mode,
                                  const VerifyOptions& options = {});

/// One row per candy count of a sweep.
struct ThresholdRow {
  Candies candies = 0;
  std::uint64_t runs = 0;
  bool all_stabilize = true;
  /// Every run ends in a fixed point where nobody fires.
  bool all_terminate = true;
  /// Lexicographically first distribution that does not stabilize.
  std::optional<Configuration> witness;
  std::uint64_t max_transient = 0;
  std::uint64_t budget_exceeded = 0;
  bool at_or_above_threshold = false;
};

/// Exhaustively checks every c in [c_min, c_max]. The whole range is checked
/// against the cap before any run starts.
std::vector<ThresholdRow> minimal_universal_stabilization(const Graph& g, Candies c_min,
                                                          Candies c_max,
                                                          const VerifyOptions& options = {});

}  // namespace candy
