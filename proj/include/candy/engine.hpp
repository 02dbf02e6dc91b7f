#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "candy/graph.hpp"
#include "candy/kernels.hpp"

namespace candy {

/// Candy counts per vertex at one instant, with the cached total c.
/// Ordering is lexicographic on the counts.
class Configuration {
 public:
  Configuration() = default;
  /// Throws PreconditionError if the total overflows 64 bits.
  explicit Configuration(std::vector<Candies> counts);

  /// Comma- and/or whitespace-separated non-negative integers ("3,0,0").
  static Configuration parse(std::string_view text);

  std::span<const Candies> counts() const noexcept { return counts_; }
  Candies operator[](VertexId v) const noexcept { return counts_[v]; }
  std::size_t size() const noexcept { return counts_.size(); }
  Candies total() const noexcept { return total_; }

  /// "3,0,0"
  std::string to_string() const;

  friend bool operator==(const Configuration& a, const Configuration& b) noexcept {
    return a.counts_ == b.counts_;
  }
  friend std::strong_ordering operator<=>(const Configuration& a,
                                          const Configuration& b) noexcept {
    return a.counts_ <=> b.counts_;
  }

 private:
  std::vector<Candies> counts_;
  Candies total_ = 0;
};

/// Applies rounds to raw count buffers for one graph, reusing scratch space.
/// Not thread-safe; use one per thread.
class RoundRunner {
 public:
  explicit RoundRunner(const Graph& g,
                       const kernels::KernelTable& table = kernels::active_kernels());

  /// One synchronous round. `out` must not alias `in`; both hold vertex_count entries.
  void advance(std::span<const Candies> in, std::span<Candies> out);

  /// Firing indicators (0/1) of the most recent advance().
  std::span<const std::uint64_t> firing_mask() const noexcept { return mask_; }

  const Graph& graph() const noexcept { return *graph_; }

 private:
  const Graph* graph_;
  const kernels::KernelTable* table_;
  std::vector<std::uint64_t> mask_;
  std::vector<std::uint64_t> incoming_;
};

/// Vertices holding at least deg(v) candies, ascending.
std::vector<VertexId> firing_set(const Graph& g, const Configuration& conf);

Configuration step(const Graph& g, const Configuration& conf);

bool is_fixed_point(const Graph& g, const Configuration& conf);

/// Summary of one trajectory: rounds 0..transient_length-1 are the transient,
/// rounds transient_length.. repeat with period period_length.
struct RunResult {
  Configuration initial;
  std::uint64_t transient_length = 0;
  std::uint64_t period_length = 1;
  /// Configurations at rounds T..T+P-1.
  std::vector<Configuration> periodic_window;
  /// Rounds needed to observe the first repeat, T+P.
  std::uint64_t rounds_executed = 0;
  /// Round from which v's count never changes; empty when v keeps changing.
  std::vector<std::optional<std::uint64_t>> per_vertex_stabilization;

  bool stabilized() const noexcept { return period_length == 1; }

  friend bool operator==(const RunResult&, const RunResult&) = default;
};

struct SimulateOptions {
  std::uint64_t max_rounds = 10'000'000;
  /// Configurations kept by the hash-set detector before switching to the
  /// constant-memory scheme.
  std::size_t memory_cap_states = 1'000'000;
};

/// Runs until the first repeated configuration and reports the minimal
/// transient and period. Throws BudgetExceeded when T+P > max_rounds.
RunResult simulate(const Graph& g, const Configuration& initial, SimulateOptions options = {});

/// Throws DimensionMismatch unless conf has one entry per vertex.
void check_dimensions(const Graph& g, const Configuration& conf);

}  // namespace candy
