#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace candy {

using VertexId = std::uint32_t;
using Candies = std::uint64_t;

/// Undirected simple graph in compressed-sparse-row form. Immutable once
/// built; every constructor path validates symmetry, absence of self-loops
/// and of duplicate neighbors.
class Graph {
 public:
  /// Builds from an undirected edge list on vertices 0..vertex_count-1.
  /// Duplicate edges (in either orientation) collapse; self-loops throw.
  static Graph from_edges(std::size_t vertex_count,
                          std::span<const std::pair<VertexId, VertexId>> edges);

  std::size_t vertex_count() const noexcept { return degrees_.size(); }
  std::size_t edge_count() const noexcept { return neighbors_.size() / 2; }

  std::span<const VertexId> neighbors(VertexId v) const noexcept {
    return {neighbors_.data() + offsets_[v], neighbors_.data() + offsets_[v + 1]};
  }
  Candies degree(VertexId v) const noexcept { return degrees_[v]; }

  // Raw CSR views consumed by the round kernels.
  std::span<const std::uint32_t> offsets() const noexcept { return offsets_; }
  std::span<const VertexId> adjacency() const noexcept { return neighbors_; }
  std::span<const Candies> degrees() const noexcept { return degrees_; }
  /// 2*deg(v) per vertex; the abundance thresholds.
  std::span<const Candies> double_degrees() const noexcept { return double_degrees_; }

  /// Edges as (u, v) with u < v, sorted.
  std::vector<std::pair<VertexId, VertexId>> edges() const;

  bool is_regular() const noexcept;

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  Graph() = default;

  std::vector<std::uint32_t> offsets_;
  std::vector<VertexId> neighbors_;
  std::vector<Candies> degrees_;
  std::vector<Candies> double_degrees_;
};

enum class Family { cycle, path, complete, star, circulant, random_connected };

/// A named graph family with its parameters.
struct GraphFamily {
  Family family = Family::cycle;
  std::size_t n = 0;
  std::vector<std::size_t> offsets;  // circulant only
  std::size_t m = 0;                 // random_connected only
  std::uint64_t seed = 0;            // random_connected only

  static GraphFamily cycle(std::size_t n) { return {Family::cycle, n, {}, 0, 0}; }
  static GraphFamily path(std::size_t n) { return {Family::path, n, {}, 0, 0}; }
  static GraphFamily complete(std::size_t n) { return {Family::complete, n, {}, 0, 0}; }
  /// One center (vertex 0) plus n-1 leaves.
  static GraphFamily star(std::size_t n) { return {Family::star, n, {}, 0, 0}; }
  static GraphFamily circulant(std::size_t n, std::vector<std::size_t> offsets) {
    return {Family::circulant, n, std::move(offsets), 0, 0};
  }
  static GraphFamily random_connected(std::size_t n, std::size_t m, std::uint64_t seed) {
    return {Family::random_connected, n, {}, m, seed};
  }

  /// Canonical one-token form, e.g. "circulant:8:1,2" or "random:10:15:seed42".
  std::string to_spec() const;

  friend bool operator==(const GraphFamily&, const GraphFamily&) = default;
};

/// Parses `name:params` (cycle:5, path:3, complete:4, star:4,
/// circulant:8:1,2, random:10:15:seed42). Throws ParseError.
GraphFamily parse_family(std::string_view spec);

/// Throws InvalidGraphError when the family parameters are out of range.
Graph generate(const GraphFamily& family);

struct EdgeListOptions {
  /// Relabel arbitrary non-negative ids by order of first appearance.
  /// Without it the ids must already be exactly 0..max.
  bool normalize = false;
};

/// Parses the edge-list text format: one "u v" pair per line, blank lines
/// and '#' lines ignored.
Graph from_edge_list(std::string_view text, EdgeListOptions options = {});

/// Inverse of from_edge_list for dense graphs; one "u v" line per edge.
std::string to_edge_list(const Graph& g);

/// Breadth-first reachability from vertex 0.
bool is_connected(const Graph& g);

/// 4|E| - |V|, which equals the sum of (2 deg(v) - 1). Can be negative only
/// for graphs with isolated vertices (a single vertex gives -1).
std::int64_t stabilization_threshold(const Graph& g) noexcept;

}  // namespace candy
