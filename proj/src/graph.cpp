#include "candy/graph.hpp"

#include <algorithm>
#include <charconv>
#include <limits>
#include <numeric>
#include <queue>
#include <unordered_map>

#include "candy/error.hpp"
#include "candy/rng.hpp"

namespace candy {

Graph Graph::from_edges(std::size_t vertex_count,
                        std::span<const std::pair<VertexId, VertexId>> edges) {
  if (vertex_count == 0) throw InvalidGraphError("graph has no vertices");
  if (vertex_count > std::numeric_limits<std::int32_t>::max())
    throw InvalidGraphError("too many vertices");

  std::vector<std::pair<VertexId, VertexId>> arcs;
  arcs.reserve(edges.size() * 2);
  for (auto [u, v] : edges) {
    if (u >= vertex_count || v >= vertex_count)
      throw InvalidGraphError("edge (" + std::to_string(u) + ", " + std::to_string(v) +
                              ") references a vertex outside 0.." +
                              std::to_string(vertex_count - 1));
    if (u == v) throw InvalidGraphError("self-loop at vertex " + std::to_string(u));
    arcs.emplace_back(u, v);
    arcs.emplace_back(v, u);
  }
  std::sort(arcs.begin(), arcs.end());
  arcs.erase(std::unique(arcs.begin(), arcs.end()), arcs.end());

  Graph g;
  g.offsets_.assign(vertex_count + 1, 0);
  g.neighbors_.reserve(arcs.size());
  for (auto [u, v] : arcs) {
    ++g.offsets_[u + 1];
    g.neighbors_.push_back(v);
  }
  std::partial_sum(g.offsets_.begin(), g.offsets_.end(), g.offsets_.begin());
  g.degrees_.resize(vertex_count);
  g.double_degrees_.resize(vertex_count);
  for (std::size_t v = 0; v < vertex_count; ++v) {
    g.degrees_[v] = g.offsets_[v + 1] - g.offsets_[v];
    g.double_degrees_[v] = 2 * g.degrees_[v];
  }
  return g;
}

std::vector<std::pair<VertexId, VertexId>> Graph::edges() const {
  std::vector<std::pair<VertexId, VertexId>> out;
  out.reserve(edge_count());
  for (VertexId u = 0; u < vertex_count(); ++u)
    for (VertexId v : neighbors(u))
      if (u < v) out.emplace_back(u, v);
  return out;
}

bool Graph::is_regular() const noexcept {
  return std::adjacent_find(degrees_.begin(), degrees_.end(), std::not_equal_to<>{}) ==
         degrees_.end();
}

// ---------------------------------------------------------------------------
// Families

namespace {

constexpr std::string_view family_name(Family f) {
  switch (f) {
    case Family::cycle: return "cycle";
    case Family::path: return "path";
    case Family::complete: return "complete";
    case Family::star: return "star";
    case Family::circulant: return "circulant";
    case Family::random_connected: return "random";
  }
  return "?";
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    auto pos = s.find(sep, start);
    parts.push_back(s.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

std::uint64_t parse_uint(std::string_view token, std::string_view what) {
  std::uint64_t value = 0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (token.empty() || ec != std::errc{} || ptr != token.data() + token.size())
    throw ParseError("invalid " + std::string(what) + " '" + std::string(token) + "'");
  return value;
}

void require(bool ok, const std::string& message) {
  if (!ok) throw InvalidGraphError(message);
}

using EdgeVec = std::vector<std::pair<VertexId, VertexId>>;

// Wilson's algorithm on K_n: loop-erased random walks yield a uniformly
// random spanning tree.
EdgeVec uniform_spanning_tree(std::size_t n, Rng& rng) {
  EdgeVec tree;
  std::vector<bool> in_tree(n, false);
  std::vector<VertexId> next(n, 0);
  in_tree[uniform_below(rng, n)] = true;
  for (VertexId start = 0; start < n; ++start) {
    VertexId u = start;
    while (!in_tree[u]) {
      // Uniform neighbor of u in K_n.
      auto w = static_cast<VertexId>(uniform_below(rng, n - 1));
      if (w >= u) ++w;
      next[u] = w;
      u = w;
    }
    for (u = start; !in_tree[u]; u = next[u]) {
      in_tree[u] = true;
      tree.emplace_back(std::min(u, next[u]), std::max(u, next[u]));
    }
  }
  return tree;
}

Graph make_random_connected(std::size_t n, std::size_t m, std::uint64_t seed) {
  Rng rng(seed);
  EdgeVec edges = uniform_spanning_tree(n, rng);
  std::sort(edges.begin(), edges.end());

  EdgeVec candidates;
  for (VertexId u = 0; u < n; ++u)
    for (VertexId v = u + 1; v < n; ++v)
      if (!std::binary_search(edges.begin(), edges.end(), std::pair{u, v}))
        candidates.emplace_back(u, v);
  // Partial Fisher-Yates: the first k candidates become a uniform k-subset.
  const std::size_t extra = m - (n - 1);
  for (std::size_t i = 0; i < extra; ++i) {
    auto j = i + uniform_below(rng, candidates.size() - i);
    std::swap(candidates[i], candidates[j]);
    edges.push_back(candidates[i]);
  }
  return Graph::from_edges(n, edges);
}

}  // namespace

std::string GraphFamily::to_spec() const {
  std::string out(family_name(family));
  out += ':' + std::to_string(n);
  if (family == Family::circulant) {
    out += ':';
    for (std::size_t i = 0; i < offsets.size(); ++i)
      out += (i ? "," : "") + std::to_string(offsets[i]);
  } else if (family == Family::random_connected) {
    out += ':' + std::to_string(m) + ":seed" + std::to_string(seed);
  }
  return out;
}

GraphFamily parse_family(std::string_view spec) {
  auto parts = split(spec, ':');
  const auto name = parts[0];
  auto arity = [&](std::size_t expected) {
    if (parts.size() != expected)
      throw ParseError("family '" + std::string(spec) + "': expected " +
                       std::to_string(expected - 1) + " parameter(s)");
  };

  if (name == "cycle" || name == "path" || name == "complete" || name == "star") {
    arity(2);
    auto n = parse_uint(parts[1], "vertex count");
    if (name == "cycle") return GraphFamily::cycle(n);
    if (name == "path") return GraphFamily::path(n);
    if (name == "complete") return GraphFamily::complete(n);
    return GraphFamily::star(n);
  }
  if (name == "circulant") {
    arity(3);
    std::vector<std::size_t> offsets;
    for (auto tok : split(parts[2], ',')) offsets.push_back(parse_uint(tok, "offset"));
    return GraphFamily::circulant(parse_uint(parts[1], "vertex count"), std::move(offsets));
  }
  if (name == "random" || name == "random_connected") {
    arity(4);
    auto seed_tok = parts[3];
    if (seed_tok.starts_with("seed")) seed_tok.remove_prefix(4);
    return GraphFamily::random_connected(parse_uint(parts[1], "vertex count"),
                                         parse_uint(parts[2], "edge count"),
                                         parse_uint(seed_tok, "seed"));
  }
  throw ParseError("unknown graph family '" + std::string(name) + "'");
}

Graph generate(const GraphFamily& fam) {
  const std::size_t n = fam.n;
  EdgeVec edges;
  switch (fam.family) {
    case Family::cycle:
      require(n >= 3, "cycle requires n >= 3");
      for (VertexId v = 0; v < n; ++v) edges.emplace_back(v, (v + 1) % n);
      break;
    case Family::path:
      require(n >= 2, "path requires n >= 2");
      for (VertexId v = 0; v + 1 < n; ++v) edges.emplace_back(v, v + 1);
      break;
    case Family::complete:
      require(n >= 2, "complete requires n >= 2");
      for (VertexId u = 0; u < n; ++u)
        for (VertexId v = u + 1; v < n; ++v) edges.emplace_back(u, v);
      break;
    case Family::star:
      require(n >= 2, "star requires n >= 2");
      for (VertexId v = 1; v < n; ++v) edges.emplace_back(0, v);
      break;
    case Family::circulant: {
      require(n >= 2, "circulant requires n >= 2");
      require(!fam.offsets.empty(), "circulant requires at least one offset");
      auto sorted = fam.offsets;
      std::sort(sorted.begin(), sorted.end());
      require(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end(),
              "circulant offsets must be distinct");
      for (auto k : sorted) {
        require(k >= 1 && k <= n / 2, "circulant offset " + std::to_string(k) +
                                          " outside 1.." + std::to_string(n / 2));
        for (VertexId v = 0; v < n; ++v) edges.emplace_back(v, (v + k) % n);
      }
      break;
    }
    case Family::random_connected:
      require(n >= 1, "random_connected requires n >= 1");
      require(n - 1 <= fam.m && fam.m <= n * (n - 1) / 2,
              "random_connected requires n-1 <= m <= n(n-1)/2");
      return make_random_connected(n, fam.m, fam.seed);
  }
  return Graph::from_edges(n, edges);
}

// ---------------------------------------------------------------------------
// Edge-list text

Graph from_edge_list(std::string_view text, EdgeListOptions options) {
  std::vector<std::pair<std::uint64_t, std::uint64_t>> raw;
  std::size_t line_no = 0;
  for (auto line : split(text, '\n')) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    auto first = line.find_first_not_of(" \t");
    if (first == std::string_view::npos || line[first] == '#') continue;

    std::uint64_t ids[2];
    std::size_t pos = first;
    for (auto& id : ids) {
      pos = line.find_first_not_of(" \t", pos);
      if (pos == std::string_view::npos)
        throw ParseError(line_no, "expected two vertex ids");
      auto [ptr, ec] = std::from_chars(line.data() + pos, line.data() + line.size(), id);
      if (ec != std::errc{} || ptr == line.data() + pos)
        throw ParseError(line_no, "invalid vertex id in '" + std::string(line) + "'");
      pos = static_cast<std::size_t>(ptr - line.data());
      if (pos < line.size() && line[pos] != ' ' && line[pos] != '\t')
        throw ParseError(line_no, "invalid vertex id in '" + std::string(line) + "'");
    }
    if (line.find_first_not_of(" \t", pos) != std::string_view::npos)
      throw ParseError(line_no, "trailing content in '" + std::string(line) + "'");
    if (ids[0] == ids[1])
      throw InvalidGraphError("line " + std::to_string(line_no) + ": self-loop at vertex " +
                              std::to_string(ids[0]));
    raw.emplace_back(ids[0], ids[1]);
  }
  if (raw.empty()) throw InvalidGraphError("edge list has no vertices");

  EdgeVec edges;
  edges.reserve(raw.size());
  std::size_t vertex_count = 0;
  if (options.normalize) {
    std::unordered_map<std::uint64_t, VertexId> relabel;
    auto id_of = [&](std::uint64_t x) {
      auto [it, inserted] = relabel.try_emplace(x, static_cast<VertexId>(relabel.size()));
      return it->second;
    };
    for (auto [u, v] : raw) {
      auto a = id_of(u);
      edges.emplace_back(a, id_of(v));
    }
    vertex_count = relabel.size();
  } else {
    std::uint64_t max_id = 0;
    for (auto [u, v] : raw) max_id = std::max({max_id, u, v});
    if (max_id >= std::numeric_limits<std::int32_t>::max())
      throw InvalidGraphError("vertex id " + std::to_string(max_id) + " too large");
    std::vector<bool> seen(max_id + 1, false);
    for (auto [u, v] : raw) {
      seen[u] = seen[v] = true;
      edges.emplace_back(static_cast<VertexId>(u), static_cast<VertexId>(v));
    }
    auto gap = std::find(seen.begin(), seen.end(), false);
    if (gap != seen.end())
      throw InvalidGraphError("vertex ids are not dense: " +
                              std::to_string(gap - seen.begin()) +
                              " is missing (use --normalize to relabel)");
    vertex_count = max_id + 1;
  }
  return Graph::from_edges(vertex_count, edges);
}

std::string to_edge_list(const Graph& g) {
  std::string out;
  for (auto [u, v] : g.edges()) out += std::to_string(u) + ' ' + std::to_string(v) + '\n';
  return out;
}

bool is_connected(const Graph& g) {
  std::vector<bool> seen(g.vertex_count(), false);
  std::queue<VertexId> frontier;
  seen[0] = true;
  frontier.push(0);
  std::size_t reached = 1;
  while (!frontier.empty()) {
    auto u = frontier.front();
    frontier.pop();
    for (auto v : g.neighbors(u)) {
      if (seen[v]) continue;
      seen[v] = true;
      ++reached;
      frontier.push(v);
    }
  }
  return reached == g.vertex_count();
}

std::int64_t stabilization_threshold(const Graph& g) noexcept {
  return 4 * static_cast<std::int64_t>(g.edge_count()) -
         static_cast<std::int64_t>(g.vertex_count());
}

}  // namespace candy
