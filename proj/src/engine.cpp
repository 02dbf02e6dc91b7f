#include "candy/engine.hpp"

#include <algorithm>
#include <charconv>
#include <unordered_map>

#include "candy/error.hpp"

namespace candy {

// ---------------------------------------------------------------------------
// Configuration

Configuration::Configuration(std::vector<Candies> counts) : counts_(std::move(counts)) {
  for (auto x : counts_) {
    if (__builtin_add_overflow(total_, x, &total_))
      throw PreconditionError("total candy count overflows 64 bits");
  }
}

Configuration Configuration::parse(std::string_view text) {
  std::vector<Candies> counts;
  std::size_t pos = 0;
  auto is_sep = [](char ch) { return ch == ',' || ch == ' ' || ch == '\t' || ch == '\n' || ch == '\r'; };
  while (pos < text.size()) {
    if (is_sep(text[pos])) {
      ++pos;
      continue;
    }
    Candies value = 0;
    auto [ptr, ec] = std::from_chars(text.data() + pos, text.data() + text.size(), value);
    auto end = static_cast<std::size_t>(ptr - text.data());
    if (ec != std::errc{} || end == pos || (end < text.size() && !is_sep(text[end])))
      throw ParseError("invalid candy count in configuration '" + std::string(text) + "'");
    counts.push_back(value);
    pos = end;
  }
  if (counts.empty()) throw ParseError("empty configuration");
  return Configuration(std::move(counts));
}

std::string Configuration::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < counts_.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(counts_[i]);
  }
  return out;
}

void check_dimensions(const Graph& g, const Configuration& conf) {
  if (conf.size() != g.vertex_count()) throw DimensionMismatch(g.vertex_count(), conf.size());
}

// ---------------------------------------------------------------------------
// Rounds

RoundRunner::RoundRunner(const Graph& g, const kernels::KernelTable& table)
    : graph_(&g), table_(&table), mask_(g.vertex_count()), incoming_(g.vertex_count()) {}

void RoundRunner::advance(std::span<const Candies> in, std::span<Candies> out) {
  table_->threshold_mask(in, graph_->degrees(), mask_);
  table_->gather_incoming(graph_->offsets(), graph_->adjacency(), mask_, incoming_);
  table_->apply_round(in, graph_->degrees(), mask_, incoming_, out);
}

std::vector<VertexId> firing_set(const Graph& g, const Configuration& conf) {
  check_dimensions(g, conf);
  std::vector<VertexId> out;
  for (VertexId v = 0; v < g.vertex_count(); ++v)
    if (conf[v] >= g.degree(v)) out.push_back(v);
  return out;
}

Configuration step(const Graph& g, const Configuration& conf) {
  check_dimensions(g, conf);
  std::vector<Candies> next(conf.size());
  RoundRunner(g).advance(conf.counts(), next);
  return Configuration(std::move(next));
}

bool is_fixed_point(const Graph& g, const Configuration& conf) {
  return step(g, conf) == conf;
}

// ---------------------------------------------------------------------------
// Cycle detection

namespace {

std::uint64_t hash_counts(std::span<const Candies> counts) noexcept {
  std::uint64_t h = 0x9e3779b97f4a7c15ULL ^ counts.size();
  for (auto x : counts) {
    h ^= x + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    h *= 0xbf58476d1ce4e5b9ULL;
  }
  h ^= h >> 31;
  return h;
}

// Trajectory x_0, x_1, ... regenerated on demand from the initial state with
// two buffers.
class Replay {
 public:
  Replay(RoundRunner& runner, std::span<const Candies> initial)
      : runner_(runner), cur_(initial.begin(), initial.end()), next_(initial.size()) {}

  std::span<const Candies> current() const noexcept { return cur_; }
  std::uint64_t round() const noexcept { return round_; }

  void advance() {
    runner_.advance(cur_, next_);
    cur_.swap(next_);
    ++round_;
  }

 private:
  RoundRunner& runner_;
  std::vector<Candies> cur_;
  std::vector<Candies> next_;
  std::uint64_t round_ = 0;
};

struct CycleShape {
  std::uint64_t transient = 0;
  std::uint64_t period = 0;
};

// Brent's algorithm. Before the cycle is found the hare has taken at most
// 2*max(T+1, P) + P <= 3(T+P) + 2 steps, so exceeding that bound proves
// T+P > max_rounds.
CycleShape brent(RoundRunner& runner, std::span<const Candies> initial,
                 std::uint64_t max_rounds) {
  const std::uint64_t step_budget = 3 * max_rounds + 2;
  Replay hare(runner, initial);
  std::vector<Candies> tortoise(initial.begin(), initial.end());
  std::uint64_t power = 1;
  std::uint64_t period = 1;
  hare.advance();
  while (!std::equal(tortoise.begin(), tortoise.end(), hare.current().begin())) {
    if (power == period) {
      tortoise.assign(hare.current().begin(), hare.current().end());
      power *= 2;
      period = 0;
    }
    hare.advance();
    ++period;
    if (hare.round() > step_budget) throw BudgetExceeded(hare.round(), max_rounds);
  }

  Replay slow(runner, initial);
  Replay fast(runner, initial);
  for (std::uint64_t i = 0; i < period; ++i) fast.advance();
  while (!std::equal(slow.current().begin(), slow.current().end(), fast.current().begin())) {
    slow.advance();
    fast.advance();
  }
  return {slow.round(), period};
}

// Fills per_vertex_stabilization from the periodic window and the transient
// prefix supplied round by round via `transient_round(r)`.
template <class RoundAt>
void fill_stabilization(RunResult& result, std::size_t n, RoundAt&& transient_round) {
  const auto& window = result.periodic_window;
  std::vector<bool> constant(n, true);
  for (const auto& conf : window)
    for (VertexId v = 0; v < n; ++v)
      if (conf[v] != window.front()[v]) constant[v] = false;

  // First round of the final run of equal values; starts at T and walks back.
  std::vector<std::uint64_t> since(n, result.transient_length);
  std::vector<bool> broken(n, false);
  for (std::uint64_t r = result.transient_length; r-- > 0;) {
    auto counts = transient_round(r);
    for (VertexId v = 0; v < n; ++v) {
      if (!constant[v] || broken[v]) continue;
      if (counts[v] == window.front()[v])
        since[v] = r;
      else
        broken[v] = true;
    }
  }
  result.per_vertex_stabilization.assign(n, std::nullopt);
  for (VertexId v = 0; v < n; ++v)
    if (constant[v]) result.per_vertex_stabilization[v] = since[v];
}

RunResult finish_from_replay(RoundRunner& runner, const Configuration& initial,
                             CycleShape shape) {
  RunResult result;
  result.initial = initial;
  result.transient_length = shape.transient;
  result.period_length = shape.period;
  result.rounds_executed = shape.transient + shape.period;

  const std::size_t n = initial.size();
  Replay replay(runner, initial.counts());
  while (replay.round() < shape.transient) replay.advance();
  for (std::uint64_t i = 0; i < shape.period; ++i) {
    result.periodic_window.emplace_back(
        std::vector<Candies>(replay.current().begin(), replay.current().end()));
    replay.advance();
  }

  // The transient is not stored; a forward pass tracks, per vertex, the
  // last round whose count differs from the window value.
  const auto& head = result.periodic_window.front();
  std::vector<bool> constant(n, true);
  for (const auto& conf : result.periodic_window)
    for (VertexId v = 0; v < n; ++v)
      if (conf[v] != head[v]) constant[v] = false;
  std::vector<std::uint64_t> since(n, 0);
  Replay forward(runner, initial.counts());
  while (forward.round() < shape.transient) {
    for (VertexId v = 0; v < n; ++v)
      if (forward.current()[v] != head[v]) since[v] = forward.round() + 1;
    forward.advance();
  }
  result.per_vertex_stabilization.assign(n, std::nullopt);
  for (VertexId v = 0; v < n; ++v)
    if (constant[v]) result.per_vertex_stabilization[v] = since[v];
  return result;
}

}  // namespace

RunResult simulate(const Graph& g, const Configuration& initial, SimulateOptions options) {
  check_dimensions(g, initial);
  if (options.max_rounds == 0) throw PreconditionError("max_rounds must be positive");
  RoundRunner runner(g);
  const std::size_t n = g.vertex_count();

  // history holds rounds 0..stored-1 back to back.
  std::vector<Candies> history(initial.counts().begin(), initial.counts().end());
  std::unordered_multimap<std::uint64_t, std::uint64_t> seen;
  auto at = [&](std::uint64_t r) { return std::span<const Candies>(history.data() + r * n, n); };

  if (options.memory_cap_states >= 1) {
    seen.emplace(hash_counts(initial.counts()), 0);
    std::vector<Candies> next(n);
    for (std::uint64_t r = 1; r <= options.max_rounds; ++r) {
      runner.advance(at(r - 1), next);
      const auto h = hash_counts(next);
      auto [lo, hi] = seen.equal_range(h);
      for (auto it = lo; it != hi; ++it) {
        auto earlier = at(it->second);
        if (!std::equal(earlier.begin(), earlier.end(), next.begin())) continue;

        RunResult result;
        result.initial = initial;
        result.transient_length = it->second;
        result.period_length = r - it->second;
        result.rounds_executed = r;
        for (auto k = it->second; k < r; ++k)
          result.periodic_window.emplace_back(std::vector<Candies>(at(k).begin(), at(k).end()));
        fill_stabilization(result, n, at);
        return result;
      }
      if (r >= options.memory_cap_states) break;
      history.insert(history.end(), next.begin(), next.end());
      seen.emplace(h, r);
      if (r == options.max_rounds) throw BudgetExceeded(r, options.max_rounds);
    }
  }

  // Memory cap reached: constant-memory detection, then replay for the window.
  history.clear();
  history.shrink_to_fit();
  seen.clear();
  auto shape = brent(runner, initial.counts(), options.max_rounds);
  if (shape.transient + shape.period > options.max_rounds)
    throw BudgetExceeded(shape.transient + shape.period, options.max_rounds);
  return finish_from_replay(runner, initial, shape);
}

}  // namespace candy
