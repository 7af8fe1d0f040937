#pragma once

// Exhaustive breadth-first solvability decision for diMAPF instances, the
// DAG move bound, and per-SCC event decomposition of plans.

#include <algorithm>
#include <chrono>
#include <cstddef>
#include <cstdint>
#include <cstring>
#include <functional>
#include <limits>
#include <new>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <type_traits>
#include <variant>
#include <vector>

#include "dimapf/graph.hpp"
#include "dimapf/mapf.hpp"

namespace dimapf {

struct SearchLimits {
  // Maximum plan length explored. Unset means unbounded.
  std::optional<std::size_t> depth_bound;
  // Ceiling on the closed-set size.
  std::size_t max_states = 20'000'000;
  std::optional<std::chrono::milliseconds> time_limit;
  // Skip successors that put an agent where its goal vertex is unreachable.
  // Such states can never lie on a plan, so verdicts and shortest lengths
  // are unaffected.
  bool prune_dead_ends = true;
};

struct SearchStats {
  std::uint64_t states_expanded = 0;
  // Distinct states entered into the closed set, start included.
  std::uint64_t states_generated = 0;
  std::uint64_t peak_frontier = 0;
  std::chrono::nanoseconds elapsed{0};

  // Everything except wall time.
  bool same_counts(const SearchStats& o) const {
    return states_expanded == o.states_expanded && states_generated == o.states_generated &&
           peak_frontier == o.peak_frontier;
  }
};

namespace outcome {
struct Solvable {
  Plan plan;
};
struct Unsolvable {};
struct BoundExhausted {
  std::size_t depth;
};
struct ResourceLimit {
  std::string reason;
};
}  // namespace outcome

struct SearchResult {
  std::variant<outcome::Solvable, outcome::Unsolvable, outcome::BoundExhausted, outcome::ResourceLimit> outcome;
  SearchStats stats;

  bool solvable() const { return std::holds_alternative<outcome::Solvable>(outcome); }
  bool unsolvable() const { return std::holds_alternative<outcome::Unsolvable>(outcome); }
  bool bound_exhausted() const { return std::holds_alternative<outcome::BoundExhausted>(outcome); }
  bool resource_limited() const { return std::holds_alternative<outcome::ResourceLimit>(outcome); }

  const Plan& plan() const { return std::get<outcome::Solvable>(outcome).plan; }
};

inline const char* verdict_name(const SearchResult& r) {
  if (r.solvable()) return "SOLVABLE";
  if (r.unsolvable()) return "UNSOLVABLE";
  if (r.bound_exhausted()) return "BOUND-EXHAUSTED";
  return "RESOURCE-LIMIT";
}

namespace detail {

class ResourceExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Breadth-first search over canonical placements. States are fixed-width
// tuples of `Cell` (one per agent) stored contiguously in discovery order, so
// the arena doubles as the FIFO queue. The closed set is an open-addressing
// table of arena indices.
template <typename Cell>
class PlacementSearch {
 public:
  static constexpr std::uint32_t kNone = std::numeric_limits<std::uint32_t>::max();

  // `live`, when non-empty, is indexed [agent * |V| + vertex] and marks the
  // vertices each agent may occupy; other successors are never generated.
  PlacementSearch(const MapfInstance& inst, const SearchLimits& limits, std::vector<char> live = {})
      : inst_(inst), limits_(limits), stride_(inst.agent_count()), live_(std::move(live)) {
    if (limits_.max_states >= kNone) limits_.max_states = kNone - 1;
  }

  std::size_t size() const { return parent_.size(); }
  std::span<const Cell> state(std::uint32_t idx) const { return {arena_.data() + idx * stride_, stride_}; }
  std::uint32_t parent(std::uint32_t idx) const { return parent_[idx]; }
  AgentId via_agent(std::uint32_t idx) const { return via_[idx]; }
  const SearchStats& stats() const { return stats_; }

  // Visits states level by level. `on_new(idx, depth)` is called for every
  // newly discovered state (start included, depth 0) and may return true to
  // stop. Returns the index that stopped the search, if any. Sets
  // `bound_hit` when the depth bound cut off undiscovered states.
  template <typename OnNew>
  std::optional<std::uint32_t> run(OnNew&& on_new, bool& bound_hit) {
    const auto started = std::chrono::steady_clock::now();
    bound_hit = false;
    struct Timer {
      SearchStats& s;
      std::chrono::steady_clock::time_point t0;
      ~Timer() { s.elapsed = std::chrono::steady_clock::now() - t0; }
    } timer{stats_, started};

    const std::size_t n = inst_.vertex_count();
    std::vector<Cell> scratch(stride_);
    for (std::size_t r = 0; r < stride_; ++r) scratch[r] = static_cast<Cell>(inst_.start[r]);
    insert(scratch, kNone, 0);
    if (on_new(0u, std::size_t{0})) return 0u;

    std::vector<std::uint32_t> occupant(n, kNone);
    std::size_t level_begin = 0;
    std::size_t level_end = 1;
    std::size_t depth = 0;
    while (level_begin < level_end) {
      const bool at_bound = limits_.depth_bound && depth >= *limits_.depth_bound;
      for (std::size_t idx = level_begin; idx < level_end; ++idx) {
        if ((stats_.states_expanded & 1023u) == 0 && limits_.time_limit &&
            std::chrono::steady_clock::now() - started > *limits_.time_limit) {
          throw ResourceExceeded("time limit exceeded");
        }
        ++stats_.states_expanded;
        std::memcpy(scratch.data(), arena_.data() + idx * stride_, stride_ * sizeof(Cell));
        for (std::size_t r = 0; r < stride_; ++r) occupant[scratch[r]] = static_cast<std::uint32_t>(r);

        for (std::size_t r = 0; r < stride_; ++r) {
          const Cell from = scratch[r];
          const char* live = live_.empty() ? nullptr : live_.data() + r * n;
          for (VertexId to : inst_.digraph.successors(from)) {
            if (occupant[to] != kNone || (live && !live[to])) continue;
            scratch[r] = static_cast<Cell>(to);
            const std::size_t h = hash(scratch.data());
            if (find(scratch.data(), h) == kNone) {
              if (at_bound) {
                bound_hit = true;
              } else {
                const auto child = insert(scratch, static_cast<std::uint32_t>(idx), static_cast<AgentId>(r), h);
                if (on_new(child, depth + 1)) return child;
              }
            }
            scratch[r] = from;
          }
        }
        for (std::size_t r = 0; r < stride_; ++r) occupant[scratch[r]] = kNone;
        const std::uint64_t frontier = size() - (idx + 1);
        if (frontier > stats_.peak_frontier) stats_.peak_frontier = frontier;
        if (at_bound && bound_hit) return std::nullopt;
      }
      if (at_bound) return std::nullopt;
      level_begin = level_end;
      level_end = size();
      ++depth;
    }
    return std::nullopt;
  }

  Plan extract_plan(std::uint32_t idx) const {
    Plan p;
    while (parent_[idx] != kNone) {
      const std::uint32_t up = parent_[idx];
      const AgentId r = via_[idx];
      p.moves.push_back({r, static_cast<VertexId>(state(up)[r]), static_cast<VertexId>(state(idx)[r])});
      idx = up;
    }
    std::reverse(p.moves.begin(), p.moves.end());
    return p;
  }

 private:
  std::size_t hash(const Cell* cells) const {
    return std::hash<std::string_view>{}(
        std::string_view(reinterpret_cast<const char*>(cells), stride_ * sizeof(Cell)));
  }

  bool equal(std::uint32_t idx, const Cell* cells) const {
    return std::memcmp(arena_.data() + idx * stride_, cells, stride_ * sizeof(Cell)) == 0;
  }

  std::uint32_t find(const Cell* cells, std::size_t h) const {
    if (slots_.empty()) return kNone;
    const std::size_t mask = slots_.size() - 1;
    for (std::size_t i = h & mask;; i = (i + 1) & mask) {
      const std::uint32_t idx = slots_[i];
      if (idx == kNone) return kNone;
      if (equal(idx, cells)) return idx;
    }
  }

  void place(std::uint32_t idx, std::size_t h) {
    const std::size_t mask = slots_.size() - 1;
    std::size_t i = h & mask;
    while (slots_[i] != kNone) i = (i + 1) & mask;
    slots_[i] = idx;
  }

  void grow() {
    std::vector<std::uint32_t> old;
    old.swap(slots_);
    slots_.assign(old.empty() ? 1024 : old.size() * 2, kNone);
    for (std::uint32_t idx : old) {
      if (idx != kNone) place(idx, hash(arena_.data() + idx * stride_));
    }
  }

  std::uint32_t insert(const std::vector<Cell>& cells, std::uint32_t parent, AgentId via) {
    return insert(cells, parent, via, hash(cells.data()));
  }

  std::uint32_t insert(const std::vector<Cell>& cells, std::uint32_t parent, AgentId via, std::size_t h) {
    if (size() >= limits_.max_states) {
      throw ResourceExceeded("state limit of " + std::to_string(limits_.max_states) + " exceeded");
    }
    if ((size() + 1) * 2 > slots_.size()) grow();
    const auto idx = static_cast<std::uint32_t>(size());
    arena_.insert(arena_.end(), cells.begin(), cells.end());
    parent_.push_back(parent);
    via_.push_back(via);
    place(idx, h);
    ++stats_.states_generated;
    return idx;
  }

  const MapfInstance& inst_;
  SearchLimits limits_;
  std::size_t stride_;
  std::vector<char> live_;
  std::vector<Cell> arena_;
  std::vector<std::uint32_t> parent_;
  std::vector<AgentId> via_;
  std::vector<std::uint32_t> slots_;
  SearchStats stats_;
};

// Narrowest cell type that can hold every vertex id of `inst`.
template <typename F>
decltype(auto) with_cell_type(const MapfInstance& inst, F&& f) {
  const std::size_t n = inst.vertex_count();
  if (n <= std::numeric_limits<std::uint8_t>::max()) return f(std::uint8_t{});
  if (n <= std::numeric_limits<std::uint16_t>::max()) return f(std::uint16_t{});
  return f(std::uint32_t{});
}

// live[r * |V| + v] is set iff agent r's goal is reachable from v.
inline std::vector<char> goal_reachability(const MapfInstance& inst) {
  const std::size_t n = inst.vertex_count();
  std::vector<char> live(inst.agent_count() * n, 0);
  std::vector<VertexId> todo;
  for (AgentId r = 0; r < inst.agent_count(); ++r) {
    char* mark = live.data() + r * n;
    todo.assign(1, inst.goal[r]);
    mark[inst.goal[r]] = 1;
    while (!todo.empty()) {
      const VertexId v = todo.back();
      todo.pop_back();
      for (VertexId u : inst.digraph.predecessors(v)) {
        if (!mark[u]) {
          mark[u] = 1;
          todo.push_back(u);
        }
      }
    }
  }
  return live;
}

inline void require_valid(const MapfInstance& inst) {
  auto violations = validate_instance(inst);
  if (!violations.empty()) throw std::invalid_argument("invalid instance: " + violations.front().message);
}

}  // namespace detail

// Breadth-first search with a closed set. A Solvable plan is shortest.
// Unsolvable is reported only after the reachable placement space is
// exhausted; limits produce BoundExhausted or ResourceLimit instead.
inline SearchResult solve_bfs(const MapfInstance& inst, const SearchLimits& limits) {
  detail::require_valid(inst);
  return detail::with_cell_type(inst, [&](auto cell) -> SearchResult {
    using Cell = decltype(cell);
    std::vector<char> live;
    if (limits.prune_dead_ends) live = detail::goal_reachability(inst);
    SearchResult result;
    for (AgentId r = 0; r < inst.agent_count() && !live.empty(); ++r) {
      if (!live[r * inst.vertex_count() + inst.start[r]]) {
        result.outcome = outcome::Unsolvable{};
        return result;
      }
    }
    detail::PlacementSearch<Cell> search(inst, limits, std::move(live));
    std::vector<Cell> goal(inst.agent_count());
    for (std::size_t r = 0; r < goal.size(); ++r) goal[r] = static_cast<Cell>(inst.goal[r]);
    auto is_goal = [&](std::uint32_t idx, std::size_t) {
      auto s = search.state(idx);
      return std::equal(s.begin(), s.end(), goal.begin());
    };

    try {
      bool bound_hit = false;
      auto found = search.run(is_goal, bound_hit);
      if (found) {
        result.outcome = outcome::Solvable{search.extract_plan(*found)};
      } else if (bound_hit) {
        result.outcome = outcome::BoundExhausted{*limits.depth_bound};
      } else {
        result.outcome = outcome::Unsolvable{};
      }
    } catch (const detail::ResourceExceeded& e) {
      result.outcome = outcome::ResourceLimit{e.what()};
    } catch (const std::bad_alloc&) {
      result.outcome = outcome::ResourceLimit{"out of memory"};
    }
    result.stats = search.stats();
    return result;
  });
}

inline SearchResult solve_bfs(const MapfInstance& inst, std::optional<std::size_t> depth_bound = std::nullopt) {
  SearchLimits limits;
  limits.depth_bound = depth_bound;
  return solve_bfs(inst, limits);
}

// Visits every placement reachable from the start with its exact BFS
// distance; goals and dead-end pruning play no part. Throws
// std::runtime_error when a limit is exceeded.
template <typename Visit>
SearchStats explore_reachable(const MapfInstance& inst, const SearchLimits& limits, Visit&& visit) {
  detail::require_valid(inst);
  return detail::with_cell_type(inst, [&](auto cell) -> SearchStats {
    using Cell = decltype(cell);
    detail::PlacementSearch<Cell> search(inst, limits);
    std::vector<VertexId> buffer(inst.agent_count());
    auto on_new = [&](std::uint32_t idx, std::size_t depth) {
      auto s = search.state(idx);
      std::copy(s.begin(), s.end(), buffer.begin());
      visit(std::span<const VertexId>(buffer), depth);
      return false;
    };
    bool bound_hit = false;
    try {
      // `visit(std::span<const VertexId>, depth)`
      search.run(on_new, bound_hit);
    } catch (const detail::ResourceExceeded& e) {
      throw std::runtime_error(e.what());
    }
    return search.stats();
  });
}

// On a DAG an agent never revisits a vertex, so no plan needs more than
// |V|^2 moves.
inline std::uint64_t dag_move_bound(const MapfInstance& inst) {
  if (!is_dag(inst.digraph)) throw std::domain_error("bound valid only on DAGs");
  const auto n = static_cast<std::uint64_t>(inst.vertex_count());
  return n * n;
}

struct SccEvent {
  enum class Kind { kEnter, kLeave, kSettle };
  AgentId agent;
  Kind kind;
  std::size_t step;

  friend bool operator==(const SccEvent&, const SccEvent&) = default;
};

inline const char* to_string(SccEvent::Kind k) {
  switch (k) {
    case SccEvent::Kind::kEnter: return "enter";
    case SccEvent::Kind::kLeave: return "leave";
    case SccEvent::Kind::kSettle: return "settle";
  }
  return "?";
}

struct SccEventTrace {
  SccPartition partition;
  // events[c] belongs to partition.components[c], ordered by step.
  std::vector<std::vector<SccEvent>> events;

  std::size_t max_events_per_component() const {
    std::size_t m = 0;
    for (const auto& e : events) m = std::max(m, e.size());
    return m;
  }
};

// Per component: a move crossing into it is an enter, out of it a leave, and
// each agent's last move of the plan is a settle in its target's component.
// Agents that never move contribute nothing.
inline SccEventTrace decompose_plan_events(const MapfInstance& inst, const Plan& p) {
  if (auto check = validate_plan(inst, p); !check) {
    throw std::invalid_argument("invalid plan: " + check.reason +
                                (check.index ? " at move " + std::to_string(*check.index) : std::string()));
  }
  SccEventTrace trace;
  trace.partition = strongly_connected_components(inst.digraph);
  trace.events.resize(trace.partition.size());

  std::vector<std::optional<std::size_t>> last_move(inst.agent_count());
  for (std::size_t i = 0; i < p.moves.size(); ++i) last_move[p.moves[i].agent] = i;

  for (std::size_t i = 0; i < p.moves.size(); ++i) {
    const Move& m = p.moves[i];
    const std::size_t from_c = trace.partition.component_of[m.from];
    const std::size_t to_c = trace.partition.component_of[m.to];
    if (from_c != to_c) {
      trace.events[from_c].push_back({m.agent, SccEvent::Kind::kLeave, i});
      trace.events[to_c].push_back({m.agent, SccEvent::Kind::kEnter, i});
    }
    if (last_move[m.agent] == i) trace.events[to_c].push_back({m.agent, SccEvent::Kind::kSettle, i});
  }
  return trace;
}

}  // namespace dimapf
