#pragma once

// The diMAPF problem model: instances, placements, single-agent moves along
// arcs, and plan validation.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "dimapf/graph.hpp"

namespace dimapf {

using AgentId = std::uint32_t;

// Placement of every agent, indexed by agent id. This is also the canonical
// state encoding used by the solver.
struct State {
  std::vector<VertexId> placement;

  VertexId operator[](AgentId r) const { return placement[r]; }
  std::size_t size() const { return placement.size(); }

  friend bool operator==(const State&, const State&) = default;
};

struct Move {
  AgentId agent;
  VertexId from;
  VertexId to;

  friend bool operator==(const Move&, const Move&) = default;
};

struct Plan {
  std::vector<Move> moves;

  std::size_t size() const { return moves.size(); }
  bool empty() const { return moves.empty(); }

  friend bool operator==(const Plan&, const Plan&) = default;
};

struct MapfInstance {
  Digraph digraph;
  std::vector<std::string> agent_names;
  State start;
  State goal;

  std::size_t agent_count() const { return agent_names.size(); }
  std::size_t vertex_count() const { return digraph.vertex_count(); }
};

struct Violation {
  enum class Kind {
    kStartNotInjective,
    kGoalNotInjective,
    kTooManyAgents,
    kUnknownVertex,
    kPlacementSizeMismatch,
    kDuplicateAgentName,
  };
  Kind kind;
  std::string message;
};

inline std::vector<Violation> validate_instance(const MapfInstance& inst) {
  using K = Violation::Kind;
  std::vector<Violation> out;
  const std::size_t n = inst.vertex_count();
  const std::size_t agents = inst.agent_count();

  if (agents > n) {
    out.push_back({K::kTooManyAgents, "|R| <= |V| fails: " + std::to_string(agents) + " agents on " +
                                          std::to_string(n) + " vertices"});
  }
  for (std::size_t r = 0; r < agents; ++r) {
    for (std::size_t q = r + 1; q < agents; ++q) {
      if (inst.agent_names[r] == inst.agent_names[q]) {
        out.push_back({K::kDuplicateAgentName, "duplicate agent name " + inst.agent_names[r]});
      }
    }
  }

  auto check_placement = [&](const State& s, const char* which, K not_injective) {
    if (s.size() != agents) {
      out.push_back({K::kPlacementSizeMismatch, std::string(which) + " places " + std::to_string(s.size()) +
                                                    " agents, expected " + std::to_string(agents)});
      return;
    }
    std::vector<std::optional<AgentId>> holder(n);
    for (AgentId r = 0; r < agents; ++r) {
      VertexId v = s[r];
      if (v >= n) {
        out.push_back({K::kUnknownVertex, std::string(which) + " of agent " + inst.agent_names[r] +
                                              " is undeclared vertex " + std::to_string(v)});
        continue;
      }
      if (holder[v]) {
        out.push_back({not_injective, std::string(which) + " not injective: agents " +
                                          inst.agent_names[*holder[v]] + " and " + inst.agent_names[r] +
                                          " share vertex " + inst.digraph.label(v)});
      } else {
        holder[v] = r;
      }
    }
  };
  check_placement(inst.start, "start", K::kStartNotInjective);
  check_placement(inst.goal, "goal", K::kGoalNotInjective);
  return out;
}

inline bool is_valid_state(const MapfInstance& inst, const State& s) {
  if (s.size() != inst.agent_count()) return false;
  std::vector<char> used(inst.vertex_count(), 0);
  for (VertexId v : s.placement) {
    if (v >= used.size() || used[v]) return false;
    used[v] = 1;
  }
  return true;
}

// Ordered by agent id, then target vertex id.
inline std::vector<Move> legal_moves(const MapfInstance& inst, const State& s) {
  if (!is_valid_state(inst, s)) throw std::invalid_argument("state/instance mismatch");
  std::vector<char> occupied(inst.vertex_count(), 0);
  for (VertexId v : s.placement) occupied[v] = 1;
  std::vector<Move> moves;
  for (AgentId r = 0; r < s.size(); ++r) {
    for (VertexId w : inst.digraph.successors(s[r])) {
      if (!occupied[w]) moves.push_back({r, s[r], w});
    }
  }
  return moves;
}

class IllegalMove : public std::runtime_error {
 public:
  enum class Reason { kUnknownAgent, kAgentNotAtFrom, kNoArc, kTargetOccupied };

  IllegalMove(Reason reason, const std::string& what) : std::runtime_error(what), reason_(reason) {}
  Reason reason() const { return reason_; }

 private:
  Reason reason_;
};

inline const char* to_string(IllegalMove::Reason reason) {
  switch (reason) {
    case IllegalMove::Reason::kUnknownAgent: return "unknown agent";
    case IllegalMove::Reason::kAgentNotAtFrom: return "agent not at from";
    case IllegalMove::Reason::kNoArc: return "no arc";
    case IllegalMove::Reason::kTargetOccupied: return "target occupied";
  }
  return "illegal move";
}

// Why `m` cannot be applied to `s`, or nullopt if it can. Assumes `s` is valid.
inline std::optional<IllegalMove::Reason> move_defect(const MapfInstance& inst, const State& s, const Move& m) {
  using R = IllegalMove::Reason;
  if (m.agent >= s.size()) return R::kUnknownAgent;
  if (s[m.agent] != m.from) return R::kAgentNotAtFrom;
  if (!inst.digraph.has_arc(m.from, m.to)) return R::kNoArc;
  for (VertexId v : s.placement) {
    if (v == m.to) return R::kTargetOccupied;
  }
  return std::nullopt;
}

inline State apply_move(const MapfInstance& inst, const State& s, const Move& m) {
  if (!is_valid_state(inst, s)) throw std::invalid_argument("state/instance mismatch");
  if (auto defect = move_defect(inst, s, m)) throw IllegalMove(*defect, to_string(*defect));
  State next = s;
  next.placement[m.agent] = m.to;
  return next;
}

struct PlanCheck {
  // Index of the first offending move, or nullopt when every move applied
  // but the final state is not the goal (or the plan is fine).
  std::optional<std::size_t> index;
  std::string reason;

  bool ok() const { return reason.empty(); }
  explicit operator bool() const { return ok(); }
};

inline PlanCheck validate_plan(const MapfInstance& inst, const Plan& p) {
  if (!validate_instance(inst).empty()) return {std::nullopt, "invalid instance"};
  const std::size_t n = inst.vertex_count();
  std::vector<VertexId> at = inst.start.placement;
  std::vector<char> occupied(n, 0);
  for (VertexId v : at) occupied[v] = 1;

  for (std::size_t i = 0; i < p.moves.size(); ++i) {
    const Move& m = p.moves[i];
    if (m.agent >= at.size()) return {i, "unknown agent"};
    if (at[m.agent] != m.from) return {i, "agent not at from"};
    if (!inst.digraph.has_arc(m.from, m.to)) return {i, "no arc"};
    if (occupied[m.to]) return {i, "target occupied"};
    occupied[m.from] = 0;
    occupied[m.to] = 1;
    at[m.agent] = m.to;
  }
  if (at != inst.goal.placement) return {std::nullopt, "goal not reached"};
  return {};
}

// The state reached after applying every move of `p` to the start state.
inline State final_state(const MapfInstance& inst, const Plan& p) {
  State s = inst.start;
  for (const Move& m : p.moves) s = apply_move(inst, s, m);
  return s;
}

}  // namespace dimapf
