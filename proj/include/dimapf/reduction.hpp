#pragma once

// Polynomial reduction from 3SAT to diMAPF on DAGs, together with the two
// constructive directions: a satisfying assignment yields a plan, and a
// valid plan yields a satisfying assignment.
//
// Layout for n variables and k clauses (L = nk + n + k):
//   sequencer   seq:1..seq:L, arcs seq:(p+1) -> seq:p
//   evaluator   T:i, F:i, vx:i; arcs seq:1 -> T:i, F:i and T:i, F:i -> vx:i
//   clauses     seq:(j(n+1)) -> F:i if x_i occurs positively in clause j,
//               -> T:i if it occurs negated
//   collector   T:i, F:i, vx:i -> vxp:1 -> ... -> vxp:n -> vc:1 -> ... -> vc:k
//
// Agents x_i start on seq:i and end on vx:i; shadows xp_i start on vx:i and
// end on vxp:i; clause agents c_j start on seq:(n + j(n+1)) and end on vc:j;
// fillers f_p pack the rest of the sequencer and end n positions left.

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "dimapf/graph.hpp"
#include "dimapf/mapf.hpp"

namespace dimapf {

struct Literal {
  std::uint32_t variable;  // 1-based
  bool positive;

  friend auto operator<=>(const Literal&, const Literal&) = default;
};

using Clause = std::array<Literal, 3>;

struct Cnf3Formula {
  std::uint32_t variable_count = 0;
  std::vector<Clause> clauses;

  std::size_t clause_count() const { return clauses.size(); }

  friend bool operator==(const Cnf3Formula&, const Cnf3Formula&) = default;
};

// assignment[i - 1] is the value of x_i.
using Assignment = std::vector<bool>;

inline void validate_formula(const Cnf3Formula& f) {
  for (std::size_t j = 0; j < f.clauses.size(); ++j) {
    for (const Literal& lit : f.clauses[j]) {
      if (lit.variable < 1 || lit.variable > f.variable_count) {
        throw std::invalid_argument("clause " + std::to_string(j + 1) + " mentions variable " +
                                    std::to_string(lit.variable) + " outside 1.." +
                                    std::to_string(f.variable_count));
      }
    }
  }
}

inline bool satisfies(const Cnf3Formula& f, const Assignment& a) {
  if (a.size() != f.variable_count) return false;
  return std::all_of(f.clauses.begin(), f.clauses.end(), [&](const Clause& c) {
    return std::any_of(c.begin(), c.end(), [&](const Literal& l) { return a[l.variable - 1] == l.positive; });
  });
}

inline std::string to_string(const Cnf3Formula& f) {
  if (f.clauses.empty()) return "(empty)";
  std::string out;
  for (std::size_t j = 0; j < f.clauses.size(); ++j) {
    if (j) out += " & ";
    out += "(";
    for (std::size_t t = 0; t < 3; ++t) {
      if (t) out += " | ";
      const Literal& l = f.clauses[j][t];
      out += (l.positive ? "x" : "~x") + std::to_string(l.variable);
    }
    out += ")";
  }
  return out;
}

struct SatResult {
  bool satisfiable = false;
  std::optional<Assignment> witness;
};

// Truth-table decision. Assignments are tried in lexicographic order with
// true ranked before false, so the witness is the first satisfying row of a
// table that starts at all-true.
inline SatResult sat_bruteforce(const Cnf3Formula& f, std::uint32_t max_variables = 20) {
  validate_formula(f);
  if (f.variable_count > max_variables) {
    throw std::length_error("truth table over " + std::to_string(f.variable_count) +
                            " variables exceeds the limit of " + std::to_string(max_variables));
  }
  const std::uint32_t n = f.variable_count;
  const std::uint64_t rows = std::uint64_t{1} << n;
  Assignment a(n);
  for (std::uint64_t row = 0; row < rows; ++row) {
    // x_1 is the most significant position; a set bit means false.
    for (std::uint32_t i = 0; i < n; ++i) a[i] = ((row >> (n - 1 - i)) & 1u) == 0;
    if (satisfies(f, a)) return {true, a};
  }
  return {false, std::nullopt};
}

class ReductionArtifact {
 public:
  const MapfInstance& instance() const { return instance_; }
  const Cnf3Formula& formula() const { return formula_; }
  std::uint32_t n() const { return formula_.variable_count; }
  std::uint32_t k() const { return static_cast<std::uint32_t>(formula_.clause_count()); }
  std::uint32_t sequencer_length() const { return n() * k() + n() + k(); }

  // Vertices; all indices are 1-based as in the naming scheme.
  VertexId seq(std::uint32_t p) const { return check(p, sequencer_length(), "sequencer"), p - 1; }
  VertexId choice_true(std::uint32_t i) const { return evaluator(i, 0); }
  VertexId choice_false(std::uint32_t i) const { return evaluator(i, 1); }
  VertexId variable_dest(std::uint32_t i) const { return evaluator(i, 2); }
  VertexId shadow_dest(std::uint32_t i) const {
    check(i, n(), "variable");
    return sequencer_length() + 3 * n() + (i - 1);
  }
  VertexId clause_dest(std::uint32_t j) const {
    check(j, k(), "clause");
    return sequencer_length() + 4 * n() + (j - 1);
  }

  // Agents.
  AgentId variable_agent(std::uint32_t i) const { return check(i, n(), "variable"), i - 1; }
  AgentId shadow_agent(std::uint32_t i) const { return check(i, n(), "variable"), n() + i - 1; }
  AgentId clause_agent(std::uint32_t j) const { return check(j, k(), "clause"), 2 * n() + j - 1; }
  AgentId filler_agent(std::uint32_t p) const { return check(p, n() * k(), "filler"), 2 * n() + k() + p - 1; }

  std::optional<VertexId> vertex_named(const std::string& name) const {
    auto it = vertex_index_.find(name);
    if (it == vertex_index_.end()) return std::nullopt;
    return it->second;
  }
  std::optional<AgentId> agent_named(const std::string& name) const {
    auto it = agent_index_.find(name);
    if (it == agent_index_.end()) return std::nullopt;
    return it->second;
  }

  // Role of every vertex / agent as (name, role, index) rows.
  struct NameRow {
    std::string kind;  // "vertex" or "agent"
    std::string name;
    std::string role;
    std::uint32_t index;
  };
  std::vector<NameRow> name_table() const {
    std::vector<NameRow> rows;
    const std::uint32_t L = sequencer_length();
    for (std::uint32_t p = 1; p <= L; ++p) rows.push_back({"vertex", label(seq(p)), "sequencer", p});
    for (std::uint32_t i = 1; i <= n(); ++i) {
      rows.push_back({"vertex", label(choice_true(i)), "choice-true", i});
      rows.push_back({"vertex", label(choice_false(i)), "choice-false", i});
      rows.push_back({"vertex", label(variable_dest(i)), "variable-destination", i});
    }
    for (std::uint32_t i = 1; i <= n(); ++i) rows.push_back({"vertex", label(shadow_dest(i)), "shadow-destination", i});
    for (std::uint32_t j = 1; j <= k(); ++j) rows.push_back({"vertex", label(clause_dest(j)), "clause-destination", j});
    const auto& names = instance_.agent_names;
    for (std::uint32_t i = 1; i <= n(); ++i) rows.push_back({"agent", names[variable_agent(i)], "variable", i});
    for (std::uint32_t i = 1; i <= n(); ++i) rows.push_back({"agent", names[shadow_agent(i)], "shadow", i});
    for (std::uint32_t j = 1; j <= k(); ++j) rows.push_back({"agent", names[clause_agent(j)], "clause", j});
    for (std::uint32_t p = 1; p <= n() * k(); ++p) rows.push_back({"agent", names[filler_agent(p)], "filler", p});
    return rows;
  }

 private:
  friend ReductionArtifact build_reduction(const Cnf3Formula& f);

  static void check(std::uint32_t idx, std::uint32_t hi, const char* what) {
    if (idx < 1 || idx > hi) {
      throw std::out_of_range(std::string(what) + " index " + std::to_string(idx) + " outside 1.." +
                              std::to_string(hi));
    }
  }
  VertexId evaluator(std::uint32_t i, std::uint32_t offset) const {
    check(i, n(), "variable");
    return sequencer_length() + 3 * (i - 1) + offset;
  }
  const std::string& label(VertexId v) const { return instance_.digraph.label(v); }

  Cnf3Formula formula_;
  MapfInstance instance_;
  std::unordered_map<std::string, VertexId> vertex_index_;
  std::unordered_map<std::string, AgentId> agent_index_;
};

inline ReductionArtifact build_reduction(const Cnf3Formula& f) {
  validate_formula(f);
  ReductionArtifact art;
  art.formula_ = f;
  const std::uint32_t n = f.variable_count;
  const auto k = static_cast<std::uint32_t>(f.clause_count());
  const std::uint32_t L = n * k + n + k;
  const std::size_t vertex_count = std::size_t{L} + 4 * n + k;

  std::vector<std::string> labels(vertex_count);
  for (std::uint32_t p = 1; p <= L; ++p) labels[art.seq(p)] = "seq:" + std::to_string(p);
  for (std::uint32_t i = 1; i <= n; ++i) {
    labels[art.choice_true(i)] = "T:" + std::to_string(i);
    labels[art.choice_false(i)] = "F:" + std::to_string(i);
    labels[art.variable_dest(i)] = "vx:" + std::to_string(i);
    labels[art.shadow_dest(i)] = "vxp:" + std::to_string(i);
  }
  for (std::uint32_t j = 1; j <= k; ++j) labels[art.clause_dest(j)] = "vc:" + std::to_string(j);

  std::vector<Arc> arcs;
  for (std::uint32_t p = 1; p < L; ++p) arcs.push_back({art.seq(p + 1), art.seq(p)});
  for (std::uint32_t i = 1; i <= n; ++i) {
    arcs.push_back({art.seq(1), art.choice_true(i)});
    arcs.push_back({art.seq(1), art.choice_false(i)});
    arcs.push_back({art.choice_true(i), art.variable_dest(i)});
    arcs.push_back({art.choice_false(i), art.variable_dest(i)});
  }
  for (std::uint32_t j = 1; j <= k; ++j) {
    const VertexId gate = art.seq(j * (n + 1));
    for (const Literal& lit : f.clauses[j - 1]) {
      arcs.push_back({gate, lit.positive ? art.choice_false(lit.variable) : art.choice_true(lit.variable)});
    }
  }
  if (n > 0) {
    const VertexId collector_entry = art.shadow_dest(1);
    for (std::uint32_t i = 1; i <= n; ++i) {
      arcs.push_back({art.choice_true(i), collector_entry});
      arcs.push_back({art.choice_false(i), collector_entry});
      arcs.push_back({art.variable_dest(i), collector_entry});
    }
    std::vector<VertexId> chain;
    for (std::uint32_t i = 1; i <= n; ++i) chain.push_back(art.shadow_dest(i));
    for (std::uint32_t j = 1; j <= k; ++j) chain.push_back(art.clause_dest(j));
    for (std::size_t t = 0; t + 1 < chain.size(); ++t) arcs.push_back({chain[t], chain[t + 1]});
  }

  MapfInstance& inst = art.instance_;
  inst.digraph = Digraph(vertex_count, std::move(arcs), std::move(labels));
  const std::size_t agents = 2 * std::size_t{n} + k + std::size_t{n} * k;
  inst.agent_names.resize(agents);
  inst.start.placement.resize(agents);
  inst.goal.placement.resize(agents);

  for (std::uint32_t i = 1; i <= n; ++i) {
    inst.agent_names[art.variable_agent(i)] = "x" + std::to_string(i);
    inst.start.placement[art.variable_agent(i)] = art.seq(i);
    inst.goal.placement[art.variable_agent(i)] = art.variable_dest(i);
    inst.agent_names[art.shadow_agent(i)] = "xp" + std::to_string(i);
    inst.start.placement[art.shadow_agent(i)] = art.variable_dest(i);
    inst.goal.placement[art.shadow_agent(i)] = art.shadow_dest(i);
  }
  std::vector<char> taken(L + 1, 0);
  for (std::uint32_t i = 1; i <= n; ++i) taken[i] = 1;
  for (std::uint32_t j = 1; j <= k; ++j) {
    const std::uint32_t p = n + j * (n + 1);
    taken[p] = 1;
    inst.agent_names[art.clause_agent(j)] = "c" + std::to_string(j);
    inst.start.placement[art.clause_agent(j)] = art.seq(p);
    inst.goal.placement[art.clause_agent(j)] = art.clause_dest(j);
  }
  std::uint32_t filler = 0;
  for (std::uint32_t p = 1; p <= L; ++p) {
    if (taken[p]) continue;
    ++filler;
    inst.agent_names[art.filler_agent(filler)] = "f" + std::to_string(filler);
    inst.start.placement[art.filler_agent(filler)] = art.seq(p);
    inst.goal.placement[art.filler_agent(filler)] = art.seq(p - n);
  }

  for (VertexId v = 0; v < vertex_count; ++v) art.vertex_index_.emplace(inst.digraph.label(v), v);
  for (AgentId r = 0; r < agents; ++r) art.agent_index_.emplace(inst.agent_names[r], r);
  return art;
}

// Builds the five-phase plan for a satisfying assignment:
//   1. each x_i (ascending) walks down the sequencer and commits to T:i or F:i
//   2. fillers and clause agents shift n positions left, leftmost first
//   3. each c_j (descending) passes the choice vertex of its first satisfied
//      literal and follows the collector chain to vc:j
//   4. each xp_i (descending) leaves vx:i through the chain to vxp:i
//   5. each x_i (ascending) steps to vx:i
// Phases 3 and 4 run in descending order because the chain only leads away
// from vxp:1: the agent with the farthest destination must go first.
inline Plan plan_from_assignment(const ReductionArtifact& art, const Assignment& assignment) {
  const Cnf3Formula& f = art.formula();
  if (assignment.size() != f.variable_count) {
    throw std::invalid_argument("assignment has " + std::to_string(assignment.size()) + " values for " +
                                std::to_string(f.variable_count) + " variables");
  }
  if (!satisfies(f, assignment)) throw std::invalid_argument("assignment does not satisfy formula");

  const std::uint32_t n = art.n();
  const std::uint32_t k = art.k();
  const std::uint32_t L = art.sequencer_length();
  Plan plan;
  auto step = [&](AgentId r, VertexId from, VertexId to) { plan.moves.push_back({r, from, to}); };
  auto chosen = [&](std::uint32_t i) { return assignment[i - 1] ? art.choice_true(i) : art.choice_false(i); };
  auto walk_chain = [&](AgentId r, VertexId from, const std::vector<VertexId>& chain) {
    for (VertexId v : chain) {
      step(r, from, v);
      from = v;
    }
  };

  for (std::uint32_t i = 1; i <= n; ++i) {
    const AgentId x = art.variable_agent(i);
    for (std::uint32_t p = i; p > 1; --p) step(x, art.seq(p), art.seq(p - 1));
    step(x, art.seq(1), chosen(i));
  }

  // Sequencer occupants by position after phase 1.
  std::vector<std::optional<AgentId>> holder(L + 1);
  const State& start = art.instance().start;
  for (AgentId r = 0; r < start.size(); ++r) {
    const VertexId v = start[r];
    if (v < L && r >= 2 * n) holder[v + 1] = r;
  }
  for (std::uint32_t round = 0; round < n; ++round) {
    for (std::uint32_t p = 2; p <= L; ++p) {
      if (holder[p] && !holder[p - 1]) {
        step(*holder[p], art.seq(p), art.seq(p - 1));
        holder[p - 1] = holder[p];
        holder[p].reset();
      }
    }
  }

  std::vector<VertexId> chain;
  for (std::uint32_t i = 1; i <= n; ++i) chain.push_back(art.shadow_dest(i));
  for (std::uint32_t j = 1; j <= k; ++j) chain.push_back(art.clause_dest(j));

  for (std::uint32_t j = k; j >= 1; --j) {
    const AgentId c = art.clause_agent(j);
    const Clause& clause = f.clauses[j - 1];
    const auto lit = std::find_if(clause.begin(), clause.end(),
                                  [&](const Literal& l) { return assignment[l.variable - 1] == l.positive; });
    const VertexId pass = lit->positive ? art.choice_false(lit->variable) : art.choice_true(lit->variable);
    step(c, art.seq(j * (n + 1)), pass);
    walk_chain(c, pass, std::vector<VertexId>(chain.begin(), chain.begin() + n + j));
  }

  for (std::uint32_t i = n; i >= 1; --i) {
    walk_chain(art.shadow_agent(i), art.variable_dest(i), std::vector<VertexId>(chain.begin(), chain.begin() + i));
  }

  for (std::uint32_t i = 1; i <= n; ++i) step(art.variable_agent(i), chosen(i), art.variable_dest(i));
  return plan;
}

// Reads the truth value of x_i from the first choice vertex of its own pair
// that agent x_i enters.
inline Assignment assignment_from_plan(const ReductionArtifact& art, const Plan& p) {
  const MapfInstance& inst = art.instance();
  if (auto check = validate_plan(inst, p); !check) {
    throw std::invalid_argument("invalid plan: " + check.reason +
                                (check.index ? " at move " + std::to_string(*check.index) : std::string()));
  }
  Assignment a(art.n());
  for (std::uint32_t i = 1; i <= art.n(); ++i) {
    const AgentId x = art.variable_agent(i);
    const auto entry = std::find_if(p.moves.begin(), p.moves.end(), [&](const Move& m) {
      return m.agent == x && (m.to == art.choice_true(i) || m.to == art.choice_false(i));
    });
    if (entry == p.moves.end()) {
      throw std::invalid_argument("non-canonical plan: x" + std::to_string(i) + " never enters its choice pair");
    }
    a[i - 1] = entry->to == art.choice_true(i);
  }
  if (!satisfies(art.formula(), a)) {
    throw std::logic_error("valid plan encodes an assignment that does not satisfy the formula");
  }
  return a;
}

}  // namespace dimapf
