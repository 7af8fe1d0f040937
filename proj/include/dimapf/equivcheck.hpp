#pragma once

// Cross-checks the 3SAT reduction: truth-table satisfiability must agree
// with BFS solvability of the generated instance, and satisfying assignments
// must yield valid plans that decode back to themselves.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "dimapf/mapf.hpp"
#include "dimapf/reduction.hpp"
#include "dimapf/solver.hpp"

namespace dimapf {

struct EquivConfig {
  std::uint32_t max_n = 2;
  std::uint32_t max_k = 2;
  // Zero enumerates every formula with 1 <= n <= max_n, 0 <= k <= max_k;
  // otherwise draws this many random formulas with n = max_n, k = max_k.
  std::size_t samples = 0;
  std::uint64_t seed = 1;
  // BFS is run (both directions checked) only within this scale; larger
  // formulas get the constructive check alone.
  std::uint32_t bfs_max_n = 2;
  std::uint32_t bfs_max_k = 2;
  // Sabotage: swap the T/F targets of every clause arc before checking.
  bool mutate_clause_arcs = false;
  SearchLimits limits;
};

struct EquivReport {
  std::size_t formulas = 0;
  std::size_t satisfiable = 0;
  std::size_t bfs_checked = 0;
  std::size_t constructive_checked = 0;
  // Unsatisfiable formulas above the BFS scale, for which no oracle runs.
  std::size_t unsat_unchecked = 0;
  // Longest plan found by BFS.
  std::size_t max_bfs_plan = 0;
  std::optional<Cnf3Formula> counterexample;
  std::string failure;

  bool ok() const { return !counterexample; }
};

// Every clause as a sorted literal triple (repetition allowed), in
// lexicographic order.
inline std::vector<Clause> all_clauses(std::uint32_t n) {
  std::vector<Literal> lits;
  for (std::uint32_t v = 1; v <= n; ++v) {
    lits.push_back({v, false});
    lits.push_back({v, true});
  }
  std::vector<Clause> out;
  for (std::size_t a = 0; a < lits.size(); ++a) {
    for (std::size_t b = a; b < lits.size(); ++b) {
      for (std::size_t c = b; c < lits.size(); ++c) out.push_back({lits[a], lits[b], lits[c]});
    }
  }
  return out;
}

// All formulas over exactly n variables with k clauses (ordered clause
// sequences of sorted triples).
inline std::vector<Cnf3Formula> all_formulas(std::uint32_t n, std::uint32_t k) {
  const auto clauses = all_clauses(n);
  std::vector<Cnf3Formula> out;
  Cnf3Formula cur{n, {}};
  auto rec = [&](auto&& self) -> void {
    if (cur.clauses.size() == k) {
      out.push_back(cur);
      return;
    }
    for (const Clause& c : clauses) {
      cur.clauses.push_back(c);
      self(self);
      cur.clauses.pop_back();
    }
  };
  rec(rec);
  return out;
}

template <typename Rng>
Cnf3Formula random_formula(std::uint32_t n, std::uint32_t k, Rng& rng) {
  Cnf3Formula f{n, {}};
  std::uniform_int_distribution<std::uint32_t> var(1, n);
  std::bernoulli_distribution sign(0.5);
  for (std::uint32_t j = 0; j < k; ++j) {
    Clause c;
    for (Literal& l : c) l = {var(rng), sign(rng)};
    f.clauses.push_back(c);
  }
  return f;
}

// The reduction instance with T/F swapped on every clause arc.
inline MapfInstance mutate_clause_arcs(const ReductionArtifact& art) {
  MapfInstance inst = art.instance();
  const std::uint32_t n = art.n();
  std::vector<char> gate(inst.vertex_count(), 0);
  for (std::uint32_t j = 1; j <= art.k(); ++j) gate[art.seq(j * (n + 1))] = 1;
  auto flip = [&](VertexId v) -> VertexId {
    for (std::uint32_t i = 1; i <= n; ++i) {
      if (v == art.choice_true(i)) return art.choice_false(i);
      if (v == art.choice_false(i)) return art.choice_true(i);
    }
    return v;
  };
  std::vector<Arc> arcs;
  for (const Arc& a : inst.digraph.arcs()) arcs.push_back(gate[a.from] ? Arc{a.from, flip(a.to)} : a);
  inst.digraph = Digraph(inst.vertex_count(), std::move(arcs), inst.digraph.labels());
  return inst;
}

// Checks one formula; returns a failure description, or empty on success.
inline std::string check_formula(const Cnf3Formula& f, const EquivConfig& cfg, EquivReport& report) {
  const SatResult sat = sat_bruteforce(f);
  const ReductionArtifact art = build_reduction(f);
  const MapfInstance inst = cfg.mutate_clause_arcs ? mutate_clause_arcs(art) : art.instance();
  ++report.formulas;
  if (sat.satisfiable) ++report.satisfiable;

  if (f.variable_count <= cfg.bfs_max_n && f.clause_count() <= cfg.bfs_max_k) {
    ++report.bfs_checked;
    const SearchResult r = solve_bfs(inst, cfg.limits);
    if (r.resource_limited()) return "search hit a resource limit";
    if (r.solvable() != sat.satisfiable) {
      return sat.satisfiable ? "formula satisfiable but instance unsolvable"
                             : "formula unsatisfiable but instance solvable";
    }
    if (r.solvable()) {
      report.max_bfs_plan = std::max(report.max_bfs_plan, r.plan().size());
      if (!validate_plan(inst, r.plan())) return "BFS plan fails validation";
      if (!cfg.mutate_clause_arcs) {
        try {
          assignment_from_plan(art, r.plan());
        } catch (const std::exception& e) {
          return std::string("decoding BFS plan failed: ") + e.what();
        }
      }
    }
  } else if (!sat.satisfiable) {
    ++report.unsat_unchecked;
  }

  if (sat.satisfiable) {
    ++report.constructive_checked;
    const Plan plan = plan_from_assignment(art, *sat.witness);
    if (auto check = validate_plan(inst, plan); !check) {
      return "constructed plan invalid: " + check.reason +
             (check.index ? " at move " + std::to_string(*check.index) : std::string());
    }
    if (!cfg.mutate_clause_arcs && assignment_from_plan(art, plan) != *sat.witness) {
      return "constructed plan decodes to a different assignment";
    }
  }
  return {};
}

inline EquivReport run_equivcheck(const EquivConfig& cfg) {
  EquivReport report;
  auto check = [&](const Cnf3Formula& f) {
    std::string failure = check_formula(f, cfg, report);
    if (failure.empty()) return true;
    report.counterexample = f;
    report.failure = std::move(failure);
    return false;
  };

  if (cfg.samples == 0) {
    for (std::uint32_t n = 1; n <= cfg.max_n; ++n) {
      for (std::uint32_t k = 0; k <= cfg.max_k; ++k) {
        for (const Cnf3Formula& f : all_formulas(n, k)) {
          if (!check(f)) return report;
        }
      }
    }
  } else {
    std::mt19937_64 rng(cfg.seed);
    for (std::size_t s = 0; s < cfg.samples; ++s) {
      if (!check(random_formula(cfg.max_n, cfg.max_k, rng))) return report;
    }
  }
  return report;
}

}  // namespace dimapf
