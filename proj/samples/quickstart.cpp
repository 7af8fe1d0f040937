// Build the four-vertex star instance, solve it, and check the plan; then
// reduce a small formula and turn its satisfying assignment into a plan.

#include <iostream>

#include "dimapf/dimapf.hpp"

int main() {
  using namespace dimapf;

  MapfInstance star;
  star.digraph = Digraph(4, {{0, 1}, {1, 0}, {1, 2}, {2, 1}, {1, 3}, {3, 1}}, {"v1", "v2", "v3", "v4"});
  star.agent_names = {"C", "S"};
  star.start = State{{0, 3}};
  star.goal = State{{1, 2}};

  const SearchResult r = solve_bfs(star);
  std::cout << verdict_name(r) << "\n";
  if (!r.solvable()) return 1;
  std::cout << serialize_plan(star, r.plan());
  if (!validate_plan(star, r.plan())) return 1;

  const Cnf3Formula f = parse_dimacs("p cnf 3 2\n1 2 -3 0\n-1 2 3 0\n");
  const ReductionArtifact art = build_reduction(f);
  const SatResult sat = sat_bruteforce(f);
  const Plan plan = plan_from_assignment(art, *sat.witness);
  std::cout << to_string(f) << ": " << art.instance().vertex_count() << " vertices, " << art.instance().agent_count()
            << " agents, plan of " << plan.size() << " moves\n";
  return validate_plan(art.instance(), plan) && assignment_from_plan(art, plan) == *sat.witness ? 0 : 1;
}
