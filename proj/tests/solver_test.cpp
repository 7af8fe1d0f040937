#include "dimapf/solver.hpp"

#include <gtest/gtest.h>

#include <random>

#include "dimapf/reduction.hpp"
#include "test_support.hpp"

namespace dimapf {
namespace {

using testing::star_instance;
using testing::make_instance;
using testing::PlacementSpaceOracle;

TEST(SolveBfsTest, StarShortestPlanHasThreeMoves) {
  auto inst = star_instance();
  auto r = solve_bfs(inst);
  ASSERT_TRUE(r.solvable());
  EXPECT_EQ(r.plan().size(), 3u);
  EXPECT_TRUE(validate_plan(inst, r.plan()).ok());
}

TEST(SolveBfsTest, StartEqualsGoal) {
  auto inst = star_instance();
  inst.goal = inst.start;
  auto r = solve_bfs(inst);
  ASSERT_TRUE(r.solvable());
  EXPECT_TRUE(r.plan().empty());
}

TEST(SolveBfsTest, SwapOnPathIsUnsolvable) {
  auto inst = testing::swap_on_path_instance();
  PlacementSpaceOracle oracle(inst);
  ASSERT_EQ(oracle.states().size(), 6u);
  ASSERT_FALSE(oracle.distance_to(inst.goal).has_value());

  EXPECT_TRUE(solve_bfs(inst).unsolvable());
  SearchLimits raw;
  raw.prune_dead_ends = false;
  auto r = solve_bfs(inst, raw);
  EXPECT_TRUE(r.unsolvable());
  EXPECT_LE(r.stats.states_generated, 6u);
}

TEST(SolveBfsTest, InvalidInstanceThrows) {
  auto inst = star_instance();
  inst.start = State{{0, 0}};
  EXPECT_THROW(solve_bfs(inst), std::invalid_argument);
}

TEST(SolveBfsTest, DepthBoundBelowOptimumIsBoundExhausted) {
  auto inst = star_instance();
  auto r = solve_bfs(inst, std::size_t{2});
  ASSERT_TRUE(r.bound_exhausted());
  EXPECT_EQ(std::get<outcome::BoundExhausted>(r.outcome).depth, 2u);
  EXPECT_TRUE(solve_bfs(inst, std::size_t{3}).solvable());
}

TEST(SolveBfsTest, BoundAboveExhaustionStillReportsUnsolvable) {
  auto inst = testing::swap_on_path_instance();
  EXPECT_TRUE(solve_bfs(inst, std::size_t{100}).unsolvable());
}

TEST(SolveBfsTest, StateCeilingIsAResourceLimitNotUnsolvable) {
  auto inst = testing::swap_on_path_instance();
  SearchLimits limits;
  limits.max_states = 2;
  limits.prune_dead_ends = false;
  auto r = solve_bfs(inst, limits);
  ASSERT_TRUE(r.resource_limited());
  EXPECT_FALSE(r.unsolvable());
}

TEST(SolveBfsTest, TimeCeilingIsAResourceLimit) {
  // Ten agents on a 40-vertex bidirected ring: far too many states to finish.
  std::vector<Arc> arcs;
  for (VertexId v = 0; v < 40; ++v) {
    arcs.push_back({v, (v + 1) % 40});
    arcs.push_back({(v + 1) % 40, v});
  }
  State start, goal;
  for (VertexId r = 0; r < 10; ++r) {
    start.placement.push_back(r);
    goal.placement.push_back(39 - r);
  }
  auto inst = make_instance(Digraph(40, arcs), start, goal);
  SearchLimits limits;
  limits.time_limit = std::chrono::milliseconds(50);
  auto r = solve_bfs(inst, limits);
  EXPECT_TRUE(r.resource_limited());
}

TEST(SolveBfsTest, DeterministicPlansAndCounts) {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 3 + trial % 4;
    auto inst = make_instance(testing::random_digraph(n, 0.5, rng), testing::random_placement(n, 2, rng),
                              testing::random_placement(n, 2, rng));
    auto a = solve_bfs(inst);
    auto b = solve_bfs(inst);
    ASSERT_EQ(a.outcome.index(), b.outcome.index());
    ASSERT_TRUE(a.stats.same_counts(b.stats));
    if (a.solvable()) {
      ASSERT_EQ(a.plan(), b.plan());
    }
  }
}

// Verdict and shortest length, with and without dead-end pruning.
void expect_matches_oracle(const MapfInstance& inst, const PlacementSpaceOracle& oracle) {
  const auto expected = oracle.distance_to(inst.goal);
  for (bool prune : {true, false}) {
    SearchLimits limits;
    limits.prune_dead_ends = prune;
    auto r = solve_bfs(inst, limits);
    ASSERT_EQ(r.solvable(), expected.has_value());
    ASSERT_EQ(r.unsolvable(), !expected.has_value());
    if (expected) {
      ASSERT_EQ(r.plan().size(), *expected);
      ASSERT_TRUE(validate_plan(inst, r.plan()).ok());
    }
  }
}

TEST(SolveBfsOracleTest, AllDigraphsUpToFourVerticesTwoAgents) {
  std::size_t checked = 0;
  for (std::size_t n = 1; n <= 4; ++n) {
    const auto pairs = detail::all_arcs(n);
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << pairs.size()); ++mask) {
      Digraph d(n, detail::arcs_of_mask(pairs, mask));
      for (std::size_t agents = 1; agents <= std::min<std::size_t>(2, n); ++agents) {
        for (const State& start : detail::injective_placements(n, agents)) {
          auto inst = make_instance(d, start, start);
          PlacementSpaceOracle oracle(inst);
          for (const auto& goal : oracle.states()) {
            inst.goal = State{goal};
            expect_matches_oracle(inst, oracle);
            if (HasFatalFailure()) return;
            ++checked;
          }
        }
      }
    }
  }
  EXPECT_GT(checked, 600000u);
}

TEST(SolveBfsOracleTest, ThreeAgentsSampled) {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 400; ++trial) {
    const std::size_t n = 3 + trial % 3;  // 3..5 vertices
    const std::size_t agents = std::min<std::size_t>(3, n - 1 + trial % 2);
    auto d = testing::random_digraph(n, 0.25 + 0.1 * (trial % 5), rng);
    auto inst = make_instance(d, testing::random_placement(n, agents, rng), State{});
    PlacementSpaceOracle oracle(inst);
    for (const auto& goal : oracle.states()) {
      inst.goal = State{goal};
      expect_matches_oracle(inst, oracle);
      if (HasFatalFailure()) return;
    }
  }
}

TEST(DagMoveBoundTest, FormulaAndPrecondition) {
  EXPECT_EQ(dag_move_bound(make_instance(Digraph(5, {{0, 1}}), State{}, State{})), 25u);
  EXPECT_EQ(dag_move_bound(make_instance(Digraph(1), State{}, State{})), 1u);
  EXPECT_THROW(dag_move_bound(make_instance(Digraph(2, {{0, 1}, {1, 0}}), State{}, State{})), std::domain_error);
}

TEST(DagMoveBoundTest, ChainTraversal) {
  auto inst = make_instance(Digraph(3, {{0, 1}, {1, 2}}), State{{0}}, State{{2}});
  auto r = solve_bfs(inst);
  ASSERT_TRUE(r.solvable());
  EXPECT_EQ(r.plan().size(), 2u);
  EXPECT_LE(r.plan().size(), dag_move_bound(inst));
}

TEST(DagMoveBoundTest, BoundedSearchMatchesUnboundedOnRandomDags) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 1500; ++trial) {
    const std::size_t n = 2 + trial % 6;
    const std::size_t agents = 1 + trial % (n - 1 + (n == 1));
    auto d = testing::random_dag(n, 0.5, rng);
    auto inst = make_instance(d, testing::random_placement(n, agents, rng), testing::random_placement(n, agents, rng));
    const auto bound = dag_move_bound(inst);
    auto unbounded = solve_bfs(inst);
    auto bounded = solve_bfs(inst, static_cast<std::size_t>(bound));
    ASSERT_EQ(unbounded.solvable(), bounded.solvable());
    ASSERT_EQ(unbounded.unsolvable(), bounded.unsolvable());
    if (unbounded.solvable()) {
      ASSERT_LE(unbounded.plan().size(), bound);
    }
  }
}

TEST(DecomposeEventsTest, StarSettlesOnly) {
  auto inst = star_instance();
  auto trace = decompose_plan_events(inst, testing::star_plan());
  ASSERT_EQ(trace.events.size(), 1u);
  const auto& ev = trace.events[0];
  ASSERT_EQ(ev.size(), 2u);
  EXPECT_EQ(ev[0], (SccEvent{1, SccEvent::Kind::kSettle, 1}));
  EXPECT_EQ(ev[1], (SccEvent{0, SccEvent::Kind::kSettle, 2}));
  EXPECT_LE(ev.size(), 2 * inst.agent_count());
}

TEST(DecomposeEventsTest, StronglyConnectedHasNoBoundaryEvents) {
  std::mt19937_64 rng(31);
  Digraph ring(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}});
  for (int trial = 0; trial < 50; ++trial) {
    auto inst = make_instance(ring, testing::random_placement(5, 3, rng), testing::random_placement(5, 3, rng));
    auto r = solve_bfs(inst);
    if (!r.solvable()) continue;
    auto trace = decompose_plan_events(inst, r.plan());
    std::vector<char> moved(3, 0);
    for (const Move& m : r.plan().moves) moved[m.agent] = 1;
    std::size_t movers = 0;
    for (char c : moved) movers += c;
    ASSERT_EQ(trace.events.size(), 1u);
    ASSERT_EQ(trace.events[0].size(), movers);
    for (const auto& e : trace.events[0]) ASSERT_EQ(e.kind, SccEvent::Kind::kSettle);
  }
}

TEST(DecomposeEventsTest, MotionlessAgentsContributeNothing) {
  auto inst = make_instance(Digraph(3, {{0, 1}}), State{{0, 2}}, State{{1, 2}});
  auto trace = decompose_plan_events(inst, Plan{{{0, 0, 1}}});
  for (const auto& comp : trace.events) {
    for (const auto& e : comp) EXPECT_EQ(e.agent, 0u);
  }
  // leave in {v1}, enter + settle in {v2}
  EXPECT_EQ(trace.events[0].size(), 1u);
  EXPECT_EQ(trace.events[1].size(), 2u);
  EXPECT_TRUE(trace.events[2].empty());
}

TEST(DecomposeEventsTest, InvalidPlanThrows) {
  EXPECT_THROW(decompose_plan_events(star_instance(), Plan{}), std::invalid_argument);
}

TEST(DecomposeEventsTest, ReductionPlanEveryMoveCrossesComponents) {
  // (x1 | x2 | ~x3) & (~x1 | x2 | x3), x2 true.
  auto art = build_reduction(testing::two_clause_formula());
  auto plan = plan_from_assignment(art, {false, true, false});
  auto trace = decompose_plan_events(art.instance(), plan);
  std::size_t leaves = 0, enters = 0;
  for (const auto& comp : trace.events) {
    ASSERT_LE(comp.size(), 2 * art.instance().agent_count());
    for (const auto& e : comp) {
      leaves += e.kind == SccEvent::Kind::kLeave;
      enters += e.kind == SccEvent::Kind::kEnter;
    }
  }
  EXPECT_EQ(leaves, plan.size());
  EXPECT_EQ(enters, plan.size());
}

TEST(DecomposeEventsTest, EventBoundOnRandomSolvedInstances) {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 800; ++trial) {
    const std::size_t n = 3 + trial % 5;
    const std::size_t agents = 1 + trial % (n - 1);
    auto inst = make_instance(testing::random_digraph(n, 0.3, rng), testing::random_placement(n, agents, rng),
                              testing::random_placement(n, agents, rng));
    auto r = solve_bfs(inst);
    if (!r.solvable()) continue;
    ASSERT_LE(testing::max_events_per_component(inst, r.plan()), 2 * agents);

    // Longer valid plans: a random legal walk, then the BFS plan from there.
    State s = inst.start;
    Plan walk;
    for (int step = 0; step < 12; ++step) {
      auto moves = legal_moves(inst, s);
      if (moves.empty()) break;
      const Move m = moves[std::uniform_int_distribution<std::size_t>(0, moves.size() - 1)(rng)];
      s = apply_move(inst, s, m);
      walk.moves.push_back(m);
    }
    auto rest = make_instance(inst.digraph, s, inst.goal);
    auto tail = solve_bfs(rest);
    if (!tail.solvable()) continue;
    walk.moves.insert(walk.moves.end(), tail.plan().moves.begin(), tail.plan().moves.end());
    ASSERT_TRUE(validate_plan(inst, walk).ok());
    ASSERT_LE(testing::max_events_per_component(inst, walk), 2 * agents);
  }
}

TEST(ExploreReachableTest, DistancesMatchSolveBfs) {
  auto inst = star_instance();
  std::size_t visited = 0;
  explore_reachable(inst, {}, [&](std::span<const VertexId> s, std::size_t depth) {
    ++visited;
    auto target = make_instance(inst.digraph, inst.start, State{{s.begin(), s.end()}});
    auto r = solve_bfs(target);
    ASSERT_TRUE(r.solvable());
    EXPECT_EQ(r.plan().size(), depth);
  });
  EXPECT_EQ(visited, 12u);  // every injective placement of 2 agents on 4 vertices
}

}  // namespace
}  // namespace dimapf
