#include "dimapf/probe.hpp"

#include <gtest/gtest.h>

#include "test_support.hpp"

namespace dimapf {
namespace {

TEST(ProbeTest, EmptyFamilyIsReportedNotFailed) {
  ProbeConfig cfg;
  cfg.min_vertices = 1;
  cfg.max_vertices = 1;
  auto r = hypothesis_probe(cfg);
  EXPECT_TRUE(r.records.empty());
  EXPECT_TRUE(r.groups.empty());
  EXPECT_FALSE(r.partial.has_value());
  EXPECT_NE(probe_summary_tsv(r).find("vertices\tarcs"), std::string::npos);
}

TEST(ProbeTest, SwappingTwoAgentsOnBidirectedTriangle) {
  // 2 agents on the bidirected 3-cycle: every placement is reachable and
  // swapping the two agents needs 3 moves.
  Digraph tri(3, {{0, 1}, {1, 0}, {1, 2}, {2, 1}, {0, 2}, {2, 0}});
  MapfInstance inst = testing::make_instance(tri, State{{0, 1}}, State{{1, 0}});
  auto r = solve_bfs(inst);
  ASSERT_TRUE(r.solvable());
  EXPECT_EQ(r.plan().size(), 3u);

  ProbeConfig cfg;
  cfg.min_vertices = 3;
  cfg.max_vertices = 3;
  cfg.agents = 2;
  auto report = hypothesis_probe(cfg);
  ASSERT_TRUE(report.exhaustive);
  bool found = false;
  for (const auto& rec : report.records) {
    if (rec.arcs == tri.arcs() && rec.start == inst.start && rec.goal == inst.goal) {
      found = true;
      EXPECT_EQ(rec.shortest, std::optional<std::size_t>{3});
    }
  }
  EXPECT_TRUE(found);
}

// Exhaustive mode records every (strongly connected digraph, start, goal)
// and every length agrees with the placement-space oracle.
TEST(ProbeTest, ExhaustiveRecordsMatchOracle) {
  ProbeConfig cfg;
  cfg.min_vertices = 2;
  cfg.max_vertices = 3;
  auto report = hypothesis_probe(cfg);
  ASSERT_TRUE(report.exhaustive);
  ASSERT_FALSE(report.partial.has_value());

  // 3 vertices: 18 strongly connected arc sets; 1 or 2 agents.
  std::size_t strong3 = 0;
  const auto pairs = detail::all_arcs(3);
  for (std::uint64_t mask = 0; mask < 64; ++mask) {
    strong3 += testing::scc_oracle(Digraph(3, detail::arcs_of_mask(pairs, mask))).size() == 1;
  }
  EXPECT_EQ(strong3, 18u);
  EXPECT_EQ(report.records.size(), 1u * 2 * 2 + strong3 * (3 * 3 + 6 * 6));

  std::size_t max_seen = 0;
  for (const auto& rec : report.records) {
    auto inst = testing::make_instance(Digraph(rec.vertices, rec.arcs), rec.start, rec.goal);
    testing::PlacementSpaceOracle oracle(inst);
    ASSERT_EQ(rec.shortest, oracle.distance_to(rec.goal));
    if (rec.shortest) max_seen = std::max(max_seen, *rec.shortest);
  }
  EXPECT_EQ(report.max_shortest, max_seen);
  std::size_t grouped = 0;
  for (const auto& g : report.groups) grouped += g.instances;
  EXPECT_EQ(grouped, report.records.size());
}

TEST(ProbeTest, SampledModeIsSeededAndSorted) {
  ProbeConfig cfg;
  cfg.min_vertices = 3;
  cfg.max_vertices = 4;
  cfg.samples = 300;
  cfg.seed = 5;
  auto a = hypothesis_probe(cfg);
  auto b = hypothesis_probe(cfg);
  ASSERT_FALSE(a.exhaustive);
  ASSERT_EQ(a.records.size(), 300u);
  EXPECT_EQ(probe_records_tsv(a), probe_records_tsv(b));
  for (const auto& rec : a.records) {
    auto inst = testing::make_instance(Digraph(rec.vertices, rec.arcs), rec.start, rec.goal);
    ASSERT_TRUE(is_strongly_connected(inst.digraph));
    ASSERT_EQ(rec.shortest, testing::PlacementSpaceOracle(inst).distance_to(rec.goal));
  }
}

TEST(ProbeTest, TightEnvelopeFlagsInstances) {
  ProbeConfig cfg;
  cfg.min_vertices = 3;
  cfg.max_vertices = 3;
  cfg.agents = 2;
  cfg.poly_degree = 0;
  cfg.poly_coefficient = 2.0;
  auto r = hypothesis_probe(cfg);
  EXPECT_FALSE(r.exceeding.empty());
  for (std::size_t i : r.exceeding) EXPECT_GT(*r.records[i].shortest, 2u);
}

TEST(ProbeTest, InstanceCeilingMarksReportPartial) {
  ProbeConfig cfg;
  cfg.min_vertices = 3;
  cfg.max_vertices = 3;
  cfg.max_instances = 10;
  auto r = hypothesis_probe(cfg);
  ASSERT_TRUE(r.partial.has_value());
  EXPECT_EQ(r.records.size(), 10u);
  EXPECT_NE(probe_summary_tsv(r).find("# partial:"), std::string::npos);
}

TEST(ProbeTest, TooManyVerticesToEnumerate) {
  ProbeConfig cfg;
  cfg.min_vertices = 6;
  cfg.max_vertices = 6;
  EXPECT_TRUE(hypothesis_probe(cfg).partial.has_value());
}

}  // namespace
}  // namespace dimapf
