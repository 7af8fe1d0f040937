#include "dimapf/io.hpp"

#include <gtest/gtest.h>

#include <random>

#include "dimapf/equivcheck.hpp"
#include "test_support.hpp"

namespace dimapf {
namespace {

std::size_t parse_error_line(const std::string& text, DimacsOptions opt = {}) {
  try {
    parse_dimacs(text, opt);
  } catch (const ParseError& e) {
    return e.line();
  }
  ADD_FAILURE() << "accepted: " << text;
  return 0;
}

TEST(DimacsTest, ParsesTwoClause) {
  const std::string text =
      "c example\n"
      "p cnf 3 2\n"
      "1 2 -3 0\n"
      "-1 2 3 0\n";
  EXPECT_EQ(parse_dimacs(text), testing::two_clause_formula());
}

TEST(DimacsTest, ClausesMaySpanLinesAndStopAtPercent) {
  const std::string text = "p cnf 3 2\n1 2\n-3 0 -1 2 3 0\n%\n0\n";
  EXPECT_EQ(parse_dimacs(text), testing::two_clause_formula());
}

TEST(DimacsTest, PaddingRepeatsTheLastLiteral) {
  const std::string text = "p cnf 1 2\n1 0\n-1 0\n";
  EXPECT_EQ(parse_error_line(text), 2u);
  EXPECT_EQ(parse_dimacs(text, {true}), testing::unsat_formula());
}

TEST(DimacsTest, ErrorsCarryLineNumbers) {
  EXPECT_EQ(parse_error_line("p cnf 2 1\n1 2 -1 2 0\n"), 2u);    // too wide
  EXPECT_EQ(parse_error_line("p cnf 2 1\n\n1 2 3 0\n"), 3u);     // variable out of range
  EXPECT_EQ(parse_error_line("p cnf 2 1\n0\n"), 2u);             // empty clause
  EXPECT_EQ(parse_error_line("p cnf 2 1\n1 2 x 0\n"), 2u);       // malformed literal
  EXPECT_EQ(parse_error_line("1 2 2 0\np cnf 2 1\n"), 1u);       // clause first
  EXPECT_EQ(parse_error_line("p cnf 2 1\np cnf 2 1\n"), 2u);     // duplicate header
  EXPECT_EQ(parse_error_line("p cnf 2 1\n1 2 2\n"), 2u);         // unterminated
  EXPECT_EQ(parse_error_line("p cnf 2 2\n1 2 2 0\n"), 2u);       // count mismatch
  EXPECT_EQ(parse_error_line("c nothing\n"), 1u);                // no header
}

TEST(DimacsTest, RoundTripsRandomFormulas) {
  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 200; ++trial) {
    auto f = random_formula(1 + trial % 6, trial % 5, rng);
    ASSERT_EQ(parse_dimacs(to_dimacs(f)), f);
  }
}

TEST(InstanceFormatTest, StarRoundTrip) {
  auto inst = testing::star_instance();
  const std::string text = serialize_instance(inst);
  EXPECT_EQ(text.substr(0, 9), "dimapf 1\n");
  EXPECT_NE(text.find("agent C start v1 goal v2\n"), std::string::npos);
  auto back = parse_instance(text);
  EXPECT_EQ(back.digraph, inst.digraph);
  EXPECT_EQ(back.agent_names, inst.agent_names);
  EXPECT_EQ(back.start, inst.start);
  EXPECT_EQ(back.goal, inst.goal);
  EXPECT_EQ(serialize_instance(back), text);
}

TEST(InstanceFormatTest, ReductionRoundTrip) {
  auto art = build_reduction(testing::two_clause_formula());
  auto back = parse_instance(serialize_instance(art.instance()));
  EXPECT_EQ(back.digraph, art.instance().digraph);
  EXPECT_EQ(back.start, art.instance().start);
  EXPECT_EQ(back.goal, art.instance().goal);
}

TEST(InstanceFormatTest, CommentsAndBlankLines) {
  auto inst = parse_instance(
      "# two vertices\n\ndimapf 1\nvertex 1 b\nvertex 0 a  # out of order is fine\narc a b\n"
      "agent r start a goal b\n");
  EXPECT_EQ(inst.vertex_count(), 2u);
  EXPECT_EQ(inst.digraph.label(0), "a");
  EXPECT_TRUE(inst.digraph.has_arc(0, 1));
}

std::size_t instance_error_line(const std::string& body) {
  try {
    parse_instance("dimapf 1\n" + body);
  } catch (const ParseError& e) {
    return e.line();
  }
  ADD_FAILURE() << "accepted: " << body;
  return 0;
}

TEST(InstanceFormatTest, Rejections) {
  EXPECT_THROW(parse_instance("vertex 0 a\n"), ParseError);
  EXPECT_THROW(parse_instance("dimapf 2\n"), ParseError);
  EXPECT_EQ(instance_error_line("vertex 0 a\nvertex 0 b\n"), 3u);
  EXPECT_EQ(instance_error_line("vertex 0 a\nvertex 2 b\n"), 3u);
  EXPECT_EQ(instance_error_line("vertex 0 a\nvertex 1 a\n"), 3u);
  EXPECT_EQ(instance_error_line("vertex 0 a\narc a a\n"), 3u);
  EXPECT_EQ(instance_error_line("vertex 0 a\narc a z\n"), 3u);
  EXPECT_EQ(instance_error_line("vertex 0 a\nagent r start a goal a\nagent r start a goal a\n"), 4u);
  EXPECT_EQ(instance_error_line("vertex 0 a\nagent r start a\n"), 3u);
  EXPECT_EQ(instance_error_line("edge a b\n"), 2u);
}

TEST(PlanFormatTest, RoundTripAndErrors) {
  auto inst = testing::star_instance();
  const std::string text = serialize_plan(inst, testing::star_plan());
  EXPECT_EQ(text, "move S v4 v2\nmove S v2 v3\nmove C v1 v2\n");
  EXPECT_EQ(parse_plan(text, inst), testing::star_plan());

  try {
    parse_plan("move S v4 v2\n# note\nmove Q v1 v2\n", inst);
    FAIL();
  } catch (const PlanParseError& e) {
    EXPECT_EQ(e.move_index(), 1u);
    EXPECT_EQ(e.line(), 3u);
  }
  EXPECT_THROW(parse_plan("move S v4 v9\n", inst), PlanParseError);
  EXPECT_THROW(parse_plan("step S v4 v2\n", inst), PlanParseError);
}

TEST(NameMapTest, OneRowPerVertexAndAgent) {
  auto art = build_reduction(testing::two_clause_formula());
  const std::string map = serialize_name_map(art);
  std::size_t rows = 0;
  for (char c : map) rows += c == '\n';
  EXPECT_EQ(rows, 1 + 25 + 14);
  EXPECT_NE(map.find("vertex\tseq:4\tsequencer\t4\n"), std::string::npos);
  EXPECT_NE(map.find("agent\tc2\tclause\t2\n"), std::string::npos);
}

}  // namespace
}  // namespace dimapf
