#include <gtest/gtest.h>

#include "fixtures.hpp"

using namespace ucactus;

namespace {

const OracleLimits kLim{40, 8, 8};

void expect_matches_oracle(const Instance& inst, const std::string& tag) {
  const Solution s = solve(inst);
  const double ref = oracle_solve(inst, kLim).lambda;
  EXPECT_NEAR(s.lambda, ref, 1e-6 * std::max(1.0, ref)) << tag;
  EXPECT_LE(objective(inst, s.q1, s.q2), s.lambda + 1e-6) << tag;
}

}  // namespace

TEST(Solve, Tri) {
  const Instance inst = fx::tri();
  const Solution s = solve(inst);
  EXPECT_NEAR(s.lambda, 0.5, 1e-9);
  EXPECT_LE(objective(inst, s.q1, s.q2), 0.5 + 1e-9);
}

TEST(Solve, SinglePointUsesItsMedian) {
  CactusGraph g;
  g.add_vertex("a");
  g.add_vertex("b");
  g.add_edge(0, 1, 4);
  const Instance inst = make_instance(std::move(g), {{"P", 2.0, {{0, -1, 0.0, 0.5}, {1, -1, 0.0, 0.5}}}});
  EXPECT_NEAR(solve(inst).lambda, 4.0, 1e-9);
}

TEST(Solve, SingleVertexGraph) {
  CactusGraph g;
  g.add_vertex("a");
  const Instance inst = make_instance(std::move(g), {{"P", 1.0, {{0, -1, 0.0, 1.0}}}});
  const Solution s = solve(inst);
  EXPECT_DOUBLE_EQ(s.lambda, 0.0);
}

TEST(Solve, TwoDeterministicPointsNeedNoDistance) {
  CactusGraph g;
  for (const char* s : {"a", "b", "c"}) g.add_vertex(s);
  g.add_edge(0, 1, 3);
  g.add_edge(1, 2, 3);
  const Instance inst = make_instance(std::move(g), {{"P", 1.0, {{0, -1, 0.0, 1.0}}}, {"Q", 5.0, {{2, -1, 0.0, 1.0}}}});
  EXPECT_NEAR(solve(inst).lambda, 0.0, 1e-12);
}

TEST(Solve, ZeroWeights) {
  Instance inst = fx::tri();
  for (auto& p : inst.points) p.weight = 0.0;
  EXPECT_DOUBLE_EQ(solve(inst).lambda, 0.0);
}

TEST(Solve, MatchesOracleOnGeneralInstances) {
  for (std::uint64_t seed = 1; seed <= 300; ++seed) expect_matches_oracle(fx::small_random(seed, 12, 3, 5, 3, 0.2), std::to_string(seed));
}

TEST(Solve, MatchesOracleOnTrees) {
  for (std::uint64_t seed = 1; seed <= 100; ++seed) expect_matches_oracle(fx::small_random(seed, 12, 0, 5, 3), std::to_string(seed));
}

TEST(Solve, MatchesOracleOnDeterministicPoints) {
  for (std::uint64_t seed = 1; seed <= 100; ++seed) expect_matches_oracle(fx::small_random(seed, 12, 3, 5, 1), std::to_string(seed));
}

TEST(Solve, ValueIsTheThresholdOfDecide) {
  for (std::uint64_t seed = 1; seed <= 80; ++seed) {
    const ReducedInstance red = reduce_instance(fx::small_random(seed, 12, 3, 5, 3));
    const double lambda = solve(red.instance).lambda;
    EXPECT_TRUE(decide(red.instance, lambda).feasible) << seed;
    if (lambda > 1e-6) EXPECT_FALSE(decide(red.instance, lambda - 1e-4 * std::max(1.0, lambda)).feasible) << seed;
  }
}

TEST(Solve, BoundedByOneCenterAndMedians) {
  for (std::uint64_t seed = 1; seed <= 80; ++seed) {
    const Instance inst = reduce_instance(fx::small_random(seed, 12, 3, 5, 3)).instance;
    const double lambda = solve(inst).lambda;
    EXPECT_LE(lambda, one_center(inst, unit_multipliers(inst)).value + 1e-9);
    for (int k = 0; k < inst.n(); ++k) EXPECT_GE(lambda, inst.points[k].weight * median(inst, k).value - 1e-9);
  }
}

TEST(CandidateValues, ContainOptimum) {
  for (std::uint64_t seed = 1; seed <= 80; ++seed) {
    const Instance inst = reduce_instance(fx::small_random(seed, 12, 3, 5, 3)).instance;
    FeasibilityCache feasible(inst);
    const CriticalPair cp = find_critical_pair(inst, feasible);
    const double lambda = solve(inst).lambda;
    if (cp.solved) {
      EXPECT_NEAR(*cp.solved, lambda, 1e-9) << seed;
      continue;
    }
    ASSERT_TRUE(cp.c1 && cp.c2);
    std::vector<std::pair<double, CandidateSource>> extra;
    for (double v : feasible.tested()) extra.emplace_back(v, CandidateSource::Tested);
    const CandidateSet cs = candidate_values(inst, {*cp.c1, *cp.c2}, extra);
    EXPECT_EQ(cs.values.size(), cs.provenance.size());
    EXPECT_TRUE(std::is_sorted(cs.values.begin(), cs.values.end()));
    const bool found = std::any_of(cs.values.begin(), cs.values.end(), [&](double v) { return std::abs(v - lambda) <= 1e-9; });
    EXPECT_TRUE(found) << seed;
  }
}

TEST(CriticalSearch, TriAtHingeFindsAValue) {
  const Instance inst = fx::tri_reduced();
  FeasibilityCache feasible(inst);
  const CriticalOutcome r = locate_critical_articulation(inst, inst.cactus.tree.vertex_node[2], feasible);
  EXPECT_NE(r.kind, CriticalKind::CriticalHere);
  if (r.kind == CriticalKind::Solved) EXPECT_NEAR(r.value, 0.5, 1e-9);
}
