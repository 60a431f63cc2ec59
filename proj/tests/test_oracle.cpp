#include <gtest/gtest.h>

#include "fixtures.hpp"

using namespace ucactus;

TEST(Oracle, TriValues) {
  const Instance inst = fx::tri();
  EXPECT_NEAR(oracle_solve(inst).lambda, 0.5, 1e-9);
  EXPECT_NEAR(oracle_one_center(inst).value, 1.5, 1e-9);
  EXPECT_NEAR(oracle_median(inst, 0).value, 0.5, 1e-9);
  EXPECT_FALSE(oracle_decide(inst, 0.49).feasible);
  EXPECT_TRUE(oracle_decide(inst, 0.5).feasible);
}

TEST(Oracle, RefusesLargeInstances) {
  GenParams p;
  p.vertex_count = 30;
  p.cycle_count = 2;
  try {
    oracle_solve(generate_instance(p));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::TooLargeForOracle);
  }
}

TEST(Oracle, HandlesOffVertexLocations) {
  CactusGraph g;
  g.add_vertex("a");
  g.add_vertex("b");
  g.add_edge(0, 1, 4);
  const Instance inst = make_instance(std::move(g), {{"P", 1.0, {{-1, 0, 1.0, 0.5}, {-1, 0, 3.0, 0.5}}}});
  EXPECT_NEAR(oracle_median(inst, 0).value, 1.0, 1e-12);
  EXPECT_NEAR(oracle_solve(inst).lambda, 1.0, 1e-12);
}

TEST(Oracle, WitnessesAttainValue) {
  for (std::uint64_t seed = 1; seed <= 60; ++seed) {
    const Instance inst = fx::small_random(seed, 10, 2, 4, 3, 0.3);
    const Solution s = oracle_solve(inst, {40, 8, 8});
    EXPECT_NEAR(objective(inst, s.q1, s.q2), s.lambda, 1e-9) << seed;
    const Verdict v = oracle_decide(inst, s.lambda, {40, 8, 8});
    ASSERT_TRUE(v.feasible);
    EXPECT_LE(objective(inst, v.centers->first, v.centers->second), s.lambda + 1e-9);
  }
}

TEST(Oracle, CandidateValuesAreSortedAndContainOptimum) {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    const Instance inst = fx::small_random(seed, 10, 2, 4, 3);
    const auto vals = oracle_candidate_values(inst);
    EXPECT_TRUE(std::is_sorted(vals.begin(), vals.end()));
    const double l = oracle_solve(inst, {40, 8, 8}).lambda;
    EXPECT_TRUE(std::any_of(vals.begin(), vals.end(), [&](double v) { return std::abs(v - l) < 1e-9; }));
  }
}
