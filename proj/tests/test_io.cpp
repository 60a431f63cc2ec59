#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "fixtures.hpp"

using namespace ucactus;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

ErrorKind parse_error_kind(const std::string& text) {
  try {
    parse_instance(text);
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::InternalInvariant;
}

}  // namespace

TEST(Parse, TriSample) {
  const Instance inst = parse_instance(slurp(fx::sample_path("tri.json")));
  EXPECT_EQ(inst.graph().vertex_count(), 4);
  EXPECT_EQ(inst.graph().edge_count(), 4);
  EXPECT_EQ(inst.n(), 2);
  EXPECT_EQ(inst.cactus.dec.cycles.size(), 1u);
  EXPECT_NEAR(solve(inst).lambda, 0.5, 1e-9);
}

TEST(Parse, Errors) {
  EXPECT_EQ(parse_error_kind("{not json"), ErrorKind::ParseError);
  EXPECT_EQ(parse_error_kind(R"({"vertices": ["a"], "edges": 3, "points": []})"), ErrorKind::ParseError);
  EXPECT_EQ(parse_error_kind(R"({"vertices": ["a", "b"], "edges": [["a", "b", 1]],
    "points": [{"id": "P", "locations": [{"vertex": "a", "p": 0.5}, {"vertex": "b", "p": 0.6}]}]})"),
            ErrorKind::ValidationError);
  EXPECT_EQ(parse_error_kind(R"({"vertices": ["a"], "edges": [["a", "z", 1]], "points": []})"), ErrorKind::ValidationError);
  EXPECT_EQ(parse_error_kind(R"({"vertices": ["a", "b", "c"], "edges": [["a", "b", 1]],
    "points": [{"id": "P", "locations": [{"vertex": "a", "p": 1}]}]})"),
            ErrorKind::ValidationError);
}

TEST(Parse, SingleVertexNoEdges) {
  const Instance inst = parse_instance(R"({"vertices": ["a"], "edges": [],
    "points": [{"id": "P", "weight": 2, "locations": [{"vertex": "a", "p": 1}]}]})");
  EXPECT_EQ(inst.graph().vertex_count(), 1);
  EXPECT_DOUBLE_EQ(solve(inst).lambda, 0.0);
}

TEST(Parse, EpsOverride) {
  const std::string text = R"({"vertices": ["a", "b"], "edges": [["a", "b", 1]], "eps": 0.001,
    "points": [{"id": "P", "locations": [{"vertex": "a", "p": 0.5}, {"vertex": "b", "p": 0.5004}]}]})";
  EXPECT_DOUBLE_EQ(parse_instance(text).eps, 0.001);
  EXPECT_DOUBLE_EQ(parse_instance(text, 0.01).eps, 0.01);
}

TEST(RoundTrip, Instances) {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    const Instance inst = fx::small_random(seed, 14, 3, 4, 3, 0.3);
    const std::string once = emit_instance(inst);
    const Instance back = parse_instance(once);
    EXPECT_EQ(emit_instance(back), once);
    EXPECT_EQ(back.graph().vertex_count(), inst.graph().vertex_count());
    EXPECT_EQ(back.n(), inst.n());
    EXPECT_NEAR(solve(back).lambda, solve(inst).lambda, 1e-12);
  }
}

TEST(RoundTrip, Solutions) {
  const Instance inst = fx::tri();
  const Solution s = solve(inst);
  const json j = json::parse(emit_solution(inst, s));
  EXPECT_DOUBLE_EQ(j.at("lambda_star").get<double>(), 0.5);
  ASSERT_EQ(j.at("centers").size(), 2u);
  ASSERT_EQ(j.at("assignments").size(), 2u);
  for (const auto& a : j.at("assignments")) EXPECT_LE(a.at("value").get<double>(), 0.5 + 1e-12);
  EXPECT_EQ(emit_solution(inst, s), j.dump(2));
}

TEST(Emit, InfeasibleVerdictHasNoCenters) {
  const Instance inst = fx::tri_reduced();
  const json j = json::parse(emit_verdict(inst, 0.4, decide(inst, 0.4)));
  EXPECT_FALSE(j.at("feasible").get<bool>());
  EXPECT_FALSE(j.contains("centers"));
}

TEST(Emit, SinglePointHasEqualCenters) {
  CactusGraph g;
  g.add_vertex("a");
  g.add_vertex("b");
  g.add_edge(0, 1, 2);
  const Instance inst = make_instance(std::move(g), {{"P", 1.0, {{0, -1, 0.0, 0.5}, {1, -1, 0.0, 0.5}}}});
  const json j = json::parse(emit_solution(inst, solve(inst)));
  EXPECT_DOUBLE_EQ(j.at("lambda_star").get<double>(), 1.0);
}

TEST(Emit, TwelveSignificantDigits) {
  EXPECT_DOUBLE_EQ(round12(1.0 / 3.0), 0.333333333333);
  EXPECT_DOUBLE_EQ(round12(2.5), 2.5);
}

TEST(Generate, DeterministicPerSeed) {
  GenParams p;
  p.seed = 42;
  p.vertex_count = 10;
  p.cycle_count = 2;
  p.n = 3;
  p.m = 2;
  EXPECT_EQ(emit_instance(generate_instance(p)), emit_instance(generate_instance(p)));
  p.seed = 43;
  const Instance other = generate_instance(p);
  EXPECT_EQ(other.cactus.dec.cycles.size(), 2u);
}

TEST(Generate, TreesAndValidity) {
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    GenParams p;
    p.seed = seed;
    p.vertex_count = 5 + static_cast<int>(seed % 20);
    p.cycle_count = static_cast<int>(seed % 3);
    p.m = 1 + static_cast<int>(seed % 4);
    const Instance inst = generate_instance(p);
    EXPECT_EQ(static_cast<int>(inst.cactus.dec.cycles.size()), p.cycle_count);
    for (const auto& pt : inst.points) {
      double sum = 0.0;
      for (const auto& l : pt.locations) {
        sum += l.prob;
        EXPECT_DOUBLE_EQ(l.prob * 8, std::round(l.prob * 8));
      }
      EXPECT_DOUBLE_EQ(sum, 1.0);
    }
  }
  GenParams tree;
  tree.cycle_count = 0;
  EXPECT_TRUE(generate_instance(tree).cactus.dec.cycles.empty());
}

TEST(Generate, RejectsInfeasibleParams) {
  GenParams p;
  p.vertex_count = 3;
  p.cycle_count = 5;
  try {
    generate_instance(p);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::InfeasibleParams);
  }
}
