#include <gtest/gtest.h>

#include <random>

#include "fixtures.hpp"

using namespace ucactus;

namespace {

bool hits_all(const std::vector<SegmentSet>& sets, double p, double q) {
  for (const auto& s : sets) {
    if (!s.contains(p) && !s.contains(q)) return false;
  }
  return true;
}

// Every pair of interval endpoints.
bool brute_two(const std::vector<SegmentSet>& sets) {
  std::vector<double> xs;
  for (const auto& s : sets)
    for (const auto& iv : s.intervals) {
      xs.push_back(iv.lo);
      xs.push_back(iv.hi);
    }
  for (double p : xs)
    for (double q : xs)
      if (hits_all(sets, p, q)) return true;
  return false;
}

std::vector<SegmentSet> random_family(std::mt19937_64& rng, int n, int max_intervals, double L) {
  std::uniform_int_distribution<int> cnt(1, max_intervals);
  std::uniform_int_distribution<int> grid(0, 40);
  std::vector<SegmentSet> sets(n);
  for (int k = 0; k < n; ++k) {
    sets[k].owner = k;
    sets[k].length = L;
    std::vector<int> cuts;
    for (int i = 0; i < 2 * cnt(rng); ++i) cuts.push_back(grid(rng));
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    for (std::size_t i = 0; i + 1 < cuts.size(); i += 2) sets[k].intervals.push_back({cuts[i] * L / 40, cuts[i + 1] * L / 40});
    if (sets[k].intervals.empty()) sets[k].intervals.push_back({cuts[0] * L / 40, cuts[0] * L / 40});
  }
  return sets;
}

}  // namespace

TEST(Profile, EvalAndPieces) {
  const Profile p = make_profile(2.0, false, {1.0}, [](double x) { return std::abs(x - 1.0); });
  EXPECT_EQ(p.breakpoint_count(), 3);
  EXPECT_DOUBLE_EQ(p.eval(0.5), 0.5);
  EXPECT_DOUBLE_EQ(p.eval(1.5), 0.5);
  EXPECT_DOUBLE_EQ(p.min_value(), 0.0);
  EXPECT_EQ(p.pieces().size(), 2u);
  EXPECT_DOUBLE_EQ(p.scaled(3.0).eval(2.0), 3.0);
  EXPECT_DOUBLE_EQ(*p.first_at_most(0.25), 0.75);
  EXPECT_FALSE(p.first_at_most(-1.0).has_value());
}

TEST(Profile, CyclicEndsAgree) {
  const Profile p = make_profile(4.0, true, {2.0}, [](double x) { return std::min(x, 4.0 - x); });
  EXPECT_DOUBLE_EQ(p.eval(0.0), p.eval(4.0));
  EXPECT_DOUBLE_EQ(p.eval(2.0), 2.0);
}

TEST(CoverageSet, TriPendantEdge) {
  const Instance inst = fx::tri();
  const Profile prof = edge_profile(inst, 1, 3);
  EXPECT_DOUBLE_EQ(prof.eval(0.0), 2.0);
  EXPECT_DOUBLE_EQ(prof.eval(2.0), 0.0);
  const SegmentSet s = coverage_set(prof, 1.0, 1.0, 0.0);
  ASSERT_EQ(s.intervals.size(), 1u);
  EXPECT_NEAR(s.intervals[0].lo, 1.0, 1e-12);
  EXPECT_NEAR(s.intervals[0].hi, 2.0, 1e-12);
}

TEST(CoverageSet, ZeroWeightCoversEverything) {
  const Profile p = make_profile(3.0, false, {}, [](double x) { return 10.0 + x; });
  const SegmentSet s = coverage_set(p, 0.0, 1.0);
  ASSERT_EQ(s.intervals.size(), 1u);
  EXPECT_DOUBLE_EQ(s.intervals[0].lo, 0.0);
  EXPECT_DOUBLE_EQ(s.intervals[0].hi, 3.0);
  EXPECT_TRUE(coverage_set(p, 1.0, 5.0).empty());
}

TEST(CoverageSet, MatchesPointwiseTest) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 3.0);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> bx{u(rng), u(rng), u(rng)}, by{u(rng), u(rng), u(rng), u(rng), u(rng)};
    std::sort(bx.begin(), bx.end());
    std::vector<double> xs{0.0, bx[0], bx[1], bx[2], 3.0};
    Profile p;
    p.length = 3.0;
    p.xs = xs;
    p.ys = by;
    const double lambda = u(rng);
    const SegmentSet s = coverage_set(p, 1.0, lambda, 0.0);
    for (int i = 0; i <= 300; ++i) {
      const double x = 3.0 * i / 300;
      const double y = p.eval(x);
      if (y < lambda - 1e-9) EXPECT_TRUE(s.contains(x)) << trial << " " << x;
      if (y > lambda + 1e-9) EXPECT_FALSE(s.contains(x)) << trial << " " << x;
    }
  }
}

TEST(Intersect, DisjointAndOverlap) {
  SegmentSet a{0, 10, false, {{0, 2}, {4, 6}}};
  SegmentSet b{1, 10, false, {{1, 5}}};
  const SegmentSet c = intersect(a, b);
  ASSERT_EQ(c.intervals.size(), 2u);
  EXPECT_DOUBLE_EQ(c.intervals[0].lo, 1);
  EXPECT_DOUBLE_EQ(c.intervals[0].hi, 2);
  EXPECT_DOUBLE_EQ(c.intervals[1].lo, 4);
  EXPECT_DOUBLE_EQ(c.intervals[1].hi, 5);
  EXPECT_TRUE(intersect(a, SegmentSet{2, 10, false, {{7, 9}}}).empty());
}

TEST(StabOne, CommonPoint) {
  std::vector<SegmentSet> sets{{0, 10, false, {{0, 3}}}, {1, 10, false, {{2, 5}}}, {2, 10, false, {{1, 2.5}, {8, 9}}}};
  const auto x = stab_one(sets);
  ASSERT_TRUE(x);
  for (const auto& s : sets) EXPECT_TRUE(s.contains(*x));
  sets.push_back({3, 10, false, {{6, 7}}});
  EXPECT_FALSE(stab_one(sets));
}

TEST(StabTwo, TwoClusters) {
  std::vector<SegmentSet> sets{{0, 10, false, {{0, 1}}}, {1, 10, false, {{0.5, 2}}}, {2, 10, false, {{8, 9}}}};
  const auto r = stab_two(sets);
  ASSERT_TRUE(r);
  EXPECT_TRUE(hits_all(sets, r->first, r->second));
  sets.push_back({3, 10, false, {{4, 5}}});
  EXPECT_FALSE(stab_two(sets));
}

TEST(StabTwo, EmptySetThrows) {
  std::vector<SegmentSet> sets{{0, 10, false, {{0, 1}}}, {1, 10, false, {}}};
  try {
    stab_two(sets);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::UncoverableSet);
  }
}

TEST(StabTwo, AgreesWithEndpointPairSearch) {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 400; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 8);
    const auto sets = random_family(rng, n, 4, 10.0);
    const auto r = stab_two(sets);
    EXPECT_EQ(r.has_value(), brute_two(sets)) << trial;
    if (r) EXPECT_TRUE(hits_all(sets, r->first, r->second)) << trial;
  }
}

TEST(UpperEnvelope, MatchesDenseSampling) {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<Line> lines;
    for (int i = 0; i < 1 + trial % 5; ++i) lines.push_back({u(rng), u(rng)});
    const auto [x, v] = minimize_upper_envelope(lines, 0.0, 2.0);
    auto g = [&](double t) {
      double m = -1e300;
      for (const auto& l : lines) m = std::max(m, l.at(t));
      return m;
    };
    EXPECT_NEAR(g(x), v, 1e-9);
    for (int i = 0; i <= 400; ++i) EXPECT_LE(v, g(2.0 * i / 400) + 1e-9);
  }
}
