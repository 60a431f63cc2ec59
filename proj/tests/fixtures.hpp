#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <string>

#include "ucactus/ucactus.hpp"

namespace fx {

using namespace ucactus;

// Triangle a-b-c with pendant edge (c,d,2); P1 split evenly over a and b,
// P2 sits on d.
inline Instance tri() {
  CactusGraph g;
  for (const char* s : {"a", "b", "c", "d"}) g.add_vertex(s);
  g.add_edge(0, 1, 1);
  g.add_edge(1, 2, 1);
  g.add_edge(2, 0, 1);
  g.add_edge(2, 3, 2);
  std::vector<UncertainPoint> pts{{"P1", 1.0, {{0, -1, 0.0, 0.5}, {1, -1, 0.0, 0.5}}},
                                  {"P2", 1.0, {{3, -1, 0.0, 1.0}}}};
  return make_instance(std::move(g), std::move(pts));
}

// TRI with its empty vertex c padded, as the decision procedure expects.
inline Instance tri_reduced() { return reduce_instance(tri()).instance; }

inline std::string sample_path(const std::string& name) { return std::string(UCACTUS_SAMPLES) + "/" + name; }

// Small random instance within the oracle's reach.
inline Instance small_random(std::uint64_t seed, int max_vertices = 12, int max_cycles = 3, int max_n = 5, int max_m = 3,
                             double edge_rate = 0.0) {
  std::mt19937_64 rng(seed * 7919 + 17);
  auto uniform = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  GenParams p;
  p.seed = seed;
  p.vertex_count = uniform(1, max_vertices);
  p.cycle_count = uniform(0, std::min(max_cycles, (p.vertex_count - 1) / 2));
  p.n = uniform(1, max_n);
  p.m = uniform(1, std::min(max_m, p.vertex_count));
  p.max_length = 10;
  p.max_weight = 5;
  p.edge_location_rate = edge_rate;
  return generate_instance(p);
}

}  // namespace fx
