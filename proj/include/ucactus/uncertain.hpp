#pragma once

// Uncertain points over a cactus: expected distances, the two-center
// objective, per-component probability sums, expected-distance profiles
// along edges and cycles, and medians.

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ucactus/error.hpp"
#include "ucactus/graph.hpp"
#include "ucactus/plf.hpp"

namespace ucactus {

inline constexpr double kDefaultEps = 1e-9;

// A location is either a vertex or an (edge, offset) position; reduced
// instances only hold vertex locations.
struct Location {
  int vertex = -1;
  int edge = -1;
  double t = 0.0;
  double prob = 0.0;

  bool at_vertex() const { return vertex >= 0; }
};

struct UncertainPoint {
  std::string id;
  double weight = 1.0;
  std::vector<Location> locations;
};

struct Instance {
  Cactus cactus;
  std::vector<UncertainPoint> points;
  double eps = kDefaultEps;

  const CactusGraph& graph() const { return cactus.graph; }
  int n() const { return static_cast<int>(points.size()); }

  // Every location at a vertex and every vertex holding a location.
  bool vertex_constrained() const {
    std::vector<char> held(graph().vertex_count(), 0);
    for (const auto& p : points) {
      for (const auto& l : p.locations) {
        if (!l.at_vertex()) return false;
        held[l.vertex] = 1;
      }
    }
    return std::all_of(held.begin(), held.end(), [](char c) { return c != 0; });
  }
};

inline GraphPoint location_point(const CactusGraph& g, const Location& l) {
  return l.at_vertex() ? vertex_point(g, l.vertex) : GraphPoint{l.edge, l.t, -1};
}

inline void validate_points(const CactusGraph& g, const std::vector<UncertainPoint>& points, double eps) {
  if (points.empty()) throw Error(ErrorKind::InvalidInstance, "instance has no uncertain points");
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto& p = points[i];
    const std::string where = "point '" + p.id + "'";
    if (!(p.weight >= 0.0) || !std::isfinite(p.weight)) throw Error(ErrorKind::InvalidInstance, where + ": negative weight");
    if (p.locations.empty()) throw Error(ErrorKind::InvalidInstance, where + ": no locations");
    double sum = 0.0;
    for (const auto& l : p.locations) {
      if (!(l.prob >= 0.0 && l.prob <= 1.0)) throw Error(ErrorKind::InvalidInstance, where + ": probability outside [0,1]");
      if (l.at_vertex()) {
        if (l.vertex >= g.vertex_count()) throw Error(ErrorKind::InvalidInstance, where + ": unknown vertex");
      } else {
        if (l.edge < 0 || l.edge >= g.edge_count()) throw Error(ErrorKind::InvalidInstance, where + ": unknown edge");
        if (l.t < 0.0 || l.t > g.edge(l.edge).length) throw Error(ErrorKind::InvalidInstance, where + ": offset outside edge");
      }
      sum += l.prob;
    }
    if (std::abs(sum - 1.0) > eps) {
      throw Error(ErrorKind::InvalidInstance, where + ": probabilities sum to " + std::to_string(sum));
    }
  }
}

inline Instance make_instance(CactusGraph g, std::vector<UncertainPoint> points, double eps = kDefaultEps) {
  Instance inst;
  inst.cactus = Cactus::build(std::move(g));
  validate_points(inst.graph(), points, eps);
  inst.points = std::move(points);
  inst.eps = eps;
  return inst;
}

inline double expected_distance(const Instance& inst, int k, const GraphPoint& q) {
  double sum = 0.0;
  for (const auto& l : inst.points.at(k).locations) {
    if (l.prob == 0.0) continue;
    const double d = l.at_vertex() ? vertex_distance(inst.cactus, l.vertex, q)
                                   : point_distance(inst.cactus, location_point(inst.graph(), l), q);
    sum += l.prob * d;
  }
  return sum;
}

inline double expected_distance_at_vertex(const Instance& inst, int k, int v) {
  double sum = 0.0;
  for (const auto& l : inst.points[k].locations) {
    sum += l.at_vertex() ? l.prob * inst.cactus.dist(l.vertex, v)
                         : l.prob * point_distance(inst.cactus, location_point(inst.graph(), l), vertex_point(inst.graph(), v));
  }
  return sum;
}

inline double objective(const Instance& inst, const GraphPoint& q1, const GraphPoint& q2) {
  double worst = 0.0;
  for (int k = 0; k < inst.n(); ++k) {
    const double w = inst.points[k].weight;
    if (w == 0.0) continue;
    worst = std::max(worst, w * std::min(expected_distance(inst, k, q1), expected_distance(inst, k, q2)));
  }
  return worst;
}

// Λ(subset, q); nullopt for an empty subset.
inline std::optional<double> group_eccentricity(const Instance& inst, const std::vector<int>& subset, const GraphPoint& q) {
  std::optional<double> best;
  for (int k : subset) {
    const double v = inst.points.at(k).weight * expected_distance(inst, k, q);
    if (!best || v > *best) best = v;
  }
  return best;
}

// Probability sums of every uncertain point over the split components of a
// skeleton node, and the subsets derived from them.
struct ComponentSums {
  int node = -1;
  std::vector<Component> components;
  std::vector<std::vector<double>> sums;  // sums[i][k]
  std::vector<double> at_node;            // mass on the node (or H-subtree) itself
  std::vector<std::vector<int>> p_gt;     // sum > 0.5
  std::vector<std::vector<int>> p_eq;     // sum == 0.5
  std::vector<std::vector<int>> exclusive;
  std::vector<int> all_below;             // every component sum < 0.5
  std::vector<int> double_eq;             // == 0.5 in two components
};

inline ComponentSums component_sums(const Instance& inst, int node) {
  const SkeletonTree& tree = inst.cactus.tree;
  ComponentSums cs;
  cs.node = node;
  cs.components = split_components(tree, inst.cactus.dec, node);
  const int s = static_cast<int>(cs.components.size());
  const int n = inst.n();
  std::vector<int> comp_of(tree.size(), -1);
  for (int i = 0; i < s; ++i) {
    for (int x : cs.components[i].nodes) comp_of[x] = i;
  }
  cs.sums.assign(s, std::vector<double>(n, 0.0));
  cs.at_node.assign(n, 0.0);
  for (int k = 0; k < n; ++k) {
    for (const auto& l : inst.points[k].locations) {
      if (!l.at_vertex()) throw Error(ErrorKind::InstanceNotVertexConstrained, "component sums need vertex locations");
      const int c = comp_of[tree.owner[l.vertex]];
      if (c >= 0) {
        cs.sums[c][k] += l.prob;
      } else {
        cs.at_node[k] += l.prob;
      }
    }
  }
  const double eps = inst.eps;
  cs.p_gt.assign(s, {});
  cs.p_eq.assign(s, {});
  cs.exclusive.assign(s, {});
  for (int k = 0; k < n; ++k) {
    int eq_count = 0, ge_comp = -1;
    bool any_ge = false;
    for (int i = 0; i < s; ++i) {
      const double v = cs.sums[i][k];
      if (v > 0.5 + eps) {
        cs.p_gt[i].push_back(k);
        any_ge = true;
        ge_comp = i;
      } else if (v >= 0.5 - eps) {
        cs.p_eq[i].push_back(k);
        any_ge = true;
        ++eq_count;
        ge_comp = i;
      }
    }
    if (!any_ge) {
      cs.all_below.push_back(k);
    } else if (eq_count >= 2) {
      cs.double_eq.push_back(k);
    } else {
      cs.exclusive[ge_comp].push_back(k);
    }
  }
  return cs;
}

// Outcome of a feasibility test; witnesses accompany every feasible verdict.
struct Verdict {
  bool feasible = false;
  std::optional<std::pair<GraphPoint, GraphPoint>> centers;
  int probes = 0;
};

struct Solution {
  double lambda = 0.0;
  GraphPoint q1;
  GraphPoint q2;
};

// ---- expected-distance profiles ------------------------------------------

// Ed(P_k, ·) along any edge, parameterised from edge.u. Each vertex location
// contributes min(t + d(p,u), L - t + d(p,v)), with one breakpoint.
inline Profile edge_ed_profile(const Instance& inst, int k, int e) {
  const Edge& ed = inst.graph().edge(e);
  const double L = ed.length;
  std::vector<double> bps;
  for (const auto& l : inst.points[k].locations) {
    if (!l.at_vertex()) {
      if (l.edge == e) bps.push_back(l.t);
      const GraphPoint p = location_point(inst.graph(), l);
      const double du = point_distance(inst.cactus, p, vertex_point(inst.graph(), ed.u));
      const double dv = point_distance(inst.cactus, p, vertex_point(inst.graph(), ed.v));
      bps.push_back(0.5 * (L + dv - du));
      continue;
    }
    bps.push_back(0.5 * (L + inst.cactus.dist(l.vertex, ed.v) - inst.cactus.dist(l.vertex, ed.u)));
  }
  return make_profile(L, false, std::move(bps), [&](double t) { return expected_distance(inst, k, GraphPoint{e, t, -1}); });
}

// Affine profile on an out-of-cycle edge: Ed(u) + (2F - 1) t with F the
// probability sum on the u side.
inline Profile edge_profile(const Instance& inst, int k, int e) {
  const Cactus& c = inst.cactus;
  if (c.dec.cycle_of_edge.at(e) >= 0) throw Error(ErrorKind::EdgeInCycle, "edge " + std::to_string(e) + " lies on a cycle");
  const Edge& ed = c.graph.edge(e);
  std::vector<char> side(c.graph.vertex_count(), 0);
  std::vector<int> stack{ed.u};
  side[ed.u] = 1;
  while (!stack.empty()) {
    const int v = stack.back();
    stack.pop_back();
    for (int f : c.graph.incident(v)) {
      if (f == e) continue;
      const int w = c.graph.other(f, v);
      if (!side[w]) {
        side[w] = 1;
        stack.push_back(w);
      }
    }
  }
  double F = 0.0;
  for (const auto& l : inst.points[k].locations) {
    if (!l.at_vertex()) throw Error(ErrorKind::InstanceNotVertexConstrained, "edge_profile needs vertex locations");
    if (side[l.vertex]) F += l.prob;
  }
  const double y0 = expected_distance_at_vertex(inst, k, ed.u);
  Profile p;
  p.length = ed.length;
  p.xs = {0.0, ed.length};
  p.ys = {y0, y0 + (2.0 * F - 1.0) * ed.length};
  return p;
}

// Entry vertex on a cycle for every graph vertex (the cycle vertex nearest
// to it) together with the distance to it.
inline std::vector<std::pair<int, double>> cycle_entries(const Cactus& c, int cycle) {
  const CycleInfo& ci = c.dec.cycles.at(cycle);
  std::vector<std::pair<int, double>> out(c.graph.vertex_count(), {-1, kInf});
  for (int v = 0; v < c.graph.vertex_count(); ++v) {
    for (int i = 0; i < ci.size(); ++i) {
      const double d = c.dist(v, ci.vertices[i]);
      if (d < out[v].second) out[v] = {i, d};
    }
  }
  return out;
}

// Ed(P_k, ·) around a cycle, parameterised by perimeter position. A location
// reaches the cycle through its entry vertex, then along the shorter arc.
inline Profile cycle_profile(const Instance& inst, int k, int cycle,
                             const std::vector<std::pair<int, double>>* entries = nullptr) {
  const CycleInfo& ci = inst.cactus.dec.cycles.at(cycle);
  std::vector<std::pair<int, double>> local;
  if (!entries) {
    local = cycle_entries(inst.cactus, cycle);
    entries = &local;
  }
  const double L = ci.perimeter;
  struct Term {
    double prob, base, at;
  };
  std::vector<Term> terms;
  std::vector<double> bps(ci.pos.begin(), ci.pos.end());
  for (const auto& l : inst.points[k].locations) {
    if (!l.at_vertex()) throw Error(ErrorKind::InstanceNotVertexConstrained, "cycle_profile needs vertex locations");
    if (l.prob == 0.0) continue;
    const auto [idx, base] = (*entries)[l.vertex];
    const double at = ci.pos[idx];
    terms.push_back({l.prob, base, at});
    bps.push_back(at);
    bps.push_back(std::fmod(at + 0.5 * L, L));
  }
  return make_profile(L, true, std::move(bps), [&](double x) {
    double sum = 0.0;
    for (const Term& t : terms) {
      const double d = std::abs(x - t.at);
      sum += t.prob * (t.base + std::min(d, L - d));
    }
    return sum;
  });
}

// ---- median ---------------------------------------------------------------

namespace detail {

// Lexicographically smallest (edge, offset) minimiser of Ed(P_k, ·), value
// being its minimum up to tolerance.
inline GraphPoint canonical_minimizer(const Instance& inst, int k, double value) {
  const CactusGraph& g = inst.graph();
  if (g.edge_count() == 0) return GraphPoint{-1, 0.0, 0};
  const double target = value + inst.eps * std::max(1.0, std::abs(value));
  for (int e = 0; e < g.edge_count(); ++e) {
    const Profile p = edge_ed_profile(inst, k, e);
    const double low = p.min_value();
    if (low > target) continue;
    // the minimum of a piecewise-linear profile sits on a breakpoint
    for (std::size_t i = 0; i < p.xs.size(); ++i) {
      if (p.ys[i] <= low) return GraphPoint{e, p.xs[i], -1};
    }
  }
  throw Error(ErrorKind::InternalInvariant, "median value not attained");
}

}  // namespace detail

struct MedianResult {
  GraphPoint point;
  double value = 0.0;
};

// Walks the skeleton toward the side holding more than half of P_k's mass;
// stops at an articulation vertex, a hinge (mass exactly one half beyond it)
// or a cycle (all sides below one half), where the profile is minimised.
inline MedianResult median(const Instance& inst, int k) {
  const SkeletonTree& tree = inst.cactus.tree;
  const double eps = inst.eps;
  int node = tree.owner[inst.points.at(k).locations.front().vertex >= 0 ? inst.points[k].locations.front().vertex : 0];
  double value = kInf;
  for (int guard = 0; guard <= tree.size(); ++guard) {
    const ComponentSums cs = component_sums(inst, node);
    int heavier = -1, half = -1;
    for (int i = 0; i < static_cast<int>(cs.components.size()); ++i) {
      if (cs.sums[i][k] > 0.5 + eps) heavier = i;
      else if (cs.sums[i][k] >= 0.5 - eps && half < 0) half = i;
    }
    if (heavier >= 0) {
      node = cs.components[heavier].attach;
      continue;
    }
    if (!tree.is_cycle(node)) {
      value = expected_distance_at_vertex(inst, k, tree.nodes[node].vertex);
    } else if (half >= 0) {
      value = expected_distance_at_vertex(inst, k, tree.nodes[cs.components[half].hinge].vertex);
    } else {
      value = cycle_profile(inst, k, tree.nodes[node].cycle).min_value();
    }
    break;
  }
  if (value == kInf) throw Error(ErrorKind::InternalInvariant, "median descent did not terminate");
  return {detail::canonical_minimizer(inst, k, value), value};
}

}  // namespace ucactus
