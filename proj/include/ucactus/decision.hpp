#pragma once

// λ-feasibility: can two centers cover every uncertain point within λ?
// A centroid search over the skeleton tree locates the outermost edge or
// cycle that must hold a center; terminal tests then settle feasibility.

#include <algorithm>
#include <cmath>
#include <optional>
#include <utility>
#include <vector>

#include "ucactus/error.hpp"
#include "ucactus/graph.hpp"
#include "ucactus/plf.hpp"
#include "ucactus/uncertain.hpp"

namespace ucactus {

// ---- one-center -------------------------------------------------------------

struct OneCenter {
  GraphPoint point;
  double value = 0.0;
};

// argmin_x max_k mult_k w_k Ed(P_k, x). Every Ed is linear between the merged
// breakpoints of an edge, so each elementary interval is an upper-envelope
// minimisation over lines.
inline OneCenter one_center(const Instance& inst, const std::vector<double>& mult) {
  const CactusGraph& g = inst.graph();
  std::vector<int> active;
  for (int k = 0; k < inst.n(); ++k) {
    if (mult.at(k) * inst.points[k].weight > 0.0) active.push_back(k);
  }
  if (g.edge_count() == 0) {
    OneCenter oc{GraphPoint{-1, 0.0, 0}, 0.0};
    for (int k : active) oc.value = std::max(oc.value, mult[k] * inst.points[k].weight * expected_distance_at_vertex(inst, k, 0));
    return oc;
  }
  if (active.empty()) return {vertex_point(g, 0), 0.0};
  std::optional<OneCenter> best;
  std::vector<Profile> profs(active.size());
  for (int e = 0; e < g.edge_count(); ++e) {
    std::vector<double> xs;
    for (std::size_t j = 0; j < active.size(); ++j) {
      const int k = active[j];
      profs[j] = edge_ed_profile(inst, k, e).scaled(mult[k] * inst.points[k].weight);
      xs.insert(xs.end(), profs[j].xs.begin(), profs[j].xs.end());
    }
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    std::vector<Line> lines(active.size());
    for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
      const double a = xs[i], b = xs[i + 1];
      if (b <= a) continue;
      for (std::size_t j = 0; j < active.size(); ++j) {
        const double ya = profs[j].eval(a), yb = profs[j].eval(b);
        const double slope = (yb - ya) / (b - a);
        lines[j] = Line{slope, ya - slope * a};
      }
      const auto [x, v] = minimize_upper_envelope(lines, a, b);
      const double tol = 1e-12 * std::max(1.0, std::abs(v));
      if (!best || v < best->value - tol) best = OneCenter{GraphPoint{e, x, -1}, v};
    }
  }
  return *best;
}

inline std::vector<double> unit_multipliers(const Instance& inst) { return std::vector<double>(inst.n(), 1.0); }

// ---- probes ---------------------------------------------------------------

enum class ProbeKind { Infeasible, FeasibleSingle, CenterAt, Descend, DescendTwo, PeripheralCycleAndDescend };

// nodes: Descend {x}; DescendTwo {x, y}; PeripheralCycleAndDescend {cycle, x}.
// anchors[i] is the node adjacent to nodes[i] through which the search
// continues (the probed node itself or one of a cycle's hinges).
struct ProbeOutcome {
  ProbeKind kind = ProbeKind::Infeasible;
  std::vector<int> nodes;
  std::vector<int> anchors;
  int center = -1;
  GraphPoint witness;
};

namespace detail {

inline double tolerance(const Instance& inst, double lambda) { return inst.eps * std::max(1.0, lambda); }

// max over positive-weight members of w Ed(P, v); nullopt when none.
inline std::optional<double> load(const Instance& inst, const std::vector<int>& subset, int v) {
  std::optional<double> best;
  for (int k : subset) {
    const double w = inst.points[k].weight;
    if (w <= 0.0) continue;
    const double y = w * expected_distance_at_vertex(inst, k, v);
    if (!best || y > *best) best = y;
  }
  return best;
}

inline void require_vertex_constrained(const Instance& inst) {
  if (!inst.vertex_constrained()) {
    throw Error(ErrorKind::InstanceNotVertexConstrained, "every location must sit on a vertex and every vertex must hold one");
  }
}

}  // namespace detail

inline ProbeOutcome probe_articulation(const Instance& inst, int u, double lambda) {
  const SkeletonTree& tree = inst.cactus.tree;
  if (tree.is_cycle(u)) throw Error(ErrorKind::InternalInvariant, "articulation probe on a cycle node");
  const int v = tree.nodes[u].vertex;
  const double tol = detail::tolerance(inst, lambda);
  const ComponentSums cs = component_sums(inst, u);
  const auto below = detail::load(inst, cs.all_below, v);
  const auto twice = detail::load(inst, cs.double_eq, v);
  ProbeOutcome out;
  if ((below && *below > lambda + tol) || (twice && *twice > lambda + tol)) return out;
  std::vector<int> over;
  bool tight = below && std::abs(*below - lambda) <= tol;
  for (int i = 0; i < static_cast<int>(cs.components.size()); ++i) {
    const auto li = detail::load(inst, cs.exclusive[i], v);
    if (!li) continue;
    if (*li > lambda + tol) over.push_back(i);
    else if (std::abs(*li - lambda) <= tol) tight = true;
  }
  if (over.size() >= 3) return out;
  if (tight) {
    out.kind = ProbeKind::CenterAt;
    out.center = u;
    return out;
  }
  if (over.empty()) {
    out.kind = ProbeKind::FeasibleSingle;
    out.center = u;
    out.witness = vertex_point(inst.graph(), v);
    return out;
  }
  out.kind = over.size() == 2 ? ProbeKind::DescendTwo : ProbeKind::Descend;
  for (int i : over) {
    out.nodes.push_back(cs.components[i].attach);
    out.anchors.push_back(u);
  }
  return out;
}

inline ProbeOutcome probe_cycle(const Instance& inst, int u, double lambda) {
  const SkeletonTree& tree = inst.cactus.tree;
  if (!tree.is_cycle(u)) throw Error(ErrorKind::InternalInvariant, "cycle probe on an articulation node");
  const double tol = detail::tolerance(inst, lambda);
  const ComponentSums cs = component_sums(inst, u);
  ProbeOutcome out;
  std::vector<int> over;
  for (int i = 0; i < static_cast<int>(cs.components.size()); ++i) {
    const int h = cs.components[i].hinge;
    const auto li = detail::load(inst, cs.exclusive[i], tree.nodes[h].vertex);
    if (!li) continue;
    // A point with exactly half its mass beyond the hinge may also be
    // covered on the cycle, so only strict majorities pin a center to h.
    std::vector<int> strict;
    std::set_intersection(cs.exclusive[i].begin(), cs.exclusive[i].end(), cs.p_gt[i].begin(), cs.p_gt[i].end(),
                          std::back_inserter(strict));
    const auto pinned = detail::load(inst, strict, tree.nodes[h].vertex);
    if (pinned && std::abs(*pinned - lambda) <= tol) {
      out.kind = ProbeKind::CenterAt;
      out.center = h;
      return out;
    }
    if (*li > lambda + tol) over.push_back(i);
  }
  if (over.size() > 2) return out;
  if (over.size() == 2) {
    out.kind = ProbeKind::DescendTwo;
    for (int i : over) {
      out.nodes.push_back(cs.components[i].attach);
      out.anchors.push_back(cs.components[i].hinge);
    }
    return out;
  }
  if (over.empty()) {
    out.kind = ProbeKind::Descend;
    out.nodes = {u};
    out.anchors = {u};
    return out;
  }
  const int h = cs.components[over[0]].hinge;
  ProbeOutcome r = probe_articulation(inst, h, lambda);
  if (r.kind == ProbeKind::Descend && r.nodes[0] == u) {
    r.anchors = {u};
  } else if (r.kind == ProbeKind::DescendTwo && (r.nodes[0] == u || r.nodes[1] == u)) {
    const int other = r.nodes[0] == u ? r.nodes[1] : r.nodes[0];
    r.kind = ProbeKind::PeripheralCycleAndDescend;
    r.nodes = {u, other};
    r.anchors = {u, h};
  }
  return r;
}


// ---- terminal tests ---------------------------------------------------------

namespace detail {

inline bool covered(const Instance& inst, int k, const GraphPoint& q, double lambda, double tol) {
  const double w = inst.points[k].weight;
  return w <= 0.0 || w * expected_distance(inst, k, q) <= lambda + tol;
}

// A center at q, the second at the one-center of whatever q leaves uncovered.
inline Verdict complete_with_one_center(const Instance& inst, const GraphPoint& q, double lambda) {
  const double tol = tolerance(inst, lambda);
  std::vector<double> mult(inst.n(), 0.0);
  for (int k = 0; k < inst.n(); ++k) mult[k] = covered(inst, k, q, lambda, tol) ? 0.0 : 1.0;
  const OneCenter oc = one_center(inst, mult);
  Verdict v;
  if (oc.value <= lambda + tol) {
    v.feasible = true;
    v.centers = std::make_pair(q, oc.point);
  }
  return v;
}

inline std::vector<SegmentSet> cycle_coverage(const Instance& inst, int cycle, double lambda) {
  const auto entries = cycle_entries(inst.cactus, cycle);
  const double tol = tolerance(inst, lambda);
  std::vector<SegmentSet> sets;
  sets.reserve(inst.n());
  for (int k = 0; k < inst.n(); ++k) {
    const double w = inst.points[k].weight;
    sets.push_back(coverage_set(cycle_profile(inst, k, cycle, &entries), w, lambda, tol, k));
  }
  return sets;
}

}  // namespace detail

inline Verdict center_at_vertex(const Instance& inst, int v, double lambda) {
  return detail::complete_with_one_center(inst, vertex_point(inst.graph(), v), lambda);
}

// One center sits on out-of-cycle edge e as far from one endpoint as the
// points whose medians lie on that endpoint's side allow; the other center
// is the one-center of the rest. Both orientations are tried.
inline Verdict decide_on_edge(const Instance& inst, int e, double lambda) {
  const Cactus& c = inst.cactus;
  if (c.dec.cycle_of_edge.at(e) >= 0) throw Error(ErrorKind::EdgeInCycle, "edge " + std::to_string(e) + " lies on a cycle");
  const double tol = detail::tolerance(inst, lambda);
  const Edge& ed = c.graph.edge(e);
  for (int side = 0; side < 2; ++side) {
    double reach = ed.length;
    bool ok = true;
    for (int k = 0; k < inst.n() && ok; ++k) {
      const double w = inst.points[k].weight;
      if (w <= 0.0) continue;
      const Profile p = edge_profile(inst, k, e);
      const double y0 = side == 0 ? p.ys.front() : p.ys.back();
      const double slope = (side == 0 ? 1.0 : -1.0) * (p.ys.back() - p.ys.front()) / ed.length;
      // points whose median lies on this side: Ed non-decreasing away from it
      if (slope < -1e-12) continue;
      if (w * y0 > lambda + tol) {
        ok = false;
      } else if (slope > 1e-12) {
        reach = std::min(reach, std::max(0.0, lambda - w * y0) / (w * slope));
      }
    }
    if (!ok) continue;
    reach = std::clamp(reach, 0.0, ed.length);
    const GraphPoint q{e, side == 0 ? reach : ed.length - reach, -1};
    Verdict v = detail::complete_with_one_center(inst, q, lambda);
    if (v.feasible) return v;
  }
  return {};
}

// Both centers on one cycle: stab every coverage arc set with two points.
inline Verdict decide_on_cycle(const Instance& inst, int cycle_node, double lambda) {
  const int cyc = inst.cactus.tree.nodes.at(cycle_node).cycle;
  const CycleInfo& ci = inst.cactus.dec.cycles[cyc];
  const auto sets = detail::cycle_coverage(inst, cyc, lambda);
  Verdict v;
  std::optional<std::pair<double, double>> hit;
  try {
    hit = stab_two(sets);
  } catch (const Error& err) {
    if (err.kind() != ErrorKind::UncoverableSet) throw;
    return v;
  }
  if (!hit) return v;
  v.feasible = true;
  v.centers = std::make_pair(cycle_point(inst.graph(), ci, hit->first), cycle_point(inst.graph(), ci, hit->second));
  return v;
}

namespace detail {

inline std::vector<int> tree_path(const SkeletonTree& tree, int from, int to) {
  std::vector<int> parent(tree.size(), -1);
  std::vector<int> stack{from};
  parent[from] = from;
  while (!stack.empty()) {
    const int x = stack.back();
    stack.pop_back();
    for (auto [y, te] : tree.adjacency[x]) {
      if (parent[y] < 0) {
        parent[y] = x;
        stack.push_back(y);
      }
    }
  }
  std::vector<int> path{to};
  while (path.back() != from) path.push_back(parent[path.back()]);
  std::reverse(path.begin(), path.end());
  return path;
}

// Closest positions of a segment set to `from`, walking clockwise and
// counterclockwise around the cycle.
inline std::vector<double> nearest_around(const SegmentSet& s, double from) {
  std::vector<double> out;
  if (s.empty()) return out;
  std::optional<double> cw, ccw;
  for (const Interval& iv : s.intervals) {
    if (iv.contains(from)) return {from};
    if (iv.lo > from && !cw) cw = iv.lo;
    if (iv.hi < from) ccw = iv.hi;
  }
  out.push_back(cw ? *cw : s.intervals.front().lo);
  out.push_back(ccw ? *ccw : s.intervals.back().hi);
  return out;
}

}  // namespace detail

// One center on each of two cycles. The center on u2 covers some of the
// points near h2 (the hinge facing u1); for each such choice the center on
// u1 is pushed as close to h1 as the rest of the u1-side points allow, and
// u2 must then stab whatever that center misses.
inline Verdict decide_on_two_cycles(const Instance& inst, int u1, int u2, double lambda) {
  const Cactus& c = inst.cactus;
  const SkeletonTree& tree = c.tree;
  if (u1 == u2 || !tree.is_cycle(u1) || !tree.is_cycle(u2)) {
    throw Error(ErrorKind::InternalInvariant, "two-cycle test needs two distinct cycle nodes");
  }
  const std::vector<int> path = detail::tree_path(tree, u1, u2);
  const int h1 = path[1], h2 = path[path.size() - 2];
  const int cyc1 = tree.nodes[u1].cycle, cyc2 = tree.nodes[u2].cycle;
  const CycleInfo& c1 = c.dec.cycles[cyc1];
  const CycleInfo& c2 = c.dec.cycles[cyc2];
  const double p1 = c1.pos[c1.index_of(tree.nodes[h1].vertex)];
  const double p2 = c2.pos[c2.index_of(tree.nodes[h2].vertex)];

  // probability mass outside the u1-component holding u2
  const ComponentSums cs = component_sums(inst, u1);
  int toward = -1;
  for (int i = 0; i < static_cast<int>(cs.components.size()); ++i) {
    if (std::binary_search(cs.components[i].nodes.begin(), cs.components[i].nodes.end(), u2)) toward = i;
  }
  if (toward < 0) throw Error(ErrorKind::InternalInvariant, "second cycle not found beside the first");
  std::vector<int> near_u1;
  for (int k = 0; k < inst.n(); ++k) {
    if (inst.points[k].weight > 0.0 && 1.0 - cs.sums[toward][k] >= 0.5 - inst.eps) near_u1.push_back(k);
  }
  const auto cov1 = detail::cycle_coverage(inst, cyc1, lambda);
  const auto cov2 = detail::cycle_coverage(inst, cyc2, lambda);

  // For points of the u1 side coverable at h2, the arc through h2 on u2.
  std::vector<std::pair<int, std::vector<Interval>>> through_h2;
  for (int k : near_u1) {
    const auto& ivs = cov2[k].intervals;
    auto at = std::find_if(ivs.begin(), ivs.end(), [&](const Interval& iv) { return iv.contains(p2); });
    if (at == ivs.end()) continue;
    std::vector<Interval> arc{*at};
    if (at->lo == 0.0 && ivs.back().hi == c2.perimeter) arc.push_back(ivs.back());
    if (at->hi == c2.perimeter && ivs.front().lo == 0.0) arc.push_back(ivs.front());
    through_h2.emplace_back(k, std::move(arc));
  }
  // One sample per elementary arc cut out by those arcs' endpoints, plus
  // the endpoints themselves (degenerate arcs such as h2 alone).
  std::vector<double> cuts{0.0, p2, c2.perimeter};
  for (const auto& [k, arc] : through_h2) {
    for (const Interval& iv : arc) {
      cuts.push_back(iv.lo);
      cuts.push_back(iv.hi);
    }
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  std::vector<double> ys = cuts;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) ys.push_back(0.5 * (cuts[i] + cuts[i + 1]));

  std::vector<double> xs;
  for (double y : ys) {
    std::vector<char> spared(inst.n(), 0);
    for (const auto& [k, arc] : through_h2) {
      spared[k] = std::any_of(arc.begin(), arc.end(), [&](const Interval& iv) { return iv.contains(y); });
    }
    SegmentSet target{-1, c1.perimeter, true, {{0.0, c1.perimeter}}};
    for (int k : near_u1) {
      if (spared[k]) continue;
      target = intersect(target, cov1[k]);
      if (target.empty()) break;
    }
    for (double x : detail::nearest_around(target, p1)) xs.push_back(x);
  }
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());

  for (double x : xs) {
    const GraphPoint q1 = cycle_point(inst.graph(), c1, x);
    std::vector<SegmentSet> rest;
    for (int k = 0; k < inst.n(); ++k) {
      if (!cov1[k].contains(x)) rest.push_back(cov2[k]);
    }
    if (auto y = stab_one(rest)) {
      Verdict v;
      v.feasible = true;
      v.centers = std::make_pair(q1, cycle_point(inst.graph(), c2, *y));
      return v;
    }
  }
  return {};
}

// ---- centroid search ----------------------------------------------------------

namespace detail {

// Nodes reachable from x without passing through `anchor`.
inline std::vector<int> side_of(const SkeletonTree& tree, int anchor, int x) {
  std::vector<char> seen(tree.size(), 0);
  seen[anchor] = seen[x] = 1;
  std::vector<int> out, stack{x};
  while (!stack.empty()) {
    const int a = stack.back();
    stack.pop_back();
    out.push_back(a);
    for (auto [b, te] : tree.adjacency[a]) {
      if (!seen[b]) {
        seen[b] = 1;
        stack.push_back(b);
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline std::vector<int> restrict_to(const std::vector<int>& side, const std::vector<int>& active, int anchor) {
  std::vector<int> out;
  std::set_intersection(side.begin(), side.end(), active.begin(), active.end(), std::back_inserter(out));
  out.push_back(anchor);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

class DecisionSearch {
 public:
  DecisionSearch(const Instance& inst, double lambda) : inst_(inst), tree_(inst.cactus.tree), lambda_(lambda) {}

  Verdict run() {
    std::vector<int> all(tree_.size());
    for (int i = 0; i < tree_.size(); ++i) all[i] = i;
    Verdict v = search_first(all, std::vector<char>(tree_.size(), 0));
    v.probes = probes_;
    return v;
  }

  int probes() const { return probes_; }

 private:
  const Instance& inst_;
  const SkeletonTree& tree_;
  double lambda_;
  int probes_ = 0;

  ProbeOutcome probe(int node) {
    ++probes_;
    return tree_.is_cycle(node) ? probe_cycle(inst_, node, lambda_) : probe_articulation(inst_, node, lambda_);
  }

  Verdict at_node(int node) { return center_at_vertex(inst_, tree_.nodes[node].vertex, lambda_); }

  Verdict single(const GraphPoint& q) {
    Verdict v;
    v.feasible = true;
    v.centers = std::make_pair(q, q);
    return v;
  }

  // Picks the side of a two-way split to keep searching: one that meets the
  // active set and holds no flagged node, the first in node order otherwise.
  std::pair<std::vector<int>, int> pick_side(const ProbeOutcome& r, const std::vector<int>& active,
                                             const std::vector<char>& flag) {
    std::vector<int> order{0, 1};
    if (r.nodes[1] < r.nodes[0]) std::swap(order[0], order[1]);
    std::optional<std::pair<std::vector<int>, int>> fallback;
    for (int i : order) {
      const auto side = side_of(tree_, r.anchors[i], r.nodes[i]);
      std::vector<int> in;
      std::set_intersection(side.begin(), side.end(), active.begin(), active.end(), std::back_inserter(in));
      if (in.empty()) continue;
      const bool flagged = std::any_of(in.begin(), in.end(), [&](int x) { return flag[x] != 0; });
      auto picked = std::make_pair(restrict_to(side, active, r.anchors[i]), r.anchors[i]);
      if (!flagged) return picked;
      if (!fallback) fallback = std::move(picked);
    }
    if (fallback) return *fallback;
    return {{r.anchors[order[0]]}, r.anchors[order[0]]};
  }

  Verdict search_first(std::vector<int> active, std::vector<char> flag) {
    for (int guard = 0; guard <= tree_.size() + 2; ++guard) {
      if (active.size() == 1) {
        return tree_.is_cycle(active[0]) ? on_cycle(active[0]) : at_node(active[0]);
      }
      if (active.size() == 2) {
        for (int x : active) {
          if (tree_.is_cycle(x)) return on_cycle(x);
        }
        const int te = tree_.tree_edge_between(active[0], active[1]);
        return decide_on_edge(inst_, tree_.tree_edges.at(te).graph_edge, lambda_);
      }
      const int c = centroid(tree_, active);
      const ProbeOutcome r = probe(c);
      switch (r.kind) {
        case ProbeKind::Infeasible: return {};
        case ProbeKind::FeasibleSingle: return single(r.witness);
        case ProbeKind::CenterAt: return at_node(r.center);
        case ProbeKind::PeripheralCycleAndDescend: return on_cycle(c);
        case ProbeKind::Descend:
          if (r.nodes[0] == c) return decide_on_cycle(inst_, c, lambda_);
          active = restrict_to(side_of(tree_, r.anchors[0], r.nodes[0]), active, r.anchors[0]);
          break;
        case ProbeKind::DescendTwo: {
          auto [next, anchor] = pick_side(r, active, flag);
          active = std::move(next);
          flag[anchor] = 1;
          break;
        }
      }
    }
    throw Error(ErrorKind::InternalInvariant, "decision search did not shrink");
  }

  // A cycle node reached as the first search's terminal.
  Verdict on_cycle(int u) {
    const ProbeOutcome r = probe(u);
    std::vector<int> all(tree_.size());
    for (int i = 0; i < tree_.size(); ++i) all[i] = i;
    switch (r.kind) {
      case ProbeKind::Infeasible: return {};
      case ProbeKind::FeasibleSingle: return single(r.witness);
      case ProbeKind::CenterAt: return at_node(r.center);
      case ProbeKind::Descend:
        if (r.nodes[0] == u) return decide_on_cycle(inst_, u, lambda_);
        return search_first(restrict_to(side_of(tree_, r.anchors[0], r.nodes[0]), all, r.anchors[0]),
                            std::vector<char>(tree_.size(), 0));
      case ProbeKind::DescendTwo: {
        std::vector<char> flag(tree_.size(), 0);
        auto [next, anchor] = pick_side(r, all, flag);
        flag[anchor] = 1;
        return search_first(std::move(next), std::move(flag));
      }
      case ProbeKind::PeripheralCycleAndDescend: {
        std::vector<char> flag(tree_.size(), 0);
        flag[r.anchors[1]] = 1;
        return search_second(u, restrict_to(side_of(tree_, r.anchors[1], r.nodes[1]), all, r.anchors[1]), flag);
      }
    }
    return {};
  }

  // Second search: u1 is a cycle holding one center, `active` the subtree
  // hanging off it that holds the other.
  Verdict search_second(int u1, std::vector<int> active, std::vector<char> flag) {
    for (int guard = 0; guard <= tree_.size() + 2; ++guard) {
      if (active.size() == 1) {
        return tree_.is_cycle(active[0]) ? decide_on_two_cycles(inst_, u1, active[0], lambda_) : at_node(active[0]);
      }
      if (active.size() == 2) {
        for (int x : active) {
          if (tree_.is_cycle(x)) return decide_on_two_cycles(inst_, u1, x, lambda_);
        }
        const int te = tree_.tree_edge_between(active[0], active[1]);
        return decide_on_edge(inst_, tree_.tree_edges.at(te).graph_edge, lambda_);
      }
      const int c = centroid(tree_, active);
      const ProbeOutcome r = probe(c);
      switch (r.kind) {
        case ProbeKind::Infeasible: return {};
        case ProbeKind::FeasibleSingle: return single(r.witness);
        case ProbeKind::CenterAt: return at_node(r.center);
        case ProbeKind::PeripheralCycleAndDescend: return decide_on_two_cycles(inst_, u1, c, lambda_);
        case ProbeKind::Descend:
          if (r.nodes[0] == c) return decide_on_two_cycles(inst_, u1, c, lambda_);
          active = restrict_to(side_of(tree_, r.anchors[0], r.nodes[0]), active, r.anchors[0]);
          break;
        case ProbeKind::DescendTwo: {
          auto [next, anchor] = pick_side(r, active, flag);
          active = std::move(next);
          flag[anchor] = 1;
          break;
        }
      }
    }
    throw Error(ErrorKind::InternalInvariant, "decision search did not shrink");
  }
};

}  // namespace detail

// Decides whether two centers can cover every uncertain point within lambda.
// Requires a vertex-constrained instance.
inline Verdict decide(const Instance& inst, double lambda) {
  detail::require_vertex_constrained(inst);
  if (!(lambda >= 0.0)) return {};
  bool any = false;
  for (const auto& p : inst.points) any = any || p.weight > 0.0;
  if (!any) {
    const GraphPoint q = vertex_point(inst.graph(), 0);
    return Verdict{true, std::make_pair(q, q), 0};
  }
  return detail::DecisionSearch(inst, lambda).run();
}

}  // namespace ucactus
