#pragma once

// Turns an arbitrary instance into a vertex-constrained one: locations sit on
// vertices and every vertex holds at least one location. Empty pendant
// parts are pruned, empty cycles and paths shortcut. Points on the reduced
// graph lift back to the original.

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "ucactus/error.hpp"
#include "ucactus/graph.hpp"
#include "ucactus/uncertain.hpp"

namespace ucactus {

// A stretch of an original edge, walked from offset `a` to offset `b`.
struct EdgePiece {
  int edge = -1;
  double a = 0.0;
  double b = 0.0;
  double length() const { return std::abs(b - a); }
};

struct LiftMap {
  std::vector<std::vector<EdgePiece>> edge_pieces;  // per reduced edge, from its u to its v
  std::vector<GraphPoint> vertex_point;             // per reduced vertex, on the original graph
};

struct ReducedInstance {
  Instance instance;
  LiftMap lift;
};

namespace detail {

inline std::vector<EdgePiece> reversed(std::vector<EdgePiece> chain) {
  std::reverse(chain.begin(), chain.end());
  for (auto& p : chain) std::swap(p.a, p.b);
  return chain;
}

struct WorkGraph {
  struct WEdge {
    int u, v;
    double length;
    std::vector<EdgePiece> chain;
    bool alive = true;
  };
  std::vector<std::string> labels;
  std::vector<GraphPoint> origin;
  std::vector<char> alive;
  std::vector<int> held;  // number of locations per vertex
  std::vector<WEdge> edges;

  int add_vertex(std::string label, GraphPoint where) {
    labels.push_back(std::move(label));
    origin.push_back(where);
    alive.push_back(1);
    held.push_back(0);
    return static_cast<int>(labels.size()) - 1;
  }

  std::vector<int> incident(int v) const {
    std::vector<int> out;
    for (int e = 0; e < static_cast<int>(edges.size()); ++e) {
      if (edges[e].alive && (edges[e].u == v || edges[e].v == v)) out.push_back(e);
    }
    return out;
  }

  // chain of e walked starting from endpoint `from`
  std::vector<EdgePiece> chain_from(int e, int from) const {
    return edges[e].u == from ? edges[e].chain : reversed(edges[e].chain);
  }

  bool adjacent(int a, int b) const {
    for (const auto& e : edges) {
      if (e.alive && ((e.u == a && e.v == b) || (e.u == b && e.v == a))) return true;
    }
    return false;
  }

  // Snapshot as a CactusGraph over alive vertices/edges.
  CactusGraph snapshot(std::vector<int>& vid, std::vector<int>& eid) const {
    CactusGraph g;
    vid.assign(labels.size(), -1);
    eid.clear();
    for (int v = 0; v < static_cast<int>(labels.size()); ++v) {
      if (alive[v]) vid[v] = g.add_vertex(labels[v]);
    }
    for (int e = 0; e < static_cast<int>(edges.size()); ++e) {
      if (!edges[e].alive) continue;
      g.add_edge(vid[edges[e].u], vid[edges[e].v], edges[e].length);
      eid.push_back(e);
    }
    return g;
  }
};

inline std::string format_offset(double t) {
  std::ostringstream os;
  os.precision(12);
  os << t;
  return os.str();
}

// One simplification step; false when nothing applies.
inline bool simplify_once(WorkGraph& w) {
  std::vector<int> vid, eid;
  const CactusGraph g = w.snapshot(vid, eid);
  std::vector<int> back(g.vertex_count());
  for (int v = 0; v < static_cast<int>(vid.size()); ++v) {
    if (vid[v] >= 0) back[vid[v]] = v;
  }
  if (g.vertex_count() <= 1) return false;
  // empty pendant vertex
  for (int v = 0; v < g.vertex_count(); ++v) {
    if (g.degree(v) == 1 && w.held[back[v]] == 0) {
      w.alive[back[v]] = 0;
      w.edges[eid[g.incident(v)[0]]].alive = false;
      return true;
    }
  }
  const CycleDecomposition dec = validate_cactus(g);
  for (const CycleInfo& c : dec.cycles) {
    std::vector<int> hinges;
    bool empty = true;
    for (int v : c.vertices) {
      if (dec.vertex_class[v] == VertexClass::Hinge) hinges.push_back(v);
      else if (w.held[back[v]] > 0) empty = false;
    }
    if (!empty || hinges.empty() || hinges.size() > 2) continue;
    std::vector<int> bypass;
    if (hinges.size() == 2) {
      // walk the shorter arc from the first hinge to the second
      const int i0 = c.index_of(hinges[0]), i1 = c.index_of(hinges[1]);
      const double fwd = c.pos[i1] - c.pos[i0];
      const bool forward = fwd <= c.perimeter - fwd;
      for (int i = i0; i != i1;) {
        if (forward) {
          bypass.push_back(c.edges[i]);
          i = (i + 1) % c.size();
        } else {
          i = (i + c.size() - 1) % c.size();
          bypass.push_back(c.edges[i]);
        }
      }
    }
    std::vector<EdgePiece> chain;
    double len = 0.0;
    int at = hinges[0];
    for (int e : bypass) {
      const auto part = w.chain_from(eid[e], back[at]);
      chain.insert(chain.end(), part.begin(), part.end());
      len += g.edge(e).length;
      at = g.other(e, at);
    }
    for (int e : c.edges) w.edges[eid[e]].alive = false;
    for (int v : c.vertices) {
      if (dec.vertex_class[v] != VertexClass::Hinge) w.alive[back[v]] = 0;
    }
    if (hinges.size() == 2) w.edges.push_back({back[hinges[0]], back[hinges[1]], len, std::move(chain)});
    return true;
  }
  // empty vertex on a path: merge its two edges
  for (int v = 0; v < g.vertex_count(); ++v) {
    if (g.degree(v) != 2 || w.held[back[v]] != 0) continue;
    const int e1 = g.incident(v)[0], e2 = g.incident(v)[1];
    const int a = g.other(e1, v), b = g.other(e2, v);
    if (a == b || w.adjacent(back[a], back[b])) continue;
    auto chain = reversed(w.chain_from(eid[e1], back[v]));
    const auto tail = w.chain_from(eid[e2], back[v]);
    chain.insert(chain.end(), tail.begin(), tail.end());
    const double len = g.edge(e1).length + g.edge(e2).length;
    w.edges[eid[e1]].alive = false;
    w.edges[eid[e2]].alive = false;
    w.alive[back[v]] = 0;
    w.edges.push_back({back[a], back[b], len, std::move(chain)});
    return true;
  }
  return false;
}

}  // namespace detail

inline ReducedInstance reduce_instance(const Instance& inst) {
  const CactusGraph& g = inst.graph();
  detail::WorkGraph w;
  for (int v = 0; v < g.vertex_count(); ++v) w.add_vertex(g.label(v), vertex_point(g, v));
  // split edges at off-vertex locations
  std::vector<std::map<double, int>> cut(g.edge_count());
  for (const auto& p : inst.points) {
    for (const auto& l : p.locations) {
      if (!l.at_vertex() && l.t > 0.0 && l.t < g.edge(l.edge).length) cut[l.edge].emplace(l.t, -1);
    }
  }
  for (int e = 0; e < g.edge_count(); ++e) {
    const Edge& ed = g.edge(e);
    int prev = ed.u;
    double prev_t = 0.0;
    for (auto& [t, id] : cut[e]) {
      id = w.add_vertex(g.label(ed.u) + "~" + g.label(ed.v) + "@" + detail::format_offset(t), GraphPoint{e, t, -1});
      w.edges.push_back({prev, id, t - prev_t, {EdgePiece{e, prev_t, t}}});
      prev = id;
      prev_t = t;
    }
    w.edges.push_back({prev, ed.v, ed.length - prev_t, {EdgePiece{e, prev_t, ed.length}}});
  }
  auto where = [&](const Location& l) {
    if (l.at_vertex()) return l.vertex;
    const Edge& ed = g.edge(l.edge);
    if (l.t <= 0.0) return ed.u;
    if (l.t >= ed.length) return ed.v;
    return cut[l.edge].at(l.t);
  };
  for (const auto& p : inst.points) {
    for (const auto& l : p.locations) ++w.held[where(l)];
  }
  while (detail::simplify_once(w)) {
  }

  std::vector<int> vid, eid;
  CactusGraph rg = w.snapshot(vid, eid);
  ReducedInstance out;
  out.lift.vertex_point.resize(rg.vertex_count());
  for (int v = 0; v < static_cast<int>(vid.size()); ++v) {
    if (vid[v] >= 0) out.lift.vertex_point[vid[v]] = w.origin[v];
  }
  for (int e : eid) out.lift.edge_pieces.push_back(w.edges[e].chain);
  std::vector<UncertainPoint> pts = inst.points;
  std::vector<char> has(rg.vertex_count(), 0);
  for (auto& p : pts) {
    for (auto& l : p.locations) {
      l = Location{vid[where(l)], -1, 0.0, l.prob};
      has[l.vertex] = 1;
    }
  }
  for (int v = 0; v < rg.vertex_count(); ++v) {
    if (!has[v]) pts[0].locations.push_back(Location{v, -1, 0.0, 0.0});
  }
  out.instance = make_instance(std::move(rg), std::move(pts), inst.eps);
  return out;
}

inline GraphPoint lift_point(const ReducedInstance& red, const GraphPoint& p) {
  const CactusGraph& g = red.instance.graph();
  if (p.edge < 0) {
    if (p.vertex < 0 || p.vertex >= g.vertex_count()) throw Error(ErrorKind::UnliftablePoint, "unknown vertex");
    return red.lift.vertex_point[p.vertex];
  }
  if (p.edge >= g.edge_count()) throw Error(ErrorKind::UnliftablePoint, "unknown edge " + std::to_string(p.edge));
  const double len = g.edge(p.edge).length;
  if (!(p.t >= -1e-12 && p.t <= len + 1e-12)) throw Error(ErrorKind::UnliftablePoint, "offset outside edge");
  double rest = std::clamp(p.t, 0.0, len);
  const auto& chain = red.lift.edge_pieces[p.edge];
  for (std::size_t i = 0; i < chain.size(); ++i) {
    const EdgePiece& pc = chain[i];
    if (rest <= pc.length() || i + 1 == chain.size()) {
      const double s = std::min(rest, pc.length());
      return GraphPoint{pc.edge, pc.b >= pc.a ? pc.a + s : pc.a - s, -1};
    }
    rest -= pc.length();
  }
  throw Error(ErrorKind::UnliftablePoint, "empty lift chain");
}

}  // namespace ucactus
