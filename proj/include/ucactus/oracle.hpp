#pragma once

// Brute-force reference solvers for small instances. They recompute
// distances and expected-distance functions from scratch and enumerate
// candidate positions exhaustively.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <utility>
#include <vector>

#include "ucactus/error.hpp"
#include "ucactus/graph.hpp"
#include "ucactus/uncertain.hpp"

namespace ucactus {

struct OracleLimits {
  int max_vertices = 20;
  int max_points = 8;
  int max_locations = 4;
};

namespace oracle_detail {

// The instance with every off-vertex location turned into a vertex, plus a
// map from split edges back to original edge offsets.
struct Split {
  int nv = 0;
  std::vector<Edge> edges;
  std::vector<int> origin_edge;
  std::vector<double> origin_offset;  // offset of split edge's u along origin edge
  std::vector<int> vertex_origin;     // original vertex or -1
  std::vector<std::vector<std::pair<int, double>>> locs;
  std::vector<double> weight;
  std::vector<double> dist;  // nv x nv

  double d(int a, int b) const { return dist[static_cast<std::size_t>(a) * nv + b]; }
};

inline void check_limits(const Instance& inst, const OracleLimits& lim) {
  if (inst.graph().vertex_count() > lim.max_vertices || inst.n() > lim.max_points) {
    throw Error(ErrorKind::TooLargeForOracle, "instance exceeds oracle bounds");
  }
  for (const auto& p : inst.points) {
    const auto support = std::count_if(p.locations.begin(), p.locations.end(), [](const Location& l) { return l.prob > 0.0; });
    if (support > lim.max_locations) {
      throw Error(ErrorKind::TooLargeForOracle, "too many locations per point for the oracle");
    }
  }
}

inline Split split(const Instance& inst) {
  const CactusGraph& g = inst.graph();
  Split s;
  s.nv = g.vertex_count();
  s.vertex_origin.resize(s.nv);
  for (int v = 0; v < s.nv; ++v) s.vertex_origin[v] = v;
  std::vector<std::vector<double>> cuts(g.edge_count());
  for (const auto& p : inst.points) {
    for (const auto& l : p.locations) {
      if (!l.at_vertex() && l.t > 0.0 && l.t < g.edge(l.edge).length) cuts[l.edge].push_back(l.t);
    }
  }
  std::vector<std::vector<std::pair<double, int>>> cut_vertex(g.edge_count());
  for (int e = 0; e < g.edge_count(); ++e) {
    auto& c = cuts[e];
    std::sort(c.begin(), c.end());
    c.erase(std::unique(c.begin(), c.end()), c.end());
    const Edge& ed = g.edge(e);
    int prev = ed.u;
    double prev_t = 0.0;
    for (double t : c) {
      const int nvx = s.nv++;
      s.vertex_origin.push_back(-1);
      cut_vertex[e].push_back({t, nvx});
      s.edges.push_back({prev, nvx, t - prev_t});
      s.origin_edge.push_back(e);
      s.origin_offset.push_back(prev_t);
      prev = nvx;
      prev_t = t;
    }
    s.edges.push_back({prev, ed.v, ed.length - prev_t});
    s.origin_edge.push_back(e);
    s.origin_offset.push_back(prev_t);
  }
  for (const auto& p : inst.points) {
    std::vector<std::pair<int, double>> ls;
    for (const auto& l : p.locations) {
      int v = l.vertex;
      if (!l.at_vertex()) {
        const Edge& ed = g.edge(l.edge);
        if (l.t <= 0.0) v = ed.u;
        else if (l.t >= ed.length) v = ed.v;
        else for (auto [t, x] : cut_vertex[l.edge]) if (t == l.t) v = x;
      }
      ls.emplace_back(v, l.prob);
    }
    s.locs.push_back(std::move(ls));
    s.weight.push_back(p.weight);
  }
  // Floyd-Warshall
  s.dist.assign(static_cast<std::size_t>(s.nv) * s.nv, std::numeric_limits<double>::infinity());
  for (int v = 0; v < s.nv; ++v) s.dist[static_cast<std::size_t>(v) * s.nv + v] = 0.0;
  for (const Edge& e : s.edges) {
    double& a = s.dist[static_cast<std::size_t>(e.u) * s.nv + e.v];
    double& b = s.dist[static_cast<std::size_t>(e.v) * s.nv + e.u];
    a = std::min(a, e.length);
    b = std::min(b, e.length);
  }
  for (int k = 0; k < s.nv; ++k)
    for (int i = 0; i < s.nv; ++i)
      for (int j = 0; j < s.nv; ++j) {
        const double via = s.d(i, k) + s.d(k, j);
        if (via < s.d(i, j)) s.dist[static_cast<std::size_t>(i) * s.nv + j] = via;
      }
  return s;
}

inline double ed(const Split& s, int k, int e, double t) {
  double sum = 0.0;
  if (e < 0) {
    for (auto [v, p] : s.locs[k]) sum += p * s.d(v, 0);
    return sum;
  }
  const Edge& ed = s.edges[e];
  for (auto [v, p] : s.locs[k]) sum += p * std::min(t + s.d(v, ed.u), ed.length - t + s.d(v, ed.v));
  return sum;
}

// Sorted positions on split edge e between which every Ed(P_k, .) is linear.
inline std::vector<double> grid(const Split& s, int e) {
  const Edge& ed = s.edges[e];
  std::vector<double> xs{0.0, ed.length};
  for (const auto& ls : s.locs) {
    for (auto [v, p] : ls) {
      const double t = 0.5 * (ed.length + s.d(v, ed.v) - s.d(v, ed.u));
      if (t > 0.0 && t < ed.length) xs.push_back(t);
    }
  }
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  return xs;
}

struct Candidate {
  int edge;
  double t;
};

inline GraphPoint to_original(const Instance& inst, const Split& s, const Candidate& c) {
  if (c.edge < 0) return GraphPoint{-1, 0.0, 0};
  const int oe = s.origin_edge[c.edge];
  const double t = std::clamp(s.origin_offset[c.edge] + c.t, 0.0, inst.graph().edge(oe).length);
  return GraphPoint{oe, t, -1};
}

// Interval endpoints plus every crossing of the supplied level functions.
template <class Level>
std::vector<Candidate> candidates(const Split& s, Level&& crossings) {
  std::vector<Candidate> out;
  if (s.edges.empty()) out.push_back({-1, 0.0});
  for (int e = 0; e < static_cast<int>(s.edges.size()); ++e) {
    const auto xs = grid(s, e);
    for (std::size_t i = 0; i < xs.size(); ++i) {
      out.push_back({e, xs[i]});
      if (i + 1 < xs.size()) {
        for (double x : crossings(e, xs[i], xs[i + 1])) out.push_back({e, x});
      }
    }
  }
  return out;
}

inline std::vector<double> active_weights(const Split& s, const std::vector<double>* mult) {
  std::vector<double> w = s.weight;
  if (mult) {
    for (std::size_t k = 0; k < w.size(); ++k) w[k] *= (*mult)[k];
  }
  return w;
}

// Points where two weighted Ed lines cross inside (a, b).
inline std::vector<double> pairwise_crossings(const Split& s, const std::vector<double>& w, int e, double a, double b) {
  std::vector<double> out;
  const int n = static_cast<int>(s.locs.size());
  std::vector<double> ya(n), yb(n);
  for (int k = 0; k < n; ++k) {
    ya[k] = w[k] * ed(s, k, e, a);
    yb[k] = w[k] * ed(s, k, e, b);
  }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const double da = ya[i] - ya[j], db = yb[i] - yb[j];
      if ((da < 0.0 && db > 0.0) || (da > 0.0 && db < 0.0)) out.push_back(a + da / (da - db) * (b - a));
    }
  return out;
}

}  // namespace oracle_detail

inline Verdict oracle_decide(const Instance& inst, double lambda, const OracleLimits& lim = {}) {
  using namespace oracle_detail;
  check_limits(inst, lim);
  Verdict v;
  if (!(lambda >= 0.0)) return v;
  const Split s = split(inst);
  const int n = inst.n();
  const double tol = inst.eps * std::max(1.0, lambda);
  auto level = [&](int e, double a, double b) {
    std::vector<double> out;
    for (int k = 0; k < n; ++k) {
      const double ya = s.weight[k] * ed(s, k, e, a) - lambda, yb = s.weight[k] * ed(s, k, e, b) - lambda;
      if ((ya < 0.0 && yb > 0.0) || (ya > 0.0 && yb < 0.0)) out.push_back(a + ya / (ya - yb) * (b - a));
    }
    return out;
  };
  const auto cands = candidates(s, level);
  const std::uint32_t full = n >= 32 ? ~0u : ((1u << n) - 1u);
  std::vector<std::uint32_t> mask(cands.size(), 0);
  for (std::size_t c = 0; c < cands.size(); ++c) {
    for (int k = 0; k < n; ++k) {
      if (s.weight[k] <= 0.0 || s.weight[k] * ed(s, k, cands[c].edge, cands[c].t) <= lambda + tol) mask[c] |= 1u << k;
    }
  }
  for (std::size_t a = 0; a < cands.size(); ++a) {
    for (std::size_t b = a; b < cands.size(); ++b) {
      if ((mask[a] | mask[b]) == full) {
        v.feasible = true;
        v.centers = std::make_pair(to_original(inst, s, cands[a]), to_original(inst, s, cands[b]));
        return v;
      }
    }
  }
  return v;
}

struct OracleOneCenter {
  GraphPoint point;
  double value = 0.0;
};

// Minimises max_k mult_k w_k Ed(P_k, .) over every envelope vertex.
inline OracleOneCenter oracle_one_center(const Instance& inst, const std::vector<double>* mult = nullptr,
                                         const OracleLimits& lim = {}) {
  using namespace oracle_detail;
  check_limits(inst, lim);
  const Split s = split(inst);
  const auto w = active_weights(s, mult);
  const auto cands = candidates(s, [&](int e, double a, double b) { return pairwise_crossings(s, w, e, a, b); });
  std::optional<OracleOneCenter> best;
  for (const Candidate& c : cands) {
    double val = 0.0;
    for (int k = 0; k < inst.n(); ++k) {
      if (w[k] > 0.0) val = std::max(val, w[k] * ed(s, k, c.edge, c.t));
    }
    if (!best || val < best->value) best = OracleOneCenter{to_original(inst, s, c), val};
  }
  if (!best) return {GraphPoint{-1, 0.0, 0}, 0.0};
  return *best;
}

inline OracleOneCenter oracle_median(const Instance& inst, int k, const OracleLimits& lim = {}) {
  using namespace oracle_detail;
  check_limits(inst, lim);
  const Split s = split(inst);
  const auto cands = candidates(s, [](int, double, double) { return std::vector<double>{}; });
  std::optional<OracleOneCenter> best;
  for (const Candidate& c : cands) {
    const double val = ed(s, k, c.edge, c.t);
    if (!best || val < best->value) best = OracleOneCenter{to_original(inst, s, c), val};
  }
  if (!best) return {GraphPoint{-1, 0.0, 0}, 0.0};
  return *best;
}

// Every value an optimal objective can take: envelope vertices of any subset
// of weighted Ed functions on any edge.
inline std::vector<double> oracle_candidate_values(const Instance& inst) {
  using namespace oracle_detail;
  const Split s = split(inst);
  std::vector<double> vals{0.0};
  for (int e = 0; e < static_cast<int>(s.edges.size()); ++e) {
    const auto xs = grid(s, e);
    for (std::size_t i = 0; i < xs.size(); ++i) {
      for (int k = 0; k < inst.n(); ++k) vals.push_back(s.weight[k] * ed(s, k, e, xs[i]));
      if (i + 1 < xs.size()) {
        for (double x : pairwise_crossings(s, s.weight, e, xs[i], xs[i + 1])) {
          for (int k = 0; k < inst.n(); ++k) vals.push_back(s.weight[k] * ed(s, k, e, x));
        }
      }
    }
  }
  std::sort(vals.begin(), vals.end());
  vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
  return vals;
}

inline Solution oracle_solve(const Instance& inst, const OracleLimits& lim = {}) {
  oracle_detail::check_limits(inst, lim);
  if (inst.graph().edge_count() == 0) {
    return Solution{0.0, GraphPoint{-1, 0.0, 0}, GraphPoint{-1, 0.0, 0}};
  }
  const auto vals = oracle_candidate_values(inst);
  std::size_t lo = 0, hi = vals.size() - 1;
  Verdict best = oracle_decide(inst, vals[hi], lim);
  if (!best.feasible) throw Error(ErrorKind::InternalInvariant, "oracle found no feasible candidate value");
  while (lo < hi) {
    const std::size_t mid = (lo + hi) / 2;
    Verdict v = oracle_decide(inst, vals[mid], lim);
    if (v.feasible) {
      hi = mid;
      best = std::move(v);
    } else {
      lo = mid + 1;
    }
  }
  return Solution{vals[hi], best.centers->first, best.centers->second};
}

}  // namespace ucactus
