#pragma once

// Optimal two-center value λ* and witness centers. A centroid search over
// the skeleton tree narrows down the edges or cycles holding the optimal
// centers; λ* is then the smallest feasible value among the envelope
// vertices of the weighted expected-distance functions over those regions.

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "ucactus/decision.hpp"
#include "ucactus/error.hpp"
#include "ucactus/graph.hpp"
#include "ucactus/plf.hpp"
#include "ucactus/reduction.hpp"
#include "ucactus/uncertain.hpp"

namespace ucactus {

enum class CriticalKind { Solved, Descend, DescendTwo, CriticalHere };

// nodes/anchors as in ProbeOutcome; CriticalHere keeps the probed cycle in
// `here` and an optional neighbour side in nodes[0].
struct CriticalOutcome {
  CriticalKind kind = CriticalKind::Descend;
  double value = 0.0;
  int here = -1;
  std::vector<int> nodes;
  std::vector<int> anchors;
};

enum class RegionKind { Vertex, Edge, Cycle };

struct Region {
  RegionKind kind = RegionKind::Vertex;
  int id = -1;  // vertex, graph edge, or cycle node
  friend bool operator==(const Region& a, const Region& b) { return a.kind == b.kind && a.id == b.id; }
};

// Memoised feasibility tests; every tested value is remembered.
class FeasibilityCache {
 public:
  explicit FeasibilityCache(const Instance& inst) : inst_(inst) {}

  const Verdict& operator()(double lambda) {
    auto it = cache_.find(lambda);
    if (it == cache_.end()) it = cache_.emplace(lambda, decide(inst_, lambda)).first;
    return it->second;
  }

  std::vector<double> tested() const {
    std::vector<double> out;
    for (const auto& [v, r] : cache_) out.push_back(v);
    return out;
  }

  int calls() const { return static_cast<int>(cache_.size()); }

 private:
  const Instance& inst_;
  std::map<double, Verdict> cache_;
};

namespace detail {

inline bool same_value(const Instance& inst, double a, double b) {
  return std::abs(a - b) <= inst.eps * std::max(1.0, std::max(std::abs(a), std::abs(b)));
}

struct SideLoad {
  int comp;
  double load;
};

// Λ(P^>(G_i), at_vertex_of(hinge_i)) for components with a nonempty set,
// heaviest first; ties keep component order.
inline std::vector<SideLoad> majority_loads(const Instance& inst, const ComponentSums& cs) {
  const SkeletonTree& tree = inst.cactus.tree;
  std::vector<SideLoad> out;
  for (int i = 0; i < static_cast<int>(cs.components.size()); ++i) {
    const auto l = load(inst, cs.p_gt[i], tree.nodes[cs.components[i].hinge].vertex);
    if (l) out.push_back({i, *l});
  }
  std::stable_sort(out.begin(), out.end(), [](const SideLoad& a, const SideLoad& b) { return a.load > b.load; });
  return out;
}

}  // namespace detail

inline CriticalOutcome locate_critical_articulation(const Instance& inst, int u, FeasibilityCache& feasible) {
  const SkeletonTree& tree = inst.cactus.tree;
  if (tree.is_cycle(u)) throw Error(ErrorKind::InternalInvariant, "articulation search step on a cycle node");
  const int v = tree.nodes[u].vertex;
  const ComponentSums cs = component_sums(inst, u);
  CriticalOutcome out;

  // the two heaviest points at v, and whether their medians sit at v
  std::vector<std::pair<double, int>> ys;
  for (int k = 0; k < inst.n(); ++k) {
    if (inst.points[k].weight > 0.0) ys.emplace_back(inst.points[k].weight * expected_distance_at_vertex(inst, k, v), k);
  }
  std::stable_sort(ys.begin(), ys.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
  auto median_here = [&](int k) {
    for (const auto& s : cs.sums) {
      if (s[k] > 0.5 + inst.eps) return false;
    }
    return true;
  };
  if (!ys.empty() && median_here(ys[0].second)) {
    out.kind = CriticalKind::Solved;
    out.value = ys[0].first;
    return out;
  }
  if (ys.size() >= 2 && median_here(ys[1].second)) {
    out.kind = CriticalKind::Solved;
    if (detail::same_value(inst, ys[1].first, ys[0].first)) {
      out.value = ys[0].first;
    } else {
      const MedianResult m = median(inst, ys[0].second);
      out.value = std::max(inst.points[ys[0].second].weight * m.value, ys[1].first);
    }
    return out;
  }

  const auto loads = detail::majority_loads(inst, cs);
  if (loads.empty()) throw Error(ErrorKind::InternalInvariant, "no majority side at an articulation vertex");
  auto toward = [&](int rank) { return cs.components[loads[rank].comp].attach; };
  out.kind = CriticalKind::Descend;
  out.nodes = {toward(0)};
  out.anchors = {u};
  if (loads.size() == 1) return out;
  const double l1 = loads[0].load, l2 = loads[1].load;
  if (loads.size() >= 3 && detail::same_value(inst, loads[2].load, l2)) {
    if (detail::same_value(inst, l1, l2)) {
      out.kind = CriticalKind::Solved;
      out.value = l1;
    } else if (feasible(l2).feasible) {
      out.kind = CriticalKind::Solved;
      out.value = l2;
    }
    return out;
  }
  if (feasible(l2).feasible) {
    out.kind = CriticalKind::DescendTwo;
    out.nodes = {toward(0), toward(1)};
    out.anchors = {u, u};
  }
  return out;
}

inline CriticalOutcome locate_critical_cycle(const Instance& inst, int u, FeasibilityCache& feasible) {
  const SkeletonTree& tree = inst.cactus.tree;
  if (!tree.is_cycle(u)) throw Error(ErrorKind::InternalInvariant, "cycle search step on an articulation node");
  const ComponentSums cs = component_sums(inst, u);
  const auto loads = detail::majority_loads(inst, cs);
  CriticalOutcome here;
  here.kind = CriticalKind::CriticalHere;
  here.here = u;
  if (loads.empty()) return here;
  const int h1 = cs.components[loads[0].comp].hinge;
  const bool flat = loads.size() >= 3 && detail::same_value(inst, loads[1].load, loads[2].load);
  if (flat && detail::same_value(inst, loads[0].load, loads[1].load)) return here;

  const CriticalOutcome r1 = locate_critical_articulation(inst, h1, feasible);
  if (r1.kind == CriticalKind::Solved) return r1;
  const bool r1_has_u = std::find(r1.nodes.begin(), r1.nodes.end(), u) != r1.nodes.end();
  if (r1.kind == CriticalKind::Descend) {
    return r1_has_u ? here : r1;
  }
  // DescendTwo at h1
  if (!r1_has_u) return r1;
  const int x = r1.nodes[0] == u ? r1.nodes[1] : r1.nodes[0];
  CriticalOutcome with_side = here;
  with_side.nodes = {x};
  with_side.anchors = {h1};
  if (flat || loads.size() < 2) return with_side;
  const int h2 = cs.components[loads[1].comp].hinge;
  if (h2 == h1) return with_side;
  const CriticalOutcome r2 = locate_critical_articulation(inst, h2, feasible);
  if (r2.kind == CriticalKind::Solved) return r2;
  for (int y : r2.nodes) {
    if (y != u) {
      CriticalOutcome two;
      two.kind = CriticalKind::DescendTwo;
      two.nodes = {x, y};
      two.anchors = {h1, h2};
      return two;
    }
  }
  return with_side;
}

struct CriticalPair {
  std::optional<double> solved;
  std::optional<Region> c1;
  std::optional<Region> c2;
};

namespace detail {

class CriticalSearch {
 public:
  CriticalSearch(const Instance& inst, FeasibilityCache& feasible)
      : inst_(inst), tree_(inst.cactus.tree), feasible_(feasible) {}

  CriticalPair run() {
    std::vector<int> all(tree_.size());
    for (int i = 0; i < tree_.size(); ++i) all[i] = i;
    search(all, std::vector<char>(tree_.size(), 0), out_.c1, true);
    if (out_.solved) return out_;
    if (pending_) {
      search(pending_->first, pending_->second, out_.c2, false);
    } else {
      out_.c2 = out_.c1;
    }
    return out_;
  }

 private:
  const Instance& inst_;
  const SkeletonTree& tree_;
  FeasibilityCache& feasible_;
  CriticalPair out_;
  std::optional<std::pair<std::vector<int>, std::vector<char>>> pending_;

  std::vector<int> all_nodes() const {
    std::vector<int> all(tree_.size());
    for (int i = 0; i < tree_.size(); ++i) all[i] = i;
    return all;
  }

  void remember(int node, int anchor) {
    if (pending_) return;
    std::vector<char> flag(tree_.size(), 0);
    flag[anchor] = 1;
    pending_.emplace(restrict_to(side_of(tree_, anchor, node), all_nodes(), anchor), std::move(flag));
  }

  Region terminal_region(const std::vector<int>& active) const {
    if (active.size() == 1) return {RegionKind::Vertex, tree_.nodes[active[0]].vertex};
    const int te = tree_.tree_edge_between(active[0], active[1]);
    return {RegionKind::Edge, tree_.tree_edges.at(te).graph_edge};
  }

  Region node_region(int c) const {
    return tree_.is_cycle(c) ? Region{RegionKind::Cycle, c} : Region{RegionKind::Vertex, tree_.nodes[c].vertex};
  }

  void search(std::vector<int> active, std::vector<char> flag, std::optional<Region>& slot, bool first) {
    for (int guard = 0; guard <= 2 * tree_.size() + 4; ++guard) {
      int c = -1;
      bool terminal = false;
      if (active.size() <= 2) {
        for (int x : active) {
          if (tree_.is_cycle(x)) c = x;
        }
        if (c < 0) {
          slot = terminal_region(active);
          return;
        }
        terminal = true;
      } else {
        c = centroid(tree_, active);
      }
      const CriticalOutcome r = tree_.is_cycle(c) ? locate_critical_cycle(inst_, c, feasible_)
                                                  : locate_critical_articulation(inst_, c, feasible_);
      const std::vector<int> base = terminal ? all_nodes() : active;
      switch (r.kind) {
        case CriticalKind::Solved:
          out_.solved = r.value;
          return;
        case CriticalKind::CriticalHere:
          slot = Region{RegionKind::Cycle, c};
          if (first && !r.nodes.empty()) remember(r.nodes[0], r.anchors[0]);
          return;
        case CriticalKind::Descend: {
          auto next = restrict_to(side_of(tree_, r.anchors[0], r.nodes[0]), base, r.anchors[0]);
          if (next == active) {
            slot = node_region(c);
            return;
          }
          active = std::move(next);
          break;
        }
        case CriticalKind::DescendTwo: {
          std::vector<int> order{0, 1};
          if (r.nodes[1] < r.nodes[0]) std::swap(order[0], order[1]);
          int pick = -1;
          for (int i : order) {
            const auto side = side_of(tree_, r.anchors[i], r.nodes[i]);
            std::vector<int> in;
            std::set_intersection(side.begin(), side.end(), base.begin(), base.end(), std::back_inserter(in));
            if (in.empty()) continue;
            const bool flagged = std::any_of(in.begin(), in.end(), [&](int x) { return flag[x] != 0; });
            if (!flagged) {
              pick = i;
              break;
            }
            if (pick < 0) pick = i;
          }
          if (pick < 0) pick = order[0];
          if (first) remember(r.nodes[1 - pick], r.anchors[1 - pick]);
          active = restrict_to(side_of(tree_, r.anchors[pick], r.nodes[pick]), base, r.anchors[pick]);
          flag[r.anchors[pick]] = 1;
          break;
        }
      }
    }
    throw Error(ErrorKind::InternalInvariant, "critical search did not shrink");
  }
};

}  // namespace detail

// Regions holding the two optimal centers, or λ* directly when a search
// step pins it down. Every value tested on the way stays in `feasible`.
inline CriticalPair find_critical_pair(const Instance& inst, FeasibilityCache& feasible) {
  detail::require_vertex_constrained(inst);
  return detail::CriticalSearch(inst, feasible).run();
}

enum class CandidateSource { Crossing, Breakpoint, Median, Tested, OneCenter };

struct CandidateSet {
  std::vector<double> values;               // ascending, distinct
  std::vector<CandidateSource> provenance;  // parallel to values
};

namespace detail {

// Envelope vertices of a family of profiles over a common domain: values at
// every merged breakpoint plus every crossing of two linear pieces.
inline void arrangement_values(const std::vector<Profile>& profs, std::vector<std::pair<double, CandidateSource>>& out) {
  std::vector<double> xs;
  for (const Profile& p : profs) xs.insert(xs.end(), p.xs.begin(), p.xs.end());
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  for (double x : xs) {
    for (const Profile& p : profs) out.emplace_back(p.eval(x), CandidateSource::Breakpoint);
  }
  const std::size_t n = profs.size();
  std::vector<double> slope(n), icpt(n);
  for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
    const double a = xs[i], b = xs[i + 1];
    if (b <= a) continue;
    for (std::size_t j = 0; j < n; ++j) {
      const double ya = profs[j].eval(a), yb = profs[j].eval(b);
      slope[j] = (yb - ya) / (b - a);
      icpt[j] = ya - slope[j] * a;
    }
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t l = j + 1; l < n; ++l) {
        const double ds = slope[j] - slope[l];
        if (ds == 0.0) continue;
        const double x = (icpt[l] - icpt[j]) / ds;
        if (x > a && x < b) out.emplace_back(slope[j] * x + icpt[j], CandidateSource::Crossing);
      }
    }
  }
}

}  // namespace detail

// Candidate values for λ* over the given regions, together with every
// median value and any extra values supplied by the caller.
inline CandidateSet candidate_values(const Instance& inst, const std::vector<Region>& regions,
                                     const std::vector<std::pair<double, CandidateSource>>& extra = {}) {
  const SkeletonTree& tree = inst.cactus.tree;
  std::vector<int> active;
  for (int k = 0; k < inst.n(); ++k) {
    if (inst.points[k].weight > 0.0) active.push_back(k);
  }
  std::vector<std::pair<double, CandidateSource>> raw = extra;
  raw.emplace_back(0.0, CandidateSource::Breakpoint);
  for (int k : active) raw.emplace_back(inst.points[k].weight * median(inst, k).value, CandidateSource::Median);
  for (const Region& r : regions) {
    std::vector<Profile> profs;
    switch (r.kind) {
      case RegionKind::Vertex:
        for (int k : active) {
          raw.emplace_back(inst.points[k].weight * expected_distance_at_vertex(inst, k, r.id), CandidateSource::Breakpoint);
        }
        continue;
      case RegionKind::Edge:
        for (int k : active) profs.push_back(edge_ed_profile(inst, k, r.id).scaled(inst.points[k].weight));
        break;
      case RegionKind::Cycle: {
        const int cyc = tree.nodes[r.id].cycle;
        const auto entries = cycle_entries(inst.cactus, cyc);
        for (int k : active) profs.push_back(cycle_profile(inst, k, cyc, &entries).scaled(inst.points[k].weight));
        break;
      }
    }
    detail::arrangement_values(profs, raw);
  }
  std::stable_sort(raw.begin(), raw.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  CandidateSet out;
  for (const auto& [v, src] : raw) {
    if (!(v >= 0.0) || !std::isfinite(v)) continue;
    if (!out.values.empty() && out.values.back() == v) continue;
    out.values.push_back(v);
    out.provenance.push_back(src);
  }
  return out;
}

// Smallest candidate accepted by the feasibility test; the largest candidate
// must be feasible.
inline double smallest_feasible(const std::vector<double>& values, FeasibilityCache& feasible) {
  if (values.empty()) throw Error(ErrorKind::InternalInvariant, "no candidate values");
  std::size_t lo = 0, hi = values.size() - 1;
  if (!feasible(values[hi]).feasible) throw Error(ErrorKind::InternalInvariant, "largest candidate infeasible");
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    if (feasible(values[mid]).feasible) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  return values[lo];
}

namespace detail {

inline Solution solve_reduced(const Instance& ri) {
  FeasibilityCache feasible(ri);
  const CriticalPair cp = find_critical_pair(ri, feasible);
  double lambda = 0.0;
  if (cp.solved && feasible(*cp.solved).feasible) {
    lambda = *cp.solved;
  } else {
    const OneCenter oc = one_center(ri, unit_multipliers(ri));
    std::vector<std::pair<double, CandidateSource>> extra{{oc.value, CandidateSource::OneCenter}};
    for (double v : feasible.tested()) extra.emplace_back(v, CandidateSource::Tested);
    std::vector<Region> regions;
    if (cp.c1) regions.push_back(*cp.c1);
    if (cp.c2 && !(cp.c1 && *cp.c2 == *cp.c1)) regions.push_back(*cp.c2);
    CandidateSet cs = candidate_values(ri, regions, extra);
    std::vector<double> vals;
    for (double v : cs.values) {
      if (v <= oc.value) vals.push_back(v);
    }
    lambda = smallest_feasible(vals, feasible);
  }
  const Verdict& v = feasible(lambda);
  if (!v.centers) throw Error(ErrorKind::InternalInvariant, "feasible verdict without witnesses");
  return Solution{lambda, v.centers->first, v.centers->second};
}

}  // namespace detail

// λ* and two centers attaining it on the instance's own graph.
inline Solution solve(const Instance& inst) {
  bool any = false;
  for (const auto& p : inst.points) any = any || p.weight > 0.0;
  if (!any) {
    const GraphPoint q = vertex_point(inst.graph(), 0);
    return Solution{0.0, q, q};
  }
  const ReducedInstance red = reduce_instance(inst);
  const Solution s = detail::solve_reduced(red.instance);
  return Solution{s.lambda, lift_point(red, s.q1), lift_point(red, s.q2)};
}

}  // namespace ucactus
