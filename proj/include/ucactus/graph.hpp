#pragma once

// Cactus graph model: storage, cycle decomposition, skeleton tree and
// point-to-point distances.

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <optional>
#include <queue>
#include <string>
#include <utility>
#include <vector>

#include "ucactus/error.hpp"

namespace ucactus {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

struct Edge {
  int u = -1;
  int v = -1;
  double length = 0.0;
};

class CactusGraph {
 public:
  int add_vertex(std::string label) {
    const int id = static_cast<int>(labels_.size());
    label_index_.emplace(label, id);
    labels_.push_back(std::move(label));
    adjacency_.emplace_back();
    return id;
  }

  int add_edge(int u, int v, double length) {
    if (u < 0 || v < 0 || u >= vertex_count() || v >= vertex_count()) {
      throw Error(ErrorKind::InvalidGraph, "edge endpoint out of range");
    }
    const int id = static_cast<int>(edges_.size());
    edges_.push_back({u, v, length});
    adjacency_[u].push_back(id);
    if (v != u) adjacency_[v].push_back(id);
    return id;
  }

  int vertex_count() const { return static_cast<int>(labels_.size()); }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  const Edge& edge(int e) const { return edges_.at(e); }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::string& label(int v) const { return labels_.at(v); }
  const std::vector<int>& incident(int v) const { return adjacency_.at(v); }
  int degree(int v) const { return static_cast<int>(adjacency_.at(v).size()); }

  int other(int e, int v) const {
    const Edge& ed = edges_.at(e);
    return ed.u == v ? ed.v : ed.u;
  }

  std::optional<int> find_vertex(const std::string& label) const {
    auto it = label_index_.find(label);
    if (it == label_index_.end()) return std::nullopt;
    return it->second;
  }

 private:
  std::vector<std::string> labels_;
  std::vector<Edge> edges_;
  std::vector<std::vector<int>> adjacency_;
  std::multimap<std::string, int> label_index_;
};

// A position on the graph: offset t from edge.u along `edge`. Graphs without
// edges (a single vertex) use edge == -1 and name the vertex directly.
struct GraphPoint {
  int edge = -1;
  double t = 0.0;
  int vertex = -1;

  friend bool operator==(const GraphPoint& a, const GraphPoint& b) {
    return a.edge == b.edge && a.t == b.t && a.vertex == b.vertex;
  }
  friend bool operator<(const GraphPoint& a, const GraphPoint& b) {
    if (a.edge != b.edge) return a.edge < b.edge;
    if (a.t != b.t) return a.t < b.t;
    return a.vertex < b.vertex;
  }
};

// Canonical point for a vertex: smallest incident edge id, offset at the
// matching endpoint.
inline GraphPoint vertex_point(const CactusGraph& g, int v) {
  if (v < 0 || v >= g.vertex_count()) throw Error(ErrorKind::InvalidPoint, "unknown vertex");
  const auto& inc = g.incident(v);
  if (inc.empty()) return GraphPoint{-1, 0.0, v};
  const int e = *std::min_element(inc.begin(), inc.end());
  const Edge& ed = g.edge(e);
  return GraphPoint{e, ed.u == v ? 0.0 : ed.length, -1};
}

enum class VertexClass { GVertex, Hinge, CycleInterior };

struct CycleInfo {
  std::vector<int> vertices;   // ring order
  std::vector<int> edges;      // edges[i] joins vertices[i] and vertices[i+1 mod k]
  std::vector<double> pos;     // perimeter position of vertices[i]
  double perimeter = 0.0;

  int size() const { return static_cast<int>(vertices.size()); }

  int index_of(int v) const {
    auto it = std::find(vertices.begin(), vertices.end(), v);
    return it == vertices.end() ? -1 : static_cast<int>(it - vertices.begin());
  }
};

struct CycleDecomposition {
  std::vector<CycleInfo> cycles;
  std::vector<int> hinges;
  std::vector<int> g_vertices;
  std::vector<VertexClass> vertex_class;
  std::vector<int> cycle_of_edge;               // -1 for out-of-cycle edges
  std::vector<std::vector<int>> cycles_of_vertex;
};

namespace detail {

inline bool connected(const CactusGraph& g) {
  if (g.vertex_count() == 0) return false;
  std::vector<char> seen(g.vertex_count(), 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  int count = 1;
  while (!stack.empty()) {
    const int v = stack.back();
    stack.pop_back();
    for (int e : g.incident(v)) {
      const int w = g.other(e, v);
      if (!seen[w]) {
        seen[w] = 1;
        ++count;
        stack.push_back(w);
      }
    }
  }
  return count == g.vertex_count();
}

// Rotates/reflects a ring so the smallest vertex id comes first and the
// smaller-id neighbour (ties: smaller edge id) comes second.
inline CycleInfo orient_cycle(const CactusGraph& g, std::vector<int> verts, std::vector<int> edges) {
  const int k = static_cast<int>(verts.size());
  int start = static_cast<int>(std::min_element(verts.begin(), verts.end()) - verts.begin());
  std::rotate(verts.begin(), verts.begin() + start, verts.end());
  std::rotate(edges.begin(), edges.begin() + start, edges.end());
  // Forward neighbour is verts[1] via edges[0]; backward is verts[k-1] via edges[k-1].
  const bool reverse = std::make_pair(verts[k - 1], edges[k - 1]) < std::make_pair(verts[1], edges[0]);
  if (reverse) {
    std::reverse(verts.begin() + 1, verts.end());
    std::reverse(edges.begin(), edges.end());
  }
  CycleInfo info;
  info.vertices = std::move(verts);
  info.edges = std::move(edges);
  info.pos.resize(k);
  double acc = 0.0;
  for (int i = 0; i < k; ++i) {
    info.pos[i] = acc;
    acc += g.edge(info.edges[i]).length;
  }
  info.perimeter = acc;
  return info;
}

}  // namespace detail

inline CycleDecomposition validate_cactus(const CactusGraph& g) {
  if (g.vertex_count() == 0) throw Error(ErrorKind::InvalidGraph, "graph has no vertices");
  for (int e = 0; e < g.edge_count(); ++e) {
    const Edge& ed = g.edge(e);
    if (!(ed.length > 0.0) || !std::isfinite(ed.length)) {
      throw Error(ErrorKind::NonPositiveEdgeLength, "edge " + std::to_string(e) + " has length " +
                                                        std::to_string(ed.length));
    }
    if (ed.u == ed.v) throw Error(ErrorKind::InvalidGraph, "self-loop on vertex " + g.label(ed.u));
  }
  if (!detail::connected(g)) throw Error(ErrorKind::NotConnected, "graph is not connected");

  const int n = g.vertex_count();
  CycleDecomposition dec;
  dec.cycle_of_edge.assign(g.edge_count(), -1);
  dec.cycles_of_vertex.assign(n, {});

  // Iterative DFS; every back edge closes exactly one fundamental cycle. In a
  // cactus these cycles are edge-disjoint.
  std::vector<int> depth(n, -1), parent_edge(n, -1), parent(n, -1);
  std::vector<std::size_t> next_idx(n, 0);
  std::vector<int> stack{0};
  depth[0] = 0;
  std::vector<std::pair<std::vector<int>, std::vector<int>>> raw_cycles;
  while (!stack.empty()) {
    const int v = stack.back();
    if (next_idx[v] == g.incident(v).size()) {
      stack.pop_back();
      continue;
    }
    const int e = g.incident(v)[next_idx[v]++];
    if (e == parent_edge[v]) continue;
    const int w = g.other(e, v);
    if (depth[w] < 0) {
      depth[w] = depth[v] + 1;
      parent[w] = v;
      parent_edge[w] = e;
      stack.push_back(w);
    } else if (depth[w] < depth[v]) {
      // back edge v -> ancestor w
      std::vector<int> verts{w};
      std::vector<int> edges;
      std::vector<int> path_v, path_e;
      int x = v;
      while (x != w) {
        path_v.push_back(x);
        path_e.push_back(parent_edge[x]);
        x = parent[x];
      }
      // ring: w -> (back edge) -> v -> parent(v) -> ... -> child of w -> w
      edges.push_back(e);
      for (std::size_t i = 0; i < path_v.size(); ++i) {
        verts.push_back(path_v[i]);
        edges.push_back(path_e[i]);
      }
      for (int ce : edges) {
        if (dec.cycle_of_edge[ce] >= 0) {
          throw Error(ErrorKind::SharedCycleEdge, "edge " + std::to_string(ce) + " lies on two cycles");
        }
        dec.cycle_of_edge[ce] = static_cast<int>(raw_cycles.size());
      }
      raw_cycles.emplace_back(std::move(verts), std::move(edges));
    }
  }

  // Re-index cycles in a canonical order (by oriented vertex sequence).
  std::vector<CycleInfo> oriented;
  for (auto& [verts, edges] : raw_cycles) oriented.push_back(detail::orient_cycle(g, verts, edges));
  std::vector<int> order(oriented.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return std::make_pair(oriented[a].vertices, oriented[a].edges) <
           std::make_pair(oriented[b].vertices, oriented[b].edges);
  });
  dec.cycle_of_edge.assign(g.edge_count(), -1);
  for (int ci = 0; ci < static_cast<int>(order.size()); ++ci) {
    dec.cycles.push_back(std::move(oriented[order[ci]]));
    const CycleInfo& c = dec.cycles.back();
    for (int e : c.edges) dec.cycle_of_edge[e] = ci;
    for (int v : c.vertices) dec.cycles_of_vertex[v].push_back(ci);
  }

  dec.vertex_class.assign(n, VertexClass::GVertex);
  for (int v = 0; v < n; ++v) {
    if (dec.cycles_of_vertex[v].empty()) {
      dec.g_vertices.push_back(v);
    } else if (g.degree(v) >= 3) {
      dec.vertex_class[v] = VertexClass::Hinge;
      dec.hinges.push_back(v);
    } else {
      dec.vertex_class[v] = VertexClass::CycleInterior;
    }
  }
  return dec;
}

enum class NodeKind { GNode, HingeNode, CycleNode };

struct TreeNode {
  NodeKind kind = NodeKind::GNode;
  int vertex = -1;  // GNode / HingeNode
  int cycle = -1;   // CycleNode
};

struct TreeEdge {
  int a = -1;
  int b = -1;
  double length = 0.0;
  int graph_edge = -1;  // -1 for zero-length hinge/cycle links
};

struct SkeletonTree {
  std::vector<TreeNode> nodes;
  std::vector<TreeEdge> tree_edges;
  std::vector<std::vector<std::pair<int, int>>> adjacency;  // (neighbour node, tree edge)
  std::vector<int> vertex_node;  // node of a G-vertex / hinge, -1 for cycle-interior vertices
  std::vector<int> cycle_node;   // node of each cycle
  std::vector<int> owner;        // node holding the locations of each vertex

  int size() const { return static_cast<int>(nodes.size()); }
  bool is_cycle(int node) const { return nodes[node].kind == NodeKind::CycleNode; }

  // Hinge nodes adjacent to a cycle node, in the cycle's ring order.
  std::vector<int> hinge_nodes(int cycle_node_id, const CycleDecomposition& dec) const {
    std::vector<int> out;
    for (int v : dec.cycles[nodes[cycle_node_id].cycle].vertices) {
      if (dec.vertex_class[v] == VertexClass::Hinge) out.push_back(vertex_node[v]);
    }
    return out;
  }

  int tree_edge_between(int a, int b) const {
    for (auto [w, te] : adjacency[a]) {
      if (w == b) return te;
    }
    return -1;
  }
};

inline SkeletonTree build_skeleton(const CactusGraph& g, const CycleDecomposition& dec) {
  SkeletonTree t;
  const int n = g.vertex_count();
  t.vertex_node.assign(n, -1);
  t.owner.assign(n, -1);
  for (int v = 0; v < n; ++v) {
    if (dec.vertex_class[v] == VertexClass::CycleInterior) continue;
    t.vertex_node[v] = t.size();
    t.nodes.push_back({dec.vertex_class[v] == VertexClass::Hinge ? NodeKind::HingeNode : NodeKind::GNode, v, -1});
  }
  for (int c = 0; c < static_cast<int>(dec.cycles.size()); ++c) {
    t.cycle_node.push_back(t.size());
    t.nodes.push_back({NodeKind::CycleNode, -1, c});
  }
  for (int v = 0; v < n; ++v) {
    t.owner[v] = t.vertex_node[v] >= 0 ? t.vertex_node[v] : t.cycle_node[dec.cycles_of_vertex[v].front()];
  }
  t.adjacency.assign(t.size(), {});
  auto link = [&](int a, int b, double len, int ge) {
    const int id = static_cast<int>(t.tree_edges.size());
    t.tree_edges.push_back({a, b, len, ge});
    t.adjacency[a].emplace_back(b, id);
    t.adjacency[b].emplace_back(a, id);
  };
  for (int e = 0; e < g.edge_count(); ++e) {
    if (dec.cycle_of_edge[e] >= 0) continue;
    const Edge& ed = g.edge(e);
    link(t.vertex_node[ed.u], t.vertex_node[ed.v], ed.length, e);
  }
  for (int c = 0; c < static_cast<int>(dec.cycles.size()); ++c) {
    for (int v : dec.cycles[c].vertices) {
      if (dec.vertex_class[v] == VertexClass::Hinge) link(t.cycle_node[c], t.vertex_node[v], 0.0, -1);
    }
  }
  if (static_cast<int>(t.tree_edges.size()) != t.size() - 1) {
    throw Error(ErrorKind::InternalInvariant, "skeleton is not a tree");
  }
  return t;
}

// All-pairs vertex distances (Dijkstra from every vertex).
class DistanceTable {
 public:
  DistanceTable() = default;
  explicit DistanceTable(const CactusGraph& g) : n_(g.vertex_count()), d_(static_cast<std::size_t>(n_) * n_, kInf) {
    using Item = std::pair<double, int>;
    for (int s = 0; s < n_; ++s) {
      double* row = &d_[static_cast<std::size_t>(s) * n_];
      std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
      row[s] = 0.0;
      pq.emplace(0.0, s);
      while (!pq.empty()) {
        auto [dv, v] = pq.top();
        pq.pop();
        if (dv > row[v]) continue;
        for (int e : g.incident(v)) {
          const int w = g.other(e, v);
          const double nd = dv + g.edge(e).length;
          if (nd < row[w]) {
            row[w] = nd;
            pq.emplace(nd, w);
          }
        }
      }
    }
  }

  double operator()(int a, int b) const { return d_[static_cast<std::size_t>(a) * n_ + b]; }
  int size() const { return n_; }

 private:
  int n_ = 0;
  std::vector<double> d_;
};

// The immutable bundle every algorithm works against.
struct Cactus {
  CactusGraph graph;
  CycleDecomposition dec;
  SkeletonTree tree;
  DistanceTable dist;

  static Cactus build(CactusGraph g) {
    Cactus c;
    c.dec = validate_cactus(g);
    c.tree = build_skeleton(g, c.dec);
    c.dist = DistanceTable(g);
    c.graph = std::move(g);
    return c;
  }
};

inline void check_point(const CactusGraph& g, const GraphPoint& p) {
  if (p.edge < 0) {
    if (p.vertex < 0 || p.vertex >= g.vertex_count()) throw Error(ErrorKind::InvalidPoint, "unknown vertex");
    return;
  }
  if (p.edge >= g.edge_count()) throw Error(ErrorKind::InvalidPoint, "unknown edge " + std::to_string(p.edge));
  const double len = g.edge(p.edge).length;
  if (!(p.t >= -1e-12 && p.t <= len + 1e-12)) {
    throw Error(ErrorKind::InvalidPoint, "offset " + std::to_string(p.t) + " outside edge " + std::to_string(p.edge));
  }
}

// Distance from vertex v to an arbitrary point.
inline double vertex_distance(const Cactus& c, int v, const GraphPoint& q) {
  if (q.edge < 0) return c.dist(v, q.vertex);
  const Edge& e = c.graph.edge(q.edge);
  return std::min(q.t + c.dist(v, e.u), e.length - q.t + c.dist(v, e.v));
}

inline double point_distance(const Cactus& c, const GraphPoint& p, const GraphPoint& q) {
  check_point(c.graph, p);
  check_point(c.graph, q);
  if (p.edge < 0) return vertex_distance(c, p.vertex, q);
  if (q.edge < 0) return vertex_distance(c, q.vertex, p);
  const Edge& ep = c.graph.edge(p.edge);
  double best = std::min(p.t + vertex_distance(c, ep.u, q), ep.length - p.t + vertex_distance(c, ep.v, q));
  if (p.edge == q.edge) best = std::min(best, std::abs(p.t - q.t));
  return best;
}

// ---- skeleton-tree queries ----------------------------------------------

inline int centroid(const SkeletonTree& tree, const std::vector<int>& active) {
  if (active.empty()) throw Error(ErrorKind::EmptyActiveSet, "centroid of empty node set");
  const int total = static_cast<int>(active.size());
  std::vector<char> in(tree.size(), 0);
  for (int v : active) in[v] = 1;
  // iterative post-order from active[0]
  std::vector<int> parent(tree.size(), -1), order, sub(tree.size(), 1);
  std::vector<int> stack{active.front()};
  parent[active.front()] = active.front();
  while (!stack.empty()) {
    const int v = stack.back();
    stack.pop_back();
    order.push_back(v);
    for (auto [w, te] : tree.adjacency[v]) {
      if (in[w] && parent[w] < 0) {
        parent[w] = v;
        stack.push_back(w);
      }
    }
  }
  if (static_cast<int>(order.size()) != total) throw Error(ErrorKind::InternalInvariant, "active set not connected");
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    if (*it != active.front()) sub[parent[*it]] += sub[*it];
  }
  int best = -1;
  for (int v : order) {
    int largest = total - sub[v];
    for (auto [w, te] : tree.adjacency[v]) {
      if (in[w] && parent[w] == v && w != v) largest = std::max(largest, sub[w]);
    }
    if (largest <= total / 2 && (best < 0 || v < best)) best = v;
  }
  return best;
}

// One split component: the nodes of a connected piece of the tree left after
// removing a node (or a cycle node's H-subtree), the neighbour through which
// it attaches, and the articulation vertex node it hangs from.
struct Component {
  int attach = -1;
  int hinge = -1;
  std::vector<int> nodes;
};

inline std::vector<Component> split_components(const SkeletonTree& tree, const CycleDecomposition& dec, int node) {
  std::vector<int> removed{node};
  if (tree.is_cycle(node)) {
    for (int h : tree.hinge_nodes(node, dec)) removed.push_back(h);
  }
  std::vector<char> blocked(tree.size(), 0);
  for (int r : removed) blocked[r] = 1;
  std::vector<Component> out;
  for (int r : removed) {
    for (auto [w, te] : tree.adjacency[r]) {
      if (blocked[w]) continue;
      Component comp;
      comp.attach = w;
      comp.hinge = r;
      std::vector<int> stack{w};
      blocked[w] = 1;
      while (!stack.empty()) {
        const int x = stack.back();
        stack.pop_back();
        comp.nodes.push_back(x);
        for (auto [y, te2] : tree.adjacency[x]) {
          if (!blocked[y]) {
            blocked[y] = 1;
            stack.push_back(y);
          }
        }
      }
      std::sort(comp.nodes.begin(), comp.nodes.end());
      out.push_back(std::move(comp));
    }
  }
  return out;
}

// Cycle perimeter position <-> graph point.
inline GraphPoint cycle_point(const CactusGraph& g, const CycleInfo& c, double x) {
  x = std::clamp(x, 0.0, c.perimeter);
  int i = static_cast<int>(std::upper_bound(c.pos.begin(), c.pos.end(), x) - c.pos.begin()) - 1;
  i = std::clamp(i, 0, c.size() - 1);
  const int e = c.edges[i];
  const Edge& ed = g.edge(e);
  const double off = std::min(x - c.pos[i], ed.length);
  return GraphPoint{e, ed.u == c.vertices[i] ? off : ed.length - off, -1};
}

}  // namespace ucactus
