#pragma once

// JSON instance files, result output and a seeded random instance generator.
//
// Instance document:
//   {"vertices": ["a", "b", ...],
//    "edges": [["a", "b", 1.0], ...],
//    "points": [{"id": "P1", "weight": 1.0,
//                "locations": [{"vertex": "a", "p": 0.5},
//                              {"edge": 0, "t": 0.25, "p": 0.5}]}],
//    "eps": 1e-9}                                   (eps optional)

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <numeric>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "ucactus/error.hpp"
#include "ucactus/graph.hpp"
#include "ucactus/uncertain.hpp"

namespace ucactus {

using json = nlohmann::json;

// Value rounded to 12 significant digits.
inline double round12(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return std::strtod(buf, nullptr);
}

// eps from UCACTUS_EPS when set, otherwise `fallback`.
inline double env_eps(double fallback = kDefaultEps) {
  if (const char* s = std::getenv("UCACTUS_EPS")) {
    char* end = nullptr;
    const double v = std::strtod(s, &end);
    if (end != s && v > 0.0) return v;
  }
  return fallback;
}

namespace detail {

template <class T>
T field(const json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) throw Error(ErrorKind::ParseError, where + ": missing field '" + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw Error(ErrorKind::ParseError, where + ": field '" + key + "' has the wrong type");
  }
}

}  // namespace detail

inline Instance instance_from_json(const json& doc, std::optional<double> eps_override = std::nullopt) {
  if (!doc.is_object()) throw Error(ErrorKind::ParseError, "instance must be a JSON object");
  CactusGraph g;
  const auto labels = detail::field<std::vector<std::string>>(doc, "vertices", "instance");
  for (const auto& l : labels) {
    if (g.find_vertex(l)) throw Error(ErrorKind::ValidationError, "duplicate vertex label '" + l + "'");
    g.add_vertex(l);
  }
  auto vertex_of = [&](const std::string& label, const std::string& where) {
    auto v = g.find_vertex(label);
    if (!v) throw Error(ErrorKind::ValidationError, where + ": unknown vertex '" + label + "'");
    return *v;
  };
  if (!doc.contains("edges") || !doc["edges"].is_array()) throw Error(ErrorKind::ParseError, "instance: 'edges' must be an array");
  int idx = 0;
  for (const auto& e : doc["edges"]) {
    const std::string where = "edges[" + std::to_string(idx++) + "]";
    if (!e.is_array() || e.size() != 3 || !e[0].is_string() || !e[1].is_string() || !e[2].is_number()) {
      throw Error(ErrorKind::ParseError, where + ": expected [u, v, length]");
    }
    g.add_edge(vertex_of(e[0].get<std::string>(), where), vertex_of(e[1].get<std::string>(), where), e[2].get<double>());
  }
  double eps = doc.contains("eps") ? detail::field<double>(doc, "eps", "instance") : kDefaultEps;
  eps = env_eps(eps);
  if (eps_override) eps = *eps_override;
  if (!doc.contains("points") || !doc["points"].is_array()) throw Error(ErrorKind::ParseError, "instance: 'points' must be an array");
  std::vector<UncertainPoint> pts;
  idx = 0;
  for (const auto& p : doc["points"]) {
    const std::string where = "points[" + std::to_string(idx++) + "]";
    UncertainPoint up;
    up.id = detail::field<std::string>(p, "id", where);
    up.weight = p.contains("weight") ? detail::field<double>(p, "weight", where) : 1.0;
    if (!p.contains("locations") || !p["locations"].is_array()) throw Error(ErrorKind::ParseError, where + ": 'locations' must be an array");
    int li = 0;
    for (const auto& l : p["locations"]) {
      const std::string lw = where + ".locations[" + std::to_string(li++) + "]";
      Location loc;
      loc.prob = detail::field<double>(l, "p", lw);
      if (l.contains("vertex")) {
        loc.vertex = vertex_of(detail::field<std::string>(l, "vertex", lw), lw);
      } else if (l.contains("edge")) {
        loc.edge = detail::field<int>(l, "edge", lw);
        loc.t = detail::field<double>(l, "t", lw);
      } else {
        throw Error(ErrorKind::ParseError, lw + ": needs 'vertex' or 'edge'");
      }
      up.locations.push_back(loc);
    }
    pts.push_back(std::move(up));
  }
  try {
    return make_instance(std::move(g), std::move(pts), eps);
  } catch (const Error& err) {
    if (err.kind() == ErrorKind::ParseError) throw;
    throw Error(ErrorKind::ValidationError, err.what());
  }
}

inline Instance parse_instance(const std::string& text, std::optional<double> eps_override = std::nullopt) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::ParseError, e.what());
  }
  return instance_from_json(doc, eps_override);
}

inline json instance_to_json(const Instance& inst) {
  const CactusGraph& g = inst.graph();
  json doc;
  doc["vertices"] = json::array();
  for (int v = 0; v < g.vertex_count(); ++v) doc["vertices"].push_back(g.label(v));
  doc["edges"] = json::array();
  for (const Edge& e : g.edges()) doc["edges"].push_back(json::array({g.label(e.u), g.label(e.v), e.length}));
  doc["points"] = json::array();
  for (const auto& p : inst.points) {
    json jp;
    jp["id"] = p.id;
    jp["weight"] = p.weight;
    jp["locations"] = json::array();
    for (const auto& l : p.locations) {
      json jl;
      if (l.at_vertex()) {
        jl["vertex"] = g.label(l.vertex);
      } else {
        jl["edge"] = l.edge;
        jl["t"] = l.t;
      }
      jl["p"] = l.prob;
      jp["locations"].push_back(jl);
    }
    doc["points"].push_back(jp);
  }
  doc["eps"] = inst.eps;
  return doc;
}

inline std::string emit_instance(const Instance& inst) { return instance_to_json(inst).dump(2); }

inline json point_to_json(const CactusGraph& g, const GraphPoint& q) {
  json j;
  if (q.edge < 0) {
    j["vertex"] = g.label(q.vertex);
    return j;
  }
  const Edge& e = g.edge(q.edge);
  j["edge"] = json::array({g.label(e.u), g.label(e.v)});
  j["edge_index"] = q.edge;
  j["t"] = round12(q.t);
  return j;
}

// Which center serves each point and at what weighted expected distance.
inline json assignments_json(const Instance& inst, const GraphPoint& q1, const GraphPoint& q2) {
  json out = json::array();
  for (int k = 0; k < inst.n(); ++k) {
    const double w = inst.points[k].weight;
    const double d1 = w * expected_distance(inst, k, q1), d2 = w * expected_distance(inst, k, q2);
    out.push_back({{"id", inst.points[k].id}, {"center", d2 < d1 ? 1 : 0}, {"value", round12(std::min(d1, d2))}});
  }
  return out;
}

inline json solution_json(const Instance& inst, const Solution& sol) {
  json j;
  j["lambda_star"] = round12(sol.lambda);
  j["centers"] = json::array({point_to_json(inst.graph(), sol.q1), point_to_json(inst.graph(), sol.q2)});
  j["assignments"] = assignments_json(inst, sol.q1, sol.q2);
  return j;
}

inline std::string emit_solution(const Instance& inst, const Solution& sol) { return solution_json(inst, sol).dump(2); }

inline json verdict_json(const Instance& inst, double lambda, const Verdict& v) {
  json j;
  j["lambda"] = round12(lambda);
  j["feasible"] = v.feasible;
  if (v.feasible && v.centers) {
    j["centers"] = json::array({point_to_json(inst.graph(), v.centers->first), point_to_json(inst.graph(), v.centers->second)});
    j["assignments"] = assignments_json(inst, v.centers->first, v.centers->second);
  }
  return j;
}

inline std::string emit_verdict(const Instance& inst, double lambda, const Verdict& v) {
  return verdict_json(inst, lambda, v).dump(2);
}

// ---- generator --------------------------------------------------------------

struct GenParams {
  std::uint64_t seed = 1;
  int vertex_count = 10;
  int cycle_count = 2;
  int n = 3;
  int m = 2;
  int min_length = 1;
  int max_length = 4;
  int prob_denominator = 8;
  int min_weight = 1;
  int max_weight = 3;
  double edge_location_rate = 0.0;  // chance a location is placed inside an edge
};

// A random tree grown vertex by vertex, with cycles of 3-6 vertices hung off
// distinct existing vertices, integer lengths, dyadic probabilities.
inline Instance generate_instance(const GenParams& prm) {
  const int V = prm.vertex_count, C = prm.cycle_count;
  if (V < 1 || C < 0 || prm.n < 1 || prm.m < 1) throw Error(ErrorKind::InfeasibleParams, "counts must be positive");
  if (C > 0 && V < 2 * C + 1) throw Error(ErrorKind::InfeasibleParams, "too many cycles for the vertex count");
  if (prm.m > V) throw Error(ErrorKind::InfeasibleParams, "more locations per point than vertices");
  if (prm.prob_denominator < 1 || prm.prob_denominator > 8 || (prm.prob_denominator & (prm.prob_denominator - 1)) != 0) {
    throw Error(ErrorKind::InfeasibleParams, "probability denominator must be 1, 2, 4 or 8");
  }
  if (prm.m > prm.prob_denominator) throw Error(ErrorKind::InfeasibleParams, "more locations than probability units");
  if (prm.min_length < 1 || prm.max_length < prm.min_length || prm.min_weight < 0 || prm.max_weight < prm.min_weight) {
    throw Error(ErrorKind::InfeasibleParams, "bad length or weight range");
  }
  std::mt19937_64 rng(prm.seed);
  auto uniform = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };

  // cycle sizes: every cycle adds size-1 vertices
  std::vector<int> sizes(C, 3);
  int spare = V - 1 - 2 * C;
  for (int i = 0; i < C && spare > 0; ++i) {
    const int extra = std::min(spare, uniform(0, 3));
    sizes[i] += extra;
    spare -= extra;
  }
  const int tree_vertices = V - std::accumulate(sizes.begin(), sizes.end(), 0) + C;

  CactusGraph g;
  for (int v = 0; v < V; ++v) g.add_vertex("v" + std::to_string(v));
  auto length = [&] { return static_cast<double>(uniform(prm.min_length, prm.max_length)); };
  for (int v = 1; v < tree_vertices; ++v) g.add_edge(uniform(0, v - 1), v, length());
  int next = tree_vertices;
  std::vector<char> used(V, 0);
  for (int c = 0; c < C; ++c) {
    std::vector<int> free;
    for (int v = 0; v < next; ++v) {
      if (!used[v]) free.push_back(v);
    }
    const int base = free[uniform(0, static_cast<int>(free.size()) - 1)];
    used[base] = 1;
    int prev = base;
    for (int i = 1; i < sizes[c]; ++i) {
      g.add_edge(prev, next, length());
      prev = next++;
    }
    g.add_edge(prev, base, length());
  }

  std::vector<UncertainPoint> pts;
  for (int k = 0; k < prm.n; ++k) {
    UncertainPoint p;
    p.id = "P" + std::to_string(k + 1);
    p.weight = uniform(prm.min_weight, prm.max_weight);
    // split the denominator into m positive parts
    std::vector<int> cuts;
    for (int i = 1; i < prm.prob_denominator; ++i) cuts.push_back(i);
    std::shuffle(cuts.begin(), cuts.end(), rng);
    cuts.resize(prm.m - 1);
    cuts.push_back(0);
    cuts.push_back(prm.prob_denominator);
    std::sort(cuts.begin(), cuts.end());
    std::vector<int> verts(V);
    std::iota(verts.begin(), verts.end(), 0);
    std::shuffle(verts.begin(), verts.end(), rng);
    for (int i = 0; i < prm.m; ++i) {
      Location l;
      l.prob = static_cast<double>(cuts[i + 1] - cuts[i]) / prm.prob_denominator;
      if (g.edge_count() > 0 && std::uniform_real_distribution<double>(0.0, 1.0)(rng) < prm.edge_location_rate) {
        l.edge = uniform(0, g.edge_count() - 1);
        l.t = g.edge(l.edge).length * uniform(1, 3) / 4.0;
      } else {
        l.vertex = verts[i];
      }
      p.locations.push_back(l);
    }
    pts.push_back(std::move(p));
  }
  return make_instance(std::move(g), std::move(pts));
}

}  // namespace ucactus
