#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "linkhom/resolution.hpp"

namespace linkhom {

enum class SignClass { positive, negative, neutral };

inline std::string class_name(SignClass c) {
  switch (c) {
    case SignClass::positive: return "positive";
    case SignClass::negative: return "negative";
    case SignClass::neutral: return "neutral";
  }
  return "?";
}

struct SeifertEdge {
  int u = 0, v = 0;  // u < v
  SignClass cls = SignClass::neutral;
  std::vector<int> crossings;
};

struct SeifertGraph {
  int vertex_count = 0;
  std::vector<SeifertEdge> edges;
  std::vector<SignClass> vertex_class;
  std::vector<bool> pure;
  std::vector<std::vector<int>> neighbors;

  std::optional<int> edge_between(int a, int b) const {
    if (a > b) std::swap(a, b);
    for (std::size_t e = 0; e < edges.size(); ++e)
      if (edges[e].u == a && edges[e].v == b) return static_cast<int>(e);
    return std::nullopt;
  }
};

inline SeifertGraph build_graph(const OrientedDiagram& d) {
  CircleSet cs = resolve(d, oriented_resolution(d));
  SeifertGraph g;
  g.vertex_count = cs.count;
  std::map<std::pair<int, int>, int> index;
  for (int c = 0; c < d.crossing_count(); ++c) {
    int a = std::min(cs.touch[c][0], cs.touch[c][1]);
    int b = std::max(cs.touch[c][0], cs.touch[c][1]);
    auto [it, fresh] = index.try_emplace({a, b}, static_cast<int>(g.edges.size()));
    if (fresh) g.edges.push_back({a, b, d.sign(c) > 0 ? SignClass::positive : SignClass::negative, {}});
    auto& e = g.edges[it->second];
    e.crossings.push_back(c);
    SignClass s = d.sign(c) > 0 ? SignClass::positive : SignClass::negative;
    if (e.cls != s) e.cls = SignClass::neutral;
  }
  std::sort(g.edges.begin(), g.edges.end(), [](auto& x, auto& y) { return std::pair(x.u, x.v) < std::pair(y.u, y.v); });
  g.neighbors.assign(g.vertex_count, {});
  std::vector<std::vector<SignClass>> incident(g.vertex_count);
  for (auto& e : g.edges) {
    g.neighbors[e.u].push_back(e.v);
    g.neighbors[e.v].push_back(e.u);
    incident[e.u].push_back(e.cls);
    incident[e.v].push_back(e.cls);
  }
  g.vertex_class.assign(g.vertex_count, SignClass::neutral);
  for (int v = 0; v < g.vertex_count; ++v) {
    std::sort(g.neighbors[v].begin(), g.neighbors[v].end());
    // isolated circles count as neutral
    if (incident[v].empty()) continue;
    SignClass first = incident[v].front();
    if (first != SignClass::neutral &&
        std::all_of(incident[v].begin(), incident[v].end(), [&](SignClass c) { return c == first; }))
      g.vertex_class[v] = first;
  }
  g.pure.assign(g.vertex_count, true);
  for (int v = 0; v < g.vertex_count; ++v)
    for (int u : g.neighbors[v])
      if (g.vertex_class[u] != g.vertex_class[v]) g.pure[v] = false;
  return g;
}

struct Quantities {
  int V = 0, Vplus = 0, Vminus = 0, lplus = 0, lminus = 0, splus = 0, sminus = 0, deltaminus = 0, ls = 0, w = 0;
  int l = 0;  // link components
  friend bool operator==(const Quantities&, const Quantities&) = default;
};

namespace detail {
template <class Keep>
int count_components(const SeifertGraph& g, Keep keep_edge, std::vector<int>* label = nullptr) {
  std::vector<int> parent(g.vertex_count);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (auto& e : g.edges)
    if (keep_edge(e)) parent[find(e.u)] = find(e.v);
  int comps = 0;
  if (label) label->assign(g.vertex_count, -1);
  std::vector<int> id(g.vertex_count, -1);
  for (int v = 0; v < g.vertex_count; ++v) {
    int r = find(v);
    if (id[r] < 0) id[r] = comps++;
    if (label) (*label)[v] = id[r];
  }
  return comps;
}
}  // namespace detail

inline Quantities quantities(const SeifertGraph& g, const OrientedDiagram& d) {
  Quantities q;
  q.V = g.vertex_count;
  for (auto c : g.vertex_class) {
    q.Vplus += c == SignClass::positive;
    q.Vminus += c == SignClass::negative;
  }
  std::vector<int> comp;
  int n = detail::count_components(g, [](auto&) { return true; }, &comp);
  std::vector<int> has_nonpos(n, 0), has_nonneg(n, 0);
  for (int v = 0; v < g.vertex_count; ++v) {
    has_nonpos[comp[v]] |= g.vertex_class[v] != SignClass::positive;
    has_nonneg[comp[v]] |= g.vertex_class[v] != SignClass::negative;
  }
  for (int i = 0; i < n; ++i) {
    q.lplus += !has_nonpos[i];
    q.lminus += !has_nonneg[i];
  }
  q.splus = detail::count_components(g, [](auto& e) { return e.cls != SignClass::negative; });
  q.sminus = detail::count_components(g, [](auto& e) { return e.cls != SignClass::positive; });
  for (auto& e : g.edges)
    if (e.cls == SignClass::negative && g.vertex_class[e.u] == SignClass::neutral &&
        g.vertex_class[e.v] == SignClass::neutral)
      q.deltaminus = 1;
  q.ls = d.split_component_count();
  q.w = d.writhe();
  q.l = d.component_count();
  return q;
}

inline Quantities quantities(const OrientedDiagram& d) { return quantities(build_graph(d), d); }

struct BoundReport {
  int cbound = 0, lobb_lower = 0, lobb_upper = 0, kawcav = 0;
  std::map<std::string, std::optional<bool>> sharp_flags{
      {"cbound", std::nullopt}, {"lobb_lower", std::nullopt}, {"lobb_upper", std::nullopt}, {"kawcav", std::nullopt}};

  void record_s(int s) {
    sharp_flags["cbound"] = s == cbound;
    sharp_flags["lobb_lower"] = s == lobb_lower;
    sharp_flags["lobb_upper"] = s == lobb_upper;
    sharp_flags["kawcav"] = s == kawcav;
  }
};

inline BoundReport bounds(const Quantities& q) {
  BoundReport b;
  b.cbound = q.w - q.V + 2 * q.Vminus - 2 * q.lminus + 2 * q.deltaminus + 1;
  b.lobb_upper = q.w + q.V - 2 * q.sminus + 1;
  b.lobb_lower = q.w - q.V + 2 * q.splus - 2 * q.l + 1;
  b.kawcav = q.w - q.V + 2 * q.splus - 2 * q.ls + 1;
  return b;
}

inline std::optional<int> almost_positive_check(const OrientedDiagram& d) {
  if (d.n_minus() != 1 || d.n_plus() < 1 || d.split_component_count() != 1) return std::nullopt;
  Quantities q = quantities(d);
  return q.w - q.V + 2 * q.deltaminus + 1;
}

}  // namespace linkhom
