// Dependence graph of a normal-form program, degree reduction by binary trees,
// a verified grid layout and the subdivision of edges into link chains.
#ifndef GTHICK_DEPGRAPH_HPP
#define GTHICK_DEPGRAPH_HPP

#include "gthick/geometry.hpp"
#include "gthick/rgnf.hpp"
#include "gthick/verdict.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <queue>
#include <set>
#include <string>
#include <vector>

namespace gthick {

enum class DepVertexKind { source, input, computed, condition, tree };
enum class DepEdgeKind { dependency, order, tree };

inline std::string to_string(DepVertexKind k) {
  switch (k) {
    case DepVertexKind::source: return "source";
    case DepVertexKind::input: return "input";
    case DepVertexKind::computed: return "computed";
    case DepVertexKind::condition: return "condition";
    case DepVertexKind::tree: return "tree";
  }
  return "?";
}

inline std::string to_string(DepEdgeKind k) {
  switch (k) {
    case DepEdgeKind::dependency: return "dependency";
    case DepEdgeKind::order: return "order";
    case DepEdgeKind::tree: return "tree";
  }
  return "?";
}

struct DepVertex {
  std::string name;
  DepVertexKind kind = DepVertexKind::source;
  std::size_t index = 0;  // j of X_j, i of V_i, k of the k-th assertion
  std::optional<RgnfOp> op;
};

// slot: 0 = unit scale from s, 1 = first operand, 2 = second operand; -1 otherwise
struct DepEdge {
  std::size_t from = 0, to = 0;
  DepEdgeKind kind = DepEdgeKind::dependency;
  int slot = -1;
};

struct DependenceGraph {
  std::vector<DepVertex> vertices;
  std::vector<DepEdge> edges;

  std::size_t add_vertex(DepVertex v) {
    vertices.push_back(std::move(v));
    return vertices.size() - 1;
  }
  std::size_t add_edge(std::size_t from, std::size_t to, DepEdgeKind kind, int slot = -1) {
    edges.push_back({from, to, kind, slot});
    return edges.size() - 1;
  }
  std::size_t vertex_count() const { return vertices.size(); }
  std::size_t edge_count() const { return edges.size(); }
  std::vector<std::size_t> out_edges(std::size_t v) const {
    std::vector<std::size_t> r;
    for (std::size_t e = 0; e < edges.size(); ++e)
      if (edges[e].from == v) r.push_back(e);
    return r;
  }
  std::vector<std::size_t> in_edges(std::size_t v) const {
    std::vector<std::size_t> r;
    for (std::size_t e = 0; e < edges.size(); ++e)
      if (edges[e].to == v) r.push_back(e);
    return r;
  }
  std::vector<std::size_t> incident(std::size_t v) const {
    std::vector<std::size_t> r;
    for (std::size_t e = 0; e < edges.size(); ++e)
      if (edges[e].from == v || edges[e].to == v) r.push_back(e);
    return r;
  }
  std::size_t degree(std::size_t v) const { return incident(v).size(); }
  std::size_t max_degree() const {
    std::size_t d = 0;
    for (std::size_t v = 0; v < vertices.size(); ++v) d = std::max(d, degree(v));
    return d;
  }
  std::optional<std::size_t> find(const std::string& name) const {
    for (std::size_t v = 0; v < vertices.size(); ++v)
      if (vertices[v].name == name) return v;
    return std::nullopt;
  }
};

/// One vertex per variable plus s; an edge into V_i from s and from every
/// variable in its instruction (once per variable), and V_i -> V_j per assertion.
inline DependenceGraph build(const RgnfProgram& p) {
  DependenceGraph g;
  std::size_t s = g.add_vertex({"s", DepVertexKind::source, 0, std::nullopt});
  std::vector<std::size_t> xs, vs;
  for (std::size_t j = 1; j <= p.inputs; ++j) xs.push_back(g.add_vertex({"X" + std::to_string(j), DepVertexKind::input, j, std::nullopt}));
  for (std::size_t i = 1; i <= p.computed(); ++i)
    vs.push_back(g.add_vertex({"V" + std::to_string(i), DepVertexKind::computed, i, p.defs[i - 1].op}));
  for (std::size_t i = 1; i <= p.computed(); ++i) {
    const auto& d = p.defs[i - 1];
    std::size_t v = vs[i - 1];
    g.add_edge(s, v, DepEdgeKind::dependency, 0);
    if (d.op == RgnfOp::input) {
      g.add_edge(xs.at(d.j - 1), v, DepEdgeKind::dependency, 1);
      continue;
    }
    auto ops = d.operands();
    for (std::size_t o = 0; o < ops.size(); ++o) {
      if (o == 1 && ops[1] == ops[0]) continue;
      g.add_edge(vs.at(ops[o] - 1), v, DepEdgeKind::dependency, static_cast<int>(o) + 1);
    }
  }
  for (const auto& c : p.constraints) g.add_edge(vs.at(c.lhs - 1), vs.at(c.rhs - 1), DepEdgeKind::order);
  return g;
}

/// Replaces every order edge V_i -> V_j by a condition vertex fed by V_i, V_j and s.
inline DependenceGraph expand_conditions(const DependenceGraph& g) {
  DependenceGraph out;
  out.vertices = g.vertices;
  std::size_t k = 0;
  for (const auto& e : g.edges) {
    if (e.kind != DepEdgeKind::order) {
      out.edges.push_back(e);
      continue;
    }
    ++k;
    std::size_t c = out.add_vertex({"C" + std::to_string(k), DepVertexKind::condition, k, std::nullopt});
    out.add_edge(0, c, DepEdgeKind::dependency, 0);
    out.add_edge(e.from, c, DepEdgeKind::dependency, 1);
    if (e.to != e.from) out.add_edge(e.to, c, DepEdgeKind::dependency, 2);
  }
  return out;
}

inline bool needs_out_tree(const DependenceGraph& g, std::size_t v) {
  std::size_t out = g.out_edges(v).size();
  if (out < 2) return false;
  // an instruction gadget has a single output port
  bool instruction = g.vertices[v].kind == DepVertexKind::computed;
  return instruction || g.degree(v) > 4;
}

/// Outgoing edges of every vertex that needs it are replaced by one edge into
/// a balanced binary tree whose leaves feed the former out-neighbours.
inline DependenceGraph reduce_degree(const DependenceGraph& g) {
  DependenceGraph out;
  out.vertices = g.vertices;
  std::vector<bool> replaced(g.vertex_count(), false);
  for (std::size_t v = 0; v < g.vertex_count(); ++v) replaced[v] = needs_out_tree(g, v);
  for (const auto& e : g.edges)
    if (!replaced[e.from]) out.edges.push_back(e);
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    if (!replaced[v]) continue;
    auto outs = g.out_edges(v);
    std::size_t internal = 0, leaves = 0;
    const std::string& base = g.vertices[v].name;
    auto grow = [&](auto&& self, std::size_t lo, std::size_t hi) -> std::size_t {
      if (hi - lo == 1) {
        const DepEdge& orig = g.edges[outs[lo]];
        std::size_t leaf = out.add_vertex({base + ".l" + std::to_string(++leaves), DepVertexKind::tree, v, std::nullopt});
        out.add_edge(leaf, orig.to, orig.kind, orig.slot);
        return leaf;
      }
      std::size_t node = out.add_vertex({base + ".n" + std::to_string(++internal), DepVertexKind::tree, v, std::nullopt});
      std::size_t mid = lo + (hi - lo + 1) / 2;
      out.add_edge(node, self(self, lo, mid), DepEdgeKind::tree);
      out.add_edge(node, self(self, mid, hi), DepEdgeKind::tree);
      return node;
    };
    out.add_edge(v, grow(grow, 0, outs.size()), DepEdgeKind::tree);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Layout

struct LayoutCrossing {
  std::size_t other = 0;
  Point point;
  Rational param;  // along the edge from its tail
};

struct GridLayout {
  std::vector<Point> position;
  std::vector<std::vector<LayoutCrossing>> crossings;  // per edge, sorted by param
  std::vector<std::optional<std::size_t>> top_port;    // per vertex
  std::vector<Point> up;  // per vertex: positive on the top-port direction only
  std::string scheme;
};

/// Direction of edge e leaving vertex v.
inline Point edge_direction(const DependenceGraph& g, const GridLayout& l, std::size_t e, std::size_t v) {
  std::size_t w = g.edges[e].from == v ? g.edges[e].to : g.edges[e].from;
  return Point{l.position[w].x - l.position[v].x, l.position[w].y - l.position[v].y};
}

/// Edges allowed to attach from the top, in order of preference. A variable
/// assignment shares colors between its input and output transmissions, which
/// therefore must sit on different sides.
inline std::vector<std::size_t> top_port_candidates(const DependenceGraph& g, std::size_t v) {
  std::vector<std::size_t> r;
  const auto& vx = g.vertices[v];
  auto ins = g.in_edges(v), outs = g.out_edges(v);
  if (vx.kind == DepVertexKind::computed && vx.op == RgnfOp::input) {
    for (std::size_t e : ins)
      if (g.edges[e].slot == 1) r.push_back(e);
    r.insert(r.end(), outs.begin(), outs.end());
    return r;
  }
  r = outs;
  r.insert(r.end(), ins.begin(), ins.end());
  return r;
}

namespace detail {

inline Rational l1(const Point& p) { return abs(p.x) + abs(p.y); }
inline Rational dot(const Point& a, const Point& b) { return a.x * b.x + a.y * b.y; }

}  // namespace detail

/// A vector u with dot(u, dirs[a]) > 0 and dot(u, d) < 0 for every other d,
/// if one exists.
inline std::optional<Point> separating_up(const std::vector<Point>& dirs, std::size_t a) {
  using detail::dot;
  using detail::l1;
  const Point& da = dirs[a];
  Point u;
  if (dirs.size() == 1) {
    u = da;
  } else {
    std::vector<std::size_t> idx(dirs.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(), [&](std::size_t x, std::size_t y) { return ccw_angle_less(dirs[x], dirs[y]); });
    std::size_t pos = static_cast<std::size_t>(std::find(idx.begin(), idx.end(), a) - idx.begin());
    const Point& p = dirs[idx[(pos + idx.size() - 1) % idx.size()]];
    const Point& n = dirs[idx[(pos + 1) % idx.size()]];
    // admissible cone: from p turned ccw (or a turned cw) to n turned cw (or a turned ccw) by 90 degrees,
    // whichever bound is tighter
    auto cross = [](const Point& x, const Point& y) -> Rational { return x.x * y.y - x.y * y.x; };
    Point lo = cross(p, da) < 0 ? Point{da.y, -da.x} : Point{-p.y, p.x};
    Point hi = cross(da, n) < 0 ? Point{-da.y, da.x} : Point{n.y, -n.x};
    u = Point{lo.x / l1(lo) + hi.x / l1(hi), lo.y / l1(lo) + hi.y / l1(hi)};
  }
  if (dot(u, da) <= 0) return std::nullopt;
  for (std::size_t i = 0; i < dirs.size(); ++i)
    if (i != a && dot(u, dirs[i]) >= 0) return std::nullopt;
  return u;
}

namespace detail {

inline std::vector<std::size_t> longest_path_layers(const DependenceGraph& g) {
  const std::size_t n = g.vertex_count();
  std::vector<std::size_t> indeg(n, 0), layer(n, 0);
  for (const auto& e : g.edges) ++indeg[e.to];
  std::queue<std::size_t> q;
  for (std::size_t v = 0; v < n; ++v)
    if (indeg[v] == 0) q.push(v);
  std::vector<bool> done(n, false);
  while (!q.empty()) {
    std::size_t v = q.front();
    q.pop();
    done[v] = true;
    for (std::size_t e : g.out_edges(v)) {
      std::size_t w = g.edges[e].to;
      layer[w] = std::max(layer[w], layer[v] + 1);
      if (--indeg[w] == 0) q.push(w);
    }
  }
  // vertices on cycles (order edges against the index order) keep their layer so far
  return layer;
}

inline bool small_prime(long p) {
  for (long d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return p >= 2;
}

using Grid = std::vector<std::pair<long long, long long>>;

inline bool grid_general_position(const Grid& pts) {
  const std::size_t n = pts.size();
  std::set<long long> xs, ys;
  for (const auto& [x, y] : pts)
    if (!xs.insert(x).second || !ys.insert(y).second) return false;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b)
      for (std::size_t c = b + 1; c < n; ++c) {
        __int128 cr = static_cast<__int128>(pts[b].first - pts[a].first) * (pts[c].second - pts[a].second) -
                      static_cast<__int128>(pts[b].second - pts[a].second) * (pts[c].first - pts[a].first);
        if (cr == 0) return false;
      }
  return true;
}

// Layered placement: x is a global rank ordered by layer, y = layer * M + (x^2 mod P).
inline Grid layered_grid(const DependenceGraph& g, long long mult) {
  auto layer = longest_path_layers(g);
  std::vector<std::size_t> order(g.vertex_count());
  for (std::size_t v = 0; v < order.size(); ++v) order[v] = v;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return layer[a] < layer[b]; });
  long prime = 2 * static_cast<long>(order.size()) + 1;
  while (!small_prime(prime)) ++prime;
  Grid pts(g.vertex_count());
  for (std::size_t r = 0; r < order.size(); ++r) {
    long long x = static_cast<long long>(r);
    pts[order[r]] = {x, static_cast<long long>(layer[order[r]]) * mult * prime + (x * x) % prime};
  }
  return pts;
}

// Strictly convex fallback: (x, (x + k)^3) for x >= 0 has no three collinear points.
inline Grid convex_grid(const DependenceGraph& g, long long k) {
  Grid pts(g.vertex_count());
  for (std::size_t v = 0; v < pts.size(); ++v) {
    long long x = static_cast<long long>(v);
    pts[v] = {x, (x + k) * (x + k) * (x + k)};
  }
  return pts;
}

inline std::vector<std::vector<LayoutCrossing>> edge_crossings(const DependenceGraph& g, const std::vector<Point>& pos) {
  std::vector<std::vector<LayoutCrossing>> out(g.edge_count());
  auto seg = [&](std::size_t e) { return Segment{pos[g.edges[e].from], pos[g.edges[e].to]}; };
  for (std::size_t e = 0; e < g.edge_count(); ++e)
    for (std::size_t f = e + 1; f < g.edge_count(); ++f) {
      const auto &a = g.edges[e], &b = g.edges[f];
      if (a.from == b.from || a.from == b.to || a.to == b.from || a.to == b.to) continue;
      auto rel = segment_relation(seg(e), seg(f));
      if (rel.kind == RelationKind::disjoint) continue;
      if (rel.kind != RelationKind::proper_cross) throw std::logic_error("edges touch in a general-position layout");
      out[e].push_back({f, *rel.point, parameter_along(seg(e), *rel.point)});
      out[f].push_back({e, *rel.point, parameter_along(seg(f), *rel.point)});
    }
  for (auto& l : out)
    std::sort(l.begin(), l.end(), [](const LayoutCrossing& x, const LayoutCrossing& y) { return x.param < y.param; });
  return out;
}

inline bool crossings_simple(const std::vector<std::vector<LayoutCrossing>>& cr) {
  std::set<Point> seen;
  std::size_t total = 0;
  for (const auto& l : cr)
    for (const auto& c : l) {
      seen.insert(c.point);
      ++total;
    }
  return seen.size() * 2 == total;
}

}  // namespace detail

/// Picks, per vertex, the first candidate edge that a line through the vertex
/// separates from all other incident edges. Returns false if some vertex has none.
inline bool assign_top_ports(const DependenceGraph& g, GridLayout& l) {
  l.top_port.assign(g.vertex_count(), std::nullopt);
  l.up.assign(g.vertex_count(), make_point(0, 1));
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    auto inc = g.incident(v);
    if (inc.empty()) continue;
    std::vector<Point> dirs;
    for (std::size_t e : inc) dirs.push_back(edge_direction(g, l, e, v));
    bool found = false;
    for (std::size_t cand : top_port_candidates(g, v)) {
      std::size_t a = static_cast<std::size_t>(std::find(inc.begin(), inc.end(), cand) - inc.begin());
      if (auto u = separating_up(dirs, a)) {
        l.top_port[v] = cand;
        l.up[v] = *u;
        found = true;
        break;
      }
    }
    if (!found) return false;
  }
  return true;
}

/// Grid placement with distinct grid lines, no three collinear vertices, no
/// three edges through one point, and a top port for every vertex.
inline GridLayout layout(const DependenceGraph& g) {
  std::string why;
  auto attempt = [&](const detail::Grid& grid, const std::string& scheme) -> std::optional<GridLayout> {
    why = scheme + ": ";
    if (!detail::grid_general_position(grid)) return why += "collinear vertices or shared grid line", std::nullopt;
    GridLayout l;
    l.scheme = scheme;
    for (const auto& [x, y] : grid) l.position.push_back(Point{Rational(static_cast<long>(x)), Rational(static_cast<long>(y))});
    l.crossings = detail::edge_crossings(g, l.position);
    if (!detail::crossings_simple(l.crossings)) return why += "three edges through one point", std::nullopt;
    if (!assign_top_ports(g, l)) return why += "no separable top port", std::nullopt;
    return l;
  };
  for (long long m = 1; m <= 8; ++m)
    if (auto l = attempt(detail::layered_grid(g, m), "layered/" + std::to_string(m))) return *l;
  for (long long k = 1; k <= 16; ++k)
    if (auto l = attempt(detail::convex_grid(g, k), "convex/" + std::to_string(k))) return *l;
  throw ResourceError("no general-position grid layout found (last attempt " + why + ")");
}

/// Exact re-check of every layout postcondition.
inline Verdict verify_layout(const DependenceGraph& g, const GridLayout& l) {
  Verdict v;
  const std::size_t n = g.vertex_count();
  if (l.position.size() != n || l.top_port.size() != n || l.up.size() != n || l.crossings.size() != g.edge_count()) {
    v.reject("shape", {}, "layout does not match the graph");
    return v;
  }
  for (std::size_t a = 0; a < n; ++a) {
    if (l.position[a].x.get_den() != 1 || l.position[a].y.get_den() != 1)
      v.reject("off_grid", {g.vertices[a].name}, "vertex is not on an integer grid point");
    for (std::size_t b = a + 1; b < n; ++b) {
      if (l.position[a].x == l.position[b].x) v.reject("shared_x", {g.vertices[a].name, g.vertices[b].name}, "");
      if (l.position[a].y == l.position[b].y) v.reject("shared_y", {g.vertices[a].name, g.vertices[b].name}, "");
      for (std::size_t c = b + 1; c < n; ++c)
        if (orientation(l.position[a], l.position[b], l.position[c]) == 0)
          v.reject("collinear", {g.vertices[a].name, g.vertices[b].name, g.vertices[c].name}, "");
    }
  }
  if (!v.accepted()) return v;
  auto fresh = detail::edge_crossings(g, l.position);
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    bool same = fresh[e].size() == l.crossings[e].size();
    for (std::size_t i = 0; same && i < fresh[e].size(); ++i)
      same = fresh[e][i].other == l.crossings[e][i].other && fresh[e][i].point == l.crossings[e][i].point &&
             fresh[e][i].param == l.crossings[e][i].param;
    if (!same) v.reject("crossing_record", {"e" + std::to_string(e)}, "recorded crossings differ from the geometry");
  }
  if (!detail::crossings_simple(fresh)) v.reject("concurrent_edges", {}, "three edges share a crossing point");
  for (std::size_t a = 0; a < n; ++a) {
    auto inc = g.incident(a);
    if (inc.empty()) continue;
    if (!l.top_port[a] || std::find(inc.begin(), inc.end(), *l.top_port[a]) == inc.end()) {
      v.reject("top_port", {g.vertices[a].name}, "missing or not incident");
      continue;
    }
    for (std::size_t e : inc) {
      auto d = detail::dot(l.up[a], edge_direction(g, l, e, a));
      if ((e == *l.top_port[a]) != (d > 0) || d == 0)
        v.reject("top_port", {g.vertices[a].name}, "up vector does not separate the top edge");
    }
  }
  return v;
}

// ---------------------------------------------------------------------------
// Subdivision into link chains

struct ChainPlan {
  // stations[e] are parameters 0 = t_0 < t_1 < ... < t_L = 1 along edge e;
  // link i spans [t_i, t_{i+1}] and crosses link_crossing[e][i] (another edge) if set
  std::vector<std::vector<Rational>> stations;
  std::vector<std::vector<std::optional<std::size_t>>> link_crossing;

  std::size_t links(std::size_t e) const { return stations[e].size() - 1; }
};

/// Every crossing gets its own link, with the crossing a third of the way
/// along it; crossing links are separated by padding links, the links at both
/// ends are crossing-free and every chain has an even number (>= 4) of links.
inline ChainPlan subdivide_edges(const DependenceGraph& g, const GridLayout& l) {
  ChainPlan plan;
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    const auto& cr = l.crossings[e];
    std::vector<Rational> st{Rational(0)};
    std::vector<std::optional<std::size_t>> lc;
    if (cr.empty()) {
      st = {Rational(0), make_rational(1, 4), make_rational(1, 2), make_rational(3, 4), Rational(1)};
      lc.assign(4, std::nullopt);
    } else {
      for (std::size_t i = 0; i < cr.size(); ++i) {
        Rational prev = i == 0 ? Rational(0) : cr[i - 1].param;
        Rational next = i + 1 == cr.size() ? Rational(1) : cr[i + 1].param;
        Rational gap = std::min(Rational(cr[i].param - prev), Rational(next - cr[i].param));
        Rational h = gap / 6;
        Rational a = cr[i].param - h, b = cr[i].param + 2 * h;
        if (i == 0) {
          st.push_back(a / 2);  // split the first padding link to make the count even
          lc.push_back(std::nullopt);
        }
        st.push_back(a);
        lc.push_back(std::nullopt);
        st.push_back(b);
        lc.push_back(cr[i].other);
      }
      st.push_back(Rational(1));
      lc.push_back(std::nullopt);
    }
    plan.stations.push_back(std::move(st));
    plan.link_crossing.push_back(std::move(lc));
  }
  return plan;
}

inline Verdict verify_chains(const DependenceGraph& g, const GridLayout& l, const ChainPlan& plan) {
  Verdict v;
  if (plan.stations.size() != g.edge_count() || plan.link_crossing.size() != g.edge_count()) {
    v.reject("shape", {}, "plan does not match the graph");
    return v;
  }
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    const std::string id = "e" + std::to_string(e);
    const auto& st = plan.stations[e];
    const auto& lc = plan.link_crossing[e];
    if (st.size() < 2 || lc.size() + 1 != st.size() || st.front() != 0 || st.back() != 1) {
      v.reject("shape", {id}, "malformed stations");
      continue;
    }
    std::size_t links = lc.size();
    if (links < 4 || links % 2 != 0) v.reject("link_count", {id}, std::to_string(links) + " links");
    for (std::size_t i = 0; i + 1 < st.size(); ++i)
      if (!(st[i] < st[i + 1])) v.reject("station_order", {id}, "");
    if (lc.front() || lc.back()) v.reject("end_link_crossed", {id}, "");
    for (std::size_t i = 0; i + 1 < links; ++i)
      if (lc[i] && lc[i + 1]) v.reject("adjacent_crossing_links", {id}, "links " + std::to_string(i) + "," + std::to_string(i + 1));
    std::vector<int> hits(links, 0);
    for (const auto& c : l.crossings[e]) {
      auto it = std::upper_bound(st.begin(), st.end(), c.param);
      if (it == st.begin() || it == st.end() || *(it - 1) == c.param) {
        v.reject("crossing_on_station", {id}, "");
        continue;
      }
      std::size_t i = static_cast<std::size_t>(it - st.begin()) - 1;
      ++hits[i];
      if (lc[i] != c.other) v.reject("crossing_record", {id}, "link " + std::to_string(i));
      if ((st[i] + st[i + 1]) / 2 == c.param) v.reject("crossing_at_midpoint", {id}, "");
    }
    for (std::size_t i = 0; i < links; ++i) {
      if (hits[i] > 1) v.reject("link_crossed_twice", {id}, "link " + std::to_string(i));
      if (hits[i] == 0 && lc[i]) v.reject("crossing_record", {id}, "phantom crossing on link " + std::to_string(i));
    }
  }
  return v;
}

}  // namespace gthick

#endif
