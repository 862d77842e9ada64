// Arrangement to thickness multigraph: long edges, crossing boxes, tunnels,
// blockers and connectors, and the contracted-frame check.
#ifndef GTHICK_REDUCTION_HPP
#define GTHICK_REDUCTION_HPP

#include "gthick/arrangement.hpp"
#include "gthick/graph.hpp"
#include "gthick/verdict.hpp"

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/boyer_myrvold_planar_test.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace gthick {

/// A tunnel boundary or connector: a path of length n between two attachment
/// vertices (segment endpoints or box corners).
struct FramePath {
  EdgeRole role = EdgeRole::tunnel_boundary;
  VertexId from = 0;
  VertexId to = 0;
  std::size_t node_from = 0;  // contracted-frame nodes
  std::size_t node_to = 0;
  bool outer = false;         // connector on the outer cycle or beyond it
  SegmentId segment = 0;      // tunnel boundaries: owning segment and side (+1 left, -1 right)
  int side = 0;
  std::vector<Point> route;   // interior bends of a geometric connector
  std::vector<VertexId> inner;  // n-1 subdivision vertices from `from` to `to` (materialized only)
  std::vector<EdgeId> edges;
};

/// corner[2i+j] lies between the ends a_{i+1} and b_{j+1}; a crosses edges 0 and 1,
/// b crosses edges 2 and 3.
struct CrossingBox {
  SegmentId a = 0;
  SegmentId b = 0;
  std::array<VertexId, 4> corner{};
  std::array<EdgeId, 4> edges{};
};

inline constexpr std::array<std::pair<int, int>, 4> box_edge_corners{{{0, 1}, {2, 3}, {0, 2}, {1, 3}}};

struct Blocker {
  std::size_t box = 0;
  SegmentId segment = 0;  // the long edge whose color it takes
  VertexId u = 0;
  VertexId v = 0;
  EdgeId edge = 0;
};

struct ThicknessInstance {
  PseudoSegmentArrangement arrangement;
  int t = 0;
  std::size_t path_length = 0;
  std::vector<CrossingBox> boxes;
  std::vector<FramePath> paths;
  std::vector<Point> node_position;  // contracted-frame nodes, geometric triangulation only
  bool materialized = false;
  Multigraph graph;
  std::vector<EdgeId> long_edges;
  std::vector<Blocker> blockers;
  std::vector<std::string> edge_origin;

  std::size_t n() const { return arrangement.segment_count(); }
  std::size_t crossing_count() const { return boxes.size(); }
  std::size_t node_count() const { return 2 * n() + boxes.size(); }
  std::size_t connector_count() const {
    return static_cast<std::size_t>(
        std::count_if(paths.begin(), paths.end(), [](const FramePath& p) { return p.role == EdgeRole::connector; }));
  }
  std::size_t vertex_count() const { return 2 * n() + 4 * boxes.size() + paths.size() * (path_length - 1); }
  std::size_t edge_class_count() const { return n() + 8 * boxes.size() + paths.size() * path_length; }
  std::size_t edge_instance_count() const {
    std::size_t T = static_cast<std::size_t>(t);
    return n() + 4 * boxes.size() * (T - 1) + paths.size() * path_length * T + 4 * boxes.size();
  }
};

struct ReductionOptions {
  std::optional<SegmentRealization> realization;  // fixes the outer face; small inputs get straight connectors
  bool materialize = true;
  std::size_t materialize_limit = 2'000'000;  // vertices
  std::size_t geometric_limit = 400;          // contracted-frame nodes
};

namespace detail {

struct Occurrence {
  std::size_t node = 0;
  VertexId attach = 0;
};

struct Chord {
  Occurrence u;
  Occurrence v;
  bool outer = false;
  std::vector<Point> route;
};

using NodePair = std::pair<std::size_t, std::size_t>;

inline NodePair node_pair(std::size_t a, std::size_t b) { return std::minmax(a, b); }

inline VertexId corner_vertex(std::size_t n, std::size_t point, int k) { return 2 * n + 4 * point + static_cast<std::size_t>(k); }

/// Corner of box `point` (segments a < b) between end `end_s` of s and end `end_o` of the other.
inline int corner_index(const CrossingBox& box, SegmentId s, int end_s, int end_o) {
  return s == box.a ? 2 * end_s + end_o : 2 * end_o + end_s;
}

/// Occurrence of the face corner between incoming dart `in` and outgoing dart `out`.
inline Occurrence face_corner(const Planarization& P, const std::vector<CrossingBox>& boxes, std::size_t n,
                              std::size_t in, std::size_t out) {
  std::size_t v = P.darts[out].from;
  if (v < 2 * n) return {v, v};
  std::size_t p = v - 2 * n;
  const auto& din = P.darts[in];
  const auto& dout = P.darts[out];
  int end_in = din.forward ? 0 : 1;  // the incoming branch points back toward this end
  int end_out = dout.forward ? 1 : 0;
  int ea = din.segment == boxes[p].a ? end_in : end_out;
  int eb = din.segment == boxes[p].a ? end_out : end_in;
  return {v, corner_vertex(n, p, 2 * ea + eb)};
}

/// Adds chords triangulating `poly`; tries fans first, then a bounded chord search.
class PolygonTriangulator {
 public:
  PolygonTriangulator(std::set<NodePair>& edges, const std::set<NodePair>& forbidden, std::vector<Chord>& out)
      : edges_(edges), forbidden_(forbidden), out_(out) {}

  bool run(const std::vector<Occurrence>& poly, bool outer, bool allow_forbidden) {
    outer_ = outer;
    allow_forbidden_ = allow_forbidden;
    if (poly.size() <= 3) return true;
    std::vector<std::size_t> apex(poly.size());
    std::iota(apex.begin(), apex.end(), 0);
    std::stable_sort(apex.begin(), apex.end(), [&](std::size_t x, std::size_t y) { return poly[x].node < poly[y].node; });
    for (std::size_t q : apex)
      if (try_fan(poly, q)) return true;
    budget_ = 200000;
    return search(poly);
  }

 private:
  bool valid(const Occurrence& x, const Occurrence& y) const {
    if (x.node == y.node) return false;
    auto key = node_pair(x.node, y.node);
    if (edges_.count(key)) return false;
    return allow_forbidden_ || !forbidden_.count(key);
  }

  void add(const Occurrence& x, const Occurrence& y) {
    edges_.insert(node_pair(x.node, y.node));
    out_.push_back(Chord{x, y, outer_, {}});
  }

  void rollback(std::size_t mark) {
    while (out_.size() > mark) {
      edges_.erase(node_pair(out_.back().u.node, out_.back().v.node));
      out_.pop_back();
    }
  }

  bool try_fan(const std::vector<Occurrence>& poly, std::size_t q) {
    std::size_t L = poly.size(), mark = out_.size();
    for (std::size_t k = 2; k + 1 < L; ++k) {
      const auto& other = poly[(q + k) % L];
      if (!valid(poly[q], other)) {
        rollback(mark);
        return false;
      }
      add(poly[q], other);
    }
    return true;
  }

  bool search(const std::vector<Occurrence>& poly) {
    std::size_t L = poly.size();
    if (L <= 3) return true;
    if (budget_ == 0) return false;
    --budget_;
    std::size_t mark = out_.size();
    for (std::size_t i = 2; i + 1 < L; ++i) {
      if (!valid(poly[0], poly[i])) continue;
      add(poly[0], poly[i]);
      std::vector<Occurrence> left(poly.begin(), poly.begin() + static_cast<std::ptrdiff_t>(i) + 1);
      std::vector<Occurrence> right(poly.begin() + static_cast<std::ptrdiff_t>(i), poly.end());
      right.push_back(poly[0]);
      if (search(left) && search(right)) return true;
      rollback(mark);
    }
    if (valid(poly[1], poly[L - 1])) {
      add(poly[1], poly[L - 1]);
      std::vector<Occurrence> rest(poly.begin() + 1, poly.end());
      if (search(rest)) return true;
      rollback(mark);
    }
    return false;
  }

  std::set<NodePair>& edges_;
  const std::set<NodePair>& forbidden_;
  std::vector<Chord>& out_;
  bool outer_ = false;
  bool allow_forbidden_ = false;
  std::size_t budget_ = 0;
};

inline std::set<NodePair> long_pairs(std::size_t n) {
  std::set<NodePair> s;
  for (std::size_t i = 0; i < n; ++i) s.insert({2 * i, 2 * i + 1});
  return s;
}

inline std::set<NodePair> piece_pairs(const Planarization& P) {
  std::set<NodePair> s;
  for (std::size_t d = 0; d < P.darts.size(); d += 2) {
    auto key = node_pair(P.darts[d].from, P.darts[d].to);
    if (!s.insert(key).second) throw std::logic_error("planarization has parallel pieces");
  }
  return s;
}

inline std::vector<Occurrence> face_occurrences(const Planarization& P, const std::vector<CrossingBox>& boxes,
                                                std::size_t n, const std::vector<std::size_t>& face) {
  std::vector<Occurrence> occ;
  for (std::size_t k = 0; k < face.size(); ++k)
    occ.push_back(face_corner(P, boxes, n, face[(k + face.size() - 1) % face.size()], face[k]));
  return occ;
}

/// Triangulates every face of the frame from its rotation system. The outer
/// face gets a cycle through its segment endpoints; chords beyond that cycle
/// may join the two ends of one long edge when nothing else fits.
inline std::vector<Chord> combinatorial_connectors(const Planarization& P, const std::vector<CrossingBox>& boxes,
                                                   std::size_t n, std::size_t outer_face) {
  std::set<NodePair> edges = piece_pairs(P);
  const auto forbidden = long_pairs(n);
  std::vector<Chord> chords;
  auto fill = [&](const std::vector<Occurrence>& poly, bool outer, const std::string& what) {
    PolygonTriangulator tri(edges, forbidden, chords);
    if (tri.run(poly, outer, false)) return;
    if (outer && tri.run(poly, outer, true)) return;
    throw InputError("cannot triangulate " + what + " without a long edge inside a triangle");
  };
  for (std::size_t f = 0; f < P.faces.size(); ++f) {
    auto occ = face_occurrences(P, boxes, n, P.faces[f]);
    if (f != outer_face) {
      fill(occ, false, "face " + std::to_string(f));
      continue;
    }
    std::vector<std::size_t> ends;
    for (std::size_t k = 0; k < occ.size(); ++k)
      if (occ[k].node < 2 * n) ends.push_back(k);
    if (ends.size() < 3) {
      fill(occ, true, "the outer face");
      continue;
    }
    std::vector<Occurrence> cycle;
    for (std::size_t i = 0; i < ends.size(); ++i) {
      const auto& x = occ[ends[i]];
      const auto& y = occ[ends[(i + 1) % ends.size()]];
      edges.insert(node_pair(x.node, y.node));
      chords.push_back(Chord{x, y, true, {}});
      cycle.push_back(x);
      std::vector<Occurrence> inside;
      for (std::size_t k = ends[i];; k = (k + 1) % occ.size()) {
        inside.push_back(occ[k]);
        if (k == ends[(i + 1) % ends.size()]) break;
      }
      fill(inside, false, "the outer face near '" + std::to_string(x.node) + "'");
    }
    fill(cycle, true, "the outer cycle");
  }
  return chords;
}

/// Outer face: the face of the lowest segment endpoint under a realization,
/// otherwise the face with the most endpoint corners (lowest id on ties).
inline std::size_t choose_outer_face(const Planarization& P, std::size_t n, const SegmentRealization* r) {
  if (r) {
    std::size_t best = 0;
    auto end_point = [&](std::size_t v) { return v % 2 ? r->segments[v / 2].b : r->segments[v / 2].a; };
    for (std::size_t v = 1; v < 2 * n; ++v) {
      const Point &p = end_point(v), &q = end_point(best);
      if (p.y < q.y || (p.y == q.y && p.x < q.x)) best = v;
    }
    return P.face_of_dart[P.rotation[best].front()];
  }
  std::size_t best = 0, best_count = 0;
  for (std::size_t f = 0; f < P.faces.size(); ++f) {
    std::size_t c = 0;
    for (std::size_t d : P.faces[f]) c += P.darts[d].from < 2 * n;
    if (c > best_count) best = f, best_count = c;
  }
  return best;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Geometric triangulation of the frame for a realization

namespace detail {

inline Point sub(const Point& p, const Point& q) { return Point{p.x - q.x, p.y - q.y}; }
inline Rational cross(const Point& u, const Point& v) { return u.x * v.y - u.y * v.x; }

inline bool bbox_apart(const Segment& s, const Segment& t) { return boxes_disjoint(s, t); }

/// Box corner hit by a chord leaving crossing `x` toward `target`.
inline int corner_toward(const Point& x, const Point& target, const Point& da, const Point& db) {
  Point w = sub(target, x);
  Rational den = cross(da, db);
  Rational alpha = cross(w, db) / den, beta = cross(da, w) / den;
  if (alpha == 0 || beta == 0) throw std::logic_error("connector runs along a segment");
  return 2 * (alpha > 0) + (beta > 0);
}

/// Hull boundary of the node set, counterclockwise, with collinear boundary nodes.
inline std::vector<std::size_t> hull_cycle(const std::vector<Point>& pos) {
  std::vector<std::size_t> idx(pos.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return pos[a] < pos[b]; });
  std::vector<std::size_t> h;
  for (int pass = 0; pass < 2; ++pass) {
    std::size_t base = h.size();
    for (std::size_t i : idx) {
      while (h.size() >= base + 2 && orientation(pos[h[h.size() - 2]], pos[h.back()], pos[i]) <= 0) h.pop_back();
      h.push_back(i);
    }
    h.pop_back();
    std::reverse(idx.begin(), idx.end());
  }
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < h.size(); ++k) {
    const Point &a = pos[h[k]], &b = pos[h[(k + 1) % h.size()]];
    std::vector<std::pair<Rational, std::size_t>> on;
    for (std::size_t v = 0; v < pos.size(); ++v)
      if (in_open_segment(Segment{a, b}, pos[v])) on.emplace_back(parameter_along(Segment{a, b}, pos[v]), v);
    std::sort(on.begin(), on.end());
    out.push_back(h[k]);
    for (const auto& [_, v] : on) out.push_back(v);
  }
  return out;
}

struct ExteriorRouter {
  std::vector<Point> hull;            // strict hull corners, ccw
  std::vector<Segment> obstacles;     // hull boundary and routed legs
  std::vector<Point> anchors;         // hull cycle points (legs may share these)
  Point center;

  bool outside(const Point& q) const {
    for (std::size_t k = 0; k < hull.size(); ++k)
      if (orientation(hull[k], hull[(k + 1) % hull.size()], q) < 0) return true;
    return false;
  }

  bool leg_ok(const Segment& s) const {
    if (s.a == s.b) return false;
    Point mid{(s.a.x + s.b.x) / 2, (s.a.y + s.b.y) / 2};
    if (!outside(mid)) return false;
    for (const auto& o : obstacles) {
      if (bbox_apart(s, o)) continue;
      auto rel = segment_relation(s, o);
      if (rel.conflicts()) return false;
      if (rel.kind == RelationKind::shared_endpoint &&
          std::find(anchors.begin(), anchors.end(), *rel.point) == anchors.end())
        return false;
    }
    return true;
  }

  Point waypoint(const Point& h, const Rational& lambda) const {
    return Point{center.x + lambda * (h.x - center.x), center.y + lambda * (h.y - center.y)};
  }

  /// Polyline from cycle[i] to cycle[j] around cycle[i+1..j-1], or nothing.
  std::optional<std::vector<Point>> route(const std::vector<Point>& cycle, std::size_t i, std::size_t j,
                                          const Rational& lambda, std::size_t max_legs) {
    std::vector<Point> bends;
    Point cur = cycle[i];
    std::size_t last = i;
    while (true) {
      if (leg_ok(Segment{cur, cycle[j]})) break;
      bool moved = false;
      for (std::size_t m = j - 1; m > last; --m) {
        Point w = waypoint(cycle[m], lambda);
        if (leg_ok(Segment{cur, w})) {
          bends.push_back(w);
          cur = w;
          last = m;
          moved = true;
          break;
        }
      }
      if (!moved || bends.size() + 1 > max_legs) return std::nullopt;
    }
    Point prev = cycle[i];
    for (const auto& b : bends) {
      obstacles.push_back(Segment{prev, b});
      prev = b;
    }
    obstacles.push_back(Segment{prev, cycle[j]});
    return bends;
  }
};

/// Straight chords of a constrained triangulation inside the hull, then
/// polylines outside it for the remaining outer-face triangulation.
inline std::vector<Chord> geometric_connectors(const Planarization& P, const std::vector<CrossingBox>& boxes,
                                               std::size_t n, const SegmentRealization& r,
                                               const std::vector<Point>& pos) {
  const std::size_t N = pos.size();
  std::set<NodePair> edges = piece_pairs(P);
  std::vector<Segment> drawn;
  for (const auto& [u, v] : edges) drawn.push_back(Segment{pos[u], pos[v]});
  auto attach = [&](std::size_t node, const Point& toward) -> Occurrence {
    if (node < 2 * n) return {node, node};
    std::size_t p = node - 2 * n;
    const auto& sa = r.segments[boxes[p].a];
    const auto& sb = r.segments[boxes[p].b];
    return {node, corner_vertex(n, p, corner_toward(pos[node], toward, sub(sa.b, sa.a), sub(sb.b, sb.a)))};
  };

  std::vector<std::pair<double, NodePair>> cand;
  for (std::size_t u = 0; u < N; ++u)
    for (std::size_t v = u + 1; v < N; ++v) {
      if (edges.count({u, v})) continue;
      double dx = pos[u].x.get_d() - pos[v].x.get_d(), dy = pos[u].y.get_d() - pos[v].y.get_d();
      cand.push_back({dx * dx + dy * dy, {u, v}});
    }
  std::sort(cand.begin(), cand.end());
  std::vector<Chord> chords;
  for (const auto& [_, uv] : cand) {
    auto [u, v] = uv;
    Segment s{pos[u], pos[v]};
    bool ok = true;
    for (std::size_t w = 0; w < N && ok; ++w)
      if (w != u && w != v && in_open_segment(s, pos[w])) ok = false;
    for (std::size_t k = 0; k < drawn.size() && ok; ++k)
      if (!bbox_apart(s, drawn[k]) && segment_relation(s, drawn[k]).conflicts()) ok = false;
    if (!ok) continue;
    edges.insert(uv);
    drawn.push_back(s);
    chords.push_back(Chord{attach(u, pos[v]), attach(v, pos[u]), false, {}});
  }

  auto cycle = hull_cycle(pos);
  std::set<NodePair> boundary;
  for (std::size_t k = 0; k < cycle.size(); ++k) {
    if (cycle[k] >= 2 * n) throw std::logic_error("crossing point on the hull boundary");
    boundary.insert(node_pair(cycle[k], cycle[(k + 1) % cycle.size()]));
  }
  for (auto& c : chords) c.outer = boundary.count(node_pair(c.u.node, c.v.node)) > 0;
  if (cycle.size() <= 3) return chords;

  std::vector<Occurrence> poly;
  for (std::size_t v : cycle) poly.push_back({v, v});
  std::vector<Chord> outside;
  const auto forbidden = long_pairs(n);
  {
    PolygonTriangulator tri(edges, forbidden, outside);
    if (!tri.run(poly, true, false) && !tri.run(poly, true, true))
      throw InputError("cannot triangulate beyond the hull");
  }
  // The triangle on the closing hull edge stays unbounded; chord (i, j) with
  // i < j wraps the cycle points strictly between positions i and j.
  std::map<std::size_t, std::size_t> at;
  for (std::size_t k = 0; k < cycle.size(); ++k) at[cycle[k]] = k;
  std::vector<std::pair<std::size_t, std::size_t>> span;
  for (const auto& c : outside) span.push_back(std::minmax(at[c.u.node], at[c.v.node]));
  std::vector<std::size_t> order(outside.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return span[x].second - span[x].first < span[y].second - span[y].first;
  });
  std::vector<int> level(outside.size(), 0);
  for (std::size_t x : order)
    for (std::size_t y : order)
      if (y != x && span[x].first <= span[y].first && span[y].second <= span[x].second)
        level[x] = std::max(level[x], level[y] + 1);

  std::vector<Point> cpos;
  for (std::size_t v : cycle) cpos.push_back(pos[v]);
  ExteriorRouter router;
  Rational cx = 0, cy = 0;
  for (const auto& p : cpos) cx += p.x, cy += p.y;
  router.center = Point{cx / static_cast<long>(cpos.size()), cy / static_cast<long>(cpos.size())};
  for (std::size_t k = 0; k < cycle.size(); ++k) {
    std::size_t prev = (k + cycle.size() - 1) % cycle.size(), next = (k + 1) % cycle.size();
    if (orientation(cpos[prev], cpos[k], cpos[next]) != 0) router.hull.push_back(cpos[k]);
  }
  router.anchors = cpos;
  Rational base = 2;
  for (int attempt = 0; attempt < 8; ++attempt, base *= 4) {
    ExteriorRouter R = router;
    for (std::size_t k = 0; k < cpos.size(); ++k) R.obstacles.push_back(Segment{cpos[k], cpos[(k + 1) % cpos.size()]});
    bool ok = true;
    for (std::size_t x : order) {
      Rational lambda = base;
      for (int l = 0; l < level[x]; ++l) lambda *= 2;
      auto bends = R.route(cpos, span[x].first, span[x].second, lambda, n);
      if (!bends) {
        ok = false;
        break;
      }
      outside[x].route = *bends;
      if (at[outside[x].u.node] != span[x].first) std::reverse(outside[x].route.begin(), outside[x].route.end());
    }
    if (!ok) continue;
    for (auto& c : outside) chords.push_back(std::move(c));
    return chords;
  }
  throw ResourceError("no exterior route for the outer-face connectors within " + std::to_string(n) + " bends");
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Instance assembly

inline std::string endpoint_name(const PseudoSegmentArrangement& a, std::size_t v) {
  return a.names[v / 2] + "." + (v % 2 ? "2" : "1");
}

inline std::string corner_name(const PseudoSegmentArrangement& a, const CrossingBox& b, int k) {
  return "c(" + a.names[b.a] + "." + std::to_string(k / 2 + 1) + "," + a.names[b.b] + "." + std::to_string(k % 2 + 1) + ")";
}

/// Builds the n-1 inner vertices and n edges of every path, then the blockers.
inline void materialize(ThicknessInstance& inst) {
  if (inst.materialized) return;
  const auto& a = inst.arrangement;
  const std::size_t n = inst.n();
  const int t = inst.t;
  Multigraph g;
  for (std::size_t v = 0; v < 2 * n; ++v) g.add_vertex(endpoint_name(a, v));
  for (const auto& b : inst.boxes)
    for (int k = 0; k < 4; ++k) g.add_vertex(corner_name(a, b, k));
  inst.edge_origin.clear();
  inst.long_edges.clear();
  for (SegmentId s = 0; s < n; ++s) {
    inst.long_edges.push_back(g.add_edge(2 * s, 2 * s + 1, 1, EdgeRole::long_edge));
    inst.edge_origin.push_back("long " + a.names[s]);
  }
  for (auto& b : inst.boxes)
    for (int e = 0; e < 4; ++e) {
      auto [x, y] = box_edge_corners[static_cast<std::size_t>(e)];
      b.edges[static_cast<std::size_t>(e)] =
          g.add_edge(b.corner[static_cast<std::size_t>(x)], b.corner[static_cast<std::size_t>(y)], t - 1, EdgeRole::crossing_box);
      inst.edge_origin.push_back("box " + a.names[b.a] + "x" + a.names[b.b] + " crossed by " +
                                 a.names[e < 2 ? b.a : b.b]);
    }
  for (std::size_t pi = 0; pi < inst.paths.size(); ++pi) {
    auto& p = inst.paths[pi];
    p.inner.clear();
    p.edges.clear();
    std::string origin = p.role == EdgeRole::connector
                             ? std::string(p.outer ? "outer connector" : "connector")
                             : "tunnel " + a.names[p.segment] + (p.side > 0 ? " left" : " right");
    VertexId prev = p.from;
    for (std::size_t k = 1; k < inst.path_length; ++k) {
      VertexId v = g.add_vertex("p" + std::to_string(pi) + "." + std::to_string(k));
      p.inner.push_back(v);
      p.edges.push_back(g.add_edge(prev, v, t, p.role));
      inst.edge_origin.push_back(origin);
      prev = v;
    }
    p.edges.push_back(g.add_edge(prev, p.to, t, p.role));
    inst.edge_origin.push_back(origin);
  }
  // blocker vertices: the tunnel vertex next to each box corner on the segment's own boundary
  std::map<std::pair<VertexId, SegmentId>, VertexId> next_to;
  for (const auto& p : inst.paths) {
    if (p.role != EdgeRole::tunnel_boundary) continue;
    next_to[{p.from, p.segment}] = p.inner.empty() ? p.to : p.inner.front();
    next_to[{p.to, p.segment}] = p.inner.empty() ? p.from : p.inner.back();
  }
  inst.blockers.clear();
  for (std::size_t bi = 0; bi < inst.boxes.size(); ++bi) {
    const auto& b = inst.boxes[bi];
    for (SegmentId s : {b.a, b.b})
      for (int side = 0; side < 2; ++side) {
        VertexId u = next_to.at({b.corner[static_cast<std::size_t>(detail::corner_index(b, s, 0, side))], s});
        VertexId v = next_to.at({b.corner[static_cast<std::size_t>(detail::corner_index(b, s, 1, side))], s});
        EdgeId e = g.add_edge(u, v, 1, EdgeRole::blocker);
        inst.blockers.push_back(Blocker{bi, s, u, v, e});
        inst.edge_origin.push_back("blocker " + a.names[s] + " at " + a.names[b.a] + "x" + a.names[b.b]);
      }
  }
  inst.graph = std::move(g);
  inst.materialized = true;
}

/// Thickness multigraph of a connected pseudo-segment arrangement in which
/// every segment crosses at least once.
inline ThicknessInstance build_thickness_instance(const PseudoSegmentArrangement& a, int t,
                                                  const ReductionOptions& opt = {}) {
  if (t < 2) throw InputError("thickness parameter must be at least 2");
  auto v = validate(a);
  if (!v.accepted()) throw InputError("arrangement is invalid: " + v.summary());
  const std::size_t n = a.segment_count();
  if (n == 0) throw InputError("arrangement has no segments");
  for (SegmentId s = 0; s < n; ++s)
    if (a.crossings[s].empty()) throw InputError("segment '" + a.names[s] + "' has no crossing");
  const SegmentRealization* r = opt.realization ? &*opt.realization : nullptr;
  if (r && !isomorphic(from_segments(*r), a, false))
    throw InputError("realization does not match the arrangement");
  auto raw = to_raw(a);
  auto P = planarize(raw);
  if (P.component_count() != 1) throw InputError("arrangement is disconnected; its faces are not determined");

  ThicknessInstance inst;
  inst.arrangement = a;
  inst.t = t;
  inst.path_length = n;
  for (std::size_t p = 0; p < raw.points.size(); ++p) {
    CrossingBox b;
    auto m = raw.points[p].members();
    b.a = std::min(m[0], m[1]);
    b.b = std::max(m[0], m[1]);
    for (int k = 0; k < 4; ++k) b.corner[static_cast<std::size_t>(k)] = detail::corner_vertex(n, p, k);
    inst.boxes.push_back(b);
  }
  // tunnel boundaries
  for (SegmentId s = 0; s < n; ++s) {
    const auto& cr = a.crossings[s];
    const auto& pts = raw.order[s];
    for (int side : {1, -1}) {
      auto other_end = [&](std::size_t m) { return (cr[m].sign > 0) == (side > 0) ? 0 : 1; };
      auto corner = [&](std::size_t m, int end_s) {
        const auto& b = inst.boxes[pts[m]];
        return b.corner[static_cast<std::size_t>(detail::corner_index(b, s, end_s, other_end(m)))];
      };
      auto add = [&](VertexId from, std::size_t nf, VertexId to, std::size_t nt) {
        FramePath fp;
        fp.role = EdgeRole::tunnel_boundary;
        fp.from = from, fp.to = to, fp.node_from = nf, fp.node_to = nt;
        fp.segment = s, fp.side = side;
        inst.paths.push_back(std::move(fp));
      };
      add(2 * s, 2 * s, corner(0, 0), 2 * n + pts[0]);
      for (std::size_t m = 0; m + 1 < pts.size(); ++m) add(corner(m, 1), 2 * n + pts[m], corner(m + 1, 0), 2 * n + pts[m + 1]);
      add(corner(pts.size() - 1, 1), 2 * n + pts.back(), 2 * s + 1, 2 * s + 1);
    }
  }
  // connectors
  std::vector<detail::Chord> chords;
  if (r && 2 * n + raw.points.size() <= opt.geometric_limit) {
    for (std::size_t v = 0; v < 2 * n; ++v)
      inst.node_position.push_back(v % 2 ? r->segments[v / 2].b : r->segments[v / 2].a);
    for (const auto& b : inst.boxes)
      inst.node_position.push_back(line_intersection(r->segments[b.a], r->segments[b.b]));
    chords = detail::geometric_connectors(P, inst.boxes, n, *r, inst.node_position);
  } else {
    chords = detail::combinatorial_connectors(P, inst.boxes, n, detail::choose_outer_face(P, n, r));
  }
  for (auto& c : chords) {
    FramePath fp;
    fp.role = EdgeRole::connector;
    fp.from = c.u.attach, fp.to = c.v.attach, fp.node_from = c.u.node, fp.node_to = c.v.node;
    fp.outer = c.outer;
    fp.route = std::move(c.route);
    inst.paths.push_back(std::move(fp));
  }
  if (opt.materialize && inst.vertex_count() <= opt.materialize_limit) materialize(inst);
  return inst;
}

// ---------------------------------------------------------------------------
// Contracted frame

struct FrameLink {
  EdgeRole role = EdgeRole::tunnel_boundary;
  std::size_t u = 0;
  std::size_t v = 0;
};

struct FrameReport {
  Verdict verdict;
  std::size_t vertices = 0;  // V*
  std::size_t edges = 0;     // E*
};

namespace detail {

inline bool planar(std::size_t V, const std::vector<NodePair>& E) {
  using G = boost::adjacency_list<boost::vecS, boost::vecS, boost::undirectedS,
                                  boost::property<boost::vertex_index_t, int>>;
  G g(V);
  for (const auto& [u, v] : E) boost::add_edge(u, v, g);
  return boost::boyer_myrvold_planarity_test(g);
}

/// True if removing `skip` leaves a connected graph without articulation points.
inline bool biconnected_without(const std::vector<std::vector<std::size_t>>& adj, std::size_t skip) {
  const std::size_t V = adj.size();
  std::size_t root = skip == 0 ? 1 : 0;
  std::vector<std::size_t> disc(V, 0), low(V, 0), parent(V, V), it(V, 0);
  std::size_t timer = 0, seen = 0, root_children = 0;
  std::vector<std::size_t> stack{root};
  disc[root] = low[root] = ++timer;
  ++seen;
  while (!stack.empty()) {
    std::size_t v = stack.back();
    if (it[v] < adj[v].size()) {
      std::size_t w = adj[v][it[v]++];
      if (w == skip) continue;
      if (!disc[w]) {
        parent[w] = v;
        disc[w] = low[w] = ++timer;
        ++seen;
        if (v == root) ++root_children;
        stack.push_back(w);
      } else if (w != parent[v]) {
        low[v] = std::min(low[v], disc[w]);
      }
      continue;
    }
    stack.pop_back();
    std::size_t p = parent[v];
    if (p != V) {
      low[p] = std::min(low[p], low[v]);
      if (p != root && low[v] >= disc[p]) return false;
    }
  }
  return seen == V - 1 && root_children <= 1;
}

}  // namespace detail

/// Checks simple, planar, 3-connected, maximal planar, and no long edge with
/// both ends on one triangle (adjacent in the frame) unless an outer connector
/// joins them.
inline FrameReport check_contracted_frame(std::size_t node_count, const std::vector<FrameLink>& links,
                                          const std::vector<std::size_t>& node_class,
                                          const std::vector<std::pair<std::size_t, std::size_t>>& long_ends,
                                          const std::set<detail::NodePair>& outer_pairs,
                                          const std::vector<std::string>& node_names) {
  FrameReport rep;
  auto& verdict = rep.verdict;
  // compress node classes to 0..V*-1
  std::map<std::size_t, std::size_t> cls;
  for (std::size_t v = 0; v < node_count; ++v) cls.emplace(node_class[v], cls.size());
  const std::size_t V = cls.size();
  rep.vertices = V;
  std::vector<std::string> label(V);
  for (std::size_t v = 0; v < node_count; ++v)
    if (label[cls[node_class[v]]].empty()) label[cls[node_class[v]]] = node_names[v];
  std::map<detail::NodePair, std::pair<int, int>> group;  // (tunnel links, connectors)
  for (const auto& l : links) {
    std::size_t u = cls.at(l.u), v = cls.at(l.v);
    if (u == v) {
      verdict.reject("frame_loop", {label[u]}, std::string(to_string(l.role)) + " path returns to its own node");
      continue;
    }
    auto& g = group[detail::node_pair(u, v)];
    (l.role == EdgeRole::connector ? g.second : g.first)++;
  }
  std::vector<detail::NodePair> E;
  for (const auto& [uv, g] : group) {
    E.push_back(uv);
    bool tunnel_pair = g.first == 2 && g.second == 0;
    bool connector = g.first == 0 && g.second == 1;
    if (!tunnel_pair && !connector)
      verdict.reject("frame_not_simple", {label[uv.first], label[uv.second]},
                     std::to_string(g.first) + " tunnel paths and " + std::to_string(g.second) + " connectors");
  }
  rep.edges = E.size();
  if (V >= 3 && E.size() != 3 * V - 6)
    verdict.reject("frame_not_maximal", {}, "E*=" + std::to_string(E.size()) + ", 3V*-6=" + std::to_string(3 * V - 6));
  if (!detail::planar(V, E)) verdict.reject("frame_not_planar");
  std::vector<std::vector<std::size_t>> adj(V);
  for (const auto& [u, v] : E) adj[u].push_back(v), adj[v].push_back(u);
  if (V >= 4) {
    for (std::size_t v = 0; v < V; ++v)
      if (!detail::biconnected_without(adj, v)) {
        verdict.reject("frame_not_3_connected", {label[v]}, "removing this node leaves a cut vertex or a split");
        break;
      }
  }
  for (const auto& [x, y] : long_ends) {
    auto key = detail::node_pair(cls.at(node_class[x]), cls.at(node_class[y]));
    if (!group.count(key)) continue;
    if (outer_pairs.count(detail::node_pair(x, y)))
      verdict.warnings.push_back("outer connector joins both ends of " + label[key.first] + "-" + label[key.second]);
    else
      verdict.reject("long_edge_in_triangle", {node_names[x], node_names[y]});
  }
  return rep;
}

namespace detail {

inline std::set<NodePair> outer_connector_pairs(const ThicknessInstance& inst) {
  std::set<NodePair> s;
  for (const auto& p : inst.paths)
    if (p.role == EdgeRole::connector && p.outer) s.insert(node_pair(p.node_from, p.node_to));
  return s;
}

inline std::vector<std::string> node_names(const ThicknessInstance& inst) {
  std::vector<std::string> names;
  for (std::size_t v = 0; v < 2 * inst.n(); ++v) names.push_back(endpoint_name(inst.arrangement, v));
  for (const auto& b : inst.boxes)
    names.push_back("box(" + inst.arrangement.names[b.a] + "," + inst.arrangement.names[b.b] + ")");
  return names;
}

}  // namespace detail

/// Contracts the frame from the path records (no graph needed).
inline FrameReport check_frame_skeleton(const ThicknessInstance& inst) {
  std::vector<FrameLink> links;
  for (const auto& p : inst.paths) links.push_back({p.role, p.node_from, p.node_to});
  std::vector<std::size_t> cls(inst.node_count());
  std::iota(cls.begin(), cls.end(), 0);
  std::vector<std::pair<std::size_t, std::size_t>> ends;
  for (std::size_t s = 0; s < inst.n(); ++s) ends.push_back({2 * s, 2 * s + 1});
  return check_contracted_frame(inst.node_count(), links, cls, ends, detail::outer_connector_pairs(inst),
                                detail::node_names(inst));
}

/// Extracts the frame from the role-tagged multigraph: nodes are long-edge
/// ends and crossing-box corners, every other frame vertex must lie on exactly
/// one path; box corners contract to one node per box.
inline FrameReport extract_frame(const ThicknessInstance& inst) {
  if (!inst.materialized) return check_frame_skeleton(inst);
  const auto& g = inst.graph;
  const std::size_t V = g.vertex_count();
  FrameReport bad;
  std::vector<bool> is_node(V, false);
  std::vector<std::size_t> parent(V);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::vector<std::vector<std::pair<VertexId, EdgeId>>> adj(V);
  std::vector<std::pair<std::size_t, std::size_t>> ends;
  for (EdgeId e = 0; e < g.edge_class_count(); ++e) {
    const auto& ec = g.edge(e);
    switch (ec.role) {
      case EdgeRole::long_edge:
        is_node[ec.u] = is_node[ec.v] = true;
        ends.push_back({ec.u, ec.v});
        break;
      case EdgeRole::crossing_box:
        is_node[ec.u] = is_node[ec.v] = true;
        parent[find(ec.u)] = find(ec.v);
        break;
      case EdgeRole::tunnel_boundary:
      case EdgeRole::connector:
        adj[ec.u].push_back({ec.v, e});
        adj[ec.v].push_back({ec.u, e});
        break;
      default: break;
    }
  }
  for (VertexId v = 0; v < V; ++v)
    if (!is_node[v] && !adj[v].empty() && adj[v].size() != 2) {
      bad.verdict.reject("frame_path_broken", {g.name(v)},
                         "inner path vertex has frame degree " + std::to_string(adj[v].size()));
      return bad;
    }
  // every crossing box must be a 4-cycle on four corners
  std::vector<std::size_t> box_degree(V, 0);
  std::map<std::size_t, std::pair<std::size_t, std::size_t>> box_size;  // class -> (corners, edges)
  for (EdgeId e = 0; e < g.edge_class_count(); ++e)
    if (g.edge(e).role == EdgeRole::crossing_box) {
      ++box_degree[g.edge(e).u], ++box_degree[g.edge(e).v];
      ++box_size[find(g.edge(e).u)].second;
    }
  for (VertexId v = 0; v < V; ++v)
    if (box_degree[v] > 0) ++box_size[find(v)].first;
  for (VertexId v = 0; v < V; ++v)
    if (box_degree[v] > 0 && (box_degree[v] != 2 || box_size[find(v)] != std::pair<std::size_t, std::size_t>{4, 4})) {
      bad.verdict.reject("crossing_box_broken", {g.name(v)}, "crossing box is not a 4-cycle");
      return bad;
    }
  std::vector<bool> used(g.edge_class_count(), false);
  std::vector<FrameLink> links;
  for (VertexId s = 0; s < V; ++s) {
    if (!is_node[s]) continue;
    for (auto [w, e] : adj[s]) {
      if (used[e]) continue;
      EdgeRole role = g.edge(e).role;
      used[e] = true;
      VertexId cur = w;
      while (!is_node[cur]) {
        auto [nx, ne] = adj[cur][0].second == e ? adj[cur][1] : adj[cur][0];
        if (used[ne] || g.edge(ne).role != role) {
          bad.verdict.reject("frame_path_broken", {g.name(cur)}, "path changes role or closes on itself");
          return bad;
        }
        used[ne] = true;
        cur = nx, e = ne;
      }
      links.push_back({role, s, cur});
    }
  }
  for (EdgeId e = 0; e < g.edge_class_count(); ++e)
    if ((g.edge(e).role == EdgeRole::tunnel_boundary || g.edge(e).role == EdgeRole::connector) && !used[e]) {
      bad.verdict.reject("frame_path_broken", {g.name(g.edge(e).u)}, "path without a node at either end");
      return bad;
    }
  // links carry box representatives; long ends and outer pairs stay per node
  std::vector<VertexId> nodes;
  std::map<VertexId, std::size_t> index;
  for (VertexId v = 0; v < V; ++v)
    if (is_node[v]) index[v] = nodes.size(), nodes.push_back(v);
  std::vector<std::size_t> node_class;
  std::vector<std::string> names;
  for (VertexId v : nodes) node_class.push_back(find(v)), names.push_back(g.name(v));
  for (auto& l : links) l.u = find(l.u), l.v = find(l.v);
  std::vector<std::pair<std::size_t, std::size_t>> local_ends;
  for (auto [x, y] : ends) local_ends.push_back({index.at(x), index.at(y)});
  std::set<detail::NodePair> outer;
  for (const auto& p : inst.paths)
    if (p.role == EdgeRole::connector && p.outer && index.count(p.from) && index.count(p.to))
      outer.insert(detail::node_pair(index.at(p.from), index.at(p.to)));
  return check_contracted_frame(nodes.size(), links, node_class, local_ends, outer, names);
}

inline Verdict extract_and_check_frame(const ThicknessInstance& inst) { return extract_frame(inst).verdict; }

}  // namespace gthick

#endif
