// Straight-line witnesses for the thickness instance and the sunflower family
// built from a realization of the arrangement.
#ifndef GTHICK_WITNESS_HPP
#define GTHICK_WITNESS_HPP

#include "gthick/certificate.hpp"
#include "gthick/coloring.hpp"
#include "gthick/reduction.hpp"

#include <cmath>
#include <limits>
#include <string>
#include <vector>

namespace gthick {

struct ThicknessWitness {
  ThicknessInstance instance;
  Drawing drawing;
  EdgeColoring coloring;
  Rational epsilon;
  Verdict verdict;
};

namespace detail {

inline Point unit_linf(const Point& d) {
  Rational m = std::max(abs(d.x), abs(d.y));
  return Point{d.x / m, d.y / m};
}

inline Point add(const Point& p, const Point& q) { return Point{p.x + q.x, p.y + q.y}; }
inline Point scale(const Point& p, const Rational& s) { return Point{p.x * s, p.y * s}; }
inline Point lerp(const Point& p, const Point& q, const Rational& s) { return add(p, scale(sub(q, p), s)); }

/// Smallest node-node and node-edge distance of the straight frame, in doubles.
inline double frame_clearance(const ThicknessInstance& inst) {
  const auto& pos = inst.node_position;
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  std::set<NodePair> seen;
  for (const auto& p : inst.paths)
    if (p.route.empty() && seen.insert(node_pair(p.node_from, p.node_to)).second) edges.push_back({p.node_from, p.node_to});
  auto xy = [&](std::size_t v) { return std::pair<double, double>{pos[v].x.get_d(), pos[v].y.get_d()}; };
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t u = 0; u < pos.size(); ++u)
    for (std::size_t v = u + 1; v < pos.size(); ++v) {
      auto [x1, y1] = xy(u);
      auto [x2, y2] = xy(v);
      best = std::min(best, std::hypot(x1 - x2, y1 - y2));
    }
  for (const auto& [a, b] : edges) {
    auto [ax, ay] = xy(a);
    auto [bx, by] = xy(b);
    double dx = bx - ax, dy = by - ay, len2 = dx * dx + dy * dy;
    for (std::size_t w = 0; w < pos.size(); ++w) {
      if (w == a || w == b) continue;
      auto [wx, wy] = xy(w);
      double s = std::clamp(((wx - ax) * dx + (wy - ay) * dy) / len2, 0.0, 1.0);
      best = std::min(best, std::hypot(ax + s * dx - wx, ay + s * dy - wy));
    }
  }
  return best;
}

inline Rational power_of_two_below(double x) {
  int e = static_cast<int>(std::floor(std::log2(x)));
  Rational r = 1;
  for (int k = 0; k < std::abs(e); ++k) r = e < 0 ? Rational(r / 2) : Rational(r * 2);
  return r;
}

/// Places every vertex of the materialized instance for box size `eps`.
inline Drawing place_witness(const ThicknessInstance& inst, const SegmentRealization& r, const Rational& eps) {
  const std::size_t n = inst.n();
  const auto& g = inst.graph;
  Drawing d(g.vertex_count());
  for (std::size_t v = 0; v < 2 * n; ++v) d.set(v, inst.node_position[v]);
  std::vector<Point> dir(n);
  for (SegmentId s = 0; s < n; ++s) dir[s] = unit_linf(sub(r.segments[s].b, r.segments[s].a));
  auto sgn_of = [](int end) { return Rational(end ? 1 : -1); };
  // corner and blocker-vertex positions: (corner vertex, segment) -> point
  std::map<std::pair<VertexId, SegmentId>, Point> beside;
  for (std::size_t p = 0; p < inst.boxes.size(); ++p) {
    const auto& b = inst.boxes[p];
    const Point& X = inst.node_position[2 * n + p];
    for (int k = 0; k < 4; ++k) {
      Rational si = sgn_of(k / 2), sj = sgn_of(k % 2);
      VertexId c = b.corner[static_cast<std::size_t>(k)];
      d.set(c, add(X, scale(add(scale(dir[b.a], si), scale(dir[b.b], sj)), eps)));
      beside[{c, b.a}] = add(X, scale(add(scale(dir[b.a], 2 * si), scale(dir[b.b], sj / 2)), eps));
      beside[{c, b.b}] = add(X, scale(add(scale(dir[b.a], si / 2), scale(dir[b.b], 2 * sj)), eps));
    }
  }
  for (const auto& p : inst.paths) {
    const std::size_t m = p.inner.size();
    if (p.role == EdgeRole::tunnel_boundary) {
      std::vector<Point> fixed_front, fixed_back;
      auto it = beside.find({p.from, p.segment});
      if (p.from >= 2 * n) fixed_front.push_back(it->second);
      auto jt = beside.find({p.to, p.segment});
      if (p.to >= 2 * n) fixed_back.push_back(jt->second);
      std::size_t free = m - fixed_front.size() - fixed_back.size();
      Point lo = fixed_front.empty() ? d.at(p.from) : fixed_front[0];
      Point hi = fixed_back.empty() ? d.at(p.to) : fixed_back[0];
      std::size_t k = 0;
      if (!fixed_front.empty()) d.set(p.inner[k++], lo);
      // free vertices strictly between lo and hi; when lo is the endpoint itself the
      // first free vertex sits one step along
      std::size_t denom = free + 1;
      for (std::size_t f = 1; f <= free; ++f)
        d.set(p.inner[k++], lerp(lo, hi, make_rational(static_cast<long>(f), static_cast<long>(denom))));
      if (!fixed_back.empty()) d.set(p.inner[k++], hi);
      continue;
    }
    // connector: polyline through its bends, extra subdivision points spread over the legs
    std::vector<Point> pts{d.at(p.from)};
    for (const auto& q : p.route) pts.push_back(q);
    pts.push_back(d.at(p.to));
    std::size_t legs = pts.size() - 1, extra = inst.path_length - legs;
    std::vector<std::size_t> cut(legs, 1);
    for (std::size_t e = 0; e < extra; ++e) ++cut[e % legs];
    std::size_t k = 0;
    for (std::size_t l = 0; l < legs; ++l)
      for (std::size_t s = 1; s <= cut[l]; ++s) {
        if (l + 1 == legs && s == cut[l]) break;
        d.set(p.inner[k++], lerp(pts[l], pts[l + 1], make_rational(static_cast<long>(s), static_cast<long>(cut[l]))));
      }
  }
  return d;
}

inline EdgeColoring witness_coloring(const ThicknessInstance& inst, const VertexColoring& col) {
  const auto& g = inst.graph;
  EdgeColoring c;
  c.colors.assign(g.edge_class_count(), {});
  std::vector<int> all(static_cast<std::size_t>(inst.t));
  std::iota(all.begin(), all.end(), 1);
  for (SegmentId s = 0; s < inst.n(); ++s) c.colors[inst.long_edges[s]] = {col[s]};
  for (const auto& b : inst.boxes)
    for (std::size_t e = 0; e < 4; ++e) {
      int skip = col[e < 2 ? b.a : b.b];
      auto& row = c.colors[b.edges[e]];
      for (int x : all)
        if (x != skip) row.push_back(x);
    }
  for (const auto& p : inst.paths)
    for (EdgeId e : p.edges) c.colors[e] = all;
  for (const auto& bl : inst.blockers) c.colors[bl.edge] = {col[bl.segment]};
  return c;
}

inline void check_witness_input(const PseudoSegmentArrangement& a, const SegmentRealization& r,
                                const VertexColoring& col, int t) {
  if (!isomorphic(from_segments(r), a, false)) throw InputError("realization does not match the arrangement");
  if (!is_proper(intersection_graph(a), col)) throw InputError("arrangement coloring is not proper");
  if (color_count(col) > t)
    throw InputError("coloring uses " + std::to_string(color_count(col)) + " colors but t=" + std::to_string(t));
}

}  // namespace detail

/// Thickness-t certificate for the instance of a stretchable arrangement:
/// long edges on the realization, thin boxes at the crossings, tunnels beside
/// the segments and connectors along the frame triangulation.
inline ThicknessWitness build_witness(const PseudoSegmentArrangement& a, const SegmentRealization& r,
                                      const VertexColoring& col, int t, int max_halvings = 16) {
  detail::check_witness_input(a, r, col, t);
  ReductionOptions opt;
  opt.realization = r;
  ThicknessWitness w;
  w.instance = build_thickness_instance(a, t, opt);
  if (w.instance.node_position.empty())
    throw ResourceError("arrangement exceeds the size limit for straight connectors");
  if (!w.instance.materialized) throw ResourceError("instance too large to materialize");
  w.coloring = detail::witness_coloring(w.instance, col);
  Rational eps = detail::power_of_two_below(detail::frame_clearance(w.instance) / 16);
  for (int k = 0; k <= max_halvings; ++k, eps /= 2) {
    w.drawing = detail::place_witness(w.instance, r, eps);
    bool distinct = true;
    std::set<Point> pts;
    for (VertexId v = 0; v < w.drawing.size(); ++v) distinct = distinct && pts.insert(w.drawing.at(v)).second;
    if (!distinct) continue;
    w.verdict = verify_thickness(w.instance.graph, w.drawing, w.coloring, t);
    if (w.verdict.accepted()) {
      w.epsilon = eps;
      return w;
    }
  }
  throw ResourceError("witness placement failed after " + std::to_string(max_halvings) + " halvings: " +
                      w.verdict.summary());
}

/// Crossings per edge class in a drawing.
inline std::vector<std::size_t> crossings_per_edge(const Multigraph& g, const Drawing& d) {
  std::vector<std::size_t> count(g.edge_class_count(), 0);
  for (const auto& cc : class_conflicts(g, d)) {
    count[cc.e] += static_cast<std::size_t>(g.edge(cc.f).multiplicity);
    count[cc.f] += static_cast<std::size_t>(g.edge(cc.e).multiplicity);
  }
  return count;
}

// ---------------------------------------------------------------------------
// Sunflower family

struct SgeFamily {
  GraphFamily family;  // member 0 is the frame H, member i the graph of color i
  int colors = 0;
  std::vector<std::pair<VertexId, VertexId>> frame_edges;
  std::vector<std::string> provenance;  // per vertex
  std::map<std::pair<std::size_t, int>, VertexId> subdivision;  // (frame edge, color) -> x
};

/// H is the frame without blockers; G_i holds the color-i long edges and a
/// 1-subdivision of H minus the box edges crossed by color-i segments.
inline SgeFamily build_sge_instance(const PseudoSegmentArrangement& a, const VertexColoring& col,
                                    const ReductionOptions& opt = {}) {
  if (!is_proper(intersection_graph(a), col)) throw InputError("arrangement coloring is not proper");
  const int c = color_count(col);
  auto inst = build_thickness_instance(a, std::max(2, c), opt);
  if (!inst.materialized) throw ResourceError("instance too large to materialize");
  const auto& g = inst.graph;
  SgeFamily s;
  s.colors = c;
  s.family = GraphFamily(g.names());
  for (VertexId v = 0; v < g.vertex_count(); ++v) s.provenance.push_back(v < 2 * inst.n() ? "endpoint" : "frame");
  // frame edges and the color whose long edges cross them (0 for none)
  std::vector<int> crossed_by;
  for (const auto& b : inst.boxes)
    for (std::size_t e = 0; e < 4; ++e) {
      auto [x, y] = box_edge_corners[e];
      s.frame_edges.push_back({b.corner[static_cast<std::size_t>(x)], b.corner[static_cast<std::size_t>(y)]});
      crossed_by.push_back(col[e < 2 ? b.a : b.b]);
    }
  for (const auto& p : inst.paths)
    for (EdgeId e : p.edges) {
      s.frame_edges.push_back({g.edge(e).u, g.edge(e).v});
      crossed_by.push_back(0);
    }
  std::size_t H = s.family.add_graph();
  for (const auto& [u, v] : s.frame_edges) s.family.add_edge(H, u, v);
  for (int i = 1; i <= c; ++i) {
    std::size_t Gi = s.family.add_graph();
    for (SegmentId seg = 0; seg < inst.n(); ++seg)
      if (col[seg] == i) s.family.add_edge(Gi, 2 * seg, 2 * seg + 1);
    for (std::size_t e = 0; e < s.frame_edges.size(); ++e) {
      if (crossed_by[e] == i) continue;
      auto [u, v] = s.frame_edges[e];
      VertexId x = s.family.add_vertex("x" + std::to_string(i) + "(" + g.name(u) + "," + g.name(v) + ")");
      s.provenance.push_back("subdivision");
      s.subdivision[{e, i}] = x;
      s.family.add_edge(Gi, u, x);
      s.family.add_edge(Gi, x, v);
    }
  }
  return s;
}

struct SgeWitness {
  SgeFamily family;
  Drawing drawing;
  Verdict verdict;
};

/// Places H as in the thickness witness and every x_i(e) just beside the
/// midpoint of e, at distinct offsets per color. A frame edge meeting a long
/// edge at a small angle gets its offset halved until the bent path is clear.
inline SgeWitness build_sge_witness(const PseudoSegmentArrangement& a, const SegmentRealization& r,
                                    const VertexColoring& col) {
  const int c = color_count(col);
  auto tw = build_witness(a, r, col, std::max(2, c));
  ReductionOptions opt;
  opt.realization = r;
  SgeWitness w;
  w.family = build_sge_instance(a, col, opt);
  const auto& f = w.family.family;
  const auto& base = tw.drawing;
  Drawing d(f.vertex_count());
  for (VertexId v = 0; v < base.size(); ++v) d.set(v, base.at(v));
  std::map<VertexId, std::size_t> frame_edge_of;
  for (const auto& [key, x] : w.family.subdivision) frame_edge_of[x] = key.first;
  std::vector<Rational> delta(w.family.frame_edges.size(), tw.epsilon / (16 * (c + 1)));
  std::set<std::size_t> last_bad;
  for (int round = 0; round < 64; ++round) {
    for (const auto& [key, x] : w.family.subdivision) {
      auto [u, v] = w.family.frame_edges[key.first];
      Point dir = detail::unit_linf(detail::sub(d.at(v), d.at(u)));
      Point normal{-dir.y, dir.x};
      Point mid = detail::lerp(d.at(u), d.at(v), make_rational(1, 2));
      d.set(x, detail::add(mid, detail::scale(normal, delta[key.first] * key.second)));
    }
    // after the first round only paths that moved are rechecked
    auto moved = [&](const GraphFamily::Edge& e) {
      if (round == 0) return true;
      for (VertexId end : {e.first, e.second})
        if (auto it = frame_edge_of.find(end); it != frame_edge_of.end() && last_bad.count(it->second)) return true;
      return false;
    };
    std::set<std::size_t> bad;
    for (std::size_t i = 1; i < f.graph_count(); ++i) {
      std::vector<GraphFamily::Edge> edges(f.graph(i).begin(), f.graph(i).end());
      std::vector<Segment> segs;
      for (const auto& [u, v] : edges) segs.push_back(Segment{d.at(u), d.at(v)});
      for (std::size_t p = 0; p < edges.size(); ++p) {
        bool mp = moved(edges[p]);
        for (std::size_t q = p + 1; q < edges.size(); ++q) {
          if (!mp && !moved(edges[q])) continue;
          if (detail::boxes_disjoint(segs[p], segs[q]) || !segment_relation(segs[p], segs[q]).conflicts()) continue;
          for (VertexId end : {edges[p].first, edges[p].second, edges[q].first, edges[q].second})
            if (auto it = frame_edge_of.find(end); it != frame_edge_of.end()) bad.insert(it->second);
        }
      }
    }
    if (bad.empty()) break;
    for (std::size_t e : bad) delta[e] /= 2;
    last_bad = std::move(bad);
  }
  w.drawing = std::move(d);
  w.verdict = verify_sge(w.family.family, w.drawing);
  return w;
}

}  // namespace gthick

#endif
