// Combinatorial pseudo-segment arrangements.
//
// A PseudoSegmentArrangement stores, per directed segment, the ordered list of
// segments it crosses together with the crossing sign: +1 if the other segment
// passes from this segment's left side to its right side, -1 otherwise. The
// two entries of one crossing therefore carry opposite signs.
//
// A RawArrangement allows several segments through one point; every point
// stores the counter-clockwise order of the segment branches leaving it.
#ifndef GTHICK_ARRANGEMENT_HPP
#define GTHICK_ARRANGEMENT_HPP

#include "gthick/coloring.hpp"
#include "gthick/geometry.hpp"
#include "gthick/verdict.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace gthick {

using SegmentId = std::size_t;

struct Crossing {
  SegmentId other = 0;
  int sign = 1;

  friend bool operator==(const Crossing& a, const Crossing& b) { return a.other == b.other && a.sign == b.sign; }
};

struct PseudoSegmentArrangement {
  std::vector<std::string> names;
  std::vector<std::vector<Crossing>> crossings;

  std::size_t segment_count() const { return names.size(); }

  SegmentId add_segment(std::string name) {
    names.push_back(std::move(name));
    crossings.emplace_back();
    return names.size() - 1;
  }

  std::size_t crossing_count() const {
    std::size_t total = 0;
    for (const auto& l : crossings) total += l.size();
    return total / 2;
  }

  std::optional<SegmentId> find(const std::string& name) const {
    for (SegmentId s = 0; s < names.size(); ++s)
      if (names[s] == name) return s;
    return std::nullopt;
  }
};

struct Branch {
  SegmentId segment = 0;
  bool forward = true;

  friend bool operator==(const Branch& a, const Branch& b) { return a.segment == b.segment && a.forward == b.forward; }
};

struct RawPoint {
  std::vector<Branch> ccw;               // 2k branches; branch i and i+k belong to one segment
  std::optional<SegmentId> transversal;  // designated segment through a concurrent pair

  std::vector<SegmentId> members() const {
    std::vector<SegmentId> m;
    for (std::size_t i = 0; i < ccw.size() / 2; ++i) m.push_back(ccw[i].segment);
    return m;
  }
  std::size_t multiplicity() const { return ccw.size() / 2; }
};

struct RawArrangement {
  std::vector<std::string> names;
  std::vector<RawPoint> points;
  std::vector<std::vector<std::size_t>> order;  // point ids along each segment

  std::size_t segment_count() const { return names.size(); }
  SegmentId add_segment(std::string name) {
    names.push_back(std::move(name));
    order.emplace_back();
    return names.size() - 1;
  }
  bool is_uniform() const {
    return std::all_of(points.begin(), points.end(), [](const RawPoint& p) { return p.multiplicity() == 2; });
  }
};

/// Branch order around a two-segment crossing where `sign` is the sign of b on a.
inline std::vector<Branch> crossing_rotation(SegmentId a, SegmentId b, int sign) {
  if (sign > 0) return {{a, true}, {b, false}, {a, false}, {b, true}};
  return {{a, true}, {b, true}, {a, false}, {b, false}};
}

inline RawArrangement to_raw(const PseudoSegmentArrangement& a) {
  RawArrangement r;
  r.names = a.names;
  r.order.assign(a.segment_count(), {});
  std::map<std::pair<SegmentId, SegmentId>, std::size_t> point_of;
  for (SegmentId s = 0; s < a.segment_count(); ++s) {
    for (const auto& c : a.crossings[s]) {
      auto key = std::minmax(s, c.other);
      auto it = point_of.find(key);
      if (it == point_of.end()) {
        int sign = s < c.other ? c.sign : -c.sign;
        RawPoint p;
        p.ccw = crossing_rotation(key.first, key.second, sign);
        r.points.push_back(std::move(p));
        it = point_of.emplace(key, r.points.size() - 1).first;
      }
      r.order[s].push_back(it->second);
    }
  }
  return r;
}

/// Inverse of to_raw for uniform raw arrangements.
inline PseudoSegmentArrangement to_pseudo_segments(const RawArrangement& r) {
  if (!r.is_uniform()) throw InputError("raw arrangement has concurrent crossings");
  PseudoSegmentArrangement a;
  a.names = r.names;
  a.crossings.assign(r.segment_count(), {});
  for (SegmentId s = 0; s < r.segment_count(); ++s) {
    for (std::size_t pid : r.order[s]) {
      const auto& ccw = r.points.at(pid).ccw;
      std::size_t i = 0;
      while (!(ccw[i].segment == s && ccw[i].forward)) ++i;
      const Branch& next = ccw[(i + 1) % 4];
      a.crossings[s].push_back(Crossing{next.segment, next.forward ? -1 : +1});
    }
  }
  return a;
}

// ---------------------------------------------------------------------------
// Planarization

/// The plane graph of an arrangement: segment endpoints and crossing points are
/// vertices, segment pieces between them are edges. Vertex 2s is the start and
/// 2s+1 the end of segment s; crossing point p is vertex 2n+p.
struct Planarization {
  struct Dart {
    std::size_t from = 0;
    std::size_t to = 0;
    SegmentId segment = 0;
    bool forward = true;
  };

  std::size_t vertex_count = 0;
  std::vector<Dart> darts;  // dart 2e and 2e+1 are twins
  std::vector<std::vector<std::size_t>> rotation;  // ccw outgoing darts per vertex
  std::vector<std::vector<std::size_t>> faces;     // dart cycles, face to the left
  std::vector<std::size_t> face_of_dart;

  static std::size_t twin(std::size_t d) { return d ^ 1u; }

  std::size_t next_in_face(std::size_t d) const {
    const auto& rot = rotation[darts[d].to];
    std::size_t t = twin(d);
    std::size_t i = static_cast<std::size_t>(std::find(rot.begin(), rot.end(), t) - rot.begin());
    return rot[(i + rot.size() - 1) % rot.size()];
  }

  std::size_t component_count() const {
    std::vector<std::size_t> parent(vertex_count);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    for (const auto& d : darts) parent[find(d.from)] = find(d.to);
    std::size_t c = 0;
    for (std::size_t v = 0; v < vertex_count; ++v) c += find(v) == v;
    return c;
  }

  /// Euler characteristic check: every component embeds on the sphere.
  bool is_planar() const {
    long v = static_cast<long>(vertex_count), e = static_cast<long>(darts.size() / 2);
    long f = static_cast<long>(faces.size()), c = static_cast<long>(component_count());
    return v - e + f == 2 * c;
  }
};

/// Builds the planarization; the raw arrangement must be structurally valid.
inline Planarization planarize(const RawArrangement& r) {
  const std::size_t n = r.segment_count();
  Planarization P;
  P.vertex_count = 2 * n + r.points.size();
  P.rotation.assign(P.vertex_count, {});
  // out_dart[(vertex, segment, forward)] for rotation assembly at crossing points
  std::map<std::tuple<std::size_t, SegmentId, bool>, std::size_t> out_dart;
  for (SegmentId s = 0; s < n; ++s) {
    std::vector<std::size_t> chain{2 * s};
    for (std::size_t pid : r.order[s]) chain.push_back(2 * n + pid);
    chain.push_back(2 * s + 1);
    for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
      std::size_t d = P.darts.size();
      P.darts.push_back({chain[i], chain[i + 1], s, true});
      P.darts.push_back({chain[i + 1], chain[i], s, false});
      out_dart[{chain[i], s, true}] = d;
      out_dart[{chain[i + 1], s, false}] = d + 1;
    }
  }
  for (SegmentId s = 0; s < n; ++s) {
    P.rotation[2 * s] = {out_dart.at({2 * s, s, true})};
    P.rotation[2 * s + 1] = {out_dart.at({2 * s + 1, s, false})};
  }
  for (std::size_t pid = 0; pid < r.points.size(); ++pid) {
    std::size_t v = 2 * n + pid;
    for (const auto& b : r.points[pid].ccw) P.rotation[v].push_back(out_dart.at({v, b.segment, b.forward}));
  }
  P.face_of_dart.assign(P.darts.size(), static_cast<std::size_t>(-1));
  for (std::size_t d0 = 0; d0 < P.darts.size(); ++d0) {
    if (P.face_of_dart[d0] != static_cast<std::size_t>(-1)) continue;
    std::vector<std::size_t> face;
    std::size_t d = d0;
    do {
      P.face_of_dart[d] = P.faces.size();
      face.push_back(d);
      d = P.next_in_face(d);
    } while (d != d0);
    P.faces.push_back(std::move(face));
  }
  return P;
}

inline Planarization planarize(const PseudoSegmentArrangement& a) { return planarize(to_raw(a)); }

// ---------------------------------------------------------------------------
// Validation

inline Verdict validate(const RawArrangement& r) {
  Verdict v;
  const std::size_t n = r.segment_count();
  if (r.order.size() != n) {
    v.reject("shape", {}, "order list count differs from segment count");
    return v;
  }
  std::map<std::pair<SegmentId, SegmentId>, std::size_t> shared;
  for (std::size_t pid = 0; pid < r.points.size(); ++pid) {
    const auto& p = r.points[pid];
    const std::size_t k = p.ccw.size() / 2;
    std::string pname = "p" + std::to_string(pid);
    if (p.ccw.size() % 2 != 0 || k < 2) {
      v.reject("point_arity", {pname}, "a crossing point needs at least two segments");
      continue;
    }
    bool ok = true;
    std::set<SegmentId> seen;
    for (std::size_t i = 0; i < k; ++i) {
      const auto& b = p.ccw[i];
      const auto& o = p.ccw[i + k];
      if (b.segment >= n || b.segment != o.segment || b.forward == o.forward || !seen.insert(b.segment).second) ok = false;
    }
    if (!ok) {
      v.reject("point_rotation", {pname}, "branches must be antipodal pairs of distinct segments");
      continue;
    }
    if (p.transversal && !seen.count(*p.transversal)) v.reject("transversal", {pname}, "transversal is not a member");
    for (SegmentId s : seen) {
      if (std::count(r.order[s].begin(), r.order[s].end(), pid) != 1)
        v.reject("order_membership", {pname, r.names[s]}, "member must list the point exactly once");
      for (SegmentId t : seen)
        if (s < t && ++shared[{s, t}] > 1)
          v.reject("multiple_crossing", {r.names[s], r.names[t]}, "segments share more than one point");
    }
  }
  for (SegmentId s = 0; s < n; ++s)
    for (std::size_t pid : r.order[s]) {
      if (pid >= r.points.size()) {
        v.reject("order_range", {r.names[s]}, "unknown point id");
        continue;
      }
      auto m = r.points[pid].members();
      if (std::find(m.begin(), m.end(), s) == m.end())
        v.reject("order_membership", {"p" + std::to_string(pid), r.names[s]}, "segment is not a member of the point");
    }
  if (v.accepted() && !planarize(r).is_planar()) v.reject("non_planar", {}, "crossing data admits no planar embedding");
  return v;
}

/// Accepts iff every pair crosses at most once, both entries of a crossing are
/// present with opposite signs, and the crossing data embeds in the plane.
inline Verdict validate(const PseudoSegmentArrangement& a) {
  Verdict v;
  const std::size_t n = a.segment_count();
  if (a.crossings.size() != n) {
    v.reject("shape", {}, "crossing list count differs from segment count");
    return v;
  }
  for (SegmentId s = 0; s < n; ++s) {
    std::set<SegmentId> seen;
    for (const auto& c : a.crossings[s]) {
      if (c.other >= n || c.other == s) {
        v.reject("bad_reference", {a.names[s]}, "crossing with itself or unknown segment");
        continue;
      }
      if (c.sign != 1 && c.sign != -1) v.reject("bad_sign", {a.names[s], a.names[c.other]});
      if (!seen.insert(c.other).second) {
        v.reject("multiple_crossing", {a.names[s], a.names[c.other]}, "pair crosses more than once");
        continue;
      }
      const auto& back = a.crossings[c.other];
      auto it = std::find_if(back.begin(), back.end(), [&](const Crossing& x) { return x.other == s; });
      if (it == back.end())
        v.reject("one_sided", {a.names[s], a.names[c.other]}, "crossing listed on one side only");
      else if (it->sign != -c.sign)
        v.reject("sign_mismatch", {a.names[s], a.names[c.other]}, "signs of a crossing must be opposite");
    }
  }
  if (v.accepted() && !planarize(a).is_planar()) v.reject("non_planar", {}, "crossing data admits no planar embedding");
  return v;
}

// ---------------------------------------------------------------------------
// Geometry <-> combinatorics

struct SegmentRealization {
  std::vector<std::string> names;
  std::vector<Segment> segments;
};

/// Sign of b's crossing on a for directed straight segments.
inline int crossing_sign(const Segment& a, const Segment& b) {
  Rational cross = (a.b.x - a.a.x) * (b.b.y - b.a.y) - (a.b.y - a.a.y) * (b.b.x - b.a.x);
  return -sgn(cross);
}

/// Combinatorial type of a realization in general position.
inline PseudoSegmentArrangement from_segments(const SegmentRealization& r) {
  const std::size_t n = r.segments.size();
  if (r.names.size() != n) throw InputError("realization names and segments differ in count");
  for (std::size_t i = 0; i < n; ++i)
    if (r.segments[i].a == r.segments[i].b) throw InputError("segment '" + r.names[i] + "' is degenerate");

  struct Hit {
    Rational param;
    Point point;
    SegmentId other;
  };
  std::vector<std::vector<Hit>> hits(n);
  for (SegmentId a = 0; a < n; ++a)
    for (SegmentId b = a + 1; b < n; ++b) {
      auto rel = segment_relation(r.segments[a], r.segments[b]);
      switch (rel.kind) {
        case RelationKind::disjoint: break;
        case RelationKind::proper_cross:
          hits[a].push_back({parameter_along(r.segments[a], *rel.point), *rel.point, b});
          hits[b].push_back({parameter_along(r.segments[b], *rel.point), *rel.point, a});
          break;
        case RelationKind::collinear_overlap:
          throw InputError("segments '" + r.names[a] + "' and '" + r.names[b] + "' overlap");
        default:
          throw InputError("segments '" + r.names[a] + "' and '" + r.names[b] + "' touch at an endpoint");
      }
    }
  PseudoSegmentArrangement out;
  out.names = r.names;
  out.crossings.assign(n, {});
  for (SegmentId a = 0; a < n; ++a) {
    auto& h = hits[a];
    std::sort(h.begin(), h.end(), [](const Hit& x, const Hit& y) { return x.param < y.param; });
    for (std::size_t i = 0; i + 1 < h.size(); ++i)
      if (h[i].param == h[i + 1].param)
        throw InputError("segments '" + r.names[a] + "', '" + r.names[h[i].other] + "' and '" +
                         r.names[h[i + 1].other] + "' are concurrent");
    for (const auto& x : h) out.crossings[a].push_back(Crossing{x.other, crossing_sign(r.segments[a], r.segments[x.other])});
  }
  return out;
}

/// Raw arrangement of a realization; concurrent crossings become points of
/// higher multiplicity (without a designated transversal).
inline RawArrangement raw_from_segments(const SegmentRealization& r) {
  const std::size_t n = r.segments.size();
  if (r.names.size() != n) throw InputError("realization names and segments differ in count");
  for (std::size_t i = 0; i < n; ++i)
    if (r.segments[i].a == r.segments[i].b) throw InputError("segment '" + r.names[i] + "' is degenerate");
  struct Box {
    double x0, y0, x1, y1;
  };
  std::vector<Box> box(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Segment& g = r.segments[i];
    double ax = g.a.x.get_d(), bx = g.b.x.get_d(), ay = g.a.y.get_d(), by = g.b.y.get_d();
    double pad = 1e-9 * (1 + std::max({std::abs(ax), std::abs(bx), std::abs(ay), std::abs(by)}));
    box[i] = {std::min(ax, bx) - pad, std::min(ay, by) - pad, std::max(ax, bx) + pad, std::max(ay, by) + pad};
  }
  std::vector<std::size_t> by_x(n);
  for (std::size_t i = 0; i < n; ++i) by_x[i] = i;
  std::sort(by_x.begin(), by_x.end(), [&](std::size_t a, std::size_t b) { return box[a].x0 < box[b].x0; });
  std::map<Point, std::set<SegmentId>> at;
  for (std::size_t ia = 0; ia < n; ++ia)
    for (std::size_t ib = ia + 1; ib < n; ++ib) {
      SegmentId a = by_x[ia], b = by_x[ib];
      if (box[b].x0 > box[a].x1) break;
      if (box[b].y0 > box[a].y1 || box[a].y0 > box[b].y1) continue;
      if (a > b) std::swap(a, b);
      auto rel = segment_relation(r.segments[a], r.segments[b]);
      if (rel.kind == RelationKind::disjoint) continue;
      if (rel.kind != RelationKind::proper_cross)
        throw InputError("segments '" + r.names[a] + "' and '" + r.names[b] + "' " + to_string(rel.kind));
      at[*rel.point].insert(a);
      at[*rel.point].insert(b);
    }
  RawArrangement raw;
  raw.names = r.names;
  raw.order.assign(n, {});
  std::vector<std::vector<std::pair<Rational, std::size_t>>> along(n);
  for (const auto& [pt, segs] : at) {
    const std::size_t pid = raw.points.size();
    std::vector<std::pair<Point, Branch>> dirs;
    for (SegmentId s : segs) {
      const Segment& g = r.segments[s];
      Point d{g.b.x - g.a.x, g.b.y - g.a.y};
      dirs.push_back({d, {s, true}});
      dirs.push_back({Point{-d.x, -d.y}, {s, false}});
      along[s].push_back({parameter_along(g, pt), pid});
    }
    std::sort(dirs.begin(), dirs.end(), [](const auto& x, const auto& y) { return ccw_angle_less(x.first, y.first); });
    RawPoint p;
    for (const auto& d : dirs) p.ccw.push_back(d.second);
    raw.points.push_back(std::move(p));
  }
  for (SegmentId s = 0; s < n; ++s) {
    std::sort(along[s].begin(), along[s].end());
    for (const auto& x : along[s]) raw.order[s].push_back(x.second);
  }
  return raw;
}

/// Reflection of the plane: orders are kept and every sign flips.
inline PseudoSegmentArrangement mirrored(PseudoSegmentArrangement a) {
  for (auto& l : a.crossings)
    for (auto& c : l) c.sign = -c.sign;
  return a;
}

inline bool isomorphic(const PseudoSegmentArrangement& a, const PseudoSegmentArrangement& b, bool allow_mirror) {
  if (a.names != b.names) throw InputError("arrangements have different segment labels");
  if (a.crossings == b.crossings) return true;
  return allow_mirror && mirrored(a).crossings == b.crossings;
}

// ---------------------------------------------------------------------------
// Intersection graph and coloring

inline SimpleGraph intersection_graph(const PseudoSegmentArrangement& a) {
  SimpleGraph g(a.segment_count());
  for (SegmentId s = 0; s < a.segment_count(); ++s)
    for (const auto& c : a.crossings[s]) g.add_edge(s, c.other);
  return g;
}

inline SimpleGraph intersection_graph(const RawArrangement& r) {
  SimpleGraph g(r.segment_count());
  for (const auto& p : r.points) {
    auto m = p.members();
    for (std::size_t i = 0; i < m.size(); ++i)
      for (std::size_t j = i + 1; j < m.size(); ++j) g.add_edge(m[i], m[j]);
  }
  return g;
}

enum class ColoringMode { heuristic, exact };

/// Proper coloring with at most max_colors colors, or nullopt. In exact mode
/// nullopt certifies that none exists; exceeding the budget throws ResourceError.
inline std::optional<VertexColoring> color_graph(const SimpleGraph& g, int max_colors, ColoringMode mode,
                                                 std::uint64_t node_limit = 5'000'000) {
  if (mode == ColoringMode::heuristic) {
    auto c = dsatur(g);
    if (color_count(c) > max_colors) return std::nullopt;
    return c;
  }
  return color_with_at_most(g, max_colors, node_limit).coloring;
}

template <typename Arrangement>
std::optional<VertexColoring> color_arrangement(const Arrangement& a, int max_colors, ColoringMode mode,
                                                std::uint64_t node_limit = 5'000'000) {
  return color_graph(intersection_graph(a), max_colors, mode, node_limit);
}

}  // namespace gthick

#endif
