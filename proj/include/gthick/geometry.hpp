// Exact rational plane geometry: orientation and segment classification.
#ifndef GTHICK_GEOMETRY_HPP
#define GTHICK_GEOMETRY_HPP

#include <gmpxx.h>

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

namespace gthick {

/// Canonical arbitrary-precision rational (GMP keeps gcd(num, den) = 1, den > 0).
using Rational = mpq_class;

inline Rational make_rational(long num, long den = 1) {
  if (den == 0) throw std::invalid_argument("zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

/// Parses "p", "p/q" or "-p/q" with arbitrarily many digits.
inline Rational parse_rational(const std::string& text) {
  Rational r;
  if (text.empty() || r.set_str(text, 10) != 0)
    throw std::invalid_argument("malformed rational '" + text + "'");
  if (r.get_den() == 0) throw std::invalid_argument("zero denominator in '" + text + "'");
  r.canonicalize();
  return r;
}

inline std::string to_string(const Rational& r) { return r.get_str(10); }

struct Point {
  Rational x;
  Rational y;

  friend bool operator==(const Point& a, const Point& b) { return a.x == b.x && a.y == b.y; }
  friend bool operator<(const Point& a, const Point& b) {
    if (a.x != b.x) return a.x < b.x;
    return a.y < b.y;
  }
};

inline Point make_point(long x, long y) { return Point{Rational(x), Rational(y)}; }

struct Segment {
  Point a;
  Point b;
};

inline int sign(const Rational& v) { return sgn(v); }

/// Sign of (q - p) x (r - p).
// ccw angular order of direction vectors starting from the positive x axis
inline bool ccw_angle_less(const Point& u, const Point& v) {
  auto half = [](const Point& p) { return (p.y > 0 || (p.y == 0 && p.x > 0)) ? 0 : 1; };
  int hu = half(u), hv = half(v);
  if (hu != hv) return hu < hv;
  return u.x * v.y - u.y * v.x > 0;
}

inline int orientation(const Point& p, const Point& q, const Point& r) {
  Rational cross = (q.x - p.x) * (r.y - p.y) - (q.y - p.y) * (r.x - p.x);
  return sgn(cross);
}

enum class RelationKind {
  disjoint,
  proper_cross,
  shared_endpoint,
  endpoint_touch_interior,
  collinear_overlap,
};

inline const char* to_string(RelationKind k) {
  switch (k) {
    case RelationKind::disjoint: return "disjoint";
    case RelationKind::proper_cross: return "proper_cross";
    case RelationKind::shared_endpoint: return "shared_endpoint";
    case RelationKind::endpoint_touch_interior: return "endpoint_touch_interior";
    case RelationKind::collinear_overlap: return "collinear_overlap";
  }
  return "?";
}

struct SegmentRelation {
  RelationKind kind = RelationKind::disjoint;
  std::optional<Point> point;  // crossing point, or the touching point

  /// True if the two segments share a point other than a common endpoint.
  bool conflicts() const {
    return kind == RelationKind::proper_cross || kind == RelationKind::endpoint_touch_interior ||
           kind == RelationKind::collinear_overlap;
  }
};

/// p lies on the closed segment [a, b], given p collinear with a, b.
inline bool on_closed_segment_collinear(const Point& a, const Point& b, const Point& p) {
  return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) && std::min(a.y, b.y) <= p.y &&
         p.y <= std::max(a.y, b.y);
}

inline bool in_open_segment(const Segment& s, const Point& p) {
  return orientation(s.a, s.b, p) == 0 && on_closed_segment_collinear(s.a, s.b, p) && !(p == s.a) &&
         !(p == s.b);
}

/// Intersection point of the supporting lines of two non-parallel segments.
inline Point line_intersection(const Segment& s, const Segment& t) {
  Rational dx1 = s.b.x - s.a.x, dy1 = s.b.y - s.a.y;
  Rational dx2 = t.b.x - t.a.x, dy2 = t.b.y - t.a.y;
  Rational den = dx1 * dy2 - dy1 * dx2;
  if (den == 0) throw std::logic_error("parallel lines have no unique intersection");
  Rational num = (t.a.x - s.a.x) * dy2 - (t.a.y - s.a.y) * dx2;
  Rational lambda = num / den;
  return Point{s.a.x + lambda * dx1, s.a.y + lambda * dy1};
}

/// Parameter of p along s (0 at s.a, 1 at s.b); p assumed on the supporting line.
inline Rational parameter_along(const Segment& s, const Point& p) {
  Rational dx = s.b.x - s.a.x;
  if (dx != 0) return (p.x - s.a.x) / dx;
  return (p.y - s.a.y) / (s.b.y - s.a.y);
}

inline SegmentRelation segment_relation(const Segment& s, const Segment& t) {
  if (s.a == s.b || t.a == t.b) throw std::invalid_argument("degenerate segment");

  int o1 = orientation(s.a, s.b, t.a);
  int o2 = orientation(s.a, s.b, t.b);
  int o3 = orientation(t.a, t.b, s.a);
  int o4 = orientation(t.a, t.b, s.b);

  if (o1 == 0 && o2 == 0) {
    // Collinear: compare parameter intervals along s.
    Rational u0 = parameter_along(s, t.a), u1 = parameter_along(s, t.b);
    if (u0 > u1) std::swap(u0, u1);
    Rational lo = std::max(u0, Rational(0)), hi = std::min(u1, Rational(1));
    if (lo < hi) return {RelationKind::collinear_overlap, std::nullopt};
    if (lo == hi) {
      Point p{s.a.x + lo * (s.b.x - s.a.x), s.a.y + lo * (s.b.y - s.a.y)};
      return {RelationKind::shared_endpoint, p};
    }
    return {RelationKind::disjoint, std::nullopt};
  }

  if (o1 * o2 < 0 && o3 * o4 < 0) return {RelationKind::proper_cross, line_intersection(s, t)};

  // At most touching now; look for an endpoint of one lying on the other.
  bool shared = s.a == t.a || s.a == t.b || s.b == t.a || s.b == t.b;
  if (shared) {
    Point common = (s.a == t.a || s.a == t.b) ? s.a : s.b;
    return {RelationKind::shared_endpoint, common};
  }
  if (o1 == 0 && on_closed_segment_collinear(s.a, s.b, t.a))
    return {RelationKind::endpoint_touch_interior, t.a};
  if (o2 == 0 && on_closed_segment_collinear(s.a, s.b, t.b))
    return {RelationKind::endpoint_touch_interior, t.b};
  if (o3 == 0 && on_closed_segment_collinear(t.a, t.b, s.a))
    return {RelationKind::endpoint_touch_interior, s.a};
  if (o4 == 0 && on_closed_segment_collinear(t.a, t.b, s.b))
    return {RelationKind::endpoint_touch_interior, s.b};
  return {RelationKind::disjoint, std::nullopt};
}

}  // namespace gthick

#endif
