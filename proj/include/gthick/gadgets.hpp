// Gadget templates, stitching along a layout and the 10-color scheme.
#ifndef GTHICK_GADGETS_HPP
#define GTHICK_GADGETS_HPP

#include "gthick/arrangement.hpp"
#include "gthick/depgraph.hpp"
#include "gthick/geometry.hpp"
#include "gthick/rgnf.hpp"
#include "gthick/verdict.hpp"

#include <array>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#ifndef GTHICK_DATA_DIR
#define GTHICK_DATA_DIR "data"
#endif

namespace gthick {

enum class GadgetKind {
  unit_assign,
  var_assign,
  negated_addition,
  negation,
  inverted_multiplication,
  inversion,
  condition,
  transmission_link,
  relay,
};

inline const std::vector<GadgetKind>& all_gadget_kinds() {
  static const std::vector<GadgetKind> k{GadgetKind::unit_assign, GadgetKind::var_assign,
                                         GadgetKind::negated_addition, GadgetKind::negation,
                                         GadgetKind::inverted_multiplication, GadgetKind::inversion,
                                         GadgetKind::condition, GadgetKind::transmission_link, GadgetKind::relay};
  return k;
}

inline std::string to_string(GadgetKind k) {
  switch (k) {
    case GadgetKind::unit_assign: return "unit_assign";
    case GadgetKind::var_assign: return "var_assign";
    case GadgetKind::negated_addition: return "negated_addition";
    case GadgetKind::negation: return "negation";
    case GadgetKind::inverted_multiplication: return "inverted_multiplication";
    case GadgetKind::inversion: return "inversion";
    case GadgetKind::condition: return "condition";
    case GadgetKind::transmission_link: return "transmission_link";
    case GadgetKind::relay: return "relay";
  }
  return "?";
}

inline GadgetKind parse_gadget_kind(const std::string& s) {
  for (GadgetKind k : all_gadget_kinds())
    if (to_string(k) == s) return k;
  throw InputError("unknown gadget kind '" + s + "'");
}

enum class PortRole { scale, in1, in2, out, any };

inline std::string to_string(PortRole r) {
  switch (r) {
    case PortRole::scale: return "scale";
    case PortRole::in1: return "in1";
    case PortRole::in2: return "in2";
    case PortRole::out: return "out";
    case PortRole::any: return "any";
  }
  return "?";
}

inline PortRole parse_port_role(const std::string& s) {
  for (PortRole r : {PortRole::scale, PortRole::in1, PortRole::in2, PortRole::out, PortRole::any})
    if (to_string(r) == s) return r;
  throw InputError("unknown port role '" + s + "'");
}

using ColorTriple = std::array<int, 3>;

struct PortSlot {
  Rational x;          // position on the baseline
  ColorTriple colors{};  // first-link inner segments
};

struct GadgetTemplate {
  GadgetKind kind = GadgetKind::relay;
  std::vector<PortRole> roles;     // transmission ports
  SegmentRealization local;        // segment 0 is the baseline (or the first end segment of a link)
  std::vector<int> colors;         // per local segment
  PortSlot top;
  std::vector<PortSlot> bottom;
  std::optional<std::pair<PortRole, PortRole>> share;
  // transmission_link only: offsets at even and odd stations, in units of the end-segment half-width
  std::array<Rational, 3> link_offsets;
  std::array<Rational, 3> link_back;

  std::size_t port_count() const { return roles.size(); }
  std::size_t gadget_segments() const { return local.segments.size(); }
  int palette() const {
    int m = 0;
    for (int c : colors) m = std::max(m, c);
    for (int c : top.colors) m = std::max(m, c);
    for (const auto& b : bottom)
      for (int c : b.colors) m = std::max(m, c);
    return m;
  }
};

inline GadgetTemplate parse_template(const std::string& text) {
  GadgetTemplate t;
  bool have_kind = false, have_top = false, have_link = false;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  auto fail = [&](const std::string& msg) { throw InputError("template line " + std::to_string(lineno) + ": " + msg); };
  auto color = [&](const std::string& s) {
    int c = 0;
    try {
      c = std::stoi(s);
    } catch (...) {
      fail("bad color '" + s + "'");
    }
    if (c < 1 || c > 10) fail("color " + s + " outside 1..10");
    return c;
  };
  auto triple = [&](std::istringstream& ls) {
    ColorTriple ct{};
    std::string w;
    for (int& c : ct) {
      if (!(ls >> w)) fail("expected three colors");
      c = color(w);
    }
    return ct;
  };
  auto rational = [&](const std::string& s) {
    try {
      return parse_rational(s);
    } catch (const std::invalid_argument& e) {
      fail(e.what());
    }
    return Rational(0);
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    std::istringstream ls(line);
    std::string key;
    if (!(ls >> key)) continue;
    if (key == "kind") {
      std::string k;
      ls >> k;
      t.kind = parse_gadget_kind(k);
      have_kind = true;
    } else if (key == "roles") {
      std::string r;
      while (ls >> r) t.roles.push_back(parse_port_role(r));
    } else if (key == "segment") {
      std::string name, x1, y1, x2, y2, c;
      if (!(ls >> name >> x1 >> y1 >> x2 >> y2 >> c)) fail("segment needs name, 4 coordinates and a color");
      t.local.names.push_back(name);
      t.local.segments.push_back({{rational(x1), rational(y1)}, {rational(x2), rational(y2)}});
      t.colors.push_back(color(c));
    } else if (key == "top" || key == "bottom") {
      std::string x;
      if (!(ls >> x)) fail("slot needs a position");
      PortSlot s{rational(x), triple(ls)};
      if (key == "top") {
        if (have_top) fail("duplicate top slot");
        t.top = s;
        have_top = true;
      } else {
        t.bottom.push_back(s);
      }
    } else if (key == "share") {
      std::string a, b;
      if (!(ls >> a >> b)) fail("share needs two roles");
      t.share = std::make_pair(parse_port_role(a), parse_port_role(b));
    } else if (key == "link") {
      std::array<std::string, 6> w;
      for (auto& x : w)
        if (!(ls >> x)) fail("link needs six offsets");
      t.link_offsets = {rational(w[0]), rational(w[1]), rational(w[2])};
      t.link_back = {rational(w[3]), rational(w[4]), rational(w[5])};
      have_link = true;
    } else {
      fail("unknown key '" + key + "'");
    }
  }
  if (!have_kind) throw InputError("template has no kind");
  if (t.local.segments.empty()) throw InputError("template has no segments");
  if (t.kind == GadgetKind::transmission_link) {
    if (!have_link) throw InputError("transmission_link template needs link offsets");
  } else {
    if (!have_top || t.bottom.size() != 3) throw InputError("template needs one top and three bottom slots");
    if (t.roles.empty() || t.roles.size() > 4) throw InputError("template needs 1..4 port roles");
  }
  return t;
}

inline std::string template_path(GadgetKind k, const std::string& dir = GTHICK_DATA_DIR) {
  return dir + "/gadgets/" + to_string(k) + ".tmpl";
}

inline GadgetTemplate load_template(GadgetKind k, const std::string& dir = GTHICK_DATA_DIR) {
  std::ifstream f(template_path(k, dir));
  if (!f) throw InputError("cannot open template " + template_path(k, dir));
  std::stringstream ss;
  ss << f.rdbuf();
  GadgetTemplate t = parse_template(ss.str());
  if (t.kind != k) throw InputError("template " + template_path(k, dir) + " declares kind " + to_string(t.kind));
  return t;
}

/// Templates are read once per process.
inline const GadgetTemplate& gadget_template(GadgetKind k) {
  static std::map<GadgetKind, GadgetTemplate> cache;
  auto it = cache.find(k);
  if (it == cache.end()) it = cache.emplace(k, load_template(k)).first;
  return it->second;
}

// ---------------------------------------------------------------------------
// Local placement of a gadget with its port chains

namespace detail {

/// Construction segments are given foot-first; placed, they reach slightly
/// below the baseline so the foot is a proper crossing.
inline Rational linf(const Point& p) { return std::max(Rational(abs(p.x)), Rational(abs(p.y))); }

/// eps is the l-infinity length of the part below the baseline.
inline Segment placed_local(const GadgetTemplate& t, std::size_t i, const Rational& eps) {
  const Segment& s = t.local.segments[i];
  if (i == 0 || t.kind == GadgetKind::transmission_link) return s;
  Point d{s.b.x - s.a.x, s.b.y - s.a.y};
  Rational f = eps / linf(d);
  return {{s.a.x - d.x * f, s.a.y - d.y * f}, s.b};
}

inline Rational port_halfwidth() { return make_rational(1, 2); }
inline Rational default_foot() { return make_rational(1, 16); }
inline Rational default_port_extension() { return make_rational(1, 64); }

}  // namespace detail

/// A gadget with straight stubs for every slot (top stub up, bottom stubs down)
/// standing in for the first links of the attached chains.
struct LocalFragment {
  SegmentRealization realization;
  std::vector<int> colors;
};

/// axis[i] (top slot first, then bottom slots) is +1 or -1: the direction
/// along the baseline of the chain's left normal.
inline LocalFragment local_fragment(const GadgetTemplate& t, const std::array<int, 4>& axis = {-1, 1, 1, 1},
                                    const Rational& foot = detail::default_foot(),
                                    const Rational& eta = detail::default_port_extension()) {
  LocalFragment f;
  for (std::size_t i = 0; i < t.gadget_segments(); ++i) {
    f.realization.names.push_back(t.local.names[i]);
    f.realization.segments.push_back(detail::placed_local(t, i, foot));
    f.colors.push_back(t.colors[i]);
  }
  if (t.kind == GadgetKind::transmission_link) return f;
  const auto& off = gadget_template(GadgetKind::transmission_link).link_offsets;
  Rational w = detail::port_halfwidth();
  auto stub = [&](const PortSlot& s, const std::string& name, int dir, int ax) {
    for (int j = 0; j < 3; ++j) {
      Rational x = s.x + ax * off[j] * w;
      f.realization.names.push_back(name + "." + std::to_string(j + 1));
      f.realization.segments.push_back({{x, Rational(-dir) * eta}, {x, Rational(dir * 40)}});
      f.colors.push_back(s.colors[j]);
    }
  };
  stub(t.top, "top", 1, axis[0]);
  for (std::size_t b = 0; b < t.bottom.size(); ++b) stub(t.bottom[b], "bottom" + std::to_string(b + 1), -1, axis[b + 1]);
  return f;
}

/// Validity of the template geometry and properness of its table coloring,
/// including the stubs of all slots.
inline Verdict self_test(const GadgetTemplate& t, int axis = 1) {
  Verdict v;
  LocalFragment f;
  RawArrangement raw;
  try {
    f = local_fragment(t, {axis, axis, axis, axis});
    raw = raw_from_segments(f.realization);
  } catch (const InputError& e) {
    v.reject("geometry", {to_string(t.kind)}, e.what());
    return v;
  }
  for (const auto& p : raw.points)
    if (p.multiplicity() > 3) v.reject("multiplicity", {to_string(t.kind)}, "more than three segments meet");
  auto g = intersection_graph(raw);
  for (std::size_t a = 0; a < g.vertex_count(); ++a)
    for (std::size_t b : g.neighbors(a))
      if (a < b && f.colors[a] == f.colors[b])
        v.reject("coloring", {f.realization.names[a], f.realization.names[b]},
                 "crossing segments share color " + std::to_string(f.colors[a]));
  if (t.kind == GadgetKind::transmission_link) {
    if (t.gadget_segments() != 5) v.reject("shape", {to_string(t.kind)}, "a link has five segments");
    if (!raw.is_uniform()) v.reject("shape", {to_string(t.kind)}, "inner segments must cross pairwise at distinct points");
    for (std::size_t i = 2; i < 5; ++i)
      for (std::size_t j : {std::size_t(0), std::size_t(1)})
        if (!g.has_edge(i, j)) v.reject("shape", {t.local.names[i]}, "inner segment misses an end segment");
    for (std::size_t i = 2; i < 5; ++i)
      for (std::size_t j = i + 1; j < 5; ++j)
        if (!g.has_edge(i, j)) v.reject("shape", {t.local.names[i], t.local.names[j]}, "inner segments must cross");
  } else {
    for (std::size_t i = 1; i < t.gadget_segments(); ++i)
      if (!g.has_edge(0, i)) v.reject("shape", {t.local.names[i]}, "construction segment misses the baseline");
  }
  return v;
}

// ---------------------------------------------------------------------------
// Stitching

enum class PieceKind { gadget, end_segment, inner };

struct SegmentOrigin {
  PieceKind kind = PieceKind::gadget;
  std::size_t owner = 0;  // vertex for gadget segments, edge otherwise
  std::size_t index = 0;  // local segment, station or link
  int strand = -1;        // inner segments: 0..2
};

/// Affine placement of a template: local (x, y) -> c + x ex + y ey.
struct GadgetFrame {
  Point c;
  Point ex;
  Point ey;

  Point map(const Point& p) const { return {c.x + p.x * ex.x + p.y * ey.x, c.y + p.x * ex.y + p.y * ey.y}; }
  Point map_dir(const Point& d) const { return {d.x * ex.x + d.y * ey.x, d.x * ex.y + d.y * ey.y}; }
  Point local_dir(const Point& d) const {
    Rational det = ex.x * ey.y - ex.y * ey.x;
    return {(d.x * ey.y - d.y * ey.x) / det, (ex.x * d.y - ex.y * d.x) / det};
  }
};

struct GadgetInstance {
  GadgetKind kind = GadgetKind::relay;
  GadgetFrame frame;
  Rational foot;  // depth of construction feet below the baseline (local units)
  Rational eta;   // reach of port chains beyond the baseline (local units)
  std::array<std::optional<std::size_t>, 4> slot_edge;  // top, then bottom slots
  std::array<int, 4> axis{-1, 1, 1, 1};
  std::array<ColorTriple, 4> colors{};
  std::size_t first = 0;  // segment id of the baseline
};

struct StitchedConstruction {
  RawArrangement raw;
  SegmentRealization realization;
  std::vector<SegmentOrigin> origin;
  std::vector<GadgetInstance> gadgets;                       // per vertex
  std::vector<std::vector<std::array<std::size_t, 3>>> inner;  // [edge][link]
  std::vector<std::vector<std::size_t>> ends;                // [edge][station - 1]
  std::vector<int> table;                                    // table color per segment, 0 if free
  Rational scale;
};

inline GadgetKind gadget_kind_for(const DepVertex& v) {
  if (v.kind == DepVertexKind::condition) return GadgetKind::condition;
  if (v.kind != DepVertexKind::computed || !v.op) return GadgetKind::relay;
  switch (*v.op) {
    case RgnfOp::unit: return GadgetKind::unit_assign;
    case RgnfOp::input: return GadgetKind::var_assign;
    case RgnfOp::negation: return GadgetKind::negation;
    case RgnfOp::negated_addition: return GadgetKind::negated_addition;
    case RgnfOp::inversion: return GadgetKind::inversion;
    case RgnfOp::inverted_multiplication: return GadgetKind::inverted_multiplication;
  }
  return GadgetKind::relay;
}

inline PortRole port_role(const DependenceGraph& g, std::size_t e, std::size_t v) {
  const auto& ed = g.edges[e];
  if (ed.from == v) return PortRole::out;
  switch (ed.slot) {
    case 0: return PortRole::scale;
    case 1: return PortRole::in1;
    case 2: return PortRole::in2;
    default: return PortRole::any;
  }
}

namespace detail {

inline Point scaled(const Point& p, const Rational& f) { return {p.x * f, p.y * f}; }
inline Point plus(const Point& a, const Point& b) { return {a.x + b.x, a.y + b.y}; }
inline Point minus(const Point& a, const Point& b) { return {a.x - b.x, a.y - b.y}; }

inline Rational pow2(int e) {
  mpz_class m = 1;
  m <<= static_cast<unsigned>(std::abs(e));
  return e >= 0 ? Rational(m) : Rational(1) / Rational(m);
}

/// Frame, slots, port axes and table colors of the gadget at v.
inline GadgetInstance plan_gadget(const DependenceGraph& g, const GridLayout& l, std::size_t v, const Rational& lambda) {
  const auto& vx = g.vertices[v];
  GadgetInstance gi;
  gi.kind = gadget_kind_for(vx);
  const GadgetTemplate& t = gadget_template(gi.kind);
  gi.foot = default_foot();
  gi.eta = default_port_extension();
  auto inc = g.incident(v);
  if (inc.empty()) {
    gi.frame = {l.position[v], {lambda, Rational(0)}, {Rational(0), lambda}};
    return gi;
  }
  if (inc.size() > 4) throw InputError("vertex " + vx.name + " has degree " + std::to_string(inc.size()) + " > 4");
  if (!l.top_port[v]) throw InputError("vertex " + vx.name + " has no top port");
  const std::size_t top = *l.top_port[v];

  std::map<PortRole, std::size_t> role_edge;
  for (std::size_t e : inc) {
    PortRole r = port_role(g, e, v);
    if (gi.kind == GadgetKind::relay) continue;
    if (std::find(t.roles.begin(), t.roles.end(), r) == t.roles.end())
      throw InputError("vertex " + vx.name + ": " + to_string(gi.kind) + " gadget has no '" + to_string(r) + "' port");
    if (!role_edge.emplace(r, e).second)
      throw InputError("vertex " + vx.name + ": two edges use the '" + to_string(r) + "' port");
  }

  Point a = edge_direction(g, l, top, v);
  const Point& u = l.up[v];
  Point r{u.y, -u.x};
  gi.frame = {l.position[v], scaled(r, lambda / linf(r)), scaled(a, lambda / linf(a))};

  std::vector<std::pair<Point, std::size_t>> bottom;
  for (std::size_t e : inc) {
    if (e == top) continue;
    Point d = gi.frame.local_dir(edge_direction(g, l, e, v));
    if (d.y >= 0) throw std::logic_error("edge e" + std::to_string(e) + " is not below the baseline of " + vx.name);
    bottom.push_back({d, e});
  }
  std::sort(bottom.begin(), bottom.end(), [](const auto& x, const auto& y) { return ccw_angle_less(x.first, y.first); });
  gi.slot_edge[0] = top;
  for (std::size_t i = 0; i < bottom.size(); ++i) gi.slot_edge[i + 1] = bottom[i].second;

  // feet and port reach stay well above the shallowest bottom chain
  std::optional<Rational> shallow;
  for (const auto& [d, e] : bottom)
    if (d.x != 0) {
      Rational sl = abs(d.y) / abs(d.x);
      if (!shallow || sl < *shallow) shallow = sl;
    }
  if (shallow)
    while (gi.foot * 8 > *shallow) gi.foot /= 2;
  gi.eta = std::min(gi.eta, gi.foot);

  for (std::size_t i = 0; i < 4; ++i) {
    if (!gi.slot_edge[i]) continue;
    std::size_t e = *gi.slot_edge[i];
    Point d = gi.frame.local_dir(minus(l.position[g.edges[e].to], l.position[g.edges[e].from]));
    gi.axis[i] = d.y < 0 ? 1 : -1;
    gi.colors[i] = i == 0 ? t.top.colors : t.bottom[i - 1].colors;
  }
  if (t.share && role_edge.count(t.share->first) && role_edge.count(t.share->second)) {
    PortRole top_role = port_role(g, top, v);
    if (top_role != t.share->first && top_role != t.share->second)
      throw InputError("vertex " + vx.name + ": ports '" + to_string(t.share->first) + "' and '" +
                       to_string(t.share->second) + "' share colors and must sit on opposite sides, but the top port carries '" +
                       to_string(top_role) + "'");
    std::size_t partner = role_edge[top_role == t.share->first ? t.share->second : t.share->first];
    for (std::size_t i = 1; i < 4; ++i)
      if (gi.slot_edge[i] == partner) gi.colors[i] = t.top.colors;
  }
  return gi;
}

}  // namespace detail

namespace detail {

inline double point_segment_distance(double px, double py, double ax, double ay, double bx, double by) {
  double dx = bx - ax, dy = by - ay;
  double len2 = dx * dx + dy * dy;
  double t = len2 > 0 ? std::clamp(((px - ax) * dx + (py - ay) * dy) / len2, 0.0, 1.0) : 0.0;
  return std::hypot(px - ax - t * dx, py - ay - t * dy);
}

/// Smallest distance between a vertex or chain station and an unrelated
/// edge, or between consecutive stations of one chain.
inline double clearance(const DependenceGraph& g, const GridLayout& l, const ChainPlan& plan) {
  double best = 1.0;
  auto pt = [&](std::size_t v) { return std::make_pair(l.position[v].x.get_d(), l.position[v].y.get_d()); };
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    auto [ax, ay] = pt(g.edges[e].from);
    auto [bx, by] = pt(g.edges[e].to);
    double len = std::hypot(bx - ax, by - ay);
    for (std::size_t v = 0; v < g.vertex_count(); ++v) {
      if (v == g.edges[e].from || v == g.edges[e].to) continue;
      auto [px, py] = pt(v);
      best = std::min(best, point_segment_distance(px, py, ax, ay, bx, by));
    }
    const auto& st = plan.stations[e];
    for (std::size_t k = 0; k + 1 < st.size(); ++k) best = std::min(best, Rational(st[k + 1] - st[k]).get_d() * len);
    for (std::size_t k = 1; k + 1 < st.size(); ++k) {
      double t = st[k].get_d(), px = ax + t * (bx - ax), py = ay + t * (by - ay);
      for (std::size_t f = 0; f < g.edge_count(); ++f) {
        if (f == e) continue;
        auto [cx, cy] = pt(g.edges[f].from);
        auto [dx, dy] = pt(g.edges[f].to);
        best = std::min(best, point_segment_distance(px, py, cx, cy, dx, dy));
      }
    }
  }
  return best;
}

inline std::size_t slot_of(const GadgetInstance& gi, std::size_t e) {
  for (std::size_t i = 0; i < 4; ++i)
    if (gi.slot_edge[i] == e) return i;
  throw std::logic_error("edge e" + std::to_string(e) + " has no port slot");
}

inline Rational slot_x(const GadgetTemplate& t, std::size_t slot) { return slot == 0 ? t.top.x : t.bottom[slot - 1].x; }

/// Builds all segments at scale lambda; returns the pairs that must cross.
inline std::set<std::pair<std::size_t, std::size_t>> build_segments(const DependenceGraph& g, const GridLayout& l,
                                                                   const ChainPlan& plan, const Rational& lambda,
                                                                   StitchedConstruction& sc) {
  const GadgetTemplate& link = gadget_template(GadgetKind::transmission_link);
  sc.realization = {};
  sc.origin.clear();
  sc.gadgets.clear();
  sc.inner.assign(g.edge_count(), {});
  sc.ends.assign(g.edge_count(), {});
  sc.table.clear();
  sc.scale = lambda;
  std::set<std::pair<std::size_t, std::size_t>> expect;
  auto must = [&](std::size_t a, std::size_t b) { expect.insert({std::min(a, b), std::max(a, b)}); };
  auto add = [&](std::string name, Segment seg, SegmentOrigin o, int color) {
    sc.realization.names.push_back(std::move(name));
    sc.realization.segments.push_back(std::move(seg));
    sc.origin.push_back(o);
    sc.table.push_back(color);
    return sc.realization.segments.size() - 1;
  };

  std::vector<LocalFragment> frags;
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    GadgetInstance gi = plan_gadget(g, l, v, lambda);
    const GadgetTemplate& t = gadget_template(gi.kind);
    gi.first = sc.realization.segments.size();
    for (std::size_t i = 0; i < t.gadget_segments(); ++i) {
      Segment loc = placed_local(t, i, gi.foot);
      add(g.vertices[v].name + "." + t.local.names[i], {gi.frame.map(loc.a), gi.frame.map(loc.b)},
          {PieceKind::gadget, v, i, -1}, t.colors[i]);
    }
    frags.push_back(local_fragment(t, gi.axis, gi.foot, gi.eta));
    sc.gadgets.push_back(gi);
  }

  const Rational w = port_halfwidth();
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    const std::size_t p = g.edges[e].from, q = g.edges[e].to;
    const auto& st = plan.stations[e];
    const std::size_t L = plan.links(e);
    if (L < 2 || L % 2) throw std::logic_error("chain e" + std::to_string(e) + " needs an even number of links");
    const Point d = minus(l.position[q], l.position[p]);
    const Point mhat = scaled(Point{-d.y, d.x}, lambda / linf(d));
    auto station = [&](std::size_t k) { return plus(l.position[p], scaled(d, st[k])); };
    auto port = [&](std::size_t v, std::size_t j) {
      const GadgetInstance& gi = sc.gadgets[v];
      std::size_t sl = slot_of(gi, e);
      Rational x = slot_x(gadget_template(gi.kind), sl) + gi.axis[sl] * link.link_offsets[j] * w;
      return gi.frame.map({x, Rational(0)});
    };
    auto at = [&](std::size_t k, std::size_t j) {
      if (k == 0) return port(p, j);
      if (k == L) return port(q, j);
      const auto& off = k % 2 == 0 ? link.link_offsets : link.link_back;
      return plus(station(k), scaled(mhat, off[j]));
    };
    const std::string id = "e" + std::to_string(e);
    for (std::size_t k = 1; k < L; ++k) {
      Point c = station(k);
      sc.ends[e].push_back(add(id + ".s" + std::to_string(k), {minus(c, mhat), plus(c, mhat)},
                               {PieceKind::end_segment, e, k, -1}, 0));
    }
    for (std::size_t k = 0; k < L; ++k) {
      std::array<std::size_t, 3> ids{};
      for (std::size_t j = 0; j < 3; ++j) {
        Point A = at(k, j), B = at(k + 1, j), dir = minus(B, A);
        auto reach = [&](std::size_t kk, std::size_t v) {
          if (kk == 0 || kk == L) {
            const GadgetInstance& gi = sc.gadgets[v];
            return scaled(dir, gi.eta / linf(gi.frame.local_dir(dir)));
          }
          return scaled(dir, lambda / (32 * linf(dir)));
        };
        A = minus(A, reach(k, p));
        B = plus(B, reach(k + 1, q));
        int color = 0;
        if (k == 0) color = sc.gadgets[p].colors[slot_of(sc.gadgets[p], e)][j];
        if (k + 1 == L) color = sc.gadgets[q].colors[slot_of(sc.gadgets[q], e)][j];
        ids[j] = add(id + ".k" + std::to_string(k) + "." + std::to_string(j + 1), {A, B},
                     {PieceKind::inner, e, k, static_cast<int>(j)}, color);
      }
      sc.inner[e].push_back(ids);
    }
    for (std::size_t k = 0; k < L; ++k) {
      const auto& in = sc.inner[e][k];
      for (std::size_t j = 0; j < 3; ++j) {
        for (std::size_t j2 = j + 1; j2 < 3; ++j2) must(in[j], in[j2]);
        if (k >= 1) must(in[j], sc.ends[e][k - 1]);
        if (k + 1 < L) {
          must(in[j], sc.ends[e][k]);
          must(in[j], sc.inner[e][k + 1][j]);
        }
      }
    }
  }

  for (std::size_t e = 0; e < g.edge_count(); ++e)
    for (std::size_t k = 0; k < plan.links(e); ++k) {
      if (!plan.link_crossing[e][k]) continue;
      std::size_t f = *plan.link_crossing[e][k];
      for (std::size_t k2 = 0; k2 < plan.links(f); ++k2)
        if (plan.link_crossing[f][k2] == e)
          for (std::size_t a : sc.inner[e][k])
            for (std::size_t b : sc.inner[f][k2]) must(a, b);
    }

  // gadget internals and the first links near each gadget, as in the local fragment
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    const GadgetInstance& gi = sc.gadgets[v];
    const std::size_t G = gadget_template(gi.kind).gadget_segments();
    auto local = intersection_graph(raw_from_segments(frags[v].realization));
    auto global = [&](std::size_t i) -> std::optional<std::size_t> {
      if (i < G) return gi.first + i;
      std::size_t sl = (i - G) / 3, j = (i - G) % 3;
      if (!gi.slot_edge[sl]) return std::nullopt;
      std::size_t e = *gi.slot_edge[sl];
      std::size_t k = g.edges[e].from == v ? 0 : plan.links(e) - 1;
      return sc.inner[e][k][j];
    };
    for (auto [a, b] : local.edges()) {
      if (a >= G && b >= G) continue;
      auto ga = global(a), gb = global(b);
      if (ga && gb) must(*ga, *gb);
    }
  }
  return expect;
}

}  // namespace detail

/// Realizes every gadget and chain link with exact straight segments and reads
/// off the arrangement. Triple points get the baseline or end segment through
/// them as transversal.
inline StitchedConstruction stitch(const DependenceGraph& g, const GridLayout& l, const ChainPlan& plan) {
  double c = detail::clearance(g, l, plan);
  int e = static_cast<int>(std::floor(std::log2(c / 512)));
  std::string last;
  for (int attempt = 0; attempt < 6; ++attempt, e -= 2) {
    StitchedConstruction sc;
    auto expect = detail::build_segments(g, l, plan, detail::pow2(e), sc);
    try {
      sc.raw = raw_from_segments(sc.realization);
    } catch (const InputError& err) {
      last = err.what();
      continue;
    }
    auto got = intersection_graph(sc.raw);
    std::set<std::pair<std::size_t, std::size_t>> have;
    for (auto [a, b] : got.edges()) have.insert({std::min(a, b), std::max(a, b)});
    if (have != expect) {
      std::vector<std::pair<std::size_t, std::size_t>> diff;
      std::set_symmetric_difference(have.begin(), have.end(), expect.begin(), expect.end(), std::back_inserter(diff));
      last = "segments " + sc.realization.names[diff[0].first] + " and " + sc.realization.names[diff[0].second] +
             (have.count(diff[0]) ? " cross unexpectedly" : " fail to cross");
      continue;
    }
    bool ok = true;
    for (auto& pt : sc.raw.points) {
      if (pt.multiplicity() == 2) continue;
      std::optional<SegmentId> tr;
      if (pt.multiplicity() == 3)
        for (SegmentId s : pt.members()) {
          const auto& o = sc.origin[s];
          if (o.kind == PieceKind::end_segment || (o.kind == PieceKind::gadget && o.index == 0)) tr = s;
        }
      if (!tr) {
        ok = false;
        last = "unplanned concurrency at " + sc.realization.names[pt.members()[0]];
        break;
      }
      pt.transversal = tr;
    }
    if (!ok) continue;
    return sc;
  }
  throw ResourceError("stitching failed at every scale: " + last);
}

// ---------------------------------------------------------------------------
// Coloring

struct LinkCompletion {
  int end = 0;           // both end segments around the middle link
  ColorTriple middle{};  // inner segments of the middle link
};

/// Three consecutive links with fixed outer inner-segment colors: one color
/// for the two end segments of the middle link and colors for its inner
/// segments. forbidden[j] holds further colors strand j must avoid (crossing
/// chains). Returns nullopt if the palette is too small.
inline std::optional<LinkCompletion> complete_middle_link(const ColorTriple& left, const ColorTriple& right,
                                                          const std::array<std::set<int>, 3>& forbidden = {},
                                                          const std::set<int>& end_forbidden = {}, int palette = 10) {
  for (int d = 1; d <= palette; ++d) {
    if (end_forbidden.count(d)) continue;
    if (std::find(left.begin(), left.end(), d) != left.end()) continue;
    if (std::find(right.begin(), right.end(), d) != right.end()) continue;
    LinkCompletion c{d, {}};
    bool ok = true;
    for (int j = 0; j < 3 && ok; ++j) {
      int pick = 0;
      for (int x = 1; x <= palette && !pick; ++x) {
        if (x == d || x == left[j] || x == right[j] || forbidden[j].count(x)) continue;
        bool used = false;
        for (int i = 0; i < j; ++i) used = used || c.middle[i] == x;
        if (!used) pick = x;
      }
      if (!pick) ok = false;
      c.middle[j] = pick;
    }
    if (ok) return c;
  }
  return std::nullopt;
}

/// Table colors on gadgets and the links at their ports; every chain is then
/// colored from its tail, the last free link by complete_middle_link.
/// Throws std::logic_error if the result is improper or exceeds 10 colors.
inline VertexColoring color_construction(const StitchedConstruction& sc) {
  const std::size_t n = sc.realization.segments.size();
  auto graph = intersection_graph(sc.raw);
  VertexColoring col(sc.table.begin(), sc.table.end());
  auto taken = [&](std::size_t s) {
    std::set<int> t;
    for (std::size_t o : graph.neighbors(s))
      if (col[o] > 0) t.insert(col[o]);
    return t;
  };
  auto greedy = [&](std::size_t s) {
    if (col[s] > 0) return;
    auto t = taken(s);
    for (int c = 1; c <= 10; ++c)
      if (!t.count(c)) {
        col[s] = c;
        return;
      }
    throw std::logic_error("no free color for " + sc.realization.names[s]);
  };
  for (std::size_t e = 0; e < sc.inner.size(); ++e) {
    const std::size_t L = sc.inner[e].size();
    for (std::size_t k = 1; k + 2 < L; ++k) {
      greedy(sc.ends[e][k - 1]);
      for (std::size_t s : sc.inner[e][k]) greedy(s);
    }
    const std::size_t m = L - 2;
    const auto& mid = sc.inner[e][m];
    ColorTriple left{}, right{};
    std::array<std::set<int>, 3> forbid;
    for (int j = 0; j < 3; ++j) {
      left[j] = col[sc.inner[e][m - 1][j]];
      right[j] = col[sc.inner[e][m + 1][j]];
      for (std::size_t o : graph.neighbors(mid[j]))
        if (col[o] > 0) forbid[j].insert(col[o]);
    }
    std::set<int> end_forbid = taken(sc.ends[e][m - 1]);
    for (int c : taken(sc.ends[e][m])) end_forbid.insert(c);
    auto done = complete_middle_link(left, right, forbid, end_forbid);
    if (!done) throw std::logic_error("chain e" + std::to_string(e) + " has no completion");
    col[sc.ends[e][m - 1]] = col[sc.ends[e][m]] = done->end;
    for (int j = 0; j < 3; ++j) col[mid[j]] = done->middle[j];
  }
  for (std::size_t s = 0; s < n; ++s) greedy(s);
  if (!is_proper(graph, col)) throw std::logic_error("construction coloring is improper");
  for (int c : col)
    if (c > 10) throw std::logic_error("construction coloring exceeds 10 colors");
  return col;
}

}  // namespace gthick

#endif
