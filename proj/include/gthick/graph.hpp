// Multigraph, straight-line drawing and edge-instance coloring.
#ifndef GTHICK_GRAPH_HPP
#define GTHICK_GRAPH_HPP

#include "gthick/geometry.hpp"

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <unordered_map>
#include <vector>

namespace gthick {

using VertexId = std::size_t;
using EdgeId = std::size_t;

enum class EdgeRole { plain, long_edge, crossing_box, tunnel_boundary, blocker, connector };

inline const char* to_string(EdgeRole r) {
  switch (r) {
    case EdgeRole::plain: return "plain";
    case EdgeRole::long_edge: return "long_edge";
    case EdgeRole::crossing_box: return "crossing_box";
    case EdgeRole::tunnel_boundary: return "tunnel_boundary";
    case EdgeRole::blocker: return "blocker";
    case EdgeRole::connector: return "connector";
  }
  return "?";
}

inline std::optional<EdgeRole> parse_role(const std::string& s) {
  static const std::map<std::string, EdgeRole> table{
      {"plain", EdgeRole::plain},           {"long_edge", EdgeRole::long_edge},
      {"crossing_box", EdgeRole::crossing_box}, {"tunnel_boundary", EdgeRole::tunnel_boundary},
      {"blocker", EdgeRole::blocker},       {"connector", EdgeRole::connector}};
  auto it = table.find(s);
  if (it == table.end()) return std::nullopt;
  return it->second;
}

struct EdgeClass {
  VertexId u = 0;
  VertexId v = 0;
  int multiplicity = 1;
  EdgeRole role = EdgeRole::plain;
};

/// Vertices are dense indices 0..n-1 with printable names.
class Multigraph {
 public:
  Multigraph() = default;

  VertexId add_vertex(std::string name = {}) {
    if (name.empty()) name = "v" + std::to_string(names_.size());
    if (index_.count(name)) throw std::invalid_argument("duplicate vertex '" + name + "'");
    index_.emplace(name, names_.size());
    names_.push_back(std::move(name));
    return names_.size() - 1;
  }

  EdgeId add_edge(VertexId u, VertexId v, int multiplicity = 1, EdgeRole role = EdgeRole::plain) {
    if (u >= names_.size() || v >= names_.size()) throw std::invalid_argument("edge endpoint is not a vertex");
    if (u == v) throw std::invalid_argument("self-loop at '" + names_[u] + "'");
    if (multiplicity < 1) throw std::invalid_argument("edge multiplicity must be >= 1");
    edges_.push_back(EdgeClass{u, v, multiplicity, role});
    return edges_.size() - 1;
  }

  std::size_t vertex_count() const { return names_.size(); }
  std::size_t edge_class_count() const { return edges_.size(); }
  std::size_t edge_instance_count() const {
    std::size_t total = 0;
    for (const auto& e : edges_) total += static_cast<std::size_t>(e.multiplicity);
    return total;
  }

  const std::vector<EdgeClass>& edges() const { return edges_; }
  const EdgeClass& edge(EdgeId e) const { return edges_.at(e); }
  EdgeClass& mutable_edge(EdgeId e) { return edges_.at(e); }
  const std::string& name(VertexId v) const { return names_.at(v); }
  const std::vector<std::string>& names() const { return names_; }

  std::optional<VertexId> find(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  int max_multiplicity() const {
    int m = 0;
    for (const auto& e : edges_) m = std::max(m, e.multiplicity);
    return m;
  }

  void remove_edge(EdgeId e) { edges_.erase(edges_.begin() + static_cast<std::ptrdiff_t>(e)); }

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, VertexId> index_;
  std::vector<EdgeClass> edges_;
};

/// Vertex positions; entries may be missing until the drawing is complete.
class Drawing {
 public:
  Drawing() = default;
  explicit Drawing(std::size_t n) : pos_(n) {}

  void resize(std::size_t n) { pos_.resize(n); }
  void set(VertexId v, Point p) {
    if (v >= pos_.size()) pos_.resize(v + 1);
    pos_[v] = std::move(p);
  }
  bool has(VertexId v) const { return v < pos_.size() && pos_[v].has_value(); }
  const Point& at(VertexId v) const {
    if (!has(v)) throw std::out_of_range("vertex " + std::to_string(v) + " not placed");
    return *pos_[v];
  }
  std::size_t size() const { return pos_.size(); }

  /// Applies p -> s*p to every placed point.
  Drawing scaled(const Rational& s) const {
    Drawing out(pos_.size());
    for (std::size_t i = 0; i < pos_.size(); ++i)
      if (pos_[i]) out.pos_[i] = Point{pos_[i]->x * s, pos_[i]->y * s};
    return out;
  }

 private:
  std::vector<std::optional<Point>> pos_;
};

/// Colors are 1-based: a t-coloring uses colors 1..t. colors[e][k] is copy k of class e.
struct EdgeColoring {
  std::vector<std::vector<int>> colors;

  static EdgeColoring uniform(const Multigraph& g, int color) {
    EdgeColoring c;
    for (const auto& e : g.edges()) c.colors.emplace_back(static_cast<std::size_t>(e.multiplicity), color);
    return c;
  }

  int max_color() const {
    int m = 0;
    for (const auto& row : colors)
      for (int x : row) m = std::max(m, x);
    return m;
  }
};

struct EdgeInstance {
  EdgeId edge = 0;
  int copy = 0;

  friend bool operator==(const EdgeInstance& a, const EdgeInstance& b) {
    return a.edge == b.edge && a.copy == b.copy;
  }
  friend bool operator<(const EdgeInstance& a, const EdgeInstance& b) {
    return std::tie(a.edge, a.copy) < std::tie(b.edge, b.copy);
  }
};

struct ConflictPair {
  EdgeInstance first;
  EdgeInstance second;
  SegmentRelation relation;
};

inline Segment edge_segment(const Multigraph& g, const Drawing& d, EdgeId e) {
  const auto& ec = g.edge(e);
  return Segment{d.at(ec.u), d.at(ec.v)};
}

namespace detail {

inline bool boxes_disjoint(const Segment& s, const Segment& t) {
  const auto& [sx0, sx1] = std::minmax(s.a.x, s.b.x);
  const auto& [tx0, tx1] = std::minmax(t.a.x, t.b.x);
  if (sx1 < tx0 || tx1 < sx0) return true;
  const auto& [sy0, sy1] = std::minmax(s.a.y, s.b.y);
  const auto& [ty0, ty1] = std::minmax(t.a.y, t.b.y);
  return sy1 < ty0 || ty1 < sy0;
}

}  // namespace detail

/// Class-level conflicts: pairs of distinct edge classes whose segments share a
/// non-common-endpoint point. Result sorted by (e, f) with e < f.
struct ClassConflict {
  EdgeId e = 0;
  EdgeId f = 0;
  SegmentRelation relation;
};

inline std::vector<ClassConflict> class_conflicts(const Multigraph& g, const Drawing& d) {
  const std::size_t m = g.edge_class_count();
  std::vector<Segment> segs;
  segs.reserve(m);
  for (EdgeId e = 0; e < m; ++e) segs.push_back(edge_segment(g, d, e));
  std::vector<ClassConflict> out;
  for (EdgeId e = 0; e < m; ++e) {
    for (EdgeId f = e + 1; f < m; ++f) {
      if (detail::boxes_disjoint(segs[e], segs[f])) continue;
      SegmentRelation rel = segment_relation(segs[e], segs[f]);
      if (rel.conflicts()) out.push_back(ClassConflict{e, f, std::move(rel)});
    }
  }
  return out;
}

/// Every unordered pair of edge instances sharing a point other than a common
/// endpoint. Parallel copies of one class always overlap.
inline std::vector<ConflictPair> conflict_pairs(const Multigraph& g, const Drawing& d) {
  std::vector<ConflictPair> out;
  for (EdgeId e = 0; e < g.edge_class_count(); ++e) {
    int mult = g.edge(e).multiplicity;
    for (int a = 0; a < mult; ++a)
      for (int b = a + 1; b < mult; ++b)
        out.push_back({{e, a}, {e, b}, {RelationKind::collinear_overlap, std::nullopt}});
  }
  for (const auto& cc : class_conflicts(g, d)) {
    int me = g.edge(cc.e).multiplicity, mf = g.edge(cc.f).multiplicity;
    for (int a = 0; a < me; ++a)
      for (int b = 0; b < mf; ++b) out.push_back({{cc.e, a}, {cc.f, b}, cc.relation});
  }
  return out;
}

}  // namespace gthick

#endif
