// Certificate checkers for geometric thickness, simultaneous embedding and
// sunflower structure of graph families.
#ifndef GTHICK_CERTIFICATE_HPP
#define GTHICK_CERTIFICATE_HPP

#include "gthick/graph.hpp"
#include "gthick/verdict.hpp"

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace gthick {

namespace detail {

inline std::string instance_id(const Multigraph& g, EdgeInstance i) {
  const auto& e = g.edge(i.edge);
  return "e" + std::to_string(i.edge) + "#" + std::to_string(i.copy) + "(" + g.name(e.u) + "-" + g.name(e.v) + ")";
}

inline void check_drawing_total(std::size_t n, const Drawing& d, const std::vector<std::string>& names) {
  for (VertexId v = 0; v < n; ++v)
    if (!d.has(v)) throw InputError("drawing does not place vertex '" + names[v] + "'");
}

/// Isolated vertices lying inside a segment are warnings, never rejections.
template <typename SegmentsFn>
void warn_bare_vertices(const std::vector<std::size_t>& degree, const Drawing& d,
                        const std::vector<std::string>& names, SegmentsFn&& segments, Verdict& verdict) {
  for (VertexId v = 0; v < degree.size(); ++v) {
    if (degree[v] != 0) continue;
    for (const auto& [label, seg] : segments()) {
      if (in_open_segment(seg, d.at(v))) {
        verdict.warnings.push_back("vertex '" + names[v] + "' lies on the interior of " + label);
      }
    }
  }
}

}  // namespace detail

/// Accepts iff each color class is free of shared non-endpoint points and all
/// copies of an edge class carry distinct colors. Malformed certificates throw
/// InputError.
inline Verdict verify_thickness(const Multigraph& g, const Drawing& d, const EdgeColoring& c, int t) {
  if (t < 1) throw InputError("thickness must be positive");
  detail::check_drawing_total(g.vertex_count(), d, g.names());
  if (c.colors.size() != g.edge_class_count()) throw InputError("coloring does not cover every edge class");
  for (EdgeId e = 0; e < g.edge_class_count(); ++e) {
    if (c.colors[e].size() != static_cast<std::size_t>(g.edge(e).multiplicity))
      throw InputError("coloring of edge " + std::to_string(e) + " has wrong number of copies");
    for (int col : c.colors[e])
      if (col < 1 || col > t)
        throw InputError("color " + std::to_string(col) + " of edge " + std::to_string(e) + " outside [1," +
                         std::to_string(t) + "]");
  }
  for (VertexId u = 0; u < g.vertex_count(); ++u)
    for (VertexId v = u + 1; v < g.vertex_count(); ++v)
      if (d.at(u) == d.at(v)) throw InputError("vertices '" + g.name(u) + "' and '" + g.name(v) + "' coincide");

  Verdict verdict;
  for (EdgeId e = 0; e < g.edge_class_count(); ++e) {
    const auto& row = c.colors[e];
    for (std::size_t a = 0; a < row.size(); ++a)
      for (std::size_t b = a + 1; b < row.size(); ++b)
        if (row[a] == row[b])
          verdict.reject("multiedge_color_clash",
                         {detail::instance_id(g, {e, int(a)}), detail::instance_id(g, {e, int(b)})},
                         "color " + std::to_string(row[a]));
  }
  for (const auto& cc : class_conflicts(g, d)) {
    const auto& ce = c.colors[cc.e];
    const auto& cf = c.colors[cc.f];
    for (std::size_t a = 0; a < ce.size(); ++a)
      for (std::size_t b = 0; b < cf.size(); ++b)
        if (ce[a] == cf[b])
          verdict.reject(std::string("monochromatic_") + to_string(cc.relation.kind),
                         {detail::instance_id(g, {cc.e, int(a)}), detail::instance_id(g, {cc.f, int(b)})},
                         "color " + std::to_string(ce[a]), cc.relation.point);
  }

  std::vector<std::size_t> degree(g.vertex_count(), 0);
  for (const auto& e : g.edges()) ++degree[e.u], ++degree[e.v];
  detail::warn_bare_vertices(degree, d, g.names(), [&] {
    std::vector<std::pair<std::string, Segment>> segs;
    for (EdgeId e = 0; e < g.edge_class_count(); ++e)
      segs.emplace_back("edge " + std::to_string(e), edge_segment(g, d, e));
    return segs;
  }, verdict);
  return verdict;
}

/// A family of simple graphs on a shared vertex set.
class GraphFamily {
 public:
  using Edge = std::pair<VertexId, VertexId>;

  GraphFamily() = default;
  explicit GraphFamily(std::vector<std::string> names) : names_(std::move(names)) {}

  VertexId add_vertex(std::string name) {
    names_.push_back(std::move(name));
    return names_.size() - 1;
  }

  std::size_t add_graph() {
    graphs_.emplace_back();
    return graphs_.size() - 1;
  }

  /// Edges are stored normalized (u < v); duplicates and loops throw InputError.
  void add_edge(std::size_t graph, VertexId u, VertexId v) {
    if (u >= names_.size() || v >= names_.size()) throw InputError("family edge references unknown vertex");
    if (u == v) throw InputError("self-loop in family member " + std::to_string(graph));
    Edge e = std::minmax(u, v);
    auto& members = graphs_.at(graph);
    if (!members.insert(e).second)
      throw InputError("duplicate edge " + names_[u] + "-" + names_[v] + " in member " + std::to_string(graph));
  }

  std::size_t graph_count() const { return graphs_.size(); }
  std::size_t vertex_count() const { return names_.size(); }
  const std::vector<std::string>& names() const { return names_; }
  const std::set<Edge>& graph(std::size_t i) const { return graphs_.at(i); }

 private:
  std::vector<std::string> names_;
  std::vector<std::set<Edge>> graphs_;
};

/// Accepts iff each member graph is plane under d.
inline Verdict verify_sge(const GraphFamily& f, const Drawing& d) {
  detail::check_drawing_total(f.vertex_count(), d, f.names());
  for (VertexId u = 0; u < f.vertex_count(); ++u)
    for (VertexId v = u + 1; v < f.vertex_count(); ++v)
      if (d.at(u) == d.at(v)) throw InputError("vertices '" + f.names()[u] + "' and '" + f.names()[v] + "' coincide");

  Verdict verdict;
  std::vector<std::size_t> degree(f.vertex_count(), 0);
  for (std::size_t i = 0; i < f.graph_count(); ++i) {
    std::vector<GraphFamily::Edge> edges(f.graph(i).begin(), f.graph(i).end());
    std::vector<Segment> segs;
    for (const auto& [u, v] : edges) {
      segs.push_back(Segment{d.at(u), d.at(v)});
      ++degree[u], ++degree[v];
    }
    for (std::size_t a = 0; a < edges.size(); ++a)
      for (std::size_t b = a + 1; b < edges.size(); ++b) {
        if (detail::boxes_disjoint(segs[a], segs[b])) continue;
        auto rel = segment_relation(segs[a], segs[b]);
        if (!rel.conflicts()) continue;
        auto label = [&](const GraphFamily::Edge& e) { return f.names()[e.first] + "-" + f.names()[e.second]; };
        verdict.reject(std::string("member_") + to_string(rel.kind),
                       {"G" + std::to_string(i), label(edges[a]), label(edges[b])}, {}, rel.point);
      }
  }
  detail::warn_bare_vertices(degree, d, f.names(), [&] {
    std::vector<std::pair<std::string, Segment>> segs;
    for (std::size_t i = 0; i < f.graph_count(); ++i)
      for (const auto& [u, v] : f.graph(i))
        segs.emplace_back("G" + std::to_string(i) + " edge " + f.names()[u] + "-" + f.names()[v],
                          Segment{d.at(u), d.at(v)});
    return segs;
  }, verdict);
  return verdict;
}

enum class SunflowerKind { empty_sunflower, sunflower_with_center, not_sunflower };

inline const char* to_string(SunflowerKind k) {
  switch (k) {
    case SunflowerKind::empty_sunflower: return "empty_sunflower";
    case SunflowerKind::sunflower_with_center: return "sunflower_with_center";
    case SunflowerKind::not_sunflower: return "not_sunflower";
  }
  return "?";
}

/// Every edge must be private (in one member) or public (in all members).
inline SunflowerKind verify_sunflower(const GraphFamily& f) {
  std::map<GraphFamily::Edge, std::size_t> count;
  for (std::size_t i = 0; i < f.graph_count(); ++i)
    for (const auto& e : f.graph(i)) ++count[e];
  bool any_public = false;
  for (const auto& [e, k] : count) {
    if (k == 1) continue;
    if (k == f.graph_count()) {
      any_public = true;
      continue;
    }
    return SunflowerKind::not_sunflower;
  }
  return any_public ? SunflowerKind::sunflower_with_center : SunflowerKind::empty_sunflower;
}

}  // namespace gthick

#endif
