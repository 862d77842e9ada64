// Deterministic SVG export of drawings, colorings and segment realizations.
// One <g> layer per color; same input and spec give byte-identical output.
#ifndef GTHICK_RENDER_HPP
#define GTHICK_RENDER_HPP

#include "gthick/arrangement.hpp"
#include "gthick/graph.hpp"
#include "gthick/verdict.hpp"

#include <cstdio>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace gthick {

struct RenderSpec {
  double scale = 0;  // pixels per unit; 0 fits the drawing into `size`
  double size = 800;
  double stroke = 1.5;
  double vertex_radius = 2.5;
  bool labels = false;
  std::vector<std::string> palette = default_palette();
  std::set<EdgeRole> hidden_roles;

  static std::vector<std::string> default_palette() {
    return {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#7f7f7f",
            "#bcbd22", "#17becf", "#393b79", "#637939", "#8c6d31", "#843c39", "#7b4173", "#3182bd",
            "#e6550d", "#31a354", "#756bb1", "#636363", "#6baed6", "#fd8d3c", "#74c476", "#9e9ac8",
            "#969696", "#9ecae1", "#fdae6b", "#a1d99b", "#bcbddc", "#bdbdbd", "#000000"};
  }
};

namespace detail {

inline std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", x);
  std::string s = buf;
  if (s == "-0.000") s = "0.000";
  return s;
}

inline std::string escape_xml(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

class Canvas {
 public:
  Canvas(const std::vector<Point>& pts, const RenderSpec& spec) : spec_(spec) {
    for (const auto& p : pts) {
      double x = p.x.get_d(), y = p.y.get_d();
      lo_x_ = std::min(lo_x_, x), hi_x_ = std::max(hi_x_, x);
      lo_y_ = std::min(lo_y_, y), hi_y_ = std::max(hi_y_, y);
    }
    if (pts.empty()) lo_x_ = hi_x_ = lo_y_ = hi_y_ = 0;
    double span = std::max({hi_x_ - lo_x_, hi_y_ - lo_y_, 1e-300});
    scale_ = spec.scale > 0 ? spec.scale : (pts.size() < 2 ? 1.0 : (spec.size - 2 * margin_) / span);
    width_ = (hi_x_ - lo_x_) * scale_ + 2 * margin_;
    height_ = (hi_y_ - lo_y_) * scale_ + 2 * margin_;
  }

  std::string x(const Point& p) const { return num((p.x.get_d() - lo_x_) * scale_ + margin_); }
  std::string y(const Point& p) const { return num((hi_y_ - p.y.get_d()) * scale_ + margin_); }

  std::string open() const {
    return "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(width_) + "\" height=\"" + num(height_) +
           "\" viewBox=\"0 0 " + num(width_) + " " + num(height_) + "\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  }

  std::string line(const Point& a, const Point& b, const std::string& color, double width) const {
    return "<line x1=\"" + x(a) + "\" y1=\"" + y(a) + "\" x2=\"" + x(b) + "\" y2=\"" + y(b) + "\" stroke=\"" + color +
           "\" stroke-width=\"" + num(width) + "\" stroke-linecap=\"round\"/>\n";
  }

 private:
  const RenderSpec& spec_;
  double margin_ = 20;
  double lo_x_ = std::numeric_limits<double>::max(), hi_x_ = std::numeric_limits<double>::lowest();
  double lo_y_ = std::numeric_limits<double>::max(), hi_y_ = std::numeric_limits<double>::lowest();
  double scale_ = 1, width_ = 0, height_ = 0;
};

inline void check_palette(const RenderSpec& spec, int colors) {
  if (colors > static_cast<int>(spec.palette.size()))
    throw InputError("palette has " + std::to_string(spec.palette.size()) + " entries but " + std::to_string(colors) +
                     " colors are used");
}

}  // namespace detail

/// Without a coloring every edge goes to layer 1. Hidden roles are skipped.
inline std::string render_svg(const Multigraph& g, const Drawing& d, const std::optional<EdgeColoring>& c = std::nullopt,
                              const RenderSpec& spec = {}) {
  int colors = c ? c->max_color() : (g.edge_class_count() ? 1 : 0);
  detail::check_palette(spec, colors);
  std::vector<Point> pts;
  for (VertexId v = 0; v < g.vertex_count(); ++v)
    if (d.has(v)) pts.push_back(d.at(v));
  detail::Canvas canvas(pts, spec);
  std::map<int, std::string> layers;
  for (EdgeId e = 0; e < g.edge_class_count(); ++e) {
    const auto& ec = g.edge(e);
    if (spec.hidden_roles.count(ec.role) || !d.has(ec.u) || !d.has(ec.v)) continue;
    std::vector<int> row = c ? c->colors.at(e) : std::vector<int>(static_cast<std::size_t>(ec.multiplicity), 1);
    for (int col : std::set<int>(row.begin(), row.end()))
      layers[col] += canvas.line(d.at(ec.u), d.at(ec.v), spec.palette[static_cast<std::size_t>(col - 1)], spec.stroke);
  }
  std::ostringstream out;
  out << canvas.open();
  for (const auto& [col, body] : layers) out << "<g id=\"layer-" << col << "\">\n" << body << "</g>\n";
  out << "<g id=\"vertices\">\n";
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    if (!d.has(v)) continue;
    const auto& p = d.at(v);
    out << "<circle cx=\"" << canvas.x(p) << "\" cy=\"" << canvas.y(p) << "\" r=\"" << detail::num(spec.vertex_radius)
        << "\" fill=\"black\"/>\n";
    if (spec.labels)
      out << "<text x=\"" << canvas.x(p) << "\" y=\"" << canvas.y(p) << "\" font-size=\"10\" dx=\"3\" dy=\"-3\">"
          << detail::escape_xml(g.name(v)) << "</text>\n";
  }
  out << "</g>\n</svg>\n";
  return out.str();
}

/// Segments of a realization, one layer per segment color (all 1 without a coloring).
inline std::string render_svg(const SegmentRealization& r, const std::optional<VertexColoring>& c = std::nullopt,
                              const RenderSpec& spec = {}) {
  if (c && c->size() != r.segments.size()) throw InputError("coloring does not match the segments");
  int colors = 0;
  for (std::size_t i = 0; i < r.segments.size(); ++i) colors = std::max(colors, c ? (*c)[i] : 1);
  detail::check_palette(spec, colors);
  std::vector<Point> pts;
  for (const auto& s : r.segments) pts.push_back(s.a), pts.push_back(s.b);
  detail::Canvas canvas(pts, spec);
  std::map<int, std::string> layers;
  for (std::size_t i = 0; i < r.segments.size(); ++i) {
    int col = c ? (*c)[i] : 1;
    if (col < 1) throw InputError("segment colors are 1-based");
    layers[col] += canvas.line(r.segments[i].a, r.segments[i].b, spec.palette[static_cast<std::size_t>(col - 1)], spec.stroke);
  }
  std::ostringstream out;
  out << canvas.open();
  for (const auto& [col, body] : layers) out << "<g id=\"layer-" << col << "\">\n" << body << "</g>\n";
  out << "</svg>\n";
  return out.str();
}

}  // namespace gthick

#endif
