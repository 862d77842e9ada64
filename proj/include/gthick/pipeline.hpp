// End-to-end composition: RG-NF program -> stitched arrangement -> uniform
// arrangement -> thickness instance, re-checking every intermediate result.
#ifndef GTHICK_PIPELINE_HPP
#define GTHICK_PIPELINE_HPP

#include "gthick/depgraph.hpp"
#include "gthick/gadgets.hpp"
#include "gthick/reduction.hpp"
#include "gthick/rgnf.hpp"
#include "gthick/uniformize.hpp"

#include <algorithm>
#include <string>
#include <vector>

namespace gthick {

struct PipelineStage {
  std::string name;
  std::string note;  // short size summary
};

struct PipelineResult {
  std::vector<PipelineStage> stages;
  std::size_t stitched_segments = 0;
  int stitched_colors = 0;
  std::size_t max_intersection_degree = 0;  // of the stitched arrangement
  PseudoSegmentArrangement arrangement;     // uniform
  VertexColoring coloring;                  // lifted to the uniform arrangement
  int uniform_colors = 0;
  ThicknessInstance instance;
};

namespace detail {

inline int highest_color(const VertexColoring& c) { return c.empty() ? 0 : *std::max_element(c.begin(), c.end()); }

/// Runs `f`, relabelling its errors with the stage name and keeping their type.
template <typename F>
auto staged(const std::string& stage, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const InputError& e) {
    throw InputError("stage " + stage + ": " + e.what());
  } catch (const ResourceError& e) {
    throw ResourceError("stage " + stage + ": " + e.what());
  }
}

inline void require(const std::string& stage, const Verdict& v) {
  if (!v.accepted()) throw InputError("stage " + stage + ": " + v.summary());
}

}  // namespace detail

inline PipelineResult pipeline(const RgnfProgram& p, int t, ReductionOptions opt = {}) {
  if (t < 30) throw InputError("stage precondition: pipeline needs t >= 30, got " + std::to_string(t));
  PipelineResult out;
  auto note = [&](const std::string& stage, const std::string& what) { out.stages.push_back({stage, what}); };

  detail::require("validate", validate(p));
  auto g = detail::staged("depgraph", [&] { return reduce_degree(expand_conditions(build(p))); });
  if (g.max_degree() > 4) throw InputError("stage depgraph: degree " + std::to_string(g.max_degree()) + " after reduction");
  note("depgraph", std::to_string(g.vertex_count()) + " vertices, " + std::to_string(g.edge_count()) + " edges");

  auto l = detail::staged("layout", [&] { return layout(g); });
  detail::require("layout", verify_layout(g, l));
  note("layout", l.scheme);

  auto plan = detail::staged("subdivide", [&] { return subdivide_edges(g, l); });
  detail::require("subdivide", verify_chains(g, l, plan));

  auto sc = detail::staged("stitch", [&] { return stitch(g, l, plan); });
  detail::require("stitch", validate(sc.raw));
  out.stitched_segments = sc.raw.segment_count();
  auto ig = intersection_graph(sc.raw);
  out.max_intersection_degree = ig.max_degree();
  note("stitch", std::to_string(out.stitched_segments) + " segments, " + std::to_string(sc.raw.points.size()) + " points");

  auto col = detail::staged("color", [&] { return color_construction(sc); });
  if (!is_proper(ig, col)) throw InputError("stage color: coloring is not proper");
  out.stitched_colors = detail::highest_color(col);
  if (out.stitched_colors > 10) throw InputError("stage color: " + std::to_string(out.stitched_colors) + " colors");
  note("color", std::to_string(out.stitched_colors) + " colors");

  auto u = detail::staged("uniformize", [&] { return las_vergnas_uniformize(sc.raw, col); });
  detail::require("uniformize", validate(u.arrangement));
  if (!is_proper(intersection_graph(u.arrangement), u.coloring)) throw InputError("stage uniformize: lifted coloring is not proper");
  out.uniform_colors = detail::highest_color(u.coloring);
  if (out.uniform_colors > 30) throw InputError("stage uniformize: " + std::to_string(out.uniform_colors) + " colors");
  note("uniformize", std::to_string(u.arrangement.segment_count()) + " segments, " +
                         std::to_string(u.arrangement.crossing_count()) + " crossings");
  out.arrangement = std::move(u.arrangement);
  out.coloring = std::move(u.coloring);

  opt.realization.reset();
  out.instance = detail::staged("reduce", [&] { return build_thickness_instance(out.arrangement, t, opt); });
  note("reduce", std::to_string(out.instance.vertex_count()) + " vertices, " +
                     std::to_string(out.instance.edge_instance_count()) + " edge instances");
  return out;
}

}  // namespace gthick

#endif
