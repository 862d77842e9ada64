#include "gthick/reduction.hpp"
#include "gthick/witness.hpp"
#include "test_support.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace gthick;
using gthick::fixtures::random_realization;
using gthick::fixtures::realization_of;

namespace {

SegmentRealization single_cross() { return realization_of({{-4, 0, 4, 0}, {0, -4, 0, 4}}); }

SegmentRealization triple() { return realization_of({{-2, 0, 12, 0}, {-5, -8, 10, 16}, {15, -8, 0, 16}}); }

// Diagonals of a convex pentagon, trimmed so no two share an endpoint.
SegmentRealization pentagram() {
  std::vector<Point> v{make_point(0, 100), make_point(95, 31), make_point(59, -81), make_point(-59, -81),
                       make_point(-95, 31)};
  SegmentRealization r;
  for (std::size_t i = 0; i < 5; ++i) {
    const Point &p = v[i], &q = v[(i + 2) % 5];
    Rational f(1, 20);
    r.names.push_back("d" + std::to_string(i));
    r.segments.push_back(Segment{Point{p.x + f * (q.x - p.x), p.y + f * (q.y - p.y)},
                                 Point{q.x + f * (p.x - q.x), q.y + f * (p.y - q.y)}});
  }
  return r;
}

Multigraph without_edge(const Multigraph& g, EdgeId drop) {
  Multigraph h;
  for (VertexId v = 0; v < g.vertex_count(); ++v) h.add_vertex(g.name(v));
  for (EdgeId e = 0; e < g.edge_class_count(); ++e)
    if (e != drop) h.add_edge(g.edge(e).u, g.edge(e).v, g.edge(e).multiplicity, g.edge(e).role);
  return h;
}

std::size_t expected_connectors(const ThicknessInstance& inst) {
  return 5 * inst.n() + inst.crossing_count() - 6;
}

void expect_role_shape(const ThicknessInstance& inst) {
  const auto& g = inst.graph;
  for (const auto& e : g.edges()) {
    switch (e.role) {
      case EdgeRole::long_edge:
      case EdgeRole::blocker: EXPECT_EQ(e.multiplicity, 1); break;
      case EdgeRole::crossing_box: EXPECT_EQ(e.multiplicity, inst.t - 1); break;
      default: EXPECT_EQ(e.multiplicity, inst.t);
    }
  }
  for (const auto& p : inst.paths) {
    EXPECT_EQ(p.edges.size(), inst.n());
    EXPECT_EQ(p.inner.size() + 1, inst.n());
  }
  EXPECT_EQ(g.vertex_count(), inst.vertex_count());
  EXPECT_EQ(g.edge_class_count(), inst.edge_class_count());
  EXPECT_EQ(g.edge_instance_count(), inst.edge_instance_count());
}

}  // namespace

TEST(Reduction, SingleCrossingCounts) {
  auto a = from_segments(single_cross());
  auto inst = build_thickness_instance(a, 3);
  EXPECT_EQ(inst.graph.vertex_count(), 21u);
  EXPECT_EQ(inst.graph.edge_class_count(), 36u);
  EXPECT_EQ(inst.graph.edge_instance_count(), 92u);
  EXPECT_EQ(inst.connector_count(), 5u);
  std::map<EdgeRole, std::size_t> classes;
  for (const auto& e : inst.graph.edges()) ++classes[e.role];
  EXPECT_EQ(classes[EdgeRole::long_edge], 2u);
  EXPECT_EQ(classes[EdgeRole::crossing_box], 4u);
  EXPECT_EQ(classes[EdgeRole::tunnel_boundary], 16u);
  EXPECT_EQ(classes[EdgeRole::blocker], 4u);
  EXPECT_EQ(classes[EdgeRole::connector], 10u);
  expect_role_shape(inst);

  auto two = build_thickness_instance(a, 2);
  EXPECT_EQ(two.graph.vertex_count(), 21u);
  EXPECT_EQ(two.graph.edge_class_count(), 36u);
  for (const auto& e : two.graph.edges())
    if (e.role == EdgeRole::crossing_box) EXPECT_EQ(e.multiplicity, 1);
}

TEST(Reduction, FrameOfSingleCrossing) {
  auto inst = build_thickness_instance(from_segments(single_cross()), 3);
  auto rep = extract_frame(inst);
  EXPECT_TRUE(rep.verdict.accepted()) << rep.verdict.summary();
  EXPECT_EQ(rep.vertices, 5u);
  EXPECT_EQ(rep.edges, 9u);
  // with five nodes one outer connector must join the ends of a long edge
  EXPECT_EQ(rep.verdict.warnings.size(), 1u);
  auto sk = check_frame_skeleton(inst);
  EXPECT_TRUE(sk.verdict.accepted());
  EXPECT_EQ(sk.edges, 9u);
}

TEST(Reduction, PairwiseCrossingTriple) {
  for (bool geometric : {false, true}) {
    ReductionOptions opt;
    if (geometric) opt.realization = triple();
    auto inst = build_thickness_instance(from_segments(triple()), 3, opt);
    EXPECT_EQ(inst.connector_count(), 12u);
    auto rep = extract_frame(inst);
    EXPECT_TRUE(rep.verdict.accepted()) << rep.verdict.summary();
    EXPECT_EQ(rep.vertices, 9u);
    EXPECT_EQ(rep.edges, 21u);
    expect_role_shape(inst);
  }
}

TEST(Reduction, FrameMutationsRejected) {
  auto inst = build_thickness_instance(from_segments(triple()), 3);
  auto by_role = [&](EdgeRole role) {
    for (EdgeId e = 0; e < inst.graph.edge_class_count(); ++e)
      if (inst.graph.edge(e).role == role) return e;
    return EdgeId(0);
  };
  for (EdgeRole role : {EdgeRole::connector, EdgeRole::tunnel_boundary, EdgeRole::crossing_box}) {
    auto broken = inst;
    broken.graph = without_edge(inst.graph, by_role(role));
    EXPECT_FALSE(extract_and_check_frame(broken).accepted()) << to_string(role);
  }
  // skeleton route: a missing connector path breaks maximality
  auto fewer = inst;
  for (std::size_t i = 0; i < fewer.paths.size(); ++i)
    if (fewer.paths[i].role == EdgeRole::connector && !fewer.paths[i].outer) {
      fewer.paths.erase(fewer.paths.begin() + static_cast<std::ptrdiff_t>(i));
      break;
    }
  auto rep = check_frame_skeleton(fewer);
  EXPECT_FALSE(rep.verdict.accepted());
  EXPECT_EQ(rep.edges, 20u);
}

TEST(Reduction, InputErrors) {
  auto lonely = realization_of({{-4, 0, 4, 0}, {0, -4, 0, 4}, {10, 10, 12, 12}});
  EXPECT_THROW(build_thickness_instance(from_segments(lonely), 3), InputError);
  auto apart = realization_of({{-4, 0, 4, 0}, {0, -4, 0, 4}, {10, 0, 14, 0}, {12, -2, 12, 2}});
  EXPECT_THROW(build_thickness_instance(from_segments(apart), 3), InputError);
  EXPECT_THROW(build_thickness_instance(from_segments(single_cross()), 1), InputError);
  EXPECT_THROW(build_thickness_instance(from_segments(triple()), 3, ReductionOptions{single_cross()}), InputError);
}

TEST(Reduction, WitnessSingleCrossing) {
  auto r = single_cross();
  auto w = build_witness(from_segments(r), r, {1, 2}, 3);
  ASSERT_TRUE(w.verdict.accepted()) << w.verdict.summary();
  auto count = crossings_per_edge(w.instance.graph, w.drawing);
  for (EdgeId e : w.instance.long_edges) EXPECT_EQ(count[e], 7u);
  EXPECT_EQ(*std::max_element(count.begin(), count.end()), 7u);
}

TEST(Reduction, WitnessPentagram) {
  auto r = pentagram();
  auto a = from_segments(r);
  auto ig = intersection_graph(a);
  EXPECT_EQ(ig.edge_count(), 5u);
  VertexColoring col{1, 2, 1, 2, 3};
  ASSERT_TRUE(is_proper(ig, col));
  auto w = build_witness(a, r, col, 3);
  EXPECT_TRUE(w.verdict.accepted()) << w.verdict.summary();
  EXPECT_TRUE(extract_and_check_frame(w.instance).accepted());
  EXPECT_THROW(build_witness(a, r, col, 2), InputError);
  EXPECT_THROW(build_witness(a, r, {1, 1, 1, 2, 3}, 3), InputError);
}

TEST(Reduction, SunflowerFamily) {
  auto r = single_cross();
  auto a = from_segments(r);
  auto s = build_sge_instance(a, {1, 2});
  EXPECT_EQ(s.family.graph_count(), 3u);
  EXPECT_EQ(verify_sunflower(s.family), SunflowerKind::empty_sunflower);
  // G_i skips the two box edges crossed by its own segment
  std::size_t h = s.family.graph(0).size();
  EXPECT_EQ(s.family.graph(1).size(), 1 + 2 * (h - 2));
  auto w = build_sge_witness(a, r, {1, 2});
  EXPECT_TRUE(w.verdict.accepted()) << w.verdict.summary();
  auto p = pentagram();
  auto pw = build_sge_witness(from_segments(p), p, {1, 2, 1, 2, 3});
  EXPECT_EQ(pw.family.family.graph_count(), 4u);
  EXPECT_EQ(verify_sunflower(pw.family.family), SunflowerKind::empty_sunflower);
  EXPECT_TRUE(pw.verdict.accepted()) << pw.verdict.summary();
}

TEST(Reduction, RandomCorpus) {
  std::mt19937 rng(17);
  std::size_t witnesses = 0;
  for (int trial = 0; trial < 60; ++trial) {
    std::size_t n = 2 + rng() % 6;
    auto r = random_realization(rng, n);
    auto a = from_segments(r);
    int t = 2 + static_cast<int>(rng() % 3);
    auto plain = build_thickness_instance(a, t);
    EXPECT_EQ(plain.connector_count(), expected_connectors(plain));
    expect_role_shape(plain);
    auto rep = extract_frame(plain);
    EXPECT_TRUE(rep.verdict.accepted()) << "trial " << trial << ": " << rep.verdict.summary();
    EXPECT_EQ(rep.vertices, 2 * n + plain.crossing_count());
    EXPECT_EQ(rep.edges, 3 * rep.vertices - 6);

    auto col = dsatur(intersection_graph(a));
    int tw = std::max(2, color_count(col));
    auto w = build_witness(a, r, col, tw);
    EXPECT_EQ(w.instance.connector_count(), expected_connectors(w.instance));
    EXPECT_TRUE(extract_and_check_frame(w.instance).accepted()) << "trial " << trial;
    ASSERT_TRUE(w.verdict.accepted()) << "trial " << trial << ": " << w.verdict.summary();
    auto count = crossings_per_edge(w.instance.graph, w.drawing);
    std::size_t long_max = 0;
    for (SegmentId s = 0; s < n; ++s) {
      std::size_t expect = static_cast<std::size_t>(2 * tw + 1) * a.crossings[s].size();
      EXPECT_EQ(count[w.instance.long_edges[s]], expect);
      long_max = std::max(long_max, expect);
    }
    EXPECT_EQ(*std::max_element(count.begin(), count.end()), long_max);
    ++witnesses;
  }
  EXPECT_EQ(witnesses, 60u);
}

TEST(Reduction, RandomSgeWitnesses) {
  // narrow tunnels near segment ends force smaller subdivision offsets
  std::mt19937 rng(404);
  for (int trial = 0; trial < 6; ++trial) {
    auto r = random_realization(rng, 2 + rng() % 6);
    auto a = from_segments(r);
    auto col = dsatur(intersection_graph(a));
    auto w = build_sge_witness(a, r, col);
    EXPECT_EQ(w.family.family.graph_count(), static_cast<std::size_t>(color_count(col)) + 1);
    EXPECT_TRUE(w.verdict.accepted()) << "trial " << trial << ": " << w.verdict.summary();
  }
}
