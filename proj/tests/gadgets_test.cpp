#include "gthick/gadgets.hpp"
#include "gthick/uniformize.hpp"
#include "test_support.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace gthick;
using gthick::fixtures::degree_example;
using gthick::fixtures::random_program;

namespace {

struct Built {
  DependenceGraph g;
  GridLayout l;
  ChainPlan plan;
  StitchedConstruction sc;
};

Built build_all(const RgnfProgram& p) {
  Built b;
  b.g = reduce_degree(expand_conditions(build(p)));
  b.l = layout(b.g);
  b.plan = subdivide_edges(b.g, b.l);
  b.sc = stitch(b.g, b.l, b.plan);
  return b;
}

// Hand-placed layout; top ports come from the usual assignment unless forced.
GridLayout manual_layout(const DependenceGraph& g, std::vector<Point> pos) {
  GridLayout l;
  l.position = std::move(pos);
  l.crossings = detail::edge_crossings(g, l.position);
  l.scheme = "manual";
  EXPECT_TRUE(assign_top_ports(g, l));
  return l;
}

std::size_t count_kind(const StitchedConstruction& sc, PieceKind k) {
  std::size_t n = 0;
  for (const auto& o : sc.origin) n += o.kind == k;
  return n;
}

int max_color(const VertexColoring& c) {
  int m = 0;
  for (int x : c) m = std::max(m, x);
  return m;
}

}  // namespace

TEST(Gadgets, TemplatesPassSelfTest) {
  for (GadgetKind k : all_gadget_kinds()) {
    const auto& t = gadget_template(k);
    for (int axis : {1, -1}) {
      auto v = self_test(t, axis);
      EXPECT_TRUE(v.accepted()) << to_string(k) << ": " << v.summary();
    }
  }
}

TEST(Gadgets, TemplateShapes) {
  const auto& add = gadget_template(GadgetKind::negated_addition);
  EXPECT_EQ(add.gadget_segments(), 7u);
  EXPECT_EQ(add.port_count(), 4u);
  EXPECT_EQ(add.palette(), 10);
  const auto& neg = gadget_template(GadgetKind::negation);
  EXPECT_EQ(neg.port_count(), 3u);
  EXPECT_EQ(neg.palette(), 7);
  const auto& mul = gadget_template(GadgetKind::inverted_multiplication);
  EXPECT_EQ(mul.gadget_segments(), 7u);
  EXPECT_EQ(mul.palette(), 10);
  const auto& link = gadget_template(GadgetKind::transmission_link);
  EXPECT_EQ(link.gadget_segments(), 5u);
  // two end segments, three inner segments crossing both
  auto g = intersection_graph(raw_from_segments(link.local));
  EXPECT_FALSE(g.has_edge(0, 1));
  for (std::size_t i = 2; i < 5; ++i) EXPECT_EQ(g.degree(i), 4u);
  // gadget segments are colored pairwise differently
  for (GadgetKind k : all_gadget_kinds()) {
    const auto& t = gadget_template(k);
    std::set<int> c(t.colors.begin(), t.colors.end());
    if (k != GadgetKind::transmission_link) EXPECT_EQ(c.size(), t.colors.size()) << to_string(k);
  }
}

TEST(Gadgets, TemplateParseErrors) {
  EXPECT_THROW(parse_template("kind relay\nroles any\nsegment l -8 0 8 0 1\ntop 6 2 3 4\n"), InputError);
  EXPECT_THROW(parse_template("kind relay\nsegment l -8 0 8 0 11\n"), InputError);
  EXPECT_THROW(parse_template("kind nope\n"), InputError);
  EXPECT_THROW(parse_template("kind relay\nfrobnicate\n"), InputError);
  EXPECT_THROW(parse_template("roles any\nsegment l -8 0 8 0 1\n"), InputError);
  EXPECT_THROW(parse_template("kind transmission_link\nsegment l 0 -1 0 1 1\n"), InputError);
  EXPECT_THROW(parse_template("kind relay\nroles bogus\n"), InputError);
}

TEST(Gadgets, SelfTestCatchesBadTable) {
  auto t = gadget_template(GadgetKind::negated_addition);
  t.top.colors = {7, 8, 9};  // the top chain crosses the segment colored 7
  EXPECT_FALSE(self_test(t).accepted());
  auto u = gadget_template(GadgetKind::negation);
  u.colors[2] = u.colors[1];
  EXPECT_FALSE(self_test(u).accepted());  // g1 and g2 meet at their common foot
  u = gadget_template(GadgetKind::negation);
  u.colors[3] = u.colors[1];  // g1 crosses g3
  EXPECT_FALSE(self_test(u).accepted());
}

TEST(Gadgets, SingleUnitInstruction) {
  auto b = build_all(parse_rgnf("V1 = 1\n"));
  ASSERT_EQ(b.sc.gadgets.size(), 2u);
  EXPECT_EQ(b.sc.gadgets[0].kind, GadgetKind::relay);
  EXPECT_EQ(b.sc.gadgets[1].kind, GadgetKind::unit_assign);
  // the edge from s is a single chain of four links
  ASSERT_EQ(b.sc.inner.size(), 1u);
  EXPECT_EQ(b.sc.inner[0].size(), 4u);
  EXPECT_EQ(count_kind(b.sc, PieceKind::gadget), 2u);
  EXPECT_TRUE(validate(b.sc.raw).accepted());
  auto col = color_construction(b.sc);
  for (std::size_t s = 0; s < col.size(); ++s)
    if (b.sc.table[s]) EXPECT_EQ(col[s], b.sc.table[s]) << b.sc.realization.names[s];
  EXPECT_EQ(col[b.sc.gadgets[1].first], gadget_template(GadgetKind::unit_assign).colors[0]);
}

TEST(Gadgets, ChainOfFourLinksSharesEndSegments) {
  auto b = build_all(parse_rgnf("V1 = 1\n"));
  auto g = intersection_graph(b.sc.raw);
  const auto& in = b.sc.inner[0];
  const auto& ends = b.sc.ends[0];
  ASSERT_EQ(ends.size(), 3u);
  for (std::size_t k = 0; k < 4; ++k)
    for (std::size_t j = 0; j < 3; ++j) {
      if (k > 0) EXPECT_TRUE(g.has_edge(in[k][j], ends[k - 1]));
      if (k < 3) EXPECT_TRUE(g.has_edge(in[k][j], ends[k]));
      if (k > 0 && k < 3) EXPECT_EQ(g.degree(in[k][j]), 6u);
    }
  for (std::size_t s : ends) EXPECT_EQ(g.degree(s), 6u);
  // each interior station is one triple point with its end segment as transversal
  std::size_t triples = 0;
  for (const auto& p : b.sc.raw.points)
    if (p.multiplicity() == 3 && b.sc.origin[*p.transversal].kind == PieceKind::end_segment) ++triples;
  EXPECT_EQ(triples, 9u);
}

TEST(Gadgets, TwoChainsCrossingOnce) {
  DependenceGraph g;
  for (const char* n : {"a", "b", "c", "d"}) g.add_vertex({n, DepVertexKind::source, 0, std::nullopt});
  g.add_edge(0, 1, DepEdgeKind::dependency);
  g.add_edge(2, 3, DepEdgeKind::dependency);
  auto l = manual_layout(g, {make_point(0, 0), make_point(20, 21), make_point(1, 20), make_point(21, 1)});
  ASSERT_EQ(l.crossings[0].size(), 1u);
  auto plan = subdivide_edges(g, l);
  auto sc = stitch(g, l, plan);
  std::set<std::size_t> involved;
  std::size_t crossings = 0;
  auto graph = intersection_graph(sc.raw);
  for (auto [a, b] : graph.edges()) {
    const auto &oa = sc.origin[a], &ob = sc.origin[b];
    if (oa.owner == ob.owner || oa.kind == PieceKind::gadget || ob.kind == PieceKind::gadget) continue;
    ++crossings;
    involved.insert(a);
    involved.insert(b);
  }
  EXPECT_EQ(crossings, 9u);
  EXPECT_LE(involved.size(), 6u);
  auto col = color_construction(sc);
  EXPECT_LE(max_color(col), 10);
  EXPECT_TRUE(is_proper(graph, col));
}

TEST(Gadgets, SharedPortsOnOneSideRejected) {
  DependenceGraph g;
  g.add_vertex({"s", DepVertexKind::source, 0, std::nullopt});
  g.add_vertex({"X1", DepVertexKind::input, 1, std::nullopt});
  g.add_vertex({"V1", DepVertexKind::computed, 1, RgnfOp::input});
  g.add_vertex({"V2", DepVertexKind::computed, 2, RgnfOp::negation});
  std::size_t es = g.add_edge(0, 2, DepEdgeKind::dependency, 0);
  g.add_edge(1, 2, DepEdgeKind::dependency, 1);
  g.add_edge(2, 3, DepEdgeKind::dependency, 1);
  g.add_edge(0, 3, DepEdgeKind::dependency, 0);
  auto l = manual_layout(g, {make_point(1, 30), make_point(-20, -19), make_point(0, 0), make_point(21, -20)});
  l.top_port[2] = es;
  l.up[2] = make_point(0, 1);
  auto plan = subdivide_edges(g, l);
  try {
    stitch(g, l, plan);
    FAIL() << "expected an error";
  } catch (const InputError& e) {
    EXPECT_NE(std::string(e.what()).find("V1"), std::string::npos) << e.what();
  }
}

TEST(Gadgets, MiddleLinkCompletionAlwaysExists) {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 3000; ++trial) {
    auto triple = [&] {
      std::vector<int> c{1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
      std::shuffle(c.begin(), c.end(), rng);
      return ColorTriple{c[0], c[1], c[2]};
    };
    ColorTriple left = triple(), right = triple();
    std::array<std::set<int>, 3> forbid;
    // up to three colors of a crossing chain per strand
    if (trial % 2) {
      ColorTriple x = triple();
      for (auto& f : forbid) f.insert(x.begin(), x.end());
    }
    auto c = complete_middle_link(left, right, forbid);
    ASSERT_TRUE(c.has_value());
    std::set<int> mid(c->middle.begin(), c->middle.end());
    EXPECT_EQ(mid.size(), 3u);
    for (int j = 0; j < 3; ++j) {
      EXPECT_NE(c->middle[j], left[j]);
      EXPECT_NE(c->middle[j], right[j]);
      EXPECT_NE(c->middle[j], c->end);
      EXPECT_FALSE(forbid[j].count(c->middle[j]));
      EXPECT_NE(c->end, left[j]);
      EXPECT_NE(c->end, right[j]);
    }
  }
  EXPECT_FALSE(complete_middle_link({1, 2, 3}, {4, 5, 6}, {}, {}, 6).has_value());
}

TEST(Gadgets, SixLinkChainBetweenFixedPorts) {
  // an edge crossed twice gets six links
  DependenceGraph g;
  for (const char* n : {"a", "b", "c", "d", "e", "f"}) g.add_vertex({n, DepVertexKind::source, 0, std::nullopt});
  g.add_edge(0, 1, DepEdgeKind::dependency);
  g.add_edge(2, 3, DepEdgeKind::dependency);
  g.add_edge(4, 5, DepEdgeKind::dependency);
  auto l = manual_layout(g, {make_point(0, 0), make_point(40, 41), make_point(1, 20), make_point(21, 1),
                             make_point(20, 40), make_point(41, 21)});
  auto plan = subdivide_edges(g, l);
  ASSERT_EQ(plan.links(0), 6u);
  auto sc = stitch(g, l, plan);
  auto col = color_construction(sc);
  for (std::size_t k : {std::size_t(0), std::size_t(5)})
    for (std::size_t j = 0; j < 3; ++j) {
      std::size_t s = sc.inner[0][k][j];
      ASSERT_NE(sc.table[s], 0);
      EXPECT_EQ(col[s], sc.table[s]);
    }
  EXPECT_TRUE(is_proper(intersection_graph(sc.raw), col));
}

TEST(Gadgets, DegreeExampleColoring) {
  auto b = build_all(degree_example());
  EXPECT_TRUE(validate(b.sc.raw).accepted());
  auto graph = intersection_graph(b.sc.raw);
  auto col = color_construction(b.sc);
  EXPECT_TRUE(is_proper(graph, col));
  EXPECT_LE(max_color(col), 10);
  EXPECT_LE(graph.max_degree(), 72u);
  auto u = las_vergnas_uniformize(b.sc.raw, col);
  EXPECT_TRUE(is_proper(intersection_graph(u.arrangement), u.coloring));
  EXPECT_LE(max_color(u.coloring), 30);
  // every segment maps back to a gadget or chain piece
  EXPECT_EQ(b.sc.origin.size(), b.sc.raw.segment_count());
  std::size_t gadgets = 0;
  for (const auto& gi : b.sc.gadgets) gadgets += gi.kind != GadgetKind::relay;
  EXPECT_EQ(gadgets, 8u);
}

TEST(Gadgets, RandomProgramsStitchAndColor) {
  std::mt19937 rng(17);
  std::size_t worst_degree = 0;
  for (int trial = 0; trial < 12; ++trial) {
    auto p = random_program(rng, 3 + rng() % 6);
    auto b = build_all(p);
    auto v = validate(b.sc.raw);
    ASSERT_TRUE(v.accepted()) << v.summary();
    auto graph = intersection_graph(b.sc.raw);
    auto col = color_construction(b.sc);
    ASSERT_TRUE(is_proper(graph, col));
    ASSERT_LE(max_color(col), 10);
    worst_degree = std::max(worst_degree, graph.max_degree());
  }
  EXPECT_LE(worst_degree, 72u);
  RecordProperty("max_intersection_degree", static_cast<int>(worst_degree));
}
