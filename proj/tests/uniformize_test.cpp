#include "gthick/uniformize.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace gthick;

namespace {

Segment seg(long ax, long ay, long bx, long by) { return {make_point(ax, ay), make_point(bx, by)}; }

SegmentRealization realization(std::vector<Segment> segs) {
  SegmentRealization r;
  for (std::size_t i = 0; i < segs.size(); ++i) r.names.push_back("s" + std::to_string(i));
  r.segments = std::move(segs);
  return r;
}

// every concurrent point gets the lowest member as its transversal
void designate_lowest(RawArrangement& raw) {
  for (auto& p : raw.points)
    if (p.multiplicity() == 3) {
      auto m = p.members();
      p.transversal = *std::min_element(m.begin(), m.end());
    }
}

void expect_sound(const RawArrangement& raw, const VertexColoring& in, const UniformizeResult& r) {
  EXPECT_TRUE(validate(r.arrangement).accepted());
  EXPECT_TRUE(is_proper(intersection_graph(r.arrangement), r.coloring));
  EXPECT_LE(color_count(r.coloring), 3 * color_count(in));
  auto gin = intersection_graph(raw);
  auto gout = intersection_graph(r.arrangement);
  for (auto [a, b] : gout.edges()) {
    SegmentId oa = r.origin[a], ob = r.origin[b];
    EXPECT_TRUE(oa == ob || gin.has_edge(oa, ob)) << r.arrangement.names[a] << " x " << r.arrangement.names[b];
  }
  for (SegmentId s = 0; s < r.origin.size(); ++s)
    if (r.piece[s] == 0) EXPECT_EQ(r.coloring[s], in[r.origin[s]]);
}

}  // namespace

TEST(Uniformize, SingleConcurrencySplitsTransversalInTwo) {
  auto raw = raw_from_segments(realization({seg(-5, 0, 5, 0), seg(-1, -3, 1, 3), seg(1, -3, -1, 3)}));
  ASSERT_EQ(raw.points.size(), 1u);
  ASSERT_EQ(raw.points[0].multiplicity(), 3u);
  raw.points[0].transversal = 0;
  ASSERT_TRUE(validate(raw).accepted());
  VertexColoring c{1, 2, 3};
  auto r = las_vergnas_uniformize(raw, c);
  ASSERT_EQ(r.arrangement.segment_count(), 4u);
  EXPECT_EQ(r.replaced_by_two, 1u);
  EXPECT_EQ(r.arrangement.names[0], "s0.1");
  EXPECT_EQ(r.arrangement.names[1], "s0.2");
  EXPECT_EQ(r.coloring, (VertexColoring{1, 4, 2, 3}));
  expect_sound(raw, c, r);
  // the two halves of the transversal cross each other
  EXPECT_TRUE(intersection_graph(r.arrangement).has_edge(0, 1));
}

TEST(Uniformize, TwoConcurrenciesGiveRailsWithSharedColor) {
  auto raw = raw_from_segments(realization({seg(-10, 0, 10, 0), seg(-4, -3, -2, 3), seg(-2, -3, -4, 3),
                                            seg(2, -3, 4, 3), seg(4, -3, 2, 3)}));
  ASSERT_EQ(raw.points.size(), 2u);
  designate_lowest(raw);
  VertexColoring c{1, 2, 3, 2, 3};
  auto r = las_vergnas_uniformize(raw, c);
  ASSERT_EQ(r.arrangement.segment_count(), 8u);
  EXPECT_EQ(r.replaced_by_four, 1u);
  EXPECT_EQ(r.coloring[0], r.coloring[3]);
  EXPECT_EQ(r.coloring, (VertexColoring{1, 4, 7, 1, 2, 3, 2, 3}));
  EXPECT_FALSE(intersection_graph(r.arrangement).has_edge(0, 3));
  expect_sound(raw, c, r);
}

TEST(Uniformize, ThreeConcurrenciesOnOneTransversal) {
  auto raw = raw_from_segments(realization({seg(-12, 0, 12, 0), seg(-7, -3, -5, 3), seg(-5, -3, -7, 3),
                                            seg(-1, -3, 1, 3), seg(1, -3, -1, 3), seg(5, -3, 7, 3),
                                            seg(7, -3, 5, 3)}));
  designate_lowest(raw);
  VertexColoring c{1, 2, 3, 2, 3, 2, 3};
  auto r = las_vergnas_uniformize(raw, c);
  EXPECT_EQ(r.arrangement.segment_count(), 10u);
  expect_sound(raw, c, r);
}

TEST(Uniformize, UniformInputIsUnchanged) {
  auto psa = from_segments(realization({seg(0, 0, 10, 0), seg(2, -1, 6, 5), seg(8, -1, 4, 5), seg(1, 3, 9, -2)}));
  auto raw = to_raw(psa);
  auto col = *color_arrangement(psa, 3, ColoringMode::exact);
  auto r = las_vergnas_uniformize(raw, col);
  EXPECT_TRUE(isomorphic(r.arrangement, psa, false));
  EXPECT_EQ(r.coloring, col);
}

TEST(Uniformize, RejectsUnsupportedInput) {
  auto four = raw_from_segments(
      realization({seg(-5, 0, 5, 0), seg(0, -5, 0, 5), seg(-5, -5, 5, 5), seg(-5, 5, 5, -5)}));
  EXPECT_THROW(las_vergnas_uniformize(four, {1, 2, 3, 4}), InputError);
  auto three = raw_from_segments(realization({seg(-5, 0, 5, 0), seg(-1, -3, 1, 3), seg(1, -3, -1, 3)}));
  EXPECT_THROW(las_vergnas_uniformize(three, {1, 2, 3}), InputError);
  three.points[0].transversal = 1;
  EXPECT_THROW(las_vergnas_uniformize(three, {1, 1, 2}), InputError);
  EXPECT_THROW(las_vergnas_uniformize(three, {1, 2}), InputError);
}

TEST(Uniformize, RandomPencilsProperty) {
  std::mt19937 rng(7);
  std::uniform_int_distribution<long> coord(-20, 20), slope(-6, 6);
  int checked = 0;
  for (int trial = 0; trial < 300 && checked < 60; ++trial) {
    std::vector<Segment> segs;
    int pencils = 1 + trial % 3;
    for (int p = 0; p < pencils; ++p) {
      long cx = coord(rng), cy = coord(rng);
      for (int j = 0; j < 3; ++j) {
        long dx = slope(rng), dy = slope(rng);
        if (dx == 0 && dy == 0) dx = 1;
        long s = 1 + static_cast<long>(rng() % 3), e = 1 + static_cast<long>(rng() % 3);
        segs.push_back(seg(cx - s * dx, cy - s * dy, cx + e * dx, cy + e * dy));
      }
    }
    for (int j = 0; j < 3; ++j) segs.push_back(seg(coord(rng), coord(rng), coord(rng), coord(rng)));
    RawArrangement raw;
    try {
      raw = raw_from_segments(realization(segs));
    } catch (const InputError&) {
      continue;
    }
    bool ok = true;
    for (const auto& p : raw.points) ok = ok && p.multiplicity() <= 3;
    if (!ok) continue;
    designate_lowest(raw);
    auto col = dsatur(intersection_graph(raw));
    auto r = las_vergnas_uniformize(raw, col);
    expect_sound(raw, col, r);
    ++checked;
  }
  EXPECT_GE(checked, 30);
}
