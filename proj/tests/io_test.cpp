#include "gthick/io.hpp"
#include "gthick/reduction.hpp"
#include "gthick/witness.hpp"
#include "test_support.hpp"

#include <gtest/gtest.h>

using namespace gthick;
using gthick::fixtures::realization_of;

namespace {

SegmentRealization single_cross() { return realization_of({{-4, 0, 4, 0}, {0, -4, 0, 4}}); }

std::string error_of(const std::string& text) {
  try {
    canonicalize(text);
  } catch (const InputError& e) {
    return e.what();
  }
  return {};
}

}  // namespace

TEST(Io, WitnessFilesRoundTrip) {
  auto r = single_cross();
  auto w = build_witness(from_segments(r), r, {1, 2}, 3);
  const auto& g = w.instance.graph;
  auto gi = to_text(g), di = to_text(w.drawing, g.names()), ci = to_text(w.coloring);
  EXPECT_EQ(canonicalize(gi), gi);
  EXPECT_EQ(canonicalize(di), di);
  EXPECT_EQ(canonicalize(ci), ci);
  auto g2 = parse_instance(gi);
  auto d2 = parse_drawing(di, g2);
  auto c2 = parse_coloring(ci, g2);
  EXPECT_EQ(to_text(g2), gi);
  EXPECT_EQ(to_text(d2, g2.names()), di);
  EXPECT_EQ(c2.colors, w.coloring.colors);
  EXPECT_TRUE(verify_thickness(g2, d2, c2, 3).accepted());
}

TEST(Io, ArrangementRealizationFamilyRoundTrip) {
  auto r = single_cross();
  auto a = from_segments(r);
  auto at = to_text(a);
  EXPECT_EQ(at, "gthick arrangement\nseg a: (b, -1)\nseg b: (a, +1)\n");
  EXPECT_EQ(canonicalize(at), at);
  auto back = parse_arrangement(at);
  EXPECT_EQ(back.crossings, a.crossings);
  auto rt = to_text(r);
  EXPECT_EQ(canonicalize(rt), rt);
  EXPECT_EQ(to_text(parse_realization(rt)), rt);
  auto s = build_sge_instance(a, {1, 2});
  auto ft = to_text(s.family);
  EXPECT_EQ(canonicalize(ft), ft);
  EXPECT_EQ(verify_sunflower(parse_family(ft)), SunflowerKind::empty_sunflower);
}

TEST(Io, CommentsAreDropped) {
  std::string text = "# header comment\ngthick realization\n\nsegment a -4 0 4/2 0  # trailing\nsegment b 0 -8/2 0 4\n";
  EXPECT_EQ(canonicalize(text), "gthick realization\nsegment a -4 0 2 0\nsegment b 0 -4 0 4\n");
  EXPECT_EQ(detect_kind("V1 = 1\n"), FileKind::program);
  EXPECT_EQ(canonicalize("vars X1\nV1 = 1  # unit\n"), to_text(parse_rgnf("vars X1\nV1 = 1\n")));
}

TEST(Io, PositionedErrors) {
  EXPECT_EQ(error_of("gthick instance\nvertex a\nedge a zz 1 plain\n"), "line 3, column 8: unknown vertex 'zz'");
  EXPECT_EQ(error_of("gthick instance\nvertex a\nvertex b\nedge a b 0 plain\n"), "line 4, column 10: multiplicity must be >= 1");
  EXPECT_EQ(error_of("gthick realization\nsegment a 1/0 0 1 1\n"), "line 2, column 11: zero denominator in '1/0'");
  EXPECT_EQ(error_of("gthick bogus\n"), "line 1, column 8: unknown file kind 'bogus'");
  EXPECT_EQ(error_of("gthick arrangement\nseg a: (b, +1)\nseg b: (a, *)\n"), "line 3, column 12: sign must be +1 or -1");
  EXPECT_EQ(error_of("gthick coloring\ncolor 0 x 1\n"), "line 2, column 9: expected an integer, got 'x'");
  // same sign on both sides of one crossing is not an arrangement
  EXPECT_NE(error_of("gthick arrangement\nseg a: (b, +1)\nseg b: (a, +1)\n"), "");
  auto g = parse_instance("gthick instance\nvertex a\nvertex b\nedge a b 2 plain\n");
  EXPECT_THROW(parse_drawing("gthick drawing\nat a 0 0\n", g), InputError);
  EXPECT_THROW(parse_coloring("gthick coloring\ncolor 0 0 1\n", g), InputError);
  EXPECT_THROW(parse_coloring("gthick coloring\ncolor 0 2 1\n", g), InputError);
}

TEST(Io, VerdictJson) {
  Verdict v;
  v.reject("proper_crossing", {"e0#0", "e1#0"}, "same color", make_point(1, 2));
  v.warnings.push_back("isolated vertex on edge");
  auto j = to_json(v);
  EXPECT_FALSE(j["accepted"].get<bool>());
  EXPECT_EQ(j["violations"][0]["witness"][1], "2");
  EXPECT_EQ(j["warnings"].size(), 1u);
  EXPECT_EQ(to_text(Verdict{}), "ACCEPT\n");
}
