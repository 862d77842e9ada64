// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.
#include "gthick/io.hpp"
#include "gthick/pipeline.hpp"
#include "gthick/solver.hpp"
#include "gthick/witness.hpp"
#include "test_support.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <sstream>

using namespace gthick;
using namespace gthick::fixtures;

namespace {

struct Check {
  bool ok = true;
  std::ostringstream detail;
  void require(bool cond, const std::string& what) {
    if (!cond && ok) detail << "failed: " << what << "; ";
    ok = ok && cond;
  }
};

int failures = 0;

void criterion(int id, const std::string& title, double budget_seconds, const std::function<void(Check&)>& body) {
  Check c;
  auto start = std::chrono::steady_clock::now();
  try {
    body(c);
  } catch (const std::exception& e) {
    c.require(false, std::string("exception: ") + e.what());
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::ostringstream limit;
  limit << "time " << secs << " s over budget " << budget_seconds << " s";
  c.require(secs <= budget_seconds, limit.str());
  std::printf("%s %d %s (%.2f s) %s\n", c.ok ? "PASS" : "FAIL", id, title.c_str(), secs, c.detail.str().c_str());
  std::fflush(stdout);
  if (!c.ok) ++failures;
}

std::string cert(const std::string& name) { return read_file(std::string(GTHICK_DATA_DIR) + "/certificates/" + name); }

EdgeColoring coloring_from_mask(unsigned mask, int edges) {
  EdgeColoring c;
  for (int i = 0; i < edges; ++i) c.colors.push_back({int((mask >> i) & 1u) + 1});
  return c;
}

bool all_two_colorings_rejected(const Multigraph& g, const Drawing& d) {
  for (unsigned mask = 0; mask < (1u << 10); ++mask)
    if (verify_thickness(g, d, coloring_from_mask(mask, 10), 2).accepted()) return false;
  return true;
}

// Pentagon diagonals 02 03 13 14 24 form a 5-cycle in the crossing graph.
EdgeColoring convex_k5_three() { return coloring_of({1, 1, 2, 1, 1, 2, 3, 1, 3, 1}); }
EdgeColoring interior_k5_two() { return coloring_of({1, 2, 1, 1, 1, 1, 1, 1, 2, 1}); }

SegmentRealization single_cross() { return realization_of({{-4, 0, 4, 0}, {0, -4, 0, 4}}); }

SegmentRealization pentagram() {
  std::vector<Point> v{make_point(0, 100), make_point(95, 31), make_point(59, -81), make_point(-59, -81),
                       make_point(-95, 31)};
  SegmentRealization r;
  for (std::size_t i = 0; i < 5; ++i) {
    const Point &p = v[i], &q = v[(i + 2) % 5];
    Rational f = make_rational(1, 20);
    r.names.push_back("d" + std::to_string(i));
    r.segments.push_back(Segment{Point{p.x + f * (q.x - p.x), p.y + f * (q.y - p.y)},
                                 Point{q.x + f * (p.x - q.x), q.y + f * (p.y - q.y)}});
  }
  return r;
}

// Seeded corpus of connected general-position arrangements with a realization.
std::vector<SegmentRealization> corpus(std::size_t count, unsigned seed) {
  std::mt19937 rng(seed);
  std::vector<SegmentRealization> out{single_cross(), pentagram()};
  while (out.size() < count) out.push_back(random_realization(rng, 2 + rng() % 6));
  return out;
}

Multigraph without_edge(const Multigraph& g, EdgeId drop) {
  Multigraph h;
  for (VertexId v = 0; v < g.vertex_count(); ++v) h.add_vertex(g.name(v));
  for (EdgeId e = 0; e < g.edge_class_count(); ++e)
    if (e != drop) h.add_edge(g.edge(e).u, g.edge(e).v, g.edge(e).multiplicity, g.edge(e).role);
  return h;
}

// Connector count from Euler's formula alone: the contracted frame is maximal
// planar on 2n + m_c nodes, and a segment with k crossings contributes k + 1
// tunnel edges between consecutive nodes along it.
std::size_t euler_connectors(const PseudoSegmentArrangement& a) {
  std::size_t crossings = 0, tunnel = 0;
  for (const auto& row : a.crossings) crossings += row.size(), tunnel += row.size() + 1;
  crossings /= 2;
  std::size_t nodes = 2 * a.segment_count() + crossings;
  return 3 * nodes - 6 - tunnel;
}

bool uses_all_inputs(const RgnfProgram& p) {
  std::set<std::size_t> used;
  for (const auto& d : p.defs)
    if (d.op == RgnfOp::input) used.insert(d.j);
  return used.size() == p.inputs;
}

Rational big(const std::string& s) {
  Rational q(s);
  q.canonicalize();
  return q;
}

// p -> s*p + (ox, oy) with huge rational parameters.
Drawing affine(const Drawing& d, const Rational& s, const Rational& ox, const Rational& oy) {
  Drawing out(d.size());
  for (VertexId v = 0; v < d.size(); ++v)
    if (d.has(v)) out.set(v, Point{d.at(v).x * s + ox, d.at(v).y * s + oy});
  return out;
}

std::string fingerprint(const Verdict& v) {
  std::ostringstream s;
  s << v.accepted() << ":" << v.violations.size();
  for (const auto& x : v.violations) s << "," << x.kind;
  return s.str();
}

}  // namespace

int main() {
  criterion(1, "verifier triad on K5", 1.0, [](Check& c) {
    auto g = complete_graph(5);
    c.require(verify_thickness(g, square_with_interior(), interior_k5_two(), 2).accepted(), "interior K5 at t=2");
    c.require(all_two_colorings_rejected(g, convex_pentagon()), "convex K5 rejected for all 1024 2-colorings");
    c.require(verify_thickness(g, convex_pentagon(), convex_k5_three(), 3).accepted(), "convex K5 at t=3");
    c.detail << "1024 colorings enumerated";
  });

  criterion(2, "bundled K8 and K9 certificates", 5.0, [](Check& c) {
    auto k8 = parse_instance(cert("k8.instance"));
    auto d8 = parse_drawing(cert("k8.drawing"), k8);
    auto c8 = parse_coloring(cert("k8.coloring"), k8);
    c.require(verify_thickness(k8, d8, c8, 2).accepted(), "K8 at t=2");
    // at t=1 every coloring is the uniform one
    c.require(!verify_thickness(k8, d8, EdgeColoring::uniform(k8, 1), 1).accepted(), "K8 rejected at t=1");
    c.require(decompose_drawing(k8, d8).colors == 2, "K8 placement needs exactly 2 layers");
    c.require(lower_bound(k8) == 2, "K8 lower bound 2");
    auto k9 = parse_instance(cert("k9.instance"));
    auto d9 = parse_drawing(cert("k9.drawing"), k9);
    auto c9 = parse_coloring(cert("k9.coloring"), k9);
    c.require(verify_thickness(k9, d9, c9, 3).accepted(), "K9 at t=3");
    c.require(lower_bound(k9) == 2, "K9 density bound 2");
    c.detail << "K9 >= 3 not certified; lower bound reports " << lower_bound(k9);
  });

  criterion(3, "reduction counts and connector identity", 60.0, [](Check& c) {
    auto inst = build_thickness_instance(from_segments(single_cross()), 3);
    c.require(inst.graph.vertex_count() == 21, "21 vertices");
    c.require(inst.graph.edge_class_count() == 36, "36 edge classes");
    c.require(inst.graph.edge_instance_count() == 92, "92 edge instances");
    c.require(inst.connector_count() == 5, "5 connectors");
    auto set = corpus(60, 101);
    std::mt19937 rng(7);
    for (const auto& r : set) {
      auto a = from_segments(r);
      auto i = build_thickness_instance(a, 2 + static_cast<int>(rng() % 3));
      c.require(i.connector_count() == euler_connectors(a), "connector identity");
      c.require(i.connector_count() == 5 * i.n() + i.crossing_count() - 6, "closed form");
    }
    c.detail << set.size() << " arrangements";
  });

  criterion(4, "witness completeness", 120.0, [](Check& c) {
    auto set = corpus(22, 202);
    double worst = 0;
    for (const auto& r : set) {
      auto start = std::chrono::steady_clock::now();
      auto a = from_segments(r);
      auto col = dsatur(intersection_graph(a));
      for (int t : {std::max(2, color_count(col)), std::max(2, color_count(col)) + 1}) {
        auto w = build_witness(a, r, col, t);
        c.require(verify_thickness(w.instance.graph, w.drawing, w.coloring, t).accepted(), "witness verifies");
        auto count = crossings_per_edge(w.instance.graph, w.drawing);
        for (SegmentId s = 0; s < a.segment_count(); ++s)
          c.require(count[w.instance.long_edges[s]] == static_cast<std::size_t>(2 * t + 1) * a.crossings[s].size(),
                    "long edge crossings = (2t+1)k");
      }
      worst = std::max(worst, std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
    }
    c.require(worst < 10.0, "each instance under 10 s");
    c.detail << set.size() << " arrangements, slowest " << worst << " s";
  });

  criterion(5, "frame structure and mutations", 60.0, [](Check& c) {
    auto set = corpus(30, 303);
    for (const auto& r : set) {
      auto inst = build_thickness_instance(from_segments(r), 3);
      auto rep = extract_frame(inst);
      c.require(rep.verdict.accepted(), "frame accepted: " + rep.verdict.summary());
      c.require(rep.edges == 3 * rep.vertices - 6, "|E*| = 3|V*| - 6");
    }
    auto inst = build_thickness_instance(from_segments(set[2]), 3);
    std::size_t mutants = 0;
    for (EdgeRole role : {EdgeRole::connector, EdgeRole::tunnel_boundary}) {
      for (EdgeId e = 0; e < inst.graph.edge_class_count(); ++e) {
        if (inst.graph.edge(e).role != role) continue;
        auto broken = inst;
        broken.graph = without_edge(inst.graph, e);
        c.require(!extract_and_check_frame(broken).accepted(), std::string("deleting a ") + to_string(role) + " edge is rejected");
        ++mutants;
      }
    }
    c.detail << set.size() << " instances, " << mutants << " mutants rejected";
  });

  criterion(6, "pipeline coloring budget", 300.0, [](Check& c) {
    std::vector<RgnfProgram> programs{parse_rgnf("V1 = 1\n")};
    std::mt19937 rng(29);
    while (programs.size() < 11) {
      auto p = random_program(rng, 2 + rng() % 3);
      if (uses_all_inputs(p) && validate(p).accepted()) programs.push_back(p);
    }
    std::size_t worst_degree = 0;
    int worst_stitched = 0, worst_uniform = 0;
    for (const auto& p : programs) {
      auto start = std::chrono::steady_clock::now();
      auto g = reduce_degree(expand_conditions(build(p)));
      auto l = layout(g);
      auto sc = stitch(g, l, subdivide_edges(g, l));
      c.require(validate(sc.raw).accepted(), "stitched arrangement valid");
      auto ig = intersection_graph(sc.raw);
      auto col = color_construction(sc);
      int stitched = color_count(col);
      c.require(is_proper(ig, col) && stitched <= 10, "stitched coloring proper with <= 10 colors");
      auto u = las_vergnas_uniformize(sc.raw, col);
      c.require(validate(u.arrangement).accepted(), "uniform arrangement valid");
      // every crossing of the uniform arrangement joins two differently colored segments
      for (SegmentId s = 0; s < u.arrangement.segment_count(); ++s)
        for (const auto& x : u.arrangement.crossings[s])
          c.require(u.coloring[s] != u.coloring[x.other], "lifted coloring proper");
      int uniform = color_count(u.coloring);
      c.require(uniform <= 30, "<= 30 colors after uniformization");
      worst_degree = std::max(worst_degree, ig.max_degree());
      worst_stitched = std::max(worst_stitched, stitched);
      worst_uniform = std::max(worst_uniform, uniform);
      c.require(std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count() < 30.0,
                "each program under 30 s");
    }
    c.detail << programs.size() << " programs, colors " << worst_stitched << " -> " << worst_uniform
             << ", max intersection degree " << worst_degree << (worst_degree <= 72 ? "" : " (soft bound 72 exceeded)");
  });

  criterion(7, "SGE construction", 60.0, [](Check& c) {
    auto set = corpus(15, 404);
    double worst = 0;
    for (const auto& r : set) {
      auto start = std::chrono::steady_clock::now();
      auto a = from_segments(r);
      auto col = dsatur(intersection_graph(a));
      auto fam = build_sge_instance(a, col);
      c.require(fam.family.graph_count() == static_cast<std::size_t>(color_count(col)) + 1, "c + 1 graphs");
      c.require(verify_sunflower(fam.family) == SunflowerKind::empty_sunflower, "empty sunflower");
      auto w = build_sge_witness(a, r, col);
      c.require(verify_sge(w.family.family, w.drawing).accepted(), "witness placement is an SGE");
      worst = std::max(worst, std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
    }
    c.require(worst < 5.0, "each arrangement under 5 s");
    c.detail << set.size() << " arrangements, slowest " << worst << " s";
  });

  criterion(8, "RG-NF semantics", 1.0, [](Check& c) {
    auto p = degree_example();
    c.require(validate(p).accepted(), "degree example valid");
    auto e = evaluate(p, {Rational(2), Rational(3), Rational(4)});
    c.require(e.verdict.accepted(), "side conditions hold at (2,3,4)");
    c.require(*e.values.v[4] == -1 && *e.values.v[5] == 5 && *e.values.v[6] == 4 && *e.values.v[7] == 3,
              "V5..V8 = -1, 5, 4, 3");
    const std::string head = "vars X1\nV1 = 1\nV2 = X1\n";
    int rejected = 0;
    for (std::string body : {"V3 = -V4\nV4 = 1\n", "V3 = -V4 + V1\nV4 = 1\n", "V3 = -V1 + V4\nV4 = 1\n",
                             "V3 = inv V4\nV4 = X1\n", "V3 = inv V4 * V2\nV4 = 1\n", "V3 = inv V1 * V4\nV4 = 1\n"}) {
      auto v = validate(parse_rgnf(head + body));
      bool ok = !v.accepted() && v.violations[0].kind == "index_order";
      c.require(ok, "ordering violation rejected: " + body);
      rejected += ok;
    }
    c.detail << rejected << "/6 ordering violations rejected";
  });

  criterion(9, "exactness under huge coordinates", 5.0, [](Check& c) {
    Rational s50 = big("1" + std::string(50, '0'));
    Rational s = big("9" + std::string(99, '7') + "/" + "3" + std::string(98, '1') + "9");
    Rational ox = big("-" + std::string(100, '8') + "/7"), oy = big(std::string(100, '5') + "/" + std::string(99, '3'));
    auto same = [&](const std::function<Verdict(const Drawing&)>& verdict, const Drawing& d, const std::string& what) {
      auto base = fingerprint(verdict(d));
      c.require(fingerprint(verdict(d.scaled(s50))) == base, what + " under 10^50 scaling");
      c.require(fingerprint(verdict(affine(d, s, ox, oy))) == base, what + " under 100-digit affine map");
    };
    auto k5 = complete_graph(5);
    same([&](const Drawing& d) { return verify_thickness(k5, d, interior_k5_two(), 2); }, square_with_interior(),
         "interior K5");
    same([&](const Drawing& d) { return verify_thickness(k5, d, EdgeColoring::uniform(k5, 1), 2); },
         square_with_interior(), "interior K5 one color");
    same([&](const Drawing& d) { return verify_thickness(k5, d, convex_k5_three(), 3); }, convex_pentagon(),
         "convex K5");
    for (unsigned mask : {0u, 0x155u, 0x2aau, 0x3ffu})
      same([&](const Drawing& d) { return verify_thickness(k5, d, coloring_from_mask(mask, 10), 2); },
           convex_pentagon(), "convex K5 2-coloring");
    auto k8 = parse_instance(cert("k8.instance"));
    auto d8 = parse_drawing(cert("k8.drawing"), k8);
    auto c8 = parse_coloring(cert("k8.coloring"), k8);
    same([&](const Drawing& d) { return verify_thickness(k8, d, c8, 2); }, d8, "K8 certificate");
    same([&](const Drawing& d) { return verify_thickness(k8, d, EdgeColoring::uniform(k8, 1), 1); }, d8, "K8 at t=1");
    auto r = single_cross();
    auto w = build_witness(from_segments(r), r, {1, 2}, 3);
    same([&](const Drawing& d) { return verify_thickness(w.instance.graph, d, w.coloring, 3); }, w.drawing,
         "reduction witness");
    auto sw = build_sge_witness(from_segments(r), r, {1, 2});
    same([&](const Drawing& d) { return verify_sge(sw.family.family, d); }, sw.drawing, "SGE witness");
    c.detail << "10^50 scaling and 100-digit affine maps";
  });

  return failures ? 1 : 0;
}
