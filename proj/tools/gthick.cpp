// gthick: command-line front end. Every verb reads and writes the library's
// file formats; exit codes are 0 accept, 1 reject, 2 input error, 3 resource
// limit or unknown.
#include "gthick/io.hpp"
#include "gthick/pipeline.hpp"
#include "gthick/reduction.hpp"
#include "gthick/render.hpp"
#include "gthick/solver.hpp"
#include "gthick/witness.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <iostream>
#include <optional>
#include <string>

using namespace gthick;
using nlohmann::json;

namespace {

enum Exit { accept = 0, reject = 1, input_error = 2, resource = 3 };

struct Globals {
  std::string format = "text";
  unsigned threads = 1;
};

Globals globals;

void print(const json& j, const std::string& text) {
  if (globals.format == "json")
    std::cout << j.dump(2) << "\n";
  else
    std::cout << text;
}

int report(const Verdict& v, json extra = json::object()) {
  json j = to_json(v);
  j.update(extra);
  std::string text = to_text(v);
  for (const auto& [k, val] : extra.items()) text += k + " " + (val.is_string() ? val.get<std::string>() : val.dump()) + "\n";
  print(j, text);
  return v.accepted() ? accept : reject;
}

Multigraph names_only(const std::vector<std::string>& names) {
  Multigraph g;
  for (const auto& n : names) g.add_vertex(n);
  return g;
}

VertexColoring parse_colors(const std::string& text, std::size_t n) {
  VertexColoring c;
  std::istringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      c.push_back(std::stoi(item));
    } catch (...) {
      throw InputError("bad color '" + item + "'");
    }
  }
  if (c.size() != n) throw InputError("expected " + std::to_string(n) + " segment colors, got " + std::to_string(c.size()));
  return c;
}

void write_or_print(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-")
    std::cout << text;
  else
    write_file(path, text);
}

// ---- verify -----------------------------------------------------------------

struct VerifyArgs {
  std::string instance, drawing, coloring, family, out;
  int t = 0;
};

int verify_thickness_cmd(const VerifyArgs& a) {
  auto g = parse_instance(read_file(a.instance));
  auto d = parse_drawing(read_file(a.drawing), g);
  auto c = parse_coloring(read_file(a.coloring), g);
  auto v = verify_thickness(g, d, c, a.t);
  if (!a.out.empty()) write_file(a.out, to_json(v).dump(2) + "\n");
  return report(v, {{"t", a.t}});
}

int verify_sge_cmd(const VerifyArgs& a) {
  auto f = parse_family(read_file(a.family));
  auto d = parse_drawing(read_file(a.drawing), names_only(f.names()));
  auto v = verify_sge(f, d);
  if (!a.out.empty()) write_file(a.out, to_json(v).dump(2) + "\n");
  return report(v, {{"graphs", f.graph_count()}});
}

int verify_sunflower_cmd(const VerifyArgs& a) {
  auto f = parse_family(read_file(a.family));
  auto kind = verify_sunflower(f);
  print(json{{"sunflower", to_string(kind)}}, std::string("sunflower ") + to_string(kind) + "\n");
  return kind == SunflowerKind::empty_sunflower ? accept : reject;
}

// ---- reduce -----------------------------------------------------------------

struct ReduceArgs {
  std::string arrangement, realization, colors, out_dir = ".";
  int t = 3;
  bool emit_witness = false;
};

std::string prefix(const ReduceArgs& a, const std::string& name) { return a.out_dir + "/" + name; }

VertexColoring arrangement_coloring(const ReduceArgs& a, const PseudoSegmentArrangement& arr, int limit) {
  if (!a.colors.empty()) return parse_colors(a.colors, arr.segment_count());
  auto c = color_arrangement(arr, limit, ColoringMode::exact);
  if (!c) throw InputError("arrangement is not " + std::to_string(limit) + "-colorable");
  return *c;
}

int reduce_thickness_cmd(const ReduceArgs& a) {
  auto arr = parse_arrangement(read_file(a.arrangement));
  std::optional<SegmentRealization> r;
  if (!a.realization.empty()) r = parse_realization(read_file(a.realization));
  if (a.emit_witness) {
    if (!r) throw InputError("--emit-witness needs --realization");
    auto w = build_witness(arr, *r, arrangement_coloring(a, arr, a.t), a.t);
    const auto& g = w.instance.graph;
    write_file(prefix(a, "instance.txt"), to_text(g));
    write_file(prefix(a, "drawing.txt"), to_text(w.drawing, g.names()));
    write_file(prefix(a, "coloring.txt"), to_text(w.coloring));
    auto count = crossings_per_edge(g, w.drawing);
    return report(w.verdict, {{"vertices", g.vertex_count()},
                              {"edge_instances", g.edge_instance_count()},
                              {"epsilon", to_string(w.epsilon)},
                              {"max_crossings_per_edge", count.empty() ? 0 : *std::max_element(count.begin(), count.end())}});
  }
  ReductionOptions opt;
  opt.realization = r;
  auto inst = build_thickness_instance(arr, a.t, opt);
  auto rep = extract_frame(inst);
  json extra{{"vertices", inst.vertex_count()},    {"edge_classes", inst.edge_class_count()},
             {"edge_instances", inst.edge_instance_count()}, {"connectors", inst.connector_count()},
             {"frame_vertices", rep.vertices},     {"frame_edges", rep.edges}};
  if (inst.materialized) write_file(prefix(a, "instance.txt"), to_text(inst.graph));
  return report(rep.verdict, extra);
}

int reduce_sge_cmd(const ReduceArgs& a) {
  auto arr = parse_arrangement(read_file(a.arrangement));
  auto col = arrangement_coloring(a, arr, static_cast<int>(std::max<std::size_t>(1, arr.segment_count())));
  if (!a.realization.empty()) {
    auto r = parse_realization(read_file(a.realization));
    auto w = build_sge_witness(arr, r, col);
    write_file(prefix(a, "family.txt"), to_text(w.family.family));
    write_file(prefix(a, "family_drawing.txt"), to_text(w.drawing, w.family.family.names()));
    return report(w.verdict, {{"graphs", w.family.family.graph_count()},
                              {"sunflower", to_string(verify_sunflower(w.family.family))}});
  }
  auto s = build_sge_instance(arr, col);
  write_file(prefix(a, "family.txt"), to_text(s.family));
  auto kind = verify_sunflower(s.family);
  Verdict v;
  if (kind != SunflowerKind::empty_sunflower) v.reject("not_empty_sunflower", {}, to_string(kind));
  return report(v, {{"graphs", s.family.graph_count()}, {"sunflower", to_string(kind)}});
}

// ---- pipeline ---------------------------------------------------------------

struct PipelineArgs {
  std::string program, out_dir;
  int t = 30;
};

int pipeline_cmd(const PipelineArgs& a) {
  auto r = pipeline(parse_rgnf(read_file(a.program)), a.t);
  auto rep = extract_frame(r.instance);
  if (!a.out_dir.empty()) {
    write_file(a.out_dir + "/arrangement.txt", to_text(r.arrangement));
    if (r.instance.materialized) write_file(a.out_dir + "/instance.txt", to_text(r.instance.graph));
  }
  json stages = json::array();
  for (const auto& s : r.stages) stages.push_back({{"stage", s.name}, {"note", s.note}});
  std::string text;
  for (const auto& s : r.stages) text += s.name + ": " + s.note + "\n";
  json extra{{"stitched_colors", r.stitched_colors},
             {"uniform_colors", r.uniform_colors},
             {"max_intersection_degree", r.max_intersection_degree},
             {"segments", r.arrangement.segment_count()},
             {"vertices", r.instance.vertex_count()},
             {"edge_instances", r.instance.edge_instance_count()},
             {"frame_vertices", rep.vertices},
             {"frame_edges", rep.edges}};
  if (globals.format == "text") std::cout << text;
  extra["stages"] = stages;
  if (globals.format == "text") extra.erase("stages");
  return report(rep.verdict, extra);
}

// ---- rgnf -------------------------------------------------------------------

struct RgnfArgs {
  std::string program, x;
};

int rgnf_eval_cmd(const RgnfArgs& a) {
  auto p = parse_rgnf(read_file(a.program));
  auto e = evaluate(p, parse_inputs(a.x, p.inputs));
  json values = json::object();
  std::string text;
  for (std::size_t i = 0; i < e.values.v.size(); ++i) {
    std::string name = "V" + std::to_string(i + 1);
    std::string val = e.values.v[i] ? to_string(*e.values.v[i]) : "undefined";
    values[name] = val;
    text += name + " = " + val + "\n";
  }
  if (globals.format == "text") std::cout << text;
  return report(e.verdict, globals.format == "json" ? json{{"values", values}} : json::object());
}

int rgnf_validate_cmd(const RgnfArgs& a) { return report(validate(parse_rgnf(read_file(a.program)))); }

// ---- solve ------------------------------------------------------------------

struct SolveArgs {
  std::string instance, drawing, start, out_prefix;
  int t = 2;
  long grid = 32;
  std::uint64_t seed = 1, iterations = 200'000;
  std::size_t restarts = 8;
  double seconds = 10;
};

int solve_cmd(const SolveArgs& a) {
  auto g = parse_instance(read_file(a.instance));
  if (!a.drawing.empty()) {
    auto d = parse_drawing(read_file(a.drawing), g);
    auto r = decompose_drawing(g, d);
    json j{{"exact", r.exact}, {"colors", r.colors}, {"clique_lower_bound", r.clique_lower_bound},
           {"dsatur_upper_bound", r.dsatur_upper_bound}};
    print(j, "layers " + std::to_string(r.colors) + (r.exact ? "" : " (upper bound)") + "\nclique_lower_bound " +
                 std::to_string(r.clique_lower_bound) + "\ndsatur_upper_bound " + std::to_string(r.dsatur_upper_bound) + "\n");
    if (!a.out_prefix.empty()) write_file(a.out_prefix + ".coloring", to_text(r.coloring));
    return r.exact ? accept : resource;
  }
  auto lb = lower_bound_report(g);
  json bounds{{"density", lb.density}, {"multiplicity", lb.multiplicity}, {"planarity", lb.planarity}, {"lower_bound", lb.value()}};
  if (lb.value() > a.t) {
    print(json{{"answer", "no"}, {"bounds", bounds}}, "no: lower bound " + std::to_string(lb.value()) + " > t\n");
    return reject;
  }
  SearchBudget b;
  b.grid = a.grid, b.seed = a.seed, b.iterations = a.iterations, b.restarts = a.restarts, b.seconds = a.seconds;
  b.threads = globals.threads;
  if (!a.start.empty()) b.start = parse_drawing(read_file(a.start), g);
  auto r = search_upper_bound(g, a.t, b);
  json stats{{"iterations", r.stats.iterations}, {"restarts", r.stats.restarts}, {"best_energy", r.stats.best_energy},
             {"seconds", r.stats.seconds}};
  if (!r.found()) {
    print(json{{"answer", "unknown"}, {"bounds", bounds}, {"stats", stats}},
          "unknown (best energy " + std::to_string(r.stats.best_energy) + ")\n");
    return resource;
  }
  if (!a.out_prefix.empty()) {
    write_file(a.out_prefix + ".drawing", to_text(*r.drawing, g.names()));
    write_file(a.out_prefix + ".coloring", to_text(*r.coloring));
  }
  print(json{{"answer", "yes"}, {"bounds", bounds}, {"stats", stats}}, "yes: certificate accepted at t=" + std::to_string(a.t) + "\n");
  return accept;
}

// ---- render / roundtrip -----------------------------------------------------

struct RenderArgs {
  std::string instance, drawing, coloring, realization, colors, out;
  double scale = 0, stroke = 1.5;
  bool labels = false;
  std::vector<std::string> hide;
};

int render_cmd(const RenderArgs& a) {
  RenderSpec spec;
  spec.scale = a.scale, spec.stroke = a.stroke, spec.labels = a.labels;
  for (const auto& h : a.hide) {
    auto role = parse_role(h);
    if (!role) throw InputError("unknown role '" + h + "'");
    spec.hidden_roles.insert(*role);
  }
  std::string svg;
  if (!a.realization.empty()) {
    auto r = parse_realization(read_file(a.realization));
    std::optional<VertexColoring> c;
    if (!a.colors.empty()) c = parse_colors(a.colors, r.segments.size());
    svg = render_svg(r, c, spec);
  } else {
    if (a.instance.empty() || a.drawing.empty()) throw InputError("render needs --realization or --instance with --drawing");
    auto g = parse_instance(read_file(a.instance));
    auto d = parse_drawing(read_file(a.drawing), g);
    std::optional<EdgeColoring> c;
    if (!a.coloring.empty()) c = parse_coloring(read_file(a.coloring), g);
    svg = render_svg(g, d, c, spec);
  }
  write_or_print(a.out, svg);
  return accept;
}

struct RoundtripArgs {
  std::string in, out;
  bool check = false;
};

int roundtrip_cmd(const RoundtripArgs& a) {
  auto text = read_file(a.in);
  auto canon = canonicalize(text);
  write_or_print(a.out, canon);
  return a.check && canon != text ? reject : accept;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"gthick: geometric thickness certificates, reductions and search"};
  app.require_subcommand(1);
  app.add_option("--format", globals.format, "verdict output format")->check(CLI::IsMember({"json", "text"}));
  app.add_option("--threads", globals.threads, "parallelism cap")->check(CLI::PositiveNumber);
  std::function<int()> run;

  auto* verify = app.add_subcommand("verify", "check a certificate");
  verify->require_subcommand(1);
  VerifyArgs va;
  auto* vt = verify->add_subcommand("thickness", "drawing + edge coloring at t");
  vt->add_option("--instance", va.instance)->required();
  vt->add_option("--drawing", va.drawing)->required();
  vt->add_option("--coloring", va.coloring)->required();
  vt->add_option("--t", va.t)->required();
  vt->add_option("--out", va.out, "write the JSON verdict here");
  vt->callback([&] { run = [&] { return verify_thickness_cmd(va); }; });
  auto* vs = verify->add_subcommand("sge", "simultaneous geometric embedding of a family");
  vs->add_option("--family", va.family)->required();
  vs->add_option("--drawing", va.drawing)->required();
  vs->add_option("--out", va.out);
  vs->callback([&] { run = [&] { return verify_sge_cmd(va); }; });
  auto* vf = verify->add_subcommand("sunflower", "empty-sunflower check of a family");
  vf->add_option("--family", va.family)->required();
  vf->callback([&] { run = [&] { return verify_sunflower_cmd(va); }; });

  auto* reduce = app.add_subcommand("reduce", "arrangement -> thickness instance or SGE family");
  reduce->require_subcommand(1);
  ReduceArgs ra;
  for (auto* sub : {reduce->add_subcommand("thickness"), reduce->add_subcommand("sge")}) {
    sub->add_option("--arrangement", ra.arrangement)->required();
    sub->add_option("--realization", ra.realization);
    sub->add_option("--colors", ra.colors, "comma-separated segment colors (default: exact minimum)");
    sub->add_option("--out-dir", ra.out_dir);
    if (sub->get_name() == "thickness") {
      sub->add_option("--t", ra.t)->required();
      sub->add_flag("--emit-witness", ra.emit_witness);
      sub->callback([&] { run = [&] { return reduce_thickness_cmd(ra); }; });
    } else {
      sub->callback([&] { run = [&] { return reduce_sge_cmd(ra); }; });
    }
  }

  PipelineArgs pa;
  auto* pipe = app.add_subcommand("pipeline", "RG-NF program -> thickness instance");
  pipe->add_option("--program", pa.program)->required();
  pipe->add_option("--t", pa.t)->required();
  pipe->add_option("--out-dir", pa.out_dir);
  pipe->callback([&] { run = [&] { return pipeline_cmd(pa); }; });

  RgnfArgs ga;
  auto* rgnf = app.add_subcommand("rgnf", "RG-NF programs");
  rgnf->require_subcommand(1);
  auto* ev = rgnf->add_subcommand("eval");
  ev->add_option("--program", ga.program)->required();
  ev->add_option("--x", ga.x, "inputs, e.g. X1=2,X2=3");
  ev->callback([&] { run = [&] { return rgnf_eval_cmd(ga); }; });
  auto* vl = rgnf->add_subcommand("validate");
  vl->add_option("--program", ga.program)->required();
  vl->callback([&] { run = [&] { return rgnf_validate_cmd(ga); }; });

  SolveArgs sa;
  auto* solve = app.add_subcommand("solve", "search for a certificate, or decompose a fixed drawing");
  solve->add_option("--instance", sa.instance)->required();
  solve->add_option("--t", sa.t);
  solve->add_option("--grid", sa.grid);
  solve->add_option("--seed", sa.seed);
  solve->add_option("--iterations", sa.iterations);
  solve->add_option("--restarts", sa.restarts);
  solve->add_option("--seconds", sa.seconds);
  solve->add_option("--start", sa.start, "drawing to seed the search with");
  solve->add_option("--drawing", sa.drawing, "decompose this fixed drawing instead of searching");
  solve->add_option("--out-prefix", sa.out_prefix, "write <prefix>.drawing and <prefix>.coloring");
  solve->callback([&] { run = [&] { return solve_cmd(sa); }; });

  RenderArgs rd;
  auto* render = app.add_subcommand("render", "SVG export");
  render->add_option("--instance", rd.instance);
  render->add_option("--drawing", rd.drawing);
  render->add_option("--coloring", rd.coloring);
  render->add_option("--realization", rd.realization);
  render->add_option("--colors", rd.colors);
  render->add_option("--scale", rd.scale);
  render->add_option("--stroke", rd.stroke);
  render->add_flag("--labels", rd.labels);
  render->add_option("--hide", rd.hide, "edge roles to leave out")->delimiter(',');
  render->add_option("--out", rd.out);
  render->callback([&] { run = [&] { return render_cmd(rd); }; });

  RoundtripArgs rt;
  auto* round = app.add_subcommand("roundtrip", "parse and re-serialize any file format");
  round->add_option("file", rt.in)->required();
  round->add_option("--out", rt.out);
  round->add_flag("--check", rt.check, "exit 1 unless the input is already canonical");
  round->callback([&] { run = [&] { return roundtrip_cmd(rt); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? accept : input_error;
  }
  try {
    return run();
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return input_error;
  } catch (const ResourceError& e) {
    std::cerr << "resource limit: " << e.what() << "\n";
    return resource;
  } catch (const std::invalid_argument& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return input_error;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return resource;
  }
}
