// Text file formats for instances, drawings, colorings, arrangements,
// realizations and graph families.
//
// Every file starts with a header line `gthick <kind>`; `#` starts a comment
// that runs to the end of the line. Comments and blank lines are dropped on
// parse, so serializing a parsed file yields its canonical form.
//
//   gthick instance        vertex <name> | edge <u> <v> <multiplicity> <role>
//   gthick drawing         at <vertex> <x> <y>
//   gthick coloring        color <edge-id> <copy> <color>
//   gthick arrangement     seg <name>: (<other>, <+1|-1>) ...
//   gthick realization     segment <name> <x1> <y1> <x2> <y2>
//   gthick family          vertex <name> | graphs <k> | edge <graph> <u> <v>
//
// Names are whitespace-free and avoid #; arrangement names also avoid ( ) , and :.
// Coordinates are exact rationals written p or p/q.
#ifndef GTHICK_IO_HPP
#define GTHICK_IO_HPP

#include "gthick/arrangement.hpp"
#include "gthick/certificate.hpp"
#include "gthick/graph.hpp"
#include "gthick/rgnf.hpp"
#include "gthick/verdict.hpp"

#include <nlohmann/json.hpp>

#include <cctype>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace gthick {

enum class FileKind { instance, drawing, coloring, arrangement, realization, family, program };

inline const char* to_string(FileKind k) {
  switch (k) {
    case FileKind::instance: return "instance";
    case FileKind::drawing: return "drawing";
    case FileKind::coloring: return "coloring";
    case FileKind::arrangement: return "arrangement";
    case FileKind::realization: return "realization";
    case FileKind::family: return "family";
    case FileKind::program: return "program";
  }
  return "?";
}

namespace detail {

struct Token {
  std::string text;
  std::size_t col = 0;  // 1-based
};

struct Line {
  std::size_t no = 0;
  std::vector<Token> tokens;
};

[[noreturn]] inline void parse_fail(std::size_t line, std::size_t col, const std::string& msg) {
  throw InputError("line " + std::to_string(line) + ", column " + std::to_string(col) + ": " + msg);
}

/// Splits into non-empty lines of tokens; `punct` characters act as blanks.
inline std::vector<Line> lex(const std::string& text, const std::string& punct = {}) {
  std::vector<Line> out;
  std::istringstream in(text);
  std::string raw;
  std::size_t no = 0;
  while (std::getline(in, raw)) {
    ++no;
    if (auto h = raw.find('#'); h != std::string::npos) raw.erase(h);
    Line l{no, {}};
    std::size_t i = 0;
    auto blank = [&](char c) { return std::isspace(static_cast<unsigned char>(c)) || punct.find(c) != std::string::npos; };
    while (i < raw.size()) {
      while (i < raw.size() && blank(raw[i])) ++i;
      std::size_t s = i;
      while (i < raw.size() && !blank(raw[i])) ++i;
      if (i > s) l.tokens.push_back({raw.substr(s, i - s), s + 1});
    }
    if (!l.tokens.empty()) out.push_back(std::move(l));
  }
  return out;
}

inline void expect_arity(const Line& l, std::size_t n) {
  if (l.tokens.size() != n)
    parse_fail(l.no, l.tokens.back().col, l.tokens[0].text + " expects " + std::to_string(n - 1) + " fields, got " +
                                              std::to_string(l.tokens.size() - 1));
}

inline Rational rational_at(const Line& l, std::size_t i) {
  try {
    return parse_rational(l.tokens[i].text);
  } catch (const std::invalid_argument& e) {
    parse_fail(l.no, l.tokens[i].col, e.what());
  }
}

inline long integer_at(const Line& l, std::size_t i) {
  const auto& t = l.tokens[i].text;
  std::size_t used = 0;
  long v = 0;
  try {
    v = std::stol(t, &used);
  } catch (...) {
    used = 0;
  }
  if (used != t.size() || t.empty()) parse_fail(l.no, l.tokens[i].col, "expected an integer, got '" + t + "'");
  return v;
}

inline std::vector<Line> body(const std::string& text, FileKind kind, const std::string& punct = {}) {
  auto lines = lex(text, punct);
  if (lines.empty()) throw InputError("line 1, column 1: empty file");
  const auto& h = lines.front();
  if (h.tokens.size() != 2 || h.tokens[0].text != "gthick" || h.tokens[1].text != to_string(kind))
    parse_fail(h.no, h.tokens[0].col, std::string("expected header 'gthick ") + to_string(kind) + "'");
  lines.erase(lines.begin());
  return lines;
}

inline const std::string& checked_name(const std::string& s, const std::string& extra = {}) {
  if (s.empty() || s.find_first_of(" \t\r\n#" + extra) != std::string::npos)
    throw InputError("name '" + s + "' cannot be written to a text file");
  return s;
}

}  // namespace detail

// ---- instance ---------------------------------------------------------------

inline Multigraph parse_instance(const std::string& text) {
  Multigraph g;
  for (const auto& l : detail::body(text, FileKind::instance)) {
    const auto& key = l.tokens[0].text;
    if (key == "vertex") {
      detail::expect_arity(l, 2);
      if (g.find(l.tokens[1].text)) detail::parse_fail(l.no, l.tokens[1].col, "duplicate vertex '" + l.tokens[1].text + "'");
      g.add_vertex(l.tokens[1].text);
    } else if (key == "edge") {
      detail::expect_arity(l, 5);
      VertexId ends[2];
      for (int i = 0; i < 2; ++i) {
        auto v = g.find(l.tokens[1 + i].text);
        if (!v) detail::parse_fail(l.no, l.tokens[1 + i].col, "unknown vertex '" + l.tokens[1 + i].text + "'");
        ends[i] = *v;
      }
      long m = detail::integer_at(l, 3);
      if (m < 1) detail::parse_fail(l.no, l.tokens[3].col, "multiplicity must be >= 1");
      auto role = parse_role(l.tokens[4].text);
      if (!role) detail::parse_fail(l.no, l.tokens[4].col, "unknown role '" + l.tokens[4].text + "'");
      if (ends[0] == ends[1]) detail::parse_fail(l.no, l.tokens[2].col, "self-loop");
      g.add_edge(ends[0], ends[1], static_cast<int>(m), *role);
    } else {
      detail::parse_fail(l.no, l.tokens[0].col, "unknown key '" + key + "'");
    }
  }
  return g;
}

inline std::string to_text(const Multigraph& g) {
  std::ostringstream out;
  out << "gthick instance\n";
  for (const auto& n : g.names()) out << "vertex " << detail::checked_name(n) << "\n";
  for (const auto& e : g.edges())
    out << "edge " << g.name(e.u) << " " << g.name(e.v) << " " << e.multiplicity << " " << to_string(e.role) << "\n";
  return out.str();
}

// ---- drawing ----------------------------------------------------------------

/// Vertex names resolve against `g`; every vertex must be placed exactly once.
inline Drawing parse_drawing(const std::string& text, const Multigraph& g) {
  Drawing d(g.vertex_count());
  for (const auto& l : detail::body(text, FileKind::drawing)) {
    if (l.tokens[0].text != "at") detail::parse_fail(l.no, l.tokens[0].col, "unknown key '" + l.tokens[0].text + "'");
    detail::expect_arity(l, 4);
    auto v = g.find(l.tokens[1].text);
    if (!v) detail::parse_fail(l.no, l.tokens[1].col, "unknown vertex '" + l.tokens[1].text + "'");
    if (d.has(*v)) detail::parse_fail(l.no, l.tokens[1].col, "vertex '" + l.tokens[1].text + "' placed twice");
    d.set(*v, Point{detail::rational_at(l, 2), detail::rational_at(l, 3)});
  }
  for (VertexId v = 0; v < g.vertex_count(); ++v)
    if (!d.has(v)) throw InputError("drawing does not place vertex '" + g.name(v) + "'");
  return d;
}

inline std::string to_text(const Drawing& d, const std::vector<std::string>& names) {
  std::ostringstream out;
  out << "gthick drawing\n";
  for (VertexId v = 0; v < names.size(); ++v)
    if (d.has(v)) out << "at " << names[v] << " " << to_string(d.at(v).x) << " " << to_string(d.at(v).y) << "\n";
  return out.str();
}

// ---- coloring ---------------------------------------------------------------

inline EdgeColoring parse_coloring(const std::string& text, const Multigraph& g) {
  EdgeColoring c;
  c.colors.resize(g.edge_class_count());
  for (EdgeId e = 0; e < g.edge_class_count(); ++e) c.colors[e].assign(static_cast<std::size_t>(g.edge(e).multiplicity), 0);
  for (const auto& l : detail::body(text, FileKind::coloring)) {
    if (l.tokens[0].text != "color") detail::parse_fail(l.no, l.tokens[0].col, "unknown key '" + l.tokens[0].text + "'");
    detail::expect_arity(l, 4);
    long e = detail::integer_at(l, 1), k = detail::integer_at(l, 2), col = detail::integer_at(l, 3);
    if (e < 0 || static_cast<std::size_t>(e) >= g.edge_class_count())
      detail::parse_fail(l.no, l.tokens[1].col, "no edge class " + l.tokens[1].text);
    auto& row = c.colors[static_cast<std::size_t>(e)];
    if (k < 0 || static_cast<std::size_t>(k) >= row.size())
      detail::parse_fail(l.no, l.tokens[2].col, "edge " + l.tokens[1].text + " has no copy " + l.tokens[2].text);
    if (col < 1) detail::parse_fail(l.no, l.tokens[3].col, "colors are 1-based");
    if (row[static_cast<std::size_t>(k)] != 0) detail::parse_fail(l.no, l.tokens[1].col, "copy colored twice");
    row[static_cast<std::size_t>(k)] = static_cast<int>(col);
  }
  for (EdgeId e = 0; e < c.colors.size(); ++e)
    for (std::size_t k = 0; k < c.colors[e].size(); ++k)
      if (c.colors[e][k] == 0)
        throw InputError("coloring misses edge " + std::to_string(e) + " copy " + std::to_string(k));
  return c;
}

inline std::string to_text(const EdgeColoring& c) {
  std::ostringstream out;
  out << "gthick coloring\n";
  for (EdgeId e = 0; e < c.colors.size(); ++e)
    for (std::size_t k = 0; k < c.colors[e].size(); ++k) out << "color " << e << " " << k << " " << c.colors[e][k] << "\n";
  return out.str();
}

// ---- arrangement ------------------------------------------------------------

inline PseudoSegmentArrangement parse_arrangement(const std::string& text) {
  PseudoSegmentArrangement a;
  auto lines = detail::body(text, FileKind::arrangement, "(),:");
  for (const auto& l : lines) {
    if (l.tokens[0].text != "seg") detail::parse_fail(l.no, l.tokens[0].col, "unknown key '" + l.tokens[0].text + "'");
    if (l.tokens.size() < 2) detail::parse_fail(l.no, l.tokens[0].col, "seg needs a name");
    if (a.find(l.tokens[1].text)) detail::parse_fail(l.no, l.tokens[1].col, "duplicate segment '" + l.tokens[1].text + "'");
    a.add_segment(l.tokens[1].text);
  }
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const auto& l = lines[i];
    if ((l.tokens.size() - 2) % 2 != 0) detail::parse_fail(l.no, l.tokens.back().col, "crossings come as (other, sign) pairs");
    for (std::size_t k = 2; k < l.tokens.size(); k += 2) {
      auto o = a.find(l.tokens[k].text);
      if (!o) detail::parse_fail(l.no, l.tokens[k].col, "unknown segment '" + l.tokens[k].text + "'");
      const auto& s = l.tokens[k + 1].text;
      int sign = s == "+1" || s == "+" || s == "1" ? 1 : s == "-1" || s == "-" ? -1 : 0;
      if (sign == 0) detail::parse_fail(l.no, l.tokens[k + 1].col, "sign must be +1 or -1");
      a.crossings[i].push_back({*o, sign});
    }
  }
  auto v = validate(a);
  if (!v.accepted()) throw InputError("invalid arrangement: " + v.summary());
  return a;
}

inline std::string to_text(const PseudoSegmentArrangement& a) {
  std::ostringstream out;
  out << "gthick arrangement\n";
  for (SegmentId s = 0; s < a.segment_count(); ++s) {
    out << "seg " << detail::checked_name(a.names[s], "(),:") << ":";
    for (const auto& c : a.crossings[s]) out << " (" << a.names[c.other] << ", " << (c.sign > 0 ? "+1" : "-1") << ")";
    out << "\n";
  }
  return out.str();
}

// ---- realization ------------------------------------------------------------

inline SegmentRealization parse_realization(const std::string& text) {
  SegmentRealization r;
  std::set<std::string> seen;
  for (const auto& l : detail::body(text, FileKind::realization)) {
    if (l.tokens[0].text != "segment") detail::parse_fail(l.no, l.tokens[0].col, "unknown key '" + l.tokens[0].text + "'");
    detail::expect_arity(l, 6);
    if (!seen.insert(l.tokens[1].text).second) detail::parse_fail(l.no, l.tokens[1].col, "duplicate segment");
    Segment s{{detail::rational_at(l, 2), detail::rational_at(l, 3)}, {detail::rational_at(l, 4), detail::rational_at(l, 5)}};
    if (s.a == s.b) detail::parse_fail(l.no, l.tokens[2].col, "degenerate segment");
    r.names.push_back(l.tokens[1].text);
    r.segments.push_back(s);
  }
  return r;
}

inline std::string to_text(const SegmentRealization& r) {
  std::ostringstream out;
  out << "gthick realization\n";
  for (std::size_t i = 0; i < r.segments.size(); ++i) {
    const auto& s = r.segments[i];
    out << "segment " << detail::checked_name(r.names[i]) << " " << to_string(s.a.x) << " " << to_string(s.a.y) << " "
        << to_string(s.b.x) << " " << to_string(s.b.y) << "\n";
  }
  return out.str();
}

// ---- family -----------------------------------------------------------------

inline GraphFamily parse_family(const std::string& text) {
  GraphFamily f;
  std::map<std::string, VertexId> index;
  bool sized = false;
  for (const auto& l : detail::body(text, FileKind::family)) {
    const auto& key = l.tokens[0].text;
    if (key == "vertex") {
      detail::expect_arity(l, 2);
      if (!index.emplace(l.tokens[1].text, f.vertex_count()).second)
        detail::parse_fail(l.no, l.tokens[1].col, "duplicate vertex");
      f.add_vertex(l.tokens[1].text);
    } else if (key == "graphs") {
      detail::expect_arity(l, 2);
      if (sized) detail::parse_fail(l.no, l.tokens[0].col, "graphs given twice");
      long k = detail::integer_at(l, 1);
      if (k < 0) detail::parse_fail(l.no, l.tokens[1].col, "negative graph count");
      for (long i = 0; i < k; ++i) f.add_graph();
      sized = true;
    } else if (key == "edge") {
      detail::expect_arity(l, 4);
      long gi = detail::integer_at(l, 1);
      if (gi < 0 || static_cast<std::size_t>(gi) >= f.graph_count()) detail::parse_fail(l.no, l.tokens[1].col, "no graph " + l.tokens[1].text);
      VertexId ends[2];
      for (int i = 0; i < 2; ++i) {
        auto it = index.find(l.tokens[2 + i].text);
        if (it == index.end()) detail::parse_fail(l.no, l.tokens[2 + i].col, "unknown vertex '" + l.tokens[2 + i].text + "'");
        ends[i] = it->second;
      }
      try {
        f.add_edge(static_cast<std::size_t>(gi), ends[0], ends[1]);
      } catch (const InputError& e) {
        detail::parse_fail(l.no, l.tokens[2].col, e.what());
      }
    } else {
      detail::parse_fail(l.no, l.tokens[0].col, "unknown key '" + key + "'");
    }
  }
  return f;
}

inline std::string to_text(const GraphFamily& f) {
  std::ostringstream out;
  out << "gthick family\n";
  for (const auto& n : f.names()) out << "vertex " << detail::checked_name(n) << "\n";
  out << "graphs " << f.graph_count() << "\n";
  for (std::size_t i = 0; i < f.graph_count(); ++i)
    for (auto [u, v] : f.graph(i)) out << "edge " << i << " " << f.names()[u] << " " << f.names()[v] << "\n";
  return out.str();
}

// ---- dispatch ---------------------------------------------------------------

/// Files without a `gthick` header are read as RG-NF programs.
inline FileKind detect_kind(const std::string& text) {
  auto lines = detail::lex(text);
  if (lines.empty() || lines[0].tokens[0].text != "gthick") return FileKind::program;
  const auto& h = lines[0];
  if (h.tokens.size() != 2) detail::parse_fail(h.no, h.tokens[0].col, "header is 'gthick <kind>'");
  for (FileKind k : {FileKind::instance, FileKind::drawing, FileKind::coloring, FileKind::arrangement, FileKind::realization,
                     FileKind::family})
    if (h.tokens[1].text == to_string(k)) return k;
  detail::parse_fail(h.no, h.tokens[1].col, "unknown file kind '" + h.tokens[1].text + "'");
}

/// Parse then serialize. Drawings and colorings are checked for syntax only,
/// since they need an instance to resolve against.
inline std::string canonicalize(const std::string& text) {
  switch (detect_kind(text)) {
    case FileKind::instance: return to_text(parse_instance(text));
    case FileKind::arrangement: return to_text(parse_arrangement(text));
    case FileKind::realization: return to_text(parse_realization(text));
    case FileKind::family: return to_text(parse_family(text));
    case FileKind::program: return to_text(parse_rgnf(text));
    case FileKind::drawing: {
      std::ostringstream out;
      out << "gthick drawing\n";
      std::set<std::string> seen;
      for (const auto& l : detail::body(text, FileKind::drawing)) {
        if (l.tokens[0].text != "at") detail::parse_fail(l.no, l.tokens[0].col, "unknown key '" + l.tokens[0].text + "'");
        detail::expect_arity(l, 4);
        if (!seen.insert(l.tokens[1].text).second) detail::parse_fail(l.no, l.tokens[1].col, "vertex placed twice");
        out << "at " << l.tokens[1].text << " " << to_string(detail::rational_at(l, 2)) << " "
            << to_string(detail::rational_at(l, 3)) << "\n";
      }
      return out.str();
    }
    case FileKind::coloring: {
      std::map<std::pair<long, long>, long> c;
      for (const auto& l : detail::body(text, FileKind::coloring)) {
        if (l.tokens[0].text != "color") detail::parse_fail(l.no, l.tokens[0].col, "unknown key '" + l.tokens[0].text + "'");
        detail::expect_arity(l, 4);
        long e = detail::integer_at(l, 1), k = detail::integer_at(l, 2), col = detail::integer_at(l, 3);
        if (e < 0 || k < 0 || col < 1) detail::parse_fail(l.no, l.tokens[1].col, "negative index or color < 1");
        if (!c.emplace(std::make_pair(e, k), col).second) detail::parse_fail(l.no, l.tokens[1].col, "copy colored twice");
      }
      std::ostringstream out;
      out << "gthick coloring\n";
      for (auto [ek, col] : c) out << "color " << ek.first << " " << ek.second << " " << col << "\n";
      return out.str();
    }
  }
  return {};
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

inline void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ResourceError("cannot write '" + path + "'");
  out << text;
}

// ---- verdicts ---------------------------------------------------------------

inline nlohmann::json to_json(const Verdict& v) {
  nlohmann::json j;
  j["accepted"] = v.accepted();
  j["violations"] = nlohmann::json::array();
  for (const auto& x : v.violations) {
    nlohmann::json o{{"kind", x.kind}, {"ids", x.ids}, {"detail", x.detail}};
    if (x.witness) o["witness"] = {to_string(x.witness->x), to_string(x.witness->y)};
    j["violations"].push_back(o);
  }
  j["warnings"] = v.warnings;
  return j;
}

inline std::string to_text(const Verdict& v) {
  std::ostringstream out;
  out << (v.accepted() ? "ACCEPT" : "REJECT") << "\n";
  for (const auto& x : v.violations) {
    out << "violation " << x.kind;
    for (const auto& id : x.ids) out << " " << id;
    if (x.witness) out << " at (" << to_string(x.witness->x) << ", " << to_string(x.witness->y) << ")";
    if (!x.detail.empty()) out << ": " << x.detail;
    out << "\n";
  }
  for (const auto& w : v.warnings) out << "warning " << w << "\n";
  return out.str();
}

}  // namespace gthick

#endif
