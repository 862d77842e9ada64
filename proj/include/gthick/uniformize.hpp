// Removal of concurrent crossings by segment replacement.
//
// Supported pattern: a point shared by exactly three segments, one of which is
// designated as the transversal passing through the crossing of the other two.
// A transversal with one such point becomes two crossing segments u.1, u.2
// that pass around the point; a transversal with two or more such points
// becomes four segments: two parallel rails u.1 (left) and u.4 (right) tied
// together by u.2 before the first and u.3 after the last point.
//
// The combinatorics are derived locally: every crossing point is modelled as a
// small exact-rational window in which the pieces of the member segments are
// straight, and the per-segment crossing orders are spliced from the windows.
// The result is re-validated before it is returned.
#ifndef GTHICK_UNIFORMIZE_HPP
#define GTHICK_UNIFORMIZE_HPP

#include "gthick/arrangement.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace gthick {

struct UniformizeResult {
  PseudoSegmentArrangement arrangement;
  VertexColoring coloring;
  std::vector<SegmentId> origin;  // output segment -> input segment
  std::vector<int> piece;         // 0 for untouched segments, else 1..4
  std::size_t replaced_by_two = 0;
  std::size_t replaced_by_four = 0;
};

namespace detail {

struct WindowPiece {
  SegmentId out = 0;
  Segment geom;
};

struct WindowHit {
  Rational param;
  SegmentId other;
  int sign;
};

inline std::vector<Point> slot_directions(std::size_t k) {
  if (k == 2) return {make_point(1, 0), make_point(0, 1), make_point(-1, 0), make_point(0, -1)};
  return {make_point(1, 0), make_point(1, 2), make_point(-1, 2), make_point(-1, 0), make_point(-1, -2), make_point(1, -2)};
}

class Uniformizer {
 public:
  Uniformizer(const RawArrangement& raw, const VertexColoring& colors) : raw_(raw), colors_(colors) {}

  UniformizeResult run() {
    check_input();
    plan_pieces();
    for (std::size_t pid = 0; pid < raw_.points.size(); ++pid) process_window(pid);
    assemble();
    return std::move(result_);
  }

 private:
  static constexpr long kReach = 16;

  void check_input() {
    auto v = validate(raw_);
    if (!v.accepted()) throw InputError("raw arrangement invalid: " + v.summary());
    if (colors_.size() != raw_.segment_count() || !is_proper(intersection_graph(raw_), colors_))
      throw InputError("coloring is not a proper coloring of the raw arrangement");
    palette_ = color_count(colors_);
    transversal_at_.assign(raw_.segment_count(), {});
    for (std::size_t pid = 0; pid < raw_.points.size(); ++pid) {
      const auto& p = raw_.points[pid];
      if (p.multiplicity() == 2) continue;
      if (p.multiplicity() != 3 || !p.transversal)
        throw InputError("unsupported concurrency at point p" + std::to_string(pid) + " (" +
                         std::to_string(p.multiplicity()) + " segments" +
                         (p.transversal ? "" : ", no transversal") + ")");
      SegmentId u = *p.transversal;
      const auto& ord = raw_.order[u];
      transversal_at_[u].push_back(static_cast<std::size_t>(std::find(ord.begin(), ord.end(), pid) - ord.begin()));
    }
    for (auto& t : transversal_at_) std::sort(t.begin(), t.end());
  }

  void plan_pieces() {
    auto& out = result_.arrangement;
    pieces_.assign(raw_.segment_count(), {});
    for (SegmentId u = 0; u < raw_.segment_count(); ++u) {
      std::size_t k = transversal_at_[u].size();
      int count = k == 0 ? 1 : (k == 1 ? 2 : 4);
      if (k == 1) ++result_.replaced_by_two;
      if (k >= 2) ++result_.replaced_by_four;
      static constexpr std::array<int, 4> copy_of{1, 2, 3, 1};
      for (int j = 1; j <= count; ++j) {
        std::string name = count == 1 ? raw_.names[u] : raw_.names[u] + "." + std::to_string(j);
        pieces_[u].push_back(out.add_segment(name));
        result_.origin.push_back(u);
        result_.piece.push_back(count == 1 ? 0 : j);
        int copy = count == 4 ? copy_of[static_cast<std::size_t>(j - 1)] : j;
        result_.coloring.push_back((copy - 1) * palette_ + colors_[u]);
      }
    }
  }

  static Point at(const Point& d, const Rational& along, const Point& n, const Rational& off) {
    return Point{d.x * along + n.x * off, d.y * along + n.y * off};
  }

  // Lines (or gadget pieces) representing member m of the point at position pos.
  void add_member_pieces(std::vector<WindowPiece>& w, SegmentId m, std::size_t pos, const Point& d,
                         const Rational& eps) {
    const auto& t = transversal_at_[m];
    const auto& ids = pieces_[m];
    Point n{-d.y, d.x};
    auto line = [&](SegmentId out, const Rational& off) {
      w.push_back({out, {at(d, Rational(-kReach), n, off), at(d, Rational(kReach), n, off)}});
    };
    if (t.empty()) return line(ids[0], 0);
    if (t.size() == 1) {
      if (pos < t[0]) return line(ids[0], 0);
      if (pos > t[0]) return line(ids[1], 0);
      // two crossing segments forming a roof over the point
      w.push_back({ids[0], {at(d, Rational(-kReach), n, 0), at(d, Rational(1, 2), n, Rational(1, 2))}});
      w.push_back({ids[1], {at(d, Rational(-1, 2), n, Rational(1, 2)), at(d, Rational(kReach), n, 0)}});
      return;
    }
    const std::size_t first = t.front(), last = t.back();
    if (pos < first) return line(ids[0], 0);
    if (pos > last) return line(ids[3], 0);
    const Rational rail = eps;
    if (pos == first) {
      line(ids[0], rail);
      w.push_back({ids[3], {at(d, Rational(-2), n, -rail), at(d, Rational(kReach), n, -rail)}});
      w.push_back({ids[1], {at(d, Rational(-3, 2), n, -4 * rail), at(d, Rational(-3, 2), n, 4 * rail)}});
      return;
    }
    if (pos == last) {
      w.push_back({ids[0], {at(d, Rational(-kReach), n, rail), at(d, Rational(2), n, rail)}});
      line(ids[3], -rail);
      w.push_back({ids[2], {at(d, Rational(3, 2), n, -4 * rail), at(d, Rational(3, 2), n, 4 * rail)}});
      return;
    }
    line(ids[0], rail);
    line(ids[3], -rail);
  }

  bool build_window(std::size_t pid, const Rational& scale, std::vector<WindowPiece>& w,
                    std::vector<std::vector<WindowHit>>& local) {
    const auto& p = raw_.points[pid];
    const std::size_t k = p.multiplicity();
    auto slots = slot_directions(k);
    // rotate so that slot 0 is the transversal (or the lowest member) going forward
    const auto members = p.members();
    SegmentId anchor = p.transversal ? *p.transversal : *std::min_element(members.begin(), members.end());
    std::size_t start = 0;
    while (!(p.ccw[start].segment == anchor && p.ccw[start].forward)) ++start;
    w.clear();
    for (std::size_t i = 0; i < 2 * k; ++i) {
      const Branch& b = p.ccw[(start + i) % (2 * k)];
      if (!b.forward) continue;
      const auto& ord = raw_.order[b.segment];
      std::size_t pos = static_cast<std::size_t>(std::find(ord.begin(), ord.end(), pid) - ord.begin());
      Rational eps = scale / Rational(static_cast<long>(8 + i));
      add_member_pieces(w, b.segment, pos, slots[i], eps);
    }
    local.assign(w.size(), {});
    std::vector<Point> points;
    for (std::size_t a = 0; a < w.size(); ++a)
      for (std::size_t b = a + 1; b < w.size(); ++b) {
        auto rel = segment_relation(w[a].geom, w[b].geom);
        if (rel.kind == RelationKind::disjoint) continue;
        if (rel.kind != RelationKind::proper_cross) return false;
        if (std::find(points.begin(), points.end(), *rel.point) != points.end()) return false;
        points.push_back(*rel.point);
        local[a].push_back({parameter_along(w[a].geom, *rel.point), w[b].out, crossing_sign(w[a].geom, w[b].geom)});
        local[b].push_back({parameter_along(w[b].geom, *rel.point), w[a].out, crossing_sign(w[b].geom, w[a].geom)});
      }
    return true;
  }

  void process_window(std::size_t pid) {
    std::vector<WindowPiece> w;
    std::vector<std::vector<WindowHit>> local;
    Rational scale(1);
    int attempt = 0;
    while (!build_window(pid, scale, w, local)) {
      if (++attempt > 8) throw std::logic_error("no general-position window for point p" + std::to_string(pid));
      scale *= Rational(3, 4);
    }
    for (std::size_t i = 0; i < w.size(); ++i) {
      auto& l = local[i];
      std::sort(l.begin(), l.end(), [](const WindowHit& x, const WindowHit& y) { return x.param < y.param; });
      window_hits_[{pid, w[i].out}] = std::move(l);
    }
  }

  void assemble() {
    auto& out = result_.arrangement;
    for (SegmentId u = 0; u < raw_.segment_count(); ++u)
      for (std::size_t pid : raw_.order[u])
        for (SegmentId s : pieces_[u]) {
          auto it = window_hits_.find({pid, s});
          if (it == window_hits_.end()) continue;
          for (const auto& h : it->second) out.crossings[s].push_back(Crossing{h.other, h.sign});
        }
    auto v = validate(out);
    if (!v.accepted()) throw std::logic_error("uniformized arrangement failed validation: " + v.summary());
    if (!is_proper(intersection_graph(out), result_.coloring))
      throw std::logic_error("lifted coloring is not proper");
  }

  const RawArrangement& raw_;
  const VertexColoring& colors_;
  int palette_ = 0;
  std::vector<std::vector<std::size_t>> transversal_at_;
  std::vector<std::vector<SegmentId>> pieces_;
  std::map<std::pair<std::size_t, SegmentId>, std::vector<WindowHit>> window_hits_;
  UniformizeResult result_;
};

}  // namespace detail

/// Replaces every transversal through concurrent points by 2 or 4 segments and
/// lifts the coloring: copy j of color c becomes (j-1)*C + c, where C is the
/// number of input colors, so the result uses at most 3C colors and untouched
/// segments keep their color.
inline UniformizeResult las_vergnas_uniformize(const RawArrangement& raw, const VertexColoring& colors) {
  return detail::Uniformizer(raw, colors).run();
}

}  // namespace gthick

#endif
