// Small-instance tools: certified lower bounds on geometric thickness, a
// grid search for thickness certificates, and optimal plane decomposition of
// a fixed drawing.
#ifndef GTHICK_SOLVER_HPP
#define GTHICK_SOLVER_HPP

#include "gthick/certificate.hpp"
#include "gthick/coloring.hpp"
#include "gthick/graph.hpp"

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/boyer_myrvold_planar_test.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <thread>
#include <vector>

namespace gthick {

// ---- lower bounds -----------------------------------------------------------

struct LowerBound {
  int density = 0;       // least k with |E| <= k(3n-k-5)
  int multiplicity = 0;  // copies of one class need distinct colors
  int planarity = 0;     // 2 when the underlying simple graph is non-planar
  int value() const { return std::max({density, multiplicity, planarity}); }
};

inline bool simple_planar(const Multigraph& g) {
  using G = boost::adjacency_list<boost::vecS, boost::vecS, boost::undirectedS, boost::property<boost::vertex_index_t, int>>;
  G h(g.vertex_count());
  std::set<std::pair<VertexId, VertexId>> seen;
  for (const auto& e : g.edges())
    if (seen.insert(std::minmax(e.u, e.v)).second) boost::add_edge(e.u, e.v, h);
  return boost::boyer_myrvold_planarity_test(h);
}

inline LowerBound lower_bound_report(const Multigraph& g) {
  const long n = static_cast<long>(g.vertex_count());
  if (n < 3) throw InputError("lower bound needs at least 3 vertices");
  const long m = static_cast<long>(g.edge_instance_count());
  LowerBound b;
  long k = 0;
  // the bound k(3n-k-5) grows until k = (3n-5)/2
  while (m > k * (3 * n - k - 5) && 2 * k < 3 * n - 5) ++k;
  if (m > k * (3 * n - k - 5)) ++k;
  b.density = static_cast<int>(k);
  b.multiplicity = g.max_multiplicity();
  b.planarity = m == 0 ? 0 : simple_planar(g) ? 1 : 2;
  return b;
}

inline int lower_bound(const Multigraph& g) { return lower_bound_report(g).value(); }

// ---- conflict graph of a drawing -------------------------------------------

/// Vertex i of the conflict graph is edge instance `instances[i]`.
struct ConflictGraph {
  std::vector<EdgeInstance> instances;
  SimpleGraph graph;
};

inline ConflictGraph conflict_graph(const Multigraph& g, const Drawing& d) {
  ConflictGraph cg;
  std::map<EdgeInstance, std::size_t> index;
  for (EdgeId e = 0; e < g.edge_class_count(); ++e)
    for (int k = 0; k < g.edge(e).multiplicity; ++k) index[{e, k}] = cg.instances.size(), cg.instances.push_back({e, k});
  cg.graph = SimpleGraph(cg.instances.size());
  for (const auto& p : conflict_pairs(g, d)) cg.graph.add_edge(index.at(p.first), index.at(p.second));
  return cg;
}

inline EdgeColoring edge_coloring_of(const Multigraph& g, const ConflictGraph& cg, const VertexColoring& c) {
  EdgeColoring out;
  out.colors.resize(g.edge_class_count());
  for (EdgeId e = 0; e < g.edge_class_count(); ++e) out.colors[e].resize(static_cast<std::size_t>(g.edge(e).multiplicity));
  for (std::size_t i = 0; i < cg.instances.size(); ++i)
    out.colors[cg.instances[i].edge][static_cast<std::size_t>(cg.instances[i].copy)] = c[i];
  return out;
}

struct Decomposition {
  bool exact = false;  // false when the exact search ran out of budget
  int colors = 0;      // chromatic number when exact, else the DSATUR count
  int clique_lower_bound = 0;
  int dsatur_upper_bound = 0;
  EdgeColoring coloring;
};

/// Minimum number of plane layers of a fixed drawing.
inline Decomposition decompose_drawing(const Multigraph& g, const Drawing& d, std::uint64_t node_limit = 5'000'000) {
  detail::check_drawing_total(g.vertex_count(), d, g.names());
  auto cg = conflict_graph(g, d);
  Decomposition out;
  auto fallback = dsatur(cg.graph);
  out.dsatur_upper_bound = color_count(fallback);
  out.clique_lower_bound = static_cast<int>(greedy_clique(cg.graph).size());
  try {
    auto r = chromatic_number(cg.graph, node_limit);
    out.exact = true;
    out.colors = r.chromatic_number;
    out.coloring = edge_coloring_of(g, cg, r.coloring);
  } catch (const ResourceError&) {
    out.colors = out.dsatur_upper_bound;
    out.coloring = edge_coloring_of(g, cg, fallback);
  }
  return out;
}

// ---- certificate search -----------------------------------------------------

struct SearchBudget {
  long grid = 32;                   // coordinates in [0, grid]
  double seconds = 10;              // wall-clock guard over all restarts
  std::uint64_t iterations = 200'000;  // per restart
  std::size_t restarts = 8;
  std::uint64_t seed = 1;
  unsigned threads = 1;
  std::optional<Drawing> start;     // integer placement to start from
};

struct SearchStats {
  std::uint64_t iterations = 0;
  std::size_t restarts = 0;
  long best_energy = -1;  // fewest monochromatic conflicts seen
  double seconds = 0;
};

struct SearchResult {
  std::optional<Drawing> drawing;
  std::optional<EdgeColoring> coloring;
  Verdict verdict;  // verifier verdict on the returned certificate
  SearchStats stats;
  bool found() const { return drawing.has_value(); }
};

namespace detail {

struct GridPoint {
  long long x = 0, y = 0;
  friend bool operator==(const GridPoint&, const GridPoint&) = default;
};

inline int orient_ll(const GridPoint& a, const GridPoint& b, const GridPoint& c) {
  long long v = (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
  return (v > 0) - (v < 0);
}

inline bool on_closed(const GridPoint& a, const GridPoint& b, const GridPoint& p) {
  return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) && std::min(a.y, b.y) <= p.y && p.y <= std::max(a.y, b.y);
}

/// Segments between distinct grid points; shared endpoints are given by vertex ids.
inline bool grid_conflict(VertexId a, VertexId b, VertexId c, VertexId d, const std::vector<GridPoint>& pos) {
  const GridPoint &A = pos[a], &B = pos[b], &C = pos[c], &D = pos[d];
  std::optional<VertexId> shared;
  if (a == c || a == d) shared = a;
  if (b == c || b == d) {
    if (shared) return true;  // parallel copies
    shared = b;
  }
  if (shared) {
    const GridPoint& S = pos[*shared];
    const GridPoint& P = *shared == a ? B : A;
    const GridPoint& Q = *shared == c ? D : C;
    return orient_ll(S, P, Q) == 0 && (P.x - S.x) * (Q.x - S.x) + (P.y - S.y) * (Q.y - S.y) > 0;
  }
  int o1 = orient_ll(A, B, C), o2 = orient_ll(A, B, D), o3 = orient_ll(C, D, A), o4 = orient_ll(C, D, B);
  if (o1 * o2 < 0 && o3 * o4 < 0) return true;
  return (o1 == 0 && on_closed(A, B, C)) || (o2 == 0 && on_closed(A, B, D)) || (o3 == 0 && on_closed(C, D, A)) ||
         (o4 == 0 && on_closed(C, D, B));
}

/// Joint annealing over integer positions and instance colors; energy is the
/// number of conflicting same-colored instance pairs.
class Annealer {
 public:
  Annealer(const Multigraph& g, int t, long grid, std::uint64_t seed) : g_(g), t_(t), grid_(grid), rng_(seed) {
    for (EdgeId e = 0; e < g.edge_class_count(); ++e)
      for (int k = 0; k < g.edge(e).multiplicity; ++k) items_.push_back({e, k});
    incident_.resize(g.vertex_count());
    for (std::size_t i = 0; i < items_.size(); ++i) {
      const auto& ec = g.edge(items_[i].edge);
      incident_[ec.u].push_back(i), incident_[ec.v].push_back(i);
    }
    color_.resize(items_.size());
    conflict_.assign(items_.size(), std::vector<char>(items_.size(), 0));
  }

  void place(const std::optional<Drawing>& start) {
    std::set<std::pair<long long, long long>> used;
    pos_.resize(g_.vertex_count());
    for (VertexId v = 0; v < g_.vertex_count(); ++v) {
      GridPoint p;
      if (start && start->has(v) && start->at(v).x.get_den() == 1 && start->at(v).y.get_den() == 1) {
        p = {start->at(v).x.get_num().get_si(), start->at(v).y.get_num().get_si()};
      } else {
        do p = random_point();
        while (used.count({p.x, p.y}));
      }
      used.insert({p.x, p.y});
      pos_[v] = p;
    }
    for (auto& c : color_) c = 1 + static_cast<int>(rng_() % static_cast<unsigned>(t_));
    for (std::size_t i = 0; i < items_.size(); ++i)
      for (std::size_t j = i + 1; j < items_.size(); ++j) conflict_[i][j] = conflict_[j][i] = conflicts(i, j);
    energy_ = 0;
    for (std::size_t i = 0; i < items_.size(); ++i)
      for (std::size_t j = i + 1; j < items_.size(); ++j) energy_ += conflict_[i][j] && color_[i] == color_[j];
  }

  /// Runs until energy 0, the iteration budget, or the deadline.
  std::uint64_t run(std::uint64_t iterations, std::chrono::steady_clock::time_point deadline) {
    double temp = 2.0;
    const double cool = std::pow(0.01 / temp, 1.0 / static_cast<double>(std::max<std::uint64_t>(iterations, 1)));
    std::uniform_real_distribution<double> unit(0, 1);
    std::uint64_t it = 0;
    for (; it < iterations && energy_ > 0; ++it, temp *= cool) {
      if ((it & 1023) == 0 && std::chrono::steady_clock::now() > deadline) break;
      if (rng_() % 3 == 0) {
        std::size_t i = rng_() % items_.size();
        int old = color_[i], fresh = 1 + static_cast<int>(rng_() % static_cast<unsigned>(t_));
        if (fresh == old) continue;
        long delta = 0;
        for (std::size_t j = 0; j < items_.size(); ++j)
          if (conflict_[i][j]) delta += (color_[j] == fresh) - (color_[j] == old);
        if (delta <= 0 || unit(rng_) < std::exp(-static_cast<double>(delta) / temp)) color_[i] = fresh, energy_ += delta;
      } else {
        VertexId v = rng_() % g_.vertex_count();
        GridPoint old = pos_[v], p = rng_() % 4 == 0 ? random_point() : nudge(old);
        if (std::any_of(pos_.begin(), pos_.end(), [&](const GridPoint& q) { return q == p; })) continue;
        long before = local_energy(v);
        pos_[v] = p;
        auto saved = snapshot(v);
        refresh(v);
        long delta = local_energy(v) - before;
        if (delta <= 0 || unit(rng_) < std::exp(-static_cast<double>(delta) / temp)) {
          energy_ += delta;
        } else {
          pos_[v] = old;
          restore(v, saved);
        }
      }
      best_ = std::min(best_, energy_);
    }
    return it;
  }

  long energy() const { return energy_; }
  long best() const { return best_; }

  Drawing drawing() const {
    Drawing d(pos_.size());
    for (VertexId v = 0; v < pos_.size(); ++v) d.set(v, make_point(static_cast<long>(pos_[v].x), static_cast<long>(pos_[v].y)));
    return d;
  }

  EdgeColoring coloring() const {
    EdgeColoring c;
    c.colors.resize(g_.edge_class_count());
    for (EdgeId e = 0; e < g_.edge_class_count(); ++e) c.colors[e].resize(static_cast<std::size_t>(g_.edge(e).multiplicity));
    for (std::size_t i = 0; i < items_.size(); ++i) c.colors[items_[i].edge][static_cast<std::size_t>(items_[i].copy)] = color_[i];
    return c;
  }

 private:
  GridPoint random_point() {
    return {static_cast<long long>(rng_() % static_cast<unsigned long>(grid_ + 1)),
            static_cast<long long>(rng_() % static_cast<unsigned long>(grid_ + 1))};
  }
  GridPoint nudge(GridPoint p) {
    p.x = std::clamp<long long>(p.x + static_cast<long long>(rng_() % 5) - 2, 0, grid_);
    p.y = std::clamp<long long>(p.y + static_cast<long long>(rng_() % 5) - 2, 0, grid_);
    return p;
  }
  bool conflicts(std::size_t i, std::size_t j) const {
    const auto& a = g_.edge(items_[i].edge);
    const auto& b = g_.edge(items_[j].edge);
    if (items_[i].edge == items_[j].edge) return true;
    return grid_conflict(a.u, a.v, b.u, b.v, pos_);
  }
  long local_energy(VertexId v) const {
    long e = 0;
    std::vector<char> mine(items_.size(), 0);
    for (std::size_t i : incident_[v]) mine[i] = 1;
    for (std::size_t i : incident_[v])
      for (std::size_t j = 0; j < items_.size(); ++j)
        if (j != i && conflict_[i][j] && color_[i] == color_[j] && (!mine[j] || i < j)) ++e;
    return e;
  }
  std::vector<std::vector<char>> snapshot(VertexId v) const {
    std::vector<std::vector<char>> s;
    for (std::size_t i : incident_[v]) s.push_back(conflict_[i]);
    return s;
  }
  void restore(VertexId v, const std::vector<std::vector<char>>& s) {
    for (std::size_t k = 0; k < incident_[v].size(); ++k) {
      std::size_t i = incident_[v][k];
      conflict_[i] = s[k];
      for (std::size_t j = 0; j < items_.size(); ++j) conflict_[j][i] = s[k][j];
    }
  }
  void refresh(VertexId v) {
    for (std::size_t i : incident_[v])
      for (std::size_t j = 0; j < items_.size(); ++j)
        if (j != i) conflict_[i][j] = conflict_[j][i] = conflicts(i, j);
  }

  const Multigraph& g_;
  int t_;
  long grid_;
  std::mt19937_64 rng_;
  std::vector<EdgeInstance> items_;
  std::vector<std::vector<std::size_t>> incident_;
  std::vector<GridPoint> pos_;
  std::vector<int> color_;
  std::vector<std::vector<char>> conflict_;
  long energy_ = 0;
  long best_ = std::numeric_limits<long>::max();
};

}  // namespace detail

/// Restart r uses seed b.seed + r; among successful restarts the lowest r
/// wins, so the result does not depend on the thread count when the
/// iteration budget (not the clock) is binding. Never refutes.
inline SearchResult search_upper_bound(const Multigraph& g, int t, const SearchBudget& b) {
  if (t < 1) throw InputError("thickness must be positive");
  if (b.grid < 1 || b.seconds <= 0 || b.iterations == 0 || b.restarts == 0) throw InputError("search budget must be positive");
  if (static_cast<std::uint64_t>((b.grid + 1) * (b.grid + 1)) < g.vertex_count()) throw InputError("grid too small for the vertices");
  SearchResult out;
  if (g.max_multiplicity() > t) {
    out.stats.best_energy = -1;
    return out;
  }
  auto t0 = std::chrono::steady_clock::now();
  auto deadline = t0 + std::chrono::duration_cast<std::chrono::steady_clock::duration>(std::chrono::duration<double>(b.seconds));
  struct Outcome {
    bool done = false;
    bool success = false;
    Drawing d;
    EdgeColoring c;
    std::uint64_t iterations = 0;
    long best = -1;
  };
  std::vector<Outcome> results(b.restarts);
  auto attempt = [&](std::size_t r) {
    detail::Annealer a(g, t, b.grid, b.seed + r);
    a.place(r == 0 ? b.start : std::nullopt);
    auto& o = results[r];
    o.iterations = a.run(b.iterations, deadline);
    o.best = a.best() == std::numeric_limits<long>::max() ? a.energy() : a.best();
    o.done = true;
    if (a.energy() == 0) o.success = true, o.d = a.drawing(), o.c = a.coloring();
  };
  unsigned threads = std::max(1u, b.threads);
  for (std::size_t base = 0; base < b.restarts; base += threads) {
    std::vector<std::thread> pool;
    for (std::size_t r = base; r < std::min<std::size_t>(b.restarts, base + threads); ++r) pool.emplace_back(attempt, r);
    for (auto& th : pool) th.join();
    bool any = false;
    for (std::size_t r = 0; r < std::min<std::size_t>(b.restarts, base + threads); ++r) any |= results[r].success;
    if (any || std::chrono::steady_clock::now() > deadline) break;
  }
  out.stats.best_energy = -1;
  for (std::size_t r = 0; r < results.size(); ++r) {
    const auto& o = results[r];
    if (!o.done) continue;
    ++out.stats.restarts;
    out.stats.iterations += o.iterations;
    if (out.stats.best_energy < 0 || o.best < out.stats.best_energy) out.stats.best_energy = o.best;
    if (o.success && !out.drawing) {
      // the exact verifier is the only acceptance gate
      auto v = verify_thickness(g, o.d, o.c, t);
      if (v.accepted()) out.drawing = o.d, out.coloring = o.c, out.verdict = v;
    }
  }
  out.stats.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return out;
}

}  // namespace gthick

#endif
