// Vertex coloring of small simple graphs: DSATUR, exact backtracking and a
// greedy clique bound.
#ifndef GTHICK_COLORING_HPP
#define GTHICK_COLORING_HPP

#include "gthick/verdict.hpp"

#include <algorithm>
#include <cstdint>
#include <optional>
#include <set>
#include <utility>
#include <vector>

namespace gthick {

class SimpleGraph {
 public:
  SimpleGraph() = default;
  explicit SimpleGraph(std::size_t n) : adj_(n) {}

  std::size_t vertex_count() const { return adj_.size(); }
  std::size_t edge_count() const {
    std::size_t total = 0;
    for (const auto& a : adj_) total += a.size();
    return total / 2;
  }

  void add_edge(std::size_t u, std::size_t v) {
    if (u == v) return;
    adj_.at(u).insert(v);
    adj_.at(v).insert(u);
  }
  bool has_edge(std::size_t u, std::size_t v) const { return adj_.at(u).count(v) != 0; }
  const std::set<std::size_t>& neighbors(std::size_t u) const { return adj_.at(u); }
  std::size_t degree(std::size_t u) const { return adj_.at(u).size(); }

  std::size_t max_degree() const {
    std::size_t m = 0;
    for (const auto& a : adj_) m = std::max(m, a.size());
    return m;
  }

  std::vector<std::pair<std::size_t, std::size_t>> edges() const {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t u = 0; u < adj_.size(); ++u)
      for (std::size_t v : adj_[u])
        if (u < v) out.emplace_back(u, v);
    return out;
  }

 private:
  std::vector<std::set<std::size_t>> adj_;
};

/// Colors are 1-based; 0 means uncolored.
using VertexColoring = std::vector<int>;

inline bool is_proper(const SimpleGraph& g, const VertexColoring& c) {
  if (c.size() != g.vertex_count()) return false;
  for (std::size_t u = 0; u < g.vertex_count(); ++u) {
    if (c[u] < 1) return false;
    for (std::size_t v : g.neighbors(u))
      if (c[u] == c[v]) return false;
  }
  return true;
}

inline int color_count(const VertexColoring& c) {
  return c.empty() ? 0 : *std::max_element(c.begin(), c.end());
}

namespace detail {

inline std::size_t pick_dsatur_vertex(const SimpleGraph& g, const VertexColoring& c,
                                      const std::vector<std::set<int>>& sat) {
  std::size_t best = g.vertex_count();
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    if (c[v] != 0) continue;
    if (best == g.vertex_count() || sat[v].size() > sat[best].size() ||
        (sat[v].size() == sat[best].size() && g.degree(v) > g.degree(best)))
      best = v;
  }
  return best;
}

}  // namespace detail

/// DSATUR greedy coloring; ties broken by degree, then lowest index.
inline VertexColoring dsatur(const SimpleGraph& g) {
  const std::size_t n = g.vertex_count();
  VertexColoring c(n, 0);
  std::vector<std::set<int>> sat(n);
  for (std::size_t step = 0; step < n; ++step) {
    std::size_t v = detail::pick_dsatur_vertex(g, c, sat);
    int col = 1;
    while (sat[v].count(col)) ++col;
    c[v] = col;
    for (std::size_t w : g.neighbors(v)) sat[w].insert(col);
  }
  return c;
}

/// Greedy clique (lower bound on the chromatic number), started from every vertex.
inline std::vector<std::size_t> greedy_clique(const SimpleGraph& g) {
  std::vector<std::size_t> best;
  for (std::size_t s = 0; s < g.vertex_count(); ++s) {
    std::vector<std::size_t> clique{s};
    std::vector<std::size_t> cand(g.neighbors(s).begin(), g.neighbors(s).end());
    std::sort(cand.begin(), cand.end(), [&](auto a, auto b) { return g.degree(a) > g.degree(b); });
    for (std::size_t v : cand)
      if (std::all_of(clique.begin(), clique.end(), [&](auto u) { return g.has_edge(u, v); })) clique.push_back(v);
    if (clique.size() > best.size()) best = clique;
  }
  return best;
}

struct ExactColoringResult {
  std::optional<VertexColoring> coloring;  // empty: no coloring with <= k colors exists
  std::uint64_t nodes = 0;
};

/// Complete backtracking search for a proper coloring with at most k colors.
/// Throws ResourceError when more than node_limit search nodes are needed.
inline ExactColoringResult color_with_at_most(const SimpleGraph& g, int k, std::uint64_t node_limit = 5'000'000) {
  const std::size_t n = g.vertex_count();
  ExactColoringResult result;
  if (n == 0) {
    result.coloring = VertexColoring{};
    return result;
  }
  if (k < 1) return result;
  VertexColoring c(n, 0);
  std::vector<std::vector<int>> forbid(n, std::vector<int>(static_cast<std::size_t>(k) + 1, 0));

  auto saturation = [&](std::size_t v) {
    int s = 0;
    for (int col = 1; col <= k; ++col) s += forbid[v][col] > 0;
    return s;
  };
  auto pick = [&]() {
    std::size_t best = n;
    int best_sat = -1;
    for (std::size_t v = 0; v < n; ++v) {
      if (c[v]) continue;
      int s = saturation(v);
      if (s > best_sat || (s == best_sat && g.degree(v) > g.degree(best))) best = v, best_sat = s;
    }
    return best;
  };

  // Recursion depth is bounded by n; instances here are small.
  auto solve = [&](auto&& self, std::size_t colored, int used) -> bool {
    if (colored == n) return true;
    if (++result.nodes > node_limit) throw ResourceError("exact coloring exceeded node budget");
    std::size_t v = pick();
    // Symmetry breaking: at most one fresh color per branch.
    for (int col = 1; col <= std::min(k, used + 1); ++col) {
      if (forbid[v][col]) continue;
      c[v] = col;
      for (std::size_t w : g.neighbors(v)) ++forbid[w][col];
      if (self(self, colored + 1, std::max(used, col))) return true;
      for (std::size_t w : g.neighbors(v)) --forbid[w][col];
      c[v] = 0;
    }
    return false;
  };
  if (solve(solve, 0, 0)) result.coloring = c;
  return result;
}

struct ChromaticResult {
  int chromatic_number = 0;
  VertexColoring coloring;
  int clique_lower_bound = 0;
  int dsatur_upper_bound = 0;
};

/// Exact chromatic number: raise k from the clique bound until a coloring exists.
inline ChromaticResult chromatic_number(const SimpleGraph& g, std::uint64_t node_limit = 5'000'000) {
  ChromaticResult r;
  r.coloring = dsatur(g);
  r.dsatur_upper_bound = color_count(r.coloring);
  r.clique_lower_bound = static_cast<int>(greedy_clique(g).size());
  r.chromatic_number = r.dsatur_upper_bound;
  for (int k = std::max(1, r.clique_lower_bound); k < r.dsatur_upper_bound; ++k) {
    auto attempt = color_with_at_most(g, k, node_limit);
    if (attempt.coloring) {
      r.chromatic_number = k;
      r.coloring = *attempt.coloring;
      break;
    }
  }
  return r;
}

}  // namespace gthick

#endif
