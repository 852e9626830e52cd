#include <algorithm>
#include <numeric>

#include "mbgame/errors.hpp"
#include "mbgame/graph.hpp"

namespace mbgame {

namespace {

// DSATUR ordering helper shared by the greedy bound and the exact search.
class DsaturState {
 public:
  DsaturState(const Graph& g, int k)
      : g_(g), k_(k), color_(g.order(), -1), forbidden_(g.order(), std::vector<int>(k, 0)),
        saturation_(g.order(), 0) {}

  Vertex pick() const {
    Vertex best = -1;
    for (Vertex v = 0; v < g_.order(); ++v) {
      if (color_[v] >= 0) continue;
      if (best < 0 || saturation_[v] > saturation_[best] ||
          (saturation_[v] == saturation_[best] && g_.degree(v) > g_.degree(best)))
        best = v;
    }
    return best;
  }

  bool allowed(Vertex v, int c) const { return forbidden_[v][c] == 0; }

  void assign(Vertex v, int c) {
    color_[v] = c;
    for (Vertex w : g_.neighbors(v))
      if (forbidden_[w][c]++ == 0) ++saturation_[w];
  }

  void unassign(Vertex v) {
    int c = color_[v];
    color_[v] = -1;
    for (Vertex w : g_.neighbors(v))
      if (--forbidden_[w][c] == 0) --saturation_[w];
  }

  const std::vector<int>& colors() const { return color_; }

 private:
  const Graph& g_;
  int k_;
  std::vector<int> color_;
  std::vector<std::vector<int>> forbidden_;
  std::vector<int> saturation_;
};

bool extend(DsaturState& s, int k, int assigned, int n, int used) {
  if (assigned == n) return true;
  Vertex v = s.pick();
  // Colours above `used` are interchangeable; try only the first fresh one.
  int limit = std::min(k, used + 1);
  for (int c = 0; c < limit; ++c) {
    if (!s.allowed(v, c)) continue;
    s.assign(v, c);
    if (extend(s, k, assigned + 1, n, std::max(used, c + 1))) return true;
    s.unassign(v);
  }
  return false;
}

}  // namespace

bool is_proper_coloring(const Graph& g, std::span<const int> color, int k) {
  if (static_cast<int>(color.size()) != g.order()) return false;
  for (int c : color)
    if (c < 0 || c >= k) return false;
  for (const Edge& e : g.edges())
    if (color[e.u] == color[e.v]) return false;
  return true;
}

std::vector<Vertex> greedy_clique(const Graph& g) {
  std::vector<Vertex> best;
  // Seed from every vertex; extend by highest degree among candidates.
  for (Vertex seed = 0; seed < g.order(); ++seed) {
    std::vector<Vertex> clique{seed};
    std::vector<Vertex> cand(g.neighbors(seed).begin(), g.neighbors(seed).end());
    while (!cand.empty()) {
      Vertex pick = *std::max_element(cand.begin(), cand.end(), [&](Vertex a, Vertex b) {
        return g.degree(a) < g.degree(b) || (g.degree(a) == g.degree(b) && a > b);
      });
      clique.push_back(pick);
      std::vector<Vertex> next;
      for (Vertex c : cand)
        if (c != pick && g.adjacent(c, pick)) next.push_back(c);
      cand = std::move(next);
    }
    if (clique.size() > best.size()) best = std::move(clique);
  }
  std::sort(best.begin(), best.end());
  return best;
}

int greedy_color_count(const Graph& g) {
  const int n = g.order();
  if (n == 0) return 0;
  DsaturState s(g, n);
  int used = 0;
  for (int i = 0; i < n; ++i) {
    Vertex v = s.pick();
    int c = 0;
    while (!s.allowed(v, c)) ++c;
    s.assign(v, c);
    used = std::max(used, c + 1);
  }
  return used;
}

std::optional<std::vector<int>> is_k_colorable(const Graph& g, int k) {
  const int n = g.order();
  if (k <= 0) {
    if (n == 0) return std::vector<int>{};
    return std::nullopt;
  }
  if (n == 0) return std::vector<int>{};
  if (static_cast<int>(greedy_clique(g).size()) > k) return std::nullopt;
  DsaturState s(g, k);
  if (!extend(s, k, 0, n, 0)) return std::nullopt;
  return s.colors();
}

int chromatic_number(const Graph& g, const ColoringOptions& opts) {
  if (g.order() > opts.vertex_cap)
    throw ResourceError("chromatic_number: " + std::to_string(g.order()) +
                        " vertices exceeds cap " + std::to_string(opts.vertex_cap));
  if (g.order() == 0) return 0;
  int lower = std::max<int>(1, static_cast<int>(greedy_clique(g).size()));
  int upper = greedy_color_count(g);
  for (int k = lower; k < upper; ++k)
    if (is_k_colorable(g, k)) return k;
  return upper;
}

bool chromatic_exceeds(const Graph& g, int k, const ColoringOptions& opts) {
  if (k < 0) return true;
  if (k >= g.order()) return false;
  if (k == 0) return g.order() > 0;
  if (k == 1) return g.size() > 0;
  if (k == 2) return !find_odd_cycle(g).bipartite();
  if (static_cast<int>(greedy_clique(g).size()) > k) return true;
  if (greedy_color_count(g) <= k) return false;
  if (g.order() > opts.vertex_cap)
    throw ResourceError("cannot decide chi > " + std::to_string(k) + " on " +
                        std::to_string(g.order()) + " vertices (cap " +
                        std::to_string(opts.vertex_cap) + ")");
  return !is_k_colorable(g, k).has_value();
}

}  // namespace mbgame
