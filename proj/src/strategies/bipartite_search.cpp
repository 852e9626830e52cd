#include <algorithm>
#include <bit>
#include <cmath>

#include "mbgame/strategies.hpp"

namespace mbgame {

namespace {

Graph cross_graph(const Graph& g, const std::vector<int>& color) {
  std::vector<Edge> cross;
  for (const Edge& e : g.edges())
    if (color[e.u] != color[e.v]) cross.push_back(e);
  return Graph(g.order(), cross);
}

int cross_connectivity(const Graph& g, const std::vector<int>& color) {
  Graph c = cross_graph(g, color);
  return is_connected(c) ? edge_connectivity(c) : 0;
}

void consider(const Graph& g, std::vector<int> color, BipartiteSearch& best) {
  int k = cross_connectivity(g, color);
  if (best.color.empty() || k > best.connectivity) {
    best.color = std::move(color);
    best.connectivity = k;
  }
}

// Colour classes by BFS depth parity: every tree edge crosses.
std::vector<int> depth_parity(const Graph& g) {
  std::vector<int> color(g.order(), -1);
  for (Vertex s = 0; s < g.order(); ++s) {
    if (color[s] >= 0) continue;
    color[s] = 0;
    std::vector<Vertex> queue{s};
    for (std::size_t i = 0; i < queue.size(); ++i)
      for (Vertex w : g.neighbors(queue[i]))
        if (color[w] < 0) {
          color[w] = color[queue[i]] ^ 1;
          queue.push_back(w);
        }
  }
  return color;
}

constexpr int kMaxEvaluations = 20000;

BipartiteSearch exhaustive(const Graph& g) {
  const int n = g.order();
  std::vector<std::uint32_t> adj(n, 0);
  for (const Edge& e : g.edges()) {
    adj[e.u] |= std::uint32_t{1} << e.v;
    adj[e.v] |= std::uint32_t{1} << e.u;
  }
  const std::uint32_t full = (std::uint32_t{1} << n) - 1;
  struct Candidate {
    int bound;
    std::uint32_t mask;
  };
  std::vector<Candidate> candidates;
  // Vertex 0 always takes colour 0.
  for (std::uint32_t rest = 0; rest < (std::uint32_t{1} << (n - 1)); ++rest) {
    const std::uint32_t ones = rest << 1;
    int bound = n;
    for (int v = 0; v < n && bound > 0; ++v) {
      const std::uint32_t other = ((ones >> v) & 1U) ? (~ones & full) : ones;
      bound = std::min(bound, std::popcount(adj[v] & other));
    }
    if (bound > 0) candidates.push_back({bound, ones});
  }
  std::sort(candidates.begin(), candidates.end(), [](const Candidate& a, const Candidate& b) {
    return a.bound != b.bound ? a.bound > b.bound : a.mask < b.mask;
  });

  BipartiteSearch best;
  best.exact = true;
  consider(g, depth_parity(g), best);
  std::vector<int> color(n);
  int evaluations = 0;
  for (const Candidate& c : candidates) {
    if (c.bound <= best.connectivity) break;
    if (++evaluations > kMaxEvaluations) {
      best.exact = false;
      break;
    }
    for (int v = 0; v < n; ++v) color[v] = static_cast<int>((c.mask >> v) & 1U);
    consider(g, color, best);
  }
  return best;
}

std::vector<int> anneal(const Graph& g, Rng& rng) {
  const int n = g.order();
  std::vector<int> color(n);
  for (int v = 0; v < n; ++v) color[v] = static_cast<int>(rng.below(2));
  std::vector<int> same(n, 0);
  for (const Edge& e : g.edges())
    if (color[e.u] == color[e.v]) {
      ++same[e.u];
      ++same[e.v];
    }
  auto flip = [&](int v) {
    for (Vertex w : g.neighbors(v)) same[w] += color[w] == color[v] ? -1 : 1;
    same[v] = g.degree(v) - same[v];
    color[v] ^= 1;
  };
  const int steps = 40 * n;
  double temperature = 2.0;
  const double cooling = std::pow(0.02 / 2.0, 1.0 / steps);
  for (int s = 0; s < steps; ++s, temperature *= cooling) {
    int v = static_cast<int>(rng.below(n));
    // Gain in cut size when v switches sides.
    int gain = 2 * same[v] - g.degree(v);
    if (gain >= 0 || rng.unit() < std::exp(gain / temperature)) flip(v);
  }
  for (bool improved = true; improved;) {
    improved = false;
    for (int v = 0; v < n; ++v)
      if (2 * same[v] > g.degree(v)) {
        flip(v);
        improved = true;
      }
  }
  return color;
}

}  // namespace

BipartiteSearch best_spanning_bipartite(const Graph& g, std::uint64_t seed, int exact_limit) {
  const int n = g.order();
  if (n <= 1) return BipartiteSearch{std::vector<int>(n, 0), 0, true};
  if (n <= std::min(exact_limit, 22)) return exhaustive(g);

  BipartiteSearch best;
  consider(g, depth_parity(g), best);
  auto [a, b] = unfriendly_partition(g);
  std::vector<int> color(n, 0);
  for (Vertex v : b.members()) color[v] = 1;
  consider(g, color, best);
  Rng rng(seed ^ 0x6a09e667f3bcc908ULL);
  for (int r = 0; r < 6; ++r) consider(g, anneal(g, rng), best);
  return best;
}

}  // namespace mbgame
