#pragma once

#include <numeric>
#include <vector>

#include "mbgame/graph.hpp"
#include "mbgame/rng.hpp"

namespace fixtures {

using mbgame::Edge;
using mbgame::Graph;
using mbgame::Vertex;

inline Graph complete(int n) {
  std::vector<Edge> e;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) e.push_back({i, j});
  return Graph(n, e);
}

inline Graph cycle(int n) {
  std::vector<Edge> e;
  for (int i = 0; i < n; ++i) e.push_back(mbgame::make_edge(i, (i + 1) % n));
  return Graph(n, e);
}

inline Graph path(int n) {
  std::vector<Edge> e;
  for (int i = 0; i + 1 < n; ++i) e.push_back({i, i + 1});
  return Graph(n, e);
}

inline Graph star(int leaves) {
  std::vector<Edge> e;
  for (int i = 1; i <= leaves; ++i) e.push_back({0, i});
  return Graph(leaves + 1, e);
}

inline Graph petersen() {
  std::vector<Edge> e;
  for (int i = 0; i < 5; ++i) {
    e.push_back(mbgame::make_edge(i, (i + 1) % 5));
    e.push_back({i, i + 5});
    e.push_back(mbgame::make_edge(5 + i, 5 + (i + 2) % 5));
  }
  return Graph(10, e);
}

inline Graph multipartite(const std::vector<int>& sizes) {
  std::vector<int> part;
  for (std::size_t c = 0; c < sizes.size(); ++c) part.insert(part.end(), sizes[c], static_cast<int>(c));
  const int n = static_cast<int>(part.size());
  std::vector<Edge> e;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (part[i] != part[j]) e.push_back({i, j});
  return Graph(n, e);
}

inline Graph disjoint_union(const Graph& a, const Graph& b) {
  std::vector<Edge> e = a.edges();
  for (const Edge& x : b.edges()) e.push_back({x.u + a.order(), x.v + a.order()});
  return Graph(a.order() + b.order(), e);
}

// Vertex i of C_{2k+1} becomes the block [i*m, (i+1)*m).
inline Graph cycle_blowup(int length, int m) {
  std::vector<Edge> e;
  for (int i = 0; i < length; ++i) {
    int j = (i + 1) % length;
    for (int x = 0; x < m; ++x)
      for (int y = 0; y < m; ++y) e.push_back(mbgame::make_edge(i * m + x, j * m + y));
  }
  return Graph::simple(length * m, e);
}

inline Graph gnp(int n, std::uint64_t num, std::uint64_t den, std::uint64_t seed) {
  mbgame::Rng rng(seed);
  std::vector<Edge> e;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (rng.chance(num, den)) e.push_back({i, j});
  return Graph(n, e);
}

// Graph on n labelled vertices whose edges are the set bits of `mask` over
// the pairs (i<j) in lexicographic order.
inline Graph from_mask(int n, std::uint64_t mask) {
  std::vector<Edge> e;
  int bit = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j, ++bit)
      if ((mask >> bit) & 1U) e.push_back({i, j});
  return Graph(n, e);
}

}  // namespace fixtures
