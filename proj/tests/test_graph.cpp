#include <algorithm>
#include <functional>

#include "doctest.h"
#include "fixtures.hpp"
#include "mbgame/errors.hpp"
#include "mbgame/graph.hpp"
#include "mbgame/graph_io.hpp"

using namespace mbgame;
using namespace fixtures;

namespace {

// Oracle: try every k^n assignment.
bool brute_colorable(const Graph& g, int k) {
  const int n = g.order();
  std::vector<int> c(n, 0);
  while (true) {
    if (is_proper_coloring(g, c, k)) return true;
    int i = 0;
    while (i < n && ++c[i] == k) c[i++] = 0;
    if (i == n) return n == 0;
  }
}

// Oracle: smallest vertex set whose removal disconnects g or leaves one vertex.
int brute_vertex_connectivity(const Graph& g) {
  const int n = g.order();
  int best = n - 1;
  for (std::uint32_t mask = 0; mask < (1U << n); ++mask) {
    int removed = __builtin_popcount(mask);
    if (removed >= best || n - removed < 2) continue;
    std::vector<Vertex> keep;
    for (int v = 0; v < n; ++v)
      if (!((mask >> v) & 1U)) keep.push_back(v);
    if (!is_connected(induced_subgraph(g, VertexSet(n, keep)).graph)) best = removed;
  }
  return best;
}

// Oracle: minimum over all bipartitions.
int brute_edge_connectivity(const Graph& g) {
  const int n = g.order();
  int best = static_cast<int>(g.size());
  for (std::uint32_t mask = 1; mask < (1U << (n - 1)); ++mask) {
    int cut = 0;
    for (const Edge& e : g.edges()) cut += (((mask >> e.u) ^ (mask >> e.v)) & 1U) ? 1 : 0;
    best = std::min(best, cut);
  }
  return best;
}

}  // namespace

TEST_CASE("graph construction rejects malformed edges") {
  std::vector<Edge> loop{{1, 1}};
  CHECK_THROWS_AS(Graph(3, loop), DomainError);
  std::vector<Edge> dup{{0, 1}, {1, 0}};
  CHECK_THROWS_AS(Graph(3, dup), DomainError);
  std::vector<Edge> range{{0, 3}};
  CHECK_THROWS_AS(Graph(3, range), DomainError);
}

TEST_CASE("graph invariants: symmetric adjacency, half-sum") {
  Graph g = gnp(20, 1, 2, 11);
  std::size_t degree_sum = 0;
  for (Vertex v = 0; v < g.order(); ++v) {
    degree_sum += g.degree(v);
    CHECK_FALSE(g.adjacent(v, v));
    for (Vertex w : g.neighbors(v)) CHECK(g.adjacent(w, v));
  }
  CHECK(degree_sum == 2 * g.size());
  for (std::size_t i = 0; i < g.size(); ++i)
    CHECK(g.edge_index(g.edges()[i].v, g.edges()[i].u) == static_cast<int>(i));
}

TEST_CASE("min_degree") {
  CHECK(min_degree(complete(4)) == 3);
  CHECK(min_degree(cycle(5)) == 2);
  CHECK(min_degree(star(3)) == 1);
  CHECK_THROWS_AS(min_degree(Graph(0)), DomainError);
}

TEST_CASE("induced_subgraph") {
  auto k3 = induced_subgraph(complete(4), VertexSet(4, {0, 2, 3}));
  CHECK(k3.graph == complete(3));
  CHECK(k3.to_parent == std::vector<Vertex>{0, 2, 3});

  auto edge = induced_subgraph(cycle(5), VertexSet(5, {3, 4}));
  CHECK(edge.graph.order() == 2);
  CHECK(edge.graph.size() == 1);

  Graph p = petersen();
  CHECK(induced_subgraph(p, VertexSet::all(10)).graph == p);
  CHECK_THROWS_AS(VertexSet(4, {0, 7}), DomainError);
}

TEST_CASE("cut_edges") {
  Graph c4 = cycle(4);
  CHECK(cut_edges(c4, VertexSet(4, {0, 2}), VertexSet(4, {1, 3})).size() == 4);
  CHECK(cut_edges(complete(4), VertexSet(4, {0}), VertexSet(4, {1, 2, 3})).size() == 3);
  CHECK(cut_edges(Graph(5), VertexSet(5, {0, 1}), VertexSet(5, {2})).empty());
  CHECK_THROWS_AS(cut_edges(c4, VertexSet(4, {0, 1}), VertexSet(4, {1, 2})), DomainError);
}

TEST_CASE("find_odd_cycle") {
  auto c5 = find_odd_cycle(cycle(5));
  REQUIRE(c5.cycle);
  CHECK(c5.cycle->vertices.size() == 5);
  CHECK(is_valid_odd_cycle(cycle(5), *c5.cycle));

  auto c6 = find_odd_cycle(cycle(6));
  REQUIRE(c6.bipartite());
  for (int i = 0; i < 6; ++i) CHECK(c6.bipartition->color[i] != c6.bipartition->color[(i + 1) % 6]);

  auto k4 = find_odd_cycle(complete(4));
  REQUIRE(k4.cycle);
  CHECK(k4.cycle->vertices.size() == 3);
}

TEST_CASE("find_odd_cycle certificates on random graphs") {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    Graph g = gnp(12, 1, 6, seed);
    auto r = find_odd_cycle(g);
    CHECK(r.cycle.has_value() != r.bipartite());
    if (r.cycle) {
      CHECK(is_valid_odd_cycle(g, *r.cycle));
    } else {
      CHECK(is_proper_coloring(g, r.bipartition->color, 2));
    }
  }
}

TEST_CASE("chromatic number and k-colourability") {
  CHECK(chromatic_number(cycle(5)) == 3);
  CHECK(chromatic_number(complete(4)) == 4);
  // Petersen value frozen from the brute-force oracle.
  CHECK(brute_colorable(petersen(), 3));
  CHECK_FALSE(brute_colorable(petersen(), 2));
  CHECK(chromatic_number(petersen()) == 3);

  CHECK_FALSE(is_k_colorable(cycle(5), 2));
  auto three = is_k_colorable(cycle(5), 3);
  REQUIRE(three);
  CHECK(is_proper_coloring(cycle(5), *three, 3));
  CHECK_FALSE(is_k_colorable(complete(4), 3));

  CHECK_THROWS_AS(chromatic_number(complete(70)), ResourceError);
  ColoringOptions big{128};
  CHECK(chromatic_number(complete(70), big) == 70);
}

TEST_CASE("chromatic_exceeds uses exact bounds") {
  CHECK(chromatic_exceeds(multipartite(std::vector<int>(7, 40)), 6));
  CHECK_FALSE(chromatic_exceeds(multipartite(std::vector<int>(7, 40)), 7));
  CHECK_FALSE(chromatic_exceeds(cycle_blowup(5, 20), 3));
  CHECK(chromatic_exceeds(cycle_blowup(5, 20), 2));
}

TEST_CASE("chi <= 2 iff bipartite, exhaustively up to 6 vertices") {
  for (int n = 1; n <= 6; ++n) {
    const std::uint64_t pairs = n * (n - 1) / 2;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << pairs); ++mask) {
      Graph g = from_mask(n, mask);
      CHECK((chromatic_number(g) <= 2) == find_odd_cycle(g).bipartite());
    }
  }
}

TEST_CASE("chi <= 2 iff bipartite, sampled at 7 and 8 vertices") {
  Rng rng(5);
  for (int trial = 0; trial < 2000; ++trial) {
    int n = 7 + static_cast<int>(rng.below(2));
    Graph g = from_mask(n, rng.next() & ((std::uint64_t{1} << (n * (n - 1) / 2)) - 1));
    bool bip = find_odd_cycle(g).bipartite();
    CHECK((chromatic_number(g) <= 2) == bip);
    if (trial % 20 == 0) {
      int chi = chromatic_number(g);
      CHECK(brute_colorable(g, chi));
      if (chi > 1) CHECK_FALSE(brute_colorable(g, chi - 1));
    }
  }
}

TEST_CASE("edge connectivity") {
  CHECK(edge_connectivity(complete(4)) == 3);
  CHECK(edge_connectivity(cycle(5)) == 2);
  CHECK(edge_connectivity(path(4)) == 1);
  CHECK(edge_connectivity(disjoint_union(complete(3), complete(3))) == 0);
  CHECK_THROWS_AS(edge_connectivity(Graph(1)), DomainError);

  Graph p4 = path(4);
  EdgeCut cut = min_edge_cut(p4);
  CHECK(cut.value == 1);
  std::vector<char> side(4, 0);
  for (Vertex v : cut.side) side[v] = 1;
  int crossing = 0;
  for (const Edge& e : p4.edges()) crossing += side[e.u] != side[e.v];
  CHECK(crossing == 1);
}

TEST_CASE("vertex connectivity") {
  CHECK(vertex_connectivity(complete(5)) == 4);
  CHECK(vertex_connectivity(cycle(5)) == 2);
  std::vector<Edge> bowtie{{0, 1}, {0, 2}, {1, 2}, {2, 3}, {2, 4}, {3, 4}};
  Graph g(5, bowtie);
  VertexCut cut = min_vertex_cut(g);
  CHECK(cut.value == 1);
  CHECK(cut.separator == std::vector<Vertex>{2});
  CHECK(vertex_connectivity(petersen()) == 3);
  CHECK_THROWS_AS(vertex_connectivity(Graph(1)), DomainError);
}

TEST_CASE("connectivity matches brute-force oracles on small random graphs") {
  Rng rng(17);
  for (int trial = 0; trial < 300; ++trial) {
    int n = 2 + static_cast<int>(rng.below(7));
    Graph g = gnp(n, 1 + rng.below(4), 5, rng.next());
    int kv = vertex_connectivity(g);
    int ke = edge_connectivity(g);
    CHECK(kv == brute_vertex_connectivity(g));
    CHECK(ke == brute_edge_connectivity(g));
    CHECK(ke <= min_degree(g));
    CHECK(kv <= ke);
    VertexCut vc = min_vertex_cut(g);
    if (!vc.separator.empty()) {
      CHECK(static_cast<int>(vc.separator.size()) == vc.value);
      std::vector<Vertex> keep;
      for (Vertex v = 0; v < n; ++v)
        if (!std::binary_search(vc.separator.begin(), vc.separator.end(), v)) keep.push_back(v);
      CHECK_FALSE(is_connected(induced_subgraph(g, VertexSet(n, keep)).graph));
    }
  }
}

TEST_CASE("edge connectivity is bounded by random bipartition cuts on G(n,p)") {
  Rng rng(23);
  for (int trial = 0; trial < 20; ++trial) {
    int n = 10 + static_cast<int>(rng.below(31));
    Graph g = gnp(n, 1 + rng.below(3), 4, rng.next());
    int ke = edge_connectivity(g);
    CHECK(ke <= min_degree(g));
    CHECK(vertex_connectivity(g) <= ke);
    for (int s = 0; s < 200; ++s) {
      std::vector<char> side(n);
      for (auto& x : side) x = static_cast<char>(rng.below(2));
      if (std::count(side.begin(), side.end(), 1) % n == 0) continue;
      int cut = 0;
      for (const Edge& e : g.edges()) cut += side[e.u] != side[e.v];
      CHECK(ke <= cut);
    }
  }
}

TEST_CASE("unfriendly partition") {
  auto check = [](const Graph& g) {
    auto [x1, x2] = unfriendly_partition(g);
    CHECK(x1.size() + x2.size() == static_cast<std::size_t>(g.order()));
    auto in1 = x1.indicator();
    for (Vertex v = 0; v < g.order(); ++v) {
      int same = degree_into(g, v, in1);
      int across = in1[v] ? g.degree(v) - same : same;
      CHECK(2 * across >= g.degree(v));
    }
  };
  auto [a, b] = unfriendly_partition(cycle(4));
  CHECK(a.members() == std::vector<Vertex>{0, 2});
  CHECK(b.members() == std::vector<Vertex>{1, 3});
  check(complete(3));
  check(cycle(5));
  for (std::uint64_t seed = 0; seed < 50; ++seed) check(gnp(25, 1, 2, seed));
}

TEST_CASE("mader subgraph") {
  auto all = mader_subgraph(complete(8), Rational(4));
  REQUIRE(all);
  CHECK(all->size() == 8);
  CHECK_FALSE(mader_subgraph(Graph(6), Rational(1)));

  Graph two = disjoint_union(complete(5), complete(5));
  auto first = mader_subgraph(two, Rational(4));
  REQUIRE(first);
  CHECK(first->members() == std::vector<Vertex>{0, 1, 2, 3, 4});
  CHECK(vertex_connectivity(induced_subgraph(two, *first).graph) >= 1);

  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    Graph g = gnp(24, 1, 3, seed);
    Rational k(2 * static_cast<std::int64_t>(g.size()), g.order());  // average degree
    auto found = mader_subgraph(g, k);
    REQUIRE(found);
    CHECK(vertex_connectivity(induced_subgraph(g, *found).graph) >= ceil_int(k / 4));
  }
}

TEST_CASE("shortest path") {
  auto p = shortest_path(cycle(6), 0, 3);
  REQUIRE(p);
  CHECK(p->size() == 4);
  CHECK(p->front() == 0);
  CHECK(p->back() == 3);
  CHECK(shortest_path(cycle(6), 2, 2)->size() == 1);
  CHECK_FALSE(shortest_path(disjoint_union(complete(2), complete(2)), 0, 3));
}

TEST_CASE("graph text format") {
  Graph p = petersen();
  CHECK(parse_graph(format_graph(p)) == p);
  CHECK(parse_graph("c comment\np 3 1\ne 2 0\n").edges() == std::vector<Edge>{{0, 2}});
  CHECK_THROWS_AS(parse_graph("p 3 2\ne 0 1\ne 1 0\n"), ParseError);
  CHECK_THROWS_AS(parse_graph("p 3 1\ne 1 1\n"), ParseError);
  CHECK_THROWS_AS(parse_graph("p 3 2\ne 0 1\n"), ParseError);
  CHECK_THROWS_AS(parse_graph("e 0 1\n"), ParseError);
  CHECK_THROWS_AS(parse_graph("p 3 1\ne 0 5\n"), ParseError);
}

TEST_CASE("rational parsing") {
  CHECK(parse_rational("4/5") == Rational(4, 5));
  CHECK(parse_rational("0.8") == Rational(4, 5));
  CHECK(parse_rational("3") == Rational(3));
  CHECK(to_string(Rational(6, 7)) == "6/7");
  CHECK_THROWS_AS(parse_rational("1/0"), DomainError);
  CHECK_THROWS_AS(parse_rational("abc"), DomainError);
}
