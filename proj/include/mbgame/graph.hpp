#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mbgame/rational.hpp"

namespace mbgame {

using Vertex = int;

struct Edge {
  Vertex u = 0;
  Vertex v = 0;

  auto operator<=>(const Edge&) const = default;
};

// Canonical orientation u < v.
inline Edge make_edge(Vertex a, Vertex b) { return a < b ? Edge{a, b} : Edge{b, a}; }

// Simple undirected graph on vertices 0..n-1. Immutable once built.
// Edges are stored sorted lexicographically with u < v; the position of an
// edge in edges() is its board index in edge games.
class Graph {
 public:
  Graph() = default;
  explicit Graph(int n);
  // Throws DomainError on loops, duplicates or out-of-range endpoints.
  Graph(int n, std::span<const Edge> edges);
  // Same as above but silently drops loops and duplicate edges.
  static Graph simple(int n, std::span<const Edge> edges);

  int order() const { return n_; }
  std::size_t size() const { return edges_.size(); }
  const std::vector<Edge>& edges() const { return edges_; }
  std::span<const Vertex> neighbors(Vertex v) const { return adj_[v]; }
  int degree(Vertex v) const { return static_cast<int>(adj_[v].size()); }
  bool adjacent(Vertex a, Vertex b) const;
  std::optional<int> edge_index(Vertex a, Vertex b) const;

  // FNV-1a over the canonical text form; stable across platforms.
  std::uint64_t hash() const;

  bool operator==(const Graph& other) const { return n_ == other.n_ && edges_ == other.edges_; }

 private:
  void build();

  int n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<Vertex>> adj_;
  std::vector<std::uint64_t> bits_;  // n_ rows of words_ words
  std::size_t words_ = 0;
};

// Sorted duplicate-free subset of [0, universe).
class VertexSet {
 public:
  VertexSet() = default;
  // Throws DomainError on out-of-range members. Duplicates are merged.
  VertexSet(int universe, std::vector<Vertex> members);
  static VertexSet all(int universe);

  int universe() const { return universe_; }
  const std::vector<Vertex>& members() const { return members_; }
  std::size_t size() const { return members_.size(); }
  bool empty() const { return members_.empty(); }
  bool contains(Vertex v) const;
  std::vector<char> indicator() const;

  bool operator==(const VertexSet&) const = default;

 private:
  int universe_ = 0;
  std::vector<Vertex> members_;
};

struct OddCycleWitness {
  std::vector<Vertex> vertices;  // cyclic order
};

// Validates odd length >= 3, distinct vertices and cyclic adjacency in g.
bool is_valid_odd_cycle(const Graph& g, const OddCycleWitness& w);

struct Subgraph {
  Graph graph;
  std::vector<Vertex> to_parent;  // local id -> parent id
};

int min_degree(const Graph& g);
Subgraph induced_subgraph(const Graph& g, const VertexSet& u);
std::vector<Edge> cut_edges(const Graph& g, const VertexSet& a, const VertexSet& b);
// Number of neighbours of v inside the set marked by `inside`.
int degree_into(const Graph& g, Vertex v, const std::vector<char>& inside);

struct Bipartition {
  std::vector<int> color;  // 0/1 per vertex, proper on every component
};

struct OddCycleResult {
  std::optional<OddCycleWitness> cycle;
  std::optional<Bipartition> bipartition;
  bool bipartite() const { return bipartition.has_value(); }
};

OddCycleResult find_odd_cycle(const Graph& g);

// Connected components, each sorted, ordered by smallest vertex.
std::vector<std::vector<Vertex>> connected_components(const Graph& g);
bool is_connected(const Graph& g);

std::optional<std::vector<Vertex>> shortest_path(const Graph& g, Vertex from, Vertex to);

// ---- colouring ----

struct ColoringOptions {
  int vertex_cap = 64;
};

int chromatic_number(const Graph& g, const ColoringOptions& opts = {});
// Certificate present iff colourable; colours are in [0, k).
std::optional<std::vector<int>> is_k_colorable(const Graph& g, int k);
bool is_proper_coloring(const Graph& g, std::span<const int> color, int k);
// Greedy clique (lower bound for chi), sorted.
std::vector<Vertex> greedy_clique(const Graph& g);
// Number of colours used by DSATUR (upper bound for chi).
int greedy_color_count(const Graph& g);

// Decides chi(g) > k. Cheap clique/greedy bounds first, exact search only
// when g has at most cap vertices; otherwise ResourceError.
bool chromatic_exceeds(const Graph& g, int k, const ColoringOptions& opts = {});

// ---- connectivity ----

struct EdgeCut {
  int value = 0;
  std::vector<Vertex> side;  // one shore of a minimum cut
};

int edge_connectivity(const Graph& g);
EdgeCut min_edge_cut(const Graph& g);
int local_edge_connectivity(const Graph& g, Vertex s, Vertex t);

struct VertexCut {
  int value = 0;
  std::vector<Vertex> separator;  // empty for complete graphs and disconnected ones
};

int vertex_connectivity(const Graph& g);
VertexCut min_vertex_cut(const Graph& g);
int local_vertex_connectivity(const Graph& g, Vertex s, Vertex t);

// ---- partitions and dense subgraphs ----

// Local search maximising the cut; every vertex ends with at least half of
// its neighbours on the other side.
std::pair<VertexSet, VertexSet> unfriendly_partition(const Graph& g);

// Returns a vertex set inducing a ceil(k/4)-vertex-connected subgraph, or
// nullopt when the search exhausts.
std::optional<VertexSet> mader_subgraph(const Graph& g, const Rational& k);

}  // namespace mbgame
