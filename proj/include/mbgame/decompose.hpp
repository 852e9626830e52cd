#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "mbgame/graph.hpp"

namespace mbgame {

struct DecomposeOptions {
  // Skip the chromatic-number hypothesis (testing hook).
  bool force = false;
  std::uint64_t seed = 0;
  // Parts up to this size get an exhaustive balanced-cut search.
  int exact_cut_limit = 20;
  int cut_restarts = 500;
  // Compute the edge connectivity of key2 cores (costly for large n).
  bool certify_key2_connectivity = true;
  ColoringOptions coloring;
};

struct PartCertificate {
  bool size_bound_met = false;
  int certified_connectivity = 0;  // vertex connectivity of the induced part
};

struct Partition {
  std::vector<VertexSet> parts;
  std::vector<PartCertificate> guarantee;
  int required_connectivity = 0;  // ceil(k^2 / 16n)
};

enum class ConnectivityKind { Vertex, Edge };

// Extra certificates for the vertex-game core.
struct Key2Stats {
  std::vector<Vertex> chromatic_clique;  // clique in G[A] of size > b+1, when one was found
  int min_degree = 0;                    // delta(H) over A u B
  int low_degree_count = 0;              // vertices below the near-full degree floor
  double low_degree_budget = 0;
  double degree_floor = 0;
  std::optional<std::int64_t> sparsest_cut_found;
};

struct BipartiteCore {
  VertexSet a;
  VertexSet b;
  std::optional<Edge> witness_edge;  // inside a
  int certified_connectivity = 0;
  ConnectivityKind connectivity_kind = ConnectivityKind::Vertex;
  int required_connectivity = 0;
  std::optional<Key2Stats> key2;
};

struct PartStats {
  int min_degree_inside = 0;
  int low_degree_count = 0;
  std::optional<std::int64_t> sparsest_balanced_cut;
};

struct RobustPartition {
  std::vector<VertexSet> parts;
  VertexSet moved_vertices;  // the bookkeeping set U
  std::vector<PartStats> stats;
  int splits = 0;
  double exception_budget = 0;  // 2 n^{3/4} / delta
  double degree_floor = 0;      // delta n - ceil(1/delta) n^{3/4}
};

struct BalancedCut {
  std::vector<Vertex> side;  // the shore containing the lowest vertex of the part
  std::int64_t crossing = 0;
};

// Sparsest cut of g[part] with both shores of at least min_side vertices.
// Exhaustive up to opts.exact_cut_limit vertices, otherwise randomized local
// search. When `stop_below` is set the search returns the first cut whose
// crossing count is strictly below it.
std::optional<BalancedCut> sparsest_balanced_cut(const Graph& g, const std::vector<Vertex>& part,
                                                 int min_side, const DecomposeOptions& opts,
                                                 std::optional<std::int64_t> stop_below = {});

// Parts of size >= k/8 inducing ceil(k^2/16n)-vertex-connected subgraphs.
Partition bfkm_partition(const Graph& h, int k);

// Bipartite highly connected core H = (A u B, E(A,B)) with an edge inside A.
BipartiteCore extract_bipartite_core(const Graph& g, const Rational& delta,
                                     const DecomposeOptions& opts = {});

RobustPartition robust_partition(const Graph& g, const Rational& delta,
                                 const DecomposeOptions& opts = {});

// Vertex-game core: chi(G[A]) > b+1 and delta(H) >= delta^2 n / 2.
BipartiteCore key2_extract(const Graph& g, const Rational& delta, int b,
                           const DecomposeOptions& opts = {});

// H on the host's vertex labels: exactly the edges of g between a and b.
Graph core_graph(const Graph& g, const BipartiteCore& core);

}  // namespace mbgame
