#include "mbgame/decompose.hpp"

#include <algorithm>
#include <cmath>

#include "mbgame/errors.hpp"

namespace mbgame {

namespace {

void require_delta(const Rational& delta) {
  if (delta <= 0 || delta >= 1) throw DomainError("delta must lie in (0,1), got " + to_string(delta));
}

void require_min_degree(const Graph& g, const Rational& delta) {
  if (g.order() == 0) throw DomainError("empty graph");
  if (Rational(min_degree(g)) < delta * g.order())
    throw PreconditionError("min degree " + std::to_string(min_degree(g)) + " is below delta*n = " +
                            to_string(delta * g.order()));
}

// chi(g) > threshold, decided exactly or ResourceError.
void require_chromatic_above(const Graph& g, const Rational& threshold, const ColoringOptions& opts) {
  std::int64_t k = floor_int(threshold);
  if (k >= g.order())
    throw PreconditionError("chi(G) > " + to_string(threshold) + " is impossible on " +
                            std::to_string(g.order()) + " vertices");
  if (!chromatic_exceeds(g, static_cast<int>(k), opts))
    throw PreconditionError("chi(G) <= " + std::to_string(k) + ", hypothesis chi(G) > " +
                            to_string(threshold) + " fails");
}

std::vector<Vertex> lift(const Subgraph& sub, const VertexSet& local) {
  std::vector<Vertex> out;
  for (Vertex x : local.members()) out.push_back(sub.to_parent[x]);
  return out;
}

int edges_into(const Graph& g, Vertex v, const std::vector<int>& part_of, int part) {
  int d = 0;
  for (Vertex w : g.neighbors(v)) d += part_of[w] == part ? 1 : 0;
  return d;
}

// d > n^{3/4}  <=>  d^4 > n^3 for d >= 0; exact while d <= n < 46000.
bool exceeds_three_quarter_power(std::int64_t d, std::int64_t n) {
  if (d <= 0) return false;
  return d * d * d * d > n * n * n;
}

}  // namespace

Partition bfkm_partition(const Graph& h, int k) {
  if (k <= 0) throw DomainError("bfkm_partition: k must be positive");
  if (h.order() == 0 || min_degree(h) < k)
    throw DomainError("bfkm_partition: min degree below k = " + std::to_string(k));
  const int n = h.order();
  const int required = static_cast<int>(ceil_int(Rational(std::int64_t{k} * k, 16LL * n)));
  const Rational half_k(k, 2);

  std::vector<int> part_of(n, -1);
  std::vector<std::vector<Vertex>> parts;

  auto uncovered = [&] {
    std::vector<Vertex> rest;
    for (Vertex v = 0; v < n; ++v)
      if (part_of[v] < 0) rest.push_back(v);
    return rest;
  };
  auto seed_core = [&](const Rational& param) -> bool {
    std::vector<Vertex> rest = uncovered();
    if (rest.empty()) return false;
    Subgraph sub = induced_subgraph(h, VertexSet(n, rest));
    auto core = mader_subgraph(sub.graph, param);
    if (!core) return false;
    std::vector<Vertex> members = lift(sub, *core);
    if (8 * static_cast<std::int64_t>(members.size()) < k) return false;
    for (Vertex v : members) part_of[v] = static_cast<int>(parts.size());
    parts.push_back(std::move(members));
    return true;
  };

  // Phase 1: a maximal family of ceil(k/8)-connected cores.
  while (seed_core(half_k)) {
  }

  // Phase 2: absorb vertices with enough neighbours in some part, re-seeding
  // from the uncovered remainder whenever absorption stalls.
  while (true) {
    bool absorbed = true;
    while (absorbed) {
      absorbed = false;
      for (Vertex v = 0; v < n; ++v) {
        if (part_of[v] >= 0) continue;
        for (int i = 0; i < static_cast<int>(parts.size()); ++i)
          if (edges_into(h, v, part_of, i) >= required) {
            part_of[v] = i;
            parts[i].push_back(v);
            absorbed = true;
            break;
          }
      }
    }
    if (uncovered().empty()) break;
    if (!seed_core(half_k) && !seed_core(Rational(4 * required)))
      throw InternalError("bfkm_partition: absorption stalled and no core could be re-seeded");
  }

  Partition out;
  out.required_connectivity = required;
  for (auto& members : parts) {
    VertexSet set(n, members);
    PartCertificate cert;
    cert.size_bound_met = 8 * static_cast<std::int64_t>(set.size()) >= k;
    Subgraph sub = induced_subgraph(h, set);
    cert.certified_connectivity = sub.graph.order() >= 2 ? vertex_connectivity(sub.graph) : 0;
    if (!cert.size_bound_met || cert.certified_connectivity < required)
      throw InternalError("bfkm_partition: part certificate failed");
    out.parts.push_back(std::move(set));
    out.guarantee.push_back(cert);
  }
  return out;
}

Graph core_graph(const Graph& g, const BipartiteCore& core) {
  return Graph(g.order(), cut_edges(g, core.a, core.b));
}

BipartiteCore extract_bipartite_core(const Graph& g, const Rational& delta,
                                     const DecomposeOptions& opts) {
  require_delta(delta);
  require_min_degree(g, delta);
  if (!opts.force) require_chromatic_above(g, Rational(32) / delta, opts.coloring);
  const int n = g.order();

  auto [x1, x2] = unfriendly_partition(g);
  Graph crossing(n, cut_edges(g, x1, x2));
  const int k = static_cast<int>(ceil_int(delta * n / 2));
  Partition partition = bfkm_partition(crossing, k);
  auto in_x1 = x1.indicator();

  for (const VertexSet& part : partition.parts) {
    Subgraph sub = induced_subgraph(g, part);
    if (find_odd_cycle(sub.graph).bipartite()) continue;
    std::vector<Vertex> left, right;
    for (Vertex v : part.members()) (in_x1[v] ? left : right).push_back(v);
    VertexSet a(n, left), b(n, right);
    auto first_inside = [&](const VertexSet& side) -> std::optional<Edge> {
      auto in = side.indicator();
      for (const Edge& e : g.edges())
        if (in[e.u] && in[e.v]) return e;
      return std::nullopt;
    };
    auto witness = first_inside(a);
    if (!witness) {
      std::swap(a, b);
      witness = first_inside(a);
    }
    if (!witness) throw InternalError("non-bipartite part without an inner edge");

    BipartiteCore core;
    core.a = std::move(a);
    core.b = std::move(b);
    core.witness_edge = witness;
    core.connectivity_kind = ConnectivityKind::Vertex;
    core.required_connectivity = static_cast<int>(ceil_int(delta * delta * n / 64));
    Graph h = core_graph(g, core);
    Subgraph hs = induced_subgraph(h, part);
    core.certified_connectivity = hs.graph.order() >= 2 ? vertex_connectivity(hs.graph) : 0;
    if (core.certified_connectivity < core.required_connectivity)
      throw InternalError("core connectivity certificate failed");
    if (!find_odd_cycle(hs.graph).bipartite()) throw InternalError("core is not bipartite");
    return core;
  }
  throw PreconditionError("no part of the decomposition is non-2-colorable");
}

RobustPartition robust_partition(const Graph& g, const Rational& delta, const DecomposeOptions& opts) {
  require_delta(delta);
  require_min_degree(g, delta);
  const int n = g.order();
  if (n >= 46000) throw ResourceError("robust_partition: n too large for exact thresholds");
  const std::int64_t n3 = static_cast<std::int64_t>(n) * n * n;
  const int min_side = static_cast<int>(ceil_int(delta * n));
  const std::int64_t max_splits = ceil_int(Rational(1) / delta);

  std::vector<std::vector<Vertex>> parts{VertexSet::all(n).members()};
  std::vector<std::optional<std::optional<BalancedCut>>> searched(1);
  std::vector<char> in_u(n, 0);
  int splits = 0;
  std::uint64_t round = 0;

  // A cut is sparse when crossing < n^{3/2}, i.e. crossing^2 < n^3; the
  // smallest non-sparse count is ceil(n^{3/2}).
  const std::int64_t sparse_limit = static_cast<std::int64_t>(std::ceil(std::sqrt(static_cast<double>(n3))));
  auto is_sparse = [&](std::int64_t crossing) { return crossing * crossing < n3; };

  while (true) {
    bool split = false;
    for (std::size_t i = 0; i < parts.size() && !split; ++i) {
      if (!searched[i]) {
        DecomposeOptions local = opts;
        local.seed = opts.seed ^ (0x9e3779b97f4a7c15ULL * ++round);
        searched[i] = sparsest_balanced_cut(g, parts[i], min_side, local, sparse_limit);
      }
      const auto& cut = *searched[i];
      if (!cut || !is_sparse(cut->crossing)) continue;

      std::vector<char> in_part(n, 0), in_a(n, 0);
      for (Vertex v : parts[i]) in_part[v] = 1;
      for (Vertex v : cut->side) in_a[v] = 1;
      std::vector<Vertex> a, b;
      for (Vertex v : parts[i]) (in_a[v] ? a : b).push_back(v);
      for (Vertex v : parts[i]) {
        int whole = degree_into(g, v, in_part);
        int kept = 0;
        for (Vertex w : g.neighbors(v)) kept += (in_part[w] && in_a[w] == in_a[v]) ? 1 : 0;
        if (exceeds_three_quarter_power(whole - kept, n)) in_u[v] = 1;
      }
      parts[i] = std::move(a);
      parts.insert(parts.begin() + static_cast<std::ptrdiff_t>(i) + 1, std::move(b));
      searched[i].reset();
      searched.insert(searched.begin() + static_cast<std::ptrdiff_t>(i) + 1, std::nullopt);
      ++splits;
      split = true;
    }
    if (!split) break;
    if (splits > max_splits) throw InternalError("robust_partition: split bound exceeded");
  }

  std::vector<int> part_of(n, -1);
  for (std::size_t i = 0; i < parts.size(); ++i)
    for (Vertex v : parts[i]) part_of[v] = static_cast<int>(i);
  const Rational floor_ii = delta * delta * n;
  auto deficient = [&](Vertex v) { return Rational(edges_into(g, v, part_of, part_of[v])) < floor_ii; };
  auto relocate = [&](Vertex v) {
    for (int j = 0; j < static_cast<int>(parts.size()); ++j)
      if (Rational(edges_into(g, v, part_of, j)) >= floor_ii) {
        part_of[v] = j;
        return;
      }
    throw PreconditionError("vertex " + std::to_string(v) + " has no part with delta^2 n neighbours");
  };

  for (Vertex u = 0; u < n; ++u)
    if (in_u[u] && deficient(u)) relocate(u);
  // Each move strictly increases the number of edges inside parts, so this
  // reaches a fixpoint where every vertex has delta^2 n neighbours at home.
  bool moved = true;
  while (moved) {
    moved = false;
    for (Vertex v = 0; v < n; ++v)
      if (deficient(v)) {
        in_u[v] = 1;
        relocate(v);
        moved = true;
      }
  }

  RobustPartition out;
  out.splits = splits;
  out.exception_budget = 2.0 * std::pow(static_cast<double>(n), 0.75) / to_double(delta);
  out.degree_floor = to_double(delta) * n -
                     static_cast<double>(max_splits) * std::pow(static_cast<double>(n), 0.75);
  std::vector<Vertex> moved_list;
  for (Vertex v = 0; v < n; ++v)
    if (in_u[v]) moved_list.push_back(v);
  out.moved_vertices = VertexSet(n, moved_list);

  for (std::size_t i = 0; i < parts.size(); ++i) {
    std::vector<Vertex> members;
    for (Vertex v = 0; v < n; ++v)
      if (part_of[v] == static_cast<int>(i)) members.push_back(v);
    if (members.empty()) continue;
    PartStats stats;
    stats.min_degree_inside = n;
    for (Vertex v : members) {
      int d = edges_into(g, v, part_of, static_cast<int>(i));
      stats.min_degree_inside = std::min(stats.min_degree_inside, d);
      if (d < out.degree_floor) ++stats.low_degree_count;
    }
    if (searched[i] && *searched[i]) stats.sparsest_balanced_cut = (*searched[i])->crossing;
    if (Rational(stats.min_degree_inside) < floor_ii)
      throw InternalError("robust_partition: pointwise degree certificate failed");
    out.parts.emplace_back(n, std::move(members));
    out.stats.push_back(stats);
  }
  return out;
}

BipartiteCore key2_extract(const Graph& g, const Rational& delta, int b, const DecomposeOptions& opts) {
  require_delta(delta);
  if (b < 1) throw DomainError("key2_extract: b must be positive");
  require_min_degree(g, delta);
  const int n = g.order();
  const Rational threshold = Rational(2 * (b + 1)) / delta;
  if (threshold >= n)
    throw PreconditionError("2(b+1)/delta = " + to_string(threshold) + " is at least n");
  if (!opts.force) require_chromatic_above(g, threshold, opts.coloring);

  RobustPartition robust = robust_partition(g, delta, opts);
  for (const VertexSet& part : robust.parts) {
    Subgraph sub = induced_subgraph(g, part);
    auto [left, right] = unfriendly_partition(sub.graph);
    VertexSet sides[2] = {VertexSet(n, lift(sub, left)), VertexSet(n, lift(sub, right))};
    for (int s = 0; s < 2; ++s) {
      Graph side_graph = induced_subgraph(g, sides[s]).graph;
      if (!chromatic_exceeds(side_graph, b + 1, opts.coloring)) continue;

      BipartiteCore core;
      core.a = sides[s];
      core.b = sides[1 - s];
      core.connectivity_kind = ConnectivityKind::Edge;
      Key2Stats stats;
      auto clique = greedy_clique(side_graph);
      if (static_cast<int>(clique.size()) > b + 1)
        for (Vertex x : clique) stats.chromatic_clique.push_back(core.a.members()[x]);

      Graph h = core_graph(g, core);
      Subgraph hs = induced_subgraph(h, part);
      stats.min_degree = min_degree(hs.graph);
      if (Rational(stats.min_degree) < delta * delta * n / 2)
        throw InternalError("key2_extract: delta(H) >= delta^2 n / 2 certificate failed");
      stats.degree_floor = robust.degree_floor / 2;
      stats.low_degree_budget = robust.exception_budget;
      for (Vertex v = 0; v < hs.graph.order(); ++v)
        if (hs.graph.degree(v) < stats.degree_floor) ++stats.low_degree_count;
      int cut_side = static_cast<int>(ceil_int(delta * n / 2));
      if (auto cut = sparsest_balanced_cut(hs.graph, VertexSet::all(hs.graph.order()).members(),
                                           cut_side, opts))
        stats.sparsest_cut_found = cut->crossing;
      core.required_connectivity = 0;
      core.certified_connectivity = (opts.certify_key2_connectivity && hs.graph.order() >= 2)
                                        ? edge_connectivity(hs.graph)
                                        : 0;
      core.key2 = std::move(stats);
      return core;
    }
  }
  throw PreconditionError("no part has a side with chi > b+1");
}

}  // namespace mbgame
