#include "mbgame/graph.hpp"

#include <algorithm>
#include <charconv>
#include <deque>
#include <numeric>
#include <sstream>

#include "mbgame/errors.hpp"

namespace mbgame {

Rational parse_rational(std::string_view text) {
  auto fail = [&] { return DomainError("invalid rational: '" + std::string(text) + "'"); };
  if (text.empty()) throw fail();
  auto parse_int = [&](std::string_view s) {
    std::int64_t v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size() || s.empty()) throw fail();
    return v;
  };
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    std::int64_t num = parse_int(text.substr(0, slash));
    std::int64_t den = parse_int(text.substr(slash + 1));
    if (den == 0) throw fail();
    return Rational(num, den);
  }
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    std::string_view whole = text.substr(0, dot);
    std::string_view frac = text.substr(dot + 1);
    if (frac.empty() || frac.size() > 15) throw fail();
    bool negative = !whole.empty() && whole.front() == '-';
    if (negative) whole.remove_prefix(1);
    std::int64_t w = whole.empty() ? 0 : parse_int(whole);
    std::int64_t f = parse_int(frac);
    std::int64_t den = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
    Rational r(w * den + f, den);
    return negative ? -r : r;
  }
  return Rational(parse_int(text));
}

std::string to_string(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

Graph::Graph(int n) : n_(n) {
  if (n < 0) throw DomainError("negative vertex count");
  build();
}

Graph::Graph(int n, std::span<const Edge> edges) : n_(n) {
  if (n < 0) throw DomainError("negative vertex count");
  edges_.reserve(edges.size());
  for (const Edge& e : edges) {
    if (e.u < 0 || e.v < 0 || e.u >= n || e.v >= n)
      throw DomainError("edge endpoint out of range: " + std::to_string(e.u) + " " +
                        std::to_string(e.v));
    if (e.u == e.v) throw DomainError("loop at vertex " + std::to_string(e.u));
    edges_.push_back(make_edge(e.u, e.v));
  }
  std::sort(edges_.begin(), edges_.end());
  if (auto it = std::adjacent_find(edges_.begin(), edges_.end()); it != edges_.end())
    throw DomainError("duplicate edge " + std::to_string(it->u) + " " + std::to_string(it->v));
  build();
}

Graph Graph::simple(int n, std::span<const Edge> edges) {
  std::vector<Edge> clean;
  clean.reserve(edges.size());
  for (const Edge& e : edges)
    if (e.u != e.v) clean.push_back(make_edge(e.u, e.v));
  std::sort(clean.begin(), clean.end());
  clean.erase(std::unique(clean.begin(), clean.end()), clean.end());
  return Graph(n, clean);
}

void Graph::build() {
  adj_.assign(n_, {});
  words_ = (static_cast<std::size_t>(n_) + 63) / 64;
  bits_.assign(words_ * n_, 0);
  for (const Edge& e : edges_) {
    adj_[e.u].push_back(e.v);
    adj_[e.v].push_back(e.u);
    bits_[e.u * words_ + e.v / 64] |= std::uint64_t{1} << (e.v % 64);
    bits_[e.v * words_ + e.u / 64] |= std::uint64_t{1} << (e.u % 64);
  }
  for (auto& a : adj_) std::sort(a.begin(), a.end());
}

bool Graph::adjacent(Vertex a, Vertex b) const {
  if (a < 0 || b < 0 || a >= n_ || b >= n_) return false;
  return (bits_[a * words_ + b / 64] >> (b % 64)) & 1U;
}

std::optional<int> Graph::edge_index(Vertex a, Vertex b) const {
  if (!adjacent(a, b)) return std::nullopt;
  Edge e = make_edge(a, b);
  auto it = std::lower_bound(edges_.begin(), edges_.end(), e);
  return static_cast<int>(it - edges_.begin());
}

std::uint64_t Graph::hash() const {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto mix = [&](const std::string& s) {
    for (unsigned char c : s) {
      h ^= c;
      h *= 0x100000001b3ULL;
    }
  };
  mix("p " + std::to_string(n_) + " " + std::to_string(edges_.size()) + "\n");
  for (const Edge& e : edges_) mix("e " + std::to_string(e.u) + " " + std::to_string(e.v) + "\n");
  return h;
}

VertexSet::VertexSet(int universe, std::vector<Vertex> members)
    : universe_(universe), members_(std::move(members)) {
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
  if (!members_.empty() && (members_.front() < 0 || members_.back() >= universe_))
    throw DomainError("vertex set member out of range");
}

VertexSet VertexSet::all(int universe) {
  std::vector<Vertex> m(universe);
  std::iota(m.begin(), m.end(), 0);
  return VertexSet(universe, std::move(m));
}

bool VertexSet::contains(Vertex v) const {
  return std::binary_search(members_.begin(), members_.end(), v);
}

std::vector<char> VertexSet::indicator() const {
  std::vector<char> in(universe_, 0);
  for (Vertex v : members_) in[v] = 1;
  return in;
}

bool is_valid_odd_cycle(const Graph& g, const OddCycleWitness& w) {
  const auto& c = w.vertices;
  if (c.size() < 3 || c.size() % 2 == 0) return false;
  std::vector<Vertex> sorted = c;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return false;
  for (std::size_t i = 0; i < c.size(); ++i)
    if (!g.adjacent(c[i], c[(i + 1) % c.size()])) return false;
  return true;
}

int min_degree(const Graph& g) {
  if (g.order() == 0) throw DomainError("min_degree of empty graph");
  int best = g.degree(0);
  for (Vertex v = 1; v < g.order(); ++v) best = std::min(best, g.degree(v));
  return best;
}

Subgraph induced_subgraph(const Graph& g, const VertexSet& u) {
  if (u.universe() != g.order()) throw DomainError("vertex set universe does not match graph");
  std::vector<int> local(g.order(), -1);
  const auto& members = u.members();
  for (std::size_t i = 0; i < members.size(); ++i) local[members[i]] = static_cast<int>(i);
  std::vector<Edge> edges;
  for (Vertex v : members)
    for (Vertex w : g.neighbors(v))
      if (v < w && local[w] >= 0) edges.push_back({local[v], local[w]});
  return Subgraph{Graph(static_cast<int>(members.size()), edges), members};
}

std::vector<Edge> cut_edges(const Graph& g, const VertexSet& a, const VertexSet& b) {
  if (a.universe() != g.order() || b.universe() != g.order())
    throw DomainError("vertex set universe does not match graph");
  auto in_b = b.indicator();
  for (Vertex v : a.members())
    if (in_b[v]) throw DomainError("cut_edges: sets overlap at vertex " + std::to_string(v));
  std::vector<Edge> out;
  for (Vertex v : a.members())
    for (Vertex w : g.neighbors(v))
      if (in_b[w]) out.push_back(make_edge(v, w));
  std::sort(out.begin(), out.end());
  return out;
}

int degree_into(const Graph& g, Vertex v, const std::vector<char>& inside) {
  int d = 0;
  for (Vertex w : g.neighbors(v)) d += inside[w] ? 1 : 0;
  return d;
}

OddCycleResult find_odd_cycle(const Graph& g) {
  const int n = g.order();
  std::vector<int> color(n, -1), parent(n, -1), depth(n, 0);
  std::deque<Vertex> queue;
  for (Vertex root = 0; root < n; ++root) {
    if (color[root] >= 0) continue;
    color[root] = 0;
    queue.push_back(root);
    while (!queue.empty()) {
      Vertex x = queue.front();
      queue.pop_front();
      for (Vertex y : g.neighbors(x)) {
        if (color[y] < 0) {
          color[y] = 1 - color[x];
          parent[y] = x;
          depth[y] = depth[x] + 1;
          queue.push_back(y);
        } else if (color[y] == color[x]) {
          // Walk both endpoints up to their lowest common ancestor.
          std::vector<Vertex> left{x}, right{y};
          Vertex a = x, b = y;
          while (depth[a] > depth[b]) left.push_back(a = parent[a]);
          while (depth[b] > depth[a]) right.push_back(b = parent[b]);
          while (a != b) {
            left.push_back(a = parent[a]);
            right.push_back(b = parent[b]);
          }
          right.pop_back();  // lca already ends `left`
          // lca .. x, then y .. (child of lca on y's branch)
          std::vector<Vertex> cycle(left.rbegin(), left.rend());
          cycle.insert(cycle.end(), right.begin(), right.end());
          return OddCycleResult{OddCycleWitness{std::move(cycle)}, std::nullopt};
        }
      }
    }
  }
  return OddCycleResult{std::nullopt, Bipartition{std::move(color)}};
}

std::vector<std::vector<Vertex>> connected_components(const Graph& g) {
  const int n = g.order();
  std::vector<int> seen(n, 0);
  std::vector<std::vector<Vertex>> comps;
  std::vector<Vertex> stack;
  for (Vertex root = 0; root < n; ++root) {
    if (seen[root]) continue;
    std::vector<Vertex> comp;
    seen[root] = 1;
    stack.push_back(root);
    while (!stack.empty()) {
      Vertex x = stack.back();
      stack.pop_back();
      comp.push_back(x);
      for (Vertex y : g.neighbors(x))
        if (!seen[y]) {
          seen[y] = 1;
          stack.push_back(y);
        }
    }
    std::sort(comp.begin(), comp.end());
    comps.push_back(std::move(comp));
  }
  return comps;
}

bool is_connected(const Graph& g) { return connected_components(g).size() <= 1; }

std::optional<std::vector<Vertex>> shortest_path(const Graph& g, Vertex from, Vertex to) {
  if (from < 0 || to < 0 || from >= g.order() || to >= g.order())
    throw DomainError("shortest_path: vertex out of range");
  std::vector<int> parent(g.order(), -2);
  std::deque<Vertex> queue{from};
  parent[from] = -1;
  while (!queue.empty() && parent[to] == -2) {
    Vertex x = queue.front();
    queue.pop_front();
    for (Vertex y : g.neighbors(x))
      if (parent[y] == -2) {
        parent[y] = x;
        queue.push_back(y);
      }
  }
  if (parent[to] == -2) return std::nullopt;
  std::vector<Vertex> path;
  for (Vertex x = to; x != -1; x = parent[x]) path.push_back(x);
  std::reverse(path.begin(), path.end());
  return path;
}

std::pair<VertexSet, VertexSet> unfriendly_partition(const Graph& g) {
  const int n = g.order();
  std::vector<int> side(n);
  for (Vertex v = 0; v < n; ++v) side[v] = v % 2;
  // across[v] = neighbours on the other side
  std::vector<int> across(n, 0);
  for (const Edge& e : g.edges())
    if (side[e.u] != side[e.v]) {
      ++across[e.u];
      ++across[e.v];
    }
  bool moved = true;
  while (moved) {
    moved = false;
    for (Vertex v = 0; v < n; ++v) {
      if (2 * across[v] >= g.degree(v)) continue;
      side[v] ^= 1;
      across[v] = g.degree(v) - across[v];
      for (Vertex w : g.neighbors(v)) across[w] += side[w] != side[v] ? 1 : -1;
      moved = true;
      break;  // restart from the lowest index
    }
  }
  std::vector<Vertex> x1, x2;
  for (Vertex v = 0; v < n; ++v) (side[v] == 0 ? x1 : x2).push_back(v);
  return {VertexSet(n, std::move(x1)), VertexSet(n, std::move(x2))};
}

}  // namespace mbgame
