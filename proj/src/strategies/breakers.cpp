#include <algorithm>
#include <numeric>

#include "mbgame/strategies.hpp"

namespace mbgame {

namespace {

// Degree weight of a board element: vertex degree, or endpoint degree sum.
int weight(const GameSpec& spec, int e) {
  const Graph& g = *spec.host;
  if (spec.board == BoardKind::Vertex) return g.degree(e);
  const Edge& ed = g.edges()[e];
  return g.degree(ed.u) + g.degree(ed.v);
}

// Appends the heaviest unclaimed elements not yet picked.
void fill_heaviest(const GameSpec& spec, const Position& pos, std::vector<int>& picks, int count) {
  if (static_cast<int>(picks.size()) >= count) return;
  std::vector<char> chosen(pos.board_size(), 0);
  for (int e : picks) chosen[e] = 1;
  std::vector<int> free;
  for (int e = 0; e < pos.board_size(); ++e)
    if (pos.owner(e) == Owner::None && !chosen[e]) free.push_back(e);
  std::stable_sort(free.begin(), free.end(), [&](int a, int b) { return weight(spec, a) > weight(spec, b); });
  for (int e : free) {
    if (static_cast<int>(picks.size()) >= count) break;
    picks.push_back(e);
  }
}

void add_unique(std::vector<int>& picks, std::vector<char>& chosen, int e, int count) {
  if (static_cast<int>(picks.size()) < count && !chosen[e]) {
    chosen[e] = 1;
    picks.push_back(e);
  }
}

// Components and a 2-colouring (per BFS tree) of Maker's graph on the host vertices.
struct MakerShape {
  std::vector<int> comp;
  std::vector<int> color;
  std::vector<char> owned_vertex;  // vertex board only
};

MakerShape maker_shape(const GameSpec& spec, const Position& pos) {
  const Graph& g = *spec.host;
  const int n = g.order();
  std::vector<std::vector<Vertex>> adj(n);
  MakerShape s;
  s.owned_vertex.assign(n, 0);
  if (spec.board == BoardKind::Edge) {
    for (int e : pos.claims(Player::Maker)) {
      const Edge& ed = g.edges()[e];
      adj[ed.u].push_back(ed.v);
      adj[ed.v].push_back(ed.u);
    }
  } else {
    for (int v : pos.claims(Player::Maker)) s.owned_vertex[v] = 1;
    for (int v : pos.claims(Player::Maker))
      for (Vertex w : g.neighbors(v))
        if (s.owned_vertex[w]) adj[v].push_back(w);
  }
  s.comp.assign(n, -1);
  s.color.assign(n, 0);
  int id = 0;
  for (Vertex r = 0; r < n; ++r) {
    if (s.comp[r] >= 0) continue;
    if (spec.board == BoardKind::Vertex && !s.owned_vertex[r]) continue;
    s.comp[r] = id;
    std::vector<Vertex> queue{r};
    for (std::size_t i = 0; i < queue.size(); ++i)
      for (Vertex w : adj[queue[i]])
        if (s.comp[w] < 0) {
          s.comp[w] = id;
          s.color[w] = s.color[queue[i]] ^ 1;
          queue.push_back(w);
        }
    ++id;
  }
  return s;
}

}  // namespace

void RandomBreaker::reset(const GameSpec&, Player, std::uint64_t seed) { rng_ = Rng(seed); }

std::optional<std::vector<int>> RandomBreaker::choose(const GameSpec& spec, const Position& pos, int count) {
  std::vector<int> free = legal_moves(spec, pos);
  std::vector<int> picks;
  for (int i = 0; i < count; ++i) {
    std::size_t j = i + rng_.below(free.size() - i);
    std::swap(free[i], free[j]);
    picks.push_back(free[i]);
  }
  return picks;
}

std::optional<std::vector<int>> BipartiteGuardBreaker::choose(const GameSpec& spec, const Position& pos, int count) {
  const Graph& g = *spec.host;
  MakerShape s = maker_shape(spec, pos);
  std::vector<int> picks;
  std::vector<char> chosen(pos.board_size(), 0);
  for (int e = 0; e < pos.board_size() && static_cast<int>(picks.size()) < count; ++e) {
    if (pos.owner(e) != Owner::None) continue;
    bool closes = false;
    if (spec.board == BoardKind::Edge) {
      const Edge& ed = g.edges()[e];
      closes = s.comp[ed.u] == s.comp[ed.v] && s.color[ed.u] == s.color[ed.v];
    } else {
      // Two Maker neighbours of opposite colours in one component.
      std::vector<std::pair<int, int>> seen;
      for (Vertex w : g.neighbors(e)) {
        if (!s.owned_vertex[w]) continue;
        for (const auto& [c, col] : seen)
          if (c == s.comp[w] && col != s.color[w]) closes = true;
        seen.emplace_back(s.comp[w], s.color[w]);
        if (closes) break;
      }
    }
    if (closes) add_unique(picks, chosen, e, count);
  }
  fill_heaviest(spec, pos, picks, count);
  return picks;
}

std::optional<std::vector<int>> CutAttackBreaker::choose(const GameSpec& spec, const Position& pos, int count) {
  const Graph& g = *spec.host;
  const int n = g.order();
  MakerShape s = maker_shape(spec, pos);
  int comps = 0;
  for (int c : s.comp) comps = std::max(comps, c + 1);

  // Unclaimed elements on the boundary of each Maker component.
  std::vector<std::vector<int>> boundary(comps);
  if (spec.board == BoardKind::Edge) {
    for (std::size_t e = 0; e < g.size(); ++e) {
      if (pos.owner(static_cast<int>(e)) != Owner::None) continue;
      const Edge& ed = g.edges()[e];
      if (s.comp[ed.u] == s.comp[ed.v]) continue;
      boundary[s.comp[ed.u]].push_back(static_cast<int>(e));
      boundary[s.comp[ed.v]].push_back(static_cast<int>(e));
    }
  } else {
    for (Vertex w = 0; w < n; ++w) {
      if (pos.owner(w) != Owner::None) continue;
      std::vector<int> touched;
      for (Vertex y : g.neighbors(w))
        if (s.owned_vertex[y] && std::find(touched.begin(), touched.end(), s.comp[y]) == touched.end())
          touched.push_back(s.comp[y]);
      for (int c : touched) boundary[c].push_back(w);
    }
  }

  std::vector<int> order(comps);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return boundary[a].size() < boundary[b].size(); });
  std::vector<int> picks;
  std::vector<char> chosen(pos.board_size(), 0);

  if (spec.board == BoardKind::Edge && comps == 1 && n > 1) {
    // Maker spans one component: attack a minimum cut of Maker + free edges.
    std::vector<Edge> live;
    for (std::size_t e = 0; e < g.size(); ++e)
      if (pos.owner(static_cast<int>(e)) != Owner::Breaker) live.push_back(g.edges()[e]);
    EdgeCut cut = min_edge_cut(Graph(n, live));
    std::vector<char> side(n, 0);
    for (Vertex v : cut.side) side[v] = 1;
    for (std::size_t e = 0; e < g.size(); ++e)
      if (pos.owner(static_cast<int>(e)) == Owner::None && side[g.edges()[e].u] != side[g.edges()[e].v])
        add_unique(picks, chosen, static_cast<int>(e), count);
  }
  for (int c : order)
    for (int e : boundary[c]) add_unique(picks, chosen, e, count);
  fill_heaviest(spec, pos, picks, count);
  return picks;
}

}  // namespace mbgame
