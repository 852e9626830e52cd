#include "mbgame/engine.hpp"

#include <algorithm>
#include <charconv>
#include <exception>

#include "mbgame/errors.hpp"
#include "mbgame/rng.hpp"

namespace mbgame {

std::string_view to_string(Player p) { return p == Player::Maker ? "maker" : "breaker"; }
std::string_view to_string(BoardKind b) { return b == BoardKind::Edge ? "edge" : "vertex"; }

Player parse_player(std::string_view s) {
  if (s == "maker") return Player::Maker;
  if (s == "breaker") return Player::Breaker;
  throw ParseError("unknown player '" + std::string(s) + "'");
}

BoardKind parse_board(std::string_view s) {
  if (s == "edge") return BoardKind::Edge;
  if (s == "vertex") return BoardKind::Vertex;
  throw ParseError("unknown board kind '" + std::string(s) + "'");
}

namespace {

int parse_int(std::string_view s) {
  int value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) throw ParseError("bad integer '" + std::string(s) + "'");
  return value;
}

}  // namespace

std::string WinPredicate::describe() const {
  switch (kind) {
    case Kind::OddCycle:
      return "odd-cycle";
    case Kind::NonKColorable:
      return "non-" + std::to_string(k) + "-colorable";
    case Kind::SpanningConnected:
      return "spanning-connected";
    case Kind::Connectivity:
      return "connectivity-" + std::to_string(k);
    case Kind::AuxGHM: {
      std::string out = "aux-ghm:";
      for (std::size_t i = 0; i < fixed.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(fixed[i]);
      }
      return out;
    }
  }
  return {};
}

WinPredicate WinPredicate::parse(std::string_view text) {
  if (text == "odd-cycle") return odd_cycle();
  if (text == "spanning-connected") return spanning_connected();
  if (text.starts_with("connectivity-")) return connectivity(parse_int(text.substr(13)));
  if (text.starts_with("non-") && text.ends_with("-colorable"))
    return non_k_colorable(parse_int(text.substr(4, text.size() - 4 - 10)));
  if (text.starts_with("aux-ghm:")) {
    std::vector<Vertex> m;
    std::string_view rest = text.substr(8);
    while (!rest.empty()) {
      std::size_t comma = rest.find(',');
      m.push_back(parse_int(rest.substr(0, comma)));
      if (comma == std::string_view::npos) break;
      rest = rest.substr(comma + 1);
    }
    return aux_ghm(std::move(m));
  }
  throw ParseError("unknown objective '" + std::string(text) + "'");
}

int GameSpec::board_size() const {
  if (!host) return 0;
  return board == BoardKind::Edge ? static_cast<int>(host->size()) : host->order();
}

void GameSpec::validate() const {
  if (!host) throw DomainError("game has no host graph");
  if (maker_bias < 1 || breaker_bias < 1) throw DomainError("biases must be positive");
  using K = WinPredicate::Kind;
  switch (objective.kind) {
    case K::OddCycle:
      break;
    case K::NonKColorable:
      if (objective.k < 1) throw DomainError("NonKColorable needs k >= 1");
      break;
    case K::SpanningConnected:
    case K::Connectivity:
      if (board != BoardKind::Edge) throw DomainError("connectivity objectives need an edge board");
      if (objective.kind == K::Connectivity && objective.k < 1) throw DomainError("Connectivity needs k >= 1");
      break;
    case K::AuxGHM: {
      if (board != BoardKind::Vertex) throw DomainError("AuxGHM needs a vertex board");
      if (objective.fixed.empty()) throw DomainError("AuxGHM needs a non-empty fixed set");
      VertexSet check(host->order(), objective.fixed);
      if (check.size() != objective.fixed.size()) throw DomainError("AuxGHM fixed set has duplicates");
      break;
    }
  }
}

GameSpec make_game(Graph host, BoardKind board, int maker_bias, int breaker_bias, WinPredicate objective,
                   Player first) {
  GameSpec spec;
  spec.host = std::make_shared<const Graph>(std::move(host));
  spec.board = board;
  spec.maker_bias = maker_bias;
  spec.breaker_bias = breaker_bias;
  spec.first = first;
  spec.objective = std::move(objective);
  spec.validate();
  return spec;
}

Position::Position(const GameSpec& spec)
    : owner_(static_cast<std::size_t>(spec.board_size()), Owner::None), to_move_(spec.first) {}

void Position::claim(Player p, int element) {
  owner_[element] = p == Player::Maker ? Owner::Maker : Owner::Breaker;
  (p == Player::Maker ? maker_ : breaker_).push_back(element);
}

struct PositionAccess {
  static void claim(Position& pos, Player p, int element) { pos.claim(p, element); }
  static void finish_turn(Position& pos, Turn turn) {
    pos.to_move_ = opponent(turn.player);
    pos.log_.push_back(std::move(turn));
  }
};

namespace {

void require_consistent(const GameSpec& spec, const Position& pos) {
  if (pos.board_size() != spec.board_size()) throw DomainError("position does not match the game board");
}

// nullopt when the batch is acceptable.
std::optional<IllegalMove> check_batch(const GameSpec& spec, const Position& pos, Player player,
                                       const std::vector<int>& elements) {
  if (player != pos.to_move())
    return IllegalMove(std::string(to_string(player)) + " moved out of turn", -1);
  const int required = std::min(spec.bias(player), pos.unclaimed_count());
  if (static_cast<int>(elements.size()) != required)
    return IllegalMove("expected " + std::to_string(required) + " elements, got " +
                           std::to_string(elements.size()),
                       elements.empty() ? -1 : elements.front());
  std::vector<char> seen(static_cast<std::size_t>(pos.board_size()), 0);
  for (int e : elements) {
    if (e < 0 || e >= pos.board_size()) return IllegalMove("element out of range", e);
    if (pos.owner(e) != Owner::None) return IllegalMove("element already claimed", e);
    if (seen[e]) return IllegalMove("element repeated in one turn", e);
    seen[e] = 1;
  }
  return std::nullopt;
}

std::vector<Vertex> with_fixed(const GameSpec& spec, const std::vector<int>& claims) {
  std::vector<Vertex> vs(claims.begin(), claims.end());
  if (spec.objective.kind == WinPredicate::Kind::AuxGHM)
    vs.insert(vs.end(), spec.objective.fixed.begin(), spec.objective.fixed.end());
  return vs;
}

Graph edge_graph(const GameSpec& spec, const std::vector<int>& claims) {
  std::vector<Edge> edges;
  edges.reserve(claims.size());
  for (int e : claims) edges.push_back(spec.host->edges()[e]);
  return Graph::simple(spec.host->order(), edges);
}

std::optional<std::vector<Vertex>> find_triangle(const Graph& g) {
  for (const Edge& e : g.edges())
    for (Vertex w : g.neighbors(e.u))
      if (w > e.v && g.adjacent(w, e.v)) return std::vector<Vertex>{e.u, e.v, w};
  return std::nullopt;
}

std::vector<Edge> spanning_forest(const Graph& g) {
  std::vector<Edge> out;
  std::vector<char> seen(g.order(), 0);
  for (Vertex s = 0; s < g.order(); ++s) {
    if (seen[s]) continue;
    seen[s] = 1;
    std::vector<Vertex> stack{s};
    while (!stack.empty()) {
      Vertex v = stack.back();
      stack.pop_back();
      for (Vertex w : g.neighbors(v))
        if (!seen[w]) {
          seen[w] = 1;
          out.push_back(make_edge(v, w));
          stack.push_back(w);
        }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::optional<Witness> edge_win(const GameSpec& spec, const std::vector<int>& claims) {
  using K = WinPredicate::Kind;
  Graph mg = edge_graph(spec, claims);
  switch (spec.objective.kind) {
    case K::OddCycle: {
      auto r = find_odd_cycle(mg);
      if (!r.cycle) return std::nullopt;
      return Witness{Witness::Kind::OddCycle, r.cycle->vertices, {}};
    }
    case K::NonKColorable:
      if (spec.objective.k >= 2 && find_odd_cycle(mg).bipartite()) return std::nullopt;
      if (is_k_colorable(mg, spec.objective.k)) return std::nullopt;
      return Witness{Witness::Kind::Edges, {}, mg.edges()};
    case K::SpanningConnected:
      if (!is_connected(mg)) return std::nullopt;
      return Witness{Witness::Kind::Edges, {}, spanning_forest(mg)};
    case K::Connectivity:
      if (mg.order() > 1 && (!is_connected(mg) || edge_connectivity(mg) < spec.objective.k)) return std::nullopt;
      return Witness{Witness::Kind::Edges, {}, mg.edges()};
    case K::AuxGHM:
      break;
  }
  throw DomainError("objective not available on an edge board");
}

std::optional<Witness> vertex_win(const GameSpec& spec, const std::vector<int>& claims) {
  using K = WinPredicate::Kind;
  VertexSet set(spec.host->order(), with_fixed(spec, claims));
  Subgraph sub = induced_subgraph(*spec.host, set);
  auto lift = [&](const std::vector<Vertex>& local) {
    std::vector<Vertex> out;
    for (Vertex v : local) out.push_back(sub.to_parent[v]);
    return out;
  };
  switch (spec.objective.kind) {
    case K::OddCycle: {
      auto r = find_odd_cycle(sub.graph);
      if (!r.cycle) return std::nullopt;
      return Witness{Witness::Kind::OddCycle, lift(r.cycle->vertices), {}};
    }
    case K::NonKColorable:
      if (spec.objective.k >= 2 && find_odd_cycle(sub.graph).bipartite()) return std::nullopt;
      if (is_k_colorable(sub.graph, spec.objective.k)) return std::nullopt;
      return Witness{Witness::Kind::Vertices, set.members(), {}};
    case K::AuxGHM: {
      if (auto t = find_triangle(sub.graph)) return Witness{Witness::Kind::OddCycle, lift(*t), {}};
      std::vector<char> in_m(spec.host->order(), 0);
      for (Vertex v : spec.objective.fixed) in_m[v] = 1;
      for (const auto& comp : connected_components(sub.graph)) {
        std::vector<Vertex> host_comp = lift(comp);
        int hits = 0;
        for (Vertex v : host_comp) hits += in_m[v];
        if (hits == static_cast<int>(spec.objective.fixed.size()))
          return Witness{Witness::Kind::Vertices, host_comp, {}};
        if (hits > 0) break;
      }
      return std::nullopt;
    }
    case K::SpanningConnected:
    case K::Connectivity:
      break;
  }
  throw DomainError("objective not available on a vertex board");
}

}  // namespace

std::vector<int> legal_moves(const GameSpec& spec, const Position& pos) {
  require_consistent(spec, pos);
  std::vector<int> out;
  for (int e = 0; e < pos.board_size(); ++e)
    if (pos.owner(e) == Owner::None) out.push_back(e);
  return out;
}

Position apply_moves(const GameSpec& spec, const Position& pos, Player player, const std::vector<int>& elements) {
  require_consistent(spec, pos);
  if (auto err = check_batch(spec, pos, player, elements)) throw *err;
  Position next = pos;
  for (int e : elements) next.claim(player, e);
  PositionAccess::finish_turn(next, Turn{player, elements, 0});
  return next;
}

std::optional<Witness> maker_win(const GameSpec& spec, const std::vector<int>& maker_elements) {
  return spec.board == BoardKind::Edge ? edge_win(spec, maker_elements) : vertex_win(spec, maker_elements);
}

Evaluation evaluate(const GameSpec& spec, const Position& pos) {
  require_consistent(spec, pos);
  Evaluation out;
  if (auto w = maker_win(spec, pos.claims(Player::Maker))) {
    out.status = Evaluation::Status::MakerWon;
    out.witness = std::move(w);
  } else if (pos.unclaimed_count() == 0) {
    out.status = Evaluation::Status::BoardExhausted;
  }
  return out;
}

bool validate_witness(const GameSpec& spec, const std::vector<int>& maker_elements, const Witness& w) {
  using K = WinPredicate::Kind;
  const Graph& host = *spec.host;
  const int n = host.order();
  std::vector<char> owned(static_cast<std::size_t>(spec.board_size()), 0);
  for (int e : maker_elements) {
    if (e < 0 || e >= spec.board_size()) return false;
    owned[e] = 1;
  }
  std::vector<char> vertex_ok(n, 0);
  if (spec.board == BoardKind::Vertex) {
    for (Vertex v : with_fixed(spec, maker_elements)) vertex_ok[v] = 1;
  }
  auto edge_owned = [&](Vertex a, Vertex b) {
    if (a < 0 || b < 0 || a >= n || b >= n) return false;
    auto idx = host.edge_index(a, b);
    if (!idx) return false;
    return spec.board == BoardKind::Edge ? owned[*idx] != 0 : (vertex_ok[a] && vertex_ok[b]);
  };

  switch (w.kind) {
    case Witness::Kind::OddCycle: {
      const auto& c = w.vertices;
      if (c.size() < 3 || c.size() % 2 == 0) return false;
      std::vector<Vertex> sorted = c;
      std::sort(sorted.begin(), sorted.end());
      if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return false;
      for (std::size_t i = 0; i < c.size(); ++i)
        if (!edge_owned(c[i], c[(i + 1) % c.size()])) return false;
      return spec.objective.kind == K::OddCycle || spec.objective.kind == K::AuxGHM ||
             (spec.objective.kind == K::NonKColorable && spec.objective.k <= 2);
    }
    case Witness::Kind::Edges: {
      if (spec.board != BoardKind::Edge) return false;
      for (const Edge& e : w.edges)
        if (!edge_owned(e.u, e.v)) return false;
      Graph g = Graph::simple(n, w.edges);
      if (g.size() != w.edges.size()) return false;
      switch (spec.objective.kind) {
        case K::NonKColorable:
          return !is_k_colorable(g, spec.objective.k);
        case K::SpanningConnected:
          return is_connected(g);
        case K::Connectivity:
          return n <= 1 || edge_connectivity(g) >= spec.objective.k;
        default:
          return false;
      }
    }
    case Witness::Kind::Vertices: {
      if (spec.board != BoardKind::Vertex) return false;
      for (Vertex v : w.vertices)
        if (v < 0 || v >= n || !vertex_ok[v]) return false;
      VertexSet set(n, w.vertices);
      Graph g = induced_subgraph(host, set).graph;
      if (spec.objective.kind == K::NonKColorable) return !is_k_colorable(g, spec.objective.k);
      if (spec.objective.kind == K::AuxGHM) {
        for (Vertex m : spec.objective.fixed)
          if (!set.contains(m)) return false;
        return is_connected(g);
      }
      return false;
    }
  }
  return false;
}

namespace {

struct Outcome {
  std::optional<std::vector<int>> batch;
  std::string error;
};

Outcome ask(Strategy& s, const GameSpec& spec, const Position& pos, int count) {
  try {
    return {s.choose(spec, pos, count), {}};
  } catch (const std::exception& ex) {
    return {std::nullopt, ex.what()};
  }
}

}  // namespace

GameResult play(const GameSpec& spec, Strategy& maker, Strategy& breaker, std::uint64_t seed) {
  spec.validate();
  GameResult result;
  Position pos(spec);
  maker.reset(spec, Player::Maker, splitmix64(2 * seed + 1));
  breaker.reset(spec, Player::Breaker, splitmix64(2 * seed + 2));

  auto finish = [&](Player winner) {
    result.winner = winner;
    result.transcript = pos.log();
    result.maker_claims = pos.claims(Player::Maker);
    return result;
  };

  if (auto w = maker_win(spec, {})) {
    result.witness = std::move(w);
    return finish(Player::Maker);
  }
  while (pos.unclaimed_count() > 0) {
    const Player mover = pos.to_move();
    Strategy& strat = mover == Player::Maker ? maker : breaker;
    const int count = std::min(spec.bias(mover), pos.unclaimed_count());
    Outcome o = ask(strat, spec, pos, count);
    if (!o.batch) {
      result.forfeit = mover;
      result.forfeit_reason = o.error.empty() ? "strategy conceded" : o.error;
      return finish(opponent(mover));
    }
    if (auto err = check_batch(spec, pos, mover, *o.batch)) {
      result.forfeit = mover;
      result.forfeit_reason = std::string("illegal move: ") + err->what();
      return finish(opponent(mover));
    }
    if (mover == spec.first) ++result.rounds;
    Turn turn{mover, {}, strat.stage()};
    for (int e : *o.batch) {
      PositionAccess::claim(pos, mover, e);
      turn.elements.push_back(e);
      if (mover != Player::Maker) continue;
      if (auto w = maker_win(spec, pos.claims(Player::Maker))) {
        result.witness = std::move(w);
        PositionAccess::finish_turn(pos, std::move(turn));
        return finish(Player::Maker);
      }
    }
    PositionAccess::finish_turn(pos, std::move(turn));
  }
  return finish(Player::Breaker);
}

Position replay(const GameSpec& spec, const std::vector<Turn>& turns) {
  spec.validate();
  Position pos(spec);
  for (std::size_t i = 0; i < turns.size(); ++i) {
    const Turn& t = turns[i];
    auto err = check_batch(spec, pos, t.player, t.elements);
    // A winning Maker turn stops at the first winning claim.
    const bool short_win = err && i + 1 == turns.size() && t.player == Player::Maker &&
                           t.player == pos.to_move() && !t.elements.empty() &&
                           static_cast<int>(t.elements.size()) < std::min(spec.maker_bias, pos.unclaimed_count());
    if (err && !short_win) throw *err;
    for (int e : t.elements) {
      if (e < 0 || e >= pos.board_size() || pos.owner(e) != Owner::None) throw IllegalMove("element unavailable", e);
      PositionAccess::claim(pos, t.player, e);
    }
    if (short_win && !maker_win(spec, pos.claims(Player::Maker))) throw IllegalMove("short turn without a win", -1);
    PositionAccess::finish_turn(pos, t);
  }
  return pos;
}

}  // namespace mbgame
