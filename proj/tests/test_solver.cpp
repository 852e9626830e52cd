#include <functional>

#include "doctest.h"
#include "fixtures.hpp"
#include "mbgame/errors.hpp"
#include "mbgame/solver.hpp"
#include "mbgame/strategies.hpp"
#include "players.hpp"

using namespace mbgame;
using namespace fixtures;

namespace {

// Odd cycle test by BFS 2-colouring, kept apart from the library's predicates.
bool has_odd_cycle(int n, const std::vector<Edge>& edges) {
  std::vector<std::vector<int>> adj(n);
  for (const Edge& e : edges) {
    adj[e.u].push_back(e.v);
    adj[e.v].push_back(e.u);
  }
  std::vector<int> color(n, -1);
  for (int s = 0; s < n; ++s) {
    if (color[s] >= 0) continue;
    color[s] = 0;
    std::vector<int> queue{s};
    for (std::size_t i = 0; i < queue.size(); ++i)
      for (int w : adj[queue[i]]) {
        if (color[w] < 0) {
          color[w] = 1 - color[queue[i]];
          queue.push_back(w);
        } else if (color[w] == color[queue[i]]) {
          return true;
        }
      }
  }
  return false;
}

// Plain recursive minimax over single claims for the edge odd-cycle game.
Player brute_force(const Graph& g, int a, int b, Player first) {
  const int m = static_cast<int>(g.size());
  std::vector<int> owner(m, 0);
  std::function<Player(Player, int)> rec = [&](Player p, int left) -> Player {
    std::vector<Edge> mine;
    int free = 0;
    for (int e = 0; e < m; ++e) {
      if (owner[e] == 1) mine.push_back(g.edges()[e]);
      free += owner[e] == 0;
    }
    if (has_odd_cycle(g.order(), mine)) return Player::Maker;
    if (free == 0) return Player::Breaker;
    if (left == 0) {
      p = opponent(p);
      left = std::min(p == Player::Maker ? a : b, free);
    }
    for (int e = 0; e < m; ++e) {
      if (owner[e] != 0) continue;
      owner[e] = p == Player::Maker ? 1 : 2;
      Player v = rec(p, left - 1);
      owner[e] = 0;
      if (v == p) return p;
    }
    return opponent(p);
  };
  const int free = m;
  return rec(first, std::min(first == Player::Maker ? a : b, free));
}

Player replay_winner(const GameSpec& spec, const SolveVerdict& v) {
  Position end = replay(spec, v.principal_line);
  return evaluate(spec, end).status == Evaluation::Status::MakerWon ? Player::Maker : Player::Breaker;
}

}  // namespace

TEST_CASE("graph class corpus") {
  const std::vector<std::size_t> expected{1, 2, 4, 11, 34, 156};
  for (int n = 1; n <= 6; ++n) CHECK(graph_classes(n).size() == expected[n - 1]);
  std::vector<int> by_edges(11, 0);
  for (const Graph& g : graph_classes(5)) ++by_edges[g.size()];
  CHECK(by_edges == std::vector<int>{1, 1, 2, 4, 6, 6, 6, 4, 2, 1, 1});
  CHECK_THROWS_AS(graph_classes(7), DomainError);
}

TEST_CASE("solver fixtures") {
  SolveVerdict k3 = solve(make_game(complete(3), BoardKind::Edge, 1, 1));
  CHECK(k3.winner == Player::Breaker);
  SolveVerdict c5 = solve(make_game(cycle(5), BoardKind::Edge, 1, 1));
  CHECK(c5.winner == Player::Breaker);

  GameSpec k5 = make_game(complete(5), BoardKind::Edge, 1, 1);
  SolveVerdict v5 = solve(k5);
  CHECK(v5.winner == Player::Maker);
  CHECK(brute_force(complete(5), 1, 1, Player::Maker) == Player::Maker);
  CHECK(solve(k5, {.memoize = false}).winner == v5.winner);
  CHECK(replay_winner(k5, v5) == Player::Maker);
  CHECK(v5.nodes_expanded > 0);

  GameSpec k4 = make_game(complete(4), BoardKind::Edge, 1, 1, WinPredicate::spanning_connected());
  SolveVerdict v4 = solve(k4);
  CHECK(v4.winner == Player::Maker);
  CHECK(replay_winner(k4, v4) == Player::Maker);
  // With Breaker first and bias 2, Breaker isolates a vertex of K4 in two turns.
  CHECK(solve(make_game(complete(4), BoardKind::Edge, 1, 2, WinPredicate::spanning_connected(), Player::Breaker))
            .winner == Player::Breaker);
}

TEST_CASE("solver cap and determinism") {
  CHECK_THROWS_AS(solve(make_game(complete(7), BoardKind::Edge, 1, 1)), ResourceError);
  CHECK_THROWS_AS(solve(make_game(complete(5), BoardKind::Edge, 1, 1), {.cap = 9}), ResourceError);
  GameSpec spec = make_game(petersen(), BoardKind::Vertex, 1, 1);
  SolveVerdict a = solve(spec), b = solve(spec);
  CHECK(a.winner == b.winner);
  CHECK(a.principal_line == b.principal_line);
  CHECK(a.nodes_expanded == b.nodes_expanded);
  CHECK(replay_winner(spec, a) == a.winner);
}

TEST_CASE("solver variants agree on random small boards") {
  Rng rng(2024);
  int makers = 0, instances = 0;
  while (instances < 50) {
    const int shape = static_cast<int>(rng.below(3));
    GameSpec spec;
    const int a = 1 + static_cast<int>(rng.below(2));
    const int b = 1 + static_cast<int>(rng.below(3));
    const Player first = rng.below(2) ? Player::Maker : Player::Breaker;
    if (shape == 0) {
      Graph g = gnp(5, 7, 10, rng.next());
      if (g.size() > 10) continue;
      spec = make_game(g, BoardKind::Edge, a, b, WinPredicate::odd_cycle(), first);
    } else if (shape == 1) {
      spec = make_game(gnp(8 + static_cast<int>(rng.below(3)), 1, 2, rng.next()), BoardKind::Vertex, a, b,
                       WinPredicate::odd_cycle(), first);
    } else {
      Graph g = gnp(5, 3, 4, rng.next());
      if (g.size() > 10) continue;
      spec = make_game(g, BoardKind::Edge, a, b, WinPredicate::spanning_connected(), first);
    }
    REQUIRE(spec.board_size() <= 10);
    ++instances;
    const Player base = solve(spec).winner;
    makers += base == Player::Maker;
    CHECK(solve(spec, {.memoize = false}).winner == base);
    CHECK(solve(spec, {.early_cutoff = false}).winner == base);
    CHECK(solve(spec, {.memoize = false, .early_cutoff = false}).winner == base);
    CHECK(solve(spec, {.sequence_batches = true}).winner == base);
    CHECK(solve(spec, {.memoize = false, .sequence_batches = true}).winner == base);
    if (shape == 0) CHECK(brute_force(*spec.host, a, b, first) == base);
    CHECK(replay_winner(spec, solve(spec)) == base);
  }
  MESSAGE("maker wins in " << makers << " of the sampled instances");
}

TEST_CASE("optimal play matches the verdict") {
  for (const Graph& g : graph_classes(5)) {
    for (int b : {1, 2}) {
      GameSpec spec = make_game(g, BoardKind::Edge, 1, b);
      const Player w = solve(spec).winner;
      SolverStrategy m, br;
      CHECK(play(spec, m, br, 0).winner == w);
    }
  }
}

TEST_CASE("verify_maker_strategy soundness on the five-vertex corpus") {
  int always = 0, counters = 0;
  for (const Graph& g : graph_classes(5)) {
    for (int b : {1, 2}) {
      GameSpec spec = make_game(g, BoardKind::Edge, 1, b);
      const Player w = solve(spec).winner;
      VerifyResult opt = verify_maker_strategy(spec, SolverStrategy());
      CHECK((opt.outcome == VerifyResult::Outcome::AlwaysWins) == (w == Player::Maker));
      const players::FirstFree first_free;
      const players::LastFree last_free;
      for (const Strategy* s : {static_cast<const Strategy*>(&first_free), static_cast<const Strategy*>(&last_free)}) {
        VerifyResult r = verify_maker_strategy(spec, *s);
        if (r.outcome == VerifyResult::Outcome::AlwaysWins) {
          ++always;
          CHECK(w == Player::Maker);
        } else {
          ++counters;
          // The counter game is a legal game that Maker does not win.
          Position end = replay(spec, r.counter);
          CHECK(evaluate(spec, end).status != Evaluation::Status::MakerWon);
        }
      }
    }
  }
  MESSAGE(always << " always-wins and " << counters << " counter transcripts");
  CHECK(counters > 0);
}

TEST_CASE("verify on connectivity games") {
  GameSpec k4 = make_game(complete(4), BoardKind::Edge, 1, 1, WinPredicate::spanning_connected());
  VerifyResult r = verify_maker_strategy(k4, ConnectivityMaker());
  if (r.outcome == VerifyResult::Outcome::AlwaysWins) CHECK(solve(k4).winner == Player::Maker);
  CHECK(verify_maker_strategy(k4, SolverStrategy()).outcome == VerifyResult::Outcome::AlwaysWins);

  GameSpec k5 = make_game(complete(5), BoardKind::Edge, 1, 2, WinPredicate::spanning_connected());
  VerifyResult r5 = verify_maker_strategy(k5, ConnectivityMaker());
  if (r5.outcome == VerifyResult::Outcome::AlwaysWins) CHECK(solve(k5).winner == Player::Maker);
}

TEST_CASE("verify edge cases") {
  GameSpec k5 = make_game(complete(5), BoardKind::Edge, 1, 1);
  VerifyResult r = verify_maker_strategy(k5, players::Conceder());
  CHECK(r.outcome == VerifyResult::Outcome::CounterTranscript);
  CHECK(r.counter.size() <= 2);
  CHECK(r.reason == "maker forfeited");

  VerifyResult bad = verify_maker_strategy(k5, players::ZeroRepeater());
  CHECK(bad.outcome == VerifyResult::Outcome::CounterTranscript);
  CHECK(bad.reason == "maker returned an illegal batch");

  // A Breaker-won game always yields a counter transcript.
  GameSpec c5 = make_game(cycle(5), BoardKind::Edge, 1, 1);
  CHECK(verify_maker_strategy(c5, SolverStrategy()).outcome == VerifyResult::Outcome::CounterTranscript);

  CHECK_THROWS_AS(verify_maker_strategy(k5, SolverStrategy(), {.node_budget = 50}), ResourceError);
}
