#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>

#include <fmt/format.h>

#include "mbgame/decompose.hpp"
#include "mbgame/errors.hpp"
#include "mbgame/harness.hpp"
#include "mbgame/rng.hpp"
#include "mbgame/solver.hpp"
#include "mbgame/strategies.hpp"

using namespace mbgame;
using nlohmann::json;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Witness bookkeeping shared by every game the suite plays.
struct WitnessTally {
  long wins = 0;
  long valid = 0;

  void record(const GameSpec& spec, const GameResult& r) {
    if (r.winner != Player::Maker) return;
    ++wins;
    if (r.witness && validate_witness(spec, r.maker_claims, *r.witness)) ++valid;
  }
  void record(const ResultDocument& doc) {
    for (const TrialRow& row : doc.trials) {
      if (row.winner != Player::Maker) continue;
      ++wins;
      if (row.witness_valid) ++valid;
    }
  }
};

WitnessTally tally;

Graph complete_graph(int n) { return complete_multipartite(std::vector<int>(n, 1)); }

Graph cycle_graph(int n) {
  std::vector<Edge> e;
  for (int i = 0; i < n; ++i) e.push_back(make_edge(i, (i + 1) % n));
  return Graph(n, e);
}

double seconds_since(std::chrono::steady_clock::time_point t) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t).count();
}

// ---- AC1: exact solver on every graph with five vertices ----
Outcome ac1() {
  const auto start = std::chrono::steady_clock::now();
  int instances = 0, disagreements = 0, makers = 0;
  for (const Graph& g : graph_classes(5)) {
    for (int b : {1, 2}) {
      GameSpec spec = make_game(g, BoardKind::Edge, 1, b);
      const Player memo = solve(spec).winner;
      const Player plain = solve(spec, {.memoize = false}).winner;
      ++instances;
      makers += memo == Player::Maker;
      if (memo != plain) ++disagreements;
    }
  }
  const bool k3 = solve(make_game(complete_graph(3), BoardKind::Edge, 1, 1)).winner == Player::Breaker;
  const bool c5 = solve(make_game(cycle_graph(5), BoardKind::Edge, 1, 1)).winner == Player::Breaker;
  const double secs = seconds_since(start);
  return {instances == 68 && disagreements == 0 && k3 && c5 && secs < 60,
          fmt::format("{} instances ({} Maker), {} disagreements, K3 {}, C5 {}, {:.2f}s", instances, makers,
                      disagreements, k3 ? "Breaker" : "WRONG", c5 ? "Breaker" : "WRONG", secs)};
}

// ---- AC2: verify_maker_strategy never beats the solver ----
Outcome ac2() {
  std::vector<GameSpec> specs;
  for (const Graph& g : graph_classes(5))
    for (int b : {1, 2}) specs.push_back(make_game(g, BoardKind::Edge, 1, b));
  for (int n : {5, 6})
    for (int b : {1, 2}) specs.push_back(make_game(complete_graph(n), BoardKind::Edge, 1, b, WinPredicate::spanning_connected()));

  int checks = 0, always = 0, violations = 0, budget_hits = 0;
  for (const GameSpec& spec : specs) {
    const Player truth = solve(spec).winner;
    std::vector<std::string> ids{"solver", "connectivity"};
    if (!find_odd_cycle(*spec.host).bipartite()) ids.push_back(fmt::format("main3(b={})", spec.breaker_bias));
    for (const std::string& id : ids) {
      std::unique_ptr<Strategy> maker = make_strategy(id, *spec.host);
      try {
        VerifyResult r = verify_maker_strategy(spec, *maker, {.node_budget = 5'000'000});
        ++checks;
        if (r.outcome == VerifyResult::Outcome::AlwaysWins) {
          ++always;
          if (truth != Player::Maker) ++violations;
        }
      } catch (const ResourceError&) {
        ++budget_hits;
      }
    }
  }
  return {violations == 0 && checks > 0,
          fmt::format("{} verifications, {} always-wins, {} violations, {} over budget", checks, always, violations,
                      budget_hits)};
}

// ---- AC3 / AC4: decomposition certificates on G(n, 1/2) ----
std::vector<Graph> dense_corpus() {
  std::vector<Graph> out;
  Rng pick(31337);
  for (int i = 0; i < 50; ++i) {
    const int n = 24 + static_cast<int>(pick.below(25));
    out.push_back(gnp_graph(n, Rational(1, 2), 9000 + i));
  }
  return out;
}

Outcome ac3(const std::vector<Graph>& corpus) {
  int ok = 0, parts = 0;
  for (const Graph& g : corpus) {
    const int k = min_degree(g);
    const int n = g.order();
    Partition p = bfkm_partition(g, k);
    const std::int64_t need = (static_cast<std::int64_t>(k) * k + 16LL * n - 1) / (16LL * n);
    bool good = !p.parts.empty();
    for (const VertexSet& part : p.parts) {
      ++parts;
      if (8 * static_cast<std::int64_t>(part.size()) < k) good = false;
      if (vertex_connectivity(induced_subgraph(g, part).graph) < need) good = false;
    }
    ok += good;
  }
  return {ok == static_cast<int>(corpus.size()), fmt::format("{}/{} graphs certified, {} parts", ok, corpus.size(), parts)};
}

Outcome ac4(const std::vector<Graph>& corpus) {
  int ok = 0, max_splits = 0;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const Graph& g = corpus[i];
    const int n = g.order();
    const Rational delta(min_degree(g), n);
    DecomposeOptions opts;
    opts.seed = i;
    RobustPartition rp = robust_partition(g, delta, opts);
    bool good = rp.splits <= ceil_int(Rational(1) / delta);
    max_splits = std::max(max_splits, rp.splits);
    std::vector<int> part_of(n, -1);
    for (std::size_t j = 0; j < rp.parts.size(); ++j)
      for (Vertex v : rp.parts[j].members()) part_of[v] = static_cast<int>(j);
    for (Vertex v = 0; v < n; ++v) {
      if (part_of[v] < 0) {
        good = false;
        continue;
      }
      int inside = 0;
      for (Vertex w : g.neighbors(v)) inside += part_of[w] == part_of[v];
      if (Rational(inside) < delta * delta * n) good = false;
    }
    ok += good;
  }
  return {ok == static_cast<int>(corpus.size()),
          fmt::format("{}/{} graphs pass pointwise, max splits {}", ok, corpus.size(), max_splits)};
}

// ---- AC5: the vertex-game pipeline on K(40 x 7) ----
Outcome ac5() {
  const auto start = std::chrono::steady_clock::now();
  bool pass = true;
  std::string detail;
  int max_len = 0;
  for (const char* breaker : {"random", "bipartite_guard", "cut_attack"}) {
    ExperimentConfig cfg;
    cfg.generator = GeneratorSpec{"multipartite", json{{"sizes", std::vector<int>(7, 40)}}, 0};
    cfg.board = BoardKind::Vertex;
    cfg.maker_bias = 1;
    cfg.breaker_bias = 2;
    cfg.maker = "main2(delta=6/7,b=2,seed=1,force=1)";
    cfg.breaker = breaker;
    cfg.trials = 100;
    ResultDocument doc = run_experiment(cfg, {.threads = 4});
    tally.record(doc);
    const Aggregate& a = doc.aggregate;
    const int len = a.witness_length_histogram.empty() ? 0 : a.witness_length_histogram.rbegin()->first;
    max_len = std::max(max_len, len);
    pass = pass && a.maker_wins >= 95 && a.invalid_witnesses == 0 && a.failures == 0 && len <= 9;
    detail += fmt::format("{} {}/100; ", breaker, a.maker_wins);
  }
  detail += fmt::format("max witness length {}, {:.1f}s", max_len, seconds_since(start));
  return {pass, detail};
}

// ---- AC6: bound_report against integer and long double arithmetic ----
Outcome ac6() {
  bool pass = true;
  const std::int64_t n30 = std::int64_t{1} << 30;
  // b_max = floor((16/25) 2^30 / (6400 * 30^2)).
  const std::int64_t expect = (16 * n30) / (25LL * 6400 * 900);
  pass = pass && bound_report(n30, Rational(4, 5), 1).b_max == expect && expect == 119;
  int checked = 0;
  for (std::int64_t n : {2, 50, 280, 500, 1000, 65536, 1000000}) {
    for (Rational d : {Rational(1, 2), Rational(4, 5), Rational(6, 7), Rational(1, 100)}) {
      BoundReport r = bound_report(n, d, 1);
      const long double dd = static_cast<long double>(d.numerator()) / d.denominator();
      const auto dom = static_cast<std::int64_t>(std::ceil(100.0L * std::log(static_cast<long double>(n)) / (dd * dd)));
      pass = pass && r.failure_exponent == Rational(-49) && r.dominating_size == dom;
      ++checked;
    }
  }
  return {pass, fmt::format("b_max(2^30, 4/5) = {}, {} exponent and size checks", expect, checked)};
}

// ---- AC7: random domination of a fixed core ----
Outcome ac7() {
  Graph g = complete_multipartite(std::vector<int>(10, 50));
  const Rational delta(1, 2);
  BipartiteCore core = key2_extract(g, delta, 1);
  Graph h = core_graph(g, core);
  std::vector<Vertex> vh = core.a.members();
  vh.insert(vh.end(), core.b.members().begin(), core.b.members().end());
  const std::int64_t draws = bound_report(g.order(), delta, 1).dominating_size;
  int dominated = 0;
  for (std::uint64_t s = 0; s < 1000; ++s) {
    Rng rng(s);
    std::vector<char> covered(g.order(), 0), chosen(g.order(), 0);
    for (std::int64_t i = 0; i < draws; ++i) chosen[vh[rng.below(vh.size())]] = 1;
    for (Vertex v : vh)
      if (chosen[v]) {
        covered[v] = 1;
        for (Vertex w : h.neighbors(v)) covered[w] = 1;
      }
    bool all = true;
    for (Vertex v : vh) all = all && covered[v];
    dominated += all;
  }
  return {dominated >= 990, fmt::format("|V(H)| = {}, {} draws, {}/1000 samples dominate", vh.size(), draws, dominated)};
}

// ---- AC8: determinism ----
Outcome ac8() {
  bool pass = true;
  int games = 0;
  Graph k = complete_multipartite({5, 5, 5});
  for (BoardKind board : {BoardKind::Edge, BoardKind::Vertex}) {
    GameSpec spec = make_game(k, board, 1, 2);
    std::vector<std::string> makers{"main1(delta=2/3,force=1)", "main3(b=2)"};
    if (board == BoardKind::Vertex) makers = {"main2(delta=2/3,b=1,seed=4,force=1)", "random"};
    for (const std::string& m : makers) {
      for (const char* b : {"random", "bipartite_guard", "cut_attack"}) {
        for (std::uint64_t seed = 0; seed < 5; ++seed) {
          std::string text[2];
          for (std::string& t : text) {
            auto maker = make_strategy(m, k);
            auto breaker = make_strategy(b, k);
            GameResult r = play(spec, *maker, *breaker, seed);
            tally.record(spec, r);
            t = format_transcript(make_record(spec, r, maker->id(), breaker->id(), seed));
          }
          pass = pass && text[0] == text[1];
          ++games;
        }
      }
    }
  }
  GameSpec k5 = make_game(complete_graph(5), BoardKind::Edge, 1, 1);
  SolveVerdict s1 = solve(k5), s2 = solve(k5);
  pass = pass && s1.winner == s2.winner && s1.principal_line == s2.principal_line && s1.nodes_expanded == s2.nodes_expanded;

  ExperimentConfig cfg;
  cfg.generator = GeneratorSpec{"gnp", json{{"n", 14}, {"p", "1/2"}}, 5};
  cfg.maker = "main3(b=1)";
  cfg.breaker = "random";
  cfg.trials = 30;
  ResultDocument d1 = run_experiment(cfg), d2 = run_experiment(cfg), d3 = run_experiment(cfg, {.threads = 4});
  tally.record(d1);
  pass = pass && canonical_text(d1) == canonical_text(d2) && canonical_text(d1) == canonical_text(d3);
  return {pass, fmt::format("{} games replayed twice, solve and 3 experiment runs identical", games)};
}

// ---- AC9: witness validity over everything above ----
Outcome ac9() {
  return {tally.wins > 0 && tally.valid == tally.wins,
          fmt::format("{}/{} Maker wins carry valid witnesses", tally.valid, tally.wins)};
}

}  // namespace

int main() {
  int failed = 0;
  auto report = [&](const char* name, const std::function<Outcome()>& f) {
    Outcome o;
    try {
      o = f();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::printf("%s %s: %s\n", o.pass ? "PASS" : "FAIL", name, o.detail.c_str());
    std::fflush(stdout);
    failed += !o.pass;
  };
  const std::vector<Graph> corpus = dense_corpus();
  report("AC1", ac1);
  report("AC2", ac2);
  report("AC3", [&] { return ac3(corpus); });
  report("AC4", [&] { return ac4(corpus); });
  report("AC5", ac5);
  report("AC6", ac6);
  report("AC7", ac7);
  report("AC8", ac8);
  report("AC9", ac9);
  return failed == 0 ? 0 : 1;
}
