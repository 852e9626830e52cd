#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "mbgame/errors.hpp"
#include "mbgame/harness.hpp"

using namespace mbgame;
using nlohmann::json;

namespace {

ExperimentConfig small_config() {
  ExperimentConfig c;
  c.generator = GeneratorSpec{"multipartite", json{{"sizes", {4, 4, 4}}}, 0};
  c.maker_bias = 1;
  c.breaker_bias = 2;
  c.maker = "main1(delta=2/3,force=1)";
  c.breaker = "random";
  c.trials = 12;
  c.seed_base = 100;
  return c;
}

std::filesystem::path scratch_dir() {
  auto dir = std::filesystem::temp_directory_path() / "mbgame_test_harness";
  std::filesystem::create_directories(dir);
  return dir;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("structured generators") {
  for (int m : {1, 2, 5}) {
    Generated g = generate({"multipartite", json{{"sizes", {m, m, m}}}, 0});
    CHECK(g.graph.order() == 3 * m);
    CHECK(g.min_degree == 2 * m);
    CHECK(chromatic_number(g.graph) == 3);

    Generated b = generate({"blowup", json{{"length", 5}, {"m", m}}, 0});
    CHECK(b.graph.order() == 5 * m);
    CHECK(b.min_degree == 2 * m);
    CHECK_FALSE(find_odd_cycle(b.graph).bipartite());
    CHECK(is_k_colorable(b.graph, 3).has_value());
  }
  Generated u = generate({"union", json{{"parts", {{{"family", "multipartite"}, {"params", {{"sizes", {1, 1, 1}}}}},
                                                    {{"family", "multipartite"}, {"params", {{"sizes", {1, 1, 1}}}}}}}},
                          0});
  CHECK(u.graph.order() == 6);
  CHECK(u.graph.size() == 6u);
  CHECK(connected_components(u.graph).size() == 2u);
  Generated j = generate({"join", json{{"parts", {{{"family", "multipartite"}, {"params", {{"sizes", {1, 1, 1}}}}},
                                                   {{"family", "multipartite"}, {"params", {{"sizes", {1, 1, 1}}}}}}}},
                          0});
  CHECK(j.graph.size() == 15u);
  CHECK(j.min_degree == 5);
}

TEST_CASE("random generators are deterministic") {
  GeneratorSpec gnp{"gnp", json{{"n", 30}, {"p", "1/2"}}, 7};
  CHECK(generate(gnp).graph == generate(gnp).graph);
  GeneratorSpec other = gnp;
  other.seed = 8;
  CHECK_FALSE(generate(gnp).graph == generate(other).graph);
  CHECK(generate({"gnp", json{{"n", 6}, {"p", "0"}}, 1}).graph.size() == 0u);
  CHECK(generate({"gnp", json{{"n", 6}, {"p", "1"}}, 1}).graph.size() == 15u);

  for (auto [n, d] : {std::pair{10, 3}, std::pair{20, 7}, std::pair{40, 12}}) {
    GeneratorSpec spec{"regular", json{{"n", n}, {"d", d}}, 3};
    Graph g = generate(spec).graph;
    for (Vertex v = 0; v < n; ++v) CHECK(g.degree(v) == d);
    CHECK(g == generate(spec).graph);
  }
  // A join with random parts draws distinct seeds for each part.
  GeneratorSpec join{"join", json{{"parts", {gnp, gnp}}}, 5};
  CHECK(generate(join).graph == generate(join).graph);
}

TEST_CASE("generator errors") {
  CHECK_THROWS_AS(generate({"blowup", json{{"length", 4}, {"m", 2}}, 0}), DomainError);
  CHECK_THROWS_AS(generate({"regular", json{{"n", 5}, {"d", 3}}, 0}), DomainError);
  CHECK_THROWS_AS(generate({"gnp", json{{"n", 5}, {"p", "3/2"}}, 0}), DomainError);
  CHECK_THROWS_AS(generate({"gnp", json{{"n", 5}}, 0}), DomainError);
  CHECK_THROWS_AS(generate({"multipartite", json{{"sizes", {2, 0}}}, 0}), DomainError);
  CHECK_THROWS_AS(generate({"petersen", json::object(), 0}), ConfigError);
}

TEST_CASE("strategy registry") {
  StrategyId id = parse_strategy_id("main2(delta=1/2,b=2,seed=7)");
  CHECK(id.name == "main2");
  CHECK(id.params.size() == 3u);
  CHECK(id.params.at("delta") == "1/2");
  CHECK(parse_strategy_id("random").params.empty());
  CHECK_THROWS_AS(parse_strategy_id("main2(delta=1/2"), ConfigError);
  CHECK_THROWS_AS(parse_strategy_id("main2(delta)"), ConfigError);
  CHECK_THROWS_AS(parse_strategy_id("main2(b=1,b=2)"), ConfigError);

  Graph host = complete_multipartite({4, 4, 4});
  for (const char* name : {"random", "bipartite_guard", "cut_attack", "connectivity", "solver"})
    CHECK(make_strategy(name, host)->id() == name);
  CHECK(make_strategy("main1(delta=2/3,force=1)", host)->id() == "main1(delta=2/3)");
  CHECK(make_strategy("main3(b=1,k=2,seed=9)", host)->id() == "main3(b=1,k=2,seed=9)");
  CHECK_THROWS_AS(make_strategy("oracle", host), ConfigError);
  CHECK_THROWS_AS(make_strategy("random(x=1)", host), ConfigError);
  CHECK_THROWS_AS(make_strategy("main1(delta=2/3,force=1,extra=2)", host), ConfigError);
  CHECK_THROWS_AS(make_strategy("main1(force=1)", host), ConfigError);
  CHECK_THROWS_AS(make_strategy("main3(b=x)", host), ConfigError);
  CHECK_THROWS_AS(make_strategy("main3(b=1)", complete_multipartite({3, 3})), ConfigError);
}

TEST_CASE("experiment documents") {
  ExperimentConfig cfg = small_config();
  ResultDocument a = run_experiment(cfg);
  CHECK(a.schema == "result-v1");
  CHECK(a.trials.size() == 12u);
  for (int i = 0; i < 12; ++i) {
    CHECK(a.trials[i].trial == i);
    CHECK(a.trials[i].seed == 100u + i);
  }
  CHECK(a.aggregate == aggregate(a.trials));
  CHECK(a.aggregate.invalid_witnesses == 0);
  for (const TrialRow& r : a.trials)
    if (r.winner == Player::Maker) CHECK(r.witness_valid);

  ResultDocument b = run_experiment(cfg);
  CHECK(canonical_text(a) == canonical_text(b));
  ResultDocument par = run_experiment(cfg, {.threads = 4});
  CHECK(canonical_text(a) == canonical_text(par));

  ResultDocument back = document_from_json(json::parse(document_to_json(a).dump()));
  CHECK(canonical_text(back) == canonical_text(a));
  CHECK(back.timestamp == a.timestamp);
  // Regenerating from the embedded config reproduces every row.
  ResultDocument again = run_experiment(back.config);
  CHECK(again.trials == a.trials);

  std::string csv = to_csv(a);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 13);
  CHECK(csv.rfind("trial,seed,winner,rounds,forfeit,witness_length,witness_valid,error\n", 0) == 0);
}

TEST_CASE("experiment edge cases") {
  ExperimentConfig cfg = small_config();
  cfg.trials = 0;
  ResultDocument empty = run_experiment(cfg);
  CHECK(empty.trials.empty());
  CHECK(empty.config == cfg);
  CHECK(empty.aggregate.trials == 0);

  ExperimentConfig bad = small_config();
  bad.maker = "nobody";
  CHECK_THROWS_AS(run_experiment(bad), ConfigError);
  bad = small_config();
  bad.objective = "hamiltonian";
  CHECK_THROWS_AS(run_experiment(bad), ConfigError);
  bad = small_config();
  bad.generator.family = "lattice";
  CHECK_THROWS_AS(run_experiment(bad), ConfigError);

  // A strategy that refuses the board fails each trial without stopping the run.
  ExperimentConfig fails = small_config();
  fails.board = BoardKind::Vertex;
  fails.maker = "connectivity";
  fails.trials = 3;
  ResultDocument doc = run_experiment(fails);
  CHECK(doc.aggregate.failures == 3);
  for (const TrialRow& r : doc.trials) CHECK_FALSE(r.error.empty());
  CHECK(to_csv(doc).find("edge boards only") != std::string::npos);
}

TEST_CASE("documents are written atomically") {
  auto dir = scratch_dir();
  ExperimentConfig cfg = small_config();
  cfg.output = (dir / "run.json").string();
  ResultDocument doc = run_experiment(cfg);
  CHECK(std::filesystem::exists(dir / "run.json"));
  CHECK_FALSE(std::filesystem::exists(dir / "run.json.tmp"));
  ResultDocument loaded = document_from_json(json::parse(slurp(dir / "run.json")));
  CHECK(canonical_text(loaded) == canonical_text(doc));
  CHECK_THROWS_AS(document_from_json(json{{"schema", "result-v0"}}), ParseError);
}

TEST_CASE("bias sweeps") {
  ExperimentConfig cfg = small_config();
  cfg.trials = 4;
  CHECK(sweep_bias(cfg, {}).documents.empty());

  auto dir = scratch_dir();
  cfg.output = (dir / "sweep.json").string();
  SweepResult s = sweep_bias(cfg, {1, 3, 60});
  REQUIRE(s.documents.size() == 3u);
  CHECK(s.summary[1].breaker_bias == 3);
  CHECK(std::filesystem::exists(dir / "sweep.b1.json"));
  CHECK(std::filesystem::exists(dir / "sweep.b60.json"));
  CHECK(s.documents[2].config.breaker_bias == 60);
  // Bias beyond the board: the short-turn rule ends the game within
  // ceil(|board| / (1 + b)) rounds.
  const int board = static_cast<int>(s.documents[2].host.size);
  for (const TrialRow& r : s.documents[2].trials) CHECK(r.rounds <= (board + 60) / 61);
}

TEST_CASE("main1 on an odd cycle blow-up against the guard") {
  ExperimentConfig cfg;
  cfg.generator = GeneratorSpec{"blowup", json{{"length", 5}, {"m", 6}}, 0};
  cfg.maker = "main1(delta=2/5,force=1)";
  cfg.breaker = "bipartite_guard";
  cfg.trials = 5;
  SweepResult s = sweep_bias(cfg, {1, 2, 4, 8, 16, 20});
  REQUIRE(s.summary.size() == 6u);
  for (const ResultDocument& d : s.documents) {
    CHECK(d.aggregate.failures == 0);
    CHECK(d.aggregate.invalid_witnesses == 0);
  }
  std::string line;
  for (const SweepPoint& p : s.summary) line += " b=" + std::to_string(p.breaker_bias) + ":" + std::to_string(p.win_rate);
  MESSAGE("win rate by bias:" << line);
}

TEST_CASE("main2 witness length stays bounded as n grows") {
  std::vector<int> maxima;
  for (int m : {20, 40, 80}) {
    ExperimentConfig cfg;
    cfg.generator = GeneratorSpec{"multipartite", json{{"sizes", std::vector<int>(6, m)}}, 0};
    cfg.board = BoardKind::Vertex;
    cfg.breaker_bias = 2;
    cfg.maker = "main2(delta=5/6,b=2,seed=1,force=1)";
    cfg.breaker = "cut_attack";
    cfg.trials = 10;
    ResultDocument d = run_experiment(cfg, {.threads = 4});
    CHECK(d.aggregate.invalid_witnesses == 0);
    REQUIRE_FALSE(d.aggregate.witness_length_histogram.empty());
    maxima.push_back(d.aggregate.witness_length_histogram.rbegin()->first);
  }
  MESSAGE("max witness length for n = 120, 240, 480: " << maxima[0] << " " << maxima[1] << " " << maxima[2]);
  CHECK_FALSE((maxima[0] < maxima[1] && maxima[1] < maxima[2]));
}
