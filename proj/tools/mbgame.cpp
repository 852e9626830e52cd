#include <fstream>
#include <iostream>
#include <sstream>

#include <fmt/format.h>

#include "CLI11.hpp"
#include "json.hpp"
#include "mbgame/decompose.hpp"
#include "mbgame/errors.hpp"
#include "mbgame/graph_io.hpp"
#include "mbgame/harness.hpp"
#include "mbgame/solver.hpp"

using namespace mbgame;
using nlohmann::json;

namespace {

struct Globals {
  std::uint64_t seed = 0;
  std::string out;
  std::string format = "json";
};

struct HostArgs {
  std::string graph_file;
  std::string family;
  std::vector<std::string> params;
};

struct GameArgs {
  std::string board = "edge";
  std::string bias = "1:1";
  std::string first = "maker";
  std::string objective = "odd-cycle";
};

void add_host_options(CLI::App* cmd, HostArgs& h) {
  cmd->add_option("--graph", h.graph_file, "Host graph file");
  cmd->add_option("--family", h.family, "Generator family instead of a graph file");
  cmd->add_option("--param", h.params, "Generator parameter key=value (repeatable)");
}

void add_game_options(CLI::App* cmd, GameArgs& g) {
  cmd->add_option("--board", g.board, "edge or vertex")->check(CLI::IsMember({"edge", "vertex"}));
  cmd->add_option("--bias", g.bias, "Maker:Breaker bias, e.g. 1:2");
  cmd->add_option("--first", g.first, "maker or breaker")->check(CLI::IsMember({"maker", "breaker"}));
  cmd->add_option("--objective", g.objective, "odd-cycle, non-K-colorable, spanning-connected, connectivity-K");
}

GeneratorSpec generator_spec(const HostArgs& h, std::uint64_t seed) {
  GeneratorSpec spec{h.family, json::object(), seed};
  for (const std::string& kv : h.params) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos || eq == 0) throw ConfigError("parameter '" + kv + "' is not key=value");
    const std::string value = kv.substr(eq + 1);
    json parsed = json::parse(value, nullptr, false);
    spec.params[kv.substr(0, eq)] = parsed.is_discarded() ? json(value) : parsed;
  }
  return spec;
}

Graph load_host(const HostArgs& h, std::uint64_t seed) {
  if (!h.graph_file.empty() && !h.family.empty()) throw ConfigError("give either --graph or --family, not both");
  if (!h.graph_file.empty()) {
    if (h.graph_file.ends_with(".json")) {
      std::ifstream in(h.graph_file);
      if (!in) throw ConfigError("cannot read " + h.graph_file);
      json j = json::parse(in);
      std::vector<Edge> edges;
      for (const json& e : j.at("edges")) edges.push_back(make_edge(e.at(0).get<int>(), e.at(1).get<int>()));
      return Graph(j.at("order").get<int>(), edges);
    }
    return load_graph(h.graph_file);
  }
  if (!h.family.empty()) return generate(generator_spec(h, seed)).graph;
  throw ConfigError("a host graph is required: use --graph or --family");
}

std::pair<int, int> parse_bias(const std::string& text) {
  int a = 0, b = 0;
  char colon = 0;
  std::istringstream in(text);
  if (!(in >> a >> colon >> b) || colon != ':' || !in.eof()) throw ConfigError("bias must look like a:b");
  return {a, b};
}

GameSpec game_spec(Graph host, const GameArgs& g) {
  auto [a, b] = parse_bias(g.bias);
  GameSpec spec =
      make_game(std::move(host), parse_board(g.board), a, b, WinPredicate::parse(g.objective), parse_player(g.first));
  spec.validate();
  return spec;
}

void emit(const Globals& gl, const std::string& text) {
  if (gl.out.empty()) {
    std::cout << text;
  } else {
    write_atomically(gl.out, text);
  }
}

json turns_json(const std::vector<Turn>& turns) {
  json out = json::array();
  for (const Turn& t : turns) out.push_back({{"player", to_string(t.player)}, {"elements", t.elements}});
  return out;
}

json witness_json(const std::optional<Witness>& w) {
  if (!w) return nullptr;
  json edges = json::array();
  for (const Edge& e : w->edges) edges.push_back({e.u, e.v});
  const char* kind = w->kind == Witness::Kind::OddCycle ? "cycle" : w->kind == Witness::Kind::Edges ? "edges" : "vertices";
  return {{"kind", kind}, {"vertices", w->vertices}, {"edges", edges}, {"length", w->length()}};
}

json set_json(const VertexSet& s) { return s.members(); }

json core_json(const BipartiteCore& c) {
  json j{{"a", set_json(c.a)},
         {"b", set_json(c.b)},
         {"certified_connectivity", c.certified_connectivity},
         {"connectivity_kind", c.connectivity_kind == ConnectivityKind::Vertex ? "vertex" : "edge"},
         {"required_connectivity", c.required_connectivity}};
  j["witness_edge"] = c.witness_edge ? json{c.witness_edge->u, c.witness_edge->v} : json(nullptr);
  if (c.key2) {
    j["key2"] = {{"chromatic_clique", c.key2->chromatic_clique},
                 {"min_degree", c.key2->min_degree},
                 {"low_degree_count", c.key2->low_degree_count},
                 {"low_degree_budget", c.key2->low_degree_budget},
                 {"degree_floor", c.key2->degree_floor}};
  }
  return j;
}

std::string render_doc(const Globals& gl, const ResultDocument& doc) {
  return gl.format == "csv" ? to_csv(doc) : document_to_json(doc).dump(2) + "\n";
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config " + path);
  json j = json::parse(in, nullptr, false);
  if (j.is_discarded()) throw ConfigError("config " + path + " is not valid JSON");
  return j.get<ExperimentConfig>();
}

std::vector<int> parse_range(const std::string& text) {
  std::vector<int> out;
  if (text.empty()) return out;
  const auto dots = text.find("..");
  if (dots != std::string::npos) {
    const int lo = std::stoi(text.substr(0, dots)), hi = std::stoi(text.substr(dots + 2));
    for (int b = lo; b <= hi; ++b) out.push_back(b);
    return out;
  }
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) out.push_back(std::stoi(item));
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Maker-Breaker odd cycle games: strategies, decompositions, exact solver"};
  app.require_subcommand(1);
  Globals gl;
  app.add_option("--seed", gl.seed, "Random seed")->capture_default_str();
  app.add_option("--out", gl.out, "Output file (default: stdout)");
  app.add_option("--format", gl.format, "json or csv")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();

  // generate
  HostArgs gen_host;
  auto* gen = app.add_subcommand("generate", "Generate a host graph");
  gen->add_option("--family", gen_host.family, "gnp, multipartite, blowup, regular, union, join")->required();
  gen->add_option("--param", gen_host.params, "Generator parameter key=value (repeatable)");
  gen->callback([&] {
    Generated g = generate(generator_spec(gen_host, gl.seed));
    if (gl.format == "json") {
      json edges = json::array();
      for (const Edge& e : g.graph.edges()) edges.push_back({e.u, e.v});
      emit(gl, json{{"order", g.graph.order()},
                    {"size", g.graph.size()},
                    {"min_degree", g.min_degree},
                    {"hash", fmt::format("{:016x}", g.graph.hash())},
                    {"edges", edges}}
                       .dump(2) +
                   "\n");
    } else {
      std::string text = "u,v\n";
      for (const Edge& e : g.graph.edges()) text += fmt::format("{},{}\n", e.u, e.v);
      emit(gl, text);
    }
  });

  // decompose
  HostArgs dec_host;
  std::string mode = "core";
  std::string delta_text = "1/2";
  int dec_b = 1, dec_k = 0;
  bool force = false;
  auto* dec = app.add_subcommand("decompose", "Run a decomposition and print its certificate");
  add_host_options(dec, dec_host);
  dec->add_option("--mode", mode, "bfkm, core, robust or key2")->check(CLI::IsMember({"bfkm", "core", "robust", "key2"}));
  dec->add_option("--delta", delta_text, "Density parameter as a rational");
  dec->add_option("--b", dec_b, "Breaker bias for key2");
  dec->add_option("--k", dec_k, "Minimum degree target for bfkm (default: the graph's)");
  dec->add_flag("--force", force, "Skip the chromatic number hypothesis check");
  dec->callback([&] {
    Graph g = load_host(dec_host, gl.seed);
    DecomposeOptions opts;
    opts.force = force;
    opts.seed = gl.seed;
    const Rational delta = parse_rational(delta_text);
    json j{{"mode", mode}};
    if (mode == "bfkm") {
      Partition p = bfkm_partition(g, dec_k > 0 ? dec_k : min_degree(g));
      json parts = json::array();
      for (std::size_t i = 0; i < p.parts.size(); ++i)
        parts.push_back({{"vertices", set_json(p.parts[i])},
                         {"size_bound_met", p.guarantee[i].size_bound_met},
                         {"certified_connectivity", p.guarantee[i].certified_connectivity}});
      j["parts"] = parts;
      j["required_connectivity"] = p.required_connectivity;
    } else if (mode == "robust") {
      RobustPartition r = robust_partition(g, delta, opts);
      json parts = json::array();
      for (std::size_t i = 0; i < r.parts.size(); ++i)
        parts.push_back({{"vertices", set_json(r.parts[i])}, {"min_degree_inside", r.stats[i].min_degree_inside},
                         {"low_degree_count", r.stats[i].low_degree_count}});
      j["parts"] = parts;
      j["moved_vertices"] = set_json(r.moved_vertices);
      j["splits"] = r.splits;
      j["degree_floor"] = r.degree_floor;
      j["exception_budget"] = r.exception_budget;
    } else if (mode == "core") {
      j["core"] = core_json(extract_bipartite_core(g, delta, opts));
    } else {
      j["core"] = core_json(key2_extract(g, delta, dec_b, opts));
    }
    emit(gl, j.dump(2) + "\n");
  });

  // play
  HostArgs play_host;
  GameArgs play_game;
  std::string maker_id, breaker_id = "random";
  auto* play_cmd = app.add_subcommand("play", "Play one game and print its transcript");
  add_host_options(play_cmd, play_host);
  add_game_options(play_cmd, play_game);
  play_cmd->add_option("--maker", maker_id, "Maker strategy id")->required();
  play_cmd->add_option("--breaker", breaker_id, "Breaker strategy id");
  play_cmd->callback([&] {
    GameSpec spec = game_spec(load_host(play_host, gl.seed), play_game);
    auto maker = make_strategy(maker_id, *spec.host);
    auto breaker = make_strategy(breaker_id, *spec.host);
    GameResult r = play(spec, *maker, *breaker, gl.seed);
    TranscriptRecord rec = make_record(spec, r, maker->id(), breaker->id(), gl.seed);
    if (gl.format == "json") {
      emit(gl, json{{"winner", to_string(r.winner)},
                    {"rounds", r.rounds},
                    {"forfeit", r.forfeit ? json(std::string(to_string(*r.forfeit))) : json(nullptr)},
                    {"forfeit_reason", r.forfeit_reason},
                    {"witness", witness_json(r.witness)},
                    {"transcript", format_transcript(rec)}}
                       .dump(2) +
                   "\n");
    } else {
      emit(gl, format_transcript(rec));
    }
  });

  // solve
  HostArgs solve_host;
  GameArgs solve_game;
  SolveOptions solve_opts;
  bool no_memo = false, no_cutoff = false;
  auto* solve_cmd = app.add_subcommand("solve", "Solve a small game exactly");
  add_host_options(solve_cmd, solve_host);
  add_game_options(solve_cmd, solve_game);
  solve_cmd->add_option("--cap", solve_opts.cap, "Board size cap (at most 18)");
  solve_cmd->add_flag("--no-memo", no_memo, "Disable the position memo");
  solve_cmd->add_flag("--no-cutoff", no_cutoff, "Disable early win cutoffs");
  solve_cmd->add_flag("--sequence", solve_opts.sequence_batches, "Expand turns one claim at a time");
  solve_cmd->callback([&] {
    GameSpec spec = game_spec(load_host(solve_host, gl.seed), solve_game);
    solve_opts.memoize = !no_memo;
    solve_opts.early_cutoff = !no_cutoff;
    SolveVerdict v = solve(spec, solve_opts);
    emit(gl, json{{"winner", to_string(v.winner)},
                  {"principal_line", turns_json(v.principal_line)},
                  {"nodes_expanded", v.nodes_expanded}}
                     .dump(2) +
                 "\n");
  });

  // verify
  HostArgs ver_host;
  GameArgs ver_game;
  std::string ver_maker;
  VerifyOptions ver_opts;
  auto* ver = app.add_subcommand("verify", "Check a Maker strategy against every Breaker");
  add_host_options(ver, ver_host);
  add_game_options(ver, ver_game);
  ver->add_option("--maker", ver_maker, "Maker strategy id")->required();
  ver->add_option("--budget", ver_opts.node_budget, "Node budget");
  ver->callback([&] {
    GameSpec spec = game_spec(load_host(ver_host, gl.seed), ver_game);
    ver_opts.seed = gl.seed;
    auto maker = make_strategy(ver_maker, *spec.host);
    VerifyResult r = verify_maker_strategy(spec, *maker, ver_opts);
    const bool always = r.outcome == VerifyResult::Outcome::AlwaysWins;
    json j{{"outcome", always ? "always-wins" : "counter-transcript"}, {"nodes", r.nodes}, {"leaves", r.leaves}};
    if (!always) {
      j["reason"] = r.reason;
      j["counter"] = turns_json(r.counter);
    }
    emit(gl, j.dump(2) + "\n");
  });

  // experiment
  std::string config_path;
  int threads = 1;
  auto* exp = app.add_subcommand("experiment", "Run a seeded tournament from a JSON config");
  exp->add_option("--config", config_path, "Experiment config file")->required();
  exp->add_option("--threads", threads, "Worker threads");
  exp->callback([&] {
    ExperimentConfig cfg = load_config(config_path);
    if (gl.format == "csv") {
      cfg.output.clear();
    } else if (!gl.out.empty()) {
      cfg.output = gl.out;
    }
    ResultDocument doc = run_experiment(cfg, {.threads = threads});
    if (cfg.output.empty()) emit(gl, render_doc(gl, doc));
  });

  // sweep
  std::string sweep_config, range;
  auto* sweep = app.add_subcommand("sweep", "Run one experiment per Breaker bias");
  sweep->add_option("--config", sweep_config, "Experiment config file")->required();
  sweep->add_option("--biases", range, "Bias list such as 1..20 or 1,2,4")->required();
  sweep->add_option("--threads", threads, "Worker threads");
  sweep->callback([&] {
    ExperimentConfig cfg = load_config(sweep_config);
    SweepResult s = sweep_bias(cfg, parse_range(range), {.threads = threads});
    std::string text;
    if (gl.format == "csv") {
      text = "breaker_bias,win_rate,mean_rounds,max_witness_length\n";
      for (const SweepPoint& p : s.summary)
        text += fmt::format("{},{},{},{}\n", p.breaker_bias, p.win_rate, p.mean_rounds, p.max_witness_length);
    } else {
      json rows = json::array();
      for (const SweepPoint& p : s.summary)
        rows.push_back({{"breaker_bias", p.breaker_bias},
                        {"win_rate", p.win_rate},
                        {"mean_rounds", p.mean_rounds},
                        {"max_witness_length", p.max_witness_length}});
      text = json{{"summary", rows}}.dump(2) + "\n";
    }
    emit(gl, text);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const ResourceError& e) {
    std::cerr << "resource error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
