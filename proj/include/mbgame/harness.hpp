#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "mbgame/engine.hpp"

namespace mbgame {

inline constexpr const char* kCodeVersion = "mbgame-0.1.0";
inline constexpr const char* kResultSchema = "result-v1";

// ---- generators ----

// family: "gnp" {n, p}, "multipartite" {sizes}, "blowup" {length, m},
// "regular" {n, d}, "union" {parts}, "join" {parts}. p is a rational string
// such as "1/2"; parts are nested generator specs.
struct GeneratorSpec {
  std::string family;
  nlohmann::json params = nlohmann::json::object();
  std::uint64_t seed = 0;

  bool operator==(const GeneratorSpec&) const = default;
};

struct Generated {
  Graph graph;
  int min_degree = 0;
};

// Deterministic given the seed. Throws DomainError for bad parameters.
Generated generate(const GeneratorSpec& spec);

Graph gnp_graph(int n, const Rational& p, std::uint64_t seed);
Graph complete_multipartite(const std::vector<int>& sizes);
Graph odd_cycle_blowup(int length, int m);
Graph random_regular(int n, int d, std::uint64_t seed);
Graph graph_union(const Graph& a, const Graph& b);
Graph graph_join(const Graph& a, const Graph& b);

void to_json(nlohmann::json& j, const GeneratorSpec& g);
void from_json(const nlohmann::json& j, GeneratorSpec& g);

// ---- strategy registry ----

// Parsed form of "name(key=value,...)".
struct StrategyId {
  std::string name;
  std::map<std::string, std::string> params;
};

StrategyId parse_strategy_id(std::string_view text);

// Builds a strategy for `host`. Unknown names or parameters, and strategies
// whose construction preconditions fail, raise ConfigError.
std::unique_ptr<Strategy> make_strategy(std::string_view id, const Graph& host);
std::vector<std::string> strategy_names();

// ---- experiments ----

struct ExperimentConfig {
  GeneratorSpec generator;
  BoardKind board = BoardKind::Edge;
  int maker_bias = 1;
  int breaker_bias = 1;
  Player first = Player::Maker;
  std::string objective = "odd-cycle";
  std::string maker;
  std::string breaker;
  int trials = 0;
  std::uint64_t seed_base = 0;
  std::string output;  // empty: do not write

  bool operator==(const ExperimentConfig&) const = default;
};

void to_json(nlohmann::json& j, const ExperimentConfig& c);
void from_json(const nlohmann::json& j, ExperimentConfig& c);

struct TrialRow {
  int trial = 0;
  std::uint64_t seed = 0;
  std::optional<Player> winner;  // empty when the trial failed
  int rounds = 0;
  std::optional<Player> forfeit;
  std::optional<int> witness_length;
  bool witness_valid = false;
  std::string error;

  bool operator==(const TrialRow&) const = default;
};

struct Aggregate {
  int trials = 0;
  int maker_wins = 0;
  int failures = 0;
  int invalid_witnesses = 0;
  double win_rate = 0;
  double mean_rounds = 0;
  std::map<int, int> witness_length_histogram;

  bool operator==(const Aggregate&) const = default;
};

Aggregate aggregate(const std::vector<TrialRow>& rows);

struct HostSummary {
  int order = 0;
  std::size_t size = 0;
  int min_degree = 0;
  std::uint64_t hash = 0;

  bool operator==(const HostSummary&) const = default;
};

struct ResultDocument {
  std::string schema = kResultSchema;
  std::string code_version = kCodeVersion;
  std::string timestamp;
  ExperimentConfig config;
  HostSummary host;
  std::vector<TrialRow> trials;
  Aggregate aggregate;
};

nlohmann::json document_to_json(const ResultDocument& doc);
ResultDocument document_from_json(const nlohmann::json& j);
// Serialized document with the timestamp blanked, for reproducibility checks.
std::string canonical_text(const ResultDocument& doc);
std::string to_csv(const ResultDocument& doc);

// Writes through a temporary file in the same directory and a rename.
void write_atomically(const std::filesystem::path& path, const std::string& text);

struct RunOptions {
  int threads = 1;
};

// Trial i uses seed seed_base + i. Writes the document when config.output is set.
ResultDocument run_experiment(const ExperimentConfig& config, const RunOptions& options = {});

struct SweepPoint {
  int breaker_bias = 0;
  double win_rate = 0;
  double mean_rounds = 0;
  int max_witness_length = 0;
};

struct SweepResult {
  std::vector<ResultDocument> documents;
  std::vector<SweepPoint> summary;
};

// One experiment per Breaker bias. With config.output set, document b is
// written to "<stem>.b<b><ext>".
SweepResult sweep_bias(const ExperimentConfig& config, const std::vector<int>& biases,
                       const RunOptions& options = {});

}  // namespace mbgame
