#include <atomic>
#include <chrono>
#include <ctime>
#include <fstream>
#include <thread>

#include <fmt/format.h>

#include "mbgame/errors.hpp"
#include "mbgame/harness.hpp"

namespace mbgame {

using nlohmann::json;

namespace {

json player_or_null(const std::optional<Player>& p) {
  return p ? json(std::string(to_string(*p))) : json(nullptr);
}

std::optional<Player> player_from(const json& j) {
  if (j.is_null()) return std::nullopt;
  return parse_player(j.get<std::string>());
}

std::string utc_now() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

void to_json(json& j, const ExperimentConfig& c) {
  j = json{{"generator", c.generator},
           {"board", std::string(to_string(c.board))},
           {"maker_bias", c.maker_bias},
           {"breaker_bias", c.breaker_bias},
           {"first", std::string(to_string(c.first))},
           {"objective", c.objective},
           {"maker", c.maker},
           {"breaker", c.breaker},
           {"trials", c.trials},
           {"seed_base", c.seed_base},
           {"output", c.output}};
}

void from_json(const json& j, ExperimentConfig& c) {
  try {
    j.at("generator").get_to(c.generator);
    c.board = parse_board(j.value("board", std::string("edge")));
    c.maker_bias = j.value("maker_bias", 1);
    c.breaker_bias = j.value("breaker_bias", 1);
    c.first = parse_player(j.value("first", std::string("maker")));
    c.objective = j.value("objective", std::string("odd-cycle"));
    j.at("maker").get_to(c.maker);
    j.at("breaker").get_to(c.breaker);
    c.trials = j.value("trials", 0);
    c.seed_base = j.value("seed_base", std::uint64_t{0});
    c.output = j.value("output", std::string());
  } catch (const json::exception& e) {
    throw ConfigError(std::string("bad experiment config: ") + e.what());
  } catch (const ParseError& e) {
    throw ConfigError(std::string("bad experiment config: ") + e.what());
  }
}

Aggregate aggregate(const std::vector<TrialRow>& rows) {
  Aggregate a;
  a.trials = static_cast<int>(rows.size());
  long long rounds = 0;
  int completed = 0;
  for (const TrialRow& r : rows) {
    if (!r.winner) {
      ++a.failures;
      continue;
    }
    ++completed;
    rounds += r.rounds;
    if (*r.winner == Player::Maker) {
      ++a.maker_wins;
      if (!r.witness_valid) ++a.invalid_witnesses;
      if (r.witness_length) ++a.witness_length_histogram[*r.witness_length];
    }
  }
  if (a.trials > 0) a.win_rate = static_cast<double>(a.maker_wins) / a.trials;
  if (completed > 0) a.mean_rounds = static_cast<double>(rounds) / completed;
  return a;
}

json document_to_json(const ResultDocument& doc) {
  json trials = json::array();
  for (const TrialRow& r : doc.trials) {
    trials.push_back({{"trial", r.trial},
                      {"seed", r.seed},
                      {"winner", player_or_null(r.winner)},
                      {"rounds", r.rounds},
                      {"forfeit", player_or_null(r.forfeit)},
                      {"witness_length", r.witness_length ? json(*r.witness_length) : json(nullptr)},
                      {"witness_valid", r.witness_valid},
                      {"error", r.error.empty() ? json(nullptr) : json(r.error)}});
  }
  json hist = json::object();
  for (const auto& [len, count] : doc.aggregate.witness_length_histogram) hist[std::to_string(len)] = count;
  return json{{"schema", doc.schema},
              {"code_version", doc.code_version},
              {"timestamp", doc.timestamp},
              {"config", doc.config},
              {"host",
               {{"order", doc.host.order},
                {"size", doc.host.size},
                {"min_degree", doc.host.min_degree},
                {"hash", fmt::format("{:016x}", doc.host.hash)}}},
              {"trials", trials},
              {"aggregate",
               {{"trials", doc.aggregate.trials},
                {"maker_wins", doc.aggregate.maker_wins},
                {"failures", doc.aggregate.failures},
                {"invalid_witnesses", doc.aggregate.invalid_witnesses},
                {"win_rate", doc.aggregate.win_rate},
                {"mean_rounds", doc.aggregate.mean_rounds},
                {"witness_length_histogram", hist}}}};
}

ResultDocument document_from_json(const json& j) {
  ResultDocument doc;
  try {
    j.at("schema").get_to(doc.schema);
    if (doc.schema != kResultSchema) throw ParseError("unsupported result schema '" + doc.schema + "'");
    j.at("code_version").get_to(doc.code_version);
    j.at("timestamp").get_to(doc.timestamp);
    j.at("config").get_to(doc.config);
    const json& h = j.at("host");
    h.at("order").get_to(doc.host.order);
    h.at("size").get_to(doc.host.size);
    h.at("min_degree").get_to(doc.host.min_degree);
    doc.host.hash = std::stoull(h.at("hash").get<std::string>(), nullptr, 16);
    for (const json& t : j.at("trials")) {
      TrialRow r;
      t.at("trial").get_to(r.trial);
      t.at("seed").get_to(r.seed);
      r.winner = player_from(t.at("winner"));
      t.at("rounds").get_to(r.rounds);
      r.forfeit = player_from(t.at("forfeit"));
      if (!t.at("witness_length").is_null()) r.witness_length = t.at("witness_length").get<int>();
      t.at("witness_valid").get_to(r.witness_valid);
      if (!t.at("error").is_null()) r.error = t.at("error").get<std::string>();
      doc.trials.push_back(std::move(r));
    }
    const json& a = j.at("aggregate");
    a.at("trials").get_to(doc.aggregate.trials);
    a.at("maker_wins").get_to(doc.aggregate.maker_wins);
    a.at("failures").get_to(doc.aggregate.failures);
    a.at("invalid_witnesses").get_to(doc.aggregate.invalid_witnesses);
    a.at("win_rate").get_to(doc.aggregate.win_rate);
    a.at("mean_rounds").get_to(doc.aggregate.mean_rounds);
    for (const auto& [len, count] : a.at("witness_length_histogram").items())
      doc.aggregate.witness_length_histogram[std::stoi(len)] = count.get<int>();
  } catch (const json::exception& e) {
    throw ParseError(std::string("bad result document: ") + e.what());
  }
  return doc;
}

std::string canonical_text(const ResultDocument& doc) {
  ResultDocument copy = doc;
  copy.timestamp.clear();
  return document_to_json(copy).dump(2) + "\n";
}

std::string to_csv(const ResultDocument& doc) {
  std::string out = "trial,seed,winner,rounds,forfeit,witness_length,witness_valid,error\n";
  for (const TrialRow& r : doc.trials) {
    out += fmt::format("{},{},{},{},{},{},{},{}\n", r.trial, r.seed, r.winner ? to_string(*r.winner) : "",
                       r.rounds, r.forfeit ? to_string(*r.forfeit) : "",
                       r.witness_length ? std::to_string(*r.witness_length) : "", r.witness_valid ? 1 : 0,
                       csv_field(r.error));
  }
  return out;
}

void write_atomically(const std::filesystem::path& path, const std::string& text) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    out << text;
    out.flush();
    if (!out) throw std::runtime_error("write to " + tmp.string() + " failed");
  }
  std::filesystem::rename(tmp, path);
}

ResultDocument run_experiment(const ExperimentConfig& config, const RunOptions& options) {
  if (config.trials < 0) throw ConfigError("trial count must be non-negative");
  WinPredicate objective;
  try {
    objective = WinPredicate::parse(config.objective);
  } catch (const std::exception& e) {
    throw ConfigError(std::string("bad objective: ") + e.what());
  }
  Generated gen;
  try {
    gen = generate(config.generator);
  } catch (const DomainError& e) {
    throw ConfigError(std::string("bad generator: ") + e.what());
  }
  GameSpec spec;
  try {
    spec = make_game(gen.graph, config.board, config.maker_bias, config.breaker_bias, objective, config.first);
    spec.validate();
  } catch (const DomainError& e) {
    throw ConfigError(std::string("bad game: ") + e.what());
  }
  const std::unique_ptr<Strategy> maker = make_strategy(config.maker, *spec.host);
  const std::unique_ptr<Strategy> breaker = make_strategy(config.breaker, *spec.host);

  ResultDocument doc;
  doc.config = config;
  doc.host = HostSummary{spec.host->order(), spec.host->size(), gen.min_degree, spec.host->hash()};
  doc.trials.resize(config.trials);

  auto run_trial = [&](int i) {
    TrialRow& row = doc.trials[i];
    row.trial = i;
    row.seed = config.seed_base + static_cast<std::uint64_t>(i);
    try {
      std::unique_ptr<Strategy> m = maker->clone(), b = breaker->clone();
      GameResult r = play(spec, *m, *b, row.seed);
      row.winner = r.winner;
      row.rounds = r.rounds;
      row.forfeit = r.forfeit;
      if (r.winner == Player::Maker && r.witness) {
        row.witness_length = static_cast<int>(r.witness->length());
        row.witness_valid = validate_witness(spec, r.maker_claims, *r.witness);
      }
    } catch (const std::exception& e) {
      row.winner.reset();
      row.error = e.what();
    }
  };

  const int threads = std::max(1, std::min(options.threads, config.trials));
  if (threads <= 1) {
    for (int i = 0; i < config.trials; ++i) run_trial(i);
  } else {
    std::atomic<int> next{0};
    std::vector<std::jthread> pool;
    for (int t = 0; t < threads; ++t)
      pool.emplace_back([&] {
        for (int i = next++; i < config.trials; i = next++) run_trial(i);
      });
  }

  doc.aggregate = aggregate(doc.trials);
  doc.timestamp = utc_now();
  if (!config.output.empty()) write_atomically(config.output, document_to_json(doc).dump(2) + "\n");
  return doc;
}

SweepResult sweep_bias(const ExperimentConfig& config, const std::vector<int>& biases, const RunOptions& options) {
  SweepResult out;
  for (int b : biases) {
    ExperimentConfig c = config;
    c.breaker_bias = b;
    if (!config.output.empty()) {
      std::filesystem::path p(config.output);
      c.output = (p.parent_path() / fmt::format("{}.b{}{}", p.stem().string(), b, p.extension().string())).string();
    }
    ResultDocument doc = run_experiment(c, options);
    SweepPoint point{b, doc.aggregate.win_rate, doc.aggregate.mean_rounds, 0};
    if (!doc.aggregate.witness_length_histogram.empty())
      point.max_witness_length = doc.aggregate.witness_length_histogram.rbegin()->first;
    out.summary.push_back(point);
    out.documents.push_back(std::move(doc));
  }
  return out;
}

}  // namespace mbgame
