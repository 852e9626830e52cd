#include <charconv>

#include "mbgame/errors.hpp"
#include "mbgame/harness.hpp"
#include "mbgame/solver.hpp"
#include "mbgame/strategies.hpp"

namespace mbgame {

StrategyId parse_strategy_id(std::string_view text) {
  StrategyId id;
  const auto open = text.find('(');
  if (open == std::string_view::npos) {
    id.name = std::string(text);
  } else {
    if (text.back() != ')') throw ConfigError("strategy id '" + std::string(text) + "' is missing ')'");
    id.name = std::string(text.substr(0, open));
    std::string_view body = text.substr(open + 1, text.size() - open - 2);
    while (!body.empty()) {
      const auto comma = body.find(',');
      std::string_view item = body.substr(0, comma);
      const auto eq = item.find('=');
      if (eq == std::string_view::npos || eq == 0)
        throw ConfigError("strategy parameter '" + std::string(item) + "' is not key=value");
      auto [it, fresh] = id.params.emplace(std::string(item.substr(0, eq)), std::string(item.substr(eq + 1)));
      if (!fresh) throw ConfigError("strategy parameter '" + it->first + "' given twice");
      body = comma == std::string_view::npos ? std::string_view{} : body.substr(comma + 1);
    }
  }
  if (id.name.empty()) throw ConfigError("empty strategy name");
  return id;
}

namespace {

class Params {
 public:
  explicit Params(StrategyId id) : id_(std::move(id)) {}

  std::optional<std::string> take(const std::string& key) {
    auto it = id_.params.find(key);
    if (it == id_.params.end()) return std::nullopt;
    std::string v = it->second;
    id_.params.erase(it);
    return v;
  }

  std::optional<std::int64_t> integer(const std::string& key) {
    auto v = take(key);
    if (!v) return std::nullopt;
    std::int64_t out = 0;
    auto [p, ec] = std::from_chars(v->data(), v->data() + v->size(), out);
    if (ec != std::errc{} || p != v->data() + v->size())
      throw ConfigError(id_.name + ": parameter '" + key + "' must be an integer");
    return out;
  }

  std::int64_t required_integer(const std::string& key) {
    auto v = integer(key);
    if (!v) throw ConfigError(id_.name + " needs parameter '" + key + "'");
    return *v;
  }

  Rational required_rational(const std::string& key) {
    auto v = take(key);
    if (!v) throw ConfigError(id_.name + " needs parameter '" + key + "'");
    try {
      return parse_rational(*v);
    } catch (const std::exception&) {
      throw ConfigError(id_.name + ": parameter '" + key + "' must be rational");
    }
  }

  bool flag(const std::string& key) { return integer(key).value_or(0) != 0; }

  void finish() const {
    if (!id_.params.empty()) throw ConfigError(id_.name + ": unknown parameter '" + id_.params.begin()->first + "'");
  }

 private:
  StrategyId id_;
};

std::unique_ptr<Strategy> build(Params& p, const std::string& name, const Graph& host) {
  if (name == "random") return std::make_unique<RandomBreaker>();
  if (name == "bipartite_guard") return std::make_unique<BipartiteGuardBreaker>();
  if (name == "cut_attack") return std::make_unique<CutAttackBreaker>();
  if (name == "connectivity") return std::make_unique<ConnectivityMaker>();
  if (name == "solver") return std::make_unique<SolverStrategy>();
  if (name == "main1") {
    DecomposeOptions opts;
    const Rational delta = p.required_rational("delta");
    opts.force = p.flag("force");
    p.finish();
    return std::make_unique<Main1Maker>(host, delta, opts);
  }
  if (name == "main2") {
    Main2Options opts;
    const Rational delta = p.required_rational("delta");
    const auto b = static_cast<int>(p.required_integer("b"));
    const auto seed = static_cast<std::uint64_t>(p.integer("seed").value_or(0));
    opts.decompose.force = p.flag("force");
    opts.domination_budget = p.integer("budget");
    p.finish();
    return std::make_unique<Main2Maker>(host, delta, b, seed, opts);
  }
  if (name == "main3") {
    const auto b = static_cast<int>(p.required_integer("b"));
    std::optional<int> k;
    if (auto v = p.integer("k")) k = static_cast<int>(*v);
    const auto seed = static_cast<std::uint64_t>(p.integer("seed").value_or(0));
    p.finish();
    return std::make_unique<Main3Maker>(host, b, k, seed);
  }
  throw ConfigError("unknown strategy '" + name + "'");
}

}  // namespace

std::unique_ptr<Strategy> make_strategy(std::string_view text, const Graph& host) {
  StrategyId id = parse_strategy_id(text);
  const std::string name = id.name;
  Params params(std::move(id));
  std::unique_ptr<Strategy> s;
  try {
    s = build(params, name, host);
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError("cannot build strategy '" + std::string(text) + "': " + e.what());
  }
  params.finish();
  return s;
}

std::vector<std::string> strategy_names() {
  return {"random", "bipartite_guard", "cut_attack", "connectivity", "solver", "main1", "main2", "main3"};
}

}  // namespace mbgame
