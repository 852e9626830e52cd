#include <algorithm>
#include <set>

#include "mbgame/errors.hpp"
#include "mbgame/harness.hpp"
#include "mbgame/rng.hpp"

namespace mbgame {

Graph gnp_graph(int n, const Rational& p, std::uint64_t seed) {
  if (n < 0) throw DomainError("gnp needs n >= 0");
  if (p < 0 || p > 1) throw DomainError("gnp needs 0 <= p <= 1");
  Rng rng(seed);
  std::vector<Edge> edges;
  const auto num = static_cast<std::uint64_t>(p.numerator()), den = static_cast<std::uint64_t>(p.denominator());
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v)
      if (rng.chance(num, den)) edges.push_back({u, v});
  return Graph(n, edges);
}

Graph complete_multipartite(const std::vector<int>& sizes) {
  if (sizes.empty()) throw DomainError("multipartite needs at least one part");
  std::vector<int> part;
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    if (sizes[i] < 1) throw DomainError("multipartite part sizes must be positive");
    part.insert(part.end(), sizes[i], static_cast<int>(i));
  }
  const int n = static_cast<int>(part.size());
  std::vector<Edge> edges;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v)
      if (part[u] != part[v]) edges.push_back({u, v});
  return Graph(n, edges);
}

Graph odd_cycle_blowup(int length, int m) {
  if (length < 3 || length % 2 == 0) throw DomainError("blowup needs an odd cycle length >= 3");
  if (m < 1) throw DomainError("blowup needs m >= 1");
  std::vector<Edge> edges;
  for (int i = 0; i < length; ++i) {
    const int j = (i + 1) % length;
    for (int x = 0; x < m; ++x)
      for (int y = 0; y < m; ++y) edges.push_back(make_edge(i * m + x, j * m + y));
  }
  return Graph(length * m, edges);
}

Graph random_regular(int n, int d, std::uint64_t seed) {
  if (n < 1 || d < 0 || d >= n || (static_cast<long long>(n) * d) % 2 != 0)
    throw DomainError("regular needs 0 <= d < n with n*d even");
  Rng rng(seed);
  for (int attempt = 0; attempt < 200; ++attempt) {
    std::vector<Vertex> stubs;
    for (Vertex v = 0; v < n; ++v) stubs.insert(stubs.end(), d, v);
    std::set<Edge> edges;
    auto usable = [&](std::size_t i, std::size_t j) {
      return stubs[i] != stubs[j] && !edges.contains(make_edge(stubs[i], stubs[j]));
    };
    auto take = [&](std::size_t i, std::size_t j) {
      edges.insert(make_edge(stubs[i], stubs[j]));
      if (i < j) std::swap(i, j);
      stubs[i] = stubs.back();
      stubs.pop_back();
      stubs[j] = stubs.back();
      stubs.pop_back();
    };
    bool stuck = false;
    while (!stubs.empty() && !stuck) {
      bool done = false;
      for (int t = 0; t < 64 && !done; ++t) {
        std::size_t i = rng.below(stubs.size()), j = rng.below(stubs.size());
        if (i != j && usable(i, j)) {
          take(i, j);
          done = true;
        }
      }
      if (done) continue;
      std::vector<std::pair<std::size_t, std::size_t>> options;
      for (std::size_t i = 0; i < stubs.size(); ++i)
        for (std::size_t j = i + 1; j < stubs.size(); ++j)
          if (usable(i, j)) options.emplace_back(i, j);
      if (options.empty()) {
        stuck = true;
      } else {
        auto [i, j] = options[rng.below(options.size())];
        take(i, j);
      }
    }
    if (!stuck) return Graph(n, std::vector<Edge>(edges.begin(), edges.end()));
  }
  throw DomainError("regular: no simple pairing found");
}

Graph graph_union(const Graph& a, const Graph& b) {
  std::vector<Edge> edges = a.edges();
  for (const Edge& e : b.edges()) edges.push_back({e.u + a.order(), e.v + a.order()});
  return Graph(a.order() + b.order(), edges);
}

Graph graph_join(const Graph& a, const Graph& b) {
  Graph u = graph_union(a, b);
  std::vector<Edge> edges = u.edges();
  for (Vertex x = 0; x < a.order(); ++x)
    for (Vertex y = 0; y < b.order(); ++y) edges.push_back({x, a.order() + y});
  return Graph(u.order(), edges);
}

namespace {

int int_param(const GeneratorSpec& spec, const char* key) {
  const auto it = spec.params.find(key);
  if (it == spec.params.end() || !it->is_number_integer())
    throw DomainError(spec.family + " needs an integer parameter '" + key + "'");
  return it->get<int>();
}

Rational rational_param(const GeneratorSpec& spec, const char* key) {
  const auto it = spec.params.find(key);
  if (it == spec.params.end()) throw DomainError(spec.family + " needs a parameter '" + key + "'");
  if (it->is_string()) return parse_rational(it->get<std::string>());
  if (it->is_number_integer()) return Rational(it->get<std::int64_t>());
  throw DomainError(spec.family + " parameter '" + key + "' must be a rational string such as \"1/2\"");
}

Graph build(const GeneratorSpec& spec) {
  const std::string& f = spec.family;
  if (f == "gnp") return gnp_graph(int_param(spec, "n"), rational_param(spec, "p"), spec.seed);
  if (f == "multipartite") {
    const auto it = spec.params.find("sizes");
    if (it == spec.params.end() || !it->is_array()) throw DomainError("multipartite needs an array 'sizes'");
    return complete_multipartite(it->get<std::vector<int>>());
  }
  if (f == "blowup") return odd_cycle_blowup(int_param(spec, "length"), int_param(spec, "m"));
  if (f == "regular") return random_regular(int_param(spec, "n"), int_param(spec, "d"), spec.seed);
  if (f == "union" || f == "join") {
    const auto it = spec.params.find("parts");
    if (it == spec.params.end() || !it->is_array() || it->empty())
      throw DomainError(f + " needs a non-empty array 'parts'");
    std::optional<Graph> acc;
    for (std::size_t k = 0; k < it->size(); ++k) {
      GeneratorSpec part = (*it)[k].get<GeneratorSpec>();
      part.seed = splitmix64(spec.seed + k + 1);
      Graph g = build(part);
      acc = !acc ? g : f == "union" ? graph_union(*acc, g) : graph_join(*acc, g);
    }
    return *acc;
  }
  throw ConfigError("unknown graph family '" + f + "'");
}

}  // namespace

Generated generate(const GeneratorSpec& spec) {
  Graph g = build(spec);
  const int delta = g.order() == 0 ? 0 : min_degree(g);
  return Generated{std::move(g), delta};
}

void to_json(nlohmann::json& j, const GeneratorSpec& g) {
  j = nlohmann::json{{"family", g.family}, {"params", g.params}, {"seed", g.seed}};
}

void from_json(const nlohmann::json& j, GeneratorSpec& g) {
  j.at("family").get_to(g.family);
  g.params = j.value("params", nlohmann::json::object());
  g.seed = j.value("seed", std::uint64_t{0});
}

}  // namespace mbgame
