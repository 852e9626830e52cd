#include <algorithm>
#include <cmath>
#include <numeric>

#include "mbgame/errors.hpp"
#include "mbgame/strategies.hpp"

namespace mbgame {

namespace {

class Dsu {
 public:
  explicit Dsu(int n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  int find(int x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (b < a) std::swap(a, b);
    parent_[b] = a;  // root is the smallest member
    return true;
  }

 private:
  std::vector<int> parent_;
};

}  // namespace

ConnectivityPlanner::ConnectivityPlanner(std::shared_ptr<const Graph> host, std::vector<char> allowed_edges,
                                         std::vector<Vertex> span, int k)
    : host_(std::move(host)), allowed_(std::move(allowed_edges)), span_(std::move(span)), k_(k) {
  if (allowed_.size() != host_->size()) throw DomainError("allowed-edge mask has the wrong size");
  if (k_ < 1) throw DomainError("connectivity target must be positive");
  std::sort(span_.begin(), span_.end());
  local_.assign(host_->order(), -1);
  for (std::size_t i = 0; i < span_.size(); ++i) local_[span_[i]] = static_cast<int>(i);
  for (std::size_t e = 0; e < allowed_.size(); ++e) {
    const Edge& ed = host_->edges()[e];
    if (allowed_[e] && (local_[ed.u] < 0 || local_[ed.v] < 0)) allowed_[e] = 0;
  }
}

std::optional<int> ConnectivityPlanner::next_edge(const std::vector<Owner>& owners) const {
  const int s = static_cast<int>(span_.size());
  if (s <= 1) return std::nullopt;
  const auto& edges = host_->edges();
  Dsu dsu(s);
  for (std::size_t e = 0; e < edges.size(); ++e)
    if (allowed_[e] && owners[e] == Owner::Maker) dsu.unite(local_[edges[e].u], local_[edges[e].v]);

  std::vector<int> root(s);
  int components = 0;
  for (int i = 0; i < s; ++i) {
    root[i] = dsu.find(i);
    components += root[i] == i;
  }

  if (components > 1) {
    std::vector<int> available(s, 0);
    for (std::size_t e = 0; e < edges.size(); ++e) {
      if (!allowed_[e] || owners[e] != Owner::None) continue;
      int a = root[local_[edges[e].u]], b = root[local_[edges[e].v]];
      if (a == b) continue;
      ++available[a];
      ++available[b];
    }
    int target = -1;
    for (int i = 0; i < s; ++i)
      if (root[i] == i && available[i] > 0 && (target < 0 || available[i] < available[target])) target = i;
    if (target < 0) return std::nullopt;
    std::optional<int> best;
    int best_other = 0;
    for (std::size_t e = 0; e < edges.size(); ++e) {
      if (!allowed_[e] || owners[e] != Owner::None) continue;
      int a = root[local_[edges[e].u]], b = root[local_[edges[e].v]];
      if (a == b || (a != target && b != target)) continue;
      int other = available[a == target ? b : a];
      if (!best || other < best_other) {
        best = static_cast<int>(e);
        best_other = other;
      }
    }
    return best;
  }

  if (k_ == 1) return std::nullopt;
  std::vector<Edge> mine;
  for (std::size_t e = 0; e < edges.size(); ++e)
    if (allowed_[e] && owners[e] == Owner::Maker) mine.push_back(make_edge(local_[edges[e].u], local_[edges[e].v]));
  EdgeCut cut = min_edge_cut(Graph(s, mine));
  if (cut.value >= k_) return std::nullopt;
  std::vector<char> side(s, 0);
  for (Vertex v : cut.side) side[v] = 1;
  for (std::size_t e = 0; e < edges.size(); ++e)
    if (allowed_[e] && owners[e] == Owner::None && side[local_[edges[e].u]] != side[local_[edges[e].v]])
      return static_cast<int>(e);
  return std::nullopt;
}

std::vector<int> ConnectivityPlanner::pick(std::vector<Owner> owners, int count) const {
  std::vector<int> out;
  while (static_cast<int>(out.size()) < count) {
    auto e = next_edge(owners);
    if (!e) break;
    owners[*e] = Owner::Maker;
    out.push_back(*e);
  }
  return out;
}

bool ConnectivityPlanner::complete(const std::vector<Owner>& owners) const {
  const int s = static_cast<int>(span_.size());
  if (s <= 1) return true;
  std::vector<Edge> mine;
  const auto& edges = host_->edges();
  for (std::size_t e = 0; e < edges.size(); ++e)
    if (allowed_[e] && owners[e] == Owner::Maker) mine.push_back(make_edge(local_[edges[e].u], local_[edges[e].v]));
  Graph g(s, mine);
  return is_connected(g) && (k_ == 1 || edge_connectivity(g) >= k_);
}

namespace {

// Pads `picks` with the lowest unclaimed elements not already chosen.
void fill_lowest(const Position& pos, std::vector<int>& picks, int count) {
  std::vector<char> chosen(pos.board_size(), 0);
  for (int e : picks) chosen[e] = 1;
  for (int e = 0; e < pos.board_size() && static_cast<int>(picks.size()) < count; ++e)
    if (pos.owner(e) == Owner::None && !chosen[e]) picks.push_back(e);
}

void require_edge_board(const GameSpec& spec, const char* who) {
  if (spec.board != BoardKind::Edge) throw DomainError(std::string(who) + " plays on edge boards only");
}

std::vector<Vertex> all_vertices(int n) {
  std::vector<Vertex> v(n);
  std::iota(v.begin(), v.end(), 0);
  return v;
}

}  // namespace

void ConnectivityMaker::reset(const GameSpec& spec, Player, std::uint64_t) {
  require_edge_board(spec, "connectivity maker");
  int k = spec.objective.kind == WinPredicate::Kind::Connectivity ? spec.objective.k : 1;
  planner_ = ConnectivityPlanner(spec.host, std::vector<char>(spec.host->size(), 1), all_vertices(spec.host->order()), k);
}

std::optional<std::vector<int>> ConnectivityMaker::choose(const GameSpec&, const Position& pos, int count) {
  std::vector<int> picks = planner_.pick(pos.owners(), count);
  fill_lowest(pos, picks, count);
  return picks;
}

// ---- main1 ----

Main1Maker::Main1Maker(const Graph& g, const Rational& delta, const DecomposeOptions& opts)
    : delta_(delta), host_hash_(g.hash()), core_(extract_bipartite_core(g, delta, opts)) {
  if (!core_.witness_edge) throw InternalError("core without a witness edge");
  witness_edge_ = *g.edge_index(core_.witness_edge->u, core_.witness_edge->v);
}

std::string Main1Maker::id() const { return "main1(delta=" + to_string(delta_) + ")"; }

void Main1Maker::reset(const GameSpec& spec, Player, std::uint64_t) {
  require_edge_board(spec, "main1");
  if (spec.host->hash() != host_hash_) throw DomainError("main1 was built for a different host");
  const Graph& g = *spec.host;
  std::vector<char> allowed(g.size(), 0);
  for (std::size_t e = 0; e < g.size(); ++e) {
    const Edge& ed = g.edges()[e];
    allowed[e] = (core_.a.contains(ed.u) && core_.b.contains(ed.v)) || (core_.b.contains(ed.u) && core_.a.contains(ed.v));
  }
  std::vector<Vertex> span = core_.a.members();
  span.insert(span.end(), core_.b.members().begin(), core_.b.members().end());
  planner_ = ConnectivityPlanner(spec.host, std::move(allowed), std::move(span), 1);
  stage_ = turn_stage_ = 1;
}

std::optional<std::vector<int>> Main1Maker::choose(const GameSpec&, const Position& pos, int count) {
  std::vector<Owner> owners = pos.owners();
  std::vector<int> picks;
  turn_stage_ = stage_;
  if (stage_ == 1) {
    if (owners[witness_edge_] == Owner::Breaker) return std::nullopt;
    if (owners[witness_edge_] == Owner::None) {
      picks.push_back(witness_edge_);
      owners[witness_edge_] = Owner::Maker;
    }
    stage_ = 2;
  }
  for (int e : planner_.pick(owners, count - static_cast<int>(picks.size()))) picks.push_back(e);
  fill_lowest(pos, picks, count);
  return picks;
}

// ---- main3 ----

Main3Maker::Main3Maker(const Graph& g, int b, std::optional<int> target_k, std::uint64_t seed)
    : b_(b), target_(target_k), seed_(seed), host_hash_(g.hash()) {
  if (b < 1) throw DomainError("main3 needs b >= 1");
  if (target_ && *target_ < 1) throw DomainError("main3 target connectivity must be positive");
  if (find_odd_cycle(g).bipartite()) throw PreconditionError("main3 needs a host with chromatic number >= 3");
  host_edge_connectivity_ = edge_connectivity(g);
  if (g.order() >= 2 && b > 1)
    k_threshold_ = 100.0 * std::log2(static_cast<double>(g.order())) * b * std::log2(static_cast<double>(b));
  search_ = best_spanning_bipartite(g, seed);
  if (target_) {
    k_prime_ = *target_;
    case_one_ = !search_.color.empty() && search_.connectivity >= k_prime_;
  } else {
    k_prime_ = search_.connectivity;
    case_one_ = !search_.color.empty() && k_prime_ >= 1;
  }
  if (case_one_)
    for (std::size_t e = 0; e < g.size(); ++e)
      if (search_.color[g.edges()[e].u] == search_.color[g.edges()[e].v]) inner_edges_.push_back(static_cast<int>(e));
}

std::string Main3Maker::id() const {
  std::string out = "main3(b=" + std::to_string(b_);
  if (target_) out += ",k=" + std::to_string(*target_);
  if (seed_) out += ",seed=" + std::to_string(seed_);
  return out + ")";
}

void Main3Maker::reset(const GameSpec& spec, Player, std::uint64_t) {
  require_edge_board(spec, "main3");
  if (spec.host->hash() != host_hash_) throw DomainError("main3 was built for a different host");
  const Graph& g = *spec.host;
  if (case_one_) {
    std::vector<char> allowed(g.size(), 0);
    for (std::size_t e = 0; e < g.size(); ++e)
      allowed[e] = search_.color[g.edges()[e].u] != search_.color[g.edges()[e].v];
    planner_ = ConnectivityPlanner(spec.host, std::move(allowed), all_vertices(g.order()), 1);
    stage_ = turn_stage_ = 1;
  } else {
    const int k = target_ ? *target_ : k_prime_ + 1;
    planner_ = ConnectivityPlanner(spec.host, std::vector<char>(g.size(), 1), all_vertices(g.order()), k);
    stage_ = turn_stage_ = 2;
  }
}

std::optional<std::vector<int>> Main3Maker::choose(const GameSpec&, const Position& pos, int count) {
  std::vector<Owner> owners = pos.owners();
  std::vector<int> picks;
  turn_stage_ = stage_;
  if (stage_ == 1) {
    bool have = false;
    std::optional<int> free;
    for (int e : inner_edges_) {
      if (owners[e] == Owner::Maker) have = true;
      if (owners[e] == Owner::None && !free) free = e;
    }
    if (!have) {
      if (!free) return std::nullopt;
      picks.push_back(*free);
      owners[*free] = Owner::Maker;
    }
    stage_ = 2;
  }
  for (int e : planner_.pick(owners, count - static_cast<int>(picks.size()))) picks.push_back(e);
  fill_lowest(pos, picks, count);
  return picks;
}

}  // namespace mbgame
