#include <algorithm>
#include <cmath>

#include "mbgame/errors.hpp"
#include "mbgame/strategies.hpp"

namespace mbgame {

Main2Maker::Main2Maker(const Graph& g, const Rational& delta, int b, std::uint64_t seed, const Main2Options& opts)
    : g_(std::make_shared<const Graph>(g)), delta_(delta), b_(b), seed_(seed), opts_(opts) {
  try {
    core_ = key2_extract(g, delta, b, opts.decompose);
  } catch (const PreconditionError& ex) {
    if (!opts.decompose.force) throw;
    core_error_ = ex.what();
  }
  const int n = g.order();
  in_h_.assign(n, 0);
  if (core_) {
    h_ = std::make_shared<const Graph>(core_graph(g, *core_));
    for (Vertex v : core_->a.members()) in_h_[v] = 1;
    for (Vertex v : core_->b.members()) in_h_[v] = 1;
  }
  budget_ = opts.domination_budget ? *opts.domination_budget
                                   : (n >= 2 && delta < 1 ? bound_report(n, delta, b).dominating_size : n);
  const double d = to_double(delta);
  const double quarter = std::pow(static_cast<double>(n), 0.75);
  secure_floor_ = (d * n - static_cast<double>(ceil_int(Rational(1) / delta)) * quarter) / 2;
  triangle_threshold_ = d * d * n / 4;
  case_one_threshold_ = std::sqrt(static_cast<double>(n)) / 4;
}

std::string Main2Maker::id() const {
  return "main2(delta=" + to_string(delta_) + ",b=" + std::to_string(b_) + ",seed=" + std::to_string(seed_) + ")";
}

void Main2Maker::reset(const GameSpec& spec, Player, std::uint64_t seed) {
  if (spec.board != BoardKind::Vertex) throw DomainError("main2 plays on vertex boards only");
  if (spec.host->hash() != g_->hash()) throw DomainError("main2 was built for a different host");
  rng_ = Rng(splitmix64(seed_) ^ seed);
  stage_ = StarStage;
  centre_.reset();
  leaves_.clear();
  u_.reset();
  v_.reset();
  d_.clear();
  partner_.clear();
  spent_ = 0;
  case_one_moves_ = 0;
  forfeit_reason_.clear();
}

std::optional<std::vector<int>> Main2Maker::choose(const GameSpec&, const Position& pos, int count) {
  Claims c;
  c.mine.assign(g_->order(), 0);
  c.taken.assign(g_->order(), 0);
  for (int v = 0; v < g_->order(); ++v) {
    c.mine[v] = pos.owner(v) == Owner::Maker;
    c.taken[v] = pos.owner(v) != Owner::None;
  }
  std::vector<int> picks;
  while (static_cast<int>(picks.size()) < count) {
    auto e = next_claim(c);
    if (!e) return std::nullopt;
    c.mine[*e] = c.taken[*e] = 1;
    picks.push_back(*e);
  }
  return picks;
}

std::optional<int> Main2Maker::next_claim(const Claims& c) {
  for (;;) {
    Step s{Step::Forfeit};
    switch (stage_) {
      case StarStage:
        s = star_step(c);
        break;
      case DominationStage:
        s = domination_step(c);
        break;
      case SecureStage:
        s = secure_step(c);
        break;
      default:
        s = merge_step(c);
        break;
    }
    if (s.kind == Step::Claim) return s.element;
    if (s.kind == Step::Forfeit) return std::nullopt;
  }
}

Main2Maker::Step Main2Maker::forfeit(std::string reason) {
  forfeit_reason_ = std::move(reason);
  return {Step::Forfeit};
}

Main2Maker::Step Main2Maker::star_step(const Claims& c) {
  if (!core_) return forfeit("no bipartite core: " + core_error_);
  const VertexSet& a = core_->a;
  if (!centre_) {
    std::optional<Vertex> best;
    std::vector<Vertex> best_leaves;
    for (Vertex x : a.members()) {
      if (c.taken[x]) continue;
      std::vector<Vertex> leaves;
      for (Vertex y : g_->neighbors(x))
        if (a.contains(y) && !c.taken[y]) leaves.push_back(y);
      if (static_cast<int>(leaves.size()) > b_ && (!best || leaves.size() > best_leaves.size())) {
        best = x;
        best_leaves = std::move(leaves);
      }
    }
    if (!best) return forfeit("no star with b+1 free leaves inside A");
    centre_ = best;
    leaves_ = std::move(best_leaves);
    return {Step::Claim, *best};
  }
  for (Vertex y : leaves_)
    if (!c.taken[y]) {
      u_ = centre_;
      v_ = y;
      stage_ = DominationStage;
      return {Step::Claim, y};
    }
  return forfeit("every leaf of the star was claimed");
}

bool Main2Maker::dominates() const {
  std::vector<char> covered(g_->order(), 0);
  for (Vertex x : d_) {
    covered[x] = 1;
    for (Vertex y : h_->neighbors(x)) covered[y] = 1;
  }
  for (int v = 0; v < g_->order(); ++v)
    if (in_h_[v] && !covered[v]) return false;
  return true;
}

Main2Maker::Step Main2Maker::domination_step(const Claims& c) {
  if (!d_.empty() && dominates()) {
    stage_ = SecureStage;
    partner_.assign(d_.size(), -1);
    return {Step::Advance};
  }
  if (spent_ >= budget_) return forfeit("domination budget exhausted");
  std::vector<Vertex> free;
  for (int v = 0; v < g_->order(); ++v)
    if (in_h_[v] && !c.taken[v]) free.push_back(v);
  if (free.empty()) return forfeit("no free vertex left for domination");
  Vertex x = free[rng_.below(free.size())];
  d_.push_back(x);
  ++spent_;
  return {Step::Claim, x};
}

Main2Maker::Step Main2Maker::secure_step(const Claims& c) {
  std::vector<char> in_d(g_->order(), 0), used(g_->order(), 0);
  for (Vertex x : d_) in_d[x] = 1;
  for (Vertex z : partner_)
    if (z >= 0) used[z] = 1;
  auto qualifies = [&](Vertex z) {
    return !in_d[z] && !used[z] && static_cast<double>(h_->degree(z)) >= secure_floor_;
  };
  for (std::size_t i = 0; i < d_.size(); ++i) {
    if (partner_[i] >= 0) continue;
    const Vertex w = d_[i];
    std::optional<Vertex> owned, best;
    for (Vertex z : h_->neighbors(w)) {
      if (!qualifies(z)) continue;
      if (c.mine[z] && !owned) owned = z;
      if (!c.taken[z] && (!best || h_->degree(z) > h_->degree(*best))) best = z;
    }
    if (owned) {
      partner_[i] = *owned;
      used[*owned] = 1;
      continue;
    }
    if (!best) return forfeit("no free high-degree neighbour for dominating vertex " + std::to_string(w));
    partner_[i] = *best;
    return {Step::Claim, *best};
  }
  stage_ = MergeStage;
  return {Step::Advance};
}

MergeMove merge_components(const Graph& g, const Graph& h, const std::vector<char>& in_h,
                           const std::vector<char>& mine, const std::vector<char>& taken, Vertex home_vertex,
                           const std::vector<Edge>& anchors, const MergeParams& params) {
  const int n = g.order();
  std::vector<int> comp(n, -1);
  int comps = 0;
  for (Vertex s = 0; s < n; ++s) {
    if (!in_h[s] || !mine[s] || comp[s] >= 0) continue;
    comp[s] = comps;
    std::vector<Vertex> queue{s};
    for (std::size_t i = 0; i < queue.size(); ++i)
      for (Vertex w : h.neighbors(queue[i]))
        if (mine[w] && comp[w] < 0) {
          comp[w] = comps;
          queue.push_back(w);
        }
    ++comps;
  }
  if (comps <= 1) return {MergeMove::Done};
  const int home = comp[home_vertex];
  if (home < 0) throw DomainError("home vertex is not a Maker vertex of H");

  auto anchor = [&](int id) -> std::optional<Edge> {
    for (const Edge& e : anchors)
      if (comp[e.u] == id && comp[e.v] == id) return e;
    for (Vertex x = 0; x < n; ++x)
      if (comp[x] == id)
        for (Vertex y : h.neighbors(x))
          if (comp[y] == id) return Edge{x, y};
    return std::nullopt;
  };
  auto common_free = [&](const Edge& e) {
    std::vector<Vertex> out;
    for (Vertex w : g.neighbors(e.u))
      if (!taken[w] && g.adjacent(w, e.v)) out.push_back(w);
    std::sort(out.begin(), out.end());
    return out;
  };

  std::vector<Vertex> home_common;
  if (auto e = anchor(home)) {
    home_common = common_free(*e);
    if (!home_common.empty() && static_cast<double>(home_common.size()) >= params.triangle_threshold)
      return {MergeMove::Triangle, home_common.front()};
  }

  std::optional<Vertex> any_merge;
  std::vector<int> touched;
  for (Vertex w = 0; w < n; ++w) {
    if (!in_h[w] || taken[w]) continue;
    touched.clear();
    for (Vertex y : h.neighbors(w))
      if (comp[y] >= 0 && std::find(touched.begin(), touched.end(), comp[y]) == touched.end())
        touched.push_back(comp[y]);
    if (touched.size() < 2) continue;
    if (std::find(touched.begin(), touched.end(), home) != touched.end()) return {MergeMove::Join, w};
    if (!any_merge) any_merge = w;
  }
  if (any_merge) return {MergeMove::Join, *any_merge};

  std::vector<char> in_u(n, 0);
  for (Vertex x = 0; x < n; ++x)
    if (comp[x] == home) {
      in_u[x] = 1;
      for (Vertex y : h.neighbors(x)) in_u[y] = 1;
    }
  std::int64_t outside = 0;
  for (Vertex x = 0; x < n; ++x) outside += in_h[x] && !in_u[x];
  // |U^c| >= delta n / 2, compared exactly.
  if (Rational(2 * outside) >= params.delta * n) {
    std::optional<Vertex> best;
    int best_reach = 0;
    for (Vertex z = 0; z < n; ++z) {
      if (!in_u[z] || comp[z] == home || taken[z]) continue;
      int reach = 0;
      for (Vertex y : h.neighbors(z)) reach += !in_u[y] && !taken[y];
      if (reach > best_reach) {
        best = z;
        best_reach = reach;
      }
    }
    if (best && static_cast<double>(best_reach) >= params.case_one_threshold) return {MergeMove::CaseOne, *best};
  }

  for (int id = 0; id < comps; ++id) {
    if (id == home) continue;
    bool far = true;
    for (Vertex x = 0; x < n && far; ++x)
      if (comp[x] == id && in_u[x]) far = false;
    if (!far) continue;
    if (auto e = anchor(id)) {
      auto common = common_free(*e);
      if (!common.empty()) return {MergeMove::Triangle, common.front()};
    }
  }
  if (!home_common.empty()) return {MergeMove::Triangle, home_common.front()};
  return {MergeMove::Blocked};
}

Main2Maker::Step Main2Maker::merge_step(const Claims& c) {
  std::vector<Edge> anchors;
  for (std::size_t i = 0; i < d_.size(); ++i)
    if (partner_[i] >= 0) anchors.push_back(Edge{d_[i], partner_[i]});
  MergeParams params{delta_, triangle_threshold_, case_one_threshold_};
  MergeMove move = merge_components(*g_, *h_, in_h_, c.mine, c.taken, *u_, anchors, params);
  switch (move.kind) {
    case MergeMove::Done:
      // Unreachable in play: a connected H[M] already closes the cycle through uv.
      for (Vertex v = 0; v < g_->order(); ++v)
        if (!c.taken[v]) return {Step::Claim, v};
      return forfeit("board exhausted");
    case MergeMove::Blocked:
      return forfeit("no merging move available");
    case MergeMove::CaseOne:
      ++case_one_moves_;
      break;
    default:
      break;
  }
  return {Step::Claim, move.vertex};
}

std::optional<std::vector<Vertex>> Main2Maker::odd_cycle(const Position& pos) const {
  const int n = g_->order();
  std::vector<char> mine(n, 0);
  for (int v : pos.claims(Player::Maker)) mine[v] = 1;
  for (Vertex x = 0; x < n; ++x) {
    if (!mine[x]) continue;
    for (Vertex y : g_->neighbors(x)) {
      if (y <= x || !mine[y]) continue;
      for (Vertex w : g_->neighbors(y))
        if (w > y && mine[w] && g_->adjacent(w, x)) return std::vector<Vertex>{x, y, w};
    }
  }
  if (!u_ || !v_ || !h_ || !mine[*u_] || !mine[*v_]) return std::nullopt;
  std::vector<int> parent(n, -2);
  parent[*u_] = -1;
  std::vector<Vertex> queue{*u_};
  for (std::size_t i = 0; i < queue.size() && parent[*v_] == -2; ++i)
    for (Vertex w : h_->neighbors(queue[i]))
      if (mine[w] && parent[w] == -2) {
        parent[w] = queue[i];
        queue.push_back(w);
      }
  if (parent[*v_] == -2) return std::nullopt;
  std::vector<Vertex> cycle;
  for (int x = *v_; x != -1; x = parent[x]) cycle.push_back(x);
  std::reverse(cycle.begin(), cycle.end());
  return cycle;
}

}  // namespace mbgame
