#include <algorithm>
#include <bit>

#include "mbgame/decompose.hpp"
#include "mbgame/errors.hpp"
#include "mbgame/rng.hpp"

namespace mbgame {

namespace {

struct LocalGraph {
  std::vector<std::vector<int>> adj;
  std::vector<std::uint32_t> mask;  // only filled for small parts
};

LocalGraph localize(const Graph& g, const std::vector<Vertex>& part, bool masks) {
  std::vector<int> local(g.order(), -1);
  for (std::size_t i = 0; i < part.size(); ++i) local[part[i]] = static_cast<int>(i);
  LocalGraph lg;
  lg.adj.resize(part.size());
  if (masks) lg.mask.assign(part.size(), 0);
  for (std::size_t i = 0; i < part.size(); ++i)
    for (Vertex w : g.neighbors(part[i]))
      if (int j = local[w]; j >= 0) {
        lg.adj[i].push_back(j);
        if (masks) lg.mask[i] |= std::uint32_t{1} << j;
      }
  return lg;
}

std::optional<BalancedCut> exhaustive(const std::vector<Vertex>& part, const LocalGraph& lg,
                                      int min_side) {
  const int p = static_cast<int>(part.size());
  const std::uint32_t full = (p == 32) ? ~std::uint32_t{0} : ((std::uint32_t{1} << p) - 1);
  std::optional<std::uint32_t> best_mask;
  std::int64_t best = 0;
  // Shore containing local vertex 0; enumerate the remaining p-1 bits.
  for (std::uint32_t rest = 0; rest < (std::uint32_t{1} << (p - 1)); ++rest) {
    std::uint32_t a = (rest << 1) | 1U;
    int size = std::popcount(a);
    if (size < min_side || p - size < min_side) continue;
    std::int64_t cut = 0;
    for (std::uint32_t bits = a; bits; bits &= bits - 1)
      cut += std::popcount(lg.mask[std::countr_zero(bits)] & ~a & full);
    if (!best_mask || cut < best) {
      best = cut;
      best_mask = a;
    }
  }
  if (!best_mask) return std::nullopt;
  BalancedCut out;
  out.crossing = best;
  for (int i = 0; i < p; ++i)
    if ((*best_mask >> i) & 1U) out.side.push_back(part[i]);
  return out;
}

class LocalSearch {
 public:
  LocalSearch(const LocalGraph& lg, int min_side) : lg_(lg), min_side_(min_side) {}

  // One restart from a random shore of random admissible size.
  std::int64_t run(Rng& rng, std::vector<char>& side) {
    const int p = static_cast<int>(lg_.adj.size());
    std::vector<int> order(p);
    for (int i = 0; i < p; ++i) order[i] = i;
    rng.shuffle(order);
    int size_a = min_side_ + static_cast<int>(rng.below(p - 2 * min_side_ + 1));
    side.assign(p, 1);
    for (int i = 0; i < size_a; ++i) side[order[i]] = 0;
    count_[0] = size_a;
    count_[1] = p - size_a;
    ext_.assign(p, 0);
    std::int64_t cut = 0;
    for (int v = 0; v < p; ++v)
      for (int w : lg_.adj[v])
        if (side[v] != side[w]) ++ext_[v];
    for (int v = 0; v < p; ++v) cut += ext_[v];
    cut /= 2;

    for (int step = 0; step < 4 * p; ++step) {
      int best_v = -1, best_gain = 0;
      int top[2] = {-1, -1};
      for (int v = 0; v < p; ++v) {
        int gain = gain_of(v);
        int s = side[v];
        if (top[s] < 0 || gain > gain_of(top[s])) top[s] = v;
        if (count_[s] - 1 >= min_side_ && gain > best_gain) {
          best_gain = gain;
          best_v = v;
        }
      }
      if (best_v >= 0) {
        flip(best_v, side);
        cut -= best_gain;
        continue;
      }
      if (top[0] < 0 || top[1] < 0) break;
      int a = top[0], b = top[1];
      bool joined = std::find(lg_.adj[a].begin(), lg_.adj[a].end(), b) != lg_.adj[a].end();
      int swap_gain = gain_of(a) + gain_of(b) - (joined ? 2 : 0);
      if (swap_gain <= 0) break;
      flip(a, side);
      flip(b, side);
      cut -= swap_gain;
    }
    return cut;
  }

 private:
  int gain_of(int v) const {
    return 2 * ext_[v] - static_cast<int>(lg_.adj[v].size());
  }

  void flip(int v, std::vector<char>& side) {
    --count_[static_cast<int>(side[v])];
    side[v] ^= 1;
    ++count_[static_cast<int>(side[v])];
    ext_[v] = static_cast<int>(lg_.adj[v].size()) - ext_[v];
    for (int w : lg_.adj[v]) ext_[w] += (side[w] != side[v]) ? 1 : -1;
  }

  const LocalGraph& lg_;
  int min_side_;
  int count_[2] = {0, 0};
  std::vector<int> ext_;
};

}  // namespace

std::optional<BalancedCut> sparsest_balanced_cut(const Graph& g, const std::vector<Vertex>& part,
                                                 int min_side, const DecomposeOptions& opts,
                                                 std::optional<std::int64_t> stop_below) {
  min_side = std::max(min_side, 1);
  const int p = static_cast<int>(part.size());
  if (p < 2 * min_side) return std::nullopt;
  if (!std::is_sorted(part.begin(), part.end())) throw DomainError("part must be sorted");

  if (p <= std::min(opts.exact_cut_limit, 31)) return exhaustive(part, localize(g, part, true), min_side);

  LocalGraph lg = localize(g, part, false);
  LocalSearch search(lg, min_side);
  Rng rng(opts.seed ^ (0x5bd1e995ULL * static_cast<std::uint64_t>(part.front() + 1)) ^
          (static_cast<std::uint64_t>(p) << 32));
  std::optional<BalancedCut> best;
  std::vector<char> side;
  for (int r = 0; r < std::max(1, opts.cut_restarts); ++r) {
    std::int64_t cut = search.run(rng, side);
    if (best && cut >= best->crossing) continue;
    BalancedCut found;
    found.crossing = cut;
    const char shore = side[0];
    for (int i = 0; i < p; ++i)
      if (side[i] == shore) found.side.push_back(part[i]);
    best = std::move(found);
    if (stop_below && best->crossing < *stop_below) break;
  }
  return best;
}

}  // namespace mbgame
