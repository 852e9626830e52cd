#include "mbgame/solver.hpp"

#include <algorithm>
#include <bit>

#include "mbgame/errors.hpp"
#include "mbgame/rng.hpp"

namespace mbgame {

namespace {

std::vector<int> bits_of(std::uint32_t mask) {
  std::vector<int> out;
  for (; mask; mask &= mask - 1) out.push_back(std::countr_zero(mask));
  return out;
}

std::uint32_t mask_of(const std::vector<int>& elements) {
  std::uint32_t m = 0;
  for (int e : elements) m |= std::uint32_t{1} << e;
  return m;
}

// Calls f(mask) for every k-subset of `items` in lexicographic order; stops
// early when f returns true. Returns whether it stopped.
template <typename F>
bool for_each_subset(const std::vector<int>& items, int k, F&& f) {
  const int n = static_cast<int>(items.size());
  if (k > n) return false;
  std::vector<int> idx(k);
  for (int i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    std::uint32_t m = 0;
    for (int i : idx) m |= std::uint32_t{1} << items[i];
    if (f(m)) return true;
    int i = k - 1;
    while (i >= 0 && idx[i] == n - k + i) --i;
    if (i < 0) return false;
    ++idx[i];
    for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

constexpr std::uint8_t kMakerWins = 1, kBreakerWins = 2;

}  // namespace

GameSolver::GameSolver(GameSpec spec, SolveOptions opts) : spec_(std::move(spec)), opts_(opts) {
  spec_.validate();
  size_ = spec_.board_size();
  const int cap = std::min(opts_.cap, kSolverCap);
  if (size_ > cap)
    throw ResourceError("solver cap exceeded: board has " + std::to_string(size_) + " elements, cap is " +
                        std::to_string(cap));
  full_ = size_ == 0 ? 0 : static_cast<std::uint32_t>((std::uint64_t{1} << size_) - 1);
  win_cache_.assign(std::size_t{1} << size_, -1);
}

bool GameSolver::wins(std::uint32_t maker) {
  std::int8_t& c = win_cache_[maker];
  if (c < 0) c = maker_win(spec_, bits_of(maker)).has_value() ? 1 : 0;
  return c == 1;
}

Player GameSolver::value(const Position& pos) {
  return value(mask_of(pos.claims(Player::Maker)), mask_of(pos.claims(Player::Breaker)), pos.to_move());
}

Player GameSolver::value(std::uint32_t maker, std::uint32_t breaker, Player to_move) {
  if (!opts_.sequence_batches) return search_set(maker, breaker, to_move);
  const int free = std::popcount(full_ & ~(maker | breaker));
  return search_seq(maker, breaker, to_move, std::min(spec_.bias(to_move), free));
}

Player GameSolver::search_set(std::uint32_t maker, std::uint32_t breaker, Player to_move) {
  if (wins(maker)) return Player::Maker;
  const std::uint32_t free = full_ & ~(maker | breaker);
  if (free == 0) return Player::Breaker;
  if (opts_.early_cutoff && !wins(maker | free)) return Player::Breaker;

  const std::uint64_t key = maker | (std::uint64_t{breaker} << 18) | (std::uint64_t{to_move == Player::Breaker} << 36);
  if (opts_.memoize) {
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second == kMakerWins ? Player::Maker : Player::Breaker;
  }
  ++nodes_;

  const std::vector<int> items = bits_of(free);
  const int k = std::min(spec_.bias(to_move), static_cast<int>(items.size()));
  Player result = opponent(to_move);
  if (to_move == Player::Maker && opts_.early_cutoff &&
      for_each_subset(items, k, [&](std::uint32_t s) { return wins(maker | s); })) {
    result = Player::Maker;
  } else {
    const bool found = for_each_subset(items, k, [&](std::uint32_t s) {
      Player v = to_move == Player::Maker ? search_set(maker | s, breaker, Player::Breaker)
                                          : search_set(maker, breaker | s, Player::Maker);
      return v == to_move;
    });
    if (found) result = to_move;
  }
  if (opts_.memoize) memo_.emplace(key, result == Player::Maker ? kMakerWins : kBreakerWins);
  return result;
}

Player GameSolver::search_seq(std::uint32_t maker, std::uint32_t breaker, Player to_move, int left) {
  if (wins(maker)) return Player::Maker;
  const std::uint32_t free = full_ & ~(maker | breaker);
  if (free == 0) return Player::Breaker;
  if (opts_.early_cutoff && !wins(maker | free)) return Player::Breaker;

  const std::uint64_t key = maker | (std::uint64_t{breaker} << 18) | (std::uint64_t{to_move == Player::Breaker} << 36) |
                            (std::uint64_t(left) << 37);
  if (opts_.memoize) {
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second == kMakerWins ? Player::Maker : Player::Breaker;
  }
  ++nodes_;

  Player result = opponent(to_move);
  for (std::uint32_t rest = free; rest; rest &= rest - 1) {
    const std::uint32_t e = rest & (~rest + 1);
    std::uint32_t m = maker, b = breaker;
    (to_move == Player::Maker ? m : b) |= e;
    const int remaining = std::popcount(free & ~e);
    Player v = left > 1 ? search_seq(m, b, to_move, left - 1)
                        : search_seq(m, b, opponent(to_move), std::min(spec_.bias(opponent(to_move)), remaining));
    if (v == to_move) {
      result = to_move;
      break;
    }
  }
  if (opts_.memoize) memo_.emplace(key, result == Player::Maker ? kMakerWins : kBreakerWins);
  return result;
}

std::vector<int> GameSolver::best_batch(std::uint32_t maker, std::uint32_t breaker, Player to_move, int count) {
  const std::vector<int> items = bits_of(full_ & ~(maker | breaker));
  if (count > static_cast<int>(items.size())) throw DomainError("batch larger than the free board");
  std::optional<std::uint32_t> first, best;
  for_each_subset(items, count, [&](std::uint32_t s) {
    if (!first) first = s;
    Player v = to_move == Player::Maker ? value(maker | s, breaker, Player::Breaker)
                                        : value(maker, breaker | s, Player::Maker);
    if (v == to_move) best = s;
    return best.has_value();
  });
  return bits_of(best ? *best : first.value_or(0));
}

SolveVerdict solve(const GameSpec& spec, const SolveOptions& opts) {
  GameSolver solver(spec, opts);
  SolveVerdict verdict;
  std::uint32_t maker = 0, breaker = 0;
  const std::uint32_t full = spec.board_size() == 0 ? 0 : static_cast<std::uint32_t>((std::uint64_t{1} << spec.board_size()) - 1);
  Player to_move = spec.first;
  verdict.winner = solver.value(maker, breaker, to_move);
  while (!maker_win(spec, bits_of(maker))) {
    const int free = std::popcount(full & ~(maker | breaker));
    if (free == 0) break;
    std::vector<int> batch = solver.best_batch(maker, breaker, to_move, std::min(spec.bias(to_move), free));
    if (to_move == Player::Maker) {
      // Keep only the prefix up to the first claim that completes a win.
      for (std::size_t i = 1; i <= batch.size(); ++i) {
        std::vector<int> trial = bits_of(maker);
        trial.insert(trial.end(), batch.begin(), batch.begin() + static_cast<std::ptrdiff_t>(i));
        if (maker_win(spec, trial)) {
          batch.resize(i);
          break;
        }
      }
      maker |= mask_of(batch);
    } else {
      breaker |= mask_of(batch);
    }
    verdict.principal_line.push_back(Turn{to_move, batch, 0});
    to_move = opponent(to_move);
  }
  verdict.nodes_expanded = solver.nodes_expanded();
  return verdict;
}

void SolverStrategy::reset(const GameSpec& spec, Player, std::uint64_t) {
  solver_ = std::make_shared<GameSolver>(spec, opts_);
}

std::optional<std::vector<int>> SolverStrategy::choose(const GameSpec&, const Position& pos, int count) {
  return solver_->best_batch(mask_of(pos.claims(Player::Maker)), mask_of(pos.claims(Player::Breaker)),
                             pos.to_move(), count);
}

// ---- exhaustive verification of a Maker strategy ----

namespace {

class Verifier {
 public:
  Verifier(const GameSpec& spec, const VerifyOptions& opts) : spec_(spec), opts_(opts) {}

  bool explore(const Position& pos, std::unique_ptr<Strategy> maker) {
    if (++result.nodes > opts_.node_budget)
      throw ResourceError("verification node budget of " + std::to_string(opts_.node_budget) + " exceeded after " +
                          std::to_string(result.leaves) + " completed games");
    const int free = pos.unclaimed_count();
    if (free == 0) return lose("board exhausted without a Maker win");
    const Player mover = pos.to_move();
    const int count = std::min(spec_.bias(mover), free);

    if (mover == Player::Maker) {
      std::optional<std::vector<int>> batch;
      try {
        batch = maker->choose(spec_, pos, count);
      } catch (const std::exception& e) {
        return lose(std::string("maker strategy threw: ") + e.what());
      }
      if (!batch) return lose("maker forfeited");
      std::vector<int> sorted = *batch;
      std::sort(sorted.begin(), sorted.end());
      const bool legal = static_cast<int>(sorted.size()) == count &&
                         std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end() &&
                         std::all_of(sorted.begin(), sorted.end(), [&](int e) {
                           return e >= 0 && e < pos.board_size() && pos.owner(e) == Owner::None;
                         });
      if (!legal) return lose("maker returned an illegal batch");
      std::vector<int> mine = pos.claims(Player::Maker);
      for (std::size_t i = 0; i < batch->size(); ++i) {
        mine.push_back((*batch)[i]);
        if (maker_win(spec_, mine)) {
          ++result.leaves;
          return true;
        }
      }
      line_.push_back(Turn{Player::Maker, *batch, maker->stage()});
      const bool ok = explore(apply_moves(spec_, pos, Player::Maker, *batch), std::move(maker));
      line_.pop_back();
      return ok;
    }

    std::vector<int> items = legal_moves(spec_, pos);
    std::vector<int> idx(count);
    for (int i = 0; i < count; ++i) idx[i] = i;
    const int n = static_cast<int>(items.size());
    while (true) {
      std::vector<int> batch;
      for (int i : idx) batch.push_back(items[i]);
      line_.push_back(Turn{Player::Breaker, batch, 0});
      const bool ok = explore(apply_moves(spec_, pos, Player::Breaker, batch), maker->clone());
      line_.pop_back();
      if (!ok) return false;
      int i = count - 1;
      while (i >= 0 && idx[i] == n - count + i) --i;
      if (i < 0) return true;
      ++idx[i];
      for (int j = i + 1; j < count; ++j) idx[j] = idx[j - 1] + 1;
    }
  }

  VerifyResult result;

 private:
  bool lose(std::string reason) {
    ++result.leaves;
    result.outcome = VerifyResult::Outcome::CounterTranscript;
    result.counter = line_;
    result.reason = std::move(reason);
    return false;
  }

  const GameSpec& spec_;
  VerifyOptions opts_;
  std::vector<Turn> line_;
};

}  // namespace

VerifyResult verify_maker_strategy(const GameSpec& spec, const Strategy& maker, const VerifyOptions& options) {
  spec.validate();
  Verifier v(spec, options);
  if (maker_win(spec, {})) return v.result;
  std::unique_ptr<Strategy> m = maker.clone();
  m->reset(spec, Player::Maker, splitmix64(2 * options.seed + 1));
  v.explore(Position(spec), std::move(m));
  return v.result;
}

// ---- small graph corpus ----

std::vector<Graph> graph_classes(int n) {
  if (n < 1 || n > 6) throw DomainError("graph_classes supports 1 to 6 vertices");
  std::vector<std::pair<int, int>> pairs;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) pairs.emplace_back(u, v);
  std::vector<std::vector<int>> index(n, std::vector<int>(n, -1));
  for (std::size_t i = 0; i < pairs.size(); ++i) index[pairs[i].first][pairs[i].second] = index[pairs[i].second][pairs[i].first] = static_cast<int>(i);

  std::vector<std::vector<int>> perms;
  std::vector<int> p(n);
  for (int i = 0; i < n; ++i) p[i] = i;
  do perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));

  const std::uint32_t total = std::uint32_t{1} << pairs.size();
  std::vector<char> seen(total, 0);
  std::vector<std::uint32_t> reps;
  for (std::uint32_t mask = 0; mask < total; ++mask) {
    if (seen[mask]) continue;
    reps.push_back(mask);
    for (const auto& q : perms) {
      std::uint32_t image = 0;
      for (std::size_t i = 0; i < pairs.size(); ++i)
        if (mask >> i & 1U) image |= std::uint32_t{1} << index[q[pairs[i].first]][q[pairs[i].second]];
      seen[image] = 1;
    }
  }
  std::stable_sort(reps.begin(), reps.end(),
                   [](std::uint32_t a, std::uint32_t b) { return std::popcount(a) < std::popcount(b); });
  std::vector<Graph> out;
  for (std::uint32_t mask : reps) {
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < pairs.size(); ++i)
      if (mask >> i & 1U) edges.push_back(make_edge(pairs[i].first, pairs[i].second));
    out.emplace_back(n, edges);
  }
  return out;
}

}  // namespace mbgame
