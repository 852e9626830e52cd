#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "mbgame/engine.hpp"

namespace mbgame {

inline constexpr int kSolverCap = 18;

struct SolveOptions {
  bool memoize = true;
  // Stop as soon as Maker has an immediately winning batch, and give up
  // positions where even every free element would not complete a win.
  bool early_cutoff = true;
  // Explore a turn one claim at a time instead of as a set of claims.
  bool sequence_batches = false;
  int cap = kSolverCap;
};

struct SolveVerdict {
  Player winner = Player::Breaker;
  std::vector<Turn> principal_line;
  std::uint64_t nodes_expanded = 0;
};

// Minimax over bitmask positions. Keeps its memo across queries, so one
// instance can answer many positions of the same game.
class GameSolver {
 public:
  explicit GameSolver(GameSpec spec, SolveOptions opts = {});

  const GameSpec& spec() const { return spec_; }
  Player value(const Position& pos);
  Player value(std::uint32_t maker, std::uint32_t breaker, Player to_move);
  // An optimal batch of `count` claims for the player to move: the first
  // batch in lexicographic order that keeps a win, else the first batch.
  std::vector<int> best_batch(std::uint32_t maker, std::uint32_t breaker, Player to_move, int count);
  std::uint64_t nodes_expanded() const { return nodes_; }

 private:
  bool wins(std::uint32_t maker);
  Player search_set(std::uint32_t maker, std::uint32_t breaker, Player to_move);
  Player search_seq(std::uint32_t maker, std::uint32_t breaker, Player to_move, int left);

  GameSpec spec_;
  SolveOptions opts_;
  int size_ = 0;
  std::uint32_t full_ = 0;
  std::vector<std::int8_t> win_cache_;
  std::unordered_map<std::uint64_t, std::uint8_t> memo_;
  std::uint64_t nodes_ = 0;
};

// Throws ResourceError when the board exceeds opts.cap (at most 18).
SolveVerdict solve(const GameSpec& spec, const SolveOptions& opts = {});

// Optimal play for either role. Clones share one solver.
class SolverStrategy : public Strategy {
 public:
  explicit SolverStrategy(SolveOptions opts = {}) : opts_(opts) {}

  std::string id() const override { return "solver"; }
  void reset(const GameSpec& spec, Player role, std::uint64_t seed) override;
  std::optional<std::vector<int>> choose(const GameSpec& spec, const Position& pos, int count) override;
  std::unique_ptr<Strategy> clone() const override { return std::make_unique<SolverStrategy>(*this); }

 private:
  SolveOptions opts_;
  std::shared_ptr<GameSolver> solver_;
};

struct VerifyOptions {
  std::uint64_t node_budget = 2'000'000;
  std::uint64_t seed = 0;  // passed to the Maker strategy's reset as in play()
};

struct VerifyResult {
  enum class Outcome : std::uint8_t { AlwaysWins, CounterTranscript };
  Outcome outcome = Outcome::AlwaysWins;
  std::vector<Turn> counter;  // a game Maker loses, when one exists
  std::string reason;         // why Maker lost the counter game
  std::uint64_t nodes = 0;
  std::uint64_t leaves = 0;
};

// Plays `maker` against every Breaker reply. Throws ResourceError once more
// than options.node_budget positions have been visited.
VerifyResult verify_maker_strategy(const GameSpec& spec, const Strategy& maker, const VerifyOptions& options = {});

// One representative per isomorphism class of graphs on n <= 6 vertices,
// ordered by edge count and then by edge mask.
std::vector<Graph> graph_classes(int n);

}  // namespace mbgame
