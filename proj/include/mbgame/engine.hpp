#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mbgame/graph.hpp"

namespace mbgame {

enum class Player : std::uint8_t { Maker, Breaker };
enum class BoardKind : std::uint8_t { Edge, Vertex };
enum class Owner : std::uint8_t { None, Maker, Breaker };

inline Player opponent(Player p) { return p == Player::Maker ? Player::Breaker : Player::Maker; }
std::string_view to_string(Player p);
std::string_view to_string(BoardKind b);
Player parse_player(std::string_view s);
BoardKind parse_board(std::string_view s);

struct WinPredicate {
  enum class Kind : std::uint8_t { OddCycle, NonKColorable, SpanningConnected, Connectivity, AuxGHM };

  Kind kind = Kind::OddCycle;
  int k = 0;                  // NonKColorable / Connectivity
  std::vector<Vertex> fixed;  // AuxGHM: the pre-claimed set M

  static WinPredicate odd_cycle() { return {}; }
  static WinPredicate non_k_colorable(int k) { return {Kind::NonKColorable, k, {}}; }
  static WinPredicate spanning_connected() { return {Kind::SpanningConnected, 0, {}}; }
  static WinPredicate connectivity(int k) { return {Kind::Connectivity, k, {}}; }
  static WinPredicate aux_ghm(std::vector<Vertex> m) { return {Kind::AuxGHM, 0, std::move(m)}; }

  // "odd-cycle", "non-3-colorable", "spanning-connected", "connectivity-2", "aux-ghm:0,4,7"
  std::string describe() const;
  static WinPredicate parse(std::string_view text);

  bool operator==(const WinPredicate&) const = default;
};

struct GameSpec {
  std::shared_ptr<const Graph> host;
  BoardKind board = BoardKind::Edge;
  int maker_bias = 1;
  int breaker_bias = 1;
  Player first = Player::Maker;
  WinPredicate objective;

  int board_size() const;
  int bias(Player p) const { return p == Player::Maker ? maker_bias : breaker_bias; }
  // Throws DomainError for non-positive biases or a predicate the board cannot express.
  void validate() const;
};

GameSpec make_game(Graph host, BoardKind board, int maker_bias, int breaker_bias,
                   WinPredicate objective = WinPredicate::odd_cycle(), Player first = Player::Maker);

struct Turn {
  Player player = Player::Maker;
  std::vector<int> elements;
  int stage = 0;  // strategy stage at the time of the move

  bool operator==(const Turn&) const = default;
};

class Position {
 public:
  Position() = default;
  explicit Position(const GameSpec& spec);

  Owner owner(int element) const { return owner_[element]; }
  const std::vector<Owner>& owners() const { return owner_; }
  const std::vector<int>& claims(Player p) const { return p == Player::Maker ? maker_ : breaker_; }
  Player to_move() const { return to_move_; }
  const std::vector<Turn>& log() const { return log_; }
  int board_size() const { return static_cast<int>(owner_.size()); }
  int unclaimed_count() const { return board_size() - static_cast<int>(maker_.size() + breaker_.size()); }

 private:
  friend Position apply_moves(const GameSpec&, const Position&, Player, const std::vector<int>&);
  friend struct PositionAccess;

  void claim(Player p, int element);

  std::vector<Owner> owner_;
  std::vector<int> maker_;
  std::vector<int> breaker_;
  Player to_move_ = Player::Maker;
  std::vector<Turn> log_;
};

// Unclaimed elements in increasing order.
std::vector<int> legal_moves(const GameSpec& spec, const Position& pos);

// Throws IllegalMove for the wrong player, wrong count or a claimed element.
// The count must equal the bias, or every remaining element on a short last turn.
Position apply_moves(const GameSpec& spec, const Position& pos, Player player,
                     const std::vector<int>& elements);

struct Witness {
  enum class Kind : std::uint8_t { OddCycle, Edges, Vertices };
  Kind kind = Kind::OddCycle;
  std::vector<Vertex> vertices;  // cycle (cyclic order) or vertex set, host labels
  std::vector<Edge> edges;

  std::size_t length() const { return kind == Kind::Edges ? edges.size() : vertices.size(); }
  bool operator==(const Witness&) const = default;
};

struct Evaluation {
  enum class Status : std::uint8_t { MakerWon, Undecided, BoardExhausted };
  Status status = Status::Undecided;
  std::optional<Witness> witness;
};

// Winning test on an arbitrary set of Maker elements.
std::optional<Witness> maker_win(const GameSpec& spec, const std::vector<int>& maker_elements);
Evaluation evaluate(const GameSpec& spec, const Position& pos);
// Re-checks a witness against Maker's elements alone, independently of how it was found.
bool validate_witness(const GameSpec& spec, const std::vector<int>& maker_elements, const Witness& w);

// Decision procedure for one side. The object owns any private state across
// turns; the engine never inspects it.
class Strategy {
 public:
  virtual ~Strategy() = default;

  // Stable identifier with parameters, e.g. "main2(delta=1/2,b=2,seed=7)".
  virtual std::string id() const = 0;
  virtual void reset(const GameSpec& spec, Player role, std::uint64_t seed) = 0;
  // Exactly `count` unclaimed elements, or nullopt to forfeit.
  virtual std::optional<std::vector<int>> choose(const GameSpec& spec, const Position& pos, int count) = 0;
  virtual int stage() const { return 0; }
  virtual std::unique_ptr<Strategy> clone() const = 0;
};

struct GameResult {
  Player winner = Player::Breaker;
  std::vector<Turn> transcript;
  std::optional<Witness> witness;
  int rounds = 0;
  std::optional<Player> forfeit;
  std::string forfeit_reason;
  std::vector<int> maker_claims;
};

// Deterministic given the seed. A strategy that throws, forfeits or returns an
// illegal move loses immediately.
GameResult play(const GameSpec& spec, Strategy& maker, Strategy& breaker, std::uint64_t seed);

// ---- transcript format "game-v1" ----

struct TranscriptRecord {
  BoardKind board = BoardKind::Edge;
  int maker_bias = 1;
  int breaker_bias = 1;
  Player first = Player::Maker;
  std::string objective;
  std::uint64_t host_hash = 0;
  int host_order = 0;
  std::size_t host_size = 0;
  std::string maker_id;
  std::string breaker_id;
  std::uint64_t seed = 0;
  std::vector<Turn> turns;
  Player winner = Player::Breaker;
  int rounds = 0;
  std::optional<Player> forfeit;
  std::optional<Witness> witness;

  bool operator==(const TranscriptRecord&) const = default;
};

TranscriptRecord make_record(const GameSpec& spec, const GameResult& result, const std::string& maker_id,
                             const std::string& breaker_id, std::uint64_t seed);
std::string format_transcript(const TranscriptRecord& record);
TranscriptRecord parse_transcript(std::string_view text);

// Replays the turns against the spec; throws IllegalMove if any turn is illegal.
Position replay(const GameSpec& spec, const std::vector<Turn>& turns);

}  // namespace mbgame
