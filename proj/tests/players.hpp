#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "mbgame/engine.hpp"
#include "mbgame/rng.hpp"

namespace players {

using mbgame::GameSpec;
using mbgame::Player;
using mbgame::Position;
using mbgame::Strategy;

// Lowest unclaimed elements.
class FirstFree : public Strategy {
 public:
  std::string id() const override { return "first-free"; }
  void reset(const GameSpec&, Player, std::uint64_t) override {}
  std::optional<std::vector<int>> choose(const GameSpec& spec, const Position& pos, int count) override {
    auto free = mbgame::legal_moves(spec, pos);
    free.resize(count);
    return free;
  }
  std::unique_ptr<Strategy> clone() const override { return std::make_unique<FirstFree>(*this); }
};

// Highest unclaimed elements.
class LastFree : public Strategy {
 public:
  std::string id() const override { return "last-free"; }
  void reset(const GameSpec&, Player, std::uint64_t) override {}
  std::optional<std::vector<int>> choose(const GameSpec& spec, const Position& pos, int count) override {
    auto free = mbgame::legal_moves(spec, pos);
    return std::vector<int>(free.end() - count, free.end());
  }
  std::unique_ptr<Strategy> clone() const override { return std::make_unique<LastFree>(*this); }
};

class Uniform : public Strategy {
 public:
  std::string id() const override { return "uniform"; }
  void reset(const GameSpec&, Player, std::uint64_t seed) override { rng_ = mbgame::Rng(seed); }
  std::optional<std::vector<int>> choose(const GameSpec& spec, const Position& pos, int count) override {
    auto free = mbgame::legal_moves(spec, pos);
    rng_.shuffle(free);
    free.resize(count);
    return free;
  }
  std::unique_ptr<Strategy> clone() const override { return std::make_unique<Uniform>(*this); }

 private:
  mbgame::Rng rng_;
};

class Conceder : public Strategy {
 public:
  std::string id() const override { return "conceder"; }
  void reset(const GameSpec&, Player, std::uint64_t) override {}
  std::optional<std::vector<int>> choose(const GameSpec&, const Position&, int) override { return std::nullopt; }
  std::unique_ptr<Strategy> clone() const override { return std::make_unique<Conceder>(*this); }
};

// Always names element 0, legal or not.
class ZeroRepeater : public Strategy {
 public:
  std::string id() const override { return "zero"; }
  void reset(const GameSpec&, Player, std::uint64_t) override {}
  std::optional<std::vector<int>> choose(const GameSpec&, const Position&, int count) override {
    return std::vector<int>(count, 0);
  }
  std::unique_ptr<Strategy> clone() const override { return std::make_unique<ZeroRepeater>(*this); }
};

}  // namespace players
