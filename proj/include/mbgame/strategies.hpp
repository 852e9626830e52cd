#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "mbgame/decompose.hpp"
#include "mbgame/engine.hpp"
#include "mbgame/rational.hpp"
#include "mbgame/rng.hpp"

namespace mbgame {

// ---- quantitative bounds ----

struct BoundReport {
  std::int64_t n = 0;
  Rational delta;
  int b = 0;
  std::int64_t b_max = 0;          // floor(delta^2 n / (6400 log2(n)^2))
  Rational chi_threshold;          // 32 / delta
  Rational chi_threshold_vertex;   // 2(b+1) / delta
  std::int64_t dominating_size = 0;  // ceil(100 ln n / delta^2)
  Rational failure_exponent;       // failure probability bound is n^failure_exponent
  double p1_floor = 0;             // 25 log2 n
};

BoundReport bound_report(std::int64_t n, const Rational& delta, int b);

// ---- connectivity building ----

// Greedy builder of a spanning (k-edge-)connected Maker subgraph on a fixed
// vertex span, using only the allowed host edges.
class ConnectivityPlanner {
 public:
  ConnectivityPlanner() = default;
  ConnectivityPlanner(std::shared_ptr<const Graph> host, std::vector<char> allowed_edges,
                      std::vector<Vertex> span, int k);

  // Up to `count` unclaimed allowed edges, most endangered cut first. Returns
  // fewer when Maker's graph is already k-edge-connected or no allowed edge is left.
  std::vector<int> pick(std::vector<Owner> owners, int count) const;
  bool complete(const std::vector<Owner>& owners) const;
  int k() const { return k_; }

 private:
  std::optional<int> next_edge(const std::vector<Owner>& owners) const;

  std::shared_ptr<const Graph> host_;
  std::vector<char> allowed_;
  std::vector<Vertex> span_;
  std::vector<int> local_;  // host vertex -> index in span_, or -1
  int k_ = 1;
};

class ConnectivityMaker : public Strategy {
 public:
  std::string id() const override { return "connectivity"; }
  void reset(const GameSpec& spec, Player role, std::uint64_t seed) override;
  std::optional<std::vector<int>> choose(const GameSpec& spec, const Position& pos, int count) override;
  std::unique_ptr<Strategy> clone() const override { return std::make_unique<ConnectivityMaker>(*this); }

 private:
  ConnectivityPlanner planner_;
};

// ---- edge-board odd-cycle makers ----

class Main1Maker : public Strategy {
 public:
  Main1Maker(const Graph& g, const Rational& delta, const DecomposeOptions& opts = {});

  std::string id() const override;
  void reset(const GameSpec& spec, Player role, std::uint64_t seed) override;
  std::optional<std::vector<int>> choose(const GameSpec& spec, const Position& pos, int count) override;
  int stage() const override { return turn_stage_; }
  std::unique_ptr<Strategy> clone() const override { return std::make_unique<Main1Maker>(*this); }

  const BipartiteCore& core() const { return core_; }
  int witness_edge() const { return witness_edge_; }

 private:
  Rational delta_;
  std::uint64_t host_hash_ = 0;
  BipartiteCore core_;
  int witness_edge_ = -1;
  ConnectivityPlanner planner_;
  int stage_ = 1;
  int turn_stage_ = 1;
};

struct BipartiteSearch {
  std::vector<int> color;  // 0/1 per vertex; empty when nothing was found
  int connectivity = 0;    // edge connectivity of the spanning bipartite subgraph
  bool exact = false;      // exhaustive over all 2-colourings
};

// Spanning bipartite subgraph (all edges across a 2-colouring) of maximum edge
// connectivity. Exhaustive up to exact_limit vertices, annealing otherwise.
BipartiteSearch best_spanning_bipartite(const Graph& g, std::uint64_t seed, int exact_limit = 20);

class Main3Maker : public Strategy {
 public:
  // target_k: required connectivity of the bipartite subgraph; nullopt means
  // the best value the search finds.
  Main3Maker(const Graph& g, int b, std::optional<int> target_k = std::nullopt, std::uint64_t seed = 0);

  std::string id() const override;
  void reset(const GameSpec& spec, Player role, std::uint64_t seed) override;
  std::optional<std::vector<int>> choose(const GameSpec& spec, const Position& pos, int count) override;
  int stage() const override { return turn_stage_; }
  std::unique_ptr<Strategy> clone() const override { return std::make_unique<Main3Maker>(*this); }

  bool case_one() const { return case_one_; }
  int k_prime() const { return k_prime_; }
  int host_edge_connectivity() const { return host_edge_connectivity_; }
  double k_threshold() const { return k_threshold_; }

 private:
  int b_;
  std::optional<int> target_;
  std::uint64_t seed_;
  std::uint64_t host_hash_ = 0;
  BipartiteSearch search_;
  bool case_one_ = false;
  int k_prime_ = 0;
  int host_edge_connectivity_ = 0;
  double k_threshold_ = 0;  // 100 log2(n) b log2(b), informational
  std::vector<int> inner_edges_;  // candidates for the first claim in case one
  ConnectivityPlanner planner_;
  int stage_ = 1;
  int turn_stage_ = 1;
};

// ---- vertex-board odd-cycle maker ----

struct MergeParams {
  Rational delta;
  double triangle_threshold = 0;  // common free G-neighbours of an anchor edge
  double case_one_threshold = 0;  // free neighbours of z outside C u N(C)
};

struct MergeMove {
  enum Kind { Done, Triangle, Join, CaseOne, Blocked };
  Kind kind = Done;
  Vertex vertex = -1;
};

// One claim towards connecting H[M] (or closing a triangle in G), where M is
// the set of Maker's vertices inside H. `home` is a Maker vertex naming the
// component C being grown; `anchors` are preferred anchor edges inside M.
MergeMove merge_components(const Graph& g, const Graph& h, const std::vector<char>& in_h,
                           const std::vector<char>& mine, const std::vector<char>& taken, Vertex home,
                           const std::vector<Edge>& anchors, const MergeParams& params);

struct Main2Options {
  DecomposeOptions decompose;
  // Stage II budget; defaults to ceil(100 ln n / delta^2).
  std::optional<std::int64_t> domination_budget;
};

class Main2Maker : public Strategy {
 public:
  enum Stage { StarStage = 1, DominationStage = 2, SecureStage = 3, MergeStage = 4 };

  Main2Maker(const Graph& g, const Rational& delta, int b, std::uint64_t seed,
             const Main2Options& opts = {});

  std::string id() const override;
  void reset(const GameSpec& spec, Player role, std::uint64_t seed) override;
  std::optional<std::vector<int>> choose(const GameSpec& spec, const Position& pos, int count) override;
  int stage() const override { return stage_; }
  std::unique_ptr<Strategy> clone() const override { return std::make_unique<Main2Maker>(*this); }

  // Decomposition failure recorded at construction (only with force).
  const std::string& core_error() const { return core_error_; }
  const std::optional<BipartiteCore>& core() const { return core_; }
  const std::string& forfeit_reason() const { return forfeit_reason_; }
  std::optional<Vertex> u() const { return u_; }
  std::optional<Vertex> v() const { return v_; }
  const std::vector<Vertex>& dominating_set() const { return d_; }
  int merge_case_one_moves() const { return case_one_moves_; }

  // Odd cycle inside Maker's vertices: a claimed triangle when one exists,
  // otherwise a shortest u-v path in H[M] closed by the edge uv.
  std::optional<std::vector<Vertex>> odd_cycle(const Position& pos) const;

 private:
  struct Step {
    enum Kind { Claim, Advance, Forfeit } kind;
    int element = -1;
  };
  struct Claims {
    std::vector<char> mine;
    std::vector<char> taken;
  };

  std::optional<int> next_claim(const Claims& c);
  Step star_step(const Claims& c);
  Step domination_step(const Claims& c);
  Step secure_step(const Claims& c);
  Step merge_step(const Claims& c);
  bool dominates() const;
  Step forfeit(std::string reason);

  std::shared_ptr<const Graph> g_;
  Rational delta_;
  int b_;
  std::uint64_t seed_;
  Main2Options opts_;
  std::string core_error_;
  std::optional<BipartiteCore> core_;
  std::shared_ptr<const Graph> h_;  // core graph on host labels
  std::vector<char> in_h_;
  std::int64_t budget_ = 0;
  double secure_floor_ = 0;
  double triangle_threshold_ = 0;
  double case_one_threshold_ = 0;

  Rng rng_;
  int stage_ = StarStage;
  std::optional<Vertex> centre_;
  std::vector<Vertex> leaves_;
  std::optional<Vertex> u_;
  std::optional<Vertex> v_;
  std::vector<Vertex> d_;
  std::vector<Vertex> partner_;  // secured neighbour per dominating vertex, -1 while missing
  std::int64_t spent_ = 0;
  int case_one_moves_ = 0;
  std::string forfeit_reason_;
};

// ---- Breakers ----

class RandomBreaker : public Strategy {
 public:
  std::string id() const override { return "random"; }
  void reset(const GameSpec& spec, Player role, std::uint64_t seed) override;
  std::optional<std::vector<int>> choose(const GameSpec& spec, const Position& pos, int count) override;
  std::unique_ptr<Strategy> clone() const override { return std::make_unique<RandomBreaker>(*this); }

 private:
  Rng rng_;
};

class BipartiteGuardBreaker : public Strategy {
 public:
  std::string id() const override { return "bipartite_guard"; }
  void reset(const GameSpec&, Player, std::uint64_t) override {}
  std::optional<std::vector<int>> choose(const GameSpec& spec, const Position& pos, int count) override;
  std::unique_ptr<Strategy> clone() const override { return std::make_unique<BipartiteGuardBreaker>(*this); }
};

class CutAttackBreaker : public Strategy {
 public:
  std::string id() const override { return "cut_attack"; }
  void reset(const GameSpec&, Player, std::uint64_t) override {}
  std::optional<std::vector<int>> choose(const GameSpec& spec, const Position& pos, int count) override;
  std::unique_ptr<Strategy> clone() const override { return std::make_unique<CutAttackBreaker>(*this); }
};

}  // namespace mbgame
