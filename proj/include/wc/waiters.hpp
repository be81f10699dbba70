#pragma once

#include <cstdint>
#include <deque>
#include <memory>
#include <string>
#include <vector>

#include "wc/analysis.hpp"
#include "wc/expander.hpp"
#include "wc/graph.hpp"
#include "wc/staged.hpp"

namespace wc {

// Parameter check run before a strategy is built. `violated` lists the
// conditions without which the strategy cannot play at all; `unproven` lists
// the proof's sufficient inequalities that fail at these parameters (play
// still proceeds and the stage checks decide).
struct Preflight {
  bool feasible = true;
  std::vector<std::string> violated;
  std::vector<std::string> unproven;

  void require(bool ok, const std::string& what);
  void expect(bool ok, const std::string& what);
  std::string summary() const;
};

// A cycle the strategy claims to have forced, as a closed vertex sequence.
struct CycleCertificate {
  std::vector<Vertex> cycle;
  std::string stage;
};

// Re-checks every certificate edge by edge against Client's graph.
bool certificates_hold(const SimpleGraph& client, const std::vector<CycleCertificate>& certs,
                       std::string* why = nullptr);

// Tree-growing strategy on the vertex set vs: Client's graph gets a
// component of order min{|vs|, 2(|vs|-q-1)}.
class BigComponentWaiter final : public StagedWaiter {
 public:
  BigComponentWaiter(std::vector<Vertex> vs, std::uint64_t q, std::string name = "big_component",
                     bool check_invariants = true);
  static Preflight preflight(Vertex n, std::uint64_t q);

  std::size_t target() const { return target_; }
  bool trivial() const { return trivial_; }
  // Rounds from the first move until the goal holds.
  std::uint64_t expected_rounds() const { return expected_; }
  std::uint64_t first_round() const { return first_round_; }
  // Global labels of the grown tree.
  std::vector<Vertex> tree() const;

 protected:
  WaiterMove plan(const GameState& s) override;
  void absorb(const GameState& s, const Offer& instruction, Elem choice) override;
  void on_finish(const GameState& s) override;

 private:
  Elem pair(Vertex a, Vertex b) const { return Board::pair_id(vs_[a], vs_[b]); }
  Vertex local(Vertex g) const;
  bool waiterish(const GameState& s, Vertex a, Vertex b) const;
  std::size_t waiter_degree_to_tree(const GameState& s, Vertex a) const;
  void add_to_tree(Vertex a);
  void check_stage_one(const GameState& s, std::uint64_t i);
  void start_stage_two(const GameState& s);

  std::vector<Vertex> vs_;
  std::vector<Vertex> local_;  // global -> local + 1, 0 when absent
  Vertex n_;
  std::uint64_t q_;
  bool trivial_;
  bool check_invariants_;
  std::size_t target_;
  std::uint64_t expected_ = 0;
  std::uint64_t first_round_ = 0;

  int phase_ = 0;  // 0 before, 1 stage I, 2 stage II, 3 done
  std::uint64_t done_rounds_ = 0;
  std::vector<char> in_tree_;
  std::vector<Vertex> tree_;
  std::vector<Vertex> p_;
  std::deque<Vertex> z_, tail_;
  std::vector<Vertex> order_;
  std::uint64_t stage_two_round_ = 0;
  std::uint64_t stage_two_rounds_ = 0;
};

// Connectivity on vs; requires q <= floor(|vs|/2) - 1.
std::unique_ptr<BigComponentWaiter> make_connectivity(std::vector<Vertex> vs, std::uint64_t q,
                                                      bool check_invariants = true);

// k-vertex-connectivity by connecting each part of an equipartition and then
// offering stars of two edge-disjoint families between every pair of parts.
class KConnectedWaiter final : public StagedWaiter {
 public:
  KConnectedWaiter(Vertex n, std::uint64_t q, unsigned k);
  static Preflight preflight(Vertex n, std::uint64_t q, unsigned k);

  struct Report {
    bool k_connected = false;
    bool exact = false;
    std::size_t min_degree = 0;
  };
  const Report& report() const { return report_; }

 protected:
  WaiterMove plan(const GameState& s) override;
  void on_finish(const GameState& s) override;

 private:
  Vertex n_;
  std::uint64_t q_;
  unsigned k_;
  std::vector<std::vector<Vertex>> parts_;
  std::vector<std::unique_ptr<BigComponentWaiter>> children_;
  std::size_t child_ = 0;
  std::vector<std::vector<Edge>> stars_;
  std::size_t star_ = 0;
  bool stars_started_ = false;
  bool begun_ = false;
  Report report_;
};

// Repeated matching on path endpoints, doubling path orders.
class PathDoublingWaiter final : public StagedWaiter {
 public:
  PathDoublingWaiter(Vertex n, std::uint64_t q);
  static Preflight preflight(Vertex n, std::uint64_t q);

  // max{t : (n/(10q))^{2^t} 10q >= q^{2/3}}, or -1 when no t >= 0 qualifies.
  static int t_star(Vertex n, std::uint64_t q);
  static long double paths_bound(Vertex n, std::uint64_t q, int t);
  static long double matching_bound(std::uint64_t m, std::uint64_t q);

  struct Level {
    int t = 0;
    std::uint64_t paths = 0;
    long double bound = 0;           // property (a) threshold
    bool a = false, b = false;
    bool c = false;                  // all cross endpoint pairs free
    bool c_continuing = false;       // cross pairs of the endpoints kept for the next level
    bool c_exact = true;
    std::uint64_t c_violations = 0;  // Client/Waiter-owned cross pairs found
    std::uint64_t matching = 0;      // size of the matching that built this level
    long double matching_bound = 0;
    std::uint64_t round = 0;
  };
  const std::vector<Level>& levels() const { return levels_; }
  int target_level() const { return t_star_; }
  // Paths of the deepest level reached, each from its kept endpoint.
  const std::vector<std::vector<Vertex>>& paths() const { return paths_; }

 protected:
  WaiterMove plan(const GameState& s) override;
  void absorb(const GameState& s, const Offer& instruction, Elem choice) override;
  void on_finish(const GameState& s) override;

 private:
  void record_level(const GameState& s, std::uint64_t matching, long double mbound);
  void start_matching(const GameState& s);
  void finish_matching(const GameState& s);

  Vertex n_;
  std::uint64_t q_;
  int t_star_;
  int t_ = 0;
  std::vector<std::vector<Vertex>> paths_;
  std::vector<Level> levels_;
  // matching phase
  std::vector<Vertex> xs_, ys_;
  std::vector<std::uint32_t> path_of_;  // endpoint vertex -> path index
  std::vector<char> matched_;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs_;
  std::size_t cx_ = 0, cy_ = 0;
  long double mbound_ = 0;
};

// Path in V3, pendant edges from V1 and V2 to its two ends, one closing
// round between them.
class LongCycleWaiter final : public StagedWaiter {
 public:
  LongCycleWaiter(Vertex n, std::uint64_t q, std::uint64_t eta);
  static Preflight preflight(Vertex n, std::uint64_t q, std::uint64_t eta);

  const std::vector<CycleCertificate>& certificates() const { return certs_; }
  std::size_t required_length() const;
  const std::vector<Vertex>& path() const { return path_; }

 protected:
  WaiterMove plan(const GameState& s) override;
  void absorb(const GameState& s, const Offer& instruction, Elem choice) override;
  void on_finish(const GameState& s) override;

 private:
  Offer star_offer(const GameState& s, const std::vector<Vertex>& from, std::size_t lo,
                   std::size_t hi);

  Vertex n_;
  std::uint64_t q_, eta_;
  std::vector<Vertex> v1_, v2_, v3_;
  std::size_t path_target_, r_, block_;
  int stage_ = 0;
  std::size_t block_i_ = 0;
  std::vector<Vertex> path_;
  std::vector<char> on_path_;
  std::vector<std::int64_t> pos_;  // vertex -> path index, -1 off the path
  std::size_t v3_cursor_ = 0;
  std::vector<std::pair<Vertex, std::size_t>> w1_, w2_;  // (vertex, path index)
  std::vector<CycleCertificate> certs_;
};

// Half-expander on (V1, V2) against bias q.
class HalfExpanderWaiter final : public StagedWaiter {
 public:
  HalfExpanderWaiter(std::vector<Vertex> v1, std::vector<Vertex> v2, unsigned d, std::uint64_t q,
                     ExpanderOptions verify = {});
  static Preflight preflight(std::size_t n1, std::size_t n2, unsigned d, std::uint64_t q);

  const std::vector<Vertex>& left() const { return v1_; }
  const std::vector<Vertex>& right() const { return v2_; }
  // Client's graph between the sides, labeled left first.
  SimpleGraph bipartite(const GameState& s) const;

  struct Report {
    ExpanderVerdict verdict;
    std::size_t exceptional = 0;   // |U|
    bool disjoint_fresh = true;    // new neighbourhoods of distinct x_i disjoint
    bool mid_sets_expand = true;   // sampled check after stage I
    std::size_t stage_one_rounds = 0;
  };
  const Report& report() const { return report_; }

 protected:
  WaiterMove plan(const GameState& s) override;
  void absorb(const GameState& s, const Offer& instruction, Elem choice) override;
  void on_finish(const GameState& s) override;

 private:
  WaiterMove stage_one(const GameState& s);
  void start_stage_two(const GameState& s);

  std::vector<Vertex> v1_, v2_, w_, rest_;
  unsigned d_;
  std::uint64_t q_;
  ExpanderOptions verify_;
  int stage_ = 0;
  std::vector<std::uint32_t> deg1_, degw_;  // Client degrees inside G'
  std::vector<std::size_t> cursor_;         // per left vertex, next W index
  std::size_t rr_ = 0;                      // round-robin over V1
  std::vector<Vertex> u_;                   // exceptional vertices
  std::size_t ui_ = 0, uj_ = 0;
  std::vector<char> rest_used_;             // fresh-side vertices given out
  std::vector<std::vector<Vertex>> fresh_;  // per exceptional vertex
  Report report_;
};

// Expander with every short cycle length and connectivity, on vertex set vs.
class ExpanderCyclesWaiter final : public StagedWaiter {
 public:
  ExpanderCyclesWaiter(std::vector<Vertex> vs, unsigned d, std::uint64_t q,
                       std::string name = "expander_cycles", ExpanderOptions verify = {});
  static Preflight preflight(Vertex n, unsigned d, std::uint64_t q);
  static std::uint64_t raised_bias(Vertex n, unsigned d, std::uint64_t q);

  struct Report {
    ExpanderVerdict verdict;
    bool spectrum = false;  // certificates cover 3..ceil(n/6)
    bool connected = false;
    std::uint64_t rounds = 0;
    std::uint64_t round_bound = 0;
    std::size_t path_length = 0;
  };
  const Report& report() const { return report_; }
  const std::vector<CycleCertificate>& certificates() const { return certs_; }
  std::size_t short_limit() const;  // ceil(n/6)
  const std::vector<Vertex>& vertices() const { return vs_; }

 protected:
  WaiterMove plan(const GameState& s) override;
  void absorb(const GameState& s, const Offer& instruction, Elem choice) override;
  void on_finish(const GameState& s) override;

 private:
  bool prepare_cycles(const GameState& s);
  Offer residue_offer(int stage, std::size_t j) const;
  bool residue_active(int stage, std::size_t j) const;

  std::vector<Vertex> vs_;
  unsigned d_;
  std::uint64_t q_;
  ExpanderOptions verify_;
  std::vector<std::vector<Vertex>> parts_;
  std::vector<std::unique_ptr<HalfExpanderWaiter>> halves_;
  std::vector<std::unique_ptr<BigComponentWaiter>> connect_;
  std::size_t child_ = 0;
  int stage_ = 0;  // 1 halves, 2..5 residues, 6 connectivity, 7 done
  std::size_t j_ = 1;
  std::vector<Vertex> path_;  // v_1..v_m stored 0-based
  std::vector<Vertex> x_, y_;  // matchings from G5, G6
  std::uint64_t first_round_ = 0;
  std::vector<CycleCertificate> certs_;
  Report report_;
};

// Expander cycles with d = 6, then booster rounds until Hamiltonian.
class HamiltonianExpanderWaiter final : public StagedWaiter {
 public:
  HamiltonianExpanderWaiter(std::vector<Vertex> vs, std::uint64_t q,
                            std::string name = "hamiltonian_expander", ExpanderOptions verify = {});
  static Preflight preflight(Vertex n, std::uint64_t q);
  static constexpr double kBiasConstant = 1.0 / 30000;

  const std::vector<Vertex>& hamilton_cycle() const { return cycle_; }  // global labels
  const std::vector<CycleCertificate>& short_cycles() const { return inner_->certificates(); }
  const ExpanderCyclesWaiter& inner() const { return *inner_; }
  std::size_t booster_rounds() const { return booster_rounds_; }
  bool monotone() const { return monotone_; }
  bool boosters_verified() const { return boosters_verified_; }

 protected:
  WaiterMove plan(const GameState& s) override;
  void absorb(const GameState& s, const Offer& instruction, Elem choice) override;
  void on_finish(const GameState& s) override;

 private:
  SimpleGraph local_graph(const GameState& s) const;
  bool improve(const GameState& s);

  std::vector<Vertex> vs_;
  std::uint64_t q_;
  std::unique_ptr<ExpanderCyclesWaiter> inner_;
  int stage_ = 0;
  std::vector<Vertex> path_;   // local labels
  std::vector<Vertex> cycle_;  // global labels
  std::vector<std::vector<Vertex>> witnesses_;  // per offered booster, local
  std::size_t booster_rounds_ = 0;
  std::pair<std::size_t, bool> progress_{0, false};
  bool monotone_ = true;
  bool boosters_verified_ = true;
};

// Pancyclicity: Hamiltonian expanders on V1 and V2, one joining round, then
// one round per long cycle length.
class PancyclicWaiter final : public StagedWaiter {
 public:
  PancyclicWaiter(Vertex n, std::uint64_t q, ExpanderOptions verify = {});
  static Preflight preflight(Vertex n, std::uint64_t q);

  // One certificate per length 3..n once the game is over.
  const std::vector<CycleCertificate>& certificates() const { return certs_; }
  bool pancyclic_certified() const { return certified_; }
  std::size_t endpoint_set_size() const { return s_.size(); }

 protected:
  WaiterMove plan(const GameState& s) override;
  void absorb(const GameState& s, const Offer& instruction, Elem choice) override;
  void on_finish(const GameState& s) override;

 private:
  bool prepare_long(const GameState& s);

  Vertex n_;
  std::uint64_t q_;
  std::vector<Vertex> v1_, v2_;
  std::unique_ptr<HamiltonianExpanderWaiter> g1_, g2_;
  int stage_ = 0;
  std::vector<Vertex> h1_;  // Hamilton path of G1, v_1..v_{n1}
  Vertex w1_ = 0;
  std::vector<Vertex> s_;
  std::unique_ptr<RotationClosure> closure_;  // in G2, labels local to v2_
  std::vector<Vertex> v2_local_;
  std::size_t j_ = 0;
  std::vector<std::pair<std::size_t, Vertex>> joins_;  // (j, w) Client edges v_j w
  std::vector<CycleCertificate> certs_;
  bool certified_ = false;
};

}  // namespace wc
