#pragma once

#include <functional>
#include <optional>
#include <random>
#include <vector>

#include "torbase/bigint.hpp"
#include "torbase/perm.hpp"

namespace torbase {

// Seedable product-replacement random element source (10 slots, 60-step
// burn-in). Deterministic for a fixed seed and generator list.
class ProductReplacer {
 public:
  ProductReplacer(std::vector<Perm> gens, uint64_t seed);
  Perm next();

 private:
  std::vector<Perm> slots_;
  Perm accum_;
  std::mt19937_64 rng_;
  void step();
};

// Permutation group with a base and strong generating set. The chain is
// built by deterministic Schreier-Sims; when the caller already knows the
// group order, from_generators_with_order uses randomized completion and
// verifies the final order exactly.
class PermGroup {
 public:
  PermGroup() = default;  // trivial group placeholder

  struct Level {
    uint32_t base_point = 0;
    std::vector<Perm> gens;            // generators of this level's stabilizer group
    std::vector<uint32_t> orbit;       // BFS order, orbit[0] == base_point
    std::vector<int64_t> orbit_pos;    // point -> position in orbit, -1 outside
    std::vector<int64_t> sv_gen;       // Schreier vector: generator index used to reach point
    std::vector<uint32_t> sv_prev;     // predecessor point
  };

  static PermGroup from_generators(std::vector<Perm> gens,
                                   const std::vector<uint32_t>& base_hint = {});
  static PermGroup from_generators_with_order(std::vector<Perm> gens, const Int& known_order,
                                              uint64_t seed,
                                              const std::vector<uint32_t>& base_hint = {});

  unsigned degree() const { return degree_; }
  const std::vector<Perm>& generators() const { return gens_; }
  const std::vector<Level>& chain() const { return chain_; }
  const std::vector<uint32_t>& base() const { return base_; }
  std::vector<Perm> strong_generators() const;
  const Int& order() const { return order_; }

  bool contains(const Perm& g) const;
  // residue of g after sifting; identity iff g is a member
  Perm sift(const Perm& g) const;

  // transversal element u with base_point^u = point at the given level
  Perm transversal(unsigned level, uint32_t point) const;

  // generators of the stabilizer of the first base point (needs the chain)
  std::vector<Perm> point_stabilizer_gens() const;

  PermGroup conjugated(const Perm& x) const;

  // enumerate all |G| elements (DFS over the chain); callback may return
  // false to stop early
  void for_each_element(const std::function<bool(const Perm&)>& fn) const;

 private:
  void build_deterministic(const std::vector<uint32_t>& base_hint);
  void build_known_order(const Int& target, uint64_t seed, const std::vector<uint32_t>& base_hint);
  void recompute_orbit(unsigned level);
  void add_level(uint32_t point);
  // sift that reports the level where stripping failed
  std::pair<Perm, unsigned> strip(const Perm& g) const;
  void compute_order();

  unsigned degree_ = 0;
  std::vector<Perm> gens_;
  std::vector<uint32_t> base_;
  std::vector<Level> chain_;
  Int order_ = 1;
};

}  // namespace torbase
