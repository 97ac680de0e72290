#pragma once

#include <map>
#include <optional>
#include <vector>

#include "torbase/cosets.hpp"
#include "torbase/permgroup.hpp"

namespace torbase {

struct OrbitPartition {
  std::vector<uint32_t> orbit_of;  // point -> orbit id
  std::vector<uint32_t> reps;      // smallest point of each orbit
  std::vector<uint64_t> sizes;
};

OrbitPartition orbit_partition(uint32_t npoints, const std::vector<Perm>& gens);

// The multiset { |N cap N^x| : x over (N,N) double-coset reps, x not in N },
// read off the N-orbit lengths on G/N.
std::map<Int, unsigned> intersection_orders(const CosetAction& act, const Int& n_order);

struct BaseSizeResult {
  unsigned b = 0;
  std::map<Int, unsigned> intersection_multiset;
  // cosets beyond the root whose iterated stabilizer is trivial (size b-1)
  std::vector<uint32_t> witness;
  bool log_bound_forced = false;  // |Omega|^2 < |G| already forces b >= 3
};

// Exact base size of G acting on G/N: regular-orbit search for b = 2, then
// iterated point-stabilizer search up to `cap` base points. Stabilizer
// groups are verified exactly in the small-degree representation.
BaseSizeResult base_size_exact(const CosetAction& act, const Int& g_order, const Int& n_order,
                               unsigned cap, uint64_t seed);

// Random search for x with N cap N^x = 1, entirely in the natural
// representation; exact membership counting per candidate.
std::optional<Perm> trivial_intersection_witness(const PermGroup& G, const PermGroup& N,
                                                 unsigned attempts, uint64_t seed);

// |N cap N^x| by exhaustive enumeration of N (exact; N must be small).
Int intersection_order_exact(const PermGroup& N, const PermGroup& N_conj);

// All conjugacy classes (representative, size) by exhaustive enumeration;
// requires |G| <= limit. Classes are bucketed by cycle type and refined by
// conjugation orbits. prime_order_only restricts the output.
std::vector<std::pair<Perm, Int>> exhaustive_classes(const PermGroup& G, const Int& limit,
                                                     bool prime_order_only = false);

}  // namespace torbase
