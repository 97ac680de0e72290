#pragma once

#include <cstdint>
#include <vector>

#include "torbase/permgroup.hpp"

namespace torbase {

// Right-coset action of G on G/N, built by orbit enumeration over canonical
// coset representatives. Generators come in matched pairs: index i of
// g_small/g_on_cosets is the same group element acting on the natural domain
// and on the cosets, likewise for the N lists.
struct CosetAction {
  uint32_t npoints = 0;
  uint32_t root = 0;  // the coset N*1
  std::vector<Perm> g_small, g_on_cosets;
  std::vector<Perm> n_small, n_on_cosets;
};

// Requires N <= G (checked by sifting). Throws if |G:N| exceeds max_index.
CosetAction coset_action(const PermGroup& G, const PermGroup& N, uint64_t max_index = 5000000);

// Attempts to find a generating set of size two by random search, verifying
// the order exactly; falls back to the original generators.
std::vector<Perm> reduce_generators(const PermGroup& G, uint64_t seed);

}  // namespace torbase
