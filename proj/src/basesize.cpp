#include "torbase/basesize.hpp"

#include <algorithm>
#include <stdexcept>
#include <memory>
#include <unordered_map>

namespace torbase {

OrbitPartition orbit_partition(uint32_t npoints, const std::vector<Perm>& gens) {
  OrbitPartition part;
  part.orbit_of.assign(npoints, UINT32_MAX);
  std::vector<uint32_t> stack;
  for (uint32_t s = 0; s < npoints; ++s) {
    if (part.orbit_of[s] != UINT32_MAX) continue;
    uint32_t id = static_cast<uint32_t>(part.reps.size());
    part.reps.push_back(s);
    part.sizes.push_back(0);
    stack.push_back(s);
    part.orbit_of[s] = id;
    while (!stack.empty()) {
      uint32_t p = stack.back();
      stack.pop_back();
      ++part.sizes[id];
      for (const auto& g : gens) {
        uint32_t q = g[p];
        if (part.orbit_of[q] == UINT32_MAX) {
          part.orbit_of[q] = id;
          stack.push_back(q);
        }
      }
    }
  }
  return part;
}

std::map<Int, unsigned> intersection_orders(const CosetAction& act, const Int& n_order) {
  auto part = orbit_partition(act.npoints, act.n_on_cosets);
  std::map<Int, unsigned> out;
  for (size_t i = 0; i < part.reps.size(); ++i) {
    if (part.orbit_of[act.root] == i) {
      if (part.sizes[i] != 1) throw std::logic_error("N must fix its own coset");
      continue;
    }
    Int sz(static_cast<long long>(part.sizes[i]));
    if (n_order % sz != 0) throw std::logic_error("orbit length must divide |N|");
    ++out[n_order / sz];
  }
  return out;
}

namespace {

// A subgroup given by matched generator pairs: the same group elements
// acting on the natural domain (faithful, small) and on the cosets (big).
// All order bookkeeping happens in the small representation.
struct PairedGroup {
  std::vector<Perm> small_gens;
  std::vector<Perm> big_gens;
  Int order;
};

struct PairedPRA {
  std::vector<std::pair<Perm, Perm>> slots;
  std::pair<Perm, Perm> accum;
  std::mt19937_64 rng;

  PairedPRA(const PairedGroup& g, uint64_t seed) : rng(seed) {
    for (unsigned i = 0; i < 10; ++i) {
      size_t k = i % g.small_gens.size();
      slots.emplace_back(g.small_gens[k], g.big_gens[k]);
    }
    accum = {Perm(g.small_gens[0].degree()), Perm(g.big_gens[0].degree())};
    for (int i = 0; i < 60; ++i) step();
  }
  void step() {
    size_t i = rng() % slots.size(), j = rng() % slots.size();
    while (j == i) j = rng() % slots.size();
    if (rng() & 1) {
      slots[i].first = slots[i].first * slots[j].first;
      slots[i].second = slots[i].second * slots[j].second;
    } else {
      slots[i].first = slots[i].first * slots[j].first.inverse();
      slots[i].second = slots[i].second * slots[j].second.inverse();
    }
    accum.first = accum.first * slots[i].first;
    accum.second = accum.second * slots[i].second;
  }
  std::pair<Perm, Perm> next() {
    step();
    return accum;
  }
};

// Stabilizer of `point` (big domain) in the paired group. Its order is
// |H| / (orbit length); random elements are sifted into the stabilizer and
// collected until a deterministic chain over the small representation
// certifies that order exactly.
PairedGroup paired_stabilizer(const PairedGroup& h, uint32_t point, uint64_t seed) {
  uint32_t deg = h.big_gens[0].degree();
  std::vector<int64_t> sv_gen(deg, -1);
  std::vector<uint32_t> sv_prev(deg, 0);
  std::vector<uint32_t> orbit{point};
  std::vector<char> in_orbit(deg, 0);
  in_orbit[point] = 1;
  for (size_t qi = 0; qi < orbit.size(); ++qi) {
    for (size_t gi = 0; gi < h.big_gens.size(); ++gi) {
      uint32_t q = h.big_gens[gi][orbit[qi]];
      if (!in_orbit[q]) {
        in_orbit[q] = 1;
        sv_gen[q] = static_cast<int64_t>(gi);
        sv_prev[q] = orbit[qi];
        orbit.push_back(q);
      }
    }
  }
  if (h.order % Int(orbit.size()) != 0) throw std::logic_error("orbit length must divide order");
  Int target = h.order / Int(orbit.size());

  PairedGroup s;
  s.order = target;
  if (target == 1) return s;

  std::vector<Perm> inv_small, inv_big;
  for (auto& g : h.small_gens) inv_small.push_back(g.inverse());
  for (auto& g : h.big_gens) inv_big.push_back(g.inverse());

  PairedPRA pra(h, seed);
  Int reached = 1;
  const unsigned max_iter = 4000;
  for (unsigned it = 0; it < max_iter; ++it) {
    auto [ns, nb] = pra.next();
    // strip n to the stabilizer: multiply by inverse tree edges until the
    // image of `point` walks back to `point`
    uint32_t p = nb[point];
    while (p != point) {
      int64_t gi = sv_gen[p];
      ns = ns * inv_small[gi];
      nb = nb * inv_big[gi];
      p = sv_prev[p];
    }
    if (nb[point] != point) throw std::logic_error("stabilizer strip failed");
    if (ns.is_identity()) continue;
    s.small_gens.push_back(ns);
    s.big_gens.push_back(nb);
    reached = PermGroup::from_generators(s.small_gens).order();
    if (reached == target) return s;
    if (reached > target) throw std::logic_error("stabilizer overshot its order");
  }
  throw std::runtime_error("stabilizer completion did not reach the target order");
}

}  // namespace

BaseSizeResult base_size_exact(const CosetAction& act, const Int& g_order, const Int& n_order,
                               unsigned cap, uint64_t seed) {
  if (cap < 2) throw std::invalid_argument("cap must be at least 2");
  BaseSizeResult res;
  res.intersection_multiset = intersection_orders(act, n_order);

  // cheap lower bound: |G| <= d^b
  unsigned lb = 2;
  Int dd = Int(act.npoints) * Int(act.npoints);
  while (dd < g_order) {
    ++lb;
    dd *= Int(act.npoints);
  }
  res.log_bound_forced = lb >= 3;

  // Nodes entering iteration k are pointwise stabilizers of k extra points;
  // a regular orbit at such a node certifies b = k + 2 (all smaller values
  // were exhaustively refuted at earlier iterations).
  struct Node {
    PairedGroup grp;
    std::vector<uint32_t> fixed;
  };
  std::vector<Node> frontier;
  frontier.push_back({PairedGroup{act.n_small, act.n_on_cosets, n_order}, {}});

  for (unsigned k = 0; k + 2 <= cap; ++k) {
    std::vector<Node> next;
    for (const auto& node : frontier) {
      auto prt = orbit_partition(act.npoints, node.grp.big_gens);
      // regular orbit first (trivial-order nodes never enter the frontier:
      // they would have been caught as a regular orbit of their parent)
      for (size_t i = 0; i < prt.reps.size(); ++i) {
        if (Int(prt.sizes[i]) == node.grp.order) {
          res.b = k + 2;
          if (res.b < lb) throw std::logic_error("found base below the log lower bound");
          res.witness = node.fixed;
          res.witness.push_back(prt.reps[i]);
          return res;
        }
      }
      // otherwise descend into the stabilizer of each orbit representative
      for (size_t i = 0; i < prt.reps.size(); ++i) {
        if (prt.sizes[i] == 1) continue;
        Node child{paired_stabilizer(node.grp, prt.reps[i],
                                     seed + 0x9e3779b97f4a7c15ull * (next.size() + 1) + k),
                   node.fixed};
        child.fixed.push_back(prt.reps[i]);
        next.push_back(std::move(child));
      }
    }
    if (next.empty()) throw std::runtime_error("base size search exhausted unexpectedly");
    frontier = std::move(next);
  }
  throw std::runtime_error("base size exceeds cap " + std::to_string(cap));
}

std::optional<Perm> trivial_intersection_witness(const PermGroup& G, const PermGroup& N,
                                                 unsigned attempts, uint64_t seed) {
  ProductReplacer pra(G.generators(), seed);
  for (unsigned at = 0; at < attempts; ++at) {
    Perm x = pra.next();
    if (x.is_identity()) continue;
    PermGroup nx = N.conjugated(x);
    bool trivial = true;
    N.for_each_element([&](const Perm& e) {
      if (e.is_identity()) return true;
      if (nx.contains(e)) {
        trivial = false;
        return false;
      }
      return true;
    });
    if (trivial) return x;
  }
  return std::nullopt;
}

Int intersection_order_exact(const PermGroup& N, const PermGroup& N_conj) {
  Int count = 0;
  N.for_each_element([&](const Perm& e) {
    if (N_conj.contains(e)) ++count;
    return true;
  });
  return count;
}

std::vector<std::pair<Perm, Int>> exhaustive_classes(const PermGroup& G, const Int& limit,
                                                     bool prime_order_only) {
  if (G.order() > limit)
    throw std::runtime_error("limit-exceeded: |G| = " + G.order().str() +
                             " above exhaustive limit " + limit.str());

  // pass 1: bucket counts by cycle type
  std::map<std::vector<unsigned>, uint64_t> bucket_count;
  G.for_each_element([&](const Perm& e) {
    ++bucket_count[e.cycle_type()];
    return true;
  });

  std::vector<Perm> gen_inv;
  for (auto& g : G.generators()) gen_inv.push_back(g.inverse());

  std::vector<std::pair<Perm, Int>> classes;
  for (auto& [key, total] : bucket_count) {
    if (prime_order_only) {
      Int ord = 1;
      for (unsigned c : key) ord = boost::multiprecision::lcm(ord, Int(c));
      if (!is_prime(ord)) continue;
    }
    // pass 2: collect the bucket and refine it into conjugation orbits
    std::vector<Perm> bucket;
    bucket.reserve(static_cast<size_t>(total));
    G.for_each_element([&](const Perm& e) {
      if (e.cycle_type() == key) bucket.push_back(e);
      return true;
    });
    std::unordered_map<uint64_t, std::vector<std::unique_ptr<Perm>>> assigned;
    auto mark = [&](const Perm& p) -> bool {  // true if newly marked
      auto& cell = assigned[p.hash()];
      for (const auto& q : cell)
        if (*q == p) return false;
      cell.push_back(std::make_unique<Perm>(p));
      return true;
    };
    auto is_marked = [&](const Perm& p) -> bool {
      auto it = assigned.find(p.hash());
      if (it == assigned.end()) return false;
      for (const auto& q : it->second)
        if (*q == p) return true;
      return false;
    };
    uint64_t covered = 0;
    for (const auto& rep : bucket) {
      if (is_marked(rep)) continue;
      std::vector<Perm> stack{rep};
      mark(rep);
      Int size = 0;
      while (!stack.empty()) {
        Perm x = stack.back();
        stack.pop_back();
        ++size;
        for (size_t gi = 0; gi < G.generators().size(); ++gi) {
          Perm y = gen_inv[gi] * (x * G.generators()[gi]);
          if (mark(y)) stack.push_back(y);
        }
      }
      covered += static_cast<uint64_t>(size);
      classes.emplace_back(rep, size);
    }
    if (covered != total) throw std::logic_error("bucket refinement lost elements");
  }
  std::sort(classes.begin(), classes.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second < b.second;
    return a.first < b.first;
  });
  return classes;
}

}  // namespace torbase
