#include "torbase/cosets.hpp"

#include <cstring>
#include <stdexcept>
#include <unordered_map>

namespace torbase {

namespace {

// Canonical representative of the coset N*g: greedily minimise the images of
// N's base points using N's fundamental orbits. The result is the unique
// element of N*g realising the lexicographically least base-image tuple.
Perm coset_canon(const PermGroup& N, Perm g) {
  for (unsigned l = 0; l < N.chain().size(); ++l) {
    const auto& lv = N.chain()[l];
    uint32_t best_src = lv.orbit[0];
    uint32_t best_img = g[best_src];
    for (uint32_t o : lv.orbit) {
      if (g[o] < best_img) {
        best_img = g[o];
        best_src = o;
      }
    }
    if (best_src != lv.base_point) g = N.transversal(l, best_src) * g;
  }
  return g;
}

// Arena of fixed-width representative keys with exact comparison.
class RepTable {
 public:
  explicit RepTable(unsigned degree) : degree_(degree) {}

  // returns index, inserting if absent
  uint32_t intern(const Perm& canon, bool& inserted) {
    uint64_t h = canon.hash();
    auto range = map_.equal_range(h);
    for (auto it = range.first; it != range.second; ++it) {
      if (equals(it->second, canon)) {
        inserted = false;
        return it->second;
      }
    }
    uint32_t idx = static_cast<uint32_t>(count_);
    data_.reserve(data_.size() + degree_);
    for (uint32_t i = 0; i < degree_; ++i) data_.push_back(static_cast<uint16_t>(canon[i]));
    map_.emplace(h, idx);
    ++count_;
    inserted = true;
    return idx;
  }

  Perm get(uint32_t idx) const {
    std::vector<uint32_t> img(degree_);
    const uint16_t* base = data_.data() + static_cast<size_t>(idx) * degree_;
    for (uint32_t i = 0; i < degree_; ++i) img[i] = base[i];
    return Perm(std::move(img));
  }

  size_t size() const { return count_; }

 private:
  bool equals(uint32_t idx, const Perm& p) const {
    const uint16_t* base = data_.data() + static_cast<size_t>(idx) * degree_;
    for (uint32_t i = 0; i < degree_; ++i)
      if (base[i] != p[i]) return false;
    return true;
  }

  unsigned degree_;
  size_t count_ = 0;
  std::vector<uint16_t> data_;
  std::unordered_multimap<uint64_t, uint32_t> map_;
};

}  // namespace

CosetAction coset_action(const PermGroup& G, const PermGroup& N, uint64_t max_index) {
  if (G.degree() != N.degree()) throw std::invalid_argument("degree mismatch");
  if (G.degree() >= 65536) throw std::invalid_argument("degree limit for coset actions");
  for (const auto& x : N.generators())
    if (!G.contains(x)) throw std::invalid_argument("N is not a subgroup of G");
  Int index = G.order() / N.order();
  if (G.order() % N.order() != 0) throw std::logic_error("|N| must divide |G|");
  if (index > Int(max_index)) throw std::runtime_error("index " + index.str() + " exceeds limit");

  CosetAction act;
  act.g_small = G.generators();
  act.n_small = N.generators();

  RepTable reps(G.degree());
  bool ins = false;
  act.root = reps.intern(coset_canon(N, Perm(G.degree())), ins);

  // BFS over G-generators
  std::vector<std::vector<uint32_t>> g_img(act.g_small.size());
  for (uint32_t at = 0; at < reps.size(); ++at) {
    Perm rep = reps.get(at);
    for (size_t gi = 0; gi < act.g_small.size(); ++gi) {
      Perm img = coset_canon(N, rep * act.g_small[gi]);
      uint32_t to = reps.intern(img, ins);
      g_img[gi].push_back(to);
      if (Int(reps.size()) > index) throw std::logic_error("coset enumeration overran |G:N|");
    }
  }
  if (Int(reps.size()) != index)
    throw std::logic_error("coset enumeration found " + std::to_string(reps.size()) +
                           " cosets, expected " + index.str());
  act.npoints = static_cast<uint32_t>(reps.size());
  for (auto& v : g_img) act.g_on_cosets.emplace_back(std::move(v));

  // N-generator images
  for (const auto& n : act.n_small) {
    std::vector<uint32_t> img(act.npoints);
    for (uint32_t at = 0; at < act.npoints; ++at) {
      bool dummy = false;
      img[at] = reps.intern(coset_canon(N, reps.get(at) * n), dummy);
      if (dummy) throw std::logic_error("N-image left the coset set");
    }
    act.n_on_cosets.emplace_back(std::move(img));
    if (act.n_on_cosets.back()[act.root] != act.root)
      throw std::logic_error("N must fix its own coset");
  }
  return act;
}

std::vector<Perm> reduce_generators(const PermGroup& G, uint64_t seed) {
  if (G.generators().size() <= 3) return G.generators();
  ProductReplacer pra(G.generators(), seed);
  for (int attempt = 0; attempt < 8; ++attempt) {
    std::vector<Perm> pair{pra.next(), pra.next()};
    if (pair[0].is_identity() || pair[1].is_identity()) continue;
    try {
      PermGroup H = PermGroup::from_generators_with_order(pair, G.order(), seed + attempt);
      return pair;
    } catch (const std::runtime_error&) {
      continue;
    }
  }
  return G.generators();
}

}  // namespace torbase
