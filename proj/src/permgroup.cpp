#include "torbase/permgroup.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_set>

namespace torbase {

ProductReplacer::ProductReplacer(std::vector<Perm> gens, uint64_t seed) : rng_(seed) {
  if (gens.empty()) throw std::invalid_argument("product replacement needs generators");
  const unsigned slots = 10;
  slots_.reserve(slots);
  for (unsigned i = 0; i < slots; ++i) slots_.push_back(gens[i % gens.size()]);
  accum_ = Perm(gens[0].degree());
  for (unsigned i = 0; i < 60; ++i) step();
}

void ProductReplacer::step() {
  unsigned i = static_cast<unsigned>(rng_() % slots_.size());
  unsigned j = static_cast<unsigned>(rng_() % slots_.size());
  while (j == i) j = static_cast<unsigned>(rng_() % slots_.size());
  if (rng_() & 1)
    slots_[i] = slots_[i] * slots_[j];
  else
    slots_[i] = slots_[i] * slots_[j].inverse();
  accum_ = accum_ * slots_[i];
}

Perm ProductReplacer::next() {
  step();
  return accum_;
}

// ---------------------------------------------------------------------------

void PermGroup::add_level(uint32_t point) {
  Level lv;
  lv.base_point = point;
  lv.orbit_pos.assign(degree_, -1);
  lv.sv_gen.assign(degree_, -1);
  lv.sv_prev.assign(degree_, 0);
  chain_.push_back(std::move(lv));
  base_.push_back(point);
}

void PermGroup::recompute_orbit(unsigned level) {
  Level& lv = chain_[level];
  lv.orbit.clear();
  std::fill(lv.orbit_pos.begin(), lv.orbit_pos.end(), -1);
  std::fill(lv.sv_gen.begin(), lv.sv_gen.end(), -1);
  lv.orbit.push_back(lv.base_point);
  lv.orbit_pos[lv.base_point] = 0;
  for (size_t qi = 0; qi < lv.orbit.size(); ++qi) {
    uint32_t p = lv.orbit[qi];
    for (size_t gi = 0; gi < lv.gens.size(); ++gi) {
      uint32_t im = lv.gens[gi][p];
      if (lv.orbit_pos[im] < 0) {
        lv.orbit_pos[im] = static_cast<int64_t>(lv.orbit.size());
        lv.sv_gen[im] = static_cast<int64_t>(gi);
        lv.sv_prev[im] = p;
        lv.orbit.push_back(im);
      }
    }
  }
}

Perm PermGroup::transversal(unsigned level, uint32_t point) const {
  const Level& lv = chain_[level];
  if (lv.orbit_pos[point] < 0) throw std::invalid_argument("point not in orbit");
  std::vector<int64_t> word;
  uint32_t p = point;
  while (p != lv.base_point) {
    word.push_back(lv.sv_gen[p]);
    p = lv.sv_prev[p];
  }
  Perm u(degree_);
  for (auto it = word.rbegin(); it != word.rend(); ++it) u = u * lv.gens[*it];
  return u;
}

std::pair<Perm, unsigned> PermGroup::strip(const Perm& g) const {
  Perm h = g;
  for (unsigned l = 0; l < chain_.size(); ++l) {
    uint32_t p = h[chain_[l].base_point];
    if (chain_[l].orbit_pos[p] < 0) return {h, l};
    h = h * transversal(l, p).inverse();
  }
  return {h, static_cast<unsigned>(chain_.size())};
}

Perm PermGroup::sift(const Perm& g) const { return strip(g).first; }

bool PermGroup::contains(const Perm& g) const {
  if (g.degree() != degree_) return false;
  return sift(g).is_identity();
}

void PermGroup::compute_order() {
  order_ = 1;
  for (auto& lv : chain_) order_ *= Int(lv.orbit.size());
}

namespace {

// Generators of the level's group pushed down into every level they fix:
// a residue added at level j is stored at level j only; the group at level
// l is generated by the union over levels >= l. Orbits are computed per
// level from that union, so each Level keeps its own snapshot.
void sync_level_gens(std::vector<PermGroup::Level>& chain, const std::vector<Perm>& toplevel) {
  // nothing: each level owns its gens; helper kept for clarity
  (void)chain;
  (void)toplevel;
}

}  // namespace

PermGroup PermGroup::from_generators(std::vector<Perm> gens,
                                     const std::vector<uint32_t>& base_hint) {
  PermGroup g;
  gens.erase(std::remove_if(gens.begin(), gens.end(),
                            [](const Perm& p) { return p.is_identity(); }),
             gens.end());
  if (gens.empty()) {
    g.degree_ = 1;
    g.order_ = 1;
    return g;
  }
  g.degree_ = gens[0].degree();
  for (auto& x : gens)
    if (x.degree() != g.degree_) throw std::invalid_argument("mixed degrees");
  g.gens_ = gens;
  g.build_deterministic(base_hint);
  return g;
}

void PermGroup::build_deterministic(const std::vector<uint32_t>& base_hint) {
  // initial chain: hint points first, then points moved by the generators
  for (uint32_t b : base_hint) add_level(b);
  if (chain_.empty()) add_level(gens_[0].first_moved());

  // distribute generators: each generator sits at the deepest level whose
  // base prefix it fixes
  for (const auto& x : gens_) {
    unsigned l = 0;
    while (l < chain_.size() && x[chain_[l].base_point] == chain_[l].base_point) ++l;
    if (l == chain_.size()) add_level(x.first_moved());
    for (unsigned k = 0; k <= l && k < chain_.size(); ++k) chain_[k].gens.push_back(x);
  }
  for (unsigned l = 0; l < chain_.size(); ++l) recompute_orbit(l);

  // Schreier-Sims verification loop. verified[l] is a watermark into the
  // flattened (orbit point, generator) pairs of level l; it stays valid as
  // long as level l's own generators and orbit are untouched, which holds
  // because new residues are only ever added to strictly deeper levels.
  std::vector<size_t> verified(chain_.size(), 0);
  int i = static_cast<int>(chain_.size()) - 1;
  while (i >= 0) {
    bool restart = false;
    Level& lv = chain_[i];
    std::vector<Perm> trans(lv.orbit.size());
    bool have_trans = false;
    size_t limit = lv.orbit.size() * lv.gens.size();
    for (size_t idx = verified[i]; idx < limit && !restart; ++idx) {
      size_t t = idx / lv.gens.size();
      size_t gi = idx % lv.gens.size();
      if (!have_trans) {
        for (size_t tt = 0; tt < lv.orbit.size(); ++tt) trans[tt] = transversal(i, lv.orbit[tt]);
        have_trans = true;
      }
      uint32_t im = lv.gens[gi][lv.orbit[t]];
      Perm schreier = trans[t] * lv.gens[gi] * trans[lv.orbit_pos[im]].inverse();
      verified[i] = idx + 1;
      if (schreier.is_identity()) continue;
      // strip through deeper levels
      Perm h = schreier;
      unsigned j = i + 1;
      for (; j < chain_.size(); ++j) {
        uint32_t p = h[chain_[j].base_point];
        if (chain_[j].orbit_pos[p] < 0) break;
        h = h * transversal(j, p).inverse();
      }
      if (h.is_identity()) continue;
      if (j == chain_.size()) {
        add_level(h.first_moved());
        verified.push_back(0);
      }
      for (unsigned k = i + 1; k <= j && k < chain_.size(); ++k) {
        chain_[k].gens.push_back(h);
        recompute_orbit(k);
        verified[k] = 0;
      }
      i = static_cast<int>(j);
      restart = true;
    }
    if (!restart) --i;
  }
  compute_order();
}

PermGroup PermGroup::from_generators_with_order(std::vector<Perm> gens, const Int& known_order,
                                                uint64_t seed,
                                                const std::vector<uint32_t>& base_hint) {
  PermGroup g;
  std::vector<Perm> pra_src = gens;
  gens.erase(std::remove_if(gens.begin(), gens.end(),
                            [](const Perm& p) { return p.is_identity(); }),
             gens.end());
  if (gens.empty()) {
    if (known_order != 1) throw std::runtime_error("trivial generators, nontrivial order");
    g.degree_ = 1;
    g.order_ = 1;
    return g;
  }
  g.degree_ = gens[0].degree();
  g.gens_ = gens;
  for (uint32_t b : base_hint) g.add_level(b);

  auto insert = [&g](const Perm& x) -> bool {
    auto [h, j] = g.chain_.empty() ? std::make_pair(x, 0u) : g.strip(x);
    if (h.is_identity()) return false;
    if (j == g.chain_.size()) g.add_level(h.first_moved());
    for (unsigned k = 0; k <= j && k < g.chain_.size(); ++k) g.chain_[k].gens.push_back(h);
    for (unsigned k = 0; k < g.chain_.size(); ++k) g.recompute_orbit(k);
    return true;
  };

  for (const auto& x : gens) insert(x);
  g.compute_order();
  if (g.order_ != known_order) {
    ProductReplacer pra(pra_src, seed);
    const unsigned max_iter = 4000;
    for (unsigned it = 0; it < max_iter && g.order_ != known_order; ++it) {
      insert(pra.next());
      g.compute_order();
    }
  }
  if (g.order_ != known_order)
    throw std::runtime_error("known-order completion failed: reached " + g.order_.str() +
                             " of " + known_order.str());
  return g;
}

std::vector<Perm> PermGroup::strong_generators() const {
  std::vector<Perm> out;
  for (auto& lv : chain_)
    for (auto& x : lv.gens) {
      if (std::find(out.begin(), out.end(), x) == out.end()) out.push_back(x);
    }
  return out;
}

std::vector<Perm> PermGroup::point_stabilizer_gens() const {
  if (chain_.size() <= 1) return {};
  std::vector<Perm> out;
  for (auto& x : chain_[1].gens)
    if (std::find(out.begin(), out.end(), x) == out.end()) out.push_back(x);
  return out;
}

PermGroup PermGroup::conjugated(const Perm& x) const {
  PermGroup g;
  g.degree_ = degree_;
  g.order_ = order_;
  Perm xi = x.inverse();
  auto conj = [&](const Perm& p) { return xi * (p * x); };
  for (auto& p : gens_) g.gens_.push_back(conj(p));
  for (uint32_t b : base_) g.base_.push_back(x[b]);
  for (auto& lv : chain_) {
    Level nl;
    nl.base_point = x[lv.base_point];
    for (auto& p : lv.gens) nl.gens.push_back(conj(p));
    nl.orbit_pos.assign(degree_, -1);
    nl.sv_gen.assign(degree_, -1);
    nl.sv_prev.assign(degree_, 0);
    for (uint32_t p : lv.orbit) {
      uint32_t q = x[p];
      nl.orbit_pos[q] = static_cast<int64_t>(nl.orbit.size());
      nl.orbit.push_back(q);
      nl.sv_gen[q] = lv.sv_gen[p];
      nl.sv_prev[q] = x[lv.sv_prev[p]];
    }
    g.chain_.push_back(std::move(nl));
  }
  return g;
}

void PermGroup::for_each_element(const std::function<bool(const Perm&)>& fn) const {
  if (chain_.empty()) {
    fn(Perm(degree_ == 0 ? 1 : degree_));
    return;
  }
  // explicit transversal tables per level
  std::vector<std::vector<Perm>> trans(chain_.size());
  for (unsigned l = 0; l < chain_.size(); ++l) {
    trans[l].reserve(chain_[l].orbit.size());
    for (uint32_t p : chain_[l].orbit) trans[l].push_back(transversal(l, p));
  }
  bool stop = false;
  std::function<void(int, const Perm&)> rec = [&](int level, const Perm& acc) {
    if (stop) return;
    if (level < 0) {
      if (!fn(acc)) stop = true;
      return;
    }
    for (const auto& t : trans[level]) {
      rec(level - 1, acc * t);
      if (stop) return;
    }
  };
  rec(static_cast<int>(chain_.size()) - 1, Perm(degree_));
}

}  // namespace torbase
