#include "torbase/matrix.hpp"

#include <stdexcept>

namespace torbase {

MatF MatF::operator*(const MatF& o) const {
  MatF r(*k_, n_);
  for (unsigned i = 0; i < n_; ++i)
    for (unsigned k = 0; k < n_; ++k) {
      uint32_t v = at(i, k);
      if (!v) continue;
      for (unsigned j = 0; j < n_; ++j) {
        if (!o.at(k, j)) continue;
        r.at(i, j) = k_->add(r.at(i, j), k_->mul(v, o.at(k, j)));
      }
    }
  return r;
}

std::vector<uint32_t> MatF::apply_row(const std::vector<uint32_t>& v) const {
  std::vector<uint32_t> out(n_, 0);
  for (unsigned i = 0; i < n_; ++i) {
    if (!v[i]) continue;
    for (unsigned j = 0; j < n_; ++j)
      if (at(i, j)) out[j] = k_->add(out[j], k_->mul(v[i], at(i, j)));
  }
  return out;
}

MatF MatF::transpose() const {
  MatF r(*k_, n_);
  for (unsigned i = 0; i < n_; ++i)
    for (unsigned j = 0; j < n_; ++j) r.at(j, i) = at(i, j);
  return r;
}

MatF MatF::frobenius_entrywise(unsigned times) const {
  MatF r(*k_, n_);
  for (unsigned i = 0; i < n_; ++i)
    for (unsigned j = 0; j < n_; ++j) r.at(i, j) = k_->frobenius(at(i, j), times);
  return r;
}

MatF MatF::inverse() const {
  MatF a = *this, r = identity(*k_, n_);
  for (unsigned c = 0; c < n_; ++c) {
    unsigned piv = c;
    while (piv < n_ && a.at(piv, c) == 0) ++piv;
    if (piv == n_) throw std::domain_error("singular matrix");
    if (piv != c)
      for (unsigned j = 0; j < n_; ++j) {
        std::swap(a.at(piv, j), a.at(c, j));
        std::swap(r.at(piv, j), r.at(c, j));
      }
    uint32_t s = k_->inv(a.at(c, c));
    for (unsigned j = 0; j < n_; ++j) {
      a.at(c, j) = k_->mul(a.at(c, j), s);
      r.at(c, j) = k_->mul(r.at(c, j), s);
    }
    for (unsigned i = 0; i < n_; ++i) {
      if (i == c || a.at(i, c) == 0) continue;
      uint32_t f = a.at(i, c);
      for (unsigned j = 0; j < n_; ++j) {
        a.at(i, j) = k_->sub(a.at(i, j), k_->mul(f, a.at(c, j)));
        r.at(i, j) = k_->sub(r.at(i, j), k_->mul(f, r.at(c, j)));
      }
    }
  }
  return r;
}

uint32_t MatF::det() const {
  MatF a = *this;
  uint32_t d = 1;
  for (unsigned c = 0; c < n_; ++c) {
    unsigned piv = c;
    while (piv < n_ && a.at(piv, c) == 0) ++piv;
    if (piv == n_) return 0;
    if (piv != c) {
      for (unsigned j = 0; j < n_; ++j) std::swap(a.at(piv, j), a.at(c, j));
      d = k_->mul(d, k_->neg(1));
    }
    d = k_->mul(d, a.at(c, c));
    uint32_t s = k_->inv(a.at(c, c));
    for (unsigned i = c + 1; i < n_; ++i) {
      if (a.at(i, c) == 0) continue;
      uint32_t f = k_->mul(a.at(i, c), s);
      for (unsigned j = c; j < n_; ++j) a.at(i, j) = k_->sub(a.at(i, j), k_->mul(f, a.at(c, j)));
    }
  }
  return d;
}

unsigned MatF::rank_of_sum_with_identity() const {
  MatF a = *this;
  for (unsigned i = 0; i < n_; ++i) a.at(i, i) = k_->add(a.at(i, i), 1);
  unsigned rank = 0;
  unsigned row = 0;
  for (unsigned c = 0; c < n_ && row < n_; ++c) {
    unsigned piv = row;
    while (piv < n_ && a.at(piv, c) == 0) ++piv;
    if (piv == n_) continue;
    if (piv != row)
      for (unsigned j = 0; j < n_; ++j) std::swap(a.at(piv, j), a.at(row, j));
    uint32_t s = k_->inv(a.at(row, c));
    for (unsigned i = row + 1; i < n_; ++i) {
      if (a.at(i, c) == 0) continue;
      uint32_t f = k_->mul(a.at(i, c), s);
      for (unsigned j = c; j < n_; ++j) a.at(i, j) = k_->sub(a.at(i, j), k_->mul(f, a.at(row, j)));
    }
    ++rank;
    ++row;
  }
  return rank;
}

bool MatF::is_identity() const {
  for (unsigned i = 0; i < n_; ++i)
    for (unsigned j = 0; j < n_; ++j)
      if (at(i, j) != (i == j ? 1u : 0u)) return false;
  return true;
}

void MatF::insert_block(const MatF& block, unsigned r0, unsigned c0) {
  for (unsigned i = 0; i < block.dim(); ++i)
    for (unsigned j = 0; j < block.dim(); ++j) at(r0 + i, c0 + j) = block.at(i, j);
}

}  // namespace torbase
