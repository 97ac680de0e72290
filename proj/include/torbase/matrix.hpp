#pragma once

#include <vector>

#include "torbase/gf.hpp"

namespace torbase {

// Square matrix over a finite field.
class MatF {
 public:
  MatF() = default;
  MatF(const Fq& k, unsigned n) : k_(&k), n_(n), a_(static_cast<size_t>(n) * n, 0) {}
  static MatF identity(const Fq& k, unsigned n) {
    MatF m(k, n);
    for (unsigned i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
  }

  const Fq& field() const { return *k_; }
  unsigned dim() const { return n_; }
  uint32_t& at(unsigned i, unsigned j) { return a_[static_cast<size_t>(i) * n_ + j]; }
  uint32_t at(unsigned i, unsigned j) const { return a_[static_cast<size_t>(i) * n_ + j]; }

  MatF operator*(const MatF& o) const;
  std::vector<uint32_t> apply_row(const std::vector<uint32_t>& v) const;  // v * M
  MatF transpose() const;
  MatF frobenius_entrywise(unsigned times) const;  // entrywise p^times power
  MatF inverse() const;
  uint32_t det() const;
  unsigned rank_of_sum_with_identity() const;  // rank(M + I), for the Dickson invariant
  bool operator==(const MatF& o) const { return n_ == o.n_ && a_ == o.a_; }
  bool is_identity() const;

  // block embedding: copy `block` into this at offset (r0, c0)
  void insert_block(const MatF& block, unsigned r0, unsigned c0);

 private:
  const Fq* k_ = nullptr;
  unsigned n_ = 0;
  std::vector<uint32_t> a_;
};

}  // namespace torbase
