#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "torbase/bigint.hpp"

namespace torbase {

// Finite field F_{p^f}, elements encoded as integers in [0, p^f): the value
// sum c_i p^i encodes the polynomial sum c_i x^i modulo the field polynomial.
// The modulus is the lexicographically least primitive polynomial, so every
// construction is reproducible. Log/antilog tables drive multiplication.
class Fq {
 public:
  static const Fq& get(long p, unsigned f);

  long p() const { return p_; }
  unsigned f() const { return f_; }
  uint32_t q() const { return q_; }
  const std::vector<uint32_t>& modulus() const { return mod_; }  // coeffs, degree f monic

  uint32_t add(uint32_t a, uint32_t b) const;
  uint32_t sub(uint32_t a, uint32_t b) const;
  uint32_t neg(uint32_t a) const;
  uint32_t mul(uint32_t a, uint32_t b) const {
    if (a == 0 || b == 0) return 0;
    return exp_[(log_[a] + log_[b]) % (q_ - 1)];
  }
  uint32_t inv(uint32_t a) const;
  uint32_t div(uint32_t a, uint32_t b) const { return mul(a, inv(b)); }
  uint32_t pow(uint32_t a, Int e) const;
  uint32_t generator() const { return exp_[1]; }
  // discrete log base the fixed generator; a != 0
  uint32_t dlog(uint32_t a) const;
  uint32_t frobenius(uint32_t a, unsigned times = 1) const;  // a^(p^times)

  // embedding of this field into a larger one (f | big.f): image of the
  // canonical generator, as an element of `big`
  uint32_t embed_generator(const Fq& big) const;

 private:
  Fq(long p, unsigned f);
  uint32_t poly_mul_mod(uint32_t a, uint32_t b) const;

  long p_;
  unsigned f_;
  uint32_t q_;
  std::vector<uint32_t> mod_;
  std::vector<uint32_t> exp_, log_;
};

// F_p-linear embedding of a subfield into an extension field; maps the
// subfield generator to a root of its minimal polynomial.
class FieldEmbedding {
 public:
  FieldEmbedding(const Fq& small, const Fq& big);
  const Fq& small() const { return *small_; }
  const Fq& big() const { return *big_; }
  uint32_t operator()(uint32_t a) const;

 private:
  const Fq* small_;
  const Fq* big_;
  uint32_t gen_image_;
  std::vector<uint32_t> powers_;  // images of generator powers (memoised)
};

// Coordinates of elements of a big field with respect to the basis
// {1, g, g^2, ...} over an embedded subfield, where g is the big field's
// generator. Used to write multiplication and Frobenius maps as matrices.
class SubfieldBasis {
 public:
  SubfieldBasis(const Fq& small, const Fq& big);
  unsigned dim() const { return dim_; }
  const FieldEmbedding& embedding() const { return emb_; }
  // expresses z = sum coords[i] * g^i with coords in the small field
  std::vector<uint32_t> coords(uint32_t z) const;

 private:
  FieldEmbedding emb_;
  unsigned dim_;
  // F_p-matrix inverse data: columns are the F_p-coordinates of
  // embed(theta^j) * g^i
  std::vector<std::vector<uint32_t>> solve_;  // precomputed inverse over F_p
  unsigned pf_small_, pf_big_;
  long p_;
};

}  // namespace torbase
