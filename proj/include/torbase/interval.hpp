#pragma once

#include <mpfr.h>

#include <string>
#include <utility>

#include "torbase/bigint.hpp"

namespace torbase {

// Closed interval [lo, hi] in 128-bit binary floating point with directed
// rounding: every operation rounds lo down and hi up, so the exact value of
// any expression built from exact inputs is always contained in the result.
// Verdicts that feed certificates must use strict comparison against the
// appropriate endpoint.
class Interval {
 public:
  static constexpr mpfr_prec_t kPrec = 128;

  Interval() {
    init();
    mpfr_set_zero(lo_, 1);
    mpfr_set_zero(hi_, 1);
  }
  explicit Interval(long v) {
    init();
    mpfr_set_si(lo_, v, MPFR_RNDD);
    mpfr_set_si(hi_, v, MPFR_RNDU);
  }
  explicit Interval(const Int& v) {
    init();
    const std::string s = v.str();
    mpfr_set_str(lo_, s.c_str(), 10, MPFR_RNDD);
    mpfr_set_str(hi_, s.c_str(), 10, MPFR_RNDU);
  }
  explicit Interval(const Rat& v) {
    init();
    set_rational(v);
  }
  Interval(const Interval& o) {
    init();
    mpfr_set(lo_, o.lo_, MPFR_RNDD);
    mpfr_set(hi_, o.hi_, MPFR_RNDU);
  }
  Interval(Interval&& o) noexcept {
    init();
    mpfr_swap(lo_, o.lo_);
    mpfr_swap(hi_, o.hi_);
  }
  Interval& operator=(Interval o) {
    mpfr_swap(lo_, o.lo_);
    mpfr_swap(hi_, o.hi_);
    return *this;
  }
  ~Interval() {
    mpfr_clear(lo_);
    mpfr_clear(hi_);
  }

  static Interval zero() { return Interval(); }
  static Interval one() { return Interval(1); }

  Interval& operator+=(const Interval& o) {
    mpfr_add(lo_, lo_, o.lo_, MPFR_RNDD);
    mpfr_add(hi_, hi_, o.hi_, MPFR_RNDU);
    return *this;
  }
  friend Interval operator+(Interval a, const Interval& b) { return a += b; }

  friend Interval operator-(const Interval& a, const Interval& b) {
    Interval r;
    mpfr_sub(r.lo_, a.lo_, b.hi_, MPFR_RNDD);
    mpfr_sub(r.hi_, a.hi_, b.lo_, MPFR_RNDU);
    return r;
  }

  // Multiplication restricted to nonnegative intervals, which is all the
  // bound machinery needs (sums of A^2/B terms).
  friend Interval operator*(const Interval& a, const Interval& b) {
    Interval r;
    mpfr_mul(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
    mpfr_mul(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
    return r;
  }

  // Division by a positive interval.
  friend Interval operator/(const Interval& a, const Interval& b) {
    Interval r;
    mpfr_div(r.lo_, a.lo_, b.hi_, MPFR_RNDD);
    mpfr_div(r.hi_, a.hi_, b.lo_, MPFR_RNDU);
    return r;
  }

  // Natural log of a positive interval.
  Interval log() const {
    Interval r;
    mpfr_log(r.lo_, lo_, MPFR_RNDD);
    mpfr_log(r.hi_, hi_, MPFR_RNDU);
    return r;
  }

  // Base-2 log of a positive interval.
  Interval log2() const {
    Interval r;
    mpfr_log2(r.lo_, lo_, MPFR_RNDD);
    mpfr_log2(r.hi_, hi_, MPFR_RNDU);
    return r;
  }

  Interval exp() const {
    Interval r;
    mpfr_exp(r.lo_, lo_, MPFR_RNDD);
    mpfr_exp(r.hi_, hi_, MPFR_RNDU);
    return r;
  }

  // v^{-t} for v >= 1 and rational t >= 0, via exp(-t log v).
  static Interval pow_neg(const Int& v, const Rat& t) {
    Interval lv{v};
    Interval lt{t};
    Interval e = lv.log() * lt;
    Interval r;
    mpfr_neg(r.hi_, e.lo_, MPFR_RNDU);
    mpfr_neg(r.lo_, e.hi_, MPFR_RNDD);
    return r.exp();
  }

  bool upper_lt(long v) const { return mpfr_cmp_si(hi_, v) < 0; }
  bool lower_gt(long v) const { return mpfr_cmp_si(lo_, v) > 0; }
  bool upper_lt(const Interval& o) const { return mpfr_less_p(hi_, o.lo_); }

  double lo_d() const { return mpfr_get_d(lo_, MPFR_RNDD); }
  double hi_d() const { return mpfr_get_d(hi_, MPFR_RNDU); }

  // Relative width (hi-lo)/max(|lo|,1); used to assert the 1e-12
  // certification tolerance.
  double rel_width() const {
    mpfr_t w, s;
    mpfr_init2(w, kPrec);
    mpfr_init2(s, kPrec);
    mpfr_sub(w, hi_, lo_, MPFR_RNDU);
    mpfr_abs(s, lo_, MPFR_RNDD);
    if (mpfr_cmp_ui(s, 1) < 0) mpfr_set_ui(s, 1, MPFR_RNDN);
    mpfr_div(w, w, s, MPFR_RNDU);
    double r = mpfr_get_d(w, MPFR_RNDU);
    mpfr_clear(w);
    mpfr_clear(s);
    return r;
  }

  std::string str(int digits = 20) const {
    return "[" + fmt(lo_, digits, MPFR_RNDD) + ", " + fmt(hi_, digits, MPFR_RNDU) + "]";
  }

 private:
  void init() {
    mpfr_init2(lo_, kPrec);
    mpfr_init2(hi_, kPrec);
  }
  void set_rational(const Rat& v) {
    const std::string ns = boost::multiprecision::numerator(v).str();
    const std::string ds = boost::multiprecision::denominator(v).str();
    mpfr_t n, d;
    mpfr_init2(n, kPrec);
    mpfr_init2(d, kPrec);
    mpfr_set_str(n, ns.c_str(), 10, MPFR_RNDD);
    mpfr_set_str(d, ds.c_str(), 10, MPFR_RNDU);
    mpfr_div(lo_, n, d, MPFR_RNDD);
    mpfr_set_str(n, ns.c_str(), 10, MPFR_RNDU);
    mpfr_set_str(d, ds.c_str(), 10, MPFR_RNDD);
    mpfr_div(hi_, n, d, MPFR_RNDU);
    mpfr_clear(n);
    mpfr_clear(d);
  }
  static std::string fmt(mpfr_srcptr x, int digits, mpfr_rnd_t rnd) {
    char buf[64];
    mpfr_snprintf(buf, sizeof(buf), "%.*R*g", digits, rnd, x);
    return buf;
  }

  mpfr_t lo_, hi_;
};

}  // namespace torbase
