#pragma once

#include <stdexcept>
#include <string>

#include "torbase/bigint.hpp"

namespace torbase {

// Exact arithmetic in Q(sqrt(D)) for square-free D, used for the Suzuki-Ree
// families where q is an odd power of 2 or 3 and bounds involve sqrt(q).
// Comparisons are decided by squaring, never by floating point.
struct Quad {
  Rat a;  // rational part
  Rat b;  // coefficient of sqrt(D)
  long d = 2;

  Quad() = default;
  Quad(Rat ra, Rat rb, long dd) : a(std::move(ra)), b(std::move(rb)), d(dd) {}
  static Quad integer(const Int& v, long dd) { return Quad(Rat(v), Rat(0), dd); }
  // sqrt(q) for q = d^(2k+1): equals d^k * sqrt(d).
  static Quad sqrt_q(const Int& q, long dd) {
    Int m = q;
    unsigned e = 0;
    while (m % dd == 0) {
      m /= dd;
      ++e;
    }
    if (m != 1 || e % 2 == 0) throw std::invalid_argument("sqrt_q: q is not an odd power of d");
    return Quad(Rat(0), Rat(pow_int(Int(dd), (e - 1) / 2)), dd);
  }

  Quad operator+(const Quad& o) const { return {a + o.a, b + o.b, d}; }
  Quad operator-(const Quad& o) const { return {a - o.a, b - o.b, d}; }
  Quad operator*(const Quad& o) const { return {a * o.a + Rat(d) * b * o.b, a * o.b + b * o.a, d}; }
  Quad operator/(const Quad& o) const {
    // multiply by conjugate; norm = a^2 - d b^2
    Rat norm = o.a * o.a - Rat(d) * o.b * o.b;
    if (norm == 0) throw std::domain_error("Quad: division by zero");
    Quad num = *this * Quad{o.a, -o.b, d};
    return {num.a / norm, num.b / norm, d};
  }

  Quad pow(unsigned e) const {
    Quad r = integer(1, d), base = *this;
    while (e) {
      if (e & 1) r = r * base;
      base = base * base;
      e >>= 1;
    }
    return r;
  }

  // sign of a + b sqrt(d), exactly
  int sign() const {
    int sa = a == 0 ? 0 : (a > 0 ? 1 : -1);
    int sb = b == 0 ? 0 : (b > 0 ? 1 : -1);
    if (sb == 0) return sa;
    if (sa == 0) return sb;
    if (sa == sb) return sa;
    // opposite signs: compare a^2 with d b^2
    Rat a2 = a * a, db2 = Rat(d) * b * b;
    if (a2 == db2) return 0;
    return (a2 > db2) ? sa : sb;
  }

  bool operator<(const Quad& o) const { return (*this - o).sign() < 0; }
  bool operator<(const Rat& r) const { return (*this - Quad(r, Rat(0), d)).sign() < 0; }

  // smallest integer >= value (for feeding A-side integer caps)
  Int ceil() const {
    // binary search on integers; values here are tiny (torus bounds)
    Int lo = 0, hi = 1;
    while (Quad(Rat(hi), Rat(0), d) < *this) hi *= 2;
    while (lo < hi) {
      Int mid = (lo + hi) / 2;
      if (Quad(Rat(mid), Rat(0), d) < *this)
        lo = mid + 1;
      else
        hi = mid;
    }
    return lo;
  }

  std::string str() const {
    if (b == 0) return a.str();
    return a.str() + " + " + b.str() + "*sqrt(" + std::to_string(d) + ")";
  }
};

}  // namespace torbase
