#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/multiprecision/miller_rabin.hpp>

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace torbase {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Int pow_int(const Int& base, unsigned long e) {
  Int r = 1, b = base;
  while (e) {
    if (e & 1) r *= b;
    b *= b;
    e >>= 1;
  }
  return r;
}

inline Int factorial(unsigned n) {
  Int r = 1;
  for (unsigned i = 2; i <= n; ++i) r *= i;
  return r;
}

inline Int binomial(unsigned n, unsigned k) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  Int r = 1;
  for (unsigned i = 0; i < k; ++i) {
    r *= (n - i);
    r /= (i + 1);
  }
  return r;
}

inline Int gcd_int(Int a, Int b) { return boost::multiprecision::gcd(a, b); }

inline bool is_prime(const Int& n) {
  if (n < 2) return false;
  for (int p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31}) {
    if (n == p) return true;
    if (n % p == 0) return false;
  }
  return boost::multiprecision::miller_rabin_test(n, 32);
}

// Factorization by trial division plus Miller-Rabin for the cofactor.
// Sizes here stay modest (orders of tori, q^d +- 1 for desk-scale q),
// so a deterministic split is enough; throws if a composite cofactor
// survives the trial bound.
inline std::map<Int, unsigned> factorize(Int n) {
  if (n <= 0) throw std::invalid_argument("factorize: n must be positive");
  std::map<Int, unsigned> fac;
  for (Int p = 2; p * p <= n && p < 2000000; p == 2 ? p = 3 : p += 2) {
    while (n % p == 0) {
      ++fac[p];
      n /= p;
    }
  }
  if (n > 1) {
    if (!is_prime(n)) throw std::runtime_error("factorize: composite cofactor too large");
    ++fac[n];
  }
  return fac;
}

inline std::vector<Int> prime_divisors(const Int& n) {
  std::vector<Int> ps;
  for (auto& [p, e] : factorize(n)) ps.push_back(p);
  return ps;
}

inline bool is_power_of(const Int& n, const Int& p) {
  if (n < 1) return false;
  Int m = n;
  while (m % p == 0) m /= p;
  return m == 1;
}

inline std::string to_string(const Int& n) { return n.str(); }

}  // namespace torbase
