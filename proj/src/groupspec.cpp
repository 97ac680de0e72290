#include "torbase/groupspec.hpp"

#include <stdexcept>

namespace torbase {

bool family_is_classical(Family f) {
  switch (f) {
    case Family::LinearA:
    case Family::UnitaryA2:
    case Family::SymplecticC:
    case Family::OrthogonalOddB:
    case Family::OrthogonalPlusD:
    case Family::OrthogonalMinus2D:
      return true;
    default:
      return false;
  }
}

std::string family_name(Family f) {
  switch (f) {
    case Family::LinearA: return "L";
    case Family::UnitaryA2: return "U";
    case Family::SymplecticC: return "Sp";
    case Family::OrthogonalOddB: return "Omega";
    case Family::OrthogonalPlusD: return "O+";
    case Family::OrthogonalMinus2D: return "O-";
    case Family::G2: return "G2";
    case Family::F4: return "F4";
    case Family::E6: return "E6";
    case Family::E6tw: return "2E6";
    case Family::E7: return "E7";
    case Family::E8: return "E8";
    case Family::D4tri: return "3D4";
    case Family::F4tw: return "2F4";
    case Family::G2tw: return "2G2";
    case Family::B2tw: return "2B2";
  }
  return "?";
}

Family parse_family(const std::string& s) {
  if (s == "L" || s == "PSL") return Family::LinearA;
  if (s == "U" || s == "PSU") return Family::UnitaryA2;
  if (s == "Sp" || s == "PSp") return Family::SymplecticC;
  if (s == "Omega" || s == "O") return Family::OrthogonalOddB;
  if (s == "O+") return Family::OrthogonalPlusD;
  if (s == "O-") return Family::OrthogonalMinus2D;
  if (s == "G2") return Family::G2;
  if (s == "F4") return Family::F4;
  if (s == "E6") return Family::E6;
  if (s == "2E6") return Family::E6tw;
  if (s == "E7") return Family::E7;
  if (s == "E8") return Family::E8;
  if (s == "3D4") return Family::D4tri;
  if (s == "2F4") return Family::F4tw;
  if (s == "2G2") return Family::G2tw;
  if (s == "2B2") return Family::B2tw;
  throw std::invalid_argument("unknown family: " + s);
}

namespace {

void validate(const GroupSpec& s) {
  if (!is_prime(s.p)) throw std::invalid_argument("q must be a prime power");
  if (s.f < 1) throw std::invalid_argument("field exponent must be >= 1");
  switch (s.family) {
    case Family::LinearA:
    case Family::UnitaryA2:
      if (s.n < 2) throw std::invalid_argument("type A needs n >= 2");
      break;
    case Family::SymplecticC:
      if (s.n < 4 || s.n % 2) throw std::invalid_argument("Sp needs even n >= 4");
      break;
    case Family::OrthogonalOddB:
      if (s.n < 7 || s.n % 2 == 0) throw std::invalid_argument("odd orthogonal needs odd n >= 7");
      if (s.p == 2) throw std::invalid_argument("odd orthogonal needs q odd");
      break;
    case Family::OrthogonalPlusD:
    case Family::OrthogonalMinus2D:
      if (s.n < 8 || s.n % 2) throw std::invalid_argument("even orthogonal needs even n >= 8");
      break;
    case Family::G2tw:
      if (s.p != 3 || s.f % 2 == 0) throw std::invalid_argument("2G2 needs q an odd power of 3");
      break;
    case Family::B2tw:
    case Family::F4tw:
      if (s.p != 2 || s.f % 2 == 0)
        throw std::invalid_argument("2B2/2F4 need q an odd power of 2");
      break;
    default:
      break;
  }
}

}  // namespace

GroupSpec::GroupSpec(Family fam, unsigned dim, const Int& prime, unsigned exp)
    : family(fam), n(dim), p(prime), f(exp) {
  validate(*this);
}

GroupSpec GroupSpec::classical(Family fam, unsigned dim, const Int& q) {
  auto fac = factorize(q);
  if (fac.size() != 1) throw std::invalid_argument("q must be a prime power");
  return GroupSpec(fam, dim, fac.begin()->first, fac.begin()->second);
}

GroupSpec GroupSpec::exceptional(Family fam, const Int& q) {
  auto fac = factorize(q);
  if (fac.size() != 1) throw std::invalid_argument("q must be a prime power");
  return GroupSpec(fam, 0, fac.begin()->first, fac.begin()->second);
}

int GroupSpec::eps() const {
  switch (family) {
    case Family::LinearA:
    case Family::OrthogonalPlusD:
      return +1;
    case Family::UnitaryA2:
    case Family::OrthogonalMinus2D:
      return -1;
    default:
      return 0;
  }
}

unsigned GroupSpec::m() const {
  switch (family) {
    case Family::SymplecticC:
    case Family::OrthogonalPlusD:
    case Family::OrthogonalMinus2D:
      return n / 2;
    case Family::OrthogonalOddB:
      return (n - 1) / 2;
    default:
      throw std::logic_error("m() only defined for B/C/D families");
  }
}

Int GroupSpec::adjoint_index() const {
  const Int qq = q();
  switch (family) {
    case Family::LinearA: return gcd_int(Int(n), qq - 1);
    case Family::UnitaryA2: return gcd_int(Int(n), qq + 1);
    case Family::SymplecticC: return gcd_int(Int(2), qq - 1);
    case Family::OrthogonalOddB: return gcd_int(Int(2), qq - 1);
    case Family::OrthogonalPlusD:
      return gcd_int(Int(4), pow_int(qq, m()) - 1);
    case Family::OrthogonalMinus2D:
      return gcd_int(Int(4), pow_int(qq, m()) + 1);
    case Family::E6: return gcd_int(Int(3), qq - 1);
    case Family::E6tw: return gcd_int(Int(3), qq + 1);
    case Family::E7: return gcd_int(Int(2), qq - 1);
    default: return 1;
  }
}

std::string GroupSpec::name() const {
  std::string s = family_name(family);
  if (family_is_classical(family)) s += std::to_string(n);
  return s + "(" + q().str() + ")";
}

bool GroupSpec::operator<(const GroupSpec& o) const {
  if (family != o.family) return family < o.family;
  if (n != o.n) return n < o.n;
  if (p != o.p) return p < o.p;
  return f < o.f;
}

Int gl_order(unsigned n, const Int& q, int eps) {
  // |GL_n(q)| = q^{n(n-1)/2} prod (q^i - 1); GU via q -> -q, fixing sign
  Int r = pow_int(q, static_cast<unsigned long>(n) * (n - 1) / 2);
  for (unsigned i = 1; i <= n; ++i) {
    Int t = pow_int(q, i);
    if (eps == +1)
      r *= t - 1;
    else
      r *= (i % 2 == 0) ? Int(t - 1) : Int(t + 1);
  }
  return r;
}

Int sp_order(unsigned n, const Int& q) {
  unsigned m = n / 2;
  Int r = pow_int(q, static_cast<unsigned long>(m) * m);
  for (unsigned i = 1; i <= m; ++i) r *= pow_int(q, 2 * i) - 1;
  return r;
}

namespace {

Int so_order(unsigned n, const Int& q, int eps) {
  // |SO^eps-level Omega counting base|: q^{m(m-1)}(q^m - eps) prod_{i<m}(q^{2i}-1)
  unsigned m = n / 2;
  Int r = pow_int(q, static_cast<unsigned long>(m) * (m - 1));
  r *= pow_int(q, m) - eps;
  for (unsigned i = 1; i < m; ++i) r *= pow_int(q, 2 * i) - 1;
  return r;
}

Int product_over_degrees(const Int& q, std::initializer_list<unsigned> degrees,
                         unsigned n_pos_roots) {
  Int r = pow_int(q, n_pos_roots);
  for (unsigned d : degrees) r *= pow_int(q, d) - 1;
  return r;
}

}  // namespace

Int group_order(const GroupSpec& spec) {
  const Int q = spec.q();
  switch (spec.family) {
    case Family::LinearA:
    case Family::UnitaryA2:
      return gl_order(spec.n, q, spec.eps()) / (q - spec.eps()) / spec.adjoint_index();
    case Family::SymplecticC:
      return sp_order(spec.n, q) / spec.adjoint_index();
    case Family::OrthogonalOddB:
      return sp_order(spec.n - 1, q) / 2;  // q odd here
    case Family::OrthogonalPlusD:
    case Family::OrthogonalMinus2D:
      return so_order(spec.n, q, spec.eps()) / spec.adjoint_index();
    case Family::G2:
      return product_over_degrees(q, {6, 2}, 6);
    case Family::F4:
      return product_over_degrees(q, {12, 8, 6, 2}, 24);
    case Family::E6: {
      Int r = pow_int(q, 36);
      for (unsigned d : {2u, 5u, 6u, 8u, 9u, 12u}) r *= pow_int(q, d) - 1;
      return r / spec.adjoint_index();
    }
    case Family::E6tw: {
      Int r = pow_int(q, 36);
      r *= (pow_int(q, 2) - 1) * (pow_int(q, 5) + 1) * (pow_int(q, 6) - 1) *
           (pow_int(q, 8) - 1) * (pow_int(q, 9) + 1) * (pow_int(q, 12) - 1);
      return r / spec.adjoint_index();
    }
    case Family::E7:
      return product_over_degrees(q, {18, 14, 12, 10, 8, 6, 2}, 63) / spec.adjoint_index();
    case Family::E8:
      return product_over_degrees(q, {30, 24, 20, 18, 14, 12, 8, 2}, 120);
    case Family::D4tri: {
      Int r = pow_int(q, 12);
      r *= pow_int(q, 8) + pow_int(q, 4) + 1;
      r *= (pow_int(q, 6) - 1) * (pow_int(q, 2) - 1);
      return r;
    }
    case Family::F4tw: {
      Int r = pow_int(q, 12);
      r *= (pow_int(q, 6) + 1) * (pow_int(q, 4) - 1) * (pow_int(q, 3) + 1) * (q - 1);
      return r;
    }
    case Family::G2tw: {
      Int r = pow_int(q, 3);
      r *= (pow_int(q, 3) + 1) * (q - 1);
      return r;
    }
    case Family::B2tw: {
      Int r = pow_int(q, 2);
      r *= (pow_int(q, 2) + 1) * (q - 1);
      return r;
    }
  }
  throw std::logic_error("group_order: unhandled family");
}

Int weyl_order(const GroupSpec& spec) {
  switch (spec.family) {
    case Family::LinearA:
    case Family::UnitaryA2:
      return factorial(spec.n);
    case Family::SymplecticC:
    case Family::OrthogonalOddB:
      return pow_int(2, spec.m()) * factorial(spec.m());
    case Family::OrthogonalPlusD:
    case Family::OrthogonalMinus2D:
      return pow_int(2, spec.m() - 1) * factorial(spec.m());
    case Family::G2:
    case Family::G2tw:
      return 12;
    case Family::F4:
    case Family::F4tw:
      return 1152;
    case Family::E6:
    case Family::E6tw:
      return 51840;
    case Family::E7:
      return 2903040;
    case Family::E8:
      return 696729600;
    case Family::D4tri:
      return 192;
    case Family::B2tw:
      return 8;
  }
  throw std::logic_error("weyl_order: unhandled family");
}

unsigned positive_root_count(const GroupSpec& spec) {
  switch (spec.family) {
    case Family::LinearA:
    case Family::UnitaryA2:
      return spec.n * (spec.n - 1) / 2;
    case Family::SymplecticC:
    case Family::OrthogonalOddB:
      return spec.m() * spec.m();
    case Family::OrthogonalPlusD:
    case Family::OrthogonalMinus2D:
    case Family::D4tri:
      return spec.family == Family::D4tri ? 12 : spec.m() * (spec.m() - 1);
    case Family::G2:
    case Family::G2tw:
      return 6;
    case Family::F4:
    case Family::F4tw:
      return 24;
    case Family::E6:
    case Family::E6tw:
      return 36;
    case Family::E7:
      return 63;
    case Family::E8:
      return 120;
    case Family::B2tw:
      return 4;
  }
  throw std::logic_error("positive_root_count: unhandled family");
}

unsigned reflection_count(const GroupSpec& spec) { return positive_root_count(spec); }

}  // namespace torbase
