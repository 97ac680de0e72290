#include "torbase/taxonomy.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <set>
#include <stdexcept>

namespace torbase {

bool TorusClass::operator<(const TorusClass& o) const {
  if (!(lambda == o.lambda)) return lambda < o.lambda;
  if (!(mu == o.mu)) return mu < o.mu;
  return split_tag < o.split_tag;
}

TorusClass TorusClass::parse(const std::string& s) {
  TorusClass c;
  std::string body = s;
  if (!body.empty() && (body.back() == '+' || body.back() == '-')) {
    c.split_tag = body.back() == '+' ? SplitTag::plus : SplitTag::minus;
    body.pop_back();
    if (!body.empty() && body.back() == ';') body.pop_back();
  }
  size_t semi = body.find(';');
  if (semi == std::string::npos) {
    c.lambda = Partition::parse(body);
  } else {
    c.lambda = Partition::parse(body.substr(0, semi));
    c.mu = Partition::parse(body.substr(semi + 1));
  }
  return c;
}

std::string TorusClass::str() const {
  std::string s = lambda.str() + ";" + mu.str();
  if (split_tag == SplitTag::plus) s += "+";
  if (split_tag == SplitTag::minus) s += "-";
  return s;
}

namespace {

// ---------------------------------------------------------------------------
// Small integer-matrix Weyl machinery for G2 and 3D4. Matrices are stored
// with entries doubled so that the half-integer entries of Aut(D4) stay
// integral; group closure and conjugacy are computed by brute force.
// ---------------------------------------------------------------------------

struct WMat {
  unsigned dim;
  std::array<long, 16> e{};  // doubled entries, row-major

  bool operator==(const WMat& o) const { return dim == o.dim && e == o.e; }
  bool operator<(const WMat& o) const { return e < o.e; }
};

WMat wmat_mul(const WMat& a, const WMat& b) {
  WMat c;
  c.dim = a.dim;
  for (unsigned i = 0; i < a.dim; ++i)
    for (unsigned j = 0; j < a.dim; ++j) {
      long s = 0;
      for (unsigned k = 0; k < a.dim; ++k) s += a.e[i * a.dim + k] * b.e[k * a.dim + j];
      if (s % 2 != 0) throw std::logic_error("Weyl matrix product left the half-integer lattice");
      c.e[i * a.dim + j] = s / 2;
    }
  return c;
}

WMat wmat_identity(unsigned dim) {
  WMat m;
  m.dim = dim;
  for (unsigned i = 0; i < dim; ++i) m.e[i * dim + i] = 2;
  return m;
}

std::set<WMat> closure(unsigned dim, const std::vector<WMat>& gens) {
  std::set<WMat> seen;
  std::vector<WMat> frontier{wmat_identity(dim)};
  seen.insert(frontier[0]);
  while (!frontier.empty()) {
    std::vector<WMat> next;
    for (const auto& m : frontier)
      for (const auto& g : gens) {
        WMat p = wmat_mul(m, g);
        if (seen.insert(p).second) next.push_back(p);
      }
    frontier = std::move(next);
  }
  return seen;
}

// |det(q*I - M)| with M the (unscaled) matrix; exact rational elimination.
Int torus_order_at(const WMat& m, const Int& q) {
  unsigned n = m.dim;
  std::array<Rat, 16> a;
  for (unsigned i = 0; i < n; ++i)
    for (unsigned j = 0; j < n; ++j) {
      a[i * n + j] = Rat(-m.e[i * n + j], 2);
      if (i == j) a[i * n + j] += Rat(q);
    }
  Rat det = 1;
  for (unsigned c = 0; c < n; ++c) {
    unsigned piv = c;
    while (piv < n && a[piv * n + c] == 0) ++piv;
    if (piv == n) return 0;
    if (piv != c) {
      for (unsigned j = 0; j < n; ++j) std::swap(a[piv * n + j], a[c * n + j]);
      det = -det;
    }
    det *= a[c * n + c];
    for (unsigned r = c + 1; r < n; ++r) {
      Rat factor = a[r * n + c] / a[c * n + c];
      for (unsigned j = c; j < n; ++j) a[r * n + j] -= factor * a[c * n + j];
    }
  }
  Int num = boost::multiprecision::numerator(det);
  if (boost::multiprecision::denominator(det) != 1)
    throw std::logic_error("torus order should be an integer");
  return num < 0 ? Int(-num) : num;
}

// Characteristic polynomial coefficients (monic, low degree first), via
// interpolation of det(k*I - M) at k = 0..dim.
std::vector<Int> char_poly(const WMat& m) {
  unsigned n = m.dim;
  std::vector<Rat> xs, ys;
  for (unsigned k = 0; k <= n; ++k) {
    xs.emplace_back(k);
    // reuse torus_order_at but with sign: det(kI - M)
    std::array<Rat, 16> a;
    for (unsigned i = 0; i < n; ++i)
      for (unsigned j = 0; j < n; ++j) {
        a[i * n + j] = Rat(-m.e[i * n + j], 2);
        if (i == j) a[i * n + j] += Rat(static_cast<long>(k));
      }
    Rat det = 1;
    bool zero = false;
    for (unsigned c = 0; c < n && !zero; ++c) {
      unsigned piv = c;
      while (piv < n && a[piv * n + c] == 0) ++piv;
      if (piv == n) {
        zero = true;
        break;
      }
      if (piv != c) {
        for (unsigned j = 0; j < n; ++j) std::swap(a[piv * n + j], a[c * n + j]);
        det = -det;
      }
      det *= a[c * n + c];
      for (unsigned r = c + 1; r < n; ++r) {
        Rat factor = a[r * n + c] / a[c * n + c];
        for (unsigned j = c; j < n; ++j) a[r * n + j] -= factor * a[c * n + j];
      }
    }
    ys.push_back(zero ? Rat(0) : det);
  }
  // Lagrange interpolation, degree n
  std::vector<Rat> coeff(n + 1, Rat(0));
  for (unsigned i = 0; i <= n; ++i) {
    std::vector<Rat> basis{Rat(1)};
    Rat denom = 1;
    for (unsigned j = 0; j <= n; ++j) {
      if (j == i) continue;
      std::vector<Rat> nb(basis.size() + 1, Rat(0));
      for (size_t k = 0; k < basis.size(); ++k) {
        nb[k] -= basis[k] * xs[j];
        nb[k + 1] += basis[k];
      }
      basis = std::move(nb);
      denom *= xs[i] - xs[j];
    }
    for (size_t k = 0; k < basis.size(); ++k) coeff[k] += ys[i] * basis[k] / denom;
  }
  std::vector<Int> out;
  for (auto& c : coeff) {
    if (boost::multiprecision::denominator(c) != 1)
      throw std::logic_error("characteristic polynomial must be integral");
    out.push_back(boost::multiprecision::numerator(c));
  }
  return out;
}

// Divide p by d in Z[x]; returns empty vector if not divisible.
std::vector<Int> poly_divide(const std::vector<Int>& p, const std::vector<Int>& d) {
  std::vector<Int> rem = p, quot(p.size() >= d.size() ? p.size() - d.size() + 1 : 0, Int(0));
  if (p.size() < d.size()) return {};
  for (int i = static_cast<int>(rem.size()) - 1; i >= static_cast<int>(d.size()) - 1; --i) {
    Int lead = rem[i];
    if (lead == 0) continue;
    if (lead % d.back() != 0) return {};
    Int f = lead / d.back();
    quot[i - (d.size() - 1)] = f;
    for (size_t j = 0; j < d.size(); ++j) rem[i - (d.size() - 1) + j] -= f * d[j];
  }
  for (size_t j = 0; j + 1 < d.size(); ++j)
    if (rem[j] != 0) return {};
  return quot;
}

// Cyclotomic polynomials for the element orders occurring in these Weyl
// groups (divisors of 8 and 12).
const std::vector<std::pair<unsigned, std::vector<Int>>>& cyclotomics() {
  static const std::vector<std::pair<unsigned, std::vector<Int>>> table = {
      {1, {Int(-1), Int(1)}},
      {2, {Int(1), Int(1)}},
      {3, {Int(1), Int(1), Int(1)}},
      {4, {Int(1), Int(0), Int(1)}},
      {6, {Int(1), Int(-1), Int(1)}},
      {8, {Int(1), Int(0), Int(0), Int(0), Int(1)}},
      {12, {Int(1), Int(0), Int(-1), Int(0), Int(1)}},
  };
  return table;
}

struct ExcClass {
  std::vector<Int> charpoly;        // of the twisted Weyl element
  Int r_order;                      // |C_{W,F}(w)|
  std::vector<unsigned> cyc_parts;  // cyclotomic indices of the factors
};

// Conjugacy classes of the coset W * t (t possibly identity) under
// W-conjugation, together with F-centralizer orders.
std::vector<ExcClass> coset_classes(unsigned dim, const std::set<WMat>& w_set,
                                    const WMat& twist) {
  std::vector<WMat> w_elems(w_set.begin(), w_set.end());
  std::map<WMat, WMat> inverse;
  for (const auto& a : w_elems)
    for (const auto& b : w_elems)
      if (wmat_mul(a, b) == wmat_identity(dim)) inverse[a] = b;

  std::set<WMat> coset;
  for (const auto& w : w_elems) coset.insert(wmat_mul(w, twist));

  std::vector<ExcClass> out;
  std::set<WMat> assigned;
  for (const auto& x : coset) {
    if (assigned.count(x)) continue;
    std::set<WMat> orbit;
    for (const auto& g : w_elems) orbit.insert(wmat_mul(wmat_mul(g, x), inverse[g]));
    for (const auto& y : orbit) assigned.insert(y);
    ExcClass c;
    c.charpoly = char_poly(*orbit.begin());
    c.r_order = Int(w_elems.size()) / Int(orbit.size());
    if (Int(w_elems.size()) % Int(orbit.size()) != 0)
      throw std::logic_error("orbit size must divide |W|");
    // factor the characteristic polynomial into cyclotomics
    std::vector<Int> rem = c.charpoly;
    bool progress = true;
    while (rem.size() > 1 && progress) {
      progress = false;
      for (auto& [idx, phi] : cyclotomics()) {
        auto q = poly_divide(rem, phi);
        if (!q.empty()) {
          c.cyc_parts.push_back(idx);
          rem = q;
          progress = true;
          break;
        }
      }
    }
    if (rem.size() != 1)
      throw std::logic_error("characteristic polynomial not a product of cyclotomics");
    std::sort(c.cyc_parts.begin(), c.cyc_parts.end());
    out.push_back(std::move(c));
  }
  std::sort(out.begin(), out.end(), [](const ExcClass& a, const ExcClass& b) {
    if (a.charpoly != b.charpoly) return a.charpoly < b.charpoly;
    return a.r_order < b.r_order;
  });
  return out;
}

WMat from_rows(unsigned dim, std::initializer_list<long> doubled) {
  WMat m;
  m.dim = dim;
  size_t i = 0;
  for (long v : doubled) m.e[i++] = v;
  return m;
}

// G2 Weyl group as 2x2 matrices on the simple-root basis.
const std::vector<ExcClass>& g2_classes() {
  static const std::vector<ExcClass> classes = [] {
    WMat s1 = from_rows(2, {-2, 6, 0, 2});   // alpha1 -> -alpha1, alpha2 -> alpha2+3alpha1
    WMat s2 = from_rows(2, {2, 0, 2, -2});   // alpha1 -> alpha1+alpha2
    auto w = closure(2, {s1, s2});
    if (w.size() != 12) throw std::logic_error("W(G2) should have order 12");
    return coset_classes(2, w, wmat_identity(2));
  }();
  return classes;
}

// Aut(D4) machinery for the triality-twisted classes of 3D4.
const std::vector<ExcClass>& d4tri_classes() {
  static const std::vector<ExcClass> classes = [] {
    // W(D4): coordinate permutations and even sign changes, doubled entries
    WMat swap12 = from_rows(4, {0, 2, 0, 0, 2, 0, 0, 0, 0, 0, 2, 0, 0, 0, 0, 2});
    WMat cyc = from_rows(4, {0, 2, 0, 0, 0, 0, 2, 0, 0, 0, 0, 2, 2, 0, 0, 0});
    WMat sgn = from_rows(4, {-2, 0, 0, 0, 0, -2, 0, 0, 0, 0, 2, 0, 0, 0, 0, 2});
    auto w = closure(4, {swap12, cyc, sgn});
    if (w.size() != 192) throw std::logic_error("W(D4) should have order 192");
    // Hadamard-type isometry of the D4 root system (entries 1/2); together
    // with W(D4) it generates the triality extension W(D4):3
    WMat h = from_rows(4, {1, 1, 1, 1, 1, 1, -1, -1, 1, -1, 1, -1, -1, 1, 1, -1});
    auto full = closure(4, {swap12, cyc, sgn, h});
    if (full.size() != 576) throw std::logic_error("W(D4):3 should have order 576");
    // pick a triality element: order 3, outside W(D4)
    WMat tau = wmat_identity(4);
    bool found = false;
    for (const auto& g : full) {
      if (w.count(g)) continue;
      if (wmat_mul(wmat_mul(g, g), g) == wmat_identity(4)) {
        tau = g;
        found = true;
        break;
      }
    }
    if (!found) throw std::logic_error("no triality element found");
    auto cls = coset_classes(4, w, tau);
    if (cls.size() != 7) throw std::logic_error("3D4 should have 7 F-classes of tori");
    return cls;
  }();
  return classes;
}

const std::vector<ExcClass>& exc_classes(const GroupSpec& spec) {
  if (spec.family == Family::G2) return g2_classes();
  if (spec.family == Family::D4tri) return d4tri_classes();
  throw std::invalid_argument("unsupported-family: torus enumeration for " + spec.name() +
                              " is not implemented (only order-level bounds are)");
}

Int eval_cyclotomic(unsigned idx, const Int& q) {
  for (auto& [i, phi] : cyclotomics())
    if (i == idx) {
      Int v = 0, pw = 1;
      for (auto& c : phi) {
        v += c * pw;
        pw *= q;
      }
      return v;
    }
  throw std::logic_error("unknown cyclotomic index");
}

// hyperoctahedral centralizer order: prod (2l)^{a_l} a_l! over both partitions
Int hyperoctahedral_centralizer(const Partition& lambda, const Partition& mu) {
  Int r = 1;
  for (auto& [l, a] : lambda.multiplicities()) r *= pow_int(Int(2) * l, a) * factorial(a);
  for (auto& [l, b] : mu.multiplicities()) r *= pow_int(Int(2) * l, b) * factorial(b);
  return r;
}

}  // namespace

bool valid_torus_class(const GroupSpec& spec, const TorusClass& cls) {
  switch (spec.family) {
    case Family::LinearA:
    case Family::UnitaryA2:
      return cls.mu.empty() && cls.lambda.sum() == spec.n && cls.split_tag == SplitTag::none;
    case Family::SymplecticC:
    case Family::OrthogonalOddB:
      return cls.lambda.sum() + cls.mu.sum() == spec.m() && cls.split_tag == SplitTag::none;
    case Family::OrthogonalPlusD: {
      if (cls.lambda.sum() + cls.mu.sum() != spec.m()) return false;
      if (cls.mu.num_parts() % 2 != 0) return false;
      bool split_case = cls.mu.empty() && !cls.lambda.empty() && cls.lambda.all_parts_even();
      return split_case ? cls.split_tag != SplitTag::none : cls.split_tag == SplitTag::none;
    }
    case Family::OrthogonalMinus2D:
      return cls.lambda.sum() + cls.mu.sum() == spec.m() && cls.mu.num_parts() % 2 == 1 &&
             cls.split_tag == SplitTag::none;
    case Family::G2:
    case Family::D4tri: {
      if (!cls.mu.empty() || cls.split_tag != SplitTag::none) return false;
      if (cls.lambda.num_parts() != 1) return false;
      unsigned k = cls.lambda.parts()[0];
      return k >= 1 && k <= exc_classes(spec).size();
    }
    default:
      return false;
  }
}

std::vector<TorusClass> enumerate_torus_classes(const GroupSpec& spec) {
  std::vector<TorusClass> out;
  switch (spec.family) {
    case Family::LinearA:
    case Family::UnitaryA2:
      for (auto& lam : Partition::all(spec.n)) out.push_back({lam, Partition{}});
      break;
    case Family::SymplecticC:
    case Family::OrthogonalOddB: {
      unsigned m = spec.m();
      for (unsigned k = 0; k <= m; ++k)
        for (auto& lam : Partition::all(k))
          for (auto& mu : Partition::all(m - k)) out.push_back({lam, mu});
      break;
    }
    case Family::OrthogonalPlusD: {
      unsigned m = spec.m();
      for (unsigned k = 0; k <= m; ++k)
        for (auto& lam : Partition::all(k))
          for (auto& mu : Partition::all(m - k)) {
            if (mu.num_parts() % 2 != 0) continue;
            if (mu.empty() && !lam.empty() && lam.all_parts_even()) {
              out.push_back({lam, mu, SplitTag::plus});
              out.push_back({lam, mu, SplitTag::minus});
            } else {
              out.push_back({lam, mu});
            }
          }
      break;
    }
    case Family::OrthogonalMinus2D: {
      unsigned m = spec.m();
      for (unsigned k = 0; k <= m; ++k)
        for (auto& lam : Partition::all(k))
          for (auto& mu : Partition::all(m - k)) {
            if (mu.num_parts() % 2 != 1) continue;
            out.push_back({lam, mu});
          }
      break;
    }
    case Family::G2:
    case Family::D4tri: {
      unsigned count = static_cast<unsigned>(exc_classes(spec).size());
      for (unsigned k = 1; k <= count; ++k) out.push_back({Partition{k}, Partition{}});
      break;
    }
    default:
      throw std::invalid_argument("unsupported-family: torus enumeration for " + spec.name() +
                                  " is not implemented (only order-level bounds are)");
  }
  std::sort(out.begin(), out.end());
  return out;
}

TorusData torus_data(const GroupSpec& spec, const TorusClass& cls) {
  if (!valid_torus_class(spec, cls))
    throw std::invalid_argument("invalid torus class " + cls.str() + " for " + spec.name());

  const Int q = spec.q();
  TorusData data;

  if (spec.family == Family::G2 || spec.family == Family::D4tri) {
    const auto& ec = exc_classes(spec)[cls.lambda.parts()[0] - 1];
    data.hat_order = 1;
    for (unsigned idx : ec.cyc_parts) {
      Int v = eval_cyclotomic(idx, q);
      data.hat_torus_factors.push_back(v);
      data.hat_order *= v;
    }
    data.torus_order = data.hat_order;  // trivial centre in both families
    data.f_centralizer_order = ec.r_order;
    data.normaliser_order = data.torus_order * data.f_centralizer_order;
    return data;
  }

  // ambient torus factors
  data.hat_order = 1;
  const int eps = spec.eps();
  const bool type_a =
      spec.family == Family::LinearA || spec.family == Family::UnitaryA2;
  for (unsigned l : cls.lambda.parts()) {
    Int v;
    if (type_a)
      v = pow_int(q, l) - (eps == 1 ? 1 : (l % 2 == 0 ? 1 : -1));
    else
      v = pow_int(q, l) - 1;
    data.hat_torus_factors.push_back(v);
    data.hat_order *= v;
  }
  for (unsigned l : cls.mu.parts()) {
    Int v = pow_int(q, l) + 1;
    data.hat_torus_factors.push_back(v);
    data.hat_order *= v;
  }

  // |T|: family-specific quotient rules, validated against the explicit
  // constructions in the matrix-group layer
  switch (spec.family) {
    case Family::LinearA:
    case Family::UnitaryA2:
      data.torus_order = data.hat_order / (q - eps) / spec.adjoint_index();
      break;
    case Family::SymplecticC:
      data.torus_order = data.hat_order / gcd_int(Int(2), q - 1);
      break;
    case Family::OrthogonalOddB:
      data.torus_order = data.hat_order / 2;  // q odd: spinor kernel has index 2
      break;
    case Family::OrthogonalPlusD:
    case Family::OrthogonalMinus2D:
      if (spec.p == 2) {
        data.torus_order = data.hat_order;
      } else {
        Int z = spec.adjoint_index() / 2;  // |Z(Omega)|
        data.torus_order = data.hat_order / 2 / z;
      }
      break;
    default:
      throw std::logic_error("unreachable");
  }

  // |R| = |C_{W,F}(w)|
  switch (spec.family) {
    case Family::LinearA:
    case Family::UnitaryA2: {
      Int r = 1;
      for (auto& [l, a] : cls.lambda.multiplicities()) r *= pow_int(Int(l), a) * factorial(a);
      data.f_centralizer_order = r;
      break;
    }
    case Family::SymplecticC:
    case Family::OrthogonalOddB:
      data.f_centralizer_order = hyperoctahedral_centralizer(cls.lambda, cls.mu);
      break;
    case Family::OrthogonalPlusD:
    case Family::OrthogonalMinus2D: {
      Int c0 = hyperoctahedral_centralizer(cls.lambda, cls.mu);
      data.f_centralizer_order = (cls.split_tag != SplitTag::none) ? c0 : c0 / 2;
      break;
    }
    default:
      throw std::logic_error("unreachable");
  }

  data.normaliser_order = data.torus_order * data.f_centralizer_order;
  return data;
}

}  // namespace torbase
