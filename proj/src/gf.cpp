#include "torbase/gf.hpp"

#include <map>
#include <mutex>
#include <stdexcept>

namespace torbase {

namespace {

// polynomial encoded base p; multiply modulo the monic modulus (degree f)
uint32_t raw_poly_mul_mod(uint32_t a, uint32_t b, long p, unsigned f,
                          const std::vector<uint32_t>& mod) {
  // coefficients
  std::vector<uint32_t> ca(f, 0), cb(f, 0), prod(2 * f, 0);
  for (unsigned i = 0; i < f && a; ++i, a /= p) ca[i] = a % p;
  for (unsigned i = 0; i < f && b; ++i, b /= p) cb[i] = b % p;
  for (unsigned i = 0; i < f; ++i)
    for (unsigned j = 0; j < f; ++j)
      prod[i + j] = (prod[i + j] + ca[i] * cb[j]) % p;
  // reduce: x^f = -(mod[0] + mod[1] x + ... + mod[f-1] x^{f-1})
  for (int d = static_cast<int>(2 * f) - 2; d >= static_cast<int>(f); --d) {
    uint32_t c = prod[d];
    if (!c) continue;
    prod[d] = 0;
    for (unsigned i = 0; i < f; ++i) {
      uint32_t sub = (c * mod[i]) % p;
      prod[d - f + i] = (prod[d - f + i] + p - sub) % p;
    }
  }
  uint32_t out = 0;
  for (int i = static_cast<int>(f) - 1; i >= 0; --i) out = out * p + prod[i];
  return out;
}

bool is_primitive_poly(long p, unsigned f, const std::vector<uint32_t>& mod) {
  // x must have multiplicative order exactly p^f - 1 modulo (mod)
  uint32_t q = 1;
  for (unsigned i = 0; i < f; ++i) q *= static_cast<uint32_t>(p);
  uint32_t x = (f == 1) ? (mod[0] ? (p - mod[0]) % p : 0) : static_cast<uint32_t>(p);
  if (f == 1) {
    // modulus is x - c; primitive iff c generates F_p^*
    uint32_t c = (p - mod[0]) % p;
    if (c == 0) return false;
    uint32_t ord = 1, v = c;
    while (v != 1) {
      v = (v * c) % p;
      ++ord;
    }
    return ord == q - 1;
  }
  uint32_t v = x;
  uint32_t steps = 1;
  while (v != 1) {
    if (v == 0 || steps > q) return false;
    v = raw_poly_mul_mod(v, x, p, f, mod);
    ++steps;
  }
  return steps == q - 1;
}

}  // namespace

Fq::Fq(long p, unsigned f) : p_(p), f_(f) {
  q_ = 1;
  for (unsigned i = 0; i < f; ++i) q_ *= static_cast<uint32_t>(p);
  if (q_ > 65536) throw std::invalid_argument("field too large");
  // lexicographically least primitive monic polynomial, coefficients read as
  // the base-p integer c_0 + c_1 p + ...
  mod_.assign(f, 0);
  bool found = false;
  for (uint32_t code = 0; code < q_ && !found; ++code) {
    uint32_t c = code;
    for (unsigned i = 0; i < f; ++i, c /= p) mod_[i] = c % p;
    if (is_primitive_poly(p, f, mod_)) found = true;
  }
  if (!found) throw std::logic_error("no primitive polynomial found");

  exp_.assign(2 * (q_ - 1), 0);
  log_.assign(q_, 0);
  uint32_t x = (f == 1) ? (p - mod_[0]) % p : static_cast<uint32_t>(p);
  uint32_t v = 1;
  for (uint32_t i = 0; i < q_ - 1; ++i) {
    exp_[i] = v;
    exp_[i + (q_ - 1)] = v;
    log_[v] = i;
    v = poly_mul_mod(v, x);
  }
  if (v != 1) throw std::logic_error("generator order mismatch");
}

uint32_t Fq::poly_mul_mod(uint32_t a, uint32_t b) const {
  if (f_ == 1) return (a * b) % p_;
  return raw_poly_mul_mod(a, b, p_, f_, mod_);
}

const Fq& Fq::get(long p, unsigned f) {
  static std::map<std::pair<long, unsigned>, std::unique_ptr<Fq>> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(p, f);
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, std::unique_ptr<Fq>(new Fq(p, f))).first;
  return *it->second;
}

uint32_t Fq::add(uint32_t a, uint32_t b) const {
  if (p_ == 2) return a ^ b;
  uint32_t out = 0, mult = 1;
  for (unsigned i = 0; i < f_; ++i) {
    out += ((a % p_ + b % p_) % p_) * mult;
    a /= p_;
    b /= p_;
    mult *= p_;
  }
  return out;
}

uint32_t Fq::neg(uint32_t a) const {
  if (p_ == 2) return a;
  uint32_t out = 0, mult = 1;
  for (unsigned i = 0; i < f_; ++i) {
    out += ((p_ - a % p_) % p_) * mult;
    a /= p_;
    mult *= p_;
  }
  return out;
}

uint32_t Fq::sub(uint32_t a, uint32_t b) const { return add(a, neg(b)); }

uint32_t Fq::inv(uint32_t a) const {
  if (a == 0) throw std::domain_error("division by zero in F_q");
  return exp_[(q_ - 1 - log_[a]) % (q_ - 1)];
}

uint32_t Fq::pow(uint32_t a, Int e) const {
  if (a == 0) {
    if (e <= 0) throw std::domain_error("0^e with e <= 0");
    return 0;
  }
  Int r = e % (q_ - 1);
  if (r < 0) r += q_ - 1;
  uint64_t k = r.convert_to<uint64_t>();
  return exp_[(static_cast<uint64_t>(log_[a]) * k) % (q_ - 1)];
}

uint32_t Fq::dlog(uint32_t a) const {
  if (a == 0) throw std::domain_error("dlog of zero");
  return log_[a];
}

uint32_t Fq::frobenius(uint32_t a, unsigned times) const {
  uint32_t r = a;
  for (unsigned i = 0; i < times; ++i) r = pow(r, Int(p_));
  return r;
}

uint32_t Fq::embed_generator(const Fq& big) const {
  if (big.p() != p_ || big.f() % f_ != 0)
    throw std::invalid_argument("no embedding between these fields");
  // the image of our generator is an element of order q-1 with the same
  // minimal polynomial as our generator
  // candidates: h^k with h = big generator, k = (Q-1)/(q-1) * j
  uint32_t step = (big.q() - 1) / (q_ - 1);
  // minimal polynomial of our generator over F_p: product over Frobenius
  // orbit; instead of building it, test directly that the candidate
  // satisfies the same F_p-linear relation as our modulus evaluated at it.
  for (uint32_t j = 1; j < q_; ++j) {
    if (std::gcd<uint64_t>(j, q_ - 1) != 1) continue;
    uint32_t cand = big.pow(big.generator(), Int(static_cast<uint64_t>(step) * j));
    // evaluate our modulus at cand inside big: modulus is monic of degree f
    uint32_t acc = 0, pw = 1;
    for (unsigned i = 0; i < f_; ++i) {
      acc = big.add(acc, big.mul(pw, mod_[i] % big.p()));
      pw = big.mul(pw, cand);
    }
    acc = big.add(acc, pw);  // + cand^f
    if (acc == 0) return cand;
  }
  throw std::logic_error("embedding root not found");
}

FieldEmbedding::FieldEmbedding(const Fq& small, const Fq& big) : small_(&small), big_(&big) {
  gen_image_ = small.embed_generator(big);
  powers_.assign(small.q(), 0);
  // powers_[a] = image of a
  powers_[0] = 0;
  uint32_t v = 1;
  for (uint32_t i = 0; i < small.q() - 1; ++i) {
    uint32_t elem = small.pow(small.generator(), Int(i));
    powers_[elem] = v;
    v = big.mul(v, gen_image_);
  }
  // identity sanity: 1 -> 1
  if (powers_[1] != 1) throw std::logic_error("embedding does not fix 1");
}

uint32_t FieldEmbedding::operator()(uint32_t a) const { return powers_[a]; }

SubfieldBasis::SubfieldBasis(const Fq& small, const Fq& big)
    : emb_(small, big), p_(small.p()) {
  if (big.f() % small.f() != 0) throw std::invalid_argument("bad tower");
  dim_ = big.f() / small.f();
  pf_small_ = small.f();
  pf_big_ = big.f();
  // F_p-basis of big: { embed(theta^j) * g^i : i < dim, j < small.f } where
  // theta = small generator, g = big generator. Build the matrix of their
  // F_p-coordinates and invert it.
  unsigned n = big.f();
  std::vector<std::vector<uint32_t>> cols;
  for (unsigned i = 0; i < dim_; ++i) {
    uint32_t gi = big.pow(big.generator(), Int(i));
    for (unsigned j = 0; j < small.f(); ++j) {
      uint32_t tj = small.pow(small.generator(), Int(j));
      uint32_t elem = big.mul(emb_(tj), gi);
      std::vector<uint32_t> col(n);
      for (unsigned k = 0; k < n; ++k, elem /= p_) col[k] = elem % p_;
      cols.push_back(std::move(col));
    }
  }
  // invert over F_p by Gauss-Jordan: solve_ rows give coordinates
  unsigned m = n;
  std::vector<std::vector<long>> a(m, std::vector<long>(2 * m, 0));
  for (unsigned r = 0; r < m; ++r)
    for (unsigned c = 0; c < m; ++c) a[r][c] = cols[c][r];
  for (unsigned r = 0; r < m; ++r) a[r][m + r] = 1;
  for (unsigned c = 0; c < m; ++c) {
    unsigned piv = c;
    while (piv < m && a[piv][c] % p_ == 0) ++piv;
    if (piv == m) throw std::logic_error("basis matrix singular");
    std::swap(a[piv], a[c]);
    // scale to 1
    long inv = 1;
    while ((a[c][c] * inv) % p_ != 1) ++inv;
    for (unsigned k = 0; k < 2 * m; ++k) a[c][k] = (a[c][k] * inv) % p_;
    for (unsigned r = 0; r < m; ++r) {
      if (r == c || a[r][c] % p_ == 0) continue;
      long f = a[r][c] % p_;
      for (unsigned k = 0; k < 2 * m; ++k) a[r][k] = (a[r][k] - f * a[c][k] % p_ + p_ * p_) % p_;
    }
  }
  solve_.assign(m, std::vector<uint32_t>(m));
  for (unsigned r = 0; r < m; ++r)
    for (unsigned c = 0; c < m; ++c) solve_[r][c] = static_cast<uint32_t>(a[r][m + c]);
}

std::vector<uint32_t> SubfieldBasis::coords(uint32_t z) const {
  const Fq& small = emb_.small();
  unsigned n = emb_.big().f();
  std::vector<uint32_t> zc(n);
  for (unsigned k = 0; k < n; ++k, z /= p_) zc[k] = z % p_;
  // x = solve_ * zc over F_p; then regroup per small-field digit
  std::vector<uint32_t> x(n, 0);
  for (unsigned r = 0; r < n; ++r) {
    uint64_t acc = 0;
    for (unsigned c = 0; c < n; ++c) acc += static_cast<uint64_t>(solve_[r][c]) * zc[c];
    x[r] = static_cast<uint32_t>(acc % p_);
  }
  // component (i, j) multiplies embed(theta^j) g^i; rebuild small-field
  // element sum_j x[i*f+j] theta^j per i
  std::vector<uint32_t> out(dim_, 0);
  for (unsigned i = 0; i < dim_; ++i) {
    uint32_t val = 0;
    for (unsigned j = 0; j < small.f(); ++j) {
      if (!x[i * small.f() + j]) continue;
      uint32_t term = small.pow(small.generator(), Int(j));
      // multiply by the F_p scalar
      uint32_t scalar = x[i * small.f() + j];
      uint32_t scaled = 0;
      for (uint32_t s = 0; s < scalar; ++s) scaled = small.add(scaled, term);
      val = small.add(val, scaled);
    }
    out[i] = val;
  }
  return out;
}

}  // namespace torbase
