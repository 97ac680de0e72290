#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "torbase/bigint.hpp"

namespace torbase {

// Permutation on {0, ..., degree-1}, stored as the image array. Acting on
// the right: (g*h) maps i to h[g[i]].
class Perm {
 public:
  Perm() = default;
  explicit Perm(unsigned degree) : img_(degree) {
    std::iota(img_.begin(), img_.end(), 0u);
  }
  explicit Perm(std::vector<uint32_t> images) : img_(std::move(images)) {
#ifndef NDEBUG
    check_bijective();
#endif
  }

  unsigned degree() const { return static_cast<unsigned>(img_.size()); }
  uint32_t operator[](uint32_t i) const { return img_[i]; }
  const std::vector<uint32_t>& images() const { return img_; }

  bool is_identity() const {
    for (uint32_t i = 0; i < img_.size(); ++i)
      if (img_[i] != i) return false;
    return true;
  }

  Perm operator*(const Perm& o) const {
    Perm r;
    r.img_.resize(img_.size());
    for (size_t i = 0; i < img_.size(); ++i) r.img_[i] = o.img_[img_[i]];
    return r;
  }

  Perm inverse() const {
    Perm r;
    r.img_.resize(img_.size());
    for (uint32_t i = 0; i < img_.size(); ++i) r.img_[img_[i]] = i;
    return r;
  }

  Perm conjugate(const Perm& x) const {  // x^-1 * this * x
    return x.inverse() * (*this * x);
  }

  uint32_t first_moved() const {
    for (uint32_t i = 0; i < img_.size(); ++i)
      if (img_[i] != i) return i;
    return degree();
  }

  std::vector<unsigned> cycle_type() const {  // sorted descending, incl. fixed pts
    std::vector<bool> seen(img_.size(), false);
    std::vector<unsigned> cycles;
    for (uint32_t i = 0; i < img_.size(); ++i) {
      if (seen[i]) continue;
      unsigned len = 0;
      for (uint32_t j = i; !seen[j]; j = img_[j]) {
        seen[j] = true;
        ++len;
      }
      cycles.push_back(len);
    }
    std::sort(cycles.begin(), cycles.end(), std::greater<unsigned>());
    return cycles;
  }

  Int order() const {
    Int ord = 1;
    for (unsigned c : cycle_type()) ord = boost::multiprecision::lcm(ord, Int(c));
    return ord;
  }

  bool operator==(const Perm& o) const { return img_ == o.img_; }
  bool operator<(const Perm& o) const { return img_ < o.img_; }

  uint64_t hash() const {
    uint64_t h = 1469598103934665603ull;
    for (uint32_t v : img_) {
      h ^= v;
      h *= 1099511628211ull;
    }
    return h;
  }

 private:
  void check_bijective() const {
    std::vector<bool> seen(img_.size(), false);
    for (uint32_t v : img_) {
      if (v >= img_.size() || seen[v]) throw std::invalid_argument("not a permutation");
      seen[v] = true;
    }
  }

  std::vector<uint32_t> img_;
};

}  // namespace torbase
