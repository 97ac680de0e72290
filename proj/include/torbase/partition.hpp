#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace torbase {

// Integer partition, parts stored in weakly decreasing order.
class Partition {
 public:
  Partition() = default;
  Partition(std::initializer_list<unsigned> parts) : parts_(parts) { canonicalize(); }
  explicit Partition(std::vector<unsigned> parts) : parts_(std::move(parts)) { canonicalize(); }

  const std::vector<unsigned>& parts() const { return parts_; }
  unsigned sum() const { return std::accumulate(parts_.begin(), parts_.end(), 0u); }
  unsigned num_parts() const { return static_cast<unsigned>(parts_.size()); }
  bool empty() const { return parts_.empty(); }

  // multiplicity map part -> count
  std::map<unsigned, unsigned> multiplicities() const {
    std::map<unsigned, unsigned> m;
    for (unsigned p : parts_) ++m[p];
    return m;
  }

  bool all_parts_even() const {
    for (unsigned p : parts_)
      if (p % 2) return false;
    return !parts_.empty() || true;
  }

  bool operator==(const Partition& o) const { return parts_ == o.parts_; }
  bool operator<(const Partition& o) const { return parts_ < o.parts_; }

  static std::vector<Partition> all(unsigned n) {
    std::vector<Partition> out;
    std::vector<unsigned> cur;
    gen(n, n, cur, out);
    return out;
  }

  // "3,1,1" or "" for the empty partition
  static Partition parse(const std::string& s) {
    std::vector<unsigned> parts;
    size_t i = 0;
    while (i < s.size()) {
      size_t j = s.find(',', i);
      if (j == std::string::npos) j = s.size();
      std::string tok = s.substr(i, j - i);
      if (!tok.empty()) {
        int v = std::stoi(tok);
        if (v <= 0) throw std::invalid_argument("partition parts must be positive");
        parts.push_back(static_cast<unsigned>(v));
      }
      i = j + 1;
    }
    return Partition(std::move(parts));
  }

  std::string str() const {
    std::string s;
    for (size_t i = 0; i < parts_.size(); ++i) {
      if (i) s += ",";
      s += std::to_string(parts_[i]);
    }
    return s;
  }

 private:
  void canonicalize() { std::sort(parts_.begin(), parts_.end(), std::greater<unsigned>()); }

  static void gen(unsigned n, unsigned maxpart, std::vector<unsigned>& cur,
                  std::vector<Partition>& out) {
    if (n == 0) {
      out.emplace_back(cur);
      return;
    }
    for (unsigned p = std::min(n, maxpart); p >= 1; --p) {
      cur.push_back(p);
      gen(n - p, p, cur, out);
      cur.pop_back();
    }
  }

  std::vector<unsigned> parts_;
};

}  // namespace torbase
