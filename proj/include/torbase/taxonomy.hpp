#pragma once

#include <string>
#include <vector>

#include "torbase/bigint.hpp"
#include "torbase/groupspec.hpp"
#include "torbase/partition.hpp"

namespace torbase {

enum class SplitTag { none, plus, minus };

// F-class datum indexing a class of maximal tori. Type A uses lambda only;
// B/C/D use the signed pair (lambda, mu). The split tag distinguishes the two
// D_m classes arising from (lambda, empty) with all parts of lambda even.
struct TorusClass {
  Partition lambda;
  Partition mu;
  SplitTag split_tag = SplitTag::none;

  bool operator==(const TorusClass& o) const {
    return lambda == o.lambda && mu == o.mu && split_tag == o.split_tag;
  }
  bool operator<(const TorusClass& o) const;

  // "3,1;2" with optional trailing +/- split tag, e.g. "2,2;+"
  static TorusClass parse(const std::string& s);
  std::string str() const;
};

struct TorusData {
  Int torus_order;          // |T| in the simple group
  Int f_centralizer_order;  // |R| = |C_{W,F}(w)|
  Int normaliser_order;     // |N| = |T| * |R|
  std::vector<Int> hat_torus_factors;  // cyclic factor orders of the ambient torus
  Int hat_order;                       // product of the factors = |T^|
};

// Complete duplicate-free list of F-classes. Supported: the six classical
// families plus G2 and 3D4 (computed from explicit Weyl matrix data).
// Throws std::invalid_argument for other exceptional families.
std::vector<TorusClass> enumerate_torus_classes(const GroupSpec& spec);

TorusData torus_data(const GroupSpec& spec, const TorusClass& cls);

bool valid_torus_class(const GroupSpec& spec, const TorusClass& cls);

}  // namespace torbase
