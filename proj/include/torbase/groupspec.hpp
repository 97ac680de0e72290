#pragma once

#include <string>

#include "torbase/bigint.hpp"

namespace torbase {

enum class Family {
  LinearA,           // L_n(q) = PSL_n(q)
  UnitaryA2,         // U_n(q) = PSU_n(q)
  SymplecticC,       // PSp_n(q), n even
  OrthogonalOddB,    // Omega_n(q), n odd, q odd
  OrthogonalPlusD,   // POmega^+_n(q), n even
  OrthogonalMinus2D, // POmega^-_n(q), n even
  G2,
  F4,
  E6,
  E6tw,  // 2E6
  E7,
  E8,
  D4tri,  // 3D4
  F4tw,   // 2F4
  G2tw,   // 2G2
  B2tw,   // 2B2
};

bool family_is_classical(Family f);
std::string family_name(Family f);
// Parses "L", "U", "Sp", "Omega", "O+", "O-", "G2", "3D4", "2F4", ... (see cli docs)
Family parse_family(const std::string& s);

// Identifies the simple group G = O^{p'}(Gbar^F) combinatorially.
struct GroupSpec {
  Family family;
  unsigned n = 0;  // natural module dimension; 0 for exceptional families
  Int p = 2;       // defining characteristic
  unsigned f = 1;  // q = p^f

  GroupSpec(Family fam, unsigned dim, const Int& prime, unsigned exp);
  static GroupSpec classical(Family fam, unsigned dim, const Int& q);
  static GroupSpec exceptional(Family fam, const Int& q);

  Int q() const { return pow_int(p, f); }
  int eps() const;         // +1 untwisted A/D+, -1 for 2A/2D; 0 otherwise
  unsigned m() const;      // Weyl rank for B/C/D families (n/2 or (n-1)/2)
  Int adjoint_index() const;  // d = |Gbar^F : G| = centre order of the s.c. group
  std::string name() const;

  bool operator==(const GroupSpec& o) const {
    return family == o.family && n == o.n && p == o.p && f == o.f;
  }
  bool operator<(const GroupSpec& o) const;
};

Int group_order(const GroupSpec& spec);
Int weyl_order(const GroupSpec& spec);
unsigned positive_root_count(const GroupSpec& spec);
unsigned reflection_count(const GroupSpec& spec);

// |GL_n(q)| (eps=+1) or |GU_n(q)| (eps=-1)
Int gl_order(unsigned n, const Int& q, int eps);
// |Sp_n(q)|, n even
Int sp_order(unsigned n, const Int& q);

}  // namespace torbase
