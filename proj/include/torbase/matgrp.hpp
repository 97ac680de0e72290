#pragma once

#include <optional>
#include <vector>

#include "torbase/groupspec.hpp"
#include "torbase/matrix.hpp"
#include "torbase/permgroup.hpp"
#include "torbase/taxonomy.hpp"

namespace torbase {

enum class FormKind { none, symplectic, hermitian, quadratic };

// Matrix group together with the invariant form its generators preserve.
struct MatGroup {
  const Fq* field = nullptr;
  unsigned n = 0;
  FormKind form = FormKind::none;
  MatF bilinear;               // Gram matrix (polarisation for quadratic forms)
  std::vector<uint32_t> quad;  // Q(e_i) when form == quadratic (q even)
  std::vector<MatF> gens;
};

// exact form checks
bool preserves_form(const MatGroup& g, const MatF& m);
uint32_t quad_value(const MatGroup& g, const std::vector<uint32_t>& v);

// Generators of SL/SU/Sp/Omega^eps preserving the standard form:
// hermitian identity Gram, symplectic interleaved blocks, quadratic
// hyperbolic pairs with one minus block for eps = -. Odd-q orthogonal
// groups are outside the constructible corpus.
MatGroup classical_group(const GroupSpec& spec);

// Multiplication-by-generator matrix of F_{q^ell} over F_q (order q^ell - 1)
// and the matrix of x -> x^q in the same basis.
MatF singer_block(unsigned ell, const Fq& k);
MatF frobenius_block(unsigned ell, const Fq& k);

// Ambient simple group realised on its natural point domain.
struct GroupEnv {
  explicit GroupEnv(GroupSpec s) : spec(std::move(s)) {}
  GroupSpec spec;
  MatGroup mat;
  std::vector<std::vector<uint32_t>> points;  // canonical projective reps
  std::vector<int32_t> point_index;           // vector code -> point id
  PermGroup perm;
};

const GroupEnv& build_group(const GroupSpec& spec, uint64_t seed = 1);

Perm mat_to_perm(const GroupEnv& env, const MatF& m);

// Matrix generators of the ambient torus normaliser for the class (torus
// blocks, in-block Weyl elements, block permutations), already conjugated
// into the standard form.
MatGroup build_normaliser_mat(const GroupSpec& spec, const TorusClass& cls);

// N = N_G(T_w) as a permutation subgroup of the simple group: the ambient
// normaliser is cut down to G by the determinant (type A) or Dickson
// (orthogonal) kernel; the order is verified against the taxonomy exactly.
PermGroup normaliser_perm(const GroupEnv& env, const TorusClass& cls, uint64_t seed = 1);

// A root element of G (transvection for L/U/Sp, Siegel element for Omega),
// as a permutation; used to audit root-element bounds.
Perm root_element(const GroupEnv& env);

}  // namespace torbase
