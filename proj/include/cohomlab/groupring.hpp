#pragma once

// Group rings R[G] for finite groups with R = Z/N, with first-class
// support for cyclic p-groups: inversion, left annihilators, character
// duality, derivative operators D^(k), augmentation-ideal powers, and
// projections to quotient group rings.

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cohomlab/linalg.hpp"
#include "cohomlab/residue.hpp"

namespace cohomlab::groupring {

using linalg::i64;
using linalg::RowSpan;
using linalg::Vec;

// A finite group with elements 0..order-1 and identity 0.
class FiniteGroupSpec {
 public:
  static FiniteGroupSpec cyclic(int order);
  static FiniteGroupSpec direct_product(const std::vector<int>& cyclic_orders);
  // Explicit table; group axioms are verified.
  static FiniteGroupSpec from_table(std::vector<std::vector<int>> table);

  int order() const { return order_; }
  int mul(int a, int b) const { return table_[a][b]; }
  int inv(int a) const { return inv_[a]; }
  const std::string& name() const { return name_; }
  bool is_cyclic() const { return cyclic_; }

 private:
  FiniteGroupSpec() = default;
  void finish_init();  // inverses + axiom check
  int order_ = 1;
  bool cyclic_ = false;
  std::vector<std::vector<int>> table_;
  std::vector<int> inv_;
  std::string name_;
};

class GroupRing;
using RingPtr = std::shared_ptr<const GroupRing>;

class GroupRingElement {
 public:
  GroupRingElement(RingPtr ring, Vec coeffs);

  const Vec& coeffs() const { return coeffs_; }
  i64 coeff(int g) const { return coeffs_[g]; }
  const RingPtr& ring() const { return ring_; }

  GroupRingElement operator+(const GroupRingElement& o) const;
  GroupRingElement operator-(const GroupRingElement& o) const;
  GroupRingElement operator*(const GroupRingElement& o) const;
  GroupRingElement scaled(i64 c) const;
  bool operator==(const GroupRingElement& o) const;
  bool is_zero() const;

  i64 augmentation() const;  // sum of coefficients mod N
  std::string to_string() const;

 private:
  RingPtr ring_;
  Vec coeffs_;
};

// Finitely generated left R[G]-submodule with canonical Howell basis.
class Submodule {
 public:
  Submodule(RingPtr ring, RowSpan span);
  static Submodule zero(RingPtr ring);
  static Submodule full(RingPtr ring);
  // Closure of the generators under left multiplication by G.
  static Submodule generated_by(RingPtr ring,
                                const std::vector<GroupRingElement>& gens);

  const RowSpan& span() const { return span_; }
  const RingPtr& ring() const { return ring_; }
  bool contains(const GroupRingElement& x) const;
  bool operator==(const Submodule& o) const { return span_ == o.span_; }
  bool operator!=(const Submodule& o) const { return !(*this == o); }
  unsigned long long size() const { return span_.size(); }
  Submodule sum(const Submodule& o) const;
  Submodule intersect(const Submodule& o) const;
  bool submodule_of(const Submodule& o) const { return span_.subspan_of(o.span_); }
  std::vector<GroupRingElement> basis_elements() const;

 private:
  RingPtr ring_;
  RowSpan span_;
};

class GroupRing : public std::enable_shared_from_this<GroupRing> {
 public:
  static RingPtr create(FiniteGroupSpec group, i64 modulus);
  // Cyclic group of order p^n with coefficients Z/p^m.
  static RingPtr cyclic_p(const residue::RingParams& params);

  const FiniteGroupSpec& group() const { return group_; }
  i64 modulus() const { return modulus_; }
  const std::optional<residue::RingParams>& params() const { return params_; }

  GroupRingElement zero() const;
  GroupRingElement one() const;
  GroupRingElement basis(int g, i64 c = 1) const;
  GroupRingElement from_coeffs(Vec coeffs) const;
  GroupRingElement norm_element() const;  // sum over all of G
  // sigma^j - 1 to the k-th power for cyclic groups (sigma = element 1).
  GroupRingElement sigma_minus_one_power(int k, int j = 1) const;

  FiniteGroupSpec group_;
  i64 modulus_;
  std::optional<residue::RingParams> params_;

 private:
  GroupRing(FiniteGroupSpec group, i64 modulus,
            std::optional<residue::RingParams> params);
};

// Coefficient permutation by g -> g^{-1}; an involution.
GroupRingElement apply_inversion(const GroupRingElement& x);

// Left annihilator of J^iota: {x : x * iota(j) = 0 for all j in J}.
Submodule left_annihilator(const Submodule& j);

// Character-group side of the duality between Hom(R[G]/J, Q/Z) and the
// annihilator submodule, with both directions checked.
struct DualityData {
  Submodule characters;   // characters as coefficient vectors on G
  Submodule annihilator;  // left_annihilator(J)
  bool module_map_verified;
};
DualityData duality_map(const Submodule& j);

// D^(k) for cyclic G of order p^n, coefficients reduced mod N.
GroupRingElement d_operator(const RingPtr& ring, int k);
// Same element with a different generator sigma^j in place of sigma.
GroupRingElement d_operator_generator(const RingPtr& ring, int k, int j);
// Exact integer coefficients of D^(k) on Z[C_{p^n}].
std::vector<long long> d_operator_integer(i64 p, int n, int k);

// Exact verification of the two recursion identities for D^(k) in Z[G],
// both the equalities and their congruence forms.
struct DkIdentityResult {
  bool first_exact;        // (sigma-1)D^(k) = D^(k-1) + (-1)^k C(p^n,k) sigma^{-k}
  bool first_congruence;   // == D^(k-1) mod p^{n-vp(k)}
  bool second_exact;       // j-fold version
  bool second_congruence;  // mod p^{n-r_k}
};
DkIdentityResult dk_recursion_check(i64 p, int n, int k, int j);

// I_G^k as a left submodule (I^0 = R[G]).
Submodule aug_power(const RingPtr& ring, int k);

// ideal(D^(k)) == annihilator(I^{k+1}) for R = Z/p^m.
bool auggen_check(i64 p, int n, int m, int k);

// Coefficient-summing projection R[G] -> R[H] for a cyclic quotient H.
GroupRingElement project_to_quotient(const GroupRingElement& x,
                                     const RingPtr& target);

// Two-case closed form for the projection of D^(k) to R[H].
struct TrivimageResult {
  bool match;
  std::string detail;
};
TrivimageResult trivimage_check(i64 p, int n, int m, int k);

// Writes x = (phi(sigma)-1)^k * Y + B with B in the span of the partial
// norm, for x in the double annihilator of the projected ideal.
struct ProjformDecomposition {
  GroupRingElement y;
  GroupRingElement b;
};
struct ProjformContext {
  RingPtr ring_g;       // R[G], |G| = p^n
  RingPtr ring_h;       // R[H], |H| = p^{n-s}
  Submodule domain;     // phi((I_G^k)^perp)^perp inside R[H]
  Submodule norm_span;  // the ideal generated by the partial norm
  GroupRingElement partial_norm;
  int k, s, m, n;
};
ProjformContext projform_context(i64 p, int n, int m, int s, int k);
std::optional<ProjformDecomposition> projform_decompose(
    const ProjformContext& ctx, const GroupRingElement& x);

// All left submodules of R[G]; exhaustive for |R[G]| <= 256, otherwise the
// family of cyclic ideals and sums of two cyclic ideals.
std::vector<Submodule> enumerate_left_ideals(const RingPtr& ring);

}  // namespace cohomlab::groupring
