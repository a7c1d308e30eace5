#pragma once

// Upper unitriangular (k+2)x(k+2) matrix groups over Z/p^m, their
// distinguished subgroups, and the identification of the last-column
// subgroup with R[G]/I_G^{k+1} for cyclic G.

#include <vector>

#include "cohomlab/gcohom.hpp"
#include "cohomlab/groupring.hpp"

namespace cohomlab::unipotent {

using linalg::i64;
using linalg::Vec;

class UnipotentMatrix {
 public:
  UnipotentMatrix(int dim, i64 modulus);  // identity
  static UnipotentMatrix elementary(int dim, i64 modulus, int i, int j,
                                    i64 c);  // I + c E_{i,j}, 1-based

  int dim() const { return dim_; }
  i64 modulus() const { return mod_; }
  i64 entry(int i, int j) const { return e_[(i - 1) * dim_ + (j - 1)]; }
  void set_entry(int i, int j, i64 v);

  UnipotentMatrix operator*(const UnipotentMatrix& o) const;
  UnipotentMatrix inverse() const;
  UnipotentMatrix power(long long e) const;
  UnipotentMatrix conj_by(const UnipotentMatrix& g) const;  // g * this * g^{-1}
  bool operator==(const UnipotentMatrix& o) const { return e_ == o.e_; }
  bool operator!=(const UnipotentMatrix& o) const { return !(*this == o); }
  bool is_identity() const;

  // Membership in the tagged subgroups.
  bool in_center() const;       // only the (1, dim) corner
  bool in_last_column() const;  // zeros outside the last column

  std::vector<i64> key() const { return e_; }  // for hashing/sets

 private:
  int dim_;
  i64 mod_;
  Vec e_;
};

struct StandardGenerators {
  UnipotentMatrix x;                // I + sum E_{i,i+1}
  UnipotentMatrix y;                // I + E_{k+1,k+2}
  UnipotentMatrix z;                // I + E_{1,k+2}
  std::vector<UnipotentMatrix> yi;  // Y_i = I + E_{k+1-i,k+2}
};
StandardGenerators standard_generators(int k, i64 p, int m);

// Y_i equals the (i+1)-fold left-nested commutator of X with Y.
bool commutator_chain_check(int k, i64 p, int m);

// Membership in the group generated by X and Y: an element of the
// last-column subgroup times a power of X.
bool in_xy_subgroup(const StandardGenerators& gens, const UnipotentMatrix& u,
                    i64 p, int m, int k);

// The identification of the last-column subgroup with R[G]/I^{k+1},
// sending Y to 1 and Y_j to the class of (sigma-1)^j.
class LastColumnModule {
 public:
  LastColumnModule(int k, i64 p, int m, int n);

  const groupring::RingPtr& ring() const { return ring_; }
  int k() const { return k_; }
  i64 p() const { return p_; }
  int m() const { return m_; }
  int n() const { return n_; }

  // Coordinates of x modulo I^{k+1} in the (sigma-1)^j basis, j = 0..k.
  Vec coords(const groupring::GroupRingElement& x) const;
  UnipotentMatrix to_matrix(const Vec& coords) const;
  Vec from_matrix(const UnipotentMatrix& u) const;
  // Multiplication by sigma^e on coordinates.
  Vec sigma_mult(const Vec& coords, int e = 1) const;

  unsigned long long module_size() const;  // p^{m(k+1)} under the guard

 private:
  int k_;
  i64 p_;
  int m_, n_;
  groupring::RingPtr ring_;
  linalg::RowSpan ikp1_;                  // I^{k+1} inside R[G]
  std::vector<groupring::GroupRingElement> basis_;  // (sigma-1)^j
};

// Conjugation by the sigma-lift agrees with multiplication by sigma
// through the identification, on every module element.
bool action_intertwines(const LastColumnModule& iso);

// rho on an extension of C_{p^n} by a submodule of R[G]/I^{k+1}: the
// fiber maps through the identification and a lift of sigma goes to
// X + t E_{k+1,k+2}.  fiber_coords gives module coordinates for each
// fiber element index; gamma elements are (fiber, s) packed as
// fiber * p^n + s.
struct RhoBuild {
  std::vector<UnipotentMatrix> rho;
  bool homomorphism;
};
RhoBuild build_rho(const LastColumnModule& iso, const gcohom::GroupPtr& gamma,
                   const std::vector<Vec>& fiber_coords, i64 t);

}  // namespace cohomlab::unipotent
