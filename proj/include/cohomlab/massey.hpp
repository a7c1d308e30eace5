#pragma once

// Massey products over synthetic Kummer data: a finite coefficient module
// standing in for the unit group of the top field, a norm preimage y, and
// the character data (chi, lambda).  The ambient Galois group is modeled
// by an extension of a cyclic p-power group by the dual of the module;
// products are computed both through a proper defining system read off a
// unipotent representation and through the transgression of derivative
// characters, and compared modulo the ambiguity subgroup.
//
// All characters into roots of unity are normalized through the matrix
// coordinates of the unipotent representation (the class of D^(j)z pairs
// with sign (-1)^(j+1)); the twist indices of the coefficient modules are
// carried as labels.

#include <optional>
#include <string>
#include <vector>

#include "cohomlab/gcohom.hpp"
#include "cohomlab/groupring.hpp"
#include "cohomlab/linalg.hpp"
#include "cohomlab/residue.hpp"

namespace cohomlab::massey {

using gcohom::Cochain2;
using gcohom::GroupPtr;
using linalg::i64;
using linalg::RowSpan;
using linalg::Vec;

struct Params {
  i64 p;
  int n, m, k;
  i64 pn() const { return residue::ipow(p, n); }
  i64 pm() const { return residue::ipow(p, m); }
};

// The kappa array of a defining system: degree-1 tables on the quotient
// group for 1 <= i < j <= k+2 with (i,j) != (1,k+2), values mod p^m.
struct DefiningSystem {
  Params par;
  GroupPtr q;
  // kappa[(i-1)*(k+2) + (j-1)] is the table for position (i,j); unused
  // positions stay empty.
  std::vector<std::vector<i64>> kappa;

  const std::vector<i64>& at(int i, int j) const {
    return kappa[(i - 1) * (par.k + 2) + (j - 1)];
  }
  bool conditions_hold(const std::vector<i64>& chi,
                       const std::vector<i64>& lambda,
                       std::string* why = nullptr) const;
};

// Binomial coefficient column of the canonical defining system.
std::vector<i64> canonical_kappa(const std::vector<i64>& chi_table, int i,
                                 int j, const Params& par);

// The Massey 2-cocycle of a defining system.
Cochain2 massey_cocycle(const DefiningSystem& ds);

class Instance {
 public:
  // orders: cyclic orders of the module, each a power of p dividing p^m;
  // sigma: action matrix of the distinguished generator in raw
  // coordinates; y: module element, raw coordinates; t: the lambda value
  // of the distinguished lift.  omega_level selects the Omega model
  // (default k: roots of D^(j)y for j < k are visible); w0_override pins
  // the ambient extension datum in embedded dual coordinates.
  static Instance create(Params par, std::vector<i64> orders,
                         std::vector<Vec> sigma_raw, Vec y_raw, i64 t,
                         int omega_level = -1,
                         std::optional<Vec> w0_override = std::nullopt,
                         std::optional<RowSpan> delta_override = std::nullopt);

  const Params& params() const { return par_; }
  int rank() const { return rank_; }
  const std::vector<i64>& orders() const { return orders_; }
  const std::vector<Vec>& sigma_raw() const { return sigma_raw_; }
  Vec y_raw() const;
  i64 t() const { return t_; }
  const Vec& w0() const { return w0_; }
  int omega_level() const { return omega_level_; }

  // Module arithmetic in embedded coordinates (multiples of p^m/d_i).
  Vec u_reduce(Vec v) const;
  Vec act_sigma_pow(const Vec& v, long long e) const;
  // Sum of coeff[g] sigma^g v over the cyclic group.
  Vec apply_ring_element(const Vec& coeffs, const Vec& v) const;
  Vec d_apply(int j, const Vec& v, int generator = 1) const;
  Vec norm_apply(const Vec& v) const;
  i64 pair(const Vec& dual_x, const Vec& v) const;  // sum x_i v_i mod p^m

  // Dual-side arithmetic (embedded coordinates as well).
  Vec dual_act_sigma_pow(const Vec& x, long long e) const;
  const RowSpan& dual_full() const { return dual_full_; }
  const RowSpan& delta_omega() const { return delta_omega_; }
  const RowSpan& module_full() const { return u_full_; }

  // Span of the submodule generated by D^(level-1) y (level >= 1); the
  // Omega model makes exactly its roots visible.
  RowSpan visible_span(int level) const;

  // Quotient group data.
  const GroupPtr& q() const { return q_; }
  const std::vector<i64>& chi() const { return chi_; }
  const std::vector<i64>& lambda() const { return lambda_; }
  int vq_count() const { return static_cast<int>(vq_reps_.size()); }
  const Vec& vq_rep(int i) const { return vq_reps_[i]; }
  int q_index(const Vec& dual_reduced, int s) const;
  std::pair<Vec, int> q_decode(int qi) const;

  // Ambient group handles: dual element index * p^n + s.
  long long ambient_order() const;
  long long amb_mul(long long a, long long b) const;
  long long amb_inv(long long a) const;
  long long amb_pack(const Vec& dual_x, int s) const;
  Vec amb_dual(long long h) const;
  int amb_s(long long h) const { return static_cast<int>(h % par_.pn()); }
  int amb_to_q(long long h) const;
  long long q_section(int qi) const;

  // Properness of an element z at a given level: the characters of
  // D^(j) z for j <= level-2 vanish on the Omega model.
  bool element_proper(const Vec& z_embedded, int level) const;

 private:
  Instance() : dual_full_(2, 1), delta_omega_(2, 1), u_full_(2, 1) {}
  Params par_{};
  int rank_ = 0;
  std::vector<i64> orders_;
  std::vector<Vec> sigma_raw_;
  std::vector<std::vector<Vec>> sigma_pows_;       // embedded, index by power
  std::vector<std::vector<Vec>> dual_sigma_pows_;  // embedded dual action
  Vec y_;
  i64 t_ = 0;
  Vec w0_;
  int omega_level_ = 0;
  RowSpan dual_full_;
  RowSpan delta_omega_;
  RowSpan u_full_;
  std::vector<Vec> vq_reps_;
  std::vector<i64> chi_, lambda_;
  GroupPtr q_;
  groupring::RingPtr opring_;  // (Z/p^m)[C_{p^n}] for operator coefficients
};

struct TransgressionPair {
  Cochain2 cocycle;   // cochain-extension route
  Cochain2 pushout;   // pushout route
  bool routes_agree;
  bool invariant;
};

// Transgression of the normalized character of D^(level) z.
TransgressionPair transgress_character(const Instance& inst, const Vec& z,
                                       int level, int generator = 1);

// The ambiguity subgroup: B^2 plus the transgressions of D^(level)x for
// all x with D^(level-1)x invisible; level 0 gives B^2 alone.
struct AmbiguityGroup {
  RowSpan span;              // flattened, includes the coboundaries
  std::vector<Cochain2> generators;
  unsigned long long class_count;  // |span| / |B^2|
};
AmbiguityGroup ambiguity_group(const Instance& inst, int level);

struct MasseyResult {
  bool proper;
  std::string not_proper_reason;
  DefiningSystem system;
  Cochain2 nu;              // defining-system route
  Cochain2 tra;             // transgression route
  bool obstruction_matches; // nu equals minus the unipotent obstruction
  bool routes_agree_mod_p;  // nu == tra modulo the ambiguity group
  bool routes_agree_exact;  // nu and tra cohomologous on the nose
  bool class_is_zero;       // nu trivial modulo the ambiguity group
  AmbiguityGroup ambiguity;
  int twist_power;          // coefficient label mu^{k+1}, untwisted by k
};
MasseyResult compute_massey(const Instance& inst);

// Exact class independence of the choice of lift of sigma: shift the
// distinguished lift by the dual element x.
bool lift_independence_check(const Instance& inst, const Vec& dual_shift);

// Replacing zeta by zeta^j: the rebuilt instance, compared through the
// canonical group isomorphism, differs by the factor j^k mod ambiguity.
bool rescale_check(const Instance& inst, int j);

// y -> y + (sigma - 1) x moves the class by an ambiguity element.
struct YVariation {
  bool applicable;  // x satisfies the properness condition
  bool class_shift_in_ambiguity;
};
YVariation y_variation_check(const Instance& inst, const Vec& x_raw);

// Compatibility checks for parameter variation.
struct CompatResult {
  bool applicable;
  std::string detail;
  bool holds;
};
CompatResult compat_shrink_n(const Instance& inst, int n_prime);
CompatResult compat_shrink_m(const Instance& inst, int m_prime);
CompatResult compat_enlarge_omega(const Instance& inst, int extra_prime);

// P^(level) spans are nested.
bool ambiguity_chain_check(const Instance& inst, int level);

}  // namespace cohomlab::massey
