#pragma once

// Augmentation filtration of finite modules over a cyclic p-group: graded
// pieces, kernels of powers of (sigma - 1), decomposition-free quotients,
// and the finite-level isomorphism onto the top graded piece.

#include <vector>

#include "cohomlab/linalg.hpp"

namespace cohomlab::graded {

using linalg::i64;
using linalg::RowSpan;
using linalg::Vec;

// Finite abelian p-group with an action of sigma of p-power order.
class FilteredModule {
 public:
  FilteredModule(i64 p, std::vector<i64> orders, std::vector<Vec> sigma);

  i64 p() const { return p_; }
  int rank() const { return rank_; }
  const std::vector<i64>& orders() const { return orders_; }
  i64 modulus() const { return big_; }  // largest cyclic order
  int sigma_order_exp() const { return n_; }
  unsigned long long size() const;

  Vec reduce(Vec v) const;
  Vec act_sigma(const Vec& v) const;
  Vec shift(const Vec& v) const;  // (sigma - 1) v
  Vec shift_pow(Vec v, int k) const;

  Vec embed(const Vec& raw) const;
  // Span of (sigma-1)^k M in embedded coordinates; stabilizes at zero.
  RowSpan filtration(int k) const;
  int nilpotence_degree() const;  // least k with I^k M = 0

  // Kernel of (sigma-1)^k as an embedded span.
  RowSpan power_kernel(int k) const;
  // {a : (sigma-1)^k a in target + p^e M}, the congruence variant.
  RowSpan power_kernel_into(int k, const RowSpan& target_embedded,
                            int e) const;

  RowSpan full_span() const;
  RowSpan zero_span() const;
  RowSpan span_of(const std::vector<Vec>& raw_gens) const;  // sigma-closed

 private:
  i64 p_;
  int rank_;
  std::vector<i64> orders_;
  std::vector<Vec> sigma_;
  i64 big_;
  int n_;
  mutable std::vector<RowSpan> filt_;
};

// Cyclic orders of I^k M / I^{k+1} M; sigma acts trivially on each piece.
std::vector<i64> graded_piece(const FilteredModule& m, int k);

// a x sigma -> (sigma-1)a is well-defined and onto the next piece.
bool gr_surjection_check(const FilteredModule& m, int k);

// Orders of I^k M / (I^k D + I^{k+1} M) for a sigma-stable submodule D.
std::vector<i64> decomposition_free_quotient(const FilteredModule& m,
                                             const RowSpan& d_embedded,
                                             int k);

// The map a -> (sigma-1)^k a induces an isomorphism
// M / (ker(sigma-1)^k + I M)  ->  gr^k M.
struct MainIsoReport {
  bool kernel_matches;   // preimage of I^{k+1}M equals ker + I M
  bool surjective;       // image spans gr^k
  bool sizes_match;      // both sides have the same order
  unsigned long long side_order;
};
MainIsoReport mainthm_map_check(const FilteredModule& m, int k);

}  // namespace cohomlab::graded
