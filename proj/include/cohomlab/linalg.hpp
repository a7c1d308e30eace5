#pragma once

// Exact linear algebra over Z/L for composite L.
//
// Row spans are kept in Howell normal form, which is canonical for row
// spans over Z/L: two spans are equal iff their Howell bases are equal,
// and membership reduces a vector to a canonical residual.  Everything
// downstream (annihilators, duality, cocycle solving, graded pieces)
// sits on top of this engine.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace cohomlab::linalg {

using i64 = long long;
using Vec = std::vector<i64>;

i64 mod_reduce(i64 x, i64 L);
// g = gcd(a,b) together with u,v such that u*a + v*b = g.
i64 xgcd(i64 a, i64 b, i64& u, i64& v);
// Unit u mod L with u*g == gcd(g,L) (mod L).
i64 stabilizing_unit(i64 g, i64 L);
std::optional<i64> inverse_mod(i64 a, i64 L);

// Canonical Howell-form row span over (Z/L)^cols.
class RowSpan {
 public:
  RowSpan(i64 modulus, int cols);
  static RowSpan from_rows(i64 modulus, int cols, std::vector<Vec> rows);

  i64 modulus() const { return L_; }
  int cols() const { return cols_; }
  const std::vector<Vec>& basis() const { return rows_; }
  const std::vector<int>& pivot_cols() const { return pivots_; }

  bool contains(const Vec& v) const;
  // Canonical residual of v modulo the span.
  Vec reduce(Vec v) const;
  // Coefficients c with v == sum c_i * basis_i when v lies in the span.
  std::optional<Vec> coordinates(const Vec& v) const;

  unsigned long long size() const;  // number of elements in the span
  // Overflow-safe comparison against a bound.
  bool size_exceeds(unsigned long long bound) const;
  bool is_zero() const { return rows_.empty(); }

  RowSpan sum(const RowSpan& other) const;
  RowSpan intersect(const RowSpan& other) const;
  bool subspan_of(const RowSpan& other) const;
  bool operator==(const RowSpan& other) const;
  bool operator!=(const RowSpan& other) const { return !(*this == other); }

  std::string to_string() const;

 private:
  i64 L_;
  int cols_;
  std::vector<Vec> rows_;
  std::vector<int> pivots_;
};

// Solver for x * A = b over Z/L, where A has one row per unknown.
// Builds the Howell form of [A | I] once; solve/kernel are then cheap.
class LeftSolver {
 public:
  LeftSolver(i64 modulus, std::vector<Vec> a_rows);

  std::optional<Vec> solve(const Vec& b) const;
  const std::vector<Vec>& kernel() const { return kernel_; }

 private:
  i64 L_;
  int unknowns_;
  int eqs_;
  RowSpan aug_;
  std::vector<Vec> kernel_;
};

// Orders of the cyclic factors of span/sub, largest first.  `sub` must be
// a subspan of `span`; the quotient is a finite abelian p-ish group whose
// structure is recovered by counting p^j-torsion.
std::vector<i64> quotient_cyclic_orders(const RowSpan& span, const RowSpan& sub);

// Every element of the span, via triangular coordinates on the Howell
// basis.  Throws if the span has more than `guard` elements.
std::vector<Vec> enumerate_elements(const RowSpan& span,
                                    unsigned long long guard = 1u << 20);

unsigned long long quotient_size(const RowSpan& span, const RowSpan& sub);

}  // namespace cohomlab::linalg
