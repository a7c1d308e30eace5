#pragma once

// Arithmetic in Z/p^m: exact binomial coefficients, p-adic valuations,
// and the parameter triple (p, m, n) shared by the rest of the library.

#include <cstdint>
#include <optional>
#include <vector>

namespace cohomlab::residue {

using i64 = long long;

bool is_prime(i64 p);

// p prime, coefficient modulus p^m, optional character modulus p^n (m <= n).
struct RingParams {
  i64 p;
  int m;
  std::optional<int> n;

  RingParams(i64 p, int m);
  RingParams(i64 p, int m, int n);

  i64 coeff_modulus() const;           // p^m
  i64 character_modulus() const;       // p^n (requires n)
};

struct ResidueElement {
  i64 value;  // reduced into [0, p^m)
  RingParams params;

  ResidueElement(i64 v, RingParams pr);
  bool operator==(const ResidueElement& o) const {
    return value == o.value && params.p == o.params.p && params.m == o.params.m;
  }
};

// Nonnegative powers only; checks for i64 overflow.
i64 ipow(i64 base, int exp);

// Unsigned big integer, just enough for exact binomials at desk scale.
class BigUint {
 public:
  BigUint() = default;
  explicit BigUint(unsigned long long v);

  void mul_small(unsigned long long c);
  void divexact_small(unsigned long long c);
  unsigned long long mod_small(unsigned long long c) const;
  bool is_zero() const;
  bool divisible_by(unsigned long long c) const;

 private:
  std::vector<std::uint32_t> limbs_;  // little-endian base 2^32
};

// C(a, k) as an exact integer, reduced mod p^m.  k > a gives 0.
ResidueElement binom_mod(i64 a, i64 k, const RingParams& params);

// Largest e with p^e | x; x = 0 is rejected.
int vp(i64 x, i64 p);

// Largest r with p^r <= k; k >= 1 required.
int floor_log_p(i64 k, i64 p);
// Convention used throughout: the k = 0 case counts as 0.
int floor_log_p_or0(i64 k, i64 p);

}  // namespace cohomlab::residue
