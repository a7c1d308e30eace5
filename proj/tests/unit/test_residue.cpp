#include <vector>

#include "cohomlab/residue.hpp"
#include "doctest.h"

using namespace cohomlab::residue;

namespace {

// Pascal-recurrence oracle for C(a,k) mod M, independent of BigUint.
i64 pascal_mod(i64 a, i64 k, i64 M) {
  if (k > a) return 0;
  std::vector<i64> row(static_cast<size_t>(k) + 1, 0);
  row[0] = 1 % M;
  for (i64 i = 1; i <= a; ++i)
    for (i64 j = std::min(i, k); j >= 1; --j) row[j] = (row[j] + row[j - 1]) % M;
  return row[k];
}

}  // namespace

TEST_CASE("ring params validation") {
  CHECK_THROWS(RingParams(4, 1));
  CHECK_THROWS(RingParams(3, 0));
  CHECK_THROWS(RingParams(3, 2, 1));
  RingParams pr(3, 2, 3);
  CHECK(pr.coeff_modulus() == 9);
  CHECK(pr.character_modulus() == 27);
}

TEST_CASE("binom_mod pinned values") {
  CHECK(binom_mod(2, 2, RingParams(3, 1)).value == 1);
  CHECK(binom_mod(3, 1, RingParams(3, 2)).value == 3);
  // C(9,3) = 84, and 84 mod 9 = 3.
  CHECK(binom_mod(9, 3, RingParams(3, 2)).value == 3);
  CHECK(binom_mod(1, 5, RingParams(2, 1)).value == 0);
  CHECK(binom_mod(0, 0, RingParams(5, 1)).value == 1);
}

TEST_CASE("binom_mod agrees with Pascal oracle exhaustively") {
  for (auto [p, m] : std::vector<std::pair<i64, int>>{{2, 3}, {3, 2}, {5, 1}}) {
    RingParams pr(p, m);
    i64 M = pr.coeff_modulus();
    for (i64 a = 0; a <= 64; ++a)
      for (i64 k = 0; k <= a; ++k)
        CHECK(binom_mod(a, k, pr).value == pascal_mod(a, k, M));
  }
}

TEST_CASE("Pascal identity on binom_mod") {
  RingParams pr(3, 2);
  i64 M = pr.coeff_modulus();
  for (i64 a = 1; a <= 64; ++a)
    for (i64 k = 1; k <= a; ++k) {
      i64 lhs = binom_mod(a, k, pr).value;
      i64 rhs = (binom_mod(a - 1, k, pr).value + binom_mod(a - 1, k - 1, pr).value) % M;
      CHECK(lhs == rhs);
    }
}

TEST_CASE("valuations") {
  CHECK(vp(84, 3) == 1);
  CHECK(vp(1, 5) == 0);
  CHECK(vp(8, 2) == 3);
  CHECK(vp(-18, 3) == 2);
  CHECK_THROWS(vp(0, 3));
}

TEST_CASE("vp of binom(p^n, k) is n - vp(k)") {
  // Kummer's theorem consequence, checked by exact factorial valuations.
  for (auto [p, n] : std::vector<std::pair<i64, int>>{{2, 2}, {2, 3}, {2, 4},
                                                      {3, 2}, {3, 4}, {5, 1}}) {
    i64 pn = ipow(p, n);
    if (pn > 81) continue;
    auto fact_vp = [&](i64 a) {
      int e = 0;
      for (i64 q = p; q <= a; q *= p) e += static_cast<int>(a / q);
      return e;
    };
    for (i64 k = 1; k <= pn; ++k) {
      int v = fact_vp(pn) - fact_vp(k) - fact_vp(pn - k);
      CHECK(v == n - vp(k, p));
    }
  }
}

TEST_CASE("floor_log_p") {
  CHECK(floor_log_p(1, 3) == 0);
  CHECK(floor_log_p(9, 3) == 2);
  CHECK(floor_log_p(8, 3) == 1);
  CHECK(floor_log_p(8, 2) == 3);
  CHECK_THROWS(floor_log_p(0, 3));
  CHECK(floor_log_p_or0(0, 3) == 0);
  // Nondecreasing in k, and exact at powers of p.
  int last = 0;
  for (i64 k = 1; k <= 200; ++k) {
    int r = floor_log_p(k, 3);
    CHECK(r >= last);
    last = r;
  }
  for (int r = 0; r <= 4; ++r) CHECK(floor_log_p(ipow(3, r), 3) == r);
}
