#include <random>

#include "cohomlab/graded.hpp"
#include "doctest.h"

using namespace cohomlab::graded;
using cohomlab::linalg::Vec;
using cohomlab::linalg::i64;

namespace {

// The group ring (Z/3)[C_3] on the (sigma-1)^j basis, truncated at depth.
FilteredModule truncated_c3(int depth) {
  std::vector<i64> orders(depth, 3);
  std::vector<Vec> sigma(depth, Vec(depth, 0));
  for (int j = 0; j < depth; ++j) {
    sigma[j][j] = 1;
    if (j > 0) sigma[j][j - 1] = 1;
  }
  return FilteredModule(3, orders, sigma);
}

// Deterministic random module over Z/p with unipotent lower-triangular
// sigma and arbitrary valid upper entries.
FilteredModule random_module(std::mt19937_64& rng, i64 p, int max_rank,
                             int max_exp) {
  int r = 1 + static_cast<int>(rng() % max_rank);
  std::vector<i64> orders(r);
  for (auto& d : orders) {
    int e = 1 + static_cast<int>(rng() % max_exp);
    d = 1;
    for (int i = 0; i < e; ++i) d *= p;
  }
  std::sort(orders.begin(), orders.end(), std::greater<i64>());
  std::vector<Vec> sigma(r, Vec(r, 0));
  for (int i = 0; i < r; ++i) sigma[i][i] = 1;
  for (int j = 0; j < r; ++j)
    for (int i = 0; i < r; ++i) {
      if (i == j) continue;
      // rows with smaller order accept anything; otherwise multiples of
      // orders[j]/orders[i] keep the matrix well-defined
      i64 step = orders[j] % orders[i] == 0 ? orders[j] / orders[i] : 1;
      if (orders[j] < orders[i]) step = 1;
      if (j > i) {
        sigma[j][i] = static_cast<i64>(rng() % orders[j]);  // lower part
      } else if (rng() % 3 == 0) {
        sigma[j][i] = step * static_cast<i64>(rng() % (orders[j] / step));
      }
    }
  // Force unipotence mod p so the order is a p-power.
  for (int j = 0; j < r; ++j)
    for (int i = 0; i < r; ++i)
      if (i != j && j < i) sigma[j][i] = sigma[j][i] - (sigma[j][i] % p);
  return FilteredModule(p, orders, sigma);
}

}  // namespace

TEST_CASE("filtration of the truncated group ring") {
  auto m = truncated_c3(2);  // R[C_3]/I^2
  CHECK(graded_piece(m, 0) == std::vector<i64>{3});
  CHECK(graded_piece(m, 1) == std::vector<i64>{3});
  CHECK(graded_piece(m, 2).empty());
  CHECK(m.nilpotence_degree() == 2);
  // Trivial action: gr^0 is everything.
  FilteredModule triv(3, {9, 3}, {{1, 0}, {0, 1}});
  CHECK(graded_piece(triv, 0) == std::vector<i64>{9, 3});
  CHECK(graded_piece(triv, 1).empty());
}

TEST_CASE("telescoping product of graded orders") {
  std::mt19937_64 rng(4242);
  for (int trial = 0; trial < 60; ++trial) {
    i64 p = (trial % 2 == 0) ? 3 : 2;
    auto m = random_module(rng, p, 4, 2);
    if (m.size() > 729) continue;
    unsigned long long prod = 1;
    for (int k = 0; k <= m.nilpotence_degree(); ++k)
      for (i64 d : graded_piece(m, k)) prod *= static_cast<unsigned long long>(d);
    CHECK(prod == m.size());
    // Finiteness cascade: once a piece dies they all do.
    bool dead = false;
    for (int k = 0; k <= m.nilpotence_degree() + 2; ++k) {
      bool empty = graded_piece(m, k).empty();
      if (dead) CHECK(empty);
      if (empty) dead = true;
    }
  }
}

TEST_CASE("gr surjection") {
  auto m = truncated_c3(3);
  for (int k = 0; k <= 4; ++k) CHECK(gr_surjection_check(m, k));
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 40; ++trial) {
    auto mm = random_module(rng, 3, 4, 2);
    for (int k = 0; k <= 5; ++k) CHECK(gr_surjection_check(mm, k));
  }
}

TEST_CASE("power kernels") {
  auto m = truncated_c3(3);  // full (Z/3)[C_3]
  // (sigma-1)^0 has trivial kernel; deep powers swallow everything.
  CHECK(m.power_kernel(0).size() == 1);
  CHECK(m.power_kernel(5).size() == m.size());
  // k = 1: the kernel is the image of (sigma-1)^2, of order 3.
  CHECK(m.power_kernel(1).size() == 3);
  CHECK(m.power_kernel(1) == m.filtration(2));
  // Congruence variant: allowing p^1 M recovers more elements.
  auto big = m.power_kernel_into(1, m.zero_span(), 1);
  CHECK(big.size() >= m.power_kernel(1).size());
}

TEST_CASE("decomposition-free quotients") {
  auto m = truncated_c3(3);
  // D = 0 gives the graded piece back.
  for (int k = 0; k <= 2; ++k)
    CHECK(decomposition_free_quotient(m, m.zero_span(), k) ==
          graded_piece(m, k));
  // D = M kills everything.
  for (int k = 0; k <= 2; ++k)
    CHECK(decomposition_free_quotient(m, m.full_span(), k).empty());
  // A middle sigma-stable D.
  Vec gen(3, 0);
  gen[1] = 1;  // (sigma-1) generator
  auto d = m.span_of({gen});
  auto q0 = decomposition_free_quotient(m, d, 0);
  CHECK(!q0.empty());
}

TEST_CASE("main isomorphism skeleton: pinned case") {
  auto m = truncated_c3(3);
  auto rep = mainthm_map_check(m, 1);
  CHECK(rep.kernel_matches);
  CHECK(rep.surjective);
  CHECK(rep.sizes_match);
  CHECK(rep.side_order == 3);
  // k = 0 is the identity statement.
  auto rep0 = mainthm_map_check(m, 0);
  CHECK(rep0.kernel_matches);
  CHECK(rep0.surjective);
  CHECK(rep0.sizes_match);
}

TEST_CASE("main isomorphism skeleton: random modules") {
  std::mt19937_64 rng(20240801);
  int done = 0;
  while (done < 100) {
    i64 p = (done % 3 == 0) ? 2 : 3;
    auto m = random_module(rng, p, 4, 2);
    if (m.size() > 729) continue;
    ++done;
    for (int k = 0; k <= 4; ++k) {
      auto rep = mainthm_map_check(m, k);
      CHECK(rep.kernel_matches);
      CHECK(rep.surjective);
      CHECK(rep.sizes_match);
    }
  }
}
