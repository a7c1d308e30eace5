#include <tuple>

#include "cohomlab/massey.hpp"
#include "doctest.h"

using namespace cohomlab::massey;
using cohomlab::gcohom::GModule;
using cohomlab::linalg::Vec;
using cohomlab::linalg::i64;
namespace residue = cohomlab::residue;

namespace {

// U = R[G]/I^dep on the (sigma-1)^j coordinate basis, y = 1.
Instance truncated_regular(Params par, int dep, i64 t, int omega_level = -1) {
  std::vector<i64> orders(dep, par.pm());
  std::vector<Vec> sigma(dep, Vec(dep, 0));
  for (int j = 0; j < dep; ++j) {
    sigma[j][j] = 1;
    if (j > 0) sigma[j][j - 1] = 1;
  }
  Vec y(dep, 0);
  y[0] = 1;
  return Instance::create(par, orders, sigma, y, t, omega_level);
}

// Two sigma-chains of length 3 with y in the middle of the second.
Instance jordan_pair_instance() {
  Params par{3, 1, 1, 2};
  std::vector<i64> orders(6, 3);
  std::vector<Vec> sigma(6, Vec(6, 0));
  for (int b = 0; b < 2; ++b)
    for (int j = 0; j < 3; ++j) {
      int o = 3 * b + j;
      sigma[o][o] = 1;
      if (j > 0) sigma[o][o - 1] = 1;
    }
  Vec y(6, 0);
  y[4] = 1;
  return Instance::create(par, orders, sigma, y, 0);
}

}  // namespace

TEST_CASE("canonical kappa columns") {
  Params par{3, 1, 1, 2};
  std::vector<i64> chi{0, 1, 2};
  CHECK(canonical_kappa(chi, 1, 2, par) == std::vector<i64>{0, 1, 2});
  CHECK(canonical_kappa(chi, 1, 3, par) == std::vector<i64>{0, 0, 1});
  // Vandermonde convolution, condition (c) for the canonical system.
  residue::RingParams pr(3, 1);
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) {
      i64 lhs = residue::binom_mod((a + b) % 3, 2, pr).value;
      i64 rhs = 0;
      for (int l = 0; l <= 2; ++l)
        rhs += residue::binom_mod(a, l, pr).value *
               residue::binom_mod(b, 2 - l, pr).value;
      CHECK(lhs == cohomlab::linalg::mod_reduce(rhs, 3));
    }
}

TEST_CASE("generic defining system with distinct characters") {
  // Two projections of C_2 x C_2: the resulting cup cocycle is nonzero.
  auto v4 = cohomlab::gcohom::FiniteGroup::direct_product(
      cohomlab::gcohom::FiniteGroup::cyclic(2),
      cohomlab::gcohom::FiniteGroup::cyclic(2));
  Params par{2, 1, 1, 1};
  DefiningSystem ds{par, v4, {}};
  ds.kappa.assign(9, {});
  std::vector<i64> chi1(4), chi2(4);
  for (int x = 0; x < 4; ++x) {
    chi1[x] = x / 2;
    chi2[x] = x % 2;
  }
  ds.kappa[0 * 3 + 1] = chi1;  // position (1,2)
  ds.kappa[1 * 3 + 2] = chi2;  // position (2,3)
  std::string why;
  CHECK(ds.conditions_hold(chi1, chi2, &why));
  auto nu = massey_cocycle(ds);
  GModule coeff = GModule::trivial(v4, {2});
  CHECK(cohomlab::gcohom::is_cocycle2(coeff, nu));
  CHECK_FALSE(
      cohomlab::gcohom::h2_class_eq(coeff, nu, cohomlab::gcohom::zero2(coeff)));
  // A trivial second character gives the zero class (the map lifts).
  DefiningSystem ds0 = ds;
  ds0.kappa[1 * 3 + 2] = std::vector<i64>(4, 0);
  CHECK(ds0.conditions_hold(chi1, std::vector<i64>(4, 0), &why));
  auto nu0 = massey_cocycle(ds0);
  CHECK(cohomlab::gcohom::h2_class_eq(coeff, nu0,
                                      cohomlab::gcohom::zero2(coeff)));
}

TEST_CASE("cup product instance matches a directly built cocycle") {
  Params par{3, 1, 1, 1};
  auto inst = truncated_regular(par, 3, 1);
  auto res = compute_massey(inst);
  CHECK(res.proper);
  CHECK(res.obstruction_matches);
  CHECK(res.routes_agree_exact);
  CHECK(res.routes_agree_mod_p);
  CHECK_FALSE(res.class_is_zero);
  CHECK(res.twist_power == 2);
  // For k = 1 the defining-system cocycle is chi(q1) * lambda(q2).
  int nq = inst.q()->order();
  GModule coeff = GModule::trivial(inst.q(), {par.pm()});
  cohomlab::gcohom::Cochain2 cup;
  cup.values.resize(static_cast<size_t>(nq) * nq);
  for (int a = 0; a < nq; ++a)
    for (int b = 0; b < nq; ++b)
      cup.values[a * nq + b] = Vec{cohomlab::linalg::mod_reduce(
          (inst.chi()[a] % par.pm()) * inst.lambda()[b], par.pm())};
  CHECK(cohomlab::gcohom::is_cocycle2(coeff, cup));
  for (int a = 0; a < nq; ++a)
    for (int b = 0; b < nq; ++b)
      CHECK(res.nu.values[a * nq + b] == cup.values[a * nq + b]);
}

TEST_CASE("theorem grid: both routes agree modulo the ambiguity group") {
  for (auto [p, n, m, k, dep] :
       std::vector<std::tuple<i64, int, int, int, int>>{
           {3, 1, 1, 1, 2}, {3, 1, 1, 1, 3}, {3, 1, 1, 2, 3},
           {3, 2, 1, 1, 4}, {3, 2, 1, 2, 8}, {3, 2, 1, 3, 7},
           {3, 2, 2, 1, 3}, {3, 2, 2, 2, 3},
           {2, 3, 1, 1, 8}, {2, 3, 1, 2, 7}, {2, 3, 1, 3, 6}}) {
    Params par{p, n, m, k};
    for (i64 t : {i64{0}, i64{1}}) {
      auto inst = truncated_regular(par, dep, t);
      auto res = compute_massey(inst);
      CHECK(res.proper);
      CHECK(res.obstruction_matches);
      CHECK(res.routes_agree_exact);
      CHECK(res.routes_agree_mod_p);
      std::string why;
      CHECK(res.system.conditions_hold(inst.chi(), inst.lambda(), &why));
    }
  }
}

TEST_CASE("improper instance is reported, not computed") {
  // Omega model one level short: D^(k-1) y stays visible.
  Params par{3, 1, 1, 2};
  auto inst = truncated_regular(par, 3, 1, /*omega_level=*/1);
  auto res = compute_massey(inst);
  CHECK_FALSE(res.proper);
  CHECK(res.not_proper_reason.find("NotProper") == 0);
}

TEST_CASE("trivial unit module gives the zero class") {
  Params par{3, 1, 1, 1};
  auto inst = Instance::create(par, {3}, {{1}}, Vec{0}, 0);
  auto res = compute_massey(inst);
  CHECK(res.proper);
  CHECK(res.class_is_zero);
  // ... and every ambiguity group collapses.
  for (int level = 0; level <= 2; ++level)
    CHECK(ambiguity_group(inst, level).class_count == 1);
}

TEST_CASE("vanishing top derivative gives the zero class") {
  // depth-1 module: D^(k) y dies, so the transgressed class is zero.
  Params par{3, 1, 1, 1};
  auto inst = truncated_regular(par, 1, 0);
  CHECK(inst.d_apply(1, inst.y_raw()) == Vec{0});
  auto res = compute_massey(inst);
  CHECK(res.proper);
  CHECK(res.class_is_zero);
  CHECK(res.routes_agree_exact);
}

TEST_CASE("nonzero ambiguity group and the chain") {
  auto inst = jordan_pair_instance();
  auto res = compute_massey(inst);
  CHECK(res.proper);
  CHECK(res.routes_agree_mod_p);
  CHECK(res.ambiguity.class_count == 3);
  CHECK(ambiguity_chain_check(inst, 1));
  CHECK(ambiguity_chain_check(inst, 2));
  auto p0 = ambiguity_group(inst, 0);
  CHECK(p0.class_count == 1);
  CHECK(p0.generators.empty());
}

TEST_CASE("class does not depend on the lift of sigma") {
  Params par{3, 1, 1, 1};
  auto inst = truncated_regular(par, 3, 1);
  for (i64 c = 0; c < 3; ++c) {
    Vec shift(3, 0);
    shift[0] = c;
    CHECK(lift_independence_check(inst, shift));
    Vec shift2(3, 0);
    shift2[1] = c;
    CHECK(lift_independence_check(inst, shift2));
  }
  auto inst2 = truncated_regular(Params{3, 1, 1, 2}, 3, 1);
  Vec shift(3, 0);
  shift[2] = 1;
  CHECK(lift_independence_check(inst2, shift));
}

TEST_CASE("rescaling the root of unity") {
  CHECK(rescale_check(truncated_regular(Params{3, 1, 1, 1}, 3, 1), 2));
  CHECK(rescale_check(truncated_regular(Params{3, 1, 1, 2}, 3, 1), 2));
  CHECK(rescale_check(truncated_regular(Params{3, 2, 2, 2}, 3, 1), 2));
  CHECK(rescale_check(truncated_regular(Params{2, 3, 1, 2}, 7, 1), 3));
  CHECK_THROWS(rescale_check(truncated_regular(Params{3, 1, 1, 1}, 3, 1), 3));
}

TEST_CASE("y-variation moves the class inside the ambiguity group") {
  {
    Params par{3, 1, 1, 1};
    auto inst = truncated_regular(par, 3, 1);
    for (int c = 0; c < 3; ++c) {
      Vec x(3, 0);
      x[c] = 1;
      auto yv = y_variation_check(inst, x);
      if (yv.applicable) CHECK(yv.class_shift_in_ambiguity);
    }
  }
  {
    auto inst = jordan_pair_instance();
    Vec x(6, 0);
    x[3] = 1;  // head of the second chain
    auto yv = y_variation_check(inst, x);
    CHECK(yv.applicable);
    CHECK(yv.class_shift_in_ambiguity);
  }
}

TEST_CASE("compatibility maps") {
  {
    auto inst = truncated_regular(Params{3, 2, 2, 1}, 3, 1);
    auto r = compat_shrink_m(inst, 1);
    CHECK(r.applicable);
    CHECK(r.holds);
    auto r2 = compat_shrink_m(truncated_regular(Params{3, 2, 2, 2}, 3, 1), 1);
    CHECK(r2.applicable);
    CHECK(r2.holds);
  }
  {
    auto inst = truncated_regular(Params{2, 3, 1, 2}, 7, 1);
    auto r = compat_shrink_n(inst, 2);
    CHECK(r.applicable);
    CHECK(r.holds);
  }
  for (auto par : std::vector<Params>{{3, 1, 1, 1}, {3, 1, 1, 2}}) {
    auto inst = truncated_regular(par, 3, 1);
    auto r = compat_enlarge_omega(inst, 3);
    CHECK(r.applicable);
    CHECK(r.holds);
  }
}

TEST_CASE("ambiguity generators transgress by both routes") {
  auto inst = jordan_pair_instance();
  Vec x(6, 0);
  x[3] = 1;
  auto tp = transgress_character(inst, x, 1);
  CHECK(tp.invariant);
  CHECK(tp.routes_agree);
}
