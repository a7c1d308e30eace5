#include <random>
#include <set>
#include <tuple>

#include <map>

#include "cohomlab/unipotent.hpp"
#include "doctest.h"

using namespace cohomlab::unipotent;
using cohomlab::linalg::Vec;
using cohomlab::linalg::i64;
using cohomlab::residue::ipow;

TEST_CASE("standard generators for k = 1") {
  auto g = standard_generators(1, 2, 1);
  CHECK(g.x == UnipotentMatrix::elementary(3, 2, 1, 2, 1));
  CHECK(g.y == UnipotentMatrix::elementary(3, 2, 2, 3, 1));
  CHECK(g.z == UnipotentMatrix::elementary(3, 2, 1, 3, 1));
  CHECK(g.yi[0] == g.y);
  CHECK(g.yi[1] == g.z);
  // [X, Y] = I + E_13, by hand.
  UnipotentMatrix c = g.x * g.y * g.x.inverse() * g.y.inverse();
  CHECK(c == g.z);
}

TEST_CASE("matrix arithmetic is exact") {
  std::mt19937_64 rng(3);
  for (auto [p, m, k] : std::vector<std::tuple<i64, int, int>>{
           {2, 1, 2}, {3, 1, 3}, {3, 2, 2}, {2, 3, 4}}) {
    i64 mod = ipow(p, m);
    int dim = k + 2;
    for (int t = 0; t < 30; ++t) {
      UnipotentMatrix a(dim, mod), b(dim, mod);
      for (int i = 1; i <= dim; ++i)
        for (int j = i + 1; j <= dim; ++j) {
          a.set_entry(i, j, static_cast<i64>(rng() % mod));
          b.set_entry(i, j, static_cast<i64>(rng() % mod));
        }
      CHECK((a * b).inverse() == b.inverse() * a.inverse());
      CHECK((a * a.inverse()).is_identity());
      CHECK(a.power(3) == a * a * a);
    }
  }
}

TEST_CASE("commutator chain across the grid") {
  CHECK(commutator_chain_check(1, 2, 1));
  CHECK(commutator_chain_check(2, 3, 1));
  for (int k = 1; k <= 4; ++k)
    for (auto [p, m] :
         std::vector<std::pair<i64, int>>{{2, 1}, {2, 2}, {2, 3}, {3, 1}, {3, 2}})
      if (ipow(p, m) <= 9) CHECK(commutator_chain_check(k, p, m));
}

TEST_CASE("module identification") {
  for (auto [k, p, m, n] : std::vector<std::tuple<int, i64, int, int>>{
           {1, 3, 1, 1}, {2, 3, 1, 1}, {1, 3, 2, 2}, {2, 3, 2, 2},
           {3, 2, 1, 2}, {3, 3, 1, 2}, {2, 2, 1, 2}}) {
    LastColumnModule iso(k, p, m, n);
    // Y corresponds to 1 and Y_j to (sigma-1)^j.
    auto gens = standard_generators(k, p, m);
    CHECK(iso.to_matrix(iso.coords(iso.ring()->one())) == gens.y);
    for (int j = 0; j <= k; ++j) {
      Vec c = iso.coords(iso.ring()->sigma_minus_one_power(j));
      CHECK(iso.to_matrix(c) == gens.yi[j]);
    }
    // Module orders agree with the last-column subgroup size.
    CHECK(iso.module_size() ==
          static_cast<unsigned long long>(ipow(ipow(p, m), k + 1)));
    // Conjugation by X matches multiplication by sigma everywhere.
    CHECK(action_intertwines(iso));
  }
}

TEST_CASE("applying (rho(sigma)-1)^j to Y lands on Y_j") {
  for (auto [k, p, m, n] : std::vector<std::tuple<int, i64, int, int>>{
           {2, 3, 1, 1}, {3, 3, 1, 2}, {3, 2, 1, 2}}) {
    LastColumnModule iso(k, p, m, n);
    auto gens = standard_generators(k, p, m);
    for (int j = 0; j <= k; ++j) {
      auto elt = iso.ring()->sigma_minus_one_power(j) * iso.ring()->one();
      CHECK(iso.to_matrix(iso.coords(elt)) == gens.yi[j]);
    }
  }
}

TEST_CASE("X-order and the semidirect decomposition") {
  for (int k = 1; k <= 4; ++k)
    for (auto [p, m] :
         std::vector<std::pair<i64, int>>{{2, 1}, {2, 2}, {2, 3}, {3, 1}, {3, 2}}) {
      if (ipow(p, m) > 9) continue;
      auto gens = standard_generators(k, p, m);
      int rk = cohomlab::residue::floor_log_p_or0(k, p);
      i64 expect = ipow(p, m + rk);
      i64 t = 1;
      UnipotentMatrix xt = gens.x;
      while (!xt.in_last_column()) {
        xt = xt * gens.x;
        ++t;
      }
      CHECK(t == expect);
      // X^t is in fact the identity, so <X> is a complement.
      CHECK(xt.is_identity());
    }
}

TEST_CASE("closure of {X, Y} matches the product-form membership test") {
  for (auto [k, p, m] : std::vector<std::tuple<int, i64, int>>{
           {1, 2, 1}, {1, 3, 1}, {2, 2, 1}, {2, 3, 1}, {3, 2, 1}, {1, 3, 2}}) {
    auto gens = standard_generators(k, p, m);
    std::set<std::vector<i64>> seen;
    std::vector<UnipotentMatrix> queue{UnipotentMatrix(k + 2, ipow(p, m))};
    seen.insert(queue[0].key());
    while (!queue.empty()) {
      UnipotentMatrix u = queue.back();
      queue.pop_back();
      for (const auto& g : {gens.x, gens.y}) {
        UnipotentMatrix v = u * g;
        if (seen.insert(v.key()).second) queue.push_back(v);
        UnipotentMatrix w = u * g.inverse();
        if (seen.insert(w.key()).second) queue.push_back(w);
      }
    }
    int rk = cohomlab::residue::floor_log_p_or0(k, p);
    unsigned long long expect = 1;
    for (int j = 0; j <= k; ++j) expect *= ipow(p, m);
    expect *= static_cast<unsigned long long>(ipow(p, m + rk));
    CHECK(seen.size() == expect);
    std::mt19937_64 rng(99);
    for (int t = 0; t < 50; ++t) {
      UnipotentMatrix u(k + 2, ipow(p, m));
      for (int i = 1; i <= k + 2; ++i)
        for (int j = i + 1; j <= k + 2; ++j)
          u.set_entry(i, j, static_cast<i64>(rng() % ipow(p, m)));
      CHECK(in_xy_subgroup(gens, u, p, m, k) == (seen.count(u.key()) > 0));
    }
  }
}

TEST_CASE("build_rho on split extensions") {
  for (auto [k, p, m, n] : std::vector<std::tuple<int, i64, int, int>>{
           {1, 3, 1, 1}, {2, 3, 1, 1}, {1, 2, 1, 2}}) {
    LastColumnModule iso(k, p, m, n);
    int pn = static_cast<int>(ipow(p, n));
    i64 pm = ipow(p, m);
    int nfib = static_cast<int>(iso.module_size());
    std::vector<Vec> coords(nfib);
    {
      Vec c(k + 1, 0);
      for (int idx = 0;; ++idx) {
        coords[idx] = c;
        int t = 0;
        while (t <= k && ++c[t] == pm) c[t++] = 0;
        if (t > k) break;
      }
    }
    auto idx_of = [&](const Vec& c) {
      int idx = 0;
      for (int j = k; j >= 0; --j)
        idx = idx * static_cast<int>(pm) +
              static_cast<int>(cohomlab::linalg::mod_reduce(c[j], pm));
      return idx;
    };
    auto gamma = cohomlab::gcohom::FiniteGroup::from_mul(
        nfib * pn, [&](int a, int b) {
          int fa = a / pn, sa = a % pn, fb = b / pn, sb = b % pn;
          Vec sum = coords[fa];
          Vec moved = iso.sigma_mult(coords[fb], sa);
          for (int j = 0; j <= k; ++j)
            sum[j] = cohomlab::linalg::mod_reduce(sum[j] + moved[j], pm);
          return idx_of(sum) * pn + (sa + sb) % pn;
        });
    auto rb = build_rho(iso, gamma, coords, 0);
    CHECK(rb.homomorphism);
    auto rb1 = build_rho(iso, gamma, coords, 1);
    bool boundary = (k == ipow(p, n - m + 1) - 1);
    if (!boundary) CHECK(rb1.homomorphism);
    else CHECK_FALSE(rb1.homomorphism);  // split model inconsistent at t=1
  }
}

TEST_CASE("build_rho at the boundary with the twisted extension") {
  // (p,n,m) = (3,1,1), k = 2 = p^{n-m+1} - 1: sigma-tilde^{p^n} must land
  // on t * p^{m-1} (sigma-1)^k for homomorphy.
  LastColumnModule iso(2, 3, 1, 1);
  int k = 2, pn = 3;
  i64 pm = 3;
  int nfib = static_cast<int>(iso.module_size());
  std::vector<Vec> coords(nfib);
  {
    Vec c(k + 1, 0);
    for (int idx = 0;; ++idx) {
      coords[idx] = c;
      int t = 0;
      while (t <= k && ++c[t] == pm) c[t++] = 0;
      if (t > k) break;
    }
  }
  auto idx_of = [&](const Vec& c) {
    int idx = 0;
    for (int j = k; j >= 0; --j)
      idx = idx * 3 + static_cast<int>(cohomlab::linalg::mod_reduce(c[j], 3));
    return idx;
  };
  for (i64 t = 0; t < 3; ++t) {
    Vec v0(k + 1, 0);
    v0[2] = t;  // t * p^{m-1} (sigma-1)^2 with p^{m-1} = 1
    auto gamma = cohomlab::gcohom::FiniteGroup::from_mul(
        nfib * pn, [&](int a, int b) {
          int fa = a / pn, sa = a % pn, fb = b / pn, sb = b % pn;
          Vec sum = coords[fa];
          Vec moved = iso.sigma_mult(coords[fb], sa);
          for (int j = 0; j <= k; ++j)
            sum[j] = cohomlab::linalg::mod_reduce(sum[j] + moved[j], pm);
          if (sa + sb >= pn)
            for (int j = 0; j <= k; ++j)
              sum[j] = cohomlab::linalg::mod_reduce(sum[j] + v0[j], pm);
          return idx_of(sum) * pn + (sa + sb) % pn;
        });
    auto rb = build_rho(iso, gamma, coords, t);
    CHECK(rb.homomorphism);
    if (t != 0) {
      auto bad = build_rho(iso, gamma, coords, 0);
      CHECK_FALSE(bad.homomorphism);  // mismatched twist is rejected
    }
  }
}

TEST_CASE("conjugation module of the matrix extension matches the identification") {
  // Total group generated by X and Y; fiber the last-column subgroup.
  for (auto [k, p, m, n] : std::vector<std::tuple<int, i64, int, int>>{
           {1, 2, 1, 1}, {1, 3, 1, 1}, {2, 2, 1, 2}}) {
    LastColumnModule iso(k, p, m, n);
    auto gens = standard_generators(k, p, m);
    i64 pm = ipow(p, m);
    std::map<std::vector<i64>, int> index;
    std::vector<UnipotentMatrix> elems{UnipotentMatrix(k + 2, pm)};
    index[elems[0].key()] = 0;
    std::vector<UnipotentMatrix> queue = elems;
    while (!queue.empty()) {
      auto u = queue.back();
      queue.pop_back();
      for (const auto& g : {gens.x, gens.y})
        for (const auto& v : {u * g, u * g.inverse()})
          if (!index.count(v.key())) {
            index[v.key()] = static_cast<int>(elems.size());
            elems.push_back(v);
            queue.push_back(v);
          }
    }
    auto total = cohomlab::gcohom::FiniteGroup::from_mul(
        static_cast<int>(elems.size()),
        [&](int a, int b) { return index.at((elems[a] * elems[b]).key()); });
    // Fiber: the last-column subgroup in module coordinates.
    std::vector<cohomlab::linalg::i64> orders(k + 1, pm);
    int nfib = 1;
    for (int j = 0; j <= k; ++j) nfib *= static_cast<int>(pm);
    std::vector<int> embed(nfib);
    {
      Vec c(k + 1, 0);
      for (int idx = 0;; ++idx) {
        embed[idx] = index.at(iso.to_matrix(c).key());
        int t = 0;
        while (t <= k && ++c[t] == pm) c[t++] = 0;
        if (t > k) break;
      }
    }
    std::vector<int> nsub = embed;
    std::sort(nsub.begin(), nsub.end());
    auto quot = total->quotient_by(nsub);
    auto ext = cohomlab::gcohom::make_extension(total, quot.group, orders,
                                                embed, quot.proj, quot.reps);
    // Conjugation by the image of X acts as multiplication by sigma.
    int xq = quot.proj[index.at(gens.x.key())];
    for (int j = 0; j <= k; ++j) {
      Vec e(k + 1, 0);
      e[j] = 1;
      Vec conj = ext.fiber.act(xq, e);
      CHECK(conj == iso.sigma_mult(e));
    }
  }
}
