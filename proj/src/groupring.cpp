#include "cohomlab/groupring.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace cohomlab::groupring {

using residue::ipow;

FiniteGroupSpec FiniteGroupSpec::cyclic(int order) {
  if (order < 1) throw std::invalid_argument("cyclic: order must be >= 1");
  FiniteGroupSpec g;
  g.order_ = order;
  g.cyclic_ = true;
  g.table_.assign(order, std::vector<int>(order));
  for (int a = 0; a < order; ++a)
    for (int b = 0; b < order; ++b) g.table_[a][b] = (a + b) % order;
  g.name_ = "C" + std::to_string(order);
  g.finish_init();
  return g;
}

FiniteGroupSpec FiniteGroupSpec::direct_product(
    const std::vector<int>& cyclic_orders) {
  long long order = 1;
  for (int d : cyclic_orders) {
    if (d < 1) throw std::invalid_argument("direct_product: bad factor");
    order *= d;
  }
  if (order > 4096) throw std::invalid_argument("direct_product: too large");
  FiniteGroupSpec g;
  g.order_ = static_cast<int>(order);
  g.cyclic_ = cyclic_orders.size() == 1;
  auto decode = [&](int x) {
    std::vector<int> t(cyclic_orders.size());
    for (size_t i = 0; i < cyclic_orders.size(); ++i) {
      t[i] = x % cyclic_orders[i];
      x /= cyclic_orders[i];
    }
    return t;
  };
  auto encode = [&](const std::vector<int>& t) {
    int x = 0;
    for (size_t i = cyclic_orders.size(); i-- > 0;)
      x = x * cyclic_orders[i] + t[i];
    return x;
  };
  g.table_.assign(g.order_, std::vector<int>(g.order_));
  for (int a = 0; a < g.order_; ++a)
    for (int b = 0; b < g.order_; ++b) {
      auto ta = decode(a), tb = decode(b);
      for (size_t i = 0; i < ta.size(); ++i)
        ta[i] = (ta[i] + tb[i]) % cyclic_orders[i];
      g.table_[a][b] = encode(ta);
    }
  std::ostringstream nm;
  for (size_t i = 0; i < cyclic_orders.size(); ++i)
    nm << (i ? "x" : "") << "C" << cyclic_orders[i];
  g.name_ = nm.str();
  g.finish_init();
  return g;
}

FiniteGroupSpec FiniteGroupSpec::from_table(
    std::vector<std::vector<int>> table) {
  FiniteGroupSpec g;
  g.order_ = static_cast<int>(table.size());
  g.table_ = std::move(table);
  g.name_ = "table" + std::to_string(g.order_);
  g.finish_init();
  return g;
}

void FiniteGroupSpec::finish_init() {
  int n = order_;
  if (static_cast<int>(table_.size()) != n)
    throw std::invalid_argument("group table: wrong size");
  for (const auto& row : table_) {
    if (static_cast<int>(row.size()) != n)
      throw std::invalid_argument("group table: ragged row");
    for (int x : row)
      if (x < 0 || x >= n)
        throw std::invalid_argument("group table: bad entry");
  }
  for (int a = 0; a < n; ++a)
    if (table_[0][a] != a || table_[a][0] != a)
      throw std::invalid_argument("group table: 0 is not an identity");
  if (n <= 512) {
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c)
          if (table_[table_[a][b]][c] != table_[a][table_[b][c]])
            throw std::invalid_argument("group table: not associative");
  }
  inv_.assign(n, -1);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b)
      if (table_[a][b] == 0 && table_[b][a] == 0) {
        inv_[a] = b;
        break;
      }
    if (inv_[a] < 0)
      throw std::invalid_argument("group table: missing inverse");
  }
}

GroupRing::GroupRing(FiniteGroupSpec group, i64 modulus,
                     std::optional<residue::RingParams> params)
    : group_(std::move(group)), modulus_(modulus), params_(std::move(params)) {
  if (modulus_ < 2) throw std::invalid_argument("GroupRing: modulus >= 2");
}

RingPtr GroupRing::create(FiniteGroupSpec group, i64 modulus) {
  std::optional<residue::RingParams> params;
  i64 p = 0;
  for (i64 d = 2; d * d <= modulus; ++d)
    if (modulus % d == 0) {
      p = d;
      break;
    }
  if (p == 0) p = modulus;  // modulus prime
  i64 q = modulus;
  int m = 0;
  while (q % p == 0) q /= p, ++m;
  if (q == 1) params.emplace(p, m);
  return RingPtr(new GroupRing(std::move(group), modulus, params));
}

RingPtr GroupRing::cyclic_p(const residue::RingParams& params) {
  if (!params.n) throw std::invalid_argument("cyclic_p: need n");
  int pn = static_cast<int>(params.character_modulus());
  return RingPtr(new GroupRing(FiniteGroupSpec::cyclic(pn),
                               params.coeff_modulus(), params));
}

GroupRingElement GroupRing::zero() const {
  return GroupRingElement(shared_from_this(), Vec(group_.order(), 0));
}

GroupRingElement GroupRing::one() const { return basis(0); }

GroupRingElement GroupRing::basis(int g, i64 c) const {
  Vec v(group_.order(), 0);
  v[g] = linalg::mod_reduce(c, modulus_);
  return GroupRingElement(shared_from_this(), std::move(v));
}

GroupRingElement GroupRing::from_coeffs(Vec coeffs) const {
  return GroupRingElement(shared_from_this(), std::move(coeffs));
}

GroupRingElement GroupRing::norm_element() const {
  return GroupRingElement(shared_from_this(), Vec(group_.order(), 1));
}

GroupRingElement GroupRing::sigma_minus_one_power(int k, int j) const {
  if (!group_.is_cyclic())
    throw std::invalid_argument("sigma_minus_one_power: cyclic groups only");
  GroupRingElement acc = one();
  int sj = static_cast<int>(linalg::mod_reduce(j, group_.order()));
  GroupRingElement factor = basis(sj) - one();
  for (int t = 0; t < k; ++t) acc = acc * factor;
  return acc;
}

GroupRingElement::GroupRingElement(RingPtr ring, Vec coeffs)
    : ring_(std::move(ring)), coeffs_(std::move(coeffs)) {
  if (static_cast<int>(coeffs_.size()) != ring_->group().order())
    throw std::invalid_argument("GroupRingElement: coefficient count");
  for (auto& c : coeffs_) c = linalg::mod_reduce(c, ring_->modulus());
}

GroupRingElement GroupRingElement::operator+(const GroupRingElement& o) const {
  Vec v(coeffs_);
  for (size_t i = 0; i < v.size(); ++i)
    v[i] = linalg::mod_reduce(v[i] + o.coeffs_[i], ring_->modulus());
  return GroupRingElement(ring_, std::move(v));
}

GroupRingElement GroupRingElement::operator-(const GroupRingElement& o) const {
  Vec v(coeffs_);
  for (size_t i = 0; i < v.size(); ++i)
    v[i] = linalg::mod_reduce(v[i] - o.coeffs_[i], ring_->modulus());
  return GroupRingElement(ring_, std::move(v));
}

GroupRingElement GroupRingElement::operator*(const GroupRingElement& o) const {
  const auto& G = ring_->group();
  Vec v(coeffs_.size(), 0);
  for (int a = 0; a < G.order(); ++a) {
    if (coeffs_[a] == 0) continue;
    for (int b = 0; b < G.order(); ++b) {
      if (o.coeffs_[b] == 0) continue;
      int ab = G.mul(a, b);
      v[ab] = linalg::mod_reduce(v[ab] + coeffs_[a] * o.coeffs_[b],
                                 ring_->modulus());
    }
  }
  return GroupRingElement(ring_, std::move(v));
}

GroupRingElement GroupRingElement::scaled(i64 c) const {
  Vec v(coeffs_);
  for (auto& x : v) x = linalg::mod_reduce(x * c, ring_->modulus());
  return GroupRingElement(ring_, std::move(v));
}

bool GroupRingElement::operator==(const GroupRingElement& o) const {
  return coeffs_ == o.coeffs_;
}

bool GroupRingElement::is_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(),
                     [](i64 c) { return c == 0; });
}

i64 GroupRingElement::augmentation() const {
  i64 s = 0;
  for (i64 c : coeffs_) s += c;
  return linalg::mod_reduce(s, ring_->modulus());
}

std::string GroupRingElement::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (size_t g = 0; g < coeffs_.size(); ++g) {
    if (coeffs_[g] == 0) continue;
    if (!first) os << " + ";
    first = false;
    os << coeffs_[g];
    if (g > 0) os << "*g" << g;
  }
  if (first) os << "0";
  return os.str();
}

Submodule::Submodule(RingPtr ring, RowSpan span)
    : ring_(std::move(ring)), span_(std::move(span)) {}

Submodule Submodule::zero(RingPtr ring) {
  int n = ring->group().order();
  i64 N = ring->modulus();
  return Submodule(std::move(ring), RowSpan::from_rows(N, n, {}));
}

Submodule Submodule::full(RingPtr ring) {
  int n = ring->group().order();
  i64 N = ring->modulus();
  std::vector<Vec> rows;
  for (int g = 0; g < n; ++g) {
    Vec r(n, 0);
    r[g] = 1;
    rows.push_back(std::move(r));
  }
  return Submodule(std::move(ring), RowSpan::from_rows(N, n, std::move(rows)));
}

Submodule Submodule::generated_by(RingPtr ring,
                                  const std::vector<GroupRingElement>& gens) {
  const auto& G = ring->group();
  std::vector<Vec> rows;
  for (const auto& x : gens) {
    for (int g = 0; g < G.order(); ++g) {
      // (g*x)_h = x_{g^{-1}h}
      Vec r(G.order());
      for (int h = 0; h < G.order(); ++h) r[h] = x.coeff(G.mul(G.inv(g), h));
      rows.push_back(std::move(r));
    }
  }
  return Submodule(
      ring, RowSpan::from_rows(ring->modulus(), G.order(), std::move(rows)));
}

bool Submodule::contains(const GroupRingElement& x) const {
  return span_.contains(x.coeffs());
}

Submodule Submodule::sum(const Submodule& o) const {
  return Submodule(ring_, span_.sum(o.span_));
}

Submodule Submodule::intersect(const Submodule& o) const {
  return Submodule(ring_, span_.intersect(o.span_));
}

std::vector<GroupRingElement> Submodule::basis_elements() const {
  std::vector<GroupRingElement> out;
  for (const auto& r : span_.basis()) out.push_back(ring_->from_coeffs(r));
  return out;
}

GroupRingElement apply_inversion(const GroupRingElement& x) {
  const auto& G = x.ring()->group();
  Vec v(G.order());
  for (int g = 0; g < G.order(); ++g) v[G.inv(g)] = x.coeff(g);
  return GroupRingElement(x.ring(), std::move(v));
}

Submodule left_annihilator(const Submodule& j) {
  const RingPtr& ring = j.ring();
  const auto& G = ring->group();
  int n = G.order();
  // Solve x * iota(b) = 0 for all additive basis elements b of J.
  const auto& basis = j.span().basis();
  int eqs = static_cast<int>(basis.size()) * n;
  std::vector<Vec> sys(n, Vec(eqs, 0));
  for (size_t bi = 0; bi < basis.size(); ++bi) {
    GroupRingElement ib = apply_inversion(ring->from_coeffs(basis[bi]));
    for (int g = 0; g < n; ++g)
      for (int a = 0; a < n; ++a) {
        if (ib.coeff(a) == 0) continue;
        int eq = static_cast<int>(bi) * n + G.mul(g, a);
        sys[g][eq] =
            linalg::mod_reduce(sys[g][eq] + ib.coeff(a), ring->modulus());
      }
  }
  linalg::LeftSolver solver(ring->modulus(), sys);
  std::vector<GroupRingElement> gens;
  for (const auto& k : solver.kernel()) gens.push_back(ring->from_coeffs(k));
  return Submodule::generated_by(ring, gens);
}

DualityData duality_map(const Submodule& j) {
  const RingPtr& ring = j.ring();
  const auto& G = ring->group();
  i64 N = ring->modulus();
  int n = G.order();
  // A character of R[G]/J valued in (1/N)Z/Z is a vector a with
  // sum_g a_g x_g = 0 for every x in J.
  const auto& basis = j.span().basis();
  std::vector<Vec> sys(n, Vec(basis.size(), 0));
  for (int g = 0; g < n; ++g)
    for (size_t bi = 0; bi < basis.size(); ++bi) sys[g][bi] = basis[bi][g];
  linalg::LeftSolver solver(N, sys);
  RowSpan chars = RowSpan::from_rows(N, n, solver.kernel());
  Submodule characters(ring, chars);
  Submodule ann = left_annihilator(j);

  // phi(f) = sum f(g) g is the identity on coefficient vectors, so the
  // bijection claim is span equality; check the character span is also
  // stable under the left action (h.f)(g) = f(h^{-1} g).
  bool ok = characters.span() == ann.span();
  for (const auto& f : chars.basis()) {
    if (!ok) break;
    for (int h = 1; h < n && ok; ++h) {
      Vec hf(n);
      for (int g = 0; g < n; ++g) hf[g] = f[G.mul(G.inv(h), g)];
      ok = chars.contains(hf);
    }
  }
  return DualityData{characters, ann, ok};
}

GroupRingElement d_operator(const RingPtr& ring, int k) {
  return d_operator_generator(ring, k, 1);
}

GroupRingElement d_operator_generator(const RingPtr& ring, int k, int j) {
  if (!ring->group().is_cyclic() || !ring->params())
    throw std::invalid_argument("d_operator: need cyclic p-power group");
  const auto& G = ring->group();
  int pn = G.order();
  i64 p = ring->params()->p;
  {
    int q = pn;
    while (q > 1) {
      if (q % p != 0)
        throw std::invalid_argument("d_operator: group order not a p-power");
      q = static_cast<int>(q / p);
    }
  }
  if (k < 0 || k > pn - 1) throw std::invalid_argument("d_operator: bad k");
  if (std::gcd(static_cast<i64>(j), p) != 1)
    throw std::invalid_argument("d_operator: generator index not a unit");
  residue::RingParams pr(p, ring->params()->m);
  Vec v(pn, 0);
  i64 sign = (k % 2 == 0) ? 1 : -1;
  for (int i = 0; i < pn; ++i) {
    i64 c = residue::binom_mod(i, k, pr).value;
    if (c == 0) continue;
    long long e = static_cast<long long>(j) * (i - k);
    int g = static_cast<int>(linalg::mod_reduce(e, pn));
    v[g] = linalg::mod_reduce(v[g] + sign * c, ring->modulus());
  }
  return ring->from_coeffs(std::move(v));
}

std::vector<long long> d_operator_integer(i64 p, int n, int k) {
  i64 pn = ipow(p, n);
  std::vector<long long> v(pn, 0);
  long long sign = (k % 2 == 0) ? 1 : -1;
  for (i64 i = k; i < pn; ++i) {
    residue::BigUint acc(1);
    for (i64 t = 1; t <= k; ++t) {
      acc.mul_small(static_cast<unsigned long long>(i - k + t));
      acc.divexact_small(static_cast<unsigned long long>(t));
    }
    unsigned long long c = acc.mod_small(0x7fffffffffffffffULL);
    int g = static_cast<int>(linalg::mod_reduce(i - k, pn));
    v[g] += sign * static_cast<long long>(c);
  }
  return v;
}

namespace {

using Wide = __int128;

std::vector<Wide> zg_mul(const std::vector<Wide>& a, const std::vector<Wide>& b,
                         int pn) {
  std::vector<Wide> out(pn, 0);
  for (int i = 0; i < pn; ++i) {
    if (a[i] == 0) continue;
    for (int j = 0; j < pn; ++j) out[(i + j) % pn] += a[i] * b[j];
  }
  return out;
}

std::vector<Wide> to_wide(const std::vector<long long>& v) {
  return std::vector<Wide>(v.begin(), v.end());
}

bool all_divisible(const std::vector<Wide>& v, i64 q) {
  for (Wide x : v)
    if (x % q != 0) return false;
  return true;
}

long long exact_binom_ll(i64 a, i64 k) {
  residue::BigUint acc(1);
  for (i64 t = 1; t <= k; ++t) {
    acc.mul_small(static_cast<unsigned long long>(a - k + t));
    acc.divexact_small(static_cast<unsigned long long>(t));
  }
  return static_cast<long long>(acc.mod_small(0x7fffffffffffffffULL));
}

}  // namespace

DkIdentityResult dk_recursion_check(i64 p, int n, int k, int j) {
  i64 pn = ipow(p, n);
  if (k < 1 || k > pn - 1 || j < 1 || j > k)
    throw std::invalid_argument("dk_recursion_check: bad (k, j)");
  int N = static_cast<int>(pn);
  std::vector<Wide> one(N, 0), sm1(N, 0);
  one[0] = 1;
  sm1[1 % N] += 1;
  sm1[0] -= 1;

  auto dk = to_wide(d_operator_integer(p, n, k));
  auto dk1 = to_wide(d_operator_integer(p, n, k - 1));
  DkIdentityResult res{};

  {
    auto lhs = zg_mul(sm1, dk, N);
    std::vector<Wide> resid(N);
    long long c = exact_binom_ll(pn, k);
    Wide sign = (k % 2 == 0) ? 1 : -1;
    int g = static_cast<int>(linalg::mod_reduce(-k, pn));
    for (int i = 0; i < N; ++i) resid[i] = lhs[i] - dk1[i];
    resid[g] -= sign * c;
    res.first_exact =
        std::all_of(resid.begin(), resid.end(), [](Wide x) { return x == 0; });
    std::vector<Wide> cong(N);
    for (int i = 0; i < N; ++i) cong[i] = lhs[i] - dk1[i];
    res.first_congruence = all_divisible(cong, ipow(p, n - residue::vp(k, p)));
  }

  {
    auto dkj = to_wide(d_operator_integer(p, n, k - j));
    std::vector<Wide> lhs = dk;
    for (int t = 0; t < j; ++t) lhs = zg_mul(sm1, lhs, N);
    std::vector<Wide> sinv_m1(N, 0);
    sinv_m1[(N - 1) % N] += 1;
    sinv_m1[0] -= 1;
    std::vector<Wide> tail(N, 0);
    for (int i = 0; i <= j - 1; ++i) {
      std::vector<Wide> term(N, 0);
      term[0] = exact_binom_ll(pn, k - i);
      for (int t = 0; t < j - 1 - i; ++t) term = zg_mul(term, sinv_m1, N);
      for (int g = 0; g < N; ++g) tail[g] += term[g];
    }
    int e = j - 1 - k;
    Wide sign = (((e % 2) + 2) % 2 == 0) ? 1 : -1;
    int shift = static_cast<int>(linalg::mod_reduce(e, pn));
    std::vector<Wide> rhs(N, 0);
    for (int g = 0; g < N; ++g) rhs[(g + shift) % N] += sign * tail[g];
    for (int g = 0; g < N; ++g) rhs[g] += dkj[g];
    std::vector<Wide> resid(N);
    for (int g = 0; g < N; ++g) resid[g] = lhs[g] - rhs[g];
    res.second_exact =
        std::all_of(resid.begin(), resid.end(), [](Wide x) { return x == 0; });
    std::vector<Wide> cong(N);
    for (int g = 0; g < N; ++g) cong[g] = lhs[g] - dkj[g];
    res.second_congruence =
        all_divisible(cong, ipow(p, n - residue::floor_log_p(k, p)));
  }
  return res;
}

Submodule aug_power(const RingPtr& ring, int k) {
  const auto& G = ring->group();
  if (k == 0) return Submodule::full(ring);
  if (G.is_cyclic())
    return Submodule::generated_by(ring, {ring->sigma_minus_one_power(k)});
  std::vector<GroupRingElement> gens;
  for (int g = 1; g < G.order(); ++g)
    gens.push_back(ring->basis(g) - ring->one());
  Submodule aug1 = Submodule::generated_by(ring, gens);
  Submodule acc = aug1;
  for (int t = 1; t < k; ++t) {
    if (acc.span().basis().empty()) break;
    std::vector<GroupRingElement> prods;
    for (const auto& a : acc.basis_elements())
      for (const auto& b : aug1.basis_elements()) prods.push_back(a * b);
    acc = Submodule::generated_by(ring, prods);
  }
  return acc;
}

bool auggen_check(i64 p, int n, int m, int k) {
  int rk = residue::floor_log_p_or0(k, p);
  if (m + rk > n || k > ipow(p, n - m + 1) - 1 || k < 0)
    throw std::invalid_argument("auggen_check: parameters out of range");
  auto ring = GroupRing::cyclic_p(residue::RingParams(p, m, n));
  Submodule lhs = Submodule::generated_by(ring, {d_operator(ring, k)});
  Submodule rhs = left_annihilator(aug_power(ring, k + 1));
  return lhs == rhs;
}

GroupRingElement project_to_quotient(const GroupRingElement& x,
                                     const RingPtr& target) {
  const auto& G = x.ring()->group();
  int pn = G.order();
  int ph = target->group().order();
  if (!G.is_cyclic() || !target->group().is_cyclic() || pn % ph != 0)
    throw std::invalid_argument("project_to_quotient: bad quotient");
  Vec v(ph, 0);
  for (int i = 0; i < pn; ++i)
    v[i % ph] = linalg::mod_reduce(v[i % ph] + x.coeff(i), target->modulus());
  return target->from_coeffs(std::move(v));
}

TrivimageResult trivimage_check(i64 p, int n, int m, int k) {
  if (m < 1 || n < 1 || m > n || k < 0 || k > ipow(p, n - m + 1) - 1)
    throw std::invalid_argument("trivimage_check: bad parameters");
  auto ring = GroupRing::cyclic_p(residue::RingParams(p, m, n));
  auto target = GroupRing::create(
      FiniteGroupSpec::cyclic(static_cast<int>(ipow(p, n - m))),
      ring->modulus());
  GroupRingElement lhs = project_to_quotient(d_operator(ring, k), target);
  i64 threshold = ipow(p, n - m) * (p - 1);
  GroupRingElement rhs = target->zero();
  if (k >= threshold) {
    int kk = static_cast<int>(k - threshold);
    rhs = d_operator(target, kk).scaled(ipow(p, m - 1));
  }
  TrivimageResult r;
  r.match = lhs == rhs;
  if (!r.match) {
    std::ostringstream os;
    os << "p=" << p << " n=" << n << " m=" << m << " k=" << k
       << " projected=" << lhs.to_string() << " formula=" << rhs.to_string();
    r.detail = os.str();
  }
  return r;
}

ProjformContext projform_context(i64 p, int n, int m, int s, int k) {
  if (m < 1 || m > n || s < 0 || s > n || k < 0 ||
      k > ipow(p, n - m) * (p - 1))
    throw std::invalid_argument("projform_context: bad parameters");
  auto ring_g = GroupRing::cyclic_p(residue::RingParams(p, m, n));
  auto ring_h = GroupRing::create(
      FiniteGroupSpec::cyclic(static_cast<int>(ipow(p, n - s))),
      ring_g->modulus());
  Submodule perp = left_annihilator(aug_power(ring_g, k));
  std::vector<GroupRingElement> proj;
  for (const auto& b : perp.basis_elements())
    proj.push_back(project_to_quotient(b, ring_h));
  Submodule image = Submodule::generated_by(ring_h, proj);
  Submodule domain = left_annihilator(image);
  int ph = ring_h->group().order();
  Vec nbar(ph, 0);
  i64 reps = (s >= m) ? 1 : ipow(p, m - s);
  i64 step = ipow(p, n - m) % ph;
  for (i64 i = 0; i < reps; ++i) {
    int g = static_cast<int>((step * i) % ph);
    nbar[g] = linalg::mod_reduce(nbar[g] + 1, ring_h->modulus());
  }
  GroupRingElement partial_norm = ring_h->from_coeffs(nbar);
  Submodule norm_span = Submodule::generated_by(ring_h, {partial_norm});
  return ProjformContext{ring_g, ring_h,        domain, norm_span,
                         partial_norm, k, s, m, n};
}

std::optional<ProjformDecomposition> projform_decompose(
    const ProjformContext& ctx, const GroupRingElement& x) {
  if (!ctx.domain.contains(x)) return std::nullopt;
  const RingPtr& rh = ctx.ring_h;
  int ph = rh->group().order();
  i64 N = rh->modulus();
  GroupRingElement smk = rh->sigma_minus_one_power(ctx.k);
  // Unknowns: Y_g then W_g; equation columns indexed by group elements.
  std::vector<Vec> sys(2 * ph, Vec(ph, 0));
  for (int g = 0; g < ph; ++g)
    for (int h = 0; h < ph; ++h) {
      int gh = rh->group().mul(g, h);
      sys[g][gh] = linalg::mod_reduce(sys[g][gh] + smk.coeff(h), N);
      sys[ph + g][gh] =
          linalg::mod_reduce(sys[ph + g][gh] + ctx.partial_norm.coeff(h), N);
    }
  linalg::LeftSolver solver(N, sys);
  auto sol = solver.solve(x.coeffs());
  if (!sol) return std::nullopt;
  GroupRingElement y = rh->from_coeffs(Vec(sol->begin(), sol->begin() + ph));
  GroupRingElement w = rh->from_coeffs(Vec(sol->begin() + ph, sol->end()));
  GroupRingElement b = ctx.partial_norm * w;
  GroupRingElement resid = x - (smk * y) - b;
  if (!resid.is_zero())
    throw std::logic_error("projform_decompose: residual nonzero");
  return ProjformDecomposition{y, b};
}

std::vector<Submodule> enumerate_left_ideals(const RingPtr& ring) {
  const auto& G = ring->group();
  int n = G.order();
  i64 N = ring->modulus();
  long long sz = 1;
  bool small = true;
  for (int i = 0; i < n; ++i) {
    sz *= N;
    if (sz > 256) {
      small = false;
      break;
    }
  }
  auto key = [](const Submodule& s) { return s.span().to_string(); };
  std::map<std::string, Submodule> seen;
  std::vector<Vec> elements;
  {
    Vec cur(n, 0);
    while (true) {
      elements.push_back(cur);
      int c = 0;
      while (c < n && ++cur[c] == N) cur[c++] = 0;
      if (c == n) break;
    }
  }
  if (small) {
    // Exhaustive submodule lattice, built by closing one element at a time.
    std::vector<Submodule> queue{Submodule::zero(ring)};
    seen.emplace(key(queue[0]), queue[0]);
    while (!queue.empty()) {
      Submodule s = queue.back();
      queue.pop_back();
      for (const auto& e : elements) {
        GroupRingElement x = ring->from_coeffs(e);
        if (s.contains(x)) continue;
        auto gens = s.basis_elements();
        gens.push_back(x);
        Submodule bigger = Submodule::generated_by(ring, gens);
        auto k = key(bigger);
        if (!seen.count(k)) {
          seen.emplace(k, bigger);
          queue.push_back(bigger);
        }
      }
    }
  } else {
    std::vector<Submodule> cyclics;
    seen.emplace(key(Submodule::zero(ring)), Submodule::zero(ring));
    for (const auto& e : elements) {
      Submodule s = Submodule::generated_by(ring, {ring->from_coeffs(e)});
      if (!seen.count(key(s))) {
        seen.emplace(key(s), s);
        cyclics.push_back(s);
      }
    }
    for (size_t i = 0; i < cyclics.size(); ++i)
      for (size_t j = i + 1; j < cyclics.size(); ++j) {
        Submodule s = cyclics[i].sum(cyclics[j]);
        if (!seen.count(key(s))) seen.emplace(key(s), s);
      }
  }
  std::vector<Submodule> out;
  for (auto& [k, v] : seen) out.push_back(v);
  return out;
}

}  // namespace cohomlab::groupring
