#include "cohomlab/gcohom.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

namespace cohomlab::gcohom {

using linalg::LeftSolver;
using linalg::mod_reduce;

GroupPtr FiniteGroup::cyclic(int n) {
  if (n < 1) throw std::invalid_argument("cyclic: bad order");
  auto g = std::shared_ptr<FiniteGroup>(new FiniteGroup());
  g->order_ = n;
  g->table_.resize(n * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) g->table_[a * n + b] = (a + b) % n;
  g->finish_init();
  return g;
}

GroupPtr FiniteGroup::direct_product(const GroupPtr& a, const GroupPtr& b) {
  int nb = b->order();
  return from_mul(a->order() * nb, [&](int x, int y) {
    return a->mul(x / nb, y / nb) * nb + b->mul(x % nb, y % nb);
  });
}

GroupPtr FiniteGroup::from_table(std::vector<std::vector<int>> table) {
  auto g = std::shared_ptr<FiniteGroup>(new FiniteGroup());
  g->order_ = static_cast<int>(table.size());
  g->table_.resize(static_cast<size_t>(g->order_) * g->order_);
  for (int i = 0; i < g->order_; ++i) {
    if (static_cast<int>(table[i].size()) != g->order_)
      throw std::invalid_argument("from_table: ragged table");
    for (int j = 0; j < g->order_; ++j)
      g->table_[i * g->order_ + j] = table[i][j];
  }
  g->finish_init();
  return g;
}

GroupPtr FiniteGroup::from_mul(int order,
                               const std::function<int(int, int)>& mul) {
  auto g = std::shared_ptr<FiniteGroup>(new FiniteGroup());
  g->order_ = order;
  g->table_.resize(static_cast<size_t>(order) * order);
  for (int a = 0; a < order; ++a)
    for (int b = 0; b < order; ++b) g->table_[a * order + b] = mul(a, b);
  g->finish_init();
  return g;
}

void FiniteGroup::finish_init() {
  int n = order_;
  for (int x : table_)
    if (x < 0 || x >= n) throw std::invalid_argument("group: bad table entry");
  for (int a = 0; a < n; ++a)
    if (mul(0, a) != a || mul(a, 0) != a)
      throw std::invalid_argument("group: 0 is not an identity");
  if (n <= 512) {
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c)
          if (mul(mul(a, b), c) != mul(a, mul(b, c)))
            throw std::invalid_argument("group: not associative");
  }
  inv_.assign(n, -1);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b)
      if (mul(a, b) == 0 && mul(b, a) == 0) {
        inv_[a] = b;
        break;
      }
    if (inv_[a] < 0) throw std::invalid_argument("group: missing inverse");
  }
}

int FiniteGroup::power(int a, long long e) const {
  e %= order_;  // element orders divide the group order
  if (e < 0) e += order_;
  int r = 0;
  for (long long i = 0; i < e; ++i) r = mul(r, a);
  return r;
}

int FiniteGroup::element_order(int a) const {
  int x = a, o = 1;
  while (x != 0) {
    x = mul(x, a);
    ++o;
  }
  return o;
}

std::vector<int> FiniteGroup::generators() const {
  std::vector<int> gens;
  std::vector<int> cl{0};
  while (static_cast<int>(cl.size()) < order_) {
    std::vector<bool> in(order_, false);
    for (int x : cl) in[x] = true;
    int pick = -1;
    for (int x = 1; x < order_; ++x)
      if (!in[x]) {
        pick = x;
        break;
      }
    gens.push_back(pick);
    cl = closure(gens);
  }
  return gens;
}

std::vector<int> FiniteGroup::closure(std::vector<int> gens) const {
  std::vector<bool> in(order_, false);
  std::vector<int> queue{0};
  in[0] = true;
  for (int g : gens)
    if (!in[g]) {
      in[g] = true;
      queue.push_back(g);
    }
  for (size_t i = 0; i < queue.size(); ++i)
    for (int g : gens) {
      int a = mul(queue[i], g);
      if (!in[a]) {
        in[a] = true;
        queue.push_back(a);
      }
      int b = mul(queue[i], inv(g));
      if (!in[b]) {
        in[b] = true;
        queue.push_back(b);
      }
    }
  std::vector<int> out;
  for (int x = 0; x < order_; ++x)
    if (in[x]) out.push_back(x);
  return out;
}

bool FiniteGroup::is_normal(const std::vector<int>& sub) const {
  std::vector<bool> in(order_, false);
  for (int x : sub) in[x] = true;
  for (int g = 0; g < order_; ++g)
    for (int x : sub)
      if (!in[conj(g, x)]) return false;
  return true;
}

std::vector<int> FiniteGroup::center() const {
  std::vector<int> out;
  for (int a = 0; a < order_; ++a) {
    bool central = true;
    for (int b = 0; b < order_ && central; ++b)
      central = mul(a, b) == mul(b, a);
    if (central) out.push_back(a);
  }
  return out;
}

FiniteGroup::Quotient FiniteGroup::quotient_by(
    const std::vector<int>& normal_sorted) const {
  if (!is_normal(normal_sorted))
    throw std::invalid_argument("quotient_by: subgroup not normal");
  std::vector<int> coset_rep(order_, -1);
  for (int x = 0; x < order_; ++x) {
    int best = order_;
    for (int n : normal_sorted) best = std::min(best, mul(x, n));
    coset_rep[x] = best;
  }
  std::vector<int> reps;
  for (int x = 0; x < order_; ++x)
    if (coset_rep[x] == x) reps.push_back(x);
  std::vector<int> idx(order_, -1);
  for (size_t i = 0; i < reps.size(); ++i) idx[reps[i]] = static_cast<int>(i);
  Quotient q;
  q.reps = reps;
  q.proj.resize(order_);
  for (int x = 0; x < order_; ++x) q.proj[x] = idx[coset_rep[x]];
  q.group = FiniteGroup::from_mul(
      static_cast<int>(reps.size()),
      [&](int a, int b) { return idx[coset_rep[mul(reps[a], reps[b])]]; });
  return q;
}

bool FiniteGroup::is_homomorphism(const std::vector<int>& f,
                                  const FiniteGroup& to) const {
  if (static_cast<int>(f.size()) != order_) return false;
  for (int a = 0; a < order_; ++a)
    for (int b = 0; b < order_; ++b)
      if (f[mul(a, b)] != to.mul(f[a], f[b])) return false;
  return true;
}

// --- module ------------------------------------------------------------

GModule::GModule(GroupPtr group, std::vector<i64> orders,
                 std::vector<std::vector<Vec>> action)
    : group_(std::move(group)),
      orders_(std::move(orders)),
      action_(std::move(action)) {
  int r = rank();
  lcm_ = 1;
  for (i64 d : orders_) {
    if (d < 1) throw std::invalid_argument("GModule: bad order");
    lcm_ = std::lcm(lcm_, d);
  }
  if (lcm_ < 2) lcm_ = 2;
  if (static_cast<int>(action_.size()) != group_->order())
    throw std::invalid_argument("GModule: one matrix per group element");
  for (auto& m : action_) {
    if (static_cast<int>(m.size()) != r)
      throw std::invalid_argument("GModule: matrix rank");
    for (auto& row : m) {
      if (static_cast<int>(row.size()) != r)
        throw std::invalid_argument("GModule: matrix rank");
    }
  }
  for (auto& m : action_)
    for (int j = 0; j < r; ++j)
      for (int i = 0; i < r; ++i) {
        m[j][i] = mod_reduce(m[j][i], orders_[j]);
        if ((m[j][i] * orders_[i]) % orders_[j] != 0)
          throw std::invalid_argument("GModule: matrix not well-defined");
      }
  for (int i = 0; i < r; ++i) {
    Vec e = zero();
    e[i] = 1;
    if (act(0, e) != reduce(e))
      throw std::invalid_argument("GModule: identity action");
  }
  for (int g = 0; g < group_->order(); ++g)
    for (int h = 0; h < group_->order(); ++h)
      for (int i = 0; i < r; ++i) {
        Vec e = zero();
        e[i] = 1;
        if (act(group_->mul(g, h), e) != act(g, act(h, e)))
          throw std::invalid_argument("GModule: action not a homomorphism");
      }
}

GModule GModule::trivial(GroupPtr group, std::vector<i64> orders) {
  int r = static_cast<int>(orders.size());
  std::vector<Vec> id(r, Vec(r, 0));
  for (int i = 0; i < r; ++i) id[i][i] = 1;
  std::vector<std::vector<Vec>> action(group->order(), id);
  return GModule(std::move(group), std::move(orders), std::move(action));
}

unsigned long long GModule::size() const {
  unsigned long long s = 1;
  for (i64 d : orders_) s *= static_cast<unsigned long long>(d);
  return s;
}

bool GModule::trivial_action() const {
  for (int g = 0; g < group_->order(); ++g)
    for (int j = 0; j < rank(); ++j)
      for (int i = 0; i < rank(); ++i) {
        i64 want = (i == j) ? 1 % orders_[j] : 0;
        if (action_[g][j][i] != want) return false;
      }
  return true;
}

Vec GModule::reduce(Vec v) const {
  for (int i = 0; i < rank(); ++i) v[i] = mod_reduce(v[i], orders_[i]);
  return v;
}

Vec GModule::add(const Vec& a, const Vec& b) const {
  Vec v(rank());
  for (int i = 0; i < rank(); ++i) v[i] = mod_reduce(a[i] + b[i], orders_[i]);
  return v;
}

Vec GModule::sub(const Vec& a, const Vec& b) const {
  Vec v(rank());
  for (int i = 0; i < rank(); ++i) v[i] = mod_reduce(a[i] - b[i], orders_[i]);
  return v;
}

Vec GModule::neg(const Vec& a) const {
  Vec v(rank());
  for (int i = 0; i < rank(); ++i) v[i] = mod_reduce(-a[i], orders_[i]);
  return v;
}

Vec GModule::act(int g, const Vec& a) const {
  Vec v(rank(), 0);
  for (int j = 0; j < rank(); ++j) {
    i64 s = 0;
    for (int i = 0; i < rank(); ++i) s += action_[g][j][i] * a[i];
    v[j] = mod_reduce(s, orders_[j]);
  }
  return v;
}

unsigned long long GModule::index_of(const Vec& a) const {
  unsigned long long idx = 0;
  for (int i = rank(); i-- > 0;)
    idx = idx * static_cast<unsigned long long>(orders_[i]) +
          static_cast<unsigned long long>(mod_reduce(a[i], orders_[i]));
  return idx;
}

Vec GModule::element_at(unsigned long long idx) const {
  Vec a(rank());
  for (int i = 0; i < rank(); ++i) {
    a[i] = static_cast<i64>(idx % static_cast<unsigned long long>(orders_[i]));
    idx /= static_cast<unsigned long long>(orders_[i]);
  }
  return a;
}

GModule GModule::descend(const GroupPtr& q,
                         const std::vector<int>& reps) const {
  std::vector<std::vector<Vec>> act;
  for (int i = 0; i < q->order(); ++i) act.push_back(action_[reps[i]]);
  return GModule(q, orders_, std::move(act));
}

// --- cochains ------------------------------------------------------------

Cochain2 coboundary1(const GModule& a, const Cochain1& f) {
  int n = a.group()->order();
  Cochain2 out;
  out.values.resize(static_cast<size_t>(n) * n);
  for (int s = 0; s < n; ++s)
    for (int t = 0; t < n; ++t)
      out.values[s * n + t] =
          a.add(a.sub(a.act(s, f.values[t]), f.values[a.group()->mul(s, t)]),
                f.values[s]);
  return out;
}

bool is_cocycle2(const GModule& a, const Cochain2& u) {
  int n = a.group()->order();
  for (int s = 0; s < n; ++s)
    for (int t = 0; t < n; ++t)
      for (int v = 0; v < n; ++v) {
        Vec lhs = a.act(s, u.values[t * n + v]);
        lhs = a.sub(lhs, u.values[a.group()->mul(s, t) * n + v]);
        lhs = a.add(lhs, u.values[s * n + a.group()->mul(t, v)]);
        lhs = a.sub(lhs, u.values[s * n + t]);
        if (lhs != a.zero()) return false;
      }
  return true;
}

Cochain2 normalize2(const GModule& a, const Cochain2& u) {
  int n = a.group()->order();
  Vec c = u.values[0];
  Cochain2 out = u;
  for (int s = 0; s < n; ++s)
    for (int t = 0; t < n; ++t)
      out.values[s * n + t] = a.sub(out.values[s * n + t], a.act(s, c));
  return out;
}

Cochain2 add2(const GModule& a, const Cochain2& u, const Cochain2& v) {
  Cochain2 out = u;
  for (size_t i = 0; i < out.values.size(); ++i)
    out.values[i] = a.add(out.values[i], v.values[i]);
  return out;
}

Cochain2 sub2(const GModule& a, const Cochain2& u, const Cochain2& v) {
  Cochain2 out = u;
  for (size_t i = 0; i < out.values.size(); ++i)
    out.values[i] = a.sub(out.values[i], v.values[i]);
  return out;
}

Cochain2 zero2(const GModule& a) {
  int n = a.group()->order();
  Cochain2 out;
  out.values.assign(static_cast<size_t>(n) * n, a.zero());
  return out;
}

bool is_zero2(const Cochain2& u) {
  for (const auto& v : u.values)
    for (i64 x : v)
      if (x != 0) return false;
  return true;
}

std::optional<Cochain1> solve_coboundary(const GModule& a, const Cochain2& w) {
  int n = a.group()->order();
  int r = a.rank();
  i64 L = a.lcm_order();
  // kappa(gamma)_i as Z/L unknowns, equations scaled by L/d_j.  Note that
  // kappa(1) is a genuine unknown: d(kappa)(1,1) = kappa(1).
  int unknowns = n * r;
  int eqs = n * n * r;
  std::vector<Vec> sys(unknowns, Vec(eqs, 0));
  auto uidx = [&](int g, int i) { return g * r + i; };
  for (int s = 0; s < n; ++s)
    for (int t = 0; t < n; ++t) {
      int st = a.group()->mul(s, t);
      for (int j = 0; j < r; ++j) {
        int eq = (s * n + t) * r + j;
        i64 scale = L / a.orders()[j];
        for (int i = 0; i < r; ++i) {
          i64 c = a.matrix(s)[j][i];
          if (c)
            sys[uidx(t, i)][eq] =
                mod_reduce(sys[uidx(t, i)][eq] + scale * c, L);
        }
        sys[uidx(st, j)][eq] = mod_reduce(sys[uidx(st, j)][eq] - scale, L);
        sys[uidx(s, j)][eq] = mod_reduce(sys[uidx(s, j)][eq] + scale, L);
      }
    }
  Vec rhs(eqs, 0);
  for (int s = 0; s < n; ++s)
    for (int t = 0; t < n; ++t)
      for (int j = 0; j < r; ++j)
        rhs[(s * n + t) * r + j] =
            mod_reduce((L / a.orders()[j]) * w.values[s * n + t][j], L);
  LeftSolver solver(L, sys);
  auto sol = solver.solve(rhs);
  if (!sol) return std::nullopt;
  Cochain1 kappa;
  kappa.values.resize(n);
  for (int g = 0; g < n; ++g) {
    Vec v(r);
    for (int i = 0; i < r; ++i) v[i] = (*sol)[uidx(g, i)];
    kappa.values[g] = a.reduce(v);
  }
  Cochain2 check = coboundary1(a, kappa);
  for (int i = 0; i < n * n; ++i)
    if (a.reduce(check.values[i]) != a.reduce(w.values[i]))
      throw std::logic_error("solve_coboundary: reconstruction failed");
  return kappa;
}

bool h2_class_eq(const GModule& a, const Cochain2& u, const Cochain2& v) {
  if (!is_cocycle2(a, u) || !is_cocycle2(a, v))
    throw std::invalid_argument("h2_class_eq: inputs must be cocycles");
  return solve_coboundary(a, sub2(a, u, v)).has_value();
}

Vec flatten2(const GModule& a, const Cochain2& u) {
  int n = a.group()->order();
  int r = a.rank();
  i64 L = a.lcm_order();
  Vec out(static_cast<size_t>(n) * n * r);
  for (int st = 0; st < n * n; ++st)
    for (int i = 0; i < r; ++i)
      out[st * r + i] = mod_reduce((L / a.orders()[i]) * u.values[st][i], L);
  return out;
}

RowSpan two_coboundary_span(const GModule& a) {
  int n = a.group()->order();
  int r = a.rank();
  std::vector<Vec> rows;
  for (int g = 0; g < n; ++g)
    for (int i = 0; i < r; ++i) {
      Cochain1 delta;
      delta.values.assign(n, a.zero());
      delta.values[g][i] = 1;
      rows.push_back(flatten2(a, coboundary1(a, delta)));
    }
  return RowSpan::from_rows(a.lcm_order(), n * n * r, std::move(rows));
}

RowSpan one_cocycle_span(const GModule& a) {
  int n = a.group()->order();
  int r = a.rank();
  i64 L = a.lcm_order();
  int unknowns = n * r;
  int eqs = n * n * r;
  std::vector<Vec> sys(unknowns, Vec(eqs, 0));
  auto uidx = [&](int g, int i) { return g * r + i; };
  for (int s = 0; s < n; ++s)
    for (int t = 0; t < n; ++t) {
      int st = a.group()->mul(s, t);
      for (int j = 0; j < r; ++j) {
        int eq = (s * n + t) * r + j;
        i64 scale = L / a.orders()[j];
        sys[uidx(st, j)][eq] = mod_reduce(sys[uidx(st, j)][eq] + scale, L);
        sys[uidx(s, j)][eq] = mod_reduce(sys[uidx(s, j)][eq] - scale, L);
        for (int i = 0; i < r; ++i) {
          i64 c = a.matrix(s)[j][i];
          if (c)
            sys[uidx(t, i)][eq] =
                mod_reduce(sys[uidx(t, i)][eq] - scale * c, L);
        }
      }
    }
  LeftSolver solver(L, sys);
  std::vector<Vec> rows;
  for (const auto& k : solver.kernel()) {
    Vec v(unknowns);
    for (int g = 0; g < n; ++g)
      for (int i = 0; i < r; ++i)
        v[uidx(g, i)] = mod_reduce(
            (L / a.orders()[i]) * mod_reduce(k[uidx(g, i)], a.orders()[i]), L);
    rows.push_back(std::move(v));
  }
  return RowSpan::from_rows(L, unknowns, std::move(rows));
}

RowSpan one_coboundary_span(const GModule& a) {
  int n = a.group()->order();
  int r = a.rank();
  i64 L = a.lcm_order();
  std::vector<Vec> rows;
  for (int i = 0; i < r; ++i) {
    Vec e = a.zero();
    e[i] = 1;
    Vec row(n * r);
    for (int g = 0; g < n; ++g) {
      Vec v = a.sub(a.act(g, e), e);
      for (int j = 0; j < r; ++j)
        row[g * r + j] = mod_reduce((L / a.orders()[j]) * v[j], L);
    }
    rows.push_back(std::move(row));
  }
  return RowSpan::from_rows(L, n * r, std::move(rows));
}

unsigned long long h2_order(const GModule& a) {
  int n = a.group()->order();
  int r = a.rank();
  i64 L = a.lcm_order();
  int unknowns = n * n * r;
  auto uidx = [&](int s, int t, int i) { return (s * n + t) * r + i; };
  int eqs = n * n * n * r;
  std::vector<Vec> sys(unknowns, Vec(eqs, 0));
  for (int s = 0; s < n; ++s)
    for (int t = 0; t < n; ++t)
      for (int v = 0; v < n; ++v)
        for (int j = 0; j < r; ++j) {
          int eq = ((s * n + t) * n + v) * r + j;
          i64 scale = L / a.orders()[j];
          for (int i = 0; i < r; ++i) {
            i64 c = a.matrix(s)[j][i];
            if (c)
              sys[uidx(t, v, i)][eq] =
                  mod_reduce(sys[uidx(t, v, i)][eq] + scale * c, L);
          }
          int st = a.group()->mul(s, t);
          int tv = a.group()->mul(t, v);
          sys[uidx(st, v, j)][eq] = mod_reduce(sys[uidx(st, v, j)][eq] - scale, L);
          sys[uidx(s, tv, j)][eq] = mod_reduce(sys[uidx(s, tv, j)][eq] + scale, L);
          sys[uidx(s, t, j)][eq] = mod_reduce(sys[uidx(s, t, j)][eq] - scale, L);
        }
  LeftSolver solver(L, sys);
  std::vector<Vec> rows;
  for (const auto& k : solver.kernel()) {
    Vec v(unknowns);
    for (int c = 0; c < unknowns; ++c) {
      int i = c % r;
      v[c] =
          mod_reduce((L / a.orders()[i]) * mod_reduce(k[c], a.orders()[i]), L);
    }
    rows.push_back(std::move(v));
  }
  RowSpan z2 = RowSpan::from_rows(L, unknowns, std::move(rows));
  RowSpan b2 = two_coboundary_span(a);
  return linalg::quotient_size(z2, b2);
}

// --- extensions ------------------------------------------------------------

GroupExtension make_extension(GroupPtr total, GroupPtr quotient,
                              std::vector<i64> fiber_orders,
                              std::vector<int> embed, std::vector<int> proj,
                              std::vector<int> section) {
  unsigned long long asize = 1;
  for (i64 d : fiber_orders) asize *= static_cast<unsigned long long>(d);
  if (embed.size() != asize)
    throw std::invalid_argument("make_extension: embed size");
  if (static_cast<int>(proj.size()) != total->order())
    throw std::invalid_argument("make_extension: proj size");
  if (static_cast<int>(section.size()) != quotient->order())
    throw std::invalid_argument("make_extension: section size");
  if (section[0] != 0)
    throw std::invalid_argument("make_extension: section must send 1 to 1");
  for (int x = 0; x < total->order(); ++x)
    for (int y = 0; y < total->order(); ++y)
      if (proj[total->mul(x, y)] != quotient->mul(proj[x], proj[y]))
        throw std::invalid_argument("make_extension: proj not a hom");
  for (int q = 0; q < quotient->order(); ++q)
    if (proj[section[q]] != q)
      throw std::invalid_argument("make_extension: bad section");
  std::set<int> image(embed.begin(), embed.end());
  if (image.size() != embed.size())
    throw std::invalid_argument("make_extension: embed not injective");
  int kercount = 0;
  for (int x = 0; x < total->order(); ++x)
    if (proj[x] == 0) {
      ++kercount;
      if (!image.count(x))
        throw std::invalid_argument("make_extension: kernel not covered");
    }
  if (kercount != static_cast<int>(embed.size()))
    throw std::invalid_argument("make_extension: fiber size mismatch");

  int r = static_cast<int>(fiber_orders.size());
  auto idx_of = [&](const Vec& v) {
    unsigned long long idx = 0;
    for (int i = r; i-- > 0;)
      idx = idx * static_cast<unsigned long long>(fiber_orders[i]) +
            static_cast<unsigned long long>(mod_reduce(v[i], fiber_orders[i]));
    return idx;
  };
  auto at = [&](unsigned long long idx) {
    Vec v(r);
    for (int i = 0; i < r; ++i) {
      v[i] = static_cast<i64>(idx %
                              static_cast<unsigned long long>(fiber_orders[i]));
      idx /= static_cast<unsigned long long>(fiber_orders[i]);
    }
    return v;
  };
  for (unsigned long long x = 0; x < asize; ++x)
    for (unsigned long long y = 0; y < asize; ++y) {
      Vec vx = at(x), vy = at(y), s(r);
      for (int i = 0; i < r; ++i)
        s[i] = mod_reduce(vx[i] + vy[i], fiber_orders[i]);
      if (embed[idx_of(s)] != total->mul(embed[x], embed[y]))
        throw std::invalid_argument("make_extension: embed not additive");
    }
  std::vector<int> lookup(total->order(), -1);
  for (size_t i = 0; i < embed.size(); ++i)
    lookup[embed[i]] = static_cast<int>(i);
  std::vector<std::vector<Vec>> action;
  for (int q = 0; q < quotient->order(); ++q) {
    std::vector<Vec> mat(r, Vec(r, 0));
    for (int i = 0; i < r; ++i) {
      Vec e(r, 0);
      e[i] = 1;
      int img = total->conj(section[q], embed[idx_of(e)]);
      if (lookup[img] < 0)
        throw std::invalid_argument("make_extension: fiber not normal");
      Vec coords = at(static_cast<unsigned long long>(lookup[img]));
      for (int j = 0; j < r; ++j) mat[j][i] = coords[j];
    }
    action.push_back(std::move(mat));
  }
  return GroupExtension{total,
                        quotient,
                        GModule(quotient, fiber_orders, std::move(action)),
                        std::move(embed),
                        std::move(proj),
                        std::move(section)};
}

GroupExtension semidirect_product(const GModule& a_over_q) {
  const GroupPtr& q = a_over_q.group();
  int nq = q->order();
  unsigned long long na = a_over_q.size();
  int order = static_cast<int>(na * nq);
  auto pack = [&](unsigned long long a, int qq) {
    return static_cast<int>(a * nq + qq);
  };
  auto total = FiniteGroup::from_mul(order, [&](int x, int y) {
    Vec sum = a_over_q.add(
        a_over_q.element_at(static_cast<unsigned long long>(x / nq)),
        a_over_q.act(x % nq,
                     a_over_q.element_at(static_cast<unsigned long long>(y / nq))));
    return pack(a_over_q.index_of(sum), q->mul(x % nq, y % nq));
  });
  std::vector<int> embed(na), proj(order), section(nq);
  for (unsigned long long a = 0; a < na; ++a)
    embed[a] = pack(a, 0);
  for (int x = 0; x < order; ++x) proj[x] = x % nq;
  for (int qq = 0; qq < nq; ++qq) section[qq] = pack(0, qq);
  return make_extension(total, q, a_over_q.orders(), embed, proj, section);
}

GroupExtension extension_from_cocycle(const GModule& a_over_q,
                                      const Cochain2& u) {
  if (!is_cocycle2(a_over_q, u))
    throw std::invalid_argument("extension_from_cocycle: not a cocycle");
  Cochain2 nu = normalize2(a_over_q, u);
  const GroupPtr& q = a_over_q.group();
  int nq = q->order();
  unsigned long long na = a_over_q.size();
  int order = static_cast<int>(na * nq);
  auto pack = [&](unsigned long long a, int qq) {
    return static_cast<int>(a * nq + qq);
  };
  auto total = FiniteGroup::from_mul(order, [&](int x, int y) {
    Vec sum = a_over_q.add(
        a_over_q.element_at(static_cast<unsigned long long>(x / nq)),
        a_over_q.act(x % nq, a_over_q.element_at(
                                 static_cast<unsigned long long>(y / nq))));
    sum = a_over_q.add(sum, nu.values[(x % nq) * nq + (y % nq)]);
    return pack(a_over_q.index_of(sum), q->mul(x % nq, y % nq));
  });
  std::vector<int> embed(na), proj(order), section(nq);
  for (unsigned long long a = 0; a < na; ++a) embed[a] = pack(a, 0);
  for (int x = 0; x < order; ++x) proj[x] = x % nq;
  for (int qq = 0; qq < nq; ++qq) section[qq] = pack(0, qq);
  return make_extension(total, q, a_over_q.orders(), embed, proj, section);
}

Cochain2 extension_class(const GroupExtension& ext) {
  return extension_class_with_section(ext, ext.section);
}

Cochain2 extension_class_with_section(const GroupExtension& ext,
                                      const std::vector<int>& section) {
  const GroupPtr& q = ext.quotient;
  int nq = q->order();
  std::vector<int> lookup(ext.total->order(), -1);
  for (size_t i = 0; i < ext.embed.size(); ++i)
    lookup[ext.embed[i]] = static_cast<int>(i);
  Cochain2 out;
  out.values.resize(static_cast<size_t>(nq) * nq);
  for (int s = 0; s < nq; ++s)
    for (int t = 0; t < nq; ++t) {
      int z = ext.total->mul(ext.total->mul(section[s], section[t]),
                             ext.total->inv(section[q->mul(s, t)]));
      if (lookup[z] < 0)
        throw std::invalid_argument(
            "extension_class: section defect not in fiber");
      out.values[s * nq + t] =
          ext.fiber.element_at(static_cast<unsigned long long>(lookup[z]));
    }
  if (!is_cocycle2(ext.fiber, out))
    throw std::logic_error("extension_class: defect is not a 2-cocycle");
  return out;
}

GModule twist_module(const GroupExtension& ext, const GroupPtr& gamma,
                     const std::vector<int>& rho_bar,
                     const std::vector<int>& f) {
  if (!gamma->is_homomorphism(rho_bar, *ext.quotient))
    throw std::invalid_argument("twist_module: rho_bar not a homomorphism");
  if (f[0] != 0) throw std::invalid_argument("twist_module: f(1) != 1");
  for (int g = 0; g < gamma->order(); ++g)
    if (ext.proj[f[g]] != rho_bar[g])
      throw std::invalid_argument("twist_module: f does not lift rho_bar");
  std::vector<int> lookup(ext.total->order(), -1);
  for (size_t i = 0; i < ext.embed.size(); ++i)
    lookup[ext.embed[i]] = static_cast<int>(i);
  int r = ext.fiber.rank();
  std::vector<std::vector<Vec>> action;
  for (int g = 0; g < gamma->order(); ++g) {
    std::vector<Vec> mat(r, Vec(r, 0));
    for (int i = 0; i < r; ++i) {
      Vec e = ext.fiber.zero();
      e[i] = 1;
      int img = ext.total->conj(f[g], ext.embed[ext.fiber.index_of(e)]);
      if (lookup[img] < 0)
        throw std::invalid_argument("twist_module: conjugation leaves fiber");
      Vec coords =
          ext.fiber.element_at(static_cast<unsigned long long>(lookup[img]));
      for (int j = 0; j < r; ++j) mat[j][i] = coords[j];
    }
    action.push_back(std::move(mat));
  }
  return GModule(gamma, ext.fiber.orders(), std::move(action));
}

Obstruction obstruction_delta(const GroupExtension& ext, const GroupPtr& gamma,
                              const std::vector<int>& rho_bar,
                              const std::vector<int>& f) {
  GModule twisted = twist_module(ext, gamma, rho_bar, f);
  std::vector<int> lookup(ext.total->order(), -1);
  for (size_t i = 0; i < ext.embed.size(); ++i)
    lookup[ext.embed[i]] = static_cast<int>(i);
  int n = gamma->order();
  Cochain2 a;
  a.values.resize(static_cast<size_t>(n) * n);
  for (int s = 0; s < n; ++s)
    for (int t = 0; t < n; ++t) {
      int z = ext.total->mul(ext.total->mul(f[s], f[t]),
                             ext.total->inv(f[gamma->mul(s, t)]));
      if (lookup[z] < 0)
        throw std::invalid_argument("obstruction_delta: defect not in fiber");
      a.values[s * n + t] =
          ext.fiber.element_at(static_cast<unsigned long long>(lookup[z]));
    }
  if (!is_cocycle2(twisted, a))
    throw std::logic_error("obstruction_delta: defect not a cocycle");
  return Obstruction{std::move(twisted), std::move(a)};
}

GroupExtension fiber_product(const GroupExtension& ext, const GroupPtr& gamma,
                             const std::vector<int>& rho_bar) {
  if (!gamma->is_homomorphism(rho_bar, *ext.quotient))
    throw std::invalid_argument("fiber_product: rho_bar not a homomorphism");
  int ng = ext.total->order();
  int ngam = gamma->order();
  std::vector<int> pair_id(static_cast<size_t>(ng) * ngam, -1);
  std::vector<std::pair<int, int>> pairs;
  for (int g = 0; g < ng; ++g)
    for (int x = 0; x < ngam; ++x)
      if (ext.proj[g] == rho_bar[x]) {
        pair_id[static_cast<size_t>(g) * ngam + x] =
            static_cast<int>(pairs.size());
        pairs.emplace_back(g, x);
      }
  if (pairs.empty() || pairs[0] != std::make_pair(0, 0))
    throw std::logic_error("fiber_product: identity pair missing");
  auto total = FiniteGroup::from_mul(
      static_cast<int>(pairs.size()), [&](int a, int b) {
        int g = ext.total->mul(pairs[a].first, pairs[b].first);
        int x = gamma->mul(pairs[a].second, pairs[b].second);
        return pair_id[static_cast<size_t>(g) * ngam + x];
      });
  std::vector<int> embed(ext.embed.size());
  for (size_t i = 0; i < ext.embed.size(); ++i)
    embed[i] = pair_id[static_cast<size_t>(ext.embed[i]) * ngam + 0];
  std::vector<int> proj(pairs.size());
  for (size_t i = 0; i < pairs.size(); ++i) proj[i] = pairs[i].second;
  std::vector<int> section(ngam);
  for (int x = 0; x < ngam; ++x)
    for (int g = 0; g < ng; ++g)
      if (ext.proj[g] == rho_bar[x]) {
        section[x] = pair_id[static_cast<size_t>(g) * ngam + x];
        break;
      }
  return make_extension(total, gamma, ext.fiber.orders(), embed, proj,
                        section);
}

SubgroupCochain lambda_of(const GroupExtension& ext, const GroupPtr& gamma,
                          const std::vector<int>& rho,
                          const std::vector<int>& subgroup_sorted) {
  if (!gamma->is_homomorphism(rho, *ext.total))
    throw std::invalid_argument("lambda_of: rho not a homomorphism");
  std::vector<int> lookup(ext.total->order(), -1);
  for (size_t i = 0; i < ext.embed.size(); ++i)
    lookup[ext.embed[i]] = static_cast<int>(i);
  SubgroupCochain out;
  out.subgroup = subgroup_sorted;
  for (int tau : subgroup_sorted) {
    if (lookup[rho[tau]] < 0)
      throw std::invalid_argument(
          "lambda_of: rho does not carry the subgroup into the fiber");
    Vec v =
        ext.fiber.element_at(static_cast<unsigned long long>(lookup[rho[tau]]));
    out.values.push_back(ext.fiber.neg(v));
  }
  return out;
}

bool is_invariant_hom(const GModule& a, const SubgroupCochain& f) {
  const GroupPtr& g = a.group();
  const auto& sub = f.subgroup;
  auto pos = [&](int x) {
    auto it = std::lower_bound(sub.begin(), sub.end(), x);
    if (it == sub.end() || *it != x) return -1;
    return static_cast<int>(it - sub.begin());
  };
  for (size_t i = 0; i < sub.size(); ++i)
    for (size_t j = 0; j < sub.size(); ++j) {
      int pp = pos(g->mul(sub[i], sub[j]));
      if (pp < 0) return false;
      if (a.reduce(a.add(f.values[i], f.values[j])) != f.values[pp])
        return false;
    }
  for (int x = 0; x < g->order(); ++x)
    for (size_t i = 0; i < sub.size(); ++i) {
      int pp = pos(g->conj(x, sub[i]));
      if (pp < 0) return false;
      if (a.act(x, f.values[i]) != f.values[pp]) return false;
    }
  return true;
}

Transgression transgression(const GModule& a, const SubgroupCochain& f) {
  const GroupPtr& g = a.group();
  const auto& sub = f.subgroup;
  auto pos = [&](int x) {
    auto it = std::lower_bound(sub.begin(), sub.end(), x);
    if (it == sub.end() || *it != x)
      throw std::invalid_argument("transgression: subgroup not closed");
    return static_cast<int>(it - sub.begin());
  };
  for (int tau : sub)
    for (int i = 0; i < a.rank(); ++i) {
      Vec e = a.zero();
      e[i] = 1;
      if (a.act(tau, e) != a.reduce(e))
        throw std::invalid_argument(
            "transgression: subgroup acts nontrivially");
    }
  if (!is_invariant_hom(a, f))
    throw std::invalid_argument("transgression: f not an invariant hom");

  auto quot = g->quotient_by(sub);
  GModule aq = a.descend(quot.group, quot.reps);
  int nq = quot.group->order();

  // Route one: extend f to h(x) = f(x r(xbar)^{-1}); at representatives the
  // coboundary collapses to -f of the section defect.
  Cochain2 route1;
  route1.values.resize(static_cast<size_t>(nq) * nq);
  for (int q1 = 0; q1 < nq; ++q1)
    for (int q2 = 0; q2 < nq; ++q2) {
      int w = g->mul(g->mul(quot.reps[q1], quot.reps[q2]),
                     g->inv(quot.reps[quot.group->mul(q1, q2)]));
      route1.values[q1 * nq + q2] = aq.neg(f.values[pos(w)]);
    }
  {
    auto h = [&](int x) {
      return f.values[pos(g->mul(x, g->inv(quot.reps[quot.proj[x]])))];
    };
    for (int x = 0; x < g->order(); ++x)
      for (int y = 0; y < g->order(); ++y) {
        Vec dh = a.add(a.sub(a.act(x, h(y)), h(g->mul(x, y))), h(x));
        if (a.reduce(dh) != route1.values[quot.proj[x] * nq + quot.proj[y]])
          throw std::logic_error("transgression: dh not constant on cosets");
      }
  }
  if (!is_cocycle2(aq, route1))
    throw std::logic_error("transgression: route one not a cocycle");

  // Route two: class of the pushout (A x| G)/graph(f) as an extension of Q.
  unsigned long long na = a.size();
  int ng = g->order();
  auto pack = [&](unsigned long long ai, int x) {
    return static_cast<long long>(ai) * ng + x;
  };
  auto semi_mul = [&](long long u, long long v) {
    unsigned long long au = static_cast<unsigned long long>(u / ng);
    int xu = static_cast<int>(u % ng);
    unsigned long long av = static_cast<unsigned long long>(v / ng);
    int xv = static_cast<int>(v % ng);
    Vec sum = a.add(a.element_at(au), a.act(xu, a.element_at(av)));
    return pack(a.index_of(sum), g->mul(xu, xv));
  };
  auto semi_inv = [&](long long u) {
    unsigned long long au = static_cast<unsigned long long>(u / ng);
    int xu = static_cast<int>(u % ng);
    int xi = g->inv(xu);
    return pack(a.index_of(a.neg(a.act(xi, a.element_at(au)))), xi);
  };
  std::vector<long long> graph;
  for (size_t i = 0; i < sub.size(); ++i)
    graph.push_back(pack(a.index_of(f.values[i]), sub[i]));
  std::set<long long> graph_set(graph.begin(), graph.end());
  for (long long u : graph)
    for (long long v : graph)
      if (!graph_set.count(semi_mul(u, v)))
        throw std::logic_error("transgression: graph not a subgroup");
  std::map<long long, int> coset_of;
  int next_coset = 0;
  auto coset_id = [&](long long u) {
    long long best = -1;
    for (long long t : graph) {
      long long w = semi_mul(u, t);
      if (best < 0 || w < best) best = w;
    }
    auto it = coset_of.find(best);
    if (it != coset_of.end()) return it->second;
    coset_of.emplace(best, next_coset);
    return next_coset++;
  };
  std::vector<int> a_embed;
  for (unsigned long long ai = 0; ai < na; ++ai)
    a_embed.push_back(coset_id(pack(ai, 0)));
  Cochain2 route2;
  route2.values.resize(static_cast<size_t>(nq) * nq);
  std::vector<long long> sec_elem(nq);
  for (int q = 0; q < nq; ++q) sec_elem[q] = pack(0, quot.reps[q]);
  {
    std::map<int, unsigned long long> inv;
    for (unsigned long long ai = 0; ai < na; ++ai) {
      if (inv.count(a_embed[ai]))
        throw std::logic_error("transgression: fiber collapses in pushout");
      inv[a_embed[ai]] = ai;
    }
    for (int q1 = 0; q1 < nq; ++q1)
      for (int q2 = 0; q2 < nq; ++q2) {
        long long z = semi_mul(semi_mul(sec_elem[q1], sec_elem[q2]),
                               semi_inv(sec_elem[quot.group->mul(q1, q2)]));
        auto it = inv.find(coset_id(z));
        if (it == inv.end())
          throw std::logic_error("transgression: defect outside fiber");
        route2.values[q1 * nq + q2] = a.element_at(it->second);
      }
  }
  if (!is_cocycle2(aq, route2))
    throw std::logic_error("transgression: route two not a cocycle");

  bool agree = h2_class_eq(aq, route1, route2);
  return Transgression{quot, std::move(aq), std::move(route1),
                       std::move(route2), agree};
}

Cochain2 inflate2(const GModule& a_on_gamma, const std::vector<int>& proj,
                  const Cochain2& u_on_q) {
  int n = a_on_gamma.group()->order();
  int nq = 0;
  for (int p : proj) nq = std::max(nq, p + 1);
  Cochain2 out;
  out.values.resize(static_cast<size_t>(n) * n);
  for (int s = 0; s < n; ++s)
    for (int t = 0; t < n; ++t)
      out.values[s * n + t] = u_on_q.values[proj[s] * nq + proj[t]];
  return out;
}

Cochain1 inflate1(const GModule& a_on_gamma, const std::vector<int>& proj,
                  const Cochain1& u_on_q) {
  int n = a_on_gamma.group()->order();
  Cochain1 out;
  out.values.resize(n);
  for (int s = 0; s < n; ++s) out.values[s] = u_on_q.values[proj[s]];
  return out;
}

SubgroupCochain restrict1(const Cochain1& f,
                          const std::vector<int>& subgroup_sorted) {
  SubgroupCochain out;
  out.subgroup = subgroup_sorted;
  for (int x : subgroup_sorted) out.values.push_back(f.values[x]);
  return out;
}

LiftSearch lift_search(const GroupExtension& ext, const GroupPtr& gamma,
                       const std::vector<int>& rho_bar,
                       unsigned long long guard) {
  LiftSearch out;
  out.searched = true;
  auto gens = gamma->generators();
  int n = gamma->order();
  if (gens.empty()) {
    out.lifts.push_back(std::vector<int>(n, 0));
    return out;
  }
  std::vector<int> parent(n, -1), via(n, -1);
  std::vector<int> bfs{0};
  for (size_t i = 0; i < bfs.size(); ++i)
    for (size_t gi = 0; gi < gens.size(); ++gi) {
      int nxt = gamma->mul(bfs[i], gens[gi]);
      if (nxt != 0 && parent[nxt] < 0) {
        parent[nxt] = bfs[i];
        via[nxt] = static_cast<int>(gi);
        bfs.push_back(nxt);
      }
    }
  std::vector<std::vector<int>> candidates(gens.size());
  for (size_t gi = 0; gi < gens.size(); ++gi)
    for (int e = 0; e < ext.total->order(); ++e)
      if (ext.proj[e] == rho_bar[gens[gi]]) candidates[gi].push_back(e);
  unsigned long long count = 1;
  for (const auto& c : candidates) {
    count *= c.size();
    if (count > guard) {
      out.searched = false;
      return out;
    }
  }
  std::vector<size_t> pick(gens.size(), 0);
  while (true) {
    std::vector<int> rho(n, 0);
    for (size_t i = 1; i < bfs.size(); ++i) {
      int e = bfs[i];
      rho[e] = ext.total->mul(rho[parent[e]], candidates[via[e]][pick[via[e]]]);
    }
    if (gamma->is_homomorphism(rho, *ext.total)) {
      bool over = true;
      for (int x = 0; x < n && over; ++x) over = ext.proj[rho[x]] == rho_bar[x];
      if (over) out.lifts.push_back(rho);
    }
    size_t c = 0;
    while (c < gens.size() && ++pick[c] == candidates[c].size()) pick[c++] = 0;
    if (c == gens.size()) break;
  }
  return out;
}

std::vector<std::vector<int>> all_homomorphisms(const GroupPtr& gamma,
                                                const GroupPtr& h) {
  auto gens = gamma->generators();
  int n = gamma->order();
  std::vector<std::vector<int>> out;
  if (gens.empty()) {
    out.push_back(std::vector<int>(n, 0));
    return out;
  }
  std::vector<int> parent(n, -1), via(n, -1);
  std::vector<int> bfs{0};
  for (size_t i = 0; i < bfs.size(); ++i)
    for (size_t gi = 0; gi < gens.size(); ++gi) {
      int nxt = gamma->mul(bfs[i], gens[gi]);
      if (nxt != 0 && parent[nxt] < 0) {
        parent[nxt] = bfs[i];
        via[nxt] = static_cast<int>(gi);
        bfs.push_back(nxt);
      }
    }
  unsigned long long count = 1;
  for (size_t i = 0; i < gens.size(); ++i) {
    count *= static_cast<unsigned long long>(h->order());
    if (count > (1u << 22))
      throw std::invalid_argument("all_homomorphisms: search too large");
  }
  std::vector<int> pick(gens.size(), 0);
  while (true) {
    std::vector<int> f(n, 0);
    for (size_t i = 1; i < bfs.size(); ++i) {
      int e = bfs[i];
      f[e] = h->mul(f[parent[e]], pick[via[e]]);
    }
    if (gamma->is_homomorphism(f, *h)) out.push_back(f);
    size_t c = 0;
    while (c < gens.size() && ++pick[c] == h->order()) pick[c++] = 0;
    if (c == gens.size()) break;
  }
  return out;
}

}  // namespace cohomlab::gcohom
