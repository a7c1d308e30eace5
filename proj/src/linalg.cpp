#include "cohomlab/linalg.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace cohomlab::linalg {

i64 mod_reduce(i64 x, i64 L) {
  i64 r = x % L;
  return r < 0 ? r + L : r;
}

i64 xgcd(i64 a, i64 b, i64& u, i64& v) {
  if (b == 0) {
    u = (a >= 0) ? 1 : -1;
    v = 0;
    return a >= 0 ? a : -a;
  }
  i64 u1, v1;
  i64 g = xgcd(b, a % b, u1, v1);
  u = v1;
  v = u1 - (a / b) * v1;
  return g;
}

std::optional<i64> inverse_mod(i64 a, i64 L) {
  i64 u, v;
  i64 g = xgcd(mod_reduce(a, L), L, u, v);
  if (g != 1) return std::nullopt;
  return mod_reduce(u, L);
}

i64 stabilizing_unit(i64 g, i64 L) {
  g = mod_reduce(g, L);
  if (g == 0) return 1;
  i64 d = std::gcd(g, L);
  i64 gp = g / d;
  i64 Lp = L / d;
  i64 u = Lp == 1 ? 1 : *inverse_mod(gp, Lp);
  // Lift to a unit mod L; some translate u + t*(L/d) is coprime to L.
  while (std::gcd(u, L) != 1) u += Lp;
  return mod_reduce(u, L);
}

namespace {

void row_scale_add(Vec& dst, const Vec& src, i64 c, i64 L) {
  for (size_t i = 0; i < dst.size(); ++i)
    dst[i] = mod_reduce(dst[i] + c * src[i], L);
}

Vec row_combine(const Vec& a, const Vec& b, i64 ca, i64 cb, i64 L) {
  Vec out(a.size());
  for (size_t i = 0; i < a.size(); ++i)
    out[i] = mod_reduce(ca * a[i] + cb * b[i], L);
  return out;
}

bool is_zero_row(const Vec& r) {
  return std::all_of(r.begin(), r.end(), [](i64 x) { return x == 0; });
}

// Howell normal form of the span of `work` in (Z/L)^cols.
void howell(std::vector<Vec>& work, i64 L, int cols, std::vector<Vec>& out,
            std::vector<int>& pivots) {
  out.clear();
  pivots.clear();
  for (auto& r : work)
    for (auto& x : r) x = mod_reduce(x, L);
  for (int col = 0; col < cols; ++col) {
    int pi = -1;
    for (size_t i = 0; i < work.size(); ++i) {
      if (work[i][col] == 0) continue;
      if (pi < 0) {
        pi = static_cast<int>(i);
        continue;
      }
      // Fold row i into the pivot row so only the pivot keeps this column.
      i64 u, v;
      i64 g = xgcd(work[pi][col], work[i][col], u, v);
      Vec np = row_combine(work[pi], work[i], u, v, L);
      Vec ni = row_combine(work[i], work[pi], work[pi][col] / g,
                           L - mod_reduce(work[i][col] / g, L), L);
      work[pi] = std::move(np);
      work[i] = std::move(ni);
    }
    if (pi < 0) continue;
    Vec piv = work[pi];
    work.erase(work.begin() + pi);
    i64 u = stabilizing_unit(piv[col], L);
    for (auto& x : piv) x = mod_reduce(u * x, L);
    i64 d = piv[col];  // now the canonical divisor gcd(old, L)
    if (L % d != 0) throw std::logic_error("howell: pivot not a divisor");
    if (L / d > 1) {
      Vec ann(piv);
      for (auto& x : ann) x = mod_reduce((L / d) * x, L);
      if (!is_zero_row(ann)) work.push_back(std::move(ann));
    }
    out.push_back(std::move(piv));
    pivots.push_back(col);
    work.erase(std::remove_if(work.begin(), work.end(), is_zero_row),
               work.end());
  }
  // Reduce entries above each pivot modulo the pivot value.
  for (size_t i = 0; i < out.size(); ++i) {
    for (size_t j = 0; j < i; ++j) {
      i64 q = out[j][pivots[i]] / out[i][pivots[i]];
      if (q != 0) row_scale_add(out[j], out[i], L - q % L, L);
    }
  }
}

}  // namespace

RowSpan::RowSpan(i64 modulus, int cols) : L_(modulus), cols_(cols) {
  if (modulus < 2) throw std::invalid_argument("RowSpan: modulus must be >= 2");
}

RowSpan RowSpan::from_rows(i64 modulus, int cols, std::vector<Vec> rows) {
  RowSpan s(modulus, cols);
  for (const auto& r : rows)
    if (static_cast<int>(r.size()) != cols)
      throw std::invalid_argument("RowSpan: row width mismatch");
  howell(rows, modulus, cols, s.rows_, s.pivots_);
  return s;
}

Vec RowSpan::reduce(Vec v) const {
  if (static_cast<int>(v.size()) != cols_)
    throw std::invalid_argument("RowSpan::reduce: width mismatch");
  for (auto& x : v) x = mod_reduce(x, L_);
  for (size_t i = 0; i < rows_.size(); ++i) {
    i64 q = v[pivots_[i]] / rows_[i][pivots_[i]];
    if (q != 0) row_scale_add(v, rows_[i], L_ - q % L_, L_);
  }
  return v;
}

bool RowSpan::contains(const Vec& v) const { return is_zero_row(reduce(v)); }

std::optional<Vec> RowSpan::coordinates(const Vec& v) const {
  Vec w = v;
  for (auto& x : w) x = mod_reduce(x, L_);
  Vec coeff(rows_.size(), 0);
  for (size_t i = 0; i < rows_.size(); ++i) {
    i64 q = w[pivots_[i]] / rows_[i][pivots_[i]];
    coeff[i] = q;
    if (q != 0) row_scale_add(w, rows_[i], L_ - q % L_, L_);
  }
  if (!is_zero_row(w)) return std::nullopt;
  return coeff;
}

unsigned long long RowSpan::size() const {
  unsigned long long n = 1;
  for (size_t i = 0; i < rows_.size(); ++i) n *= L_ / rows_[i][pivots_[i]];
  return n;
}

bool RowSpan::size_exceeds(unsigned long long bound) const {
  unsigned long long n = 1;
  for (size_t i = 0; i < rows_.size(); ++i) {
    n *= static_cast<unsigned long long>(L_ / rows_[i][pivots_[i]]);
    if (n > bound) return true;
  }
  return false;
}

RowSpan RowSpan::sum(const RowSpan& other) const {
  if (L_ != other.L_ || cols_ != other.cols_)
    throw std::invalid_argument("RowSpan::sum: shape mismatch");
  std::vector<Vec> rows = rows_;
  rows.insert(rows.end(), other.rows_.begin(), other.rows_.end());
  return from_rows(L_, cols_, std::move(rows));
}

RowSpan RowSpan::intersect(const RowSpan& other) const {
  if (L_ != other.L_ || cols_ != other.cols_)
    throw std::invalid_argument("RowSpan::intersect: shape mismatch");
  // Zassenhaus: rows (b,b) for b in this, (c,0) for c in other; members of
  // the span with zero first half have second half in the intersection.
  std::vector<Vec> rows;
  for (const auto& b : rows_) {
    Vec r(2 * cols_);
    std::copy(b.begin(), b.end(), r.begin());
    std::copy(b.begin(), b.end(), r.begin() + cols_);
    rows.push_back(std::move(r));
  }
  for (const auto& c : other.rows_) {
    Vec r(2 * cols_, 0);
    std::copy(c.begin(), c.end(), r.begin());
    rows.push_back(std::move(r));
  }
  std::vector<Vec> h;
  std::vector<int> piv;
  howell(rows, L_, 2 * cols_, h, piv);
  std::vector<Vec> inter;
  for (const auto& r : h) {
    if (std::all_of(r.begin(), r.begin() + cols_,
                    [](i64 x) { return x == 0; }))
      inter.emplace_back(r.begin() + cols_, r.end());
  }
  return from_rows(L_, cols_, std::move(inter));
}

bool RowSpan::subspan_of(const RowSpan& other) const {
  for (const auto& r : rows_)
    if (!other.contains(r)) return false;
  return true;
}

bool RowSpan::operator==(const RowSpan& other) const {
  return L_ == other.L_ && cols_ == other.cols_ && rows_ == other.rows_;
}

std::string RowSpan::to_string() const {
  std::ostringstream os;
  os << "span mod " << L_ << " [";
  for (size_t i = 0; i < rows_.size(); ++i) {
    if (i) os << "; ";
    for (int j = 0; j < cols_; ++j) {
      if (j) os << ' ';
      os << rows_[i][j];
    }
  }
  os << "]";
  return os.str();
}

LeftSolver::LeftSolver(i64 modulus, std::vector<Vec> a_rows)
    : L_(modulus),
      unknowns_(static_cast<int>(a_rows.size())),
      eqs_(a_rows.empty() ? 0 : static_cast<int>(a_rows[0].size())),
      aug_(modulus, 0) {
  std::vector<Vec> rows;
  rows.reserve(a_rows.size());
  for (int i = 0; i < unknowns_; ++i) {
    Vec r(eqs_ + unknowns_, 0);
    std::copy(a_rows[i].begin(), a_rows[i].end(), r.begin());
    r[eqs_ + i] = 1;
    rows.push_back(std::move(r));
  }
  aug_ = RowSpan::from_rows(L_, eqs_ + unknowns_, std::move(rows));
  for (const auto& r : aug_.basis()) {
    if (std::all_of(r.begin(), r.begin() + eqs_, [](i64 x) { return x == 0; }))
      kernel_.emplace_back(r.begin() + eqs_, r.end());
  }
}

std::optional<Vec> LeftSolver::solve(const Vec& b) const {
  if (static_cast<int>(b.size()) != eqs_)
    throw std::invalid_argument("LeftSolver::solve: rhs width mismatch");
  Vec v(eqs_ + unknowns_, 0);
  std::copy(b.begin(), b.end(), v.begin());
  Vec res = aug_.reduce(std::move(v));
  if (!std::all_of(res.begin(), res.begin() + eqs_,
                   [](i64 x) { return x == 0; }))
    return std::nullopt;
  Vec x(res.begin() + eqs_, res.end());
  for (auto& c : x) c = mod_reduce(-c, L_);
  return x;
}

namespace {

// |{x in span : c*x in sub}| / |sub|, the c-torsion of span/sub.
unsigned long long torsion_count(const RowSpan& span, const RowSpan& sub,
                                 i64 c) {
  i64 L = span.modulus();
  // Elements x of span with c*x in sub: write x = t * basis(span); then
  // c*x in sub iff [t|u] kills the stack [c*basis(span); basis(sub)] for
  // some u, so take that kernel and map the t-part back to the ambient.
  size_t nb = span.basis().size();
  std::vector<Vec> sys;
  for (const auto& r : span.basis()) {
    Vec s(r);
    for (auto& v : s) v = mod_reduce(c * v, L);
    sys.push_back(std::move(s));
  }
  for (const auto& r : sub.basis()) sys.push_back(r);
  LeftSolver solver(L, sys);
  std::vector<Vec> tor_rows = sub.basis();
  for (const auto& t : solver.kernel()) {
    Vec x(span.cols(), 0);
    for (size_t i = 0; i < nb; ++i)
      if (t[i] != 0)
        for (int j = 0; j < span.cols(); ++j)
          x[j] = mod_reduce(x[j] + t[i] * span.basis()[i][j], L);
    tor_rows.push_back(std::move(x));
  }
  RowSpan tor = RowSpan::from_rows(L, span.cols(), std::move(tor_rows));
  return quotient_size(tor, sub);
}

}  // namespace

std::vector<i64> quotient_cyclic_orders(const RowSpan& span,
                                        const RowSpan& sub) {
  if (!sub.subspan_of(span))
    throw std::invalid_argument("quotient_cyclic_orders: not a subspan");
  i64 L = span.modulus();
  std::vector<i64> primes;
  i64 rest = L;
  for (i64 p = 2; p * p <= rest; ++p)
    if (rest % p == 0) {
      primes.push_back(p);
      while (rest % p == 0) rest /= p;
    }
  if (rest > 1) primes.push_back(rest);

  std::vector<i64> orders;
  for (i64 p : primes) {
    // s_j = p^j-torsion count; the number of cyclic p-factors of order
    // >= p^j is log_p(s_j / s_{j-1}).
    std::vector<unsigned long long> s{1};
    i64 pj = 1;
    while (true) {
      pj *= p;
      unsigned long long sj = torsion_count(span, sub, mod_reduce(pj, L));
      if (sj == s.back()) break;
      s.push_back(sj);
      if (s.size() > 64) throw std::logic_error("torsion count runaway");
    }
    std::vector<int> at_least;  // at_least[j] = #factors with order >= p^(j+1)
    for (size_t j = 1; j < s.size(); ++j) {
      unsigned long long ratio = s[j] / s[j - 1];
      int cnt = 0;
      while (ratio > 1) ratio /= p, ++cnt;
      at_least.push_back(cnt);
    }
    for (size_t j = 0; j < at_least.size(); ++j) {
      int exact = at_least[j] - (j + 1 < at_least.size() ? at_least[j + 1] : 0);
      i64 o = 1;
      for (size_t t = 0; t <= j; ++t) o *= p;
      for (int c = 0; c < exact; ++c) orders.push_back(o);
    }
  }
  std::sort(orders.begin(), orders.end(), std::greater<i64>());
  return orders;
}

unsigned long long quotient_size(const RowSpan& span, const RowSpan& sub) {
  // The individual sizes can overflow; the ratio cannot (for our uses), so
  // work with prime exponents.
  i64 L = span.modulus();
  std::vector<i64> primes;
  i64 rest = L;
  for (i64 p = 2; p * p <= rest; ++p)
    if (rest % p == 0) {
      primes.push_back(p);
      while (rest % p == 0) rest /= p;
    }
  if (rest > 1) primes.push_back(rest);
  std::vector<long long> exps(primes.size(), 0);
  auto account = [&](const RowSpan& s, long long sign) {
    for (size_t i = 0; i < s.basis().size(); ++i) {
      i64 f = L / s.basis()[i][s.pivot_cols()[i]];
      for (size_t t = 0; t < primes.size(); ++t)
        while (f % primes[t] == 0) {
          f /= primes[t];
          exps[t] += sign;
        }
    }
  };
  account(span, +1);
  account(sub, -1);
  unsigned long long q = 1;
  for (size_t t = 0; t < primes.size(); ++t) {
    if (exps[t] < 0) throw std::invalid_argument("quotient_size: not a subspan");
    for (long long e = 0; e < exps[t]; ++e) {
      q *= static_cast<unsigned long long>(primes[t]);
      if (q > (1ull << 62)) throw std::overflow_error("quotient_size");
    }
  }
  return q;
}

std::vector<Vec> enumerate_elements(const RowSpan& span,
                                    unsigned long long guard) {
  if (span.size_exceeds(guard))
    throw std::invalid_argument("enumerate_elements: span too large");
  i64 L = span.modulus();
  const auto& rows = span.basis();
  std::vector<i64> ranges;
  for (size_t i = 0; i < rows.size(); ++i)
    ranges.push_back(L / rows[i][span.pivot_cols()[i]]);
  std::vector<Vec> out;
  std::vector<i64> c(rows.size(), 0);
  while (true) {
    Vec v(span.cols(), 0);
    for (size_t i = 0; i < rows.size(); ++i)
      if (c[i] != 0)
        for (int j = 0; j < span.cols(); ++j)
          v[j] = mod_reduce(v[j] + c[i] * rows[i][j], L);
    out.push_back(std::move(v));
    size_t t = 0;
    while (t < rows.size() && ++c[t] == ranges[t]) c[t++] = 0;
    if (t == rows.size()) break;
  }
  return out;
}

}  // namespace cohomlab::linalg
