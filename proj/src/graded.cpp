#include "cohomlab/graded.hpp"

#include <algorithm>
#include <stdexcept>

#include "cohomlab/residue.hpp"

namespace cohomlab::graded {

using linalg::LeftSolver;
using linalg::mod_reduce;

FilteredModule::FilteredModule(i64 p, std::vector<i64> orders,
                               std::vector<Vec> sigma)
    : p_(p), rank_(static_cast<int>(orders.size())), orders_(std::move(orders)),
      sigma_(std::move(sigma)) {
  if (!residue::is_prime(p_)) throw std::invalid_argument("module: p prime");
  big_ = 1;
  unsigned long long total = 1;
  for (i64 d : orders_) {
    i64 q = d;
    while (q > 1) {
      if (q % p_ != 0)
        throw std::invalid_argument("module: orders must be p-powers");
      q /= p_;
    }
    big_ = std::max(big_, d);
    total *= static_cast<unsigned long long>(d);
  }
  if (big_ < 2) big_ = p_;
  if (total > (1ull << 22))
    throw std::invalid_argument("module: too large");
  if (static_cast<int>(sigma_.size()) != rank_)
    throw std::invalid_argument("module: sigma rank");
  for (int j = 0; j < rank_; ++j) {
    if (static_cast<int>(sigma_[j].size()) != rank_)
      throw std::invalid_argument("module: sigma rank");
    for (int i = 0; i < rank_; ++i) {
      sigma_[j][i] = mod_reduce(sigma_[j][i], orders_[j]);
      if ((sigma_[j][i] * orders_[i]) % orders_[j] != 0)
        throw std::invalid_argument("module: sigma not well-defined");
    }
  }
  // sigma must have p-power order (it generates the cyclic group).
  n_ = 0;
  std::vector<Vec> ident(rank_, Vec(rank_, 0));
  for (int i = 0; i < rank_; ++i) ident[i][i] = 1 % orders_[i];
  std::vector<Vec> acc = sigma_;
  int guard = 0;
  while (acc != ident) {
    // acc <- acc^p
    std::vector<Vec> pw = ident;
    for (i64 t = 0; t < p_; ++t) {
      std::vector<Vec> tmp(rank_, Vec(rank_, 0));
      for (int a = 0; a < rank_; ++a)
        for (int b = 0; b < rank_; ++b) {
          i64 s = 0;
          for (int l = 0; l < rank_; ++l) s += acc[a][l] * pw[l][b];
          tmp[a][b] = mod_reduce(s, orders_[a]);
        }
      pw = tmp;
    }
    acc = pw;
    ++n_;
    if (++guard > 40)
      throw std::invalid_argument("module: sigma order is not a p-power");
  }
}

unsigned long long FilteredModule::size() const {
  unsigned long long s = 1;
  for (i64 d : orders_) s *= static_cast<unsigned long long>(d);
  return s;
}

Vec FilteredModule::reduce(Vec v) const {
  for (int i = 0; i < rank_; ++i) v[i] = mod_reduce(v[i], orders_[i]);
  return v;
}

Vec FilteredModule::act_sigma(const Vec& v) const {
  Vec out(rank_, 0);
  for (int j = 0; j < rank_; ++j) {
    i64 s = 0;
    for (int i = 0; i < rank_; ++i) s += sigma_[j][i] * v[i];
    out[j] = mod_reduce(s, orders_[j]);
  }
  return out;
}

Vec FilteredModule::shift(const Vec& v) const {
  Vec out = act_sigma(v);
  for (int i = 0; i < rank_; ++i) out[i] = mod_reduce(out[i] - v[i], orders_[i]);
  return out;
}

Vec FilteredModule::shift_pow(Vec v, int k) const {
  for (int t = 0; t < k; ++t) v = shift(v);
  return v;
}

Vec FilteredModule::embed(const Vec& raw) const {
  Vec out(rank_);
  for (int i = 0; i < rank_; ++i)
    out[i] = mod_reduce((big_ / orders_[i]) * raw[i], big_);
  return out;
}

RowSpan FilteredModule::full_span() const {
  std::vector<Vec> rows;
  for (int i = 0; i < rank_; ++i) {
    Vec r(rank_, 0);
    r[i] = big_ / orders_[i];
    rows.push_back(std::move(r));
  }
  return RowSpan::from_rows(big_, rank_, std::move(rows));
}

RowSpan FilteredModule::zero_span() const {
  return RowSpan::from_rows(big_, rank_, {});
}

RowSpan FilteredModule::span_of(const std::vector<Vec>& raw_gens) const {
  // Close under sigma so the span is a submodule.
  std::vector<Vec> rows;
  int ord = 1;
  for (int i = 0; i < n_; ++i) ord *= static_cast<int>(p_);
  for (const auto& g : raw_gens) {
    Vec cur = reduce(g);
    for (int t = 0; t < ord; ++t) {
      rows.push_back(embed(cur));
      cur = act_sigma(cur);
    }
  }
  return RowSpan::from_rows(big_, rank_, std::move(rows));
}

RowSpan FilteredModule::filtration(int k) const {
  while (static_cast<int>(filt_.size()) <= k) {
    if (filt_.empty()) {
      filt_.push_back(full_span());
      continue;
    }
    // Image of the previous stage under (sigma - 1); copy the basis first,
    // the push_back below may reallocate.
    std::vector<Vec> prev = filt_.back().basis();
    std::vector<Vec> rows;
    for (const auto& r : prev) {
      Vec raw(rank_);
      for (int i = 0; i < rank_; ++i) raw[i] = r[i] / (big_ / orders_[i]);
      rows.push_back(embed(shift(raw)));
    }
    filt_.push_back(RowSpan::from_rows(big_, rank_, std::move(rows)));
  }
  return filt_[k];
}

int FilteredModule::nilpotence_degree() const {
  int k = 0;
  while (filtration(k).size() > 1) {
    ++k;
    if (k > 512) throw std::logic_error("filtration does not stabilize");
  }
  return k;
}

RowSpan FilteredModule::power_kernel(int k) const {
  // Solve (sigma-1)^k x = 0 over raw unknowns carried mod big_.
  std::vector<Vec> sys(rank_);
  for (int i = 0; i < rank_; ++i) {
    Vec e(rank_, 0);
    e[i] = 1;
    Vec img = shift_pow(e, k);
    Vec row(rank_);
    for (int j = 0; j < rank_; ++j)
      row[j] = mod_reduce((big_ / orders_[j]) * img[j], big_);
    sys[i] = std::move(row);
  }
  LeftSolver solver(big_, sys);
  std::vector<Vec> rows;
  for (const auto& t : solver.kernel()) {
    Vec raw(rank_);
    for (int i = 0; i < rank_; ++i) raw[i] = mod_reduce(t[i], orders_[i]);
    rows.push_back(embed(raw));
  }
  return RowSpan::from_rows(big_, rank_, std::move(rows));
}

RowSpan FilteredModule::power_kernel_into(int k, const RowSpan& target,
                                          int e) const {
  // (sigma-1)^k x = element of target + p^e M: stack the allowance rows.
  std::vector<Vec> sys;
  for (int i = 0; i < rank_; ++i) {
    Vec ei(rank_, 0);
    ei[i] = 1;
    Vec img = shift_pow(ei, k);
    Vec row(rank_);
    for (int j = 0; j < rank_; ++j)
      row[j] = mod_reduce((big_ / orders_[j]) * img[j], big_);
    sys.push_back(std::move(row));
  }
  size_t nb = sys.size();
  for (const auto& r : target.basis()) sys.push_back(r);
  i64 pe = 1;
  for (int t = 0; t < e && pe < big_; ++t) pe *= p_;
  for (int i = 0; i < rank_; ++i) {
    Vec ei(rank_, 0);
    ei[i] = mod_reduce(pe, orders_[i]);
    sys.push_back(embed(ei));
  }
  LeftSolver solver(big_, sys);
  std::vector<Vec> rows;
  for (const auto& t : solver.kernel()) {
    Vec raw(rank_);
    for (size_t i = 0; i < nb; ++i) raw[i] = mod_reduce(t[i], orders_[i]);
    rows.push_back(embed(raw));
  }
  return RowSpan::from_rows(big_, rank_, std::move(rows));
}

std::vector<i64> graded_piece(const FilteredModule& m, int k) {
  RowSpan top = m.filtration(k);
  RowSpan next = m.filtration(k + 1);
  // sigma acts trivially on the quotient: (sigma-1) I^k is inside I^{k+1}.
  for (const auto& r : top.basis()) {
    Vec raw(m.rank());
    for (int i = 0; i < m.rank(); ++i)
      raw[i] = r[i] / (m.modulus() / m.orders()[i]);
    if (!next.contains(m.embed(m.shift(raw))))
      throw std::logic_error("graded_piece: action not trivial on the piece");
  }
  return linalg::quotient_cyclic_orders(top, next);
}

bool gr_surjection_check(const FilteredModule& m, int k) {
  // Well-defined: (sigma-1) I^{k+1} inside I^{k+2}; surjective: the image
  // of I^k M under (sigma-1) together with I^{k+2} spans I^{k+1}.
  RowSpan lower = m.filtration(k);
  RowSpan mid = m.filtration(k + 1);
  RowSpan upper = m.filtration(k + 2);
  std::vector<Vec> rows = upper.basis();
  for (const auto& r : lower.basis()) {
    Vec raw(m.rank());
    for (int i = 0; i < m.rank(); ++i)
      raw[i] = r[i] / (m.modulus() / m.orders()[i]);
    rows.push_back(m.embed(m.shift(raw)));
  }
  RowSpan image = RowSpan::from_rows(m.modulus(), m.rank(), std::move(rows));
  for (const auto& r : mid.basis()) {
    Vec raw(m.rank());
    for (int i = 0; i < m.rank(); ++i)
      raw[i] = r[i] / (m.modulus() / m.orders()[i]);
    if (!upper.contains(m.embed(m.shift(raw)))) return false;
  }
  return image == mid;
}

std::vector<i64> decomposition_free_quotient(const FilteredModule& m,
                                             const RowSpan& d_embedded,
                                             int k) {
  // sigma-stability of D.
  for (const auto& r : d_embedded.basis()) {
    Vec raw(m.rank());
    for (int i = 0; i < m.rank(); ++i)
      raw[i] = r[i] / (m.modulus() / m.orders()[i]);
    if (!d_embedded.contains(m.embed(m.act_sigma(raw))))
      throw std::invalid_argument("quotient: submodule not sigma-stable");
  }
  // I^k D: apply (sigma-1)^k to the generators of D.
  RowSpan up = m.filtration(k + 1);
  RowSpan down = m.filtration(k);
  std::vector<Vec> rows = up.basis();
  for (const auto& r : d_embedded.basis()) {
    Vec raw(m.rank());
    for (int i = 0; i < m.rank(); ++i)
      raw[i] = r[i] / (m.modulus() / m.orders()[i]);
    rows.push_back(m.embed(m.shift_pow(raw, k)));
  }
  RowSpan denom = RowSpan::from_rows(m.modulus(), m.rank(), std::move(rows));
  if (!denom.subspan_of(down))
    throw std::logic_error("quotient: denominator leaves the filtration");
  return linalg::quotient_cyclic_orders(down, denom);
}

MainIsoReport mainthm_map_check(const FilteredModule& m, int k) {
  MainIsoReport rep{true, true, true, 0};
  RowSpan ker = m.power_kernel(k);
  RowSpan filt1 = m.filtration(1);
  RowSpan filtk = m.filtration(k);
  RowSpan filtk1 = m.filtration(k + 1);
  RowSpan denom = ker.sum(filt1);
  // Kernel of the induced map equals ker + I M: both inclusions.
  //  (<=): elements of ker + IM land in I^{k+1} M.
  for (const auto& r : denom.basis()) {
    Vec raw(m.rank());
    for (int i = 0; i < m.rank(); ++i)
      raw[i] = r[i] / (m.modulus() / m.orders()[i]);
    if (!filtk1.contains(m.embed(m.shift_pow(raw, k))))
      rep.kernel_matches = false;
  }
  //  (>=): the preimage of I^{k+1} M is inside ker + I M.
  RowSpan preimage = [&] {
    std::vector<Vec> sys;
    for (int i = 0; i < m.rank(); ++i) {
      Vec ei(m.rank(), 0);
      ei[i] = 1;
      sys.push_back(m.embed(m.shift_pow(ei, k)));
    }
    size_t nb = sys.size();
    for (const auto& r : filtk1.basis()) sys.push_back(r);
    LeftSolver solver(m.modulus(), sys);
    std::vector<Vec> rows;
    for (const auto& t : solver.kernel()) {
      Vec raw(m.rank());
      for (size_t i = 0; i < nb; ++i)
        raw[i] = mod_reduce(t[i], m.orders()[i]);
      rows.push_back(m.embed(raw));
    }
    return RowSpan::from_rows(m.modulus(), m.rank(), std::move(rows));
  }();
  if (!preimage.subspan_of(denom)) rep.kernel_matches = false;
  if (!denom.subspan_of(preimage)) rep.kernel_matches = false;

  // Surjectivity: images of all of M span gr^k.
  std::vector<Vec> rows = filtk1.basis();
  for (int i = 0; i < m.rank(); ++i) {
    Vec ei(m.rank(), 0);
    ei[i] = 1;
    rows.push_back(m.embed(m.shift_pow(ei, k)));
  }
  RowSpan img = RowSpan::from_rows(m.modulus(), m.rank(), std::move(rows));
  rep.surjective = img == filtk;

  unsigned long long lhs = m.full_span().size() / denom.size();
  unsigned long long rhs = filtk.size() / filtk1.size();
  rep.sizes_match = lhs == rhs;
  rep.side_order = rhs;
  return rep;
}

}  // namespace cohomlab::graded
