#include "cohomlab/unipotent.hpp"

#include <stdexcept>

namespace cohomlab::unipotent {

using linalg::mod_reduce;
using residue::ipow;

UnipotentMatrix::UnipotentMatrix(int dim, i64 modulus)
    : dim_(dim), mod_(modulus), e_(static_cast<size_t>(dim) * dim, 0) {
  if (dim < 2) throw std::invalid_argument("UnipotentMatrix: dim >= 2");
  for (int i = 0; i < dim; ++i) e_[i * dim + i] = 1 % modulus;
}

UnipotentMatrix UnipotentMatrix::elementary(int dim, i64 modulus, int i, int j,
                                            i64 c) {
  if (i >= j) throw std::invalid_argument("elementary: need i < j");
  UnipotentMatrix u(dim, modulus);
  u.set_entry(i, j, c);
  return u;
}

void UnipotentMatrix::set_entry(int i, int j, i64 v) {
  if (i >= j) throw std::invalid_argument("set_entry: strictly upper only");
  e_[(i - 1) * dim_ + (j - 1)] = mod_reduce(v, mod_);
}

UnipotentMatrix UnipotentMatrix::operator*(const UnipotentMatrix& o) const {
  if (dim_ != o.dim_ || mod_ != o.mod_)
    throw std::invalid_argument("matrix multiply: shape mismatch");
  UnipotentMatrix out(dim_, mod_);
  for (int i = 0; i < dim_; ++i)
    for (int j = i; j < dim_; ++j) {
      i64 s = 0;
      for (int t = i; t <= j; ++t) s += e_[i * dim_ + t] * o.e_[t * dim_ + j];
      out.e_[i * dim_ + j] = mod_reduce(s, mod_);
    }
  return out;
}

UnipotentMatrix UnipotentMatrix::inverse() const {
  // (I + N)^{-1} = I - N + N^2 - ...; N nilpotent of index < dim.
  Vec n(static_cast<size_t>(dim_) * dim_, 0);
  for (int i = 0; i < dim_; ++i)
    for (int j = i + 1; j < dim_; ++j) n[i * dim_ + j] = e_[i * dim_ + j];
  UnipotentMatrix out(dim_, mod_);
  Vec pw = n;
  i64 sign = -1;
  for (int t = 1; t < dim_; ++t) {
    for (int i = 0; i < dim_; ++i)
      for (int j = i + 1; j < dim_; ++j)
        out.e_[i * dim_ + j] =
            mod_reduce(out.e_[i * dim_ + j] + sign * pw[i * dim_ + j], mod_);
    // pw <- pw * n needs the full nilpotent product, including column j.
    Vec next(static_cast<size_t>(dim_) * dim_, 0);
    for (int i = 0; i < dim_; ++i)
      for (int j = i + 1; j < dim_; ++j) {
        i64 s = 0;
        for (int t2 = i + 1; t2 <= j; ++t2)
          s += pw[i * dim_ + t2] * n[t2 * dim_ + j];
        next[i * dim_ + j] = mod_reduce(s, mod_);
      }
    pw = std::move(next);
    sign = -sign;
  }
  // Verify: a wrong inverse here would poison everything downstream.
  UnipotentMatrix check = (*this) * out;
  if (!check.is_identity()) throw std::logic_error("inverse: verification failed");
  return out;
}

UnipotentMatrix UnipotentMatrix::power(long long e) const {
  UnipotentMatrix base = *this;
  if (e < 0) {
    base = inverse();
    e = -e;
  }
  UnipotentMatrix out(dim_, mod_);
  while (e > 0) {
    if (e & 1) out = out * base;
    base = base * base;
    e >>= 1;
  }
  return out;
}

UnipotentMatrix UnipotentMatrix::conj_by(const UnipotentMatrix& g) const {
  return g * (*this) * g.inverse();
}

bool UnipotentMatrix::is_identity() const {
  return *this == UnipotentMatrix(dim_, mod_);
}

bool UnipotentMatrix::in_center() const {
  for (int i = 1; i <= dim_; ++i)
    for (int j = i + 1; j <= dim_; ++j)
      if (!(i == 1 && j == dim_) && entry(i, j) != 0) return false;
  return true;
}

bool UnipotentMatrix::in_last_column() const {
  for (int i = 1; i <= dim_; ++i)
    for (int j = i + 1; j <= dim_; ++j)
      if (j != dim_ && entry(i, j) != 0) return false;
  return true;
}

StandardGenerators standard_generators(int k, i64 p, int m) {
  int dim = k + 2;
  i64 mod = ipow(p, m);
  UnipotentMatrix x(dim, mod);
  for (int i = 1; i <= k; ++i) x.set_entry(i, i + 1, 1);
  UnipotentMatrix y = UnipotentMatrix::elementary(dim, mod, k + 1, k + 2, 1);
  UnipotentMatrix z = UnipotentMatrix::elementary(dim, mod, 1, k + 2, 1);
  std::vector<UnipotentMatrix> yi;
  for (int i = 0; i <= k; ++i)
    yi.push_back(UnipotentMatrix::elementary(dim, mod, k + 1 - i, k + 2, 1));
  return StandardGenerators{x, y, z, std::move(yi)};
}

bool commutator_chain_check(int k, i64 p, int m) {
  auto g = standard_generators(k, p, m);
  UnipotentMatrix cur = g.y;
  for (int i = 0; i <= k; ++i) {
    if (cur != g.yi[i]) return false;
    cur = g.x * cur * g.x.inverse() * cur.inverse();
  }
  return true;
}

bool in_xy_subgroup(const StandardGenerators& gens, const UnipotentMatrix& u,
                    i64 p, int m, int k) {
  int rk = residue::floor_log_p_or0(k, p);
  i64 hord = ipow(p, m + rk);
  UnipotentMatrix xt(u.dim(), u.modulus());
  for (i64 t = 0; t < hord; ++t) {
    if ((u * xt.inverse()).in_last_column()) return true;
    xt = xt * gens.x;
  }
  return false;
}

LastColumnModule::LastColumnModule(int k, i64 p, int m, int n)
    : k_(k),
      p_(p),
      m_(m),
      n_(n),
      ring_(groupring::GroupRing::cyclic_p(residue::RingParams(p, m, n))),
      ikp1_(2, 1) {
  int rk = residue::floor_log_p_or0(k, p);
  if (m + rk > n)
    throw std::invalid_argument("LastColumnModule: need m + r_k <= n");
  ikp1_ = groupring::aug_power(ring_, k + 1).span();
  for (int j = 0; j <= k; ++j)
    basis_.push_back(ring_->sigma_minus_one_power(j));
}

Vec LastColumnModule::coords(const groupring::GroupRingElement& x) const {
  // Solve x = sum c_j (sigma-1)^j modulo I^{k+1}.
  std::vector<Vec> rows;
  for (const auto& b : basis_) rows.push_back(b.coeffs());
  for (const auto& r : ikp1_.basis()) rows.push_back(r);
  linalg::LeftSolver solver(ring_->modulus(), rows);
  auto sol = solver.solve(x.coeffs());
  if (!sol)
    throw std::invalid_argument("coords: element not in the module span");
  Vec out(k_ + 1);
  for (int j = 0; j <= k_; ++j) out[j] = (*sol)[j];
  return out;
}

UnipotentMatrix LastColumnModule::to_matrix(const Vec& c) const {
  UnipotentMatrix u(k_ + 2, ring_->modulus());
  for (int j = 0; j <= k_; ++j) u.set_entry(k_ + 1 - j, k_ + 2, c[j]);
  return u;
}

Vec LastColumnModule::from_matrix(const UnipotentMatrix& u) const {
  if (!u.in_last_column())
    throw std::invalid_argument("from_matrix: not in the last column");
  Vec c(k_ + 1);
  for (int j = 0; j <= k_; ++j) c[j] = u.entry(k_ + 1 - j, k_ + 2);
  return c;
}

Vec LastColumnModule::sigma_mult(const Vec& c, int e) const {
  groupring::GroupRingElement x = ring_->zero();
  for (int j = 0; j <= k_; ++j) x = x + basis_[j].scaled(c[j]);
  int g = static_cast<int>(mod_reduce(e, ring_->group().order()));
  return coords(ring_->basis(g) * x);
}

unsigned long long LastColumnModule::module_size() const {
  // |R[G]/I^{k+1}| = prod of pivots * N^(free columns); the ambient size
  // itself can overflow, the quotient cannot.
  i64 N = ring_->modulus();
  unsigned long long q = 1;
  const auto& rows = ikp1_.basis();
  for (size_t i = 0; i < rows.size(); ++i) {
    q *= static_cast<unsigned long long>(rows[i][ikp1_.pivot_cols()[i]]);
    if (q > (1ull << 60)) throw std::overflow_error("module_size");
  }
  int free_cols = ikp1_.cols() - static_cast<int>(rows.size());
  for (int i = 0; i < free_cols; ++i) {
    q *= static_cast<unsigned long long>(N);
    if (q > (1ull << 60)) throw std::overflow_error("module_size");
  }
  return q;
}

bool action_intertwines(const LastColumnModule& iso) {
  auto gens = standard_generators(iso.k(), iso.p(), iso.m());
  i64 pm = ipow(iso.p(), iso.m());
  Vec c(iso.k() + 1, 0);
  while (true) {
    UnipotentMatrix u = iso.to_matrix(c);
    UnipotentMatrix conj = u.conj_by(gens.x);
    if (iso.from_matrix(conj) != iso.sigma_mult(c)) return false;
    int t = 0;
    while (t <= iso.k() && ++c[t] == pm) c[t++] = 0;
    if (t > iso.k()) break;
  }
  return true;
}

RhoBuild build_rho(const LastColumnModule& iso, const gcohom::GroupPtr& gamma,
                   const std::vector<Vec>& fiber_coords, i64 t) {
  int pn = static_cast<int>(ipow(iso.p(), iso.n()));
  int nfib = static_cast<int>(fiber_coords.size());
  if (nfib * pn != gamma->order())
    throw std::invalid_argument("build_rho: gamma size mismatch");
  int dim = iso.k() + 2;
  i64 mod = iso.ring()->modulus();
  UnipotentMatrix s(dim, mod);
  for (int i = 1; i <= iso.k(); ++i) s.set_entry(i, i + 1, 1);
  s.set_entry(iso.k() + 1, iso.k() + 2, t);
  RhoBuild out{{}, true};
  out.rho.reserve(gamma->order());
  for (int g = 0; g < gamma->order(); ++g)
    out.rho.push_back(iso.to_matrix(fiber_coords[g / pn]) * s.power(g % pn));
  for (int a = 0; a < gamma->order() && out.homomorphism; ++a)
    for (int b = 0; b < gamma->order(); ++b)
      if (out.rho[gamma->mul(a, b)] != out.rho[a] * out.rho[b]) {
        out.homomorphism = false;
        break;
      }
  return out;
}

}  // namespace cohomlab::unipotent
