#include "cohomlab/residue.hpp"

#include <limits>
#include <stdexcept>

namespace cohomlab::residue {

bool is_prime(i64 p) {
  if (p < 2) return false;
  for (i64 d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

RingParams::RingParams(i64 p_, int m_) : p(p_), m(m_) {
  if (!is_prime(p)) throw std::invalid_argument("RingParams: p must be prime");
  if (m < 1) throw std::invalid_argument("RingParams: m must be >= 1");
}

RingParams::RingParams(i64 p_, int m_, int n_) : RingParams(p_, m_) {
  if (n_ < m_) throw std::invalid_argument("RingParams: need m <= n");
  n = n_;
}

i64 ipow(i64 base, int exp) {
  if (exp < 0) throw std::invalid_argument("ipow: negative exponent");
  i64 r = 1;
  for (int i = 0; i < exp; ++i) {
    if (r > std::numeric_limits<i64>::max() / base)
      throw std::overflow_error("ipow: overflow");
    r *= base;
  }
  return r;
}

i64 RingParams::coeff_modulus() const { return ipow(p, m); }

i64 RingParams::character_modulus() const {
  if (!n) throw std::logic_error("RingParams: n not set");
  return ipow(p, *n);
}

ResidueElement::ResidueElement(i64 v, RingParams pr) : value(0), params(pr) {
  i64 mod = pr.coeff_modulus();
  value = v % mod;
  if (value < 0) value += mod;
}

BigUint::BigUint(unsigned long long v) {
  while (v) {
    limbs_.push_back(static_cast<std::uint32_t>(v & 0xffffffffULL));
    v >>= 32;
  }
}

bool BigUint::is_zero() const { return limbs_.empty(); }

void BigUint::mul_small(unsigned long long c) {
  if (c >= (1ULL << 32))
    throw std::invalid_argument("mul_small: factor too large");
  if (c == 0 || is_zero()) {
    limbs_.clear();
    return;
  }
  unsigned long long carry = 0;
  for (auto& limb : limbs_) {
    unsigned long long cur = static_cast<unsigned long long>(limb) * c + carry;
    limb = static_cast<std::uint32_t>(cur & 0xffffffffULL);
    carry = cur >> 32;
  }
  while (carry) {
    limbs_.push_back(static_cast<std::uint32_t>(carry & 0xffffffffULL));
    carry >>= 32;
  }
}

void BigUint::divexact_small(unsigned long long c) {
  if (c == 0) throw std::invalid_argument("divexact_small: zero divisor");
  unsigned long long rem = 0;
  for (size_t i = limbs_.size(); i-- > 0;) {
    unsigned long long cur = (rem << 32) | limbs_[i];
    limbs_[i] = static_cast<std::uint32_t>(cur / c);
    rem = cur % c;
  }
  if (rem != 0) throw std::logic_error("divexact_small: not divisible");
  while (!limbs_.empty() && limbs_.back() == 0) limbs_.pop_back();
}

unsigned long long BigUint::mod_small(unsigned long long c) const {
  if (c == 0) throw std::invalid_argument("mod_small: zero modulus");
  unsigned long long rem = 0;
  for (size_t i = limbs_.size(); i-- > 0;)
    rem = ((rem << 32) | limbs_[i]) % c;
  return rem;
}

bool BigUint::divisible_by(unsigned long long c) const {
  return mod_small(c) == 0;
}

ResidueElement binom_mod(i64 a, i64 k, const RingParams& params) {
  if (a < 0 || k < 0) throw std::invalid_argument("binom_mod: negative input");
  if (k > a) return ResidueElement(0, params);
  if (k > a - k) k = a - k;
  BigUint acc(1);
  for (i64 i = 1; i <= k; ++i) {
    acc.mul_small(static_cast<unsigned long long>(a - k + i));
    acc.divexact_small(static_cast<unsigned long long>(i));
  }
  return ResidueElement(
      static_cast<i64>(acc.mod_small(
          static_cast<unsigned long long>(params.coeff_modulus()))),
      params);
}

int vp(i64 x, i64 p) {
  if (x == 0) throw std::invalid_argument("vp: valuation of zero is infinite");
  if (p < 2) throw std::invalid_argument("vp: bad prime");
  if (x < 0) x = -x;
  int e = 0;
  while (x % p == 0) {
    x /= p;
    ++e;
  }
  return e;
}

int floor_log_p(i64 k, i64 p) {
  if (k < 1) throw std::invalid_argument("floor_log_p: k must be >= 1");
  int r = 0;
  i64 q = p;
  while (q <= k) {
    ++r;
    q *= p;
  }
  return r;
}

int floor_log_p_or0(i64 k, i64 p) { return k == 0 ? 0 : floor_log_p(k, p); }

}  // namespace cohomlab::residue
