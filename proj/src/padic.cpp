#include "sl2h/padic.hpp"

#include <algorithm>
#include <cmath>

#include "sl2h/errors.hpp"

namespace sl2h {

int max_rel_precision(int p) {
  int k = 0;
  u128 v = 1;
  while (v * (u128)p < ((u128)1 << 62)) {
    v *= p;
    ++k;
  }
  return k;
}

u64 ipow(u64 p, int k) {
  u64 r = 1;
  for (int i = 0; i < k; ++i) r *= p;
  return r;
}

u64 mulmod(u64 a, u64 b, u64 m) { return (u64)((u128)a * b % m); }

u64 invmod(u64 a, u64 m) {
  if (m == 1) return 0;
  i64 t = 0, nt = 1;
  i64 r = (i64)m, nr = (i64)(a % m);
  while (nr) {
    i64 q = r / nr;
    i64 tmp = t - q * nt;
    t = nt;
    nt = tmp;
    tmp = r - q * nr;
    r = nr;
    nr = tmp;
  }
  if (r != 1) throw SL2H_ERR("PreconditionViolation", "not a unit modulo m");
  if (t < 0) t += (i64)m;
  return (u64)t;
}

std::string to_string(SquareClass c) {
  switch (c) {
    case SquareClass::Square: return "square";
    case SquareClass::UnitNonsquare: return "unit-nonsquare";
    case SquareClass::RamifiedEven: return "ramified-even";
    case SquareClass::RamifiedOddNonsquare: return "ramified-odd-nonsquare";
    case SquareClass::Zero: return "zero";
  }
  return "?";
}

Padic Padic::zero(int p, i64 abs) {
  Padic x;
  x.p_ = p;
  x.val_ = kInfVal;
  x.unit_ = 0;
  x.abs_ = abs;
  return x;
}

Padic Padic::make(int p, i64 val, u64 raw, i64 abs) {
  if (raw == 0 || val >= abs) return zero(p, abs);
  while (raw % p == 0) {
    raw /= p;
    ++val;
  }
  if (val >= abs) return zero(p, abs);
  int K = max_rel_precision(p);
  if (abs - val > K) abs = val + K;
  Padic x;
  x.p_ = p;
  x.val_ = val;
  x.abs_ = abs;
  x.unit_ = raw % ipow(p, (int)(abs - val));
  return x;
}

Padic Padic::from_int(int p, i64 v, i64 abs) { return from_rational(p, mpq_class(v), abs); }

Padic Padic::from_rational(int p, const mpq_class& q0, i64 abs) {
  mpq_class q = q0;
  q.canonicalize();
  if (q == 0) return zero(p, abs);
  mpz_class num = q.get_num(), den = q.get_den();
  i64 val = 0;
  mpz_class P(p);
  while (num % P == 0) {
    num /= P;
    ++val;
  }
  while (den % P == 0) {
    den /= P;
    --val;
  }
  if (val >= abs) return zero(p, abs);
  int K = max_rel_precision(p);
  i64 rel = std::min<i64>(abs - val, K);
  mpz_class M;
  mpz_ui_pow_ui(M.get_mpz_t(), p, rel);
  mpz_class inv;
  mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), M.get_mpz_t());
  mpz_class u = num * inv;
  u %= M;
  if (u < 0) u += M;
  return make(p, val, u.get_ui(), val + rel);
}

mpq_class Padic::norm() const {
  if (is_zero()) return 0;
  mpz_class pv;
  mpz_ui_pow_ui(pv.get_mpz_t(), p_, (unsigned long)std::llabs(val_));
  if (val_ >= 0) return mpq_class(1) / mpq_class(pv);
  return mpq_class(pv);
}

Padic Padic::operator-() const {
  if (is_zero()) return *this;
  Padic x = *this;
  u64 M = ipow(p_, (int)(abs_ - val_));
  x.unit_ = (M - unit_) % M;
  return x;
}

Padic Padic::operator+(const Padic& o) const {
  i64 abs = std::min(abs_, o.abs_);
  if (is_zero() && o.is_zero()) return zero(p_, abs);
  i64 v = std::min(val_, o.val_);
  if (v >= abs) return zero(p_, abs);
  int K = max_rel_precision(p_);
  if (abs - v > K) abs = v + K;
  int rel = (int)(abs - v);
  u64 M = ipow(p_, rel);
  auto term = [&](const Padic& x) -> u64 {
    if (x.is_zero()) return 0;
    i64 sh = x.val_ - v;
    if (sh >= rel) return 0;
    return mulmod(x.unit_ % M, ipow(p_, (int)sh), M);
  };
  u64 s = (term(*this) + term(o)) % M;
  return make(p_, v, s, abs);
}

Padic Padic::operator-(const Padic& o) const { return *this + (-o); }

Padic Padic::operator*(const Padic& o) const {
  if (is_zero() && o.is_zero()) return zero(p_, abs_ + o.abs_);
  if (is_zero()) return zero(p_, abs_ + o.val_);
  if (o.is_zero()) return zero(p_, o.abs_ + val_);
  i64 v = val_ + o.val_;
  i64 rel = std::min(rel_precision(), o.rel_precision());
  u64 M = ipow(p_, (int)rel);
  return make(p_, v, mulmod(unit_ % M, o.unit_ % M, M), v + rel);
}

Padic Padic::inverse() const {
  if (is_zero()) throw SL2H_ERR("InsufficientPrecision", "inverse of an element that is zero at working precision");
  i64 rel = rel_precision();
  u64 M = ipow(p_, (int)rel);
  return make(p_, -val_, invmod(unit_, M), -val_ + rel);
}

u64 Padic::mod_pk(int k) const {
  if (abs_ < k) throw SL2H_ERR("InsufficientPrecision", "reduction mod p^" + std::to_string(k) + " needs more digits");
  if (is_zero() || val_ >= k) return 0;
  if (val_ < 0) throw SL2H_ERR("PreconditionViolation", "reduction of a non-integral element");
  u64 M = ipow(p_, k);
  return mulmod(unit_ % M, ipow(p_, (int)val_), M);
}

Padic Padic::shifted(i64 e) const {
  Padic x = *this;
  if (!is_zero()) x.val_ += e;
  x.abs_ += e;
  return x;
}

Padic Padic::with_abs(i64 abs) const {
  if (abs >= abs_) return *this;
  if (is_zero() || val_ >= abs) return zero(p_, abs);
  return make(p_, val_, unit_ % ipow(p_, (int)(abs - val_)), abs);
}

SquareClass Padic::square_class() const {
  if (is_zero()) return SquareClass::Zero;
  if (rel_precision() < 1) throw SL2H_ERR("InsufficientPrecision", "no residue digit available");
  u64 r = unit_ % p_;
  u64 e = 1, b = r;
  for (int k = (p_ - 1) / 2; k; k >>= 1) {
    if (k & 1) e = e * b % p_;
    b = b * b % p_;
  }
  bool sq = (e == 1);
  if (val_ % 2 == 0) return sq ? SquareClass::Square : SquareClass::UnitNonsquare;
  return sq ? SquareClass::RamifiedEven : SquareClass::RamifiedOddNonsquare;
}

std::string Padic::to_string() const {
  if (is_zero()) return "O(" + std::to_string(p_) + "^" + std::to_string(abs_) + ")";
  return std::to_string(p_) + "^" + std::to_string(val_) + "*" + std::to_string(unit_) + "+O(" +
         std::to_string(p_) + "^" + std::to_string(abs_) + ")";
}

}  // namespace sl2h
