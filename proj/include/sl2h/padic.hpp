#pragma once
#include <gmpxx.h>

#include <cstdint>
#include <limits>
#include <string>

namespace sl2h {

using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;

constexpr i64 kInfVal = std::numeric_limits<i64>::max() / 4;

// largest k with p^k < 2^62
int max_rel_precision(int p);
u64 ipow(u64 p, int k);
u64 mulmod(u64 a, u64 b, u64 m);
u64 invmod(u64 a, u64 m);  // a must be a unit mod m

enum class SquareClass { Square, UnitNonsquare, RamifiedEven, RamifiedOddNonsquare, Zero };
// RamifiedEven: odd valuation, unit part a square; RamifiedOddNonsquare: odd valuation, nonsquare unit part.
std::string to_string(SquareClass c);

// x = p^val * unit, known modulo p^abs. Zero at this precision iff val == kInfVal.
class Padic {
 public:
  Padic() = default;
  static Padic zero(int p, i64 abs);
  static Padic from_int(int p, i64 v, i64 abs);
  static Padic from_rational(int p, const mpq_class& q, i64 abs);

  int prime() const { return p_; }
  bool is_zero() const { return val_ == kInfVal; }
  i64 valuation() const { return val_; }
  i64 abs_precision() const { return abs_; }
  i64 rel_precision() const { return is_zero() ? 0 : abs_ - val_; }
  u64 unit() const { return unit_; }
  mpq_class norm() const;  // p^{-val}, 0 for zero

  Padic operator+(const Padic& o) const;
  Padic operator-(const Padic& o) const;
  Padic operator*(const Padic& o) const;
  Padic operator-() const;
  Padic inverse() const;  // InsufficientPrecision if zero
  Padic operator/(const Padic& o) const { return *this * o.inverse(); }

  // integral element reduced mod p^k into [0, p^k); needs val >= 0 and abs >= k
  u64 mod_pk(int k) const;
  // p^e * x as an integer mod p^k (used for canonical fractional parts)
  Padic shifted(i64 e) const;
  Padic with_abs(i64 abs) const;  // lower the absolute precision
  // equality modulo the common precision
  bool eq(const Padic& o) const { return (*this - o).is_zero(); }

  SquareClass square_class() const;
  std::string to_string() const;

 private:
  int p_ = 0;
  i64 val_ = kInfVal;
  u64 unit_ = 0;
  i64 abs_ = 0;
  static Padic make(int p, i64 val, u64 raw, i64 abs);
};

}  // namespace sl2h
