#pragma once
#include <gmpxx.h>

#include <complex>
#include <string>
#include <vector>

namespace sl2h {

// Element of Q(zeta_N) in the power basis 1, z, ..., z^{phi(N)-1},
// or a complex double with a tolerance (float mode).
class Scalar {
 public:
  Scalar() : order_(1), coef_(1) {}
  Scalar(long v) : order_(1), coef_(1) { coef_[0] = v; }
  Scalar(const mpq_class& q) : order_(1), coef_(1, q) { coef_[0].canonicalize(); }
  static Scalar rational(long num, long den);
  static Scalar zeta(int N, long k);  // zeta_N^k
  static Scalar from_float(std::complex<double> z, double tol);
  // coefficients against the power basis of Q(zeta_N)
  static Scalar from_coeffs(int N, std::vector<mpq_class> c);

  bool is_float() const { return is_float_; }
  int order() const { return order_; }
  const std::vector<mpq_class>& coeffs() const { return coef_; }
  double tolerance() const { return tol_; }

  Scalar operator+(const Scalar& o) const;
  Scalar operator-(const Scalar& o) const;
  Scalar operator*(const Scalar& o) const;
  Scalar operator-() const;
  Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
  Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }
  // division by a nonzero rational; general inverses are not needed
  Scalar div(const mpq_class& q) const;
  Scalar mul(const mpq_class& q) const;

  bool operator==(const Scalar& o) const;
  bool operator!=(const Scalar& o) const { return !(*this == o); }
  bool is_zero() const;
  bool is_rational() const;
  mpq_class as_rational() const;  // throws unless is_rational()

  Scalar conj() const;                 // zeta -> zeta^{-1}
  Scalar lift(int L) const;            // re-express in Q(zeta_L), N | L
  std::complex<double> to_complex() const;

  // literal: "3/4" for rationals, "cyc12[c0,c1,...]" otherwise, "float(re,im)" in float mode
  std::string to_string() const;
  static Scalar parse(const std::string& s);

 private:
  int order_;
  std::vector<mpq_class> coef_;
  bool is_float_ = false;
  std::complex<double> fv_{};
  double tol_ = 0;

  void normalize_order();
  friend Scalar align_pair(const Scalar&, const Scalar&, Scalar&);
};

int euler_phi(int n);
long lcm_long(long a, long b);
// integer coefficients of the N-th cyclotomic polynomial, degree phi(N), monic
const std::vector<long>& cyclotomic_poly(int N);

}  // namespace sl2h
