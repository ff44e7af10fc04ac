#include "sl2h/scalar.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>

#include "sl2h/errors.hpp"

namespace sl2h {

int euler_phi(int n) {
  int r = n;
  for (int p = 2; p * p <= n; ++p)
    if (n % p == 0) {
      while (n % p == 0) n /= p;
      r -= r / p;
    }
  if (n > 1) r -= r / n;
  return r;
}

long lcm_long(long a, long b) { return a / std::gcd(a, b) * b; }

namespace {

std::vector<long> compute_cyclotomic(int N) {
  // x^N - 1 divided by Phi_d for proper divisors d
  std::vector<long> num(N + 1, 0);
  num[0] = -1;
  num[N] = 1;
  for (int d = 1; d < N; ++d) {
    if (N % d) continue;
    std::vector<long> den = compute_cyclotomic(d);
    int dn = (int)den.size() - 1;
    int nn = (int)num.size() - 1;
    std::vector<long> q(nn - dn + 1, 0);
    for (int i = nn; i >= dn; --i) {
      long c = num[i];  // den is monic
      q[i - dn] = c;
      for (int j = 0; j <= dn; ++j) num[i - dn + j] -= c * den[j];
    }
    num = q;
  }
  return num;
}

}  // namespace

const std::vector<long>& cyclotomic_poly(int N) {
  static std::mutex mu;
  static std::map<int, std::vector<long>> cache;
  std::lock_guard<std::mutex> lk(mu);
  auto it = cache.find(N);
  if (it != cache.end()) return it->second;
  return cache[N] = compute_cyclotomic(N);
}

namespace {

void reduce_mod_phi(std::vector<mpq_class>& r, int N) {
  const auto& phi = cyclotomic_poly(N);
  int d = (int)phi.size() - 1;
  for (int i = (int)r.size() - 1; i >= d; --i) {
    if (r[i] == 0) continue;
    mpq_class c = r[i];
    for (int j = 0; j < d; ++j)
      if (phi[j]) r[i - d + j] -= c * phi[j];
    r[i] = 0;
  }
  r.resize(d);
}

}  // namespace

Scalar Scalar::rational(long num, long den) {
  mpq_class q(num, den);
  q.canonicalize();
  return Scalar(q);
}

Scalar Scalar::zeta(int N, long k) {
  k %= N;
  if (k < 0) k += N;
  std::vector<mpq_class> r(std::max<long>(k + 1, euler_phi(N)), 0);
  r[k] = 1;
  reduce_mod_phi(r, N);
  return from_coeffs(N, r);
}

Scalar Scalar::from_coeffs(int N, std::vector<mpq_class> c) {
  Scalar s;
  s.order_ = N;
  c.resize(std::max<size_t>(c.size(), euler_phi(N)), 0);
  reduce_mod_phi(c, N);
  s.coef_ = std::move(c);
  s.normalize_order();
  return s;
}

Scalar Scalar::from_float(std::complex<double> z, double tol) {
  Scalar s;
  s.is_float_ = true;
  s.fv_ = z;
  s.tol_ = tol;
  return s;
}

void Scalar::normalize_order() {
  if (is_float_ || order_ == 1) return;
  for (size_t i = 1; i < coef_.size(); ++i)
    if (coef_[i] != 0) return;
  mpq_class c0 = coef_.empty() ? mpq_class(0) : coef_[0];
  order_ = 1;
  coef_.assign(1, c0);
}

Scalar Scalar::lift(int L) const {
  if (is_float_ || L == order_) return *this;
  if (L % order_) throw SL2H_ERR("PreconditionViolation", "lift to non-multiple order");
  int step = L / order_;
  std::vector<mpq_class> r(std::max<long>((long)(coef_.size() - 1) * step + 1, euler_phi(L)), 0);
  for (size_t i = 0; i < coef_.size(); ++i) r[i * step] = coef_[i];
  reduce_mod_phi(r, L);
  Scalar s;
  s.order_ = L;
  s.coef_ = std::move(r);
  return s;
}

Scalar align_pair(const Scalar& a, const Scalar& b, Scalar& bb) {
  int L = (int)lcm_long(a.order_, b.order_);
  bb = b.lift(L);
  return a.lift(L);
}

Scalar Scalar::operator+(const Scalar& o) const {
  if (is_float_ || o.is_float_)
    return from_float(to_complex() + o.to_complex(), std::max(tol_, o.tol_));
  if (order_ == o.order_) {
    Scalar s = *this;
    for (size_t i = 0; i < coef_.size(); ++i) s.coef_[i] += o.coef_[i];
    s.normalize_order();
    return s;
  }
  Scalar bb;
  Scalar aa = align_pair(*this, o, bb);
  return aa + bb;
}

Scalar Scalar::operator-() const {
  if (is_float_) return from_float(-fv_, tol_);
  Scalar s = *this;
  for (auto& c : s.coef_) c = -c;
  return s;
}

Scalar Scalar::operator-(const Scalar& o) const { return *this + (-o); }

Scalar Scalar::operator*(const Scalar& o) const {
  if (is_float_ || o.is_float_)
    return from_float(to_complex() * o.to_complex(), std::max(tol_, o.tol_));
  if (order_ == 1) return o.mul(coef_[0]);
  if (o.order_ == 1) return mul(o.coef_[0]);
  if (order_ != o.order_) {
    Scalar bb;
    Scalar aa = align_pair(*this, o, bb);
    return aa * bb;
  }
  std::vector<mpq_class> r(coef_.size() + o.coef_.size() - 1, 0);
  for (size_t i = 0; i < coef_.size(); ++i) {
    if (coef_[i] == 0) continue;
    for (size_t j = 0; j < o.coef_.size(); ++j)
      if (o.coef_[j] != 0) r[i + j] += coef_[i] * o.coef_[j];
  }
  reduce_mod_phi(r, order_);
  Scalar s;
  s.order_ = order_;
  s.coef_ = std::move(r);
  s.normalize_order();
  return s;
}

Scalar Scalar::mul(const mpq_class& q) const {
  if (is_float_) return from_float(fv_ * q.get_d(), tol_);
  Scalar s = *this;
  for (auto& c : s.coef_) c *= q;
  s.normalize_order();
  return s;
}

Scalar Scalar::div(const mpq_class& q) const {
  if (q == 0) throw SL2H_ERR("PreconditionViolation", "division by zero");
  return mul(1 / q);
}

bool Scalar::is_zero() const {
  if (is_float_) return std::abs(fv_) <= tol_;
  for (auto& c : coef_)
    if (c != 0) return false;
  return true;
}

bool Scalar::operator==(const Scalar& o) const {
  if (is_float_ || o.is_float_) {
    double t = std::max(tol_, o.tol_);
    return std::abs(to_complex() - o.to_complex()) <= t;
  }
  return (*this - o).is_zero();
}

bool Scalar::is_rational() const {
  if (is_float_) return false;
  for (size_t i = 1; i < coef_.size(); ++i)
    if (coef_[i] != 0) return false;
  return true;
}

mpq_class Scalar::as_rational() const {
  if (!is_rational()) throw SL2H_ERR("PreconditionViolation", "scalar is not rational");
  return coef_.empty() ? mpq_class(0) : coef_[0];
}

Scalar Scalar::conj() const {
  if (is_float_) return from_float(std::conj(fv_), tol_);
  if (order_ == 1) return *this;
  std::vector<mpq_class> r(order_, 0);
  for (size_t i = 0; i < coef_.size(); ++i) r[(order_ - (long)i) % order_] += coef_[i];
  return from_coeffs(order_, r);
}

std::complex<double> Scalar::to_complex() const {
  if (is_float_) return fv_;
  std::complex<double> z = 0;
  for (size_t i = 0; i < coef_.size(); ++i) {
    if (coef_[i] == 0) continue;
    double ang = 2 * M_PI * (double)i / order_;
    z += coef_[i].get_d() * std::complex<double>(std::cos(ang), std::sin(ang));
  }
  return z;
}

std::string Scalar::to_string() const {
  if (is_float_) {
    std::ostringstream os;
    os.precision(17);
    os << "float(" << fv_.real() << "," << fv_.imag() << ")";
    return os.str();
  }
  if (is_rational()) return as_rational().get_str();
  std::string s = "cyc" + std::to_string(order_) + "[";
  for (size_t i = 0; i < coef_.size(); ++i) {
    if (i) s += ",";
    s += coef_[i].get_str();
  }
  return s + "]";
}

Scalar Scalar::parse(const std::string& s) {
  if (s.rfind("float(", 0) == 0) {
    auto comma = s.find(',');
    double re = std::stod(s.substr(6, comma - 6));
    double im = std::stod(s.substr(comma + 1, s.size() - comma - 2));
    return from_float({re, im}, 1e-9);
  }
  if (s.rfind("cyc", 0) == 0) {
    auto lb = s.find('[');
    if (lb == std::string::npos || s.back() != ']') throw SL2H_ERR("ParseError", "bad scalar literal " + s);
    int N = std::stoi(s.substr(3, lb - 3));
    std::vector<mpq_class> c;
    std::string body = s.substr(lb + 1, s.size() - lb - 2);
    std::stringstream ss(body);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      mpq_class q(tok);
      q.canonicalize();
      c.push_back(q);
    }
    if ((int)c.size() != euler_phi(N)) throw SL2H_ERR("ParseError", "coefficient count mismatch in " + s);
    return from_coeffs(N, c);
  }
  try {
    mpq_class q(s);
    q.canonicalize();
    return Scalar(q);
  } catch (...) {
    throw SL2H_ERR("ParseError", "bad scalar literal " + s);
  }
}

}  // namespace sl2h
