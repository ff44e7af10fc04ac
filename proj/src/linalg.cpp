#include "sl2h/linalg.hpp"

#include <stdexcept>

#include "sl2h/errors.hpp"

namespace sl2h::modp {

u64 pow(u64 a, u64 e, u64 P) {
  u64 r = 1 % P;
  a %= P;
  while (e) {
    if (e & 1) r = mul(r, a, P);
    a = mul(a, a, P);
    e >>= 1;
  }
  return r;
}

u64 inv(u64 a, u64 P) {
  if (a % P == 0) throw SL2H_ERR("DivisionByZero", "inverse of 0 mod P");
  return pow(a, P - 2, P);
}

u64 reduce(long long v, u64 P) {
  long long r = v % (long long)P;
  return (u64)(r < 0 ? r + (long long)P : r);
}

bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

u64 prime_1_mod(u64 e, u64 lo) {
  u64 P = (lo / e + 1) * e + 1;
  while (!is_prime(P)) P += e;
  return P;
}

u64 primitive_root(u64 P) {
  std::vector<u64> f;
  u64 n = P - 1;
  for (u64 d = 2; d * d <= n; ++d)
    if (n % d == 0) {
      f.push_back(d);
      while (n % d == 0) n /= d;
    }
  if (n > 1) f.push_back(n);
  for (u64 g = 2;; ++g) {
    bool ok = true;
    for (u64 q : f) ok = ok && pow(g, (P - 1) / q, P) != 1;
    if (ok) return g;
  }
}

namespace {
// reduced row echelon form in place; returns pivot columns
std::vector<size_t> rref(Matrix& m, u64 P) {
  std::vector<size_t> piv;
  size_t r = 0;
  for (size_t c = 0; c < m.cols && r < m.rows; ++c) {
    size_t s = r;
    while (s < m.rows && m(s, c) == 0) ++s;
    if (s == m.rows) continue;
    if (s != r)
      for (size_t j = 0; j < m.cols; ++j) std::swap(m(r, j), m(s, j));
    u64 iv = inv(m(r, c), P);
    for (size_t j = c; j < m.cols; ++j) m(r, j) = mul(m(r, j), iv, P);
    for (size_t i = 0; i < m.rows; ++i) {
      if (i == r || m(i, c) == 0) continue;
      u64 f = m(i, c);
      for (size_t j = c; j < m.cols; ++j) m(i, j) = sub(m(i, j), mul(f, m(r, j), P), P);
    }
    piv.push_back(c);
    ++r;
  }
  return piv;
}
}  // namespace

size_t rank(Matrix m, u64 P) { return rref(m, P).size(); }

u64 det(Matrix m, u64 P) {
  size_t n = m.rows;
  u64 d = 1;
  for (size_t c = 0; c < n; ++c) {
    size_t s = c;
    while (s < n && m(s, c) == 0) ++s;
    if (s == n) return 0;
    if (s != c) {
      for (size_t j = 0; j < n; ++j) std::swap(m(s, j), m(c, j));
      d = sub(0, d, P);
    }
    d = mul(d, m(c, c), P);
    u64 iv = inv(m(c, c), P);
    for (size_t i = c + 1; i < n; ++i) {
      u64 f = mul(m(i, c), iv, P);
      if (f)
        for (size_t j = c; j < n; ++j) m(i, j) = sub(m(i, j), mul(f, m(c, j), P), P);
    }
  }
  return d;
}

std::vector<std::vector<u64>> nullspace(Matrix m, u64 P) {
  auto piv = rref(m, P);
  std::vector<bool> is_piv(m.cols, false);
  for (auto c : piv) is_piv[c] = true;
  std::vector<std::vector<u64>> out;
  for (size_t f = 0; f < m.cols; ++f) {
    if (is_piv[f]) continue;
    std::vector<u64> x(m.cols, 0);
    x[f] = 1;
    for (size_t r = 0; r < piv.size(); ++r) x[piv[r]] = sub(0, m(r, f), P);
    out.push_back(std::move(x));
  }
  return out;
}

std::vector<u64> charpoly(const Matrix& A, u64 P) {
  // Hessenberg reduction followed by the standard recurrence
  size_t n = A.rows;
  Matrix H = A;
  for (size_t k = 0; k + 2 <= n; ++k) {
    size_t s = k + 1;
    while (s < n && H(s, k) == 0) ++s;
    if (s == n) continue;
    if (s != k + 1) {
      for (size_t j = 0; j < n; ++j) std::swap(H(s, j), H(k + 1, j));
      for (size_t i = 0; i < n; ++i) std::swap(H(i, s), H(i, k + 1));
    }
    u64 iv = inv(H(k + 1, k), P);
    for (size_t i = k + 2; i < n; ++i) {
      u64 f = mul(H(i, k), iv, P);
      if (f == 0) continue;
      for (size_t j = 0; j < n; ++j) H(i, j) = sub(H(i, j), mul(f, H(k + 1, j), P), P);
      for (size_t j = 0; j < n; ++j) H(j, k + 1) = add(H(j, k + 1), mul(f, H(j, i), P), P);
    }
  }
  // p_0 = 1, p_{m} from p_{m-1} ... (Hessenberg determinant recurrence)
  std::vector<std::vector<u64>> pol(n + 1);
  pol[0] = {1};
  for (size_t m = 1; m <= n; ++m) {
    std::vector<u64> cur(m + 1, 0);
    // (x - h_mm) p_{m-1}
    const auto& prev = pol[m - 1];
    for (size_t i = 0; i < prev.size(); ++i) {
      cur[i + 1] = add(cur[i + 1], prev[i], P);
      cur[i] = sub(cur[i], mul(H(m - 1, m - 1), prev[i], P), P);
    }
    u64 t = 1;
    for (size_t i = 1; i < m; ++i) {
      t = mul(t, H(m - i, m - i - 1), P);
      u64 c = mul(t, H(m - i - 1, m - 1), P);
      const auto& pp = pol[m - i - 1];
      for (size_t j = 0; j < pp.size(); ++j) cur[j] = sub(cur[j], mul(c, pp[j], P), P);
    }
    pol[m] = std::move(cur);
  }
  return pol[n];
}

void SparseEliminator::reduce(std::map<size_t, u64>& row) const {
  auto it = row.begin();
  while (it != row.end()) {
    if (it->second == 0) {
      it = row.erase(it);
      continue;
    }
    auto pv = pivots_.find(it->first);
    if (pv == pivots_.end()) {
      ++it;
      continue;
    }
    u64 f = it->second;
    size_t col = it->first;
    for (const auto& [c, v] : pv->second) {
      u64& x = row[c];
      x = sub(x, mul(f, v, P_), P_);
    }
    row.erase(col);
    it = row.upper_bound(col);
  }
}

bool SparseEliminator::add_row(std::map<size_t, u64> row) {
  reduce(row);
  if (row.empty()) return false;
  size_t c = row.begin()->first;
  u64 iv = inv(row.begin()->second, P_);
  for (auto& [k, v] : row) v = mul(v, iv, P_);
  pivots_.emplace(c, std::move(row));
  return true;
}

bool SparseEliminator::in_span(std::map<size_t, u64> row) const {
  reduce(row);
  return row.empty();
}

}  // namespace sl2h::modp
