#pragma once
#include <cstdint>
#include <map>
#include <vector>

#include "sl2h/padic.hpp"

namespace sl2h::modp {

inline u64 add(u64 a, u64 b, u64 P) { return (a + b) % P; }
inline u64 sub(u64 a, u64 b, u64 P) { return (a + P - b) % P; }
inline u64 mul(u64 a, u64 b, u64 P) { return (u64)((u128)a * b % P); }
u64 pow(u64 a, u64 e, u64 P);
u64 inv(u64 a, u64 P);
u64 reduce(long long v, u64 P);
bool is_prime(u64 n);
// smallest prime P > lo with P = 1 mod e
u64 prime_1_mod(u64 e, u64 lo);
// a generator of the multiplicative group mod prime P
u64 primitive_root(u64 P);

// dense row-major matrix mod P
struct Matrix {
  size_t rows = 0, cols = 0;
  std::vector<u64> a;
  Matrix() = default;
  Matrix(size_t r, size_t c) : rows(r), cols(c), a(r * c, 0) {}
  u64& operator()(size_t i, size_t j) { return a[i * cols + j]; }
  u64 operator()(size_t i, size_t j) const { return a[i * cols + j]; }
};

size_t rank(Matrix m, u64 P);
u64 det(Matrix m, u64 P);
// basis of {x : m x = 0}
std::vector<std::vector<u64>> nullspace(Matrix m, u64 P);
// monic characteristic polynomial, coefficients from degree 0 up
std::vector<u64> charpoly(const Matrix& m, u64 P);

// sparse rows, column -> value, eliminated incrementally
class SparseEliminator {
 public:
  explicit SparseEliminator(u64 P) : P_(P) {}
  // reduces the row against the current basis; returns true if it was independent
  bool add_row(std::map<size_t, u64> row);
  size_t rank() const { return pivots_.size(); }
  // true if the row lies in the span
  bool in_span(std::map<size_t, u64> row) const;

 private:
  u64 P_;
  std::map<size_t, std::map<size_t, u64>> pivots_;  // pivot column -> normalized row
  void reduce(std::map<size_t, u64>& row) const;
};

}  // namespace sl2h::modp
