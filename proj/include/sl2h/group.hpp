#pragma once
#include <array>
#include <compare>
#include <string>
#include <vector>

#include "sl2h/padic.hpp"

namespace sl2h {

// 2x2 matrix over truncated Q_p with det 1 at working precision.
struct GroupElement {
  int p = 0;
  Padic a, b, c, d;

  static GroupElement from_rationals(int p, const mpq_class& a, const mpq_class& b, const mpq_class& c,
                                     const mpq_class& d, i64 prec);
  static GroupElement identity(int p, i64 prec);
  static GroupElement diag(int p, const mpq_class& t, i64 prec);  // diag(t, 1/t)

  GroupElement operator*(const GroupElement& o) const;
  GroupElement inverse() const { return {p, d, -b, -c, a}; }
  Padic trace() const { return a + d; }
  Padic det() const { return a * d - b * c; }
  i64 min_valuation() const;
  bool integral() const { return min_valuation() >= 0; }
  std::string to_string() const;
};

// g in K0 diag(p^m, p^-m) K0; tree distance d(x0, g x0) = 2m
int cartan_exponent(const GroupElement& g);

enum class ElementKind { Central, UnipotentNontrivial, SplitRegular, EllipticUnramified, EllipticRamified };
struct Classification {
  ElementKind kind;
  bool compact;
  std::string to_string() const;
  bool regular() const {
    return kind == ElementKind::SplitRegular || kind == ElementKind::EllipticUnramified ||
           kind == ElementKind::EllipticRamified;
  }
  bool elliptic() const { return kind == ElementKind::EllipticUnramified || kind == ElementKind::EllipticRamified; }
};
Classification classify(const GroupElement& g);

// Matrix literal like "[[2,0],[0,inv(2)]]"; entries are rational expressions in
// integers, p, + - * / ^ and inv(.).
std::array<mpq_class, 4> parse_matrix_literal(const std::string& s, int p);
GroupElement parse_group_element(const std::string& s, int p, i64 prec);

// Element of SL(2, Z/p^n), entries in [0, p^n).
struct ModMat {
  u64 a = 1, b = 0, c = 0, d = 1;
  auto operator<=>(const ModMat&) const = default;
};
ModMat mm_mul(const ModMat& x, const ModMat& y, u64 M);
ModMat mm_inv(const ModMat& x, u64 M);
ModMat mm_reduce(const ModMat& x, u64 M);
ModMat reduce_integral(const GroupElement& g, int n);  // g integral
GroupElement lift_modmat(int p, const ModMat& k, i64 prec);
// all elements of SL(2, Z/p^n), sorted
const std::vector<ModMat>& sl2_mod_elements(int p, int n);
u64 sl2_mod_order(int p, int n);

}  // namespace sl2h
