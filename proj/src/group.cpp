#include "sl2h/group.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <mutex>

#include "sl2h/errors.hpp"

namespace sl2h {

GroupElement GroupElement::from_rationals(int p, const mpq_class& a, const mpq_class& b, const mpq_class& c,
                                          const mpq_class& d, i64 prec) {
  mpq_class det = a * d - b * c;
  if (det != 1) throw SL2H_ERR("PreconditionViolation", "matrix does not have determinant 1");
  return {p, Padic::from_rational(p, a, prec), Padic::from_rational(p, b, prec), Padic::from_rational(p, c, prec),
          Padic::from_rational(p, d, prec)};
}

GroupElement GroupElement::identity(int p, i64 prec) { return from_rationals(p, 1, 0, 0, 1, prec); }

GroupElement GroupElement::diag(int p, const mpq_class& t, i64 prec) {
  return from_rationals(p, t, 0, 0, mpq_class(1) / t, prec);
}

GroupElement GroupElement::operator*(const GroupElement& o) const {
  return {p, a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
}

i64 GroupElement::min_valuation() const {
  i64 v = kInfVal;
  i64 zero_abs = kInfVal;
  for (const Padic* x : {&a, &b, &c, &d}) {
    if (x->is_zero())
      zero_abs = std::min(zero_abs, x->abs_precision());
    else
      v = std::min(v, x->valuation());
  }
  if (v == kInfVal || zero_abs <= v)
    throw SL2H_ERR("InsufficientPrecision", "cannot determine the minimal entry valuation");
  return v;
}

std::string GroupElement::to_string() const {
  return "[[" + a.to_string() + "," + b.to_string() + "],[" + c.to_string() + "," + d.to_string() + "]]";
}

int cartan_exponent(const GroupElement& g) { return (int)std::max<i64>(0, -g.min_valuation()); }

std::string Classification::to_string() const {
  std::string k;
  switch (kind) {
    case ElementKind::Central: k = "central"; break;
    case ElementKind::UnipotentNontrivial: k = "unipotent-nontrivial"; break;
    case ElementKind::SplitRegular: k = "split-regular"; break;
    case ElementKind::EllipticUnramified: k = "elliptic-regular-unramified"; break;
    case ElementKind::EllipticRamified: k = "elliptic-regular-ramified"; break;
  }
  return k + (compact ? ",compact" : ",noncompact");
}

Classification classify(const GroupElement& g) {
  Padic tr = g.trace();
  bool compact = tr.is_zero() || tr.valuation() >= 0;
  if (g.b.is_zero() && g.c.is_zero() && (g.a - g.d).is_zero()) return {ElementKind::Central, true};
  Padic disc = tr * tr - Padic::from_int(g.p, 4, tr.abs_precision());
  switch (disc.square_class()) {
    case SquareClass::Zero: return {ElementKind::UnipotentNontrivial, compact};
    case SquareClass::Square: return {ElementKind::SplitRegular, compact};
    case SquareClass::UnitNonsquare: return {ElementKind::EllipticUnramified, compact};
    default: return {ElementKind::EllipticRamified, compact};
  }
}

namespace {

struct ExprParser {
  const std::string& s;
  size_t i = 0;
  int p;
  void ws() {
    while (i < s.size() && std::isspace((unsigned char)s[i])) ++i;
  }
  bool eat(char ch) {
    ws();
    if (i < s.size() && s[i] == ch) {
      ++i;
      return true;
    }
    return false;
  }
  [[noreturn]] void fail(const std::string& why) {
    throw SL2H_ERR("ParseError", why + " at offset " + std::to_string(i) + " in '" + s + "'");
  }
  mpq_class expr() {
    mpq_class v = term();
    for (;;) {
      if (eat('+'))
        v += term();
      else if (eat('-'))
        v -= term();
      else
        return v;
    }
  }
  mpq_class term() {
    mpq_class v = power();
    for (;;) {
      if (eat('*'))
        v *= power();
      else if (eat('/')) {
        mpq_class d = power();
        if (d == 0) fail("division by zero");
        v /= d;
      } else
        return v;
    }
  }
  mpq_class power() {
    mpq_class base = unary();
    if (eat('^')) {
      ws();
      bool neg = eat('-');
      ws();
      size_t st = i;
      while (i < s.size() && std::isdigit((unsigned char)s[i])) ++i;
      if (st == i) fail("expected exponent");
      int e = std::stoi(s.substr(st, i - st));
      mpq_class r = 1;
      for (int k = 0; k < e; ++k) r *= base;
      if (neg) {
        if (r == 0) fail("division by zero");
        r = 1 / r;
      }
      return r;
    }
    return base;
  }
  mpq_class unary() {
    if (eat('-')) return -unary();
    if (eat('+')) return unary();
    return atom();
  }
  mpq_class atom() {
    ws();
    if (eat('(')) {
      mpq_class v = expr();
      if (!eat(')')) fail("expected )");
      return v;
    }
    if (s.compare(i, 4, "inv(") == 0) {
      i += 4;
      mpq_class v = expr();
      if (!eat(')')) fail("expected )");
      if (v == 0) fail("inv(0)");
      return 1 / v;
    }
    if (i < s.size() && s[i] == 'p' && (i + 1 >= s.size() || !std::isalpha((unsigned char)s[i + 1]))) {
      ++i;
      return mpq_class(p);
    }
    size_t st = i;
    while (i < s.size() && std::isdigit((unsigned char)s[i])) ++i;
    if (st == i) fail("expected number");
    return mpq_class(mpz_class(s.substr(st, i - st)));
  }
};

}  // namespace

std::array<mpq_class, 4> parse_matrix_literal(const std::string& s, int p) {
  ExprParser ps{s, 0, p};
  std::array<mpq_class, 4> m;
  if (!ps.eat('[') || !ps.eat('[')) ps.fail("expected [[");
  m[0] = ps.expr();
  if (!ps.eat(',')) ps.fail("expected ,");
  m[1] = ps.expr();
  if (!ps.eat(']') || !ps.eat(',') || !ps.eat('[')) ps.fail("expected ],[");
  m[2] = ps.expr();
  if (!ps.eat(',')) ps.fail("expected ,");
  m[3] = ps.expr();
  if (!ps.eat(']') || !ps.eat(']')) ps.fail("expected ]]");
  ps.ws();
  if (ps.i != s.size()) ps.fail("trailing characters");
  for (auto& x : m) x.canonicalize();
  return m;
}

GroupElement parse_group_element(const std::string& s, int p, i64 prec) {
  auto m = parse_matrix_literal(s, p);
  return GroupElement::from_rationals(p, m[0], m[1], m[2], m[3], prec);
}

ModMat mm_mul(const ModMat& x, const ModMat& y, u64 M) {
  return {(mulmod(x.a, y.a, M) + mulmod(x.b, y.c, M)) % M, (mulmod(x.a, y.b, M) + mulmod(x.b, y.d, M)) % M,
          (mulmod(x.c, y.a, M) + mulmod(x.d, y.c, M)) % M, (mulmod(x.c, y.b, M) + mulmod(x.d, y.d, M)) % M};
}

ModMat mm_inv(const ModMat& x, u64 M) { return {x.d % M, (M - x.b % M) % M, (M - x.c % M) % M, x.a % M}; }

ModMat mm_reduce(const ModMat& x, u64 M) { return {x.a % M, x.b % M, x.c % M, x.d % M}; }

ModMat reduce_integral(const GroupElement& g, int n) {
  return {g.a.mod_pk(n), g.b.mod_pk(n), g.c.mod_pk(n), g.d.mod_pk(n)};
}

GroupElement lift_modmat(int p, const ModMat& k, i64 prec) {
  GroupElement g{p, Padic::from_int(p, (i64)k.a, prec), Padic::from_int(p, (i64)k.b, prec),
                 Padic::from_int(p, (i64)k.c, prec), Padic::from_int(p, (i64)k.d, prec)};
  Padic one = Padic::from_int(p, 1, prec);
  if (k.a % p != 0)
    g.d = (one + g.b * g.c) / g.a;
  else
    g.c = (g.a * g.d - one) / g.b;
  return g;
}

u64 sl2_mod_order(int p, int n) {
  if (n == 0) return 1;
  return ipow(p, 3 * n - 2) * (u64)(p * p - 1);
}

const std::vector<ModMat>& sl2_mod_elements(int p, int n) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::vector<ModMat>> cache;
  std::lock_guard<std::mutex> lk(mu);
  auto key = std::make_pair(p, n);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  std::vector<ModMat> out;
  if (n == 0) {
    out.push_back(ModMat{0, 0, 0, 0});
    return cache[key] = out;
  }
  u64 M = ipow(p, n);
  out.reserve(sl2_mod_order(p, n));
  for (u64 c = 0; c < M; ++c)
    for (u64 d = 0; d < M; ++d) {
      if (c % p == 0 && d % p == 0) continue;
      if (d % p != 0) {
        u64 di = invmod(d, M);
        for (u64 b = 0; b < M; ++b) out.push_back({mulmod((1 + mulmod(b, c, M)) % M, di, M), b, c, d});
      } else {
        u64 ci = invmod(c, M);
        for (u64 a = 0; a < M; ++a) out.push_back({a, mulmod((mulmod(a, d, M) + M - 1) % M, ci, M), c, d});
      }
    }
  std::sort(out.begin(), out.end());
  return cache[key] = out;
}

}  // namespace sl2h
