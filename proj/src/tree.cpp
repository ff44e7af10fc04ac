#include "sl2h/tree.hpp"

#include <algorithm>

#include "sl2h/errors.hpp"

namespace sl2h {

mpq_class vol_K(int p, int n) {
  if (n == 0) return 1;
  mpz_class idx;
  mpz_ui_pow_ui(idx.get_mpz_t(), p, 3 * (n - 1));
  idx *= (long)p * ((long)p * p - 1);
  return mpq_class(1) / mpq_class(idx);
}

Tree::Tree(int p, i64 prec) : p_(p), prec_(prec) {
  if (p < 3 || p % 2 == 0) throw SL2H_ERR("PreconditionViolation", "p must be an odd prime");
  for (int q = 2; q * q <= p; ++q)
    if (p % q == 0) throw SL2H_ERR("PreconditionViolation", "p must be prime");
  if (prec > max_rel_precision(p) - 2)
    throw SL2H_ERR("InsufficientPrecision", "working precision exceeds the 64-bit digit budget for this p");
  for (const auto& v : sphere(1)) step_reps_.push_back(vertex_rep(v));
}

GroupElement Tree::vertex_rep(const VertexKey& v) const {
  mpq_class pa = 1;
  for (int i = 0; i < std::abs(v.a); ++i) pa *= p_;
  if (v.a < 0) pa = 1 / pa;
  mpq_class u(mpz_class(std::to_string(v.num)));
  for (int i = 0; i < v.e; ++i) u /= p_;
  return GroupElement::from_rationals(p_, pa, u, 0, 1 / pa, prec_);
}

Iwasawa Tree::iwasawa(const GroupElement& g0) const {
  GroupElement g = g0;
  // column operations by K0 until lower-left vanishes
  bool swap = false;
  if (!g.c.is_zero()) {
    if (g.d.is_zero() || g.c.valuation() < g.d.valuation()) swap = true;
  }
  if (swap) g = {p_, g.b, -g.a, g.d, -g.c};
  if (!g.c.is_zero()) {
    Padic t = g.c / g.d;
    g.a = g.a - g.b * t;
    g.c = Padic::zero(p_, prec_);
  }
  if (g.d.is_zero()) throw SL2H_ERR("InsufficientPrecision", "Iwasawa reduction lost the pivot");
  int a = (int)-g.d.valuation();
  Padic eps = g.d.shifted(a);  // unit
  Padic u = g.b / eps;
  VertexKey key{a, 0, 0};
  if (!u.is_zero() && u.valuation() < a) {
    i64 v = u.valuation();
    int e = (int)std::max<i64>(0, -v);
    key.e = e;
    key.num = u.shifted(e).mod_pk(a + e);
  } else if (u.is_zero() && u.abs_precision() < a) {
    throw SL2H_ERR("InsufficientPrecision", "cannot reduce the unipotent part");
  }
  Iwasawa r{key, vertex_rep(key), {}};
  r.k = r.b.inverse() * g0;
  return r;
}

CosetKey Tree::coset_key(const GroupElement& g, int n) const {
  Iwasawa iw = iwasawa(g);
  if (n == 0) return {iw.v, ModMat{0, 0, 0, 0}};
  return {iw.v, reduce_integral(iw.k, n)};
}

GroupElement Tree::coset_rep(const CosetKey& c) const {
  GroupElement b = vertex_rep(c.v);
  if (c.k.a == 0 && c.k.b == 0 && c.k.c == 0 && c.k.d == 0) return b;
  return b * lift_modmat(p_, c.k, prec_);
}

std::vector<VertexKey> Tree::sphere(int m) const {
  std::vector<VertexKey> out;
  for (int a = -m; a <= m; ++a)
    for (int e = 0; e <= m; ++e) {
      if (std::max(std::abs(a), e) != m) continue;
      if (e == 0) {
        if (a <= 0) {
          out.push_back({a, 0, 0});
        } else {
          u64 M = pn(a);
          for (u64 x = 0; x < M; ++x) out.push_back({a, 0, x});
        }
      } else {
        if (a + e <= 0) continue;
        u64 M = pn(a + e);
        for (u64 x = 0; x < M; ++x)
          if (x % p_) out.push_back({a, e, x});
      }
    }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<VertexKey> Tree::ball(int lambda) const {
  std::vector<VertexKey> out;
  for (int m = 0; m <= lambda; ++m) {
    auto s = sphere(m);
    out.insert(out.end(), s.begin(), s.end());
  }
  return out;
}

std::vector<VertexKey> Tree::children(const VertexKey& v) const {
  int m = v.exponent();
  GroupElement b = vertex_rep(v);
  std::vector<VertexKey> out;
  for (const auto& s : step_reps_) {
    VertexKey w = vertex_of(b * s);
    if (w.exponent() == m + 1) out.push_back(w);
  }
  std::sort(out.begin(), out.end());
  return out;
}

int Tree::distance(const VertexKey& v, const VertexKey& w) const {
  return 2 * cartan_exponent(vertex_rep(v).inverse() * vertex_rep(w));
}

std::vector<CosetKey> Tree::enumerate_cosets(int lambda, int n, size_t cap) const {
  auto verts = ball(lambda);
  const auto& ks = sl2_mod_elements(p_, n);
  if (verts.size() * ks.size() > cap)
    throw SL2H_ERR("OutOfMemoryBudget", "coset enumeration would produce " +
                                            std::to_string(verts.size() * ks.size()) + " keys");
  std::vector<CosetKey> out;
  out.reserve(verts.size() * ks.size());
  for (const auto& v : verts)
    for (const auto& k : ks) out.push_back({v, k});
  return out;
}

std::vector<Tree::WalkHit> Tree::walk_near_fixed(const GroupElement& g, int lambda, int mu) const {
  if (!g.integral()) throw SL2H_ERR("NonCompactElement", "walk requires g in K0");
  std::vector<WalkHit> out;
  std::vector<VertexKey> frontier{VertexKey{}};
  while (!frontier.empty()) {
    std::vector<VertexKey> next;
    for (const auto& v : frontier) {
      GroupElement b = vertex_rep(v);
      GroupElement c = b.inverse() * g * b;
      int m = cartan_exponent(c);
      if (m > mu) continue;
      out.push_back({v, b, c, m});
      if (v.exponent() < lambda) {
        auto ch = children(v);
        next.insert(next.end(), ch.begin(), ch.end());
      }
    }
    frontier = std::move(next);
  }
  return out;
}

std::vector<VertexKey> Tree::fixed_vertices(const GroupElement& g, int radius) const {
  std::vector<VertexKey> out;
  for (const auto& h : walk_near_fixed(g, radius / 2, 0)) out.push_back(h.v);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace sl2h
