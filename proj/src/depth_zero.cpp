#include "sl2h/depth_zero.hpp"

#include "sl2h/errors.hpp"

namespace sl2h {

DepthZeroSupercuspidal::DepthZeroSupercuspidal(int p_, int sigma_) : p(p_), sigma(sigma_) {
  const auto& T = character_table_sl2(p);
  if (sigma < 0 || sigma >= T.size()) throw SL2H_ERR("PreconditionViolation", "no such character");
  if (!is_cuspidal(p, T.chi[sigma])) throw SL2H_ERR("NotCuspidal", "sigma has U-invariants");
}

int DepthZeroSupercuspidal::dim() const { return character_table_sl2(p).dim[sigma]; }

Scalar DepthZeroSupercuspidal::chi(const ModMat& kbar) const {
  const auto& G = sl2_group(p);
  return character_table_sl2(p).chi[sigma][G.class_of[G.index.at(kbar)]];
}

Scalar DepthZeroSupercuspidal::chi_of(const GroupElement& k) const { return chi(reduce_integral(k, 1)); }

HeckeFunction matrix_coefficient(std::shared_ptr<const Tree> T, const DepthZeroSupercuspidal& rho) {
  if (T->p() != rho.p) throw SL2H_ERR("PreconditionViolation", "prime mismatch");
  int d = rho.dim();
  u64 p = (u64)rho.p;
  return from_k0_function(T, 1, [&](const ModMat& k) { return rho.chi(mm_inv(k, p)).mul(d); });
}

HeckeFunction m_rho(std::shared_ptr<const Tree> T, const DepthZeroSupercuspidal& rho) {
  if (T->p() != rho.p) throw SL2H_ERR("PreconditionViolation", "prime mismatch");
  return from_k0_function(T, 1, [&](const ModMat& k) { return rho.chi(k); });
}

namespace {

// sum over vertices v with 2 m(v) < n fixed by y of chi(b_v^{-1} y b_v)
Scalar fixed_sum(const Tree& T, const DepthZeroSupercuspidal& rho, const GroupElement& y, int n,
                 const std::vector<GroupElement>& ball_reps) {
  int M = (n - 1) / 2;
  Scalar s = 0;
  if (y.integral()) {
    for (const auto& h : T.walk_near_fixed(y, M, 0)) s += rho.chi_of(h.c);
    return s;
  }
  for (const auto& b : ball_reps) {
    GroupElement c = b.inverse() * y * b;
    if (c.integral()) s += rho.chi_of(c);
  }
  return s;
}

std::vector<GroupElement> window_reps(const Tree& T, const HeckeFunction& h) {
  std::vector<GroupElement> out;
  bool need = false;
  for (const auto& [k, v] : h.values()) need = need || k.v.exponent() > 0;
  if (!need) return out;
  for (const auto& v : T.ball((h.level() - 1) / 2)) out.push_back(T.vertex_rep(v));
  return out;
}

}  // namespace

Scalar rho_trace_serial(const DepthZeroSupercuspidal& rho, const HeckeFunction& h) {
  if (h.is_zero() || h.level() == 0) return 0;
  const Tree& T = h.tree();
  auto reps = window_reps(T, h);
  Scalar s = 0;
  for (const auto& [k, v] : h.values()) s += v * fixed_sum(T, rho, T.coset_rep(k), h.level(), reps);
  return s.mul(vol_K(T.p(), h.level()));
}

Scalar rho_trace(const DepthZeroSupercuspidal& rho, const HeckeFunction& h) {
  if (h.is_zero() || h.level() == 0) return 0;
  const Tree& T = h.tree();
  auto reps = window_reps(T, h);
  std::vector<std::pair<CosetKey, Scalar>> items(h.values().begin(), h.values().end());
  std::vector<Scalar> part(items.size());
#pragma omp parallel for schedule(dynamic)
  for (size_t i = 0; i < items.size(); ++i)
    part[i] = items[i].second * fixed_sum(T, rho, T.coset_rep(items[i].first), h.level(), reps);
  Scalar s = 0;
  for (const auto& x : part) s += x;
  return s.mul(vol_K(T.p(), h.level()));
}

Scalar frobenius_sum(const Tree& T, const DepthZeroSupercuspidal& rho, const GroupElement& g) {
  if (!g.integral()) throw SL2H_ERR("PreconditionViolation", "Frobenius sum expects g in K0");
  Scalar s = 0;
  for (const auto& h : T.walk_near_fixed(g, 64, 0)) s += rho.chi_of(h.c);
  return s;
}

CharValue char_value(const Tree& T, const DepthZeroSupercuspidal& rho, const GroupElement& g, int n_max) {
  auto cl = classify(g);
  if (!cl.regular() || !cl.compact) throw SL2H_ERR("PreconditionViolation", "g must be regular and compact");
  auto Tp = std::make_shared<const Tree>(T.p(), T.prec());
  CharValue out;
  for (int n = 1; n <= n_max; ++n) {
    HeckeFunction h = double_coset(Tp, g, n);
    Scalar val = rho_trace(rho, h.scaled(Scalar(mpq_class(1 / h.integral().as_rational()))));
    out.by_level.push_back(val);
    size_t L = out.by_level.size();
    if (L >= 3 && out.by_level[L - 1] == out.by_level[L - 2] && out.by_level[L - 2] == out.by_level[L - 3]) {
      out.value = val;
      out.n_stable = n - 2;
      break;
    }
  }
  if (out.n_stable == 0) throw SL2H_ERR("NotStabilized", "character value did not stabilize by n=" + std::to_string(n_max));
  if (cl.elliptic() && g.integral()) {
    out.frobenius = frobenius_sum(T, rho, g);
    if (*out.frobenius != out.value) throw SL2H_ERR("OracleMismatch", "Frobenius sum and bump trace disagree");
  }
  return out;
}

}  // namespace sl2h
