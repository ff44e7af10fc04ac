#include "sl2h/orbital.hpp"

#include <omp.h>

#include "sl2h/errors.hpp"

namespace sl2h {

bool is_k0_class(const HeckeFunction& f) {
  const Tree& T = f.tree();
  auto gens = level_generators(T, 0);
  for (const auto& [k, v] : f.values()) {
    GroupElement y = T.coset_rep(k);
    for (const auto& s : gens)
      if (f.at(s * y * s.inverse()) != v) return false;
  }
  return true;
}

u64 sphere_overlap_count(int q, int D, int r, int R) {
  if (r == 0) return D <= R ? 1 : 0;
  int c = std::min(D, r);
  auto at_least = [&](int j) -> u64 {
    if (j == 0) return (u64)(q + 1) * ipow(q, r - 1);
    if (j > c) return 0;
    return ipow(q, r - j);
  };
  u64 n = 0;
  for (int j = 0; j <= c; ++j)
    if (D + r - 2 * j <= R) n += at_least(j) - at_least(j + 1);
  return n;
}

Scalar truncated_weighted_trace(const HeckeFunction& f, const GroupElement& g, int lambda,
                                const std::optional<GroupElement>& h, bool serial) {
  if (!g.integral()) throw SL2H_ERR("NormalizerViolation", "g must lie in K0");
  if (f.is_zero()) return 0;
  const Tree& T = f.tree();
  int q = T.p();
  int m = h ? cartan_exponent(*h) : 0;
  bool cls = is_k0_class(f);
  auto hits = T.walk_near_fixed(g, lambda + m, f.support_bound());

  int N = std::max(f.level(), 2 * m);
  std::vector<GroupElement> ks;
  if (!cls)
    for (const auto& k : sl2_mod_elements(q, N)) ks.push_back(N == 0 ? T.mat(1, 0, 0, 1) : lift_modmat(q, k, T.prec()));
  std::optional<GroupElement> hinv;
  if (h) hinv = h->inverse();
  mpq_class volN = vol_K(q, N);
  mpq_class sphere = m == 0 ? mpq_class(1) : mpq_class((long)((q + 1) * ipow(q, 2 * m - 1)));

  auto contribution = [&](const Tree::WalkHit& hit) -> Scalar {
    int D = 2 * hit.v.exponent();
    if (cls) {
      u64 cnt = sphere_overlap_count(q, D, 2 * m, 2 * lambda);
      if (cnt == 0) return 0;
      return f.at(hit.c).mul(mpq_class((long)cnt) / sphere);
    }
    Scalar s = 0;
    for (const auto& k : ks) {
      if (hinv) {
        if (cartan_exponent(hit.b * k * *hinv) > lambda) continue;
      } else if (hit.v.exponent() > lambda) {
        continue;
      }
      Scalar v = f.at(k.inverse() * hit.c * k);
      if (!v.is_zero()) s += v;
    }
    return s.mul(volN);
  };

  std::vector<Scalar> part(hits.size());
  if (serial) {
    for (size_t i = 0; i < hits.size(); ++i) part[i] = contribution(hits[i]);
  } else {
#pragma omp parallel for schedule(dynamic)
    for (size_t i = 0; i < hits.size(); ++i) part[i] = contribution(hits[i]);
  }
  Scalar s = 0;
  for (const auto& x : part) s += x;
  return s;
}

Scalar truncated_weighted_trace_bruteforce(const HeckeFunction& f, const GroupElement& g, int lambda,
                                           const std::optional<GroupElement>& h, size_t cap) {
  if (!g.integral()) throw SL2H_ERR("NormalizerViolation", "g must lie in K0");
  const Tree& T = f.tree();
  int m = h ? cartan_exponent(*h) : 0;
  int n2 = f.level() + 2 * m;
  auto cosets = T.enumerate_cosets(lambda, n2, cap);
  GroupElement hh = h ? *h : T.mat(1, 0, 0, 1);
  GroupElement hi = hh.inverse();
  Scalar s = 0;
  for (const auto& c : cosets) {
    GroupElement x = T.coset_rep(c);
    GroupElement y = hi * x.inverse() * g * x * hh;
    if (cartan_exponent(y) > f.support_bound()) continue;
    s += f.at(y);
  }
  return s.mul(vol_K(T.p(), n2));
}

TruncatedOrbitalSeries wo_series(const HeckeFunction& f, const GroupElement& g, int width,
                                 const std::optional<GroupElement>& h) {
  if (width < 3) throw SL2H_ERR("PreconditionViolation", "window width must be at least 3");
  auto cl = classify(g);
  if (!cl.regular() || !cl.compact) throw SL2H_ERR("PreconditionViolation", "g must be regular and compact");
  TruncatedOrbitalSeries S;
  if (h) S.basepoint = "conjugated by " + h->to_string();
  int m = h ? cartan_exponent(*h) : 0;
  int start = std::max(0, f.support_bound()) + m + 1;
  std::vector<Scalar> vals;
  for (int lam = start; lam <= start + width; ++lam) vals.push_back(truncated_weighted_trace(f, g, lam, h));
  for (int shift = 0; shift <= 4; ++shift) {
    bool affine = true;
    for (size_t i = 2; i < vals.size(); ++i)
      affine = affine && (vals[i] - vals[i - 1] - (vals[i - 1] - vals[i - 2])).is_zero();
    if (affine) {
      S.lambda0 = start + shift;
      S.values = vals;
      S.affine = true;
      S.slope = vals[1] - vals[0];
      S.intercept = vals[0] - S.slope.mul(mpq_class(S.lambda0));
      return S;
    }
    vals.erase(vals.begin());
    vals.push_back(truncated_weighted_trace(f, g, start + shift + width + 1, h));
  }
  S.lambda0 = start + 5;
  S.values = vals;
  throw SL2H_ERR("NotStabilized", "no affine window of width " + std::to_string(width) + " up to lambda " +
                                      std::to_string(start + 4 + width));
}

Scalar wo_integral(const HeckeFunction& f, const GroupElement& g, int width, const std::optional<GroupElement>& h) {
  if (f.is_zero()) return 0;
  return wo_series(f, g, width, h).intercept;
}

Scalar orbital_integral_elliptic(const HeckeFunction& f, const GroupElement& g) {
  if (!classify(g).elliptic()) throw SL2H_ERR("NotElliptic", "g is not elliptic regular");
  if (f.is_zero()) return 0;
  std::vector<Scalar> vals;
  for (int lam = 0; lam <= 40; ++lam) {
    vals.push_back(truncated_weighted_trace(f, g, lam));
    size_t L = vals.size();
    if (L >= 3 && vals[L - 1] == vals[L - 2] && vals[L - 2] == vals[L - 3] && lam > f.support_bound())
      return vals.back();
  }
  throw SL2H_ERR("NotStabilized", "elliptic orbital sum did not stabilize");
}

// ---- weightless conditions ----

namespace {

struct BorelRep {
  std::string name;
  GroupElement x;
};

std::vector<BorelRep> borel_reps(const Tree& T, int n) {
  std::vector<BorelRep> out;
  if (n == 0) {
    out.push_back({"1:0", T.mat(1, 0, 0, 1)});
    return out;
  }
  int p = T.p();
  u64 M = T.pn(n);
  // Borel x B x^{-1} fixes the line through the first column of x
  for (u64 c = 0; c < M; ++c) out.push_back({"1:" + std::to_string(c), T.mat(1, 0, (long)c, 1)});
  for (u64 c = 0; c < M / p; ++c)
    out.push_back({std::to_string(c * p) + ":1", T.mat((long)(c * p), -1, 1, 0)});
  return out;
}

}  // namespace

Scalar weightless_condition_value(const HeckeFunction& f, const GroupElement& x, int t_val, u64 t_unit) {
  const Tree& T = f.tree();
  int p = T.p(), n = f.level(), lam = std::max(0, f.support_bound());
  mpq_class t = (long)t_unit;
  for (int i = 0; i < std::abs(t_val); ++i) t = t_val > 0 ? mpq_class(t * p) : mpq_class(t / p);
  int e0 = lam + t_val;  // s ranges over p^{-e0} O / p^n O
  if (e0 < 0) return 0;
  GroupElement xi = x.inverse();
  GroupElement l = T.mat(t, 0, 0, 1 / t);
  u64 cnt = ipow(p, e0 + n);
  mpq_class pe = (long)ipow(p, e0);
  std::vector<Scalar> part(cnt);
#pragma omp parallel for schedule(static)
  for (u64 i = 0; i < cnt; ++i) {
    mpq_class s = mpq_class((long)i) / pe;
    GroupElement y = x * l * T.mat(1, s, 0, 1) * xi;
    part[i] = cartan_exponent(y) > f.support_bound() ? Scalar(0) : f.at(y);
  }
  Scalar acc = 0;
  for (const auto& v : part) acc += v;
  return acc.div(mpq_class((long)T.pn(n)));
}

WeightlessCertificate weightless_check(const HeckeFunction& f) {
  WeightlessCertificate C;
  C.level = f.level();
  C.lambda_bound = std::max(0, f.support_bound());
  if (f.is_zero()) {
    C.weightless = true;
    return C;
  }
  const Tree& T = f.tree();
  int p = T.p(), n = f.level();
  u64 M = T.pn(n);
  std::vector<u64> units;
  if (n == 0)
    units.push_back(1);
  else
    for (u64 u = 1; u < M; ++u)
      if (u % p) units.push_back(u);
  for (const auto& B : borel_reps(T, n))
    for (int j = -C.lambda_bound; j <= C.lambda_bound; ++j)
      for (u64 u : units) {
        WeightlessCondition w{B.name, j, u, weightless_condition_value(f, B.x, j, u)};
        if (!w.value.is_zero()) {
          C.weightless = false;
          C.witness = w;
          C.conditions.push_back(w);
          return C;
        }
        C.conditions.push_back(w);
      }
  C.weightless = true;
  return C;
}

// ---- Waldspurger scan ----

namespace {

Scalar value_on_k0(const HeckeFunction& f, const ModMat& y, u64 p) {
  int n = f.level();
  ModMat key = n == 0 ? ModMat{0, 0, 0, 0} : mm_reduce(y, ipow(p, n));
  return f.at_key(CosetKey{VertexKey{}, key});
}

bool supported_on_k0(const HeckeFunction& f) {
  for (const auto& [k, v] : f.values())
    if (!(k.v == VertexKey{})) return false;
  return true;
}

}  // namespace

Scalar shell_pairing(const HeckeFunction& f, const HeckeFunction& h, int m, const ModMat& k_f, const ModMat& k_h) {
  u64 p = (u64)f.p();
  int L = std::max({f.level(), h.level(), 1});
  u64 M = ipow(p, L);
  ModMat kf = mm_reduce(k_f, M), kfi = mm_inv(kf, M), kh = mm_reduce(k_h, M), khi = mm_inv(kh, M);
  // f'(y) = f(k_f^{-1} y k_f), h'(x) = h(k_h x k_h^{-1})
  auto fval = [&](const ModMat& y) { return value_on_k0(f, mm_mul(mm_mul(kfi, y, M), kf, M), p); };
  auto hval = [&](const ModMat& x) { return value_on_k0(h, mm_mul(mm_mul(kh, x, M), khi, M), p); };
  Scalar s = 0;
  u64 count = 0;
  if (m == 0) {
    for (const auto& x : sl2_mod_elements((int)p, L)) {
      Scalar a = fval(x);
      if (!a.is_zero()) s += a * hval(x).conj();
      ++count;
    }
    return s.div(mpq_class((long)count));
  }
  u64 p2m = 2 * m >= L ? 0 : ipow(p, 2 * m) % M;
  for (u64 al = 0; al < M; ++al) {
    if (al % p == 0) continue;
    u64 ali = invmod(al, M);
    for (u64 b = 0; b < M; ++b)
      for (u64 c = 0; c < M; ++c) {
        u64 de = mulmod(ali, (1 + mulmod(p2m, mulmod(b, c, M), M)) % M, M);
        ++count;
        ModMat y{al, b, mulmod(p2m, c, M), de};
        Scalar a = fval(y);
        if (a.is_zero()) continue;
        ModMat x{al, mulmod(p2m, b, M), c, de};
        Scalar hv = hval(x);
        if (!hv.is_zero()) s += a * hv.conj();
      }
  }
  mpq_class volGamma = mpq_class(1) / mpq_class((long)((p + 1) * ipow(p, 2 * m - 1)));
  return s.mul(volGamma / mpq_class((long)count));
}

WaldspurgerScan waldspurger_support_scan(const HeckeFunction& f, const HeckeFunction& h, int lambda_max, size_t cap) {
  WaldspurgerScan W;
  if (f.is_zero() || h.is_zero()) return W;
  if (!supported_on_k0(f) || !supported_on_k0(h))
    throw SL2H_ERR("PreconditionViolation", "the scan handles functions supported on K0");
  int p = f.p();
  int L = std::max({f.level(), h.level(), 1});
  W.class_functions = is_k0_class(f) && is_k0_class(h);
  std::vector<ModMat> reps;
  if (W.class_functions) {
    reps.push_back(ModMat{1, 0, 0, 1});
  } else {
    reps = sl2_mod_elements(p, L);
    if (reps.size() * reps.size() * ipow(p, 3 * L) > cap)
      throw SL2H_ERR("SupportOverflow", "Waldspurger scan exceeds the cap");
  }
  for (int m = 0; m <= lambda_max; ++m) {
    Scalar found = 0;
    for (size_t a = 0; a < reps.size() && found.is_zero(); ++a)
      for (size_t b = 0; b < reps.size() && found.is_zero(); ++b) found = shell_pairing(f, h, m, reps[a], reps[b]);
    W.shell_values.emplace_back(m, found);
    if (!found.is_zero()) W.largest_shell = m;
  }
  return W;
}

Scalar average_value(const HeckeFunction& f, const GroupElement& g, const std::optional<GroupElement>& probe) {
  if (f.is_zero()) return 0;
  if (!weightless_check(f).weightless) throw SL2H_ERR("NotWeightless", "f fails a weightless condition");
  const Tree& T = f.tree();
  GroupElement h = probe ? *probe : T.mat(1, mpq_class(1, T.p()), 0, 1);
  Scalar a = wo_integral(f, g), b = wo_integral(f, g, 3, h);
  if (a != b) throw SL2H_ERR("OracleMismatch", "WO changed under conjugation of a weightless function");
  return a;
}

}  // namespace sl2h
