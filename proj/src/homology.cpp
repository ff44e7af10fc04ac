#include "sl2h/homology.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <unordered_map>

#include "sl2h/errors.hpp"
#include "sl2h/linalg.hpp"

namespace sl2h::homology {

namespace {

constexpr int kInfVal = 1 << 28;

int val_z(mpz_class z, int p) {
  if (z == 0) return kInfVal;
  int v = 0;
  while (mpz_divisible_ui_p(z.get_mpz_t(), (unsigned long)p)) {
    z /= p;
    ++v;
  }
  return v;
}
int val_q(const mpq_class& q, int p) {
  if (q == 0) return kInfVal;
  return val_z(q.get_num(), p) - val_z(q.get_den(), p);
}
mpq_class ppow(int p, int e) {
  mpq_class r = 1;
  for (int i = 0; i < std::abs(e); ++i) r *= p;
  return e >= 0 ? r : 1 / r;
}
// p-integral rational mod m
i64 mod_q(const mpq_class& q, i64 m) {
  mpz_class num = q.get_num() % m, den = q.get_den() % m, inv;
  if (num < 0) num += m;
  if (den < 0) den += m;
  if (!mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), mpz_class(m).get_mpz_t()))
    throw SL2H_ERR("PreconditionViolation", "rational is not p-integral");
  mpz_class r = (num * inv) % m;
  return r.get_si();
}
i64 ipow64(int p, int e) {
  i64 r = 1;
  for (int i = 0; i < e; ++i) r *= p;
  return r;
}
int val_i(i64 x, int p, int cap) {
  if (x == 0) return cap;
  int v = 0;
  while (x % p == 0 && v < cap) {
    x /= p;
    ++v;
  }
  return v;
}
i64 pmod(i64 x, i64 m) { return ((x % m) + m) % m; }

}  // namespace

P1Level::P1Level(int p, int D) : p_(p), D_(D) {
  if (D < 1) throw SL2H_ERR("PreconditionViolation", "depth must be >= 1");
  pD_ = ipow64(p, D);
  size_ = (u64)(pD_ + pD_ / p);
}

Ball P1Level::ball(u64 i) const {
  if ((i64)i < pD_) return {(i64)i, 1, D_};
  return {1, (i64)(i - pD_) * p_, D_};
}

u64 P1Level::index(const Ball& b) const {
  if (b.depth != D_) throw SL2H_ERR("PreconditionViolation", "ball depth mismatch");
  if (b.x2 % p_ != 0) return (u64)b.x1;
  return (u64)(pD_ + b.x2 / p_);
}

std::vector<u64> P1Level::refine(const Ball& b) const {
  if (b.depth > D_) throw SL2H_ERR("PreconditionViolation", "ball finer than the level");
  i64 step = ipow64(p_, b.depth), cnt = ipow64(p_, D_ - b.depth);
  std::vector<u64> out;
  out.reserve((size_t)cnt);
  for (i64 t = 0; t < cnt; ++t) {
    if (b.x2 % p_ != 0)
      out.push_back((u64)(b.x1 + step * t));
    else
      out.push_back((u64)(pD_ + (b.x2 + step * t) / p_));
  }
  return out;
}

u64 P1Level::residue(u64 i) const {
  Ball b = ball(i);
  return b.x2 % p_ != 0 ? (u64)(b.x1 % p_) : (u64)p_;
}

int turning(int p, const Ball& x, const Ball& y) {
  int m = std::min(x.depth, y.depth);
  i64 det = x.x1 * y.x2 - x.x2 * y.x1;
  int v = val_i(det, p, m);
  return v >= m ? -1 : v;
}

int pair_orbit(int p, const Ball& x, const Ball& y) {
  int k = turning(p, x, y);
  if (k < 0) throw SL2H_ERR("PreconditionViolation", "balls are not disjoint");
  if (k == 0) return 0;
  // g = [[alpha, beta], [-x2, x1]] sends x to (1, 0); the class of (g y)_1 * det / p^k mod squares is invariant
  i64 det = x.x1 * y.x2 - x.x2 * y.x1;
  i64 u = pmod(det / ipow64(p, k), p);
  i64 e1 = x.x2 % p != 0 ? y.x2 : y.x1;  // alpha, beta = (0, 1) or (1, 0)
  e1 = pmod(e1, p);
  if (u == 0 || e1 == 0) throw SL2H_ERR("InternalError", "pair orbit invariant degenerate");
  u64 leg = modp::pow((u64)(u * e1 % p), (u64)(p - 1) / 2, (u64)p);
  return 2 * k - 1 + (leg == 1 ? 0 : 1);
}

Ball canonical_ball(int p, const mpq_class& a, const mpq_class& b, int depth) {
  i64 m = ipow64(p, depth);
  if (val_q(b, p) == 0) return {mod_q(a / b, m), 1, depth};
  if (val_q(a, p) != 0) throw SL2H_ERR("PreconditionViolation", "vector is not primitive");
  return {1, mod_q(b / a, m), depth};
}

std::optional<Ball> ball_image(int p, const RatMat& g, const Ball& bl, int max_depth) {
  mpq_class v1 = g.a * bl.x1 + g.b * bl.x2, v2 = g.c * bl.x1 + g.d * bl.x2;
  int e = std::min(val_q(v1, p), val_q(v2, p));
  int m = std::min({val_q(g.a, p), val_q(g.b, p), val_q(g.c, p), val_q(g.d, p)});
  int d = bl.depth;
  // the image is a ball around g x only if p^{d-e} g Z_p^2 lies in p Z_p^2
  if (d - e + m < 1) return std::nullopt;
  mpq_class s = ppow(p, -e), t = ppow(p, d - e);
  mpq_class x1 = v1 * s, x2 = v2 * s;
  auto det_val = [&](const mpq_class& c1, const mpq_class& c2) { return val_q(x1 * c2 - x2 * c1, p); };
  int dn = std::min(det_val(g.a * t, g.c * t), det_val(g.b * t, g.d * t));
  if (dn < 1 || dn > max_depth) return std::nullopt;
  return canonical_ball(p, x1, x2, dn);
}

SplitWindow split_window(int p, int n, int lambda, size_t cap) {
  if (lambda < 0 || n < 1) throw SL2H_ERR("PreconditionViolation", "need lambda >= 0 and n >= 1");
  SplitWindow W;
  W.p = p;
  W.n = n;
  W.lambda = lambda;
  W.lambda_int = lambda - 1;
  W.level = P1Level(p, lambda + n);
  u64 N = W.level.size();
  if (N * N > cap) throw SL2H_ERR("SupportOverflow", "split window has " + std::to_string(N * N) + " candidate boxes");
  // boxes touching a residue anchor go last so that anchor squares rarely fill in during elimination
  auto anchor = [&](u64 i) { return (i64)i < p || i == (u64)ipow64(p, lambda + n); };
  std::vector<std::pair<u64, u64>> first, last;
  for (u64 i = 0; i < N; ++i)
    for (u64 j = 0; j < N; ++j) {
      if (i == j) continue;
      int t = turning(p, W.level.ball(i), W.level.ball(j));
      if (t < 0 || t > lambda) continue;
      (anchor(i) || anchor(j) ? last : first).emplace_back(i, j);
    }
  W.boxes = std::move(first);
  W.boxes.insert(W.boxes.end(), last.begin(), last.end());
  for (const auto& [i, j] : W.boxes) W.box_turning.push_back(turning(p, W.level.ball(i), W.level.ball(j)));
  return W;
}

IntMatrix compose(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols != b.rows) throw SL2H_ERR("PreconditionViolation", "dimension mismatch");
  IntMatrix c{a.rows, b.cols, std::vector<std::vector<std::pair<size_t, long>>>(b.cols)};
  for (size_t j = 0; j < b.cols; ++j) {
    std::map<size_t, long> acc;
    for (const auto& [k, v] : b.col[j])
      for (const auto& [i, w] : a.col[k]) acc[i] += v * w;
    for (const auto& [i, v] : acc)
      if (v != 0) c.col[j].emplace_back(i, v);
  }
  return c;
}

bool is_zero(const IntMatrix& m) {
  for (const auto& c : m.col)
    for (const auto& [i, v] : c)
      if (v != 0) return false;
  return true;
}

size_t rank_mod(const IntMatrix& m, u64 P) {
  modp::SparseEliminator E(P);
  for (const auto& c : m.col) {
    std::map<size_t, u64> row;
    for (const auto& [i, v] : c) row[i] = modp::add(row[i], modp::reduce(v, P), P);
    E.add_row(std::move(row));
  }
  return E.rank();
}

StarComplexReport build_star_complex(int p, int n, int lambda, size_t cap) {
  SplitWindow W = split_window(p, n, lambda, cap);
  const auto& L = W.level;
  u64 N = L.size();
  std::map<std::pair<u64, u64>, size_t> box_index;
  for (size_t k = 0; k < W.boxes.size(); ++k) box_index[W.boxes[k]] = k;

  // anchors: one depth-D point per residue class
  std::vector<u64> anchors;
  for (int r = 0; r < p; ++r) anchors.push_back((u64)r);
  anchors.push_back((u64)ipow64(p, lambda + n));

  StarComplexReport R;
  IntMatrix sq{W.boxes.size(), 0, {}};
  std::vector<bool> sq_interior;
  for (const auto& [u, w] : W.boxes) {
    u64 ru = L.residue(u), rw = L.residue(w);
    std::optional<u64> u0, w0;
    for (u64 a : anchors)
      if (L.residue(a) != rw && a != u) {
        u0 = a;
        break;
      }
    if (!u0) continue;
    for (u64 a : anchors)
      if (L.residue(a) != ru && L.residue(a) != L.residue(*u0) && a != w) {
        w0 = a;
        break;
      }
    if (!w0) continue;
    std::vector<std::pair<size_t, long>> col;
    bool ok = true, interior = true;
    for (auto [x, y, s] : {std::tuple{u, w, 1L}, {u, *w0, -1L}, {*u0, w, -1L}, {*u0, *w0, 1L}}) {
      auto it = box_index.find({x, y});
      if (it == box_index.end()) {
        ok = false;
        break;
      }
      interior = interior && W.box_turning[it->second] <= W.lambda_int;
      col.emplace_back(it->second, s);
    }
    if (!ok) continue;
    std::sort(col.begin(), col.end());
    sq.col.push_back(std::move(col));
    sq_interior.push_back(interior);
  }
  sq.cols = sq.col.size();

  IntMatrix push{2 * N, W.boxes.size(), std::vector<std::vector<std::pair<size_t, long>>>(W.boxes.size())};
  for (size_t k = 0; k < W.boxes.size(); ++k)
    push.col[k] = {{(size_t)W.boxes[k].first, 1L}, {(size_t)(N + W.boxes[k].second), 1L}};
  IntMatrix last{1, 2 * N, std::vector<std::vector<std::pair<size_t, long>>>(2 * N)};
  for (u64 i = 0; i < 2 * N; ++i) last.col[i] = {{0, i < N ? 1L : -1L}};

  R.complex.names = {"K(Omega)", "S(Omega)", "S(G/B)+S(G/B')", "C"};
  R.complex.dims = {sq.cols, W.boxes.size(), 2 * N, 1};
  R.complex.interior = {W.lambda_int, W.lambda_int, -1, -1};
  R.composite_zero = is_zero(compose(push, sq)) && is_zero(compose(last, push));
  R.rank_push = rank_mod(push);
  R.rank_last = rank_mod(last);
  R.last_onto = R.rank_last == 1;
  R.exact_at_borels = R.rank_push == 2 * N - R.rank_last;

  IntMatrix push_int{2 * N, 0, {}};
  for (size_t k = 0; k < W.boxes.size(); ++k)
    if (W.box_turning[k] <= W.lambda_int) push_int.col.push_back(push.col[k]);
  push_int.cols = push_int.col.size();
  R.interior_boxes = push_int.cols;
  R.interior_kernel_dim = push_int.cols - rank_mod(push_int);
  IntMatrix sq_int{W.boxes.size(), 0, {}};
  for (size_t k = 0; k < sq.cols; ++k)
    if (sq_interior[k]) sq_int.col.push_back(sq.col[k]);
  sq_int.cols = sq_int.col.size();
  R.interior_kernel_generated = rank_mod(sq_int);
  R.interior_exact = R.interior_kernel_generated == R.interior_kernel_dim;
  R.complex.differentials = {std::move(sq), std::move(push), std::move(last)};
  return R;
}

// ---- elliptic ----

namespace {

CosetKey torus_canonical(const CosetKey& c, const std::vector<ModMat>& torus, u64 pn) {
  CosetKey best = c;
  for (const auto& t : torus) {
    CosetKey k{c.v, mm_mul(c.k, t, pn)};
    if (k < best) best = k;
  }
  return best;
}

}  // namespace

EllipticWindow elliptic_window(const Tree& T, const GroupElement& g0, int n, int lambda, size_t cap) {
  auto cl = classify(g0);
  if (!cl.elliptic() || !g0.integral()) throw SL2H_ERR("PreconditionViolation", "g0 must be elliptic regular in K0");
  EllipticWindow W;
  W.n = n;
  W.lambda = lambda;
  W.lambda_int = lambda - 1;
  u64 pn = T.pn(n);
  ModMat gb = reduce_integral(g0, n);
  for (const auto& m : sl2_mod_elements(T.p(), n))
    if (mm_mul(m, gb, pn) == mm_mul(gb, m, pn)) W.torus.push_back(m);
  auto keys = T.enumerate_cosets(lambda, n, cap);
  W.cosets = keys.size();
  std::set<CosetKey> reps;
  for (const auto& k : keys) reps.insert(torus_canonical(k, W.torus, pn));
  W.reps.assign(reps.begin(), reps.end());
  for (const auto& r : W.reps) W.rep_exponent.push_back(r.v.exponent());
  return W;
}

FiniteComplex elliptic_complex(const Tree&, const EllipticWindow& W) {
  FiniteComplex C;
  C.names = {"S(Omega)", "C"};
  C.dims = {W.reps.size(), 1};
  IntMatrix integ{1, W.reps.size(), std::vector<std::vector<std::pair<size_t, long>>>(W.reps.size())};
  for (auto& c : integ.col) c = {{0, 1L}};  // every T K_n coset has the same volume
  C.differentials = {std::move(integ)};
  C.interior = {W.lambda_int, -1};
  return C;
}

CoinvariantEstimate coinvariant_estimate_elliptic(const Tree& T, const GroupElement& g0, int n, int lambda) {
  EllipticWindow W = elliptic_window(T, g0, n, lambda);
  u64 pn = T.pn(n);
  std::unordered_map<CosetKey, size_t, CosetKeyHash> idx;
  for (size_t i = 0; i < W.reps.size(); ++i) idx[W.reps[i]] = i;
  std::vector<GroupElement> gens;
  for (const auto& k : T.enumerate_cosets(1, 1)) gens.push_back(T.coset_rep(k));

  // relations 1_x - 1_{gamma x} are differences of basis vectors: the rank is (#vertices - #components)
  std::vector<size_t> parent(W.reps.size());
  std::iota(parent.begin(), parent.end(), 0);
  std::function<size_t(size_t)> find = [&](size_t x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
  CoinvariantEstimate E;
  E.orbit = "elliptic";
  E.p = T.p();
  E.lambda = lambda;
  E.lambda_int = W.lambda_int;
  E.window_dim = W.reps.size();
  for (size_t i = 0; i < W.reps.size(); ++i) {
    if (W.rep_exponent[i] > W.lambda_int) continue;
    ++E.interior_dim;
    GroupElement x = T.coset_rep(W.reps[i]);
    for (const auto& g : gens) {
      auto it = idx.find(torus_canonical(T.coset_key(g * x, n), W.torus, pn));
      if (it == idx.end()) {
        ++E.dropped;
        continue;
      }
      ++E.relations;
      parent[find(i)] = find(it->second);
    }
  }
  std::set<size_t> comps;
  for (size_t i = 0; i < W.reps.size(); ++i)
    if (W.rep_exponent[i] <= W.lambda_int) comps.insert(find(i));
  E.estimate = (long)comps.size();
  return E;
}

// Dual computation. A functional psi on the window vanishing on every f - gamma f (f in the interior part of K)
// may be averaged over SL2(Z_p) when the generator set is stable under it (true for representatives of
// G_{<=1}/K_1), so psi(B1 x B2) = F(SL2(Z_p)-orbit of the pair). The remaining generators reduce to
// a = diag(p, 1/p) on SL2(Z_p)-orbits of coarse interior boxes, and the relation for a reads
//   F(orbit(a box)) - F(orbit(box)) = alpha(B1) + beta(B2)
// since the annihilator of K on boxes is {alpha(u) + beta(w)}. The estimate is the dimension of the solution
// space restricted to interior orbits, minus the constants.
CoinvariantEstimate coinvariant_estimate_split(int p, int lambda) {
  if (lambda < 2) throw SL2H_ERR("PreconditionViolation", "split estimate needs lambda >= 2");
  CoinvariantEstimate E;
  E.orbit = "split";
  E.p = p;
  E.lambda = lambda;
  E.lambda_int = lambda - 2;
  int dc = lambda - 1, D = lambda + 1;
  P1Level L(p, dc);
  u64 Nc = L.size();
  size_t nF = 2 * (size_t)lambda + 1;
  E.window_dim = nF;
  E.interior_dim = 2 * (size_t)E.lambda_int + 1;
  RatMat a{p, 0, 0, mpq_class(1, p)};
  const u64 P = 2305843009213693951ULL;
  modp::SparseEliminator S(P);
  std::vector<std::optional<Ball>> img(Nc);
  for (u64 i = 0; i < Nc; ++i) img[i] = ball_image(p, a, L.ball(i), D);
  for (u64 u = 0; u < Nc; ++u)
    for (u64 w = 0; w < Nc; ++w) {
      if (u == w) continue;
      if (!img[u] || !img[w]) {
        ++E.dropped;
        continue;
      }
      int k2 = turning(p, *img[u], *img[w]);
      if (k2 < 0 || k2 > lambda) {
        ++E.dropped;
        continue;
      }
      size_t o1 = (size_t)pair_orbit(p, L.ball(u), L.ball(w));
      size_t o2 = (size_t)pair_orbit(p, *img[u], *img[w]);
      std::map<size_t, u64> row;
      row[o2] = modp::add(row[o2], 1, P);
      row[o1] = modp::sub(row[o1], 1, P);
      row[nF + u] = P - 1;
      row[nF + Nc + w] = P - 1;
      ++E.relations;
      S.add_row(std::move(row));
    }
  size_t r1 = S.rank();
  for (size_t o = 0; o < E.interior_dim; ++o) S.add_row({{o, 1}});
  E.estimate = (long)(S.rank() - r1) - 1;
  return E;
}

}  // namespace sl2h::homology
