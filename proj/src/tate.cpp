#include "sl2h/tate.hpp"

#include <algorithm>

#include "sl2h/errors.hpp"

namespace sl2h::tate {

namespace {

using Idx = Banded::Idx;

Block zero_block(int r) { return Block(size_t(r) * r, Q(0)); }
Block unit_block(int r) {
  Block b = zero_block(r);
  for (int i = 0; i < r; ++i) b[size_t(i) * r + i] = 1;
  return b;
}
bool is_zero(const Block& b) {
  return std::all_of(b.begin(), b.end(), [](const Q& x) { return x == 0; });
}
Block block_mul(const Block& a, const Block& b, int r) {
  Block c = zero_block(r);
  for (int i = 0; i < r; ++i)
    for (int k = 0; k < r; ++k) {
      if (a[size_t(i) * r + k] == 0) continue;
      for (int j = 0; j < r; ++j) c[size_t(i) * r + j] += a[size_t(i) * r + k] * b[size_t(k) * r + j];
    }
  return c;
}
void block_add(Block& a, const Block& b, const Q& s = 1) {
  for (size_t i = 0; i < a.size(); ++i) a[i] += s * b[i];
}

std::map<int, Block> symbol_mul(const std::map<int, Block>& a, const std::map<int, Block>& b, int r) {
  std::map<int, Block> out;
  for (const auto& [s1, A] : a)
    for (const auto& [s2, B] : b) {
      auto it = out.try_emplace(s1 + s2, zero_block(r)).first;
      block_add(it->second, block_mul(A, B, r));
    }
  return out;
}

std::map<int, Block> symbol_add(std::map<int, Block> a, const std::map<int, Block>& b, int r, const Q& s) {
  for (const auto& [k, B] : b) block_add(a.try_emplace(k, zero_block(r)).first->second, B, s);
  return a;
}

// column of the symbolic part only
std::map<Idx, Q> symbol_column(const std::map<int, Block>& P, const std::map<int, Block>& M, int r, Idx in) {
  std::map<Idx, Q> out;
  const auto& S = in.deg >= 0 ? P : M;
  for (const auto& [s, A] : S)
    for (int co = 0; co < r; ++co) {
      const Q& v = A[size_t(co) * r + in.comp];
      if (v != 0) out[{in.deg + s, co}] += v;
    }
  return out;
}

}  // namespace

Banded::Banded(int r, std::map<int, Block> P, std::map<int, Block> M, Core core)
    : r_(r), P_(std::move(P)), M_(std::move(M)), core_(std::move(core)) {
  for (const auto* S : {&P_, &M_})
    for (const auto& [s, A] : *S)
      if ((int)A.size() != r * r) throw SL2H_ERR("PreconditionViolation", "block size mismatch");
  for (const auto& [k, v] : core_)
    if (k.first.comp < 0 || k.first.comp >= r || k.second.comp < 0 || k.second.comp >= r)
      throw SL2H_ERR("PreconditionViolation", "core component out of range");
  normalize();
}

void Banded::normalize() {
  for (auto* S : {&P_, &M_})
    for (auto it = S->begin(); it != S->end();) it = is_zero(it->second) ? S->erase(it) : std::next(it);
  for (auto it = core_.begin(); it != core_.end();) it = it->second == 0 ? core_.erase(it) : std::next(it);
}

int Banded::bandwidth() const {
  long b = 0;
  for (const auto* S : {&P_, &M_})
    for (const auto& [s, A] : *S) b = std::max<long>(b, std::abs(s));
  for (const auto& [k, v] : core_) b = std::max(b, std::abs(k.first.deg - k.second.deg));
  return (int)b;
}

long Banded::core_extent() const {
  long e = 0;
  for (const auto& [k, v] : core_)
    for (long d : {k.first.deg, k.second.deg}) e = std::max(e, std::max(-d, d + 1));
  return e;
}

Q Banded::entry(Idx out, Idx in) const {
  Q v = 0;
  const auto& S = in.deg >= 0 ? P_ : M_;
  auto it = S.find(int(out.deg - in.deg));
  if (it != S.end()) v += it->second[size_t(out.comp) * r_ + in.comp];
  auto c = core_.find({out, in});
  if (c != core_.end()) v += c->second;
  return v;
}

std::vector<std::pair<Idx, Q>> Banded::column(Idx in) const {
  auto col = symbol_column(P_, M_, r_, in);
  for (const auto& [k, v] : core_)
    if (k.second == in) col[k.first] += v;
  std::vector<std::pair<Idx, Q>> out;
  for (auto& [i, v] : col)
    if (v != 0) out.emplace_back(i, v);
  return out;
}

Q Banded::trace() const {
  if (!finite_rank()) throw SL2H_ERR("PreconditionViolation", "trace of an operator of infinite rank");
  Q t = 0;
  for (const auto& [k, v] : core_)
    if (k.first == k.second) t += v;
  return t;
}

Banded Banded::operator+(const Banded& o) const {
  if (o.r_ != r_) throw SL2H_ERR("PreconditionViolation", "rank mismatch");
  Core c = core_;
  for (const auto& [k, v] : o.core_) c[k] += v;
  return Banded(r_, symbol_add(P_, o.P_, r_, 1), symbol_add(M_, o.M_, r_, 1), std::move(c));
}

Banded Banded::operator-(const Banded& o) const { return *this + o.scaled(-1); }

Banded Banded::scaled(const Q& s) const {
  Banded out = *this;
  for (auto* S : {&out.P_, &out.M_})
    for (auto& [k, A] : *S)
      for (auto& x : A) x *= s;
  for (auto& [k, v] : out.core_) v *= s;
  out.normalize();
  return out;
}

Banded Banded::operator*(const Banded& o) const {
  if (o.r_ != r_) throw SL2H_ERR("PreconditionViolation", "rank mismatch");
  auto P = symbol_mul(P_, o.P_, r_);
  auto M = symbol_mul(M_, o.M_, r_);
  // outside [-R, R) the product column is given by the symbols alone
  long R = core_extent() + o.core_extent() + bandwidth() + o.bandwidth() + 1;
  Core core;
  for (long j = -R; j < R; ++j)
    for (int c = 0; c < r_; ++c) {
      Idx in{j, c};
      std::map<Idx, Q> col;
      for (const auto& [k, v2] : o.column(in))
        for (const auto& [i, v1] : column(k)) col[i] += v1 * v2;
      for (const auto& [i, v] : symbol_column(P, M, r_, in)) col[i] -= v;
      for (const auto& [i, v] : col)
        if (v != 0) core[{i, in}] = v;
    }
  return Banded(r_, std::move(P), std::move(M), std::move(core));
}

bool Banded::operator==(const Banded& o) const {
  return r_ == o.r_ && P_ == o.P_ && M_ == o.M_ && core_ == o.core_;
}

Banded commutator(const Banded& a, const Banded& b) { return a * b - b * a; }

Banded identity(int r) { return Banded(r, {{0, unit_block(r)}}, {{0, unit_block(r)}}); }
Banded shift(int r, int k) { return Banded(r, {{k, unit_block(r)}}, {{k, unit_block(r)}}); }
Banded projector(int r) { return Banded(r, {{0, unit_block(r)}}, {}); }

Banded monomial(const std::vector<int>& perm, int k) {
  int r = (int)perm.size();
  Block B = zero_block(r);
  for (int c = 0; c < r; ++c) B[size_t(perm[c]) * r + c] = 1;
  return Banded(r, {{k, B}}, {{k, B}});
}

Banded elementary(int r, Idx out, Idx in, const Q& v) { return Banded(r, {}, {}, {{{out, in}, v}}); }

Banded random_banded(std::mt19937_64& rng, const RandomSpec& s) {
  std::uniform_int_distribution<int> ent(-s.entry, s.entry);
  auto rand_block = [&] {
    Block B = zero_block(s.r);
    for (auto& x : B) x = ent(rng);
    return B;
  };
  std::map<int, Block> P, M;
  for (int k = -s.b; k <= s.b; ++k) {
    if (s.plus) P[k] = rand_block();
    if (s.minus) M[k] = rand_block();
  }
  Banded::Core core;
  for (long i = -s.core; i < s.core; ++i)
    for (long j = -s.core; j < s.core; ++j) {
      if (std::abs(i - j) > s.b || rng() % 2) continue;
      for (int a = 0; a < s.r; ++a)
        for (int c = 0; c < s.r; ++c) core[{{i, a}, {j, c}}] = ent(rng);
    }
  return Banded(s.r, std::move(P), std::move(M), std::move(core));
}

WindowMatrix WindowMatrix::operator*(const WindowMatrix& o) const {
  WindowMatrix out{r, N, std::vector<std::map<long, Q>>(rows.size())};
  for (size_t i = 0; i < rows.size(); ++i)
    for (const auto& [k, a] : rows[i])
      for (const auto& [j, b] : o.rows[k]) out.rows[i][j] += a * b;
  return out;
}

WindowMatrix WindowMatrix::operator-(const WindowMatrix& o) const {
  WindowMatrix out = *this;
  for (size_t i = 0; i < rows.size(); ++i)
    for (const auto& [j, b] : o.rows[i]) out.rows[i][j] -= b;
  return out;
}

Q WindowMatrix::trace() const {
  Q t = 0;
  for (size_t i = 0; i < rows.size(); ++i) {
    auto it = rows[i].find((long)i);
    if (it != rows[i].end()) t += it->second;
  }
  return t;
}

WindowMatrix materialize(const Banded& e, long N) {
  WindowMatrix W{e.rank(), N, std::vector<std::map<long, Q>>(size_t(2 * N * e.rank()))};
  for (long j = -N; j < N; ++j)
    for (int c = 0; c < e.rank(); ++c)
      for (const auto& [i, v] : e.column({j, c}))
        if (W.contains(i)) W.rows[W.index(i)][W.index({j, c})] = v;
  return W;
}

namespace {

long auto_window(std::initializer_list<const Banded*> ops, long extra = 0) {
  long b = 0, e = 0;
  for (const auto* o : ops) {
    b += o->bandwidth();
    e = std::max(e, o->core_extent());
  }
  return b + e + extra + 2;
}

template <class F>
StableTrace stable(F f, long N, long b) {
  StableTrace s;
  s.N = N;
  s.N_probe = N + std::max<long>(b, 1);
  s.value = f(N);
  Q probe = f(s.N_probe);
  if (probe != s.value)
    throw SL2H_ERR("TruncationUnstable", "trace changed from " + s.value.get_str() + " to " + probe.get_str() +
                                             " when the window grew from " + std::to_string(N));
  return s;
}

}  // namespace

StableTrace cocycle_C(const Banded& e1, const Banded& e2, long N) {
  if (e1.rank() != e2.rank()) throw SL2H_ERR("PreconditionViolation", "rank mismatch");
  if (N == 0) N = auto_window({&e1, &e2});
  int r = e1.rank();
  auto f = [&](long n) -> Q {
    auto A = materialize(e1, n), B = materialize(e2, n);
    auto Pi = materialize(projector(r), n), Co = materialize(identity(r) - projector(r), n);
    return (A * Pi * B * Co).trace() - (B * Pi * A * Co).trace();
  };
  return stable(f, N, std::max(e1.bandwidth(), e2.bandwidth()));
}

StableTrace hat_tau(const Banded& alpha, const Banded& beta, const Banded& g, long N) {
  if (N == 0) N = auto_window({&alpha, &beta, &g});
  int r = alpha.rank();
  auto f = [&](long n) -> Q {
    auto A = materialize(alpha, n), Pi = materialize(projector(r), n);
    return ((A * Pi - Pi * A) * materialize(beta, n) * materialize(g, n)).trace();
  };
  return stable(f, N, std::max({alpha.bandwidth(), beta.bandwidth(), g.bandwidth()}));
}

StableTrace commutator_trace(const Banded& a, const Banded& b, long N) {
  if (!commutator(a, b).finite_rank())
    throw SL2H_ERR("PreconditionViolation", "commutator is not of finite rank");
  if (N == 0) N = auto_window({&a, &b});
  auto f = [&](long n) -> Q {
    auto A = materialize(a, n), B = materialize(b, n);
    return (A * B - B * A).trace();
  };
  return stable(f, N, std::max(a.bandwidth(), b.bandwidth()));
}

// ---- discrete subspaces ----

namespace {

using Vec = std::map<long, Q>;  // sub-window coordinate -> value

// reduced row echelon basis keyed by pivot
struct Echelon {
  std::map<long, Vec> rows;
  Vec reduce(Vec v) const {
    for (auto& [p, row] : rows) {
      auto it = v.find(p);
      if (it == v.end() || it->second == 0) continue;
      Q c = it->second;
      for (const auto& [k, x] : row) v[k] -= c * x;
    }
    for (auto it = v.begin(); it != v.end();) it = it->second == 0 ? v.erase(it) : std::next(it);
    return v;
  }
  bool add(Vec v) {
    v = reduce(std::move(v));
    if (v.empty()) return false;
    long p = v.begin()->first;
    Q c = v.begin()->second;
    for (auto& [k, x] : v) x /= c;
    for (auto& [q, row] : rows) {
      auto it = row.find(p);
      if (it == row.end()) continue;
      Q d = it->second;
      for (const auto& [k, x] : v) row[k] -= d * x;
      for (auto jt = row.begin(); jt != row.end();) jt = jt->second == 0 ? row.erase(jt) : std::next(jt);
    }
    rows[p] = std::move(v);
    return true;
  }
  size_t rank() const { return rows.size(); }
};

// coordinates on degrees [-K, N): index (deg + K) r + comp
long sub_index(const Discrete& W, Idx i) { return (i.deg + W.K) * W.r + i.comp; }
Idx sub_idx(const Discrete& W, long k) { return {k / W.r - W.K, int(k % W.r)}; }

Vec truncate_tail(const Discrete& W, const std::map<Idx, Q>& v) {
  Vec out;
  for (const auto& [i, x] : v)
    if (i.deg >= -W.K && x != 0) out[sub_index(W, i)] += x;
  return out;
}

Echelon finite_part(const Discrete& W) {
  Echelon E;
  for (const auto& v : W.vectors) {
    for (const auto& [i, x] : v)
      if (i.deg >= W.K || i.comp < 0 || i.comp >= W.r)
        throw SL2H_ERR("PreconditionViolation", "W vector outside degrees [-K, K)");
    E.add(truncate_tail(W, v));
  }
  return E;
}

}  // namespace

Discrete discrete_minus(int r) { return Discrete{r, 0, {}}; }

Discrete discrete_below(int r, long d) {
  if (d < -1) throw SL2H_ERR("PreconditionViolation", "discrete_below needs d >= -1");
  Discrete W{r, d + 1, {}};
  for (long j = -W.K; j <= d; ++j)
    for (int c = 0; c < r; ++c) W.vectors.push_back({{{j, c}, Q(1)}});
  return W;
}

Discrete random_discrete(std::mt19937_64& rng, int r, long K, int extra) {
  Discrete W{r, K, {}};
  std::uniform_int_distribution<int> ent(-2, 2);
  for (long j = -K; j < 0; ++j)
    for (int c = 0; c < r; ++c)
      if (rng() % 4) W.vectors.push_back({{{j, c}, Q(1)}});
  for (int t = 0; t < extra; ++t) {
    std::map<Idx, Q> v;
    for (long j = -K; j < K; ++j)
      for (int c = 0; c < r; ++c)
        if (rng() % 3 == 0) v[{j, c}] = ent(rng);
    W.vectors.push_back(std::move(v));
  }
  return W;
}

long dim_plus_cap(const Discrete& W) {
  Echelon E = finite_part(W);
  long w = (long)E.rank();
  long plus = W.K * W.r;  // V+ inside degrees [-K, K) has dimension K r
  for (long j = 0; j < W.K; ++j)
    for (int c = 0; c < W.r; ++c) E.add({{sub_index(W, {j, c}), Q(1)}});
  return plus + w - (long)E.rank();
}

long codim_plus_sum(const Discrete& W) {
  Echelon E = finite_part(W);
  for (long j = 0; j < W.K; ++j)
    for (int c = 0; c < W.r; ++c) E.add({{sub_index(W, {j, c}), Q(1)}});
  return 2 * W.K * W.r - (long)E.rank();
}

long relative_index(const Discrete& W) { return dim_plus_cap(W) - codim_plus_sum(W); }

bool preserves(const Banded& e, const Discrete& W) {
  Echelon E = finite_part(W);
  auto image_ok = [&](const std::map<Idx, Q>& v) {
    std::map<Idx, Q> img;
    for (const auto& [i, x] : v)
      for (const auto& [o, y] : e.column(i)) img[o] += x * y;
    for (const auto& [o, y] : img)
      if (o.deg >= W.K && y != 0) return false;
    return E.reduce(truncate_tail(W, img)).empty();
  };
  for (const auto& v : W.vectors)
    if (!image_ok(v)) return false;
  long lo = std::min(-W.K - e.bandwidth(), -e.core_extent());
  for (long j = lo; j < -W.K; ++j)
    for (int c = 0; c < W.r; ++c)
      if (!image_ok({{{j, c}, Q(1)}})) return false;
  return true;
}

StableTrace sigma_W(const Banded& e, const Discrete& W, long N) {
  if (e.rank() != W.r) throw SL2H_ERR("PreconditionViolation", "rank mismatch");
  if (!preserves(e, W)) throw SL2H_ERR("DoesNotPreserveW", "E(W) is not contained in W");
  Echelon E = finite_part(W);
  if (N == 0) N = W.K + auto_window({&e});
  if (N < W.K) throw SL2H_ERR("PreconditionViolation", "window smaller than the W support");
  int r = W.r;
  auto f = [&](long n) -> Q {
    // projector onto W along span{e_i : i not a pivot of the reduced basis}
    WindowMatrix PW{r, n, std::vector<std::map<long, Q>>(size_t(2 * n * r))};
    for (long j = -n; j < -W.K; ++j)
      for (int c = 0; c < r; ++c) PW.rows[PW.index({j, c})][PW.index({j, c})] = 1;
    for (const auto& [p, row] : E.rows) {
      long col = PW.index(sub_idx(W, p));
      for (const auto& [k, x] : row) PW.rows[PW.index(sub_idx(W, k))][col] = x;
    }
    auto A = materialize(e, n);
    auto Co = materialize(identity(r) - projector(r), n);
    return (A * PW).trace() - (Co * A * Co).trace();
  };
  return stable(f, N, e.bandwidth());
}

}  // namespace sl2h::tate
