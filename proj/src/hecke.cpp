#include "sl2h/hecke.hpp"

#include <omp.h>

#include <algorithm>
#include <mutex>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "sl2h/errors.hpp"

namespace sl2h {

namespace {

// elements of SL(2, Z/p^N) grouped by their reduction mod p^n
const std::map<ModMat, std::vector<ModMat>>& lifts(int p, int n, int N) {
  static std::mutex mu;
  static std::map<std::tuple<int, int, int>, std::map<ModMat, std::vector<ModMat>>> cache;
  std::lock_guard<std::mutex> lk(mu);
  auto key = std::make_tuple(p, n, N);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  std::map<ModMat, std::vector<ModMat>> g;
  u64 M = ipow(p, n);
  for (const auto& k : sl2_mod_elements(p, N)) {
    ModMat r = n == 0 ? ModMat{0, 0, 0, 0} : mm_reduce(k, M);
    g[r].push_back(k);
  }
  return cache[key] = std::move(g);
}

}  // namespace

std::vector<GroupElement> level_generators(const Tree& T, int n) {
  if (n == 0) return {T.mat(1, 1, 0, 1), T.mat(1, 0, 1, 1)};
  mpq_class q = (long)T.pn(n);
  return {T.mat(1, q, 0, 1), T.mat(1, 0, q, 1), T.mat(1 + q, 0, 0, 1 / (1 + q))};
}

HeckeFunction::HeckeFunction(std::shared_ptr<const Tree> tree, int level, Map values, bool check)
    : tree_(std::move(tree)), level_(level) {
  for (auto it = values.begin(); it != values.end();) {
    if (it->second.is_zero())
      it = values.erase(it);
    else
      ++it;
  }
  values_ = std::move(values);
  for (const auto& [k, v] : values_) lambda_ = std::max(lambda_, k.v.exponent());
  if (check && !is_left_invariant())
    throw SL2H_ERR("PreconditionViolation", "coefficients are not left K_n-invariant");
}

Scalar HeckeFunction::at_key(const CosetKey& c) const {
  auto it = values_.find(c);
  return it == values_.end() ? Scalar(0) : it->second;
}

Scalar HeckeFunction::at(const GroupElement& g) const {
  if (values_.empty()) return 0;
  if (cartan_exponent(g) > lambda_) return 0;
  return at_key(tree_->coset_key(g, level_));
}

bool HeckeFunction::is_left_invariant() const {
  auto gens = level_generators(*tree_, level_);
  for (const auto& [k, v] : values_) {
    GroupElement x = tree_->coset_rep(k);
    for (const auto& s : gens)
      if (at_key(tree_->coset_key(s * x, level_)) != v) return false;
  }
  return true;
}

HeckeFunction HeckeFunction::refine(int N) const {
  if (N < level_) throw SL2H_ERR("PreconditionViolation", "cannot coarsen a Hecke function");
  if (N == level_) return *this;
  const auto& L = lifts(tree_->p(), level_, N);
  Map out;
  for (const auto& [k, v] : values_) {
    ModMat r = level_ == 0 ? ModMat{0, 0, 0, 0} : k.k;
    for (const auto& kk : L.at(r)) out.emplace(CosetKey{k.v, kk}, v);
  }
  return HeckeFunction(tree_, N, std::move(out), false);
}

HeckeFunction HeckeFunction::operator+(const HeckeFunction& o) const {
  if (values_.empty() && !tree_) return o;
  int N = std::max(level_, o.level_);
  HeckeFunction a = refine(N), b = o.refine(N);
  Map m = a.values_;
  for (const auto& [k, v] : b.values_) {
    auto it = m.find(k);
    if (it == m.end())
      m.emplace(k, v);
    else
      it->second += v;
  }
  return HeckeFunction(tree_, N, std::move(m), false);
}

HeckeFunction HeckeFunction::scaled(const Scalar& s) const {
  Map m;
  for (const auto& [k, v] : values_) m.emplace(k, v * s);
  return HeckeFunction(tree_, level_, std::move(m), false);
}

HeckeFunction HeckeFunction::operator-(const HeckeFunction& o) const { return *this + o.scaled(-1); }

bool HeckeFunction::operator==(const HeckeFunction& o) const {
  int N = std::max(level_, o.level_);
  return refine(N).values_ == o.refine(N).values_;
}

Scalar HeckeFunction::integral() const {
  Scalar s = 0;
  for (const auto& [k, v] : values_) s += v;
  return s.mul(vol_K(tree_->p(), level_));
}

std::string HeckeFunction::serialize() const {
  bool fl = false;
  for (const auto& [k, v] : values_) fl = fl || v.is_float();
  std::ostringstream os;
  os << "sl2h-hecke\n"
     << "p " << tree_->p() << "\n"
     << "level " << level_ << "\n"
     << "lambda " << lambda_ << "\n"
     << "normalization " << normalization() << "\n"
     << "scalar " << (fl ? "float" : "exact") << "\n"
     << "count " << values_.size() << "\n";
  for (const auto& [k, v] : values_)
    os << k.v.a << ' ' << k.v.e << ' ' << k.v.num << ' ' << k.k.a << ' ' << k.k.b << ' ' << k.k.c << ' ' << k.k.d
       << ' ' << v.to_string() << "\n";
  return os.str();
}

HeckeFunction HeckeFunction::deserialize(const std::string& text, i64 prec) {
  std::istringstream is(text);
  std::string tag, word, norm, mode;
  int p = 0, level = 0, lambda = 0;
  size_t count = 0;
  auto expect = [&](const char* w) {
    if (!(is >> word) || word != w) throw SL2H_ERR("ParseError", std::string("expected '") + w + "'");
  };
  if (!(is >> tag) || tag != "sl2h-hecke") throw SL2H_ERR("ParseError", "missing sl2h-hecke header");
  expect("p");
  is >> p;
  expect("level");
  is >> level;
  expect("lambda");
  is >> lambda;
  expect("normalization");
  is >> norm;
  if (norm != normalization()) throw SL2H_ERR("NormalizationMismatch", "file uses " + norm);
  expect("scalar");
  is >> mode;
  expect("count");
  is >> count;
  if (!is) throw SL2H_ERR("ParseError", "bad header");
  auto T = std::make_shared<const Tree>(p, prec);
  Map m;
  for (size_t i = 0; i < count; ++i) {
    CosetKey k;
    std::string val;
    if (!(is >> k.v.a >> k.v.e >> k.v.num >> k.k.a >> k.k.b >> k.k.c >> k.k.d >> val))
      throw SL2H_ERR("ParseError", "truncated record list");
    m.emplace(k, Scalar::parse(val));
  }
  HeckeFunction f(T, level, std::move(m));
  if (f.support_bound() != lambda) throw SL2H_ERR("ParseError", "lambda does not match the records");
  return f;
}

HeckeFunction indicator_K(std::shared_ptr<const Tree> T, int n) {
  HeckeFunction::Map m;
  m.emplace(CosetKey{VertexKey{}, n == 0 ? ModMat{0, 0, 0, 0} : ModMat{1, 0, 0, 1}}, Scalar(1));
  return HeckeFunction(T, n, std::move(m), false);
}

HeckeFunction unit_K(std::shared_ptr<const Tree> T, int n) {
  mpq_class v = vol_K(T->p(), n);
  return indicator_K(T, n).scaled(Scalar(mpq_class(1 / v)));
}

HeckeFunction double_coset(std::shared_ptr<const Tree> T, const GroupElement& g, int n) {
  auto gens = level_generators(*T, n);
  std::set<CosetKey> seen{T->coset_key(g, n)};
  std::vector<CosetKey> frontier(seen.begin(), seen.end());
  while (!frontier.empty()) {
    std::vector<CosetKey> next;
    for (const auto& c : frontier) {
      GroupElement x = T->coset_rep(c);
      for (const auto& s : gens) {
        CosetKey y = T->coset_key(s * x, n);
        if (seen.insert(y).second) next.push_back(y);
      }
    }
    frontier = std::move(next);
  }
  HeckeFunction::Map m;
  for (const auto& c : seen) m.emplace(c, Scalar(1));
  return HeckeFunction(T, n, std::move(m), false);
}

HeckeFunction shell_indicator(std::shared_ptr<const Tree> T, int m) {
  HeckeFunction::Map mp;
  for (const auto& v : T->sphere(m)) mp.emplace(CosetKey{v, ModMat{0, 0, 0, 0}}, Scalar(1));
  return HeckeFunction(T, 0, std::move(mp), false);
}

HeckeFunction from_k0_function(std::shared_ptr<const Tree> T, int n,
                               const std::function<Scalar(const ModMat&)>& phi) {
  HeckeFunction::Map m;
  for (const auto& k : sl2_mod_elements(T->p(), n)) m.emplace(CosetKey{VertexKey{}, k}, phi(k));
  return HeckeFunction(T, n, std::move(m), false);
}

namespace {

struct RefinedPair {
  HeckeFunction a, b;
  int N;
};

RefinedPair common_level(const HeckeFunction& f1, const HeckeFunction& f2, int lambda_cap) {
  if (f1.p() != f2.p()) throw SL2H_ERR("PreconditionViolation", "different primes");
  if (f1.support_bound() + f2.support_bound() > lambda_cap)
    throw SL2H_ERR("SupportOverflow", "support bound " + std::to_string(f1.support_bound() + f2.support_bound()) +
                                          " exceeds the cap " + std::to_string(lambda_cap));
  int N = std::max(f1.level(), f2.level());
  return {f1.refine(N), f2.refine(N), N};
}

std::vector<std::pair<GroupElement, Scalar>> with_reps(const HeckeFunction& f) {
  std::vector<std::pair<GroupElement, Scalar>> out;
  out.reserve(f.size());
  for (const auto& [k, v] : f.values()) out.emplace_back(f.tree().coset_rep(k), v);
  return out;
}

}  // namespace

HeckeFunction convolve_serial(const HeckeFunction& f1, const HeckeFunction& f2, int lambda_cap) {
  if (f1.is_zero() || f2.is_zero()) return HeckeFunction(f1.tree_ptr(), std::max(f1.level(), f2.level()), {});
  auto [a, b, N] = common_level(f1, f2, lambda_cap);
  const Tree& T = a.tree();
  auto ra = with_reps(a), rb = with_reps(b);
  // (f1*f2) = vol(K_N) sum_{y,z} f1(y) f2(z) 1_{yz K_N}
  HeckeFunction::Map acc;
  for (const auto& [y, fy] : ra)
    for (const auto& [z, fz] : rb) {
      CosetKey k = T.coset_key(y * z, N);
      auto it = acc.find(k);
      if (it == acc.end())
        acc.emplace(k, fy * fz);
      else
        it->second += fy * fz;
    }
  mpq_class vol = vol_K(T.p(), N);
  for (auto& [k, v] : acc) v = v.mul(vol);
  return HeckeFunction(a.tree_ptr(), N, std::move(acc), false);
}

HeckeFunction convolve(const HeckeFunction& f1, const HeckeFunction& f2, int lambda_cap) {
  if (f1.is_zero() || f2.is_zero()) return HeckeFunction(f1.tree_ptr(), std::max(f1.level(), f2.level()), {});
  auto [a, b, N] = common_level(f1, f2, lambda_cap);
  const Tree& T = a.tree();
  auto ra = with_reps(a), rb = with_reps(b);
  // candidate output cosets
  std::vector<CosetKey> cand;
#pragma omp parallel
  {
    std::vector<CosetKey> local;
#pragma omp for schedule(dynamic) nowait
    for (size_t i = 0; i < ra.size(); ++i)
      for (const auto& zb : rb) local.push_back(T.coset_key(ra[i].first * zb.first, N));
#pragma omp critical
    cand.insert(cand.end(), local.begin(), local.end());
  }
  std::sort(cand.begin(), cand.end());
  cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
  // gather: (f1*f2)(x) = vol(K_N) sum_y f1(y) f2(y^{-1} x)
  std::vector<Scalar> vals(cand.size());
  mpq_class vol = vol_K(T.p(), N);
#pragma omp parallel for schedule(dynamic)
  for (size_t i = 0; i < cand.size(); ++i) {
    GroupElement x = T.coset_rep(cand[i]);
    Scalar s = 0;
    for (const auto& [y, fy] : ra) {
      GroupElement w = y.inverse() * x;
      if (cartan_exponent(w) > b.support_bound()) continue;
      Scalar fz = b.at_key(T.coset_key(w, N));
      if (!fz.is_zero()) s += fy * fz;
    }
    vals[i] = s.mul(vol);
  }
  HeckeFunction::Map out;
  for (size_t i = 0; i < cand.size(); ++i) out.emplace_hint(out.end(), cand[i], vals[i]);
  return HeckeFunction(a.tree_ptr(), N, std::move(out), false);
}

namespace {

HeckeFunction conjugate_impl(const HeckeFunction& f, const GroupElement& h, size_t cap, bool parallel) {
  const Tree& T = f.tree();
  int m = cartan_exponent(h);
  if (f.is_zero()) return f;
  if (m == 0 && h.integral() && f.level() == 0) {
    // K0 normalizes K0, so only the vertex moves
    HeckeFunction::Map out;
    for (const auto& [k, v] : f.values()) out.emplace(T.coset_key(h * T.coset_rep(k) * h.inverse(), 0), v);
    return HeckeFunction(f.tree_ptr(), 0, std::move(out), false);
  }
  int n2 = f.level() + 2 * m;
  int lam = f.support_bound() + 2 * m;
  size_t nv = 0;
  for (int r = 0; r <= lam; ++r) nv += r == 0 ? 1 : (size_t)(T.p() + 1) * ipow(T.p(), 2 * r - 1);
  if (nv * sl2_mod_order(T.p(), n2) > cap)
    throw SL2H_ERR("SupportOverflow", "conjugate would scan " + std::to_string(nv * sl2_mod_order(T.p(), n2)) +
                                          " cosets");
  auto cand = T.enumerate_cosets(lam, n2, cap);
  GroupElement hi = h.inverse();
  std::vector<Scalar> vals(cand.size());
#pragma omp parallel for schedule(dynamic, 256) if (parallel)
  for (size_t i = 0; i < cand.size(); ++i) vals[i] = f.at(hi * T.coset_rep(cand[i]) * h);
  HeckeFunction::Map out;
  for (size_t i = 0; i < cand.size(); ++i)
    if (!vals[i].is_zero()) out.emplace(cand[i], vals[i]);
  return HeckeFunction(f.tree_ptr(), n2, std::move(out), false);
}

}  // namespace

HeckeFunction conjugate(const HeckeFunction& f, const GroupElement& h, size_t cap) {
  return conjugate_impl(f, h, cap, true);
}
HeckeFunction conjugate_serial(const HeckeFunction& f, const GroupElement& h, size_t cap) {
  return conjugate_impl(f, h, cap, false);
}

Scalar pairing(const HeckeFunction& f, const HeckeFunction& h) {
  if (f.is_zero() || h.is_zero()) return 0;
  const HeckeFunction& fine = f.level() >= h.level() ? f : h;
  const HeckeFunction& coarse = f.level() >= h.level() ? h : f;
  const Tree& T = fine.tree();
  Scalar s = 0;
  for (const auto& [k, v] : fine.values()) {
    Scalar w = fine.level() == coarse.level() ? coarse.at_key(k) : coarse.at(T.coset_rep(k));
    if (w.is_zero()) continue;
    s += (&fine == &f) ? v * w.conj() : w * v.conj();
  }
  return s.mul(vol_K(T.p(), fine.level()));
}

}  // namespace sl2h
