#include "sl2h/finite_group.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <random>
#include <sstream>

#include "sl2h/errors.hpp"
#include "sl2h/linalg.hpp"

namespace sl2h {

int FiniteGroup::elem_order(int x) const {
  int o = 1, y = x;
  while (y != 0) {
    y = prod(y, x);
    ++o;
  }
  return o;
}

int FiniteGroup::exponent() const {
  long e = 1;
  for (const auto& c : classes) e = std::lcm(e, (long)elem_order(c[0]));
  return (int)e;
}

void FiniteGroup::finish() {
  inv.assign(order, -1);
  for (int x = 0; x < order; ++x)
    for (int y = 0; y < order; ++y)
      if (prod(x, y) == 0) {
        inv[x] = y;
        break;
      }
  class_of.assign(order, -1);
  classes.clear();
  for (int x = 0; x < order; ++x) {
    if (class_of[x] >= 0) continue;
    std::vector<int> cl;
    int id = (int)classes.size();
    for (int g = 0; g < order; ++g) {
      int y = prod(prod(g, x), inv[g]);
      if (class_of[y] < 0) {
        class_of[y] = id;
        cl.push_back(y);
      }
    }
    std::sort(cl.begin(), cl.end());
    classes.push_back(std::move(cl));
  }
}

FiniteGroup cyclic_group(int n) {
  FiniteGroup G;
  G.order = n;
  G.mul.resize((size_t)n * n);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) G.mul[(size_t)x * n + y] = (x + y) % n;
  for (int x = 0; x < n; ++x) G.names.push_back(std::to_string(x));
  G.finish();
  return G;
}

FiniteGroup symmetric_group(int n) {
  std::vector<std::vector<int>> perms;
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  do perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  std::map<std::vector<int>, int> idx;
  for (size_t i = 0; i < perms.size(); ++i) idx[perms[i]] = (int)i;
  FiniteGroup G;
  G.order = (int)perms.size();
  G.mul.resize((size_t)G.order * G.order);
  for (int x = 0; x < G.order; ++x) {
    std::string nm;
    for (int v : perms[x]) nm += std::to_string(v);
    G.names.push_back(nm);
    for (int y = 0; y < G.order; ++y) {
      std::vector<int> r(n);
      for (int i = 0; i < n; ++i) r[i] = perms[x][perms[y][i]];
      G.mul[(size_t)x * G.order + y] = idx[r];
    }
  }
  G.finish();
  return G;
}

FiniteGroup sl2_mod_group(int p, int n) {
  if (n < 1) throw SL2H_ERR("PreconditionViolation", "level must be >= 1");
  u64 M = ipow(p, n);
  const auto& all = sl2_mod_elements(p, n);
  FiniteGroup G;
  ModMat id = mm_reduce(ModMat{1, 0, 0, 1}, M);
  G.mats.push_back(id);
  for (const auto& m : all)
    if (!(m == id)) G.mats.push_back(m);
  G.order = (int)G.mats.size();
  for (int i = 0; i < G.order; ++i) G.index[G.mats[i]] = i;
  G.mul.resize((size_t)G.order * G.order);
  for (int x = 0; x < G.order; ++x)
    for (int y = 0; y < G.order; ++y) G.mul[(size_t)x * G.order + y] = G.index.at(mm_mul(G.mats[x], G.mats[y], M));
  for (const auto& m : G.mats)
    G.names.push_back(std::to_string(m.a) + "," + std::to_string(m.b) + "," + std::to_string(m.c) + "," +
                      std::to_string(m.d));
  G.finish();
  return G;
}

namespace {

// values of sum_k m_k zeta_o^k with small nonnegative integer multiplicities
Scalar from_multiplicities(int o, const std::vector<long>& m) {
  Scalar s = 0;
  for (int k = 0; k < o; ++k)
    if (m[k]) s += Scalar::zeta(o, k).mul(m[k]);
  return s;
}

}  // namespace

CharacterTable character_table(const FiniteGroup& G) {
  using namespace modp;
  int c = G.num_classes();
  int e = G.exponent();
  u64 P = prime_1_mod((u64)e, std::max<u64>(2 * (u64)G.order, 1000));
  std::vector<int> csize(c), cstar(c);
  for (int i = 0; i < c; ++i) {
    csize[i] = (int)G.classes[i].size();
    cstar[i] = G.class_of[G.inv[G.classes[i][0]]];
  }
  // class constants a[i][j][k] = #{x in C_i : x^{-1} z_k in C_j}
  std::vector<Matrix> Ms(c, Matrix(c, c));
  for (int i = 0; i < c; ++i)
    for (int k = 0; k < c; ++k) {
      int z = G.classes[k][0];
      for (int x : G.classes[i]) {
        int j = G.class_of[G.prod(G.inv[x], z)];
        Ms[i](j, k) += 1;
      }
    }
  std::mt19937_64 rng(12345);
  std::vector<std::vector<u64>> omegas;
  for (int attempt = 0; attempt < 50 && (int)omegas.size() != c; ++attempt) {
    omegas.clear();
    Matrix M(c, c);
    for (int i = 0; i < c; ++i) {
      u64 r = rng() % P;
      for (size_t t = 0; t < M.a.size(); ++t) M.a[t] = add(M.a[t], mul(r, Ms[i].a[t] % P, P), P);
    }
    auto cp = charpoly(M, P);
    std::vector<u64> roots;
    for (u64 x = 0; x < P; ++x) {
      u64 v = 0;
      for (size_t t = cp.size(); t-- > 0;) v = add(mul(v, x, P), cp[t], P);
      if (v == 0) roots.push_back(x);
    }
    if ((int)roots.size() != c) continue;
    for (u64 lam : roots) {
      Matrix A = M;
      for (int j = 0; j < c; ++j) A(j, j) = sub(A(j, j), lam, P);
      auto ns = nullspace(A, P);
      if (ns.size() != 1) break;
      auto w = ns[0];
      u64 iv = inv(w[G.class_of[0]], P);
      for (auto& x : w) x = mul(x, iv, P);
      omegas.push_back(w);
    }
  }
  if ((int)omegas.size() != c) throw SL2H_ERR("OracleMismatch", "Dixon eigenvector split failed");

  u64 z = pow(primitive_root(P), (P - 1) / e, P);
  CharacterTable T;
  for (const auto& w : omegas) {
    u64 t = 0;
    for (int j = 0; j < c; ++j) t = add(t, mul(mul(w[j], w[cstar[j]], P), inv(csize[j], P), P), P);
    u64 d2 = mul(G.order % P, inv(t, P), P);
    int d = -1;
    for (int x = 1; (long)x * x <= G.order; ++x)
      if ((u64)x * x % P == d2) d = x;
    if (d < 0) throw SL2H_ERR("OracleMismatch", "no integer degree");
    std::vector<u64> chimod(c);
    for (int j = 0; j < c; ++j) chimod[j] = mul(mul(w[j], d, P), inv(csize[j], P), P);
    std::vector<Scalar> vals(c);
    for (int j = 0; j < c; ++j) {
      int g = G.classes[j][0];
      int o = G.elem_order(g);
      u64 om = pow(z, e / o, P);
      std::vector<long> m(o);
      std::vector<int> pw(o);
      int y = 0;
      for (int s = 0; s < o; ++s) {
        pw[s] = G.class_of[y];
        y = G.prod(y, g);
      }
      for (int k = 0; k < o; ++k) {
        u64 acc = 0;
        for (int s = 0; s < o; ++s)
          acc = add(acc, mul(chimod[pw[s]], pow(om, (u64)((o - (long)s * k % o) % o), P), P), P);
        acc = mul(acc, inv(o, P), P);
        if (acc > (u64)d) throw SL2H_ERR("OracleMismatch", "eigenvalue multiplicity out of range");
        m[k] = (long)acc;
      }
      vals[j] = from_multiplicities(o, m);
    }
    T.chi.push_back(std::move(vals));
    T.dim.push_back(d);
  }
  // canonical order: by degree, then by printed values
  std::vector<int> perm(c);
  std::iota(perm.begin(), perm.end(), 0);
  auto key = [&](int i) {
    std::string s;
    for (const auto& v : T.chi[i]) s += v.to_string() + ";";
    return std::make_pair(T.dim[i], s);
  };
  std::sort(perm.begin(), perm.end(), [&](int a, int b) { return key(a) < key(b); });
  CharacterTable S;
  for (int i : perm) {
    S.chi.push_back(T.chi[i]);
    S.dim.push_back(T.dim[i]);
  }
  // validation
  long sq = 0;
  for (int d : S.dim) sq += (long)d * d;
  if (sq != G.order) throw SL2H_ERR("OracleMismatch", "sum of squared degrees differs from |G|");
  for (int a = 0; a < c; ++a)
    for (int b = a; b < c; ++b)
      if (inner_product(G, S.chi[a], S.chi[b]) != Scalar(a == b ? 1 : 0))
        throw SL2H_ERR("OracleMismatch", "orthogonality failed");
  return S;
}

const FiniteGroup& sl2_group(int q) {
  static std::mutex mu;
  static std::map<int, FiniteGroup> cache;
  std::lock_guard<std::mutex> lk(mu);
  auto it = cache.find(q);
  if (it != cache.end()) return it->second;
  if (q > 13) throw SL2H_ERR("ScaleExceeded", "q > 13 is beyond desk scale");
  return cache[q] = sl2_mod_group(q, 1);
}

const CharacterTable& character_table_sl2(int q) {
  static std::mutex mu;
  static std::map<int, CharacterTable> cache;
  if (q > 13) throw SL2H_ERR("ScaleExceeded", "q > 13 is beyond desk scale");
  if (q < 3 || q % 2 == 0 || !modp::is_prime(q)) throw SL2H_ERR("PreconditionViolation", "q must be an odd prime");
  const FiniteGroup& G = sl2_group(q);
  std::lock_guard<std::mutex> lk(mu);
  auto it = cache.find(q);
  if (it != cache.end()) return it->second;
  return cache[q] = character_table(G);
}

Scalar inner_product(const FiniteGroup& G, const std::vector<Scalar>& a, const std::vector<Scalar>& b) {
  Scalar s = 0;
  for (int j = 0; j < G.num_classes(); ++j) s += (a[j] * b[j].conj()).mul(mpq_class((long)G.classes[j].size()));
  return s.div(mpq_class(G.order));
}

bool is_cuspidal(int q, const std::vector<Scalar>& chi) {
  const FiniteGroup& G = sl2_group(q);
  Scalar s = 0;
  for (int b = 0; b < q; ++b) s += chi[G.class_of[G.index.at(ModMat{1, (u64)b, 0, 1})]];
  return s.is_zero();
}

std::vector<int> cuspidal_indices(int q) {
  const auto& T = character_table_sl2(q);
  std::vector<int> out;
  for (int i = 0; i < T.size(); ++i)
    if (is_cuspidal(q, T.chi[i])) out.push_back(i);
  return out;
}

std::string table_to_text(const FiniteGroup& G, const CharacterTable& T) {
  std::ostringstream os;
  os << "classes " << G.num_classes() << " characters " << T.size() << "\n";
  for (int j = 0; j < G.num_classes(); ++j) {
    os << G.names[G.classes[j][0]] << ' ' << G.classes[j].size();
    for (int i = 0; i < T.size(); ++i) os << ' ' << T.chi[i][j].to_string();
    os << "\n";
  }
  return os.str();
}

CharacterTable table_from_text(const FiniteGroup& G, const std::string& text) {
  std::istringstream is(text);
  std::string w;
  int nc = 0, nk = 0;
  is >> w >> nc >> w >> nk;
  if (!is || nc != G.num_classes()) throw SL2H_ERR("ParseError", "class count mismatch");
  std::map<std::string, int> byname;
  for (int j = 0; j < G.num_classes(); ++j) byname[G.names[G.classes[j][0]]] = j;
  CharacterTable T;
  T.chi.assign(nk, std::vector<Scalar>(nc));
  for (int r = 0; r < nc; ++r) {
    std::string nm;
    size_t sz;
    is >> nm >> sz;
    auto it = byname.find(nm);
    if (!is || it == byname.end() || G.classes[it->second].size() != sz)
      throw SL2H_ERR("ParseError", "unknown class " + nm);
    for (int i = 0; i < nk; ++i) {
      is >> w;
      T.chi[i][it->second] = Scalar::parse(w);
    }
  }
  for (int i = 0; i < nk; ++i) T.dim.push_back((int)T.chi[i][G.class_of[0]].as_rational().get_num().get_si());
  return T;
}

GroupAlgebraElement ga_delta(const FiniteGroup& G, int x) {
  GroupAlgebraElement a(G.order, Scalar(0));
  a[x] = 1;
  return a;
}

GroupAlgebraElement ga_mul(const FiniteGroup& G, const GroupAlgebraElement& a, const GroupAlgebraElement& b) {
  GroupAlgebraElement r(G.order, Scalar(0));
  for (int x = 0; x < G.order; ++x) {
    if (a[x].is_zero()) continue;
    for (int y = 0; y < G.order; ++y)
      if (!b[y].is_zero()) r[G.prod(x, y)] += a[x] * b[y];
  }
  return r;
}

std::vector<Scalar> cocenter_class(const FiniteGroup& G, const GroupAlgebraElement& a) {
  std::vector<Scalar> out;
  for (const auto& cl : G.classes) {
    Scalar s = 0;
    for (int x : cl) s += a[x];
    out.push_back(s.div(mpq_class((long)cl.size())));
  }
  return out;
}

GAMatrix ga_matmul(const FiniteGroup& G, const GAMatrix& a, const GAMatrix& b) {
  size_t n = a.size();
  GAMatrix r(n, std::vector<GroupAlgebraElement>(n, GroupAlgebraElement(G.order, Scalar(0))));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j)
      for (size_t k = 0; k < n; ++k) {
        auto t = ga_mul(G, a[i][k], b[k][j]);
        for (int x = 0; x < G.order; ++x) r[i][j][x] += t[x];
      }
  return r;
}

std::vector<Scalar> chern_of_idempotent(const FiniteGroup& G, const GAMatrix& e) {
  auto e2 = ga_matmul(G, e, e);
  for (size_t i = 0; i < e.size(); ++i)
    for (size_t j = 0; j < e.size(); ++j)
      for (int x = 0; x < G.order; ++x)
        if (e2[i][j][x] != e[i][j][x]) throw SL2H_ERR("NotIdempotent", "e*e != e");
  GroupAlgebraElement tr(G.order, Scalar(0));
  for (size_t i = 0; i < e.size(); ++i)
    for (int x = 0; x < G.order; ++x) tr[x] += e[i][i][x];
  return cocenter_class(G, tr);
}

}  // namespace sl2h
