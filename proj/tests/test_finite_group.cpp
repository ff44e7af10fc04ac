#include <random>
#include <set>

#include "doctest.h"
#include "sl2h/errors.hpp"
#include "sl2h/finite_group.hpp"
#include "sl2h/linalg.hpp"

using namespace sl2h;

TEST_CASE("mod-P linear algebra") {
  using namespace modp;
  u64 P = 1000003;
  std::mt19937_64 rng(7);
  for (int t = 0; t < 20; ++t) {
    size_t n = 1 + rng() % 7;
    Matrix A(n, n);
    for (auto& x : A.a) x = rng() % 5;
    auto cp = charpoly(A, P);
    REQUIRE(cp.size() == n + 1);
    CHECK(cp[n] == 1);
    for (int s = 0; s < 3; ++s) {
      u64 x = rng() % P;
      Matrix B(n, n);
      for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) B(i, j) = sub(i == j ? x : 0, A(i, j), P);
      u64 v = 0;
      for (size_t k = cp.size(); k-- > 0;) v = add(mul(v, x, P), cp[k], P);
      CHECK(v == det(B, P));
    }
    auto ns = nullspace(A, P);
    CHECK(ns.size() + rank(A, P) == n);
    for (auto& v : ns)
      for (size_t i = 0; i < n; ++i) {
        u64 s = 0;
        for (size_t j = 0; j < n; ++j) s = add(s, mul(A(i, j), v[j], P), P);
        CHECK(s == 0);
      }
    SparseEliminator E(P);
    for (size_t i = 0; i < n; ++i) {
      std::map<size_t, u64> row;
      for (size_t j = 0; j < n; ++j)
        if (A(i, j)) row[j] = A(i, j);
      E.add_row(row);
    }
    CHECK(E.rank() == rank(A, P));
  }
}

TEST_CASE("SL(2,F_3) order and classes by brute force") {
  const auto& G = sl2_group(3);
  CHECK(G.order == 24);
  // independent class count: closure of each element under conjugation
  std::set<std::set<ModMat>> cls;
  for (const auto& x : G.mats) {
    std::set<ModMat> c;
    for (const auto& g : G.mats) c.insert(mm_mul(mm_mul(g, x, 3), mm_inv(g, 3), 3));
    cls.insert(c);
  }
  CHECK(cls.size() == 7);
  CHECK(G.num_classes() == 7);
  CHECK(sl2_group(5).order == 120);
}

TEST_CASE("character tables are complete and orthogonal") {
  for (int q : {3, 5, 7}) {
    const auto& G = sl2_group(q);
    const auto& T = character_table_sl2(q);
    CHECK(T.size() == G.num_classes());
    CHECK(T.size() == q + 4);
    long sq = 0;
    for (int d : T.dim) sq += (long)d * d;
    CHECK(sq == G.order);
    // column orthogonality
    for (int a = 0; a < G.num_classes(); ++a)
      for (int b = 0; b < G.num_classes(); ++b) {
        Scalar s = 0;
        for (int i = 0; i < T.size(); ++i) s += T.chi[i][a] * T.chi[i][b].conj();
        Scalar expect = a == b ? Scalar(mpq_class(G.order, (long)G.classes[a].size())) : Scalar(0);
        CHECK(s == expect);
      }
    // permutation character on the projective line is 1 + Steinberg
    std::vector<Scalar> perm;
    for (const auto& cl : G.classes) {
      const ModMat& g = G.mats[cl[0]];
      long fix = 0;
      for (int x = 0; x <= q; ++x) {
        // point (x:1) for x<q, (1:0) for x=q
        long u = x < q ? x : 1, v = x < q ? 1 : 0;
        long gu = ((long)g.a * u + (long)g.b * v) % q, gv = ((long)g.c * u + (long)g.d * v) % q;
        if ((gu * v - gv * u) % q == 0) ++fix;
      }
      perm.push_back(fix);
    }
    int nonzero = 0;
    for (int i = 0; i < T.size(); ++i) {
      Scalar m = inner_product(G, perm, T.chi[i]);
      CHECK((m == Scalar(0) || m == Scalar(1)));
      if (m == Scalar(1)) {
        ++nonzero;
        CHECK((T.dim[i] == 1 || T.dim[i] == q));
      }
    }
    CHECK(nonzero == 2);
  }
}

TEST_CASE("cuspidality") {
  int q = 3;
  const auto& G = sl2_group(q);
  const auto& T = character_table_sl2(q);
  auto u_invariants = [&](const std::vector<Scalar>& chi) {
    Scalar s = 0;
    for (int b = 0; b < q; ++b) s += chi[G.class_of[G.index.at(ModMat{1, (u64)b, 0, 1})]];
    return s.div(q);
  };
  bool found = false;
  for (int i = 0; i < T.size(); ++i) {
    Scalar d = u_invariants(T.chi[i]);
    CHECK(d.is_rational());
    CHECK(is_cuspidal(q, T.chi[i]) == d.is_zero());
    if (T.dim[i] == q - 1 && is_cuspidal(q, T.chi[i])) found = true;
    bool trivial = true;
    for (auto& v : T.chi[i]) trivial = trivial && v == Scalar(1);
    if (trivial) CHECK_FALSE(is_cuspidal(q, T.chi[i]));
    if (T.dim[i] == q) CHECK_FALSE(is_cuspidal(q, T.chi[i]));  // Steinberg
  }
  CHECK(found);
  for (int q2 : {5, 7}) {
    int n_full = 0;
    for (int i : cuspidal_indices(q2)) n_full += character_table_sl2(q2).dim[i] == q2 - 1;
    CHECK(n_full >= 1);
  }
  CHECK_THROWS_AS(character_table_sl2(17), Error);
}

TEST_CASE("Dixon on small groups") {
  auto S3 = symmetric_group(3);
  auto T = character_table(S3);
  CHECK(T.dim == std::vector<int>{1, 1, 2});
  auto C5 = cyclic_group(5);
  auto T5 = character_table(C5);
  CHECK(T5.size() == 5);
  std::set<std::string> vals;
  for (auto& chi : T5.chi) vals.insert(chi[C5.class_of[1]].to_string());
  CHECK(vals.size() == 5);
  auto S4 = symmetric_group(4);
  CHECK(character_table(S4).dim == std::vector<int>{1, 1, 2, 3, 3});
}

TEST_CASE("table text round trip") {
  const auto& G = sl2_group(5);
  const auto& T = character_table_sl2(5);
  std::string s = table_to_text(G, T);
  auto U = table_from_text(G, s);
  CHECK(U.chi == T.chi);
  CHECK(U.dim == T.dim);
  CHECK(table_to_text(G, U) == s);
}

namespace {
GAMatrix scalar_matrix(const FiniteGroup& G, const std::vector<std::vector<GroupAlgebraElement>>& m) { return m; }
GroupAlgebraElement zero(const FiniteGroup& G) { return GroupAlgebraElement(G.order, Scalar(0)); }
}  // namespace

TEST_CASE("cocenter classes") {
  auto G = symmetric_group(3);
  auto d = cocenter_class(G, ga_delta(G, 0));
  CHECK(d[G.class_of[0]] == Scalar(1));
  for (int c = 0; c < G.num_classes(); ++c)
    if (c != G.class_of[0]) CHECK(d[c] == Scalar(0));
  std::mt19937_64 rng(3);
  GroupAlgebraElement a(G.order);
  for (auto& x : a) x = Scalar((long)(rng() % 9) - 4);
  for (int g = 0; g < G.order; ++g) {
    auto conj = ga_mul(G, ga_mul(G, ga_delta(G, g), a), ga_delta(G, G.inv[g]));
    auto ca = cocenter_class(G, a), cc = cocenter_class(G, conj);
    CHECK(ca == cc);
  }
}

TEST_CASE("chern character of idempotents") {
  auto Z2 = cyclic_group(2);
  GroupAlgebraElement e(2, Scalar::rational(1, 2));
  auto ch = chern_of_idempotent(Z2, {{e}});
  CHECK(ch == std::vector<Scalar>{Scalar::rational(1, 2), Scalar::rational(1, 2)});
  CHECK(chern_of_idempotent(Z2, {{ga_delta(Z2, 0)}}) == std::vector<Scalar>{Scalar(1), Scalar(0)});
  CHECK_THROWS_AS(chern_of_idempotent(Z2, {{ga_delta(Z2, 1)}}), Error);

  const auto& G = sl2_group(3);
  const auto& T = character_table_sl2(3);
  // e_chi = chi(1)/|G| sum chi(g^{-1}) g
  auto e_chi = [&](int i) {
    GroupAlgebraElement x(G.order);
    for (int g = 0; g < G.order; ++g)
      x[g] = T.chi[i][G.class_of[G.inv[g]]].mul(mpq_class(T.dim[i], G.order));
    return x;
  };
  std::vector<std::vector<Scalar>> chs;
  for (int i = 0; i < T.size(); ++i) {
    auto c = chern_of_idempotent(G, {{e_chi(i)}});
    for (int j = 0; j < G.num_classes(); ++j)
      CHECK(c[j] == T.chi[i][G.class_of[G.inv[G.classes[j][0]]]].mul(mpq_class(T.dim[i], G.order)));
    chs.push_back(c);
  }
  // subgroup idempotent: upper unipotents
  std::vector<int> H;
  for (int b = 0; b < 3; ++b) H.push_back(G.index.at(ModMat{1, (u64)b, 0, 1}));
  GroupAlgebraElement eH = zero(G);
  for (int h : H) eH[h] = Scalar::rational(1, 3);
  auto chH = chern_of_idempotent(G, {{eH}});
  std::vector<Scalar> rhs(G.num_classes(), Scalar(0));
  for (int i = 0; i < T.size(); ++i) {
    Scalar m = 0;
    for (int h : H) m += T.chi[i][G.class_of[h]];
    m = m.div(3);
    for (int j = 0; j < G.num_classes(); ++j) rhs[j] += chs[i][j] * m.div(T.dim[i]);
  }
  CHECK(chH == rhs);

  // invariance under conjugation by invertible matrices
  GAMatrix E = scalar_matrix(G, {{e_chi(6), zero(G)}, {zero(G), eH}});
  auto base = chern_of_idempotent(G, E);
  std::mt19937_64 rng(5);
  GroupAlgebraElement a = zero(G);
  for (int t = 0; t < 4; ++t) a[rng() % G.order] = Scalar((long)(rng() % 5) - 2);
  GroupAlgebraElement one = ga_delta(G, 0), mone = one;
  for (auto& x : mone) x = -x;
  GroupAlgebraElement ma = a;
  for (auto& x : ma) x = -x;
  GAMatrix u = {{one, a}, {zero(G), one}}, ui = {{one, ma}, {zero(G), one}};
  CHECK(chern_of_idempotent(G, ga_matmul(G, ga_matmul(G, u, E), ui)) == base);
  int g = 5, h = 11;
  GAMatrix dg = {{ga_delta(G, g), zero(G)}, {zero(G), ga_delta(G, h)}};
  GAMatrix dgi = {{ga_delta(G, G.inv[g]), zero(G)}, {zero(G), ga_delta(G, G.inv[h])}};
  CHECK(chern_of_idempotent(G, ga_matmul(G, ga_matmul(G, dg, E), dgi)) == base);
  GAMatrix w = {{zero(G), one}, {mone, zero(G)}}, wi = {{zero(G), mone}, {one, zero(G)}};
  CHECK(chern_of_idempotent(G, ga_matmul(G, ga_matmul(G, ga_matmul(G, u, w), E),
                                         ga_matmul(G, wi, ui))) == base);
  // additivity over block sums
  auto c6 = chern_of_idempotent(G, {{e_chi(6)}});
  for (int j = 0; j < G.num_classes(); ++j) CHECK(base[j] == c6[j] + chH[j]);
}
