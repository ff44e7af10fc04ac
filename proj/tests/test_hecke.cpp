#include "doctest.h"
#include "sl2h/errors.hpp"
#include "sl2h/hecke.hpp"
#include "test_util.hpp"

using namespace sl2h;
using namespace testutil;

namespace {

std::shared_ptr<const Tree> tree(int p) { return std::make_shared<const Tree>(p, 16); }

// random bi-invariant function: random combination of double cosets
HeckeFunction random_hecke(std::shared_ptr<const Tree> T, std::mt19937_64& rng, int n, int maxm, int terms) {
  HeckeFunction f(T, n, {});
  for (int i = 0; i < terms; ++i) {
    GroupElement g = random_in_shell(*T, rng, (int)(rng() % (maxm + 1)));
    long c = (long)(rng() % 7) - 3;
    if (c == 0) c = 1;
    Scalar s = (rng() % 2) ? Scalar(c) : Scalar::zeta(12, (long)(rng() % 12)).mul(c);
    f = f + double_coset(T, g, n).scaled(s);
  }
  return f;
}

}  // namespace

TEST_CASE("unit and shell products at level 0") {
  auto T = tree(3);
  auto e = unit_K(T, 0);
  auto T1 = shell_indicator(T, 1);
  CHECK(convolve(e, e) == e);
  CHECK(convolve(e, T1) == T1);
  CHECK(convolve(T1, e) == T1);
  CHECK(T1 == double_coset(T, T->mat(3, 0, 0, mpq_class(1, 3)), 0));
}

TEST_CASE("T1*T1 agrees with brute-force coset summation") {
  auto T = tree(3);
  auto T1 = shell_indicator(T, 1);
  auto prod = convolve(T1, T1);
  // brute force: (T1*T1)(x) = sum over y in G/K0 of T1(y) T1(y^{-1} x), vol(K0) = 1
  auto brute = [&](const GroupElement& x) {
    long s = 0;
    for (const auto& v : T->sphere(1))
      if (cartan_exponent(T->vertex_rep(v).inverse() * x) == 1) ++s;
    return s;
  };
  long a = brute(T->mat(9, 0, 0, mpq_class(1, 9)));
  long c = brute(T->mat(3, 0, 0, mpq_class(1, 3)));
  long b = brute(T->mat(1, 0, 0, 1));
  auto rhs = shell_indicator(T, 2).scaled(a) + T1.scaled(c) + unit_K(T, 0).scaled(b);
  CHECK(prod == rhs);
  std::mt19937_64 rng(41);
  for (int t = 0; t < 20; ++t) {
    GroupElement x = random_in_shell(*T, rng, (int)(rng() % 4));
    CHECK(prod.at(x) == Scalar(brute(x)));
  }
}

TEST_CASE("serial and parallel convolution agree; associativity") {
  std::mt19937_64 rng(43);
  auto T = tree(3);
  for (int t = 0; t < 3; ++t) {
    auto f1 = random_hecke(T, rng, 0, 1, 3), f2 = random_hecke(T, rng, 0, 1, 3), f3 = random_hecke(T, rng, 0, 1, 3);
    auto a = convolve(convolve(f1, f2), f3), b = convolve(f1, convolve(f2, f3));
    CHECK(a == b);
    CHECK(convolve(f1, f2) == convolve_serial(f1, f2));
    CHECK(convolve(f1, f2).integral() == f1.integral() * f2.integral());
  }
  for (int t = 0; t < 2; ++t) {
    auto f1 = random_hecke(T, rng, 1, 1, 2), f2 = random_hecke(T, rng, 1, 0, 2), f3 = random_hecke(T, rng, 1, 0, 2);
    REQUIRE(f1.is_left_invariant());
    CHECK(convolve(convolve(f1, f2), f3) == convolve_serial(f1, convolve_serial(f2, f3)));
    auto e1 = unit_K(T, 1);
    CHECK(convolve(e1, f1) == f1);
    CHECK(convolve(f1, e1) == f1);
  }
}

TEST_CASE("mixed levels refine to the common level") {
  auto T = tree(3);
  auto e0 = unit_K(T, 0), e1 = unit_K(T, 1);
  CHECK(convolve(e0, e1) == e0);
  CHECK(e0.refine(2) == e0);
  CHECK(e0.refine(1).size() == 24);
}

TEST_CASE("support overflow") {
  auto T = tree(3);
  auto T1 = shell_indicator(T, 1);
  CHECK_THROWS_AS(convolve(T1, T1, 1), Error);
  try {
    convolve(T1, T1, 1);
  } catch (const Error& e) {
    CHECK(e.kind() == "SupportOverflow");
    CHECK(e.is_resource());
  }
}

TEST_CASE("conjugation") {
  auto T = tree(3);
  std::mt19937_64 rng(47);
  auto k0 = indicator_K(T, 0);
  CHECK(conjugate(k0, T->mat(1, 0, 0, 1)) == k0);
  CHECK(conjugate(k0, random_k0(*T, rng)) == k0);
  auto f = random_hecke(T, rng, 0, 1, 3);
  CHECK(conjugate(f, T->mat(1, 0, 0, 1)) == f);
  GroupElement h = T->mat(1, mpq_class(1, 3), 0, 1);
  auto fh = conjugate(f, h);
  CHECK(fh == conjugate_serial(f, h));
  CHECK(fh.level() == 2);
  // supp(^h f) = h supp(f) h^{-1}
  for (const auto& [k, v] : fh.values()) CHECK(f.at(h.inverse() * T->coset_rep(k) * h) == v);
  for (const auto& [k, v] : f.values()) CHECK(fh.at(h * T->coset_rep(k) * h.inverse()) == v);
  CHECK(fh.integral() == f.integral());
  // unitarity
  auto g = random_hecke(T, rng, 0, 1, 3);
  CHECK(pairing(conjugate(f, h), conjugate(g, h)) == pairing(f, g));
}

TEST_CASE("pairing") {
  auto T = tree(3);
  auto k0 = indicator_K(T, 0), k1 = indicator_K(T, 1);
  CHECK(pairing(k0, k0) == Scalar(1));
  CHECK(pairing(k1, k0) == Scalar::rational(1, 24));
  CHECK(pairing(k0, k1) == Scalar::rational(1, 24));
  CHECK(pairing(k0, shell_indicator(T, 1)) == Scalar(0));
  std::mt19937_64 rng(53);
  for (int t = 0; t < 5; ++t) {
    auto f = random_hecke(T, rng, 1, 1, 3), g = random_hecke(T, rng, 0, 1, 3);
    CHECK(pairing(f, g) == pairing(g, f).conj());
  }
}

TEST_CASE("invariance check rejects a one-sided function") {
  auto T = tree(3);
  HeckeFunction::Map m;
  m.emplace(CosetKey{VertexKey{1, 0, 0}, ModMat{0, 0, 0, 0}}, Scalar(1));
  CHECK_THROWS_AS(HeckeFunction(T, 0, m), Error);
}

TEST_CASE("serialization round trip is bit exact") {
  auto T = tree(5);
  std::mt19937_64 rng(59);
  auto f = random_hecke(T, rng, 1, 1, 3);
  std::string s = f.serialize();
  auto g = HeckeFunction::deserialize(s, 16);
  CHECK(g == f);
  CHECK(g.serialize() == s);
  CHECK_THROWS_AS(HeckeFunction::deserialize("garbage", 16), Error);
}
