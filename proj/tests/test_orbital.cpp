#include "doctest.h"
#include "sl2h/depth_zero.hpp"
#include "sl2h/errors.hpp"
#include "sl2h/orbital.hpp"
#include "test_util.hpp"

using namespace sl2h;
using namespace testutil;

namespace {
std::shared_ptr<const Tree> tree(int p, int prec = 16) { return std::make_shared<const Tree>(p, prec); }

// random level-1 function on K0, not a class function in general
HeckeFunction random_k0_level1(std::shared_ptr<const Tree> T, std::mt19937_64& rng) {
  return from_k0_function(T, 1, [&](const ModMat&) { return Scalar((long)(rng() % 5) - 2); });
}
}  // namespace

TEST_CASE("truncated trace examples") {
  auto T3 = tree(3), T5 = tree(5);
  auto k3 = indicator_K(T3, 0), k5 = indicator_K(T5, 0);
  CHECK(truncated_weighted_trace(k3, T3->mat(0, 1, -1, 0), 0) == Scalar(1));
  for (int lam = 0; lam <= 3; ++lam)
    CHECK(truncated_weighted_trace(k3, T3->mat(-1, 0, 0, -1), lam) == Scalar((long)T3->ball(lam).size()));
  GroupElement g = T5->mat(2, 0, 0, mpq_class(1, 2));
  for (int lam = 0; lam <= 4; ++lam) {
    long fixed = (long)T5->fixed_vertices(g, 2 * lam).size();
    CHECK(truncated_weighted_trace(k5, g, lam) == Scalar(fixed));
  }
  CHECK(wo_integral(k5, g) == Scalar(1));
  CHECK(wo_integral(HeckeFunction(T5, 0, {}), g) == Scalar(0));
  CHECK_THROWS_AS(truncated_weighted_trace(k5, T5->mat(5, 0, 0, mpq_class(1, 5)), 1), Error);
}

TEST_CASE("fast trace agrees with brute-force coset summation") {
  auto T = tree(3);
  std::mt19937_64 rng(71);
  DepthZeroSupercuspidal rho(3, cuspidal_indices(3).back());
  std::vector<HeckeFunction> fs = {indicator_K(T, 0), matrix_coefficient(T, rho), m_rho(T, rho),
                                   shell_indicator(T, 1), random_k0_level1(T, rng)};
  std::vector<GroupElement> gs = {T->mat(0, 1, -1, 0), T->mat(1, 1, 3, 4), T->mat(1, 3, -3, -8),
                                  T->mat(-1, 0, 0, -1)};
  for (const auto& f : fs)
    for (const auto& g : gs)
      for (int lam = 0; lam <= 1; ++lam) {
        Scalar a = truncated_weighted_trace(f, g, lam);
        CHECK(a == truncated_weighted_trace_bruteforce(f, g, lam));
        CHECK(a == truncated_weighted_trace(f, g, lam, {}, true));
      }
}

TEST_CASE("conjugated traces agree with brute force") {
  auto T = tree(3);
  std::mt19937_64 rng(73);
  GroupElement h = T->mat(1, mpq_class(1, 3), 0, 1);
  GroupElement g = T->mat(1, 1, 3, 4);
  auto k0 = indicator_K(T, 0);
  for (int lam = 0; lam <= 2; ++lam)
    CHECK(truncated_weighted_trace(k0, g, lam, h) == truncated_weighted_trace_bruteforce(k0, g, lam, h));
  auto f = random_k0_level1(T, rng);
  CHECK(truncated_weighted_trace(f, g, 1, h) == truncated_weighted_trace_bruteforce(f, g, 1, h));
  // against the materialized conjugate
  auto fh = conjugate(k0, h);
  for (int lam = 0; lam <= 2; ++lam) CHECK(truncated_weighted_trace(k0, g, lam, h) == truncated_weighted_trace(fh, g, lam));
}

TEST_CASE("sphere overlap counts match the tree") {
  Tree T(3, 16);
  for (int m : {1, 2})
    for (int Dh : {0, 1, 2}) {
      VertexKey u{Dh, 0, 0};
      for (int R : {0, 2, 4, 6}) {
        u64 cnt = 0;
        for (const auto& y : T.sphere(m))
          if (T.distance(u, y) <= R) ++cnt;
        CHECK(sphere_overlap_count(3, 2 * Dh, 2 * m, R) == cnt);
      }
    }
}

TEST_CASE("elliptic orbital integrals") {
  auto T = tree(3);
  auto k0 = indicator_K(T, 0);
  GroupElement g = T->mat(0, 1, -1, 0);
  auto S = wo_series(k0, g);
  CHECK(S.affine);
  CHECK(S.slope == Scalar(0));
  Scalar oi = orbital_integral_elliptic(k0, g);
  CHECK(S.intercept == oi);
  // stabilized fixed-vertex count
  size_t last = 0;
  for (int r = 0; r <= 8; r += 2) last = T->fixed_vertices(g, r).size();
  CHECK(oi == Scalar((long)last));
  DepthZeroSupercuspidal rho(3, cuspidal_indices(3).back());
  auto e = matrix_coefficient(T, rho);
  auto T1 = shell_indicator(T, 1);
  CHECK(orbital_integral_elliptic(e.scaled(2) + T1.scaled(-3), g) ==
        orbital_integral_elliptic(e, g).mul(2) + orbital_integral_elliptic(T1, g).mul(-3));
  CHECK(orbital_integral_elliptic(shell_indicator(T, 3), T->mat(1, 0, 0, 1) * g) ==
        Scalar(0) + orbital_integral_elliptic(shell_indicator(T, 3), g));
  CHECK_THROWS_AS(orbital_integral_elliptic(k0, T->mat(-1, 0, 0, -1)), Error);
}

TEST_CASE("weightless check") {
  auto T = tree(3);
  auto k0 = indicator_K(T, 0);
  auto c = weightless_check(k0);
  CHECK_FALSE(c.weightless);
  REQUIRE(c.witness.has_value());
  CHECK(c.witness->value == Scalar(1));
  CHECK(c.witness->t_val == 0);
  CHECK(weightless_check(HeckeFunction(T, 0, {})).weightless);
  CHECK_FALSE(weightless_check(shell_indicator(T, 1)).weightless);
  for (int i : cuspidal_indices(3)) {
    DepthZeroSupercuspidal rho(3, i);
    auto m = m_rho(T, rho);
    auto cm = weightless_check(m);
    CHECK(cm.weightless);
    CHECK(cm.conditions.size() == 4 * 2);  // P^1(F_3) times units, val t = 0 only
    CHECK(weightless_check(matrix_coefficient(T, rho)).weightless);
    auto eT = convolve(matrix_coefficient(T, rho), shell_indicator(T, 1));
    CHECK(weightless_check(eT).weightless);
  }
  // a failing witness re-evaluates to a nonzero value
  auto f = k0.scaled(3) + shell_indicator(T, 1);
  auto cf = weightless_check(f);
  REQUIRE(cf.witness.has_value());
  CHECK_FALSE(weightless_condition_value(f, T->mat(1, 0, 0, 1), cf.witness->t_val, cf.witness->t_unit).is_zero());
}

TEST_CASE("weightless functions have conjugation invariant WO") {
  auto T = tree(5);
  GroupElement g = T->mat(2, 0, 0, mpq_class(1, 2));
  GroupElement h = T->mat(1, mpq_class(1, 5), 0, 1);
  auto k0 = indicator_K(T, 0);
  // non-weightless witness
  CHECK(wo_integral(k0, g) != wo_integral(k0, g, 3, h));
  for (int i : cuspidal_indices(5)) {
    DepthZeroSupercuspidal rho(5, i);
    auto f = convolve(matrix_coefficient(T, rho), shell_indicator(T, 1));
    REQUIRE(weightless_check(f).weightless);
    Scalar base = wo_integral(f, g);
    CHECK(wo_integral(f, g, 3, h) == base);
    CHECK(wo_integral(f, g, 3, T->mat(1, mpq_class(1, 25), 0, 1)) == base);
    CHECK(average_value(f, g) == base);
  }
  CHECK_THROWS_AS(average_value(k0, g), Error);
}

TEST_CASE("Waldspurger support scan") {
  auto T = tree(3);
  DepthZeroSupercuspidal rho(3, cuspidal_indices(3).back());
  auto e = matrix_coefficient(T, rho);
  auto k0 = indicator_K(T, 0), k1 = indicator_K(T, 1);
  CHECK(waldspurger_support_scan(HeckeFunction(T, 1, {}), k1, 4).largest_shell == -1);
  auto w = waldspurger_support_scan(e, k1, 4);
  CHECK(w.largest_shell < 4);
  auto w0 = waldspurger_support_scan(k0, k0, 4);
  CHECK(w0.largest_shell == 4);
  // shell pairing against the materialized conjugate
  GroupElement a = T->mat(3, 0, 0, mpq_class(1, 3));
  auto m = m_rho(T, rho);
  CHECK(shell_pairing(k0, m, 1, ModMat{1, 0, 0, 1}, ModMat{1, 0, 0, 1}) == pairing(conjugate(k0, a), m));
  CHECK(shell_pairing(k0, k0, 1, ModMat{1, 0, 0, 1}, ModMat{1, 0, 0, 1}) == pairing(conjugate(k0, a), k0));
  std::mt19937_64 rng(79);
  auto r = random_k0_level1(T, rng);
  auto ws = waldspurger_support_scan(r, k0, 1);
  CHECK_FALSE(ws.class_functions);
}

TEST_CASE("orbital integrals of m_rho reproduce character values") {
  for (int p : {3, 5}) {
    auto T = tree(p);
    std::vector<GroupElement> gs = {T->mat(0, 1, -1, 0), T->mat(1, 1, p, p + 1)};
    for (int i : cuspidal_indices(p)) {
      DepthZeroSupercuspidal rho(p, i);
      auto m = m_rho(T, rho);
      auto e = matrix_coefficient(T, rho);
      for (const auto& g : gs) {
        if (!classify(g).elliptic()) continue;
        Scalar cv = char_value(*T, rho, g).value;
        CHECK(orbital_integral_elliptic(m, g) == cv);
        Scalar ce = orbital_integral_elliptic(e, g);
        Scalar ci = char_value(*T, rho, g.inverse()).value;
        CHECK(ce == ci.mul(rho.dim()));
        MESSAGE("p=" << p << " sigma=" << i << " d=" << rho.dim() << " O(e)=" << ce.to_string() << " chi=" << cv.to_string());
      }
    }
  }
}
