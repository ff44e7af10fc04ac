#include "doctest.h"
#include "sl2h/errors.hpp"
#include "sl2h/tate.hpp"

using namespace sl2h;
using namespace sl2h::tate;

namespace {
Banded rand_op(std::mt19937_64& rng, int r, int b, bool plus = true, bool minus = true) {
  RandomSpec s;
  s.r = r;
  s.b = b;
  s.plus = plus;
  s.minus = minus;
  return random_banded(rng, s);
}
Q C(const Banded& a, const Banded& b) { return cocycle_C(a, b).value; }
}  // namespace

TEST_CASE("banded algebra") {
  std::mt19937_64 rng(101);
  auto Pi = projector(2);
  CHECK(Pi * Pi == Pi);
  CHECK(shift(2, 2) * shift(2, -2) == identity(2));
  CHECK((identity(2) - Pi) * Pi == Banded(2));
  for (int t = 0; t < 10; ++t) {
    auto a = rand_op(rng, 2, 1), b = rand_op(rng, 2, 2), c = rand_op(rng, 2, 1);
    CHECK((a * b) * c == a * (b * c));
    // symbolic product against the bi-infinite entry sum
    auto ab = a * b;
    for (long i = -6; i < 6; ++i)
      for (long j = -6; j < 6; ++j) {
        Q s = 0;
        for (long k = j - 4; k <= j + 4; ++k)
          for (int m = 0; m < 2; ++m) s += a.entry({i, 0}, {k, m}) * b.entry({k, m}, {j, 1});
        CHECK(ab.entry({i, 0}, {j, 1}) == s);
      }
  }
  auto f = rand_op(rng, 1, 1, false, false);
  CHECK(f.finite_rank());
  CHECK(f.trace() == materialize(f, 8).trace());
  CHECK(rand_op(rng, 1, 1, true, false).bounded());
  CHECK(rand_op(rng, 1, 1, false, true).discrete());
}

TEST_CASE("cocycle examples") {
  std::mt19937_64 rng(103);
  auto e = rand_op(rng, 1, 2);
  CHECK(C(e, e) == 0);
  CHECK(C(shift(1, 1), shift(1, -1)) == -1);
  Banded d1(1, {{0, {Q(3)}}}, {{0, {Q(-2)}}}, {{{{0, 0}, {0, 0}}, Q(5)}});
  Banded d2(1, {{0, {Q(7)}}}, {{0, {Q(1)}}}, {{{{-1, 0}, {-1, 0}}, Q(4)}});
  CHECK(C(d1, d2) == 0);
  for (int r : {1, 2})
    for (int k = -3; k <= 3; ++k) {
      // d(t^k) = -dim(V+ / t^k V+) for k >= 0, dim(t^k V+ / V+) for k < 0
      long d = k >= 0 ? -(long)k * r : (long)(-k) * r;
      CHECK(C(shift(r, k), shift(r, -k)) == d);
    }
}

TEST_CASE("cocycle identity and antisymmetry on random triples") {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 100; ++t) {
    int r = 1 + t % 2, b = 1 + (t / 2) % 2;
    auto a = rand_op(rng, r, b), b2 = rand_op(rng, r, 1), c = rand_op(rng, r, b);
    Q s = C(commutator(a, b2), c) + C(commutator(b2, c), a) + C(commutator(c, a), b2);
    CHECK(s == 0);
    CHECK(C(a, b2) == -C(b2, a));
  }
}

TEST_CASE("commutator traces vanish") {
  std::mt19937_64 rng(109);
  for (int t = 0; t < 20; ++t) {
    int r = 1 + t % 2;
    auto e = rand_op(rng, r, 2);
    auto f = rand_op(rng, r, 1, false, false);
    CHECK(commutator_trace(e, f).value == 0);
    CHECK(commutator(e, f).trace() == 0);
    auto eb = rand_op(rng, r, 2, true, false), ed = rand_op(rng, r, 2, false, true);
    REQUIRE(commutator(eb, ed).finite_rank());
    CHECK(commutator_trace(eb, ed).value == 0);
  }
  Banded d(2, {{0, {Q(1), Q(0), Q(0), Q(2)}}}, {{0, {Q(1), Q(0), Q(0), Q(2)}}});
  CHECK_THROWS_AS(commutator_trace(monomial({1, 0}, 0), d), Error);
  CHECK(commutator_trace(shift(1, 1), projector(1)).value == 0);
}

TEST_CASE("cocycle on bounded-discrete pairs") {
  // e_0 -> e_-1 and e_-1 -> e_0 are both bounded and discrete, yet C = 1
  auto a = elementary(1, {-1, 0}, {0, 0}), b = elementary(1, {0, 0}, {-1, 0});
  REQUIRE(a.finite_rank());
  CHECK(C(a, b) == 1);
  // for finite rank operators C is the coboundary of E -> tr(E Pi)
  std::mt19937_64 rng(113);
  for (int t = 0; t < 20; ++t) {
    auto x = rand_op(rng, 2, 1, false, false), y = rand_op(rng, 2, 2, false, false);
    CHECK(C(x, y) == -(commutator(x, y) * projector(2)).trace());
  }
}

TEST_CASE("sigma_W") {
  CHECK(sigma_W(identity(1), discrete_below(1, 0)).value == 1);
  CHECK(sigma_W(identity(1), discrete_minus(1)).value == 0);
  CHECK(sigma_W(identity(2), discrete_below(2, 2)).value == 6);
  std::mt19937_64 rng(11);
  for (int t = 0; t < 10; ++t) {
    auto W = random_discrete(rng, 1 + t % 2, 3, t % 4);
    long idx = dim_plus_cap(W) - codim_plus_sum(W);
    CHECK(sigma_W(identity(W.r), W).value == idx);
    CHECK(sigma_W(identity(W.r), W, 12).value == idx);
  }
  // rank-one E with image in V+ cap W
  auto W = discrete_below(1, 1);
  for (int t = 0; t < 5; ++t) {
    Banded::Core core;
    std::uniform_int_distribution<int> ent(-3, 3);
    Q u0 = ent(rng), u1 = ent(rng);
    for (long j = -3; j < 3; ++j) {
      Q phi = ent(rng);
      core[{{0, 0}, {j, 0}}] = u0 * phi;
      core[{{1, 0}, {j, 0}}] = u1 * phi;
    }
    Banded E(1, {}, {}, core);
    CHECK(sigma_W(E, W).value == E.trace());
  }
  CHECK(sigma_W(shift(1, -1), W).value == 0);
  CHECK_THROWS_AS(sigma_W(shift(1, 1), W), Error);
}

TEST_CASE("hat tau") {
  std::mt19937_64 rng(127);
  auto beta = rand_op(rng, 2, 1);
  Banded diag(2, {{0, {Q(1), Q(0), Q(0), Q(2)}}}, {{0, {Q(3), Q(0), Q(0), Q(4)}}});
  auto g = monomial({1, 0}, 0);
  CHECK(hat_tau(diag, beta, g).value == 0);
  CHECK(hat_tau(rand_op(rng, 2, 1), Banded(2), g).value == 0);
  auto t = shift(1, 1), ti = shift(1, -1);
  Q h = hat_tau(t, ti, identity(1)).value;
  // the two one-sided traces of C(t, t^-1)
  long N = 6;
  auto Pi = materialize(projector(1), N), Co = materialize(identity(1) - projector(1), N);
  auto T = materialize(t, N), Ti = materialize(ti, N);
  Q first = (T * Pi * Ti * Co).trace(), second = (Ti * Pi * T * Co).trace();
  CHECK(first == 0);
  CHECK(second == 1);
  CHECK(h == first - second);
  CHECK(h == C(t, ti));
}

TEST_CASE("truncation instability is detected") {
  CHECK_THROWS_AS(cocycle_C(shift(1, 3), shift(1, -3), 1), Error);
  CHECK(cocycle_C(shift(1, 3), shift(1, -3)).value == -3);
}
