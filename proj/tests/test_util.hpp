#pragma once
#include <random>

#include "sl2h/tree.hpp"

namespace testutil {

using namespace sl2h;

inline mpq_class random_unit_rational(std::mt19937_64& rng, int p) {
  for (;;) {
    long n = (long)(rng() % 40) - 20;
    long d = (long)(rng() % 9) + 1;
    if (n % p == 0 || d % p == 0) continue;
    mpq_class q(n, d);
    q.canonicalize();
    return q;
  }
}

// random element of SL(2, Z_(p)) as an exact rational matrix
inline std::array<mpq_class, 4> random_k0_rational(std::mt19937_64& rng, int p, int steps = 4) {
  std::array<mpq_class, 4> m{1, 0, 0, 1};
  auto mul = [&](const std::array<mpq_class, 4>& x) {
    m = {m[0] * x[0] + m[1] * x[2], m[0] * x[1] + m[1] * x[3], m[2] * x[0] + m[3] * x[2],
         m[2] * x[1] + m[3] * x[3]};
  };
  for (int s = 0; s < steps; ++s) {
    long t = (long)(rng() % 11) - 5;
    switch (rng() % 3) {
      case 0: mul({1, t, 0, 1}); break;
      case 1: mul({1, 0, t, 1}); break;
      default: {
        mpq_class u = random_unit_rational(rng, p);
        mul({u, 0, 0, 1 / u});
      }
    }
  }
  return m;
}

inline GroupElement random_k0(const Tree& T, std::mt19937_64& rng, int steps = 4) {
  auto m = random_k0_rational(rng, T.p(), steps);
  return T.mat(m[0], m[1], m[2], m[3]);
}

inline GroupElement random_in_shell(const Tree& T, std::mt19937_64& rng, int m) {
  mpq_class pm = 1;
  for (int i = 0; i < m; ++i) pm *= T.p();
  return random_k0(T, rng) * T.mat(pm, 0, 0, 1 / pm) * random_k0(T, rng);
}

}  // namespace testutil
