#pragma once
#include <gmpxx.h>

#include <map>
#include <random>
#include <tuple>
#include <vector>

namespace sl2h::tate {

using Q = mpq_class;

// r x r block, row-major (out component, in component)
using Block = std::vector<Q>;

// Basis vector e_(deg, comp) of V = k((t))^r. The operator is
//   e_(j,c) -> sum_s t^s A_s e_(j,c)   with A = P for j >= 0, A = M for j < 0,
// plus a finitely supported core. Products, sums and commutators stay in this class.
class Banded {
 public:
  struct Idx {
    long deg;
    int comp;
    auto operator<=>(const Idx&) const = default;
  };
  using Core = std::map<std::pair<Idx, Idx>, Q>;  // (out, in) -> entry

  explicit Banded(int r = 1) : r_(r) {}
  Banded(int r, std::map<int, Block> P, std::map<int, Block> M, Core core = {});

  int rank() const { return r_; }
  int bandwidth() const;
  long core_extent() const;  // all core degrees lie in [-extent, extent)
  const std::map<int, Block>& plus_symbol() const { return P_; }
  const std::map<int, Block>& minus_symbol() const { return M_; }
  const Core& core() const { return core_; }

  Q entry(Idx out, Idx in) const;
  // nonzero entries of column `in`
  std::vector<std::pair<Idx, Q>> column(Idx in) const;

  // image in degrees >= -c for some c
  bool bounded() const { return M_.empty(); }
  // kernel contains all degrees >= c for some c
  bool discrete() const { return P_.empty(); }
  bool finite_rank() const { return bounded() && discrete(); }
  // trace of a finite-rank operator
  Q trace() const;

  Banded operator+(const Banded& o) const;
  Banded operator-(const Banded& o) const;
  Banded operator*(const Banded& o) const;
  Banded scaled(const Q& c) const;
  bool operator==(const Banded& o) const;

 private:
  void normalize();
  int r_;
  std::map<int, Block> P_, M_;
  Core core_;
};

Banded commutator(const Banded& a, const Banded& b);
Banded identity(int r);
Banded shift(int r, int k);      // multiplication by t^k
Banded projector(int r);         // Pi onto degrees >= 0 along degrees < 0
Banded monomial(const std::vector<int>& perm, int k);  // e_(j,c) -> e_(j+k, perm[c])
Banded elementary(int r, Banded::Idx out, Banded::Idx in, const Q& v = 1);

struct RandomSpec {
  int r = 1, b = 1;
  long core = 2;  // core degrees in [-core, core)
  int entry = 2;  // entries uniform in [-entry, entry]
  bool plus = true, minus = true;
};
Banded random_banded(std::mt19937_64& rng, const RandomSpec& s);

// sparse truncation to the window [-N, N)
struct WindowMatrix {
  int r = 1;
  long N = 0;
  std::vector<std::map<long, Q>> rows;
  long dim() const { return 2 * N * r; }
  long index(Banded::Idx i) const { return (i.deg + N) * r + i.comp; }
  bool contains(Banded::Idx i) const { return i.deg >= -N && i.deg < N; }
  WindowMatrix operator*(const WindowMatrix& o) const;
  WindowMatrix operator-(const WindowMatrix& o) const;
  Q trace() const;
};
WindowMatrix materialize(const Banded& e, long N);

// trace of a word in truncated matrices, recomputed at N and N + b; throws TruncationUnstable on change.
// N = 0 picks a window from the bandwidths and cores.
struct StableTrace {
  Q value;
  long N = 0, N_probe = 0;
};

// C(E1,E2) = Tr(E1 Pi E2 (1-Pi) - E2 Pi E1 (1-Pi))
StableTrace cocycle_C(const Banded& e1, const Banded& e2, long N = 0);
// Tr([alpha, Pi] beta g)
StableTrace hat_tau(const Banded& alpha, const Banded& beta, const Banded& g, long N = 0);
// Tr of a commutator [a, b] that is finite rank on the window
StableTrace commutator_trace(const Banded& a, const Banded& b, long N = 0);

// W = span{e_(j,c): j < -K} + span(vectors), vectors supported in degrees [-K, K)
struct Discrete {
  int r = 1;
  long K = 0;
  std::vector<std::map<Banded::Idx, Q>> vectors;
};
Discrete discrete_minus(int r);                        // V^- itself
Discrete discrete_below(int r, long d);                // degrees <= d, d >= -1
Discrete random_discrete(std::mt19937_64& rng, int r, long K, int extra);

// dim(V+ cap W) - codim(V+ + W) by rank computations
long relative_index(const Discrete& W);
long dim_plus_cap(const Discrete& W);
long codim_plus_sum(const Discrete& W);
bool preserves(const Banded& e, const Discrete& W);
// s_W(E) - s_Pi(E) = Tr(E P_W - (1-Pi) E (1-Pi)), P_W any projector onto W along a lattice; E(W) in W
StableTrace sigma_W(const Banded& e, const Discrete& W, long N = 0);

}  // namespace sl2h::tate
