#pragma once
#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

#include "sl2h/tree.hpp"

namespace sl2h::homology {

// A ball of P^1(Q_p): points congruent to [x1 : x2] mod p^depth.
// Canonical centres are (x, 1) with 0 <= x < p^depth or (1, y) with p | y, 0 <= y < p^depth.
struct Ball {
  i64 x1 = 0, x2 = 1;
  int depth = 1;
  auto operator<=>(const Ball&) const = default;
};

struct RatMat {
  mpq_class a = 1, b = 0, c = 0, d = 1;
};

// P^1(Z/p^D): the balls of depth D, indexed 0..(p+1)p^{D-1}-1
class P1Level {
 public:
  P1Level(int p, int D);
  int p() const { return p_; }
  int depth() const { return D_; }
  u64 size() const { return size_; }
  Ball ball(u64 i) const;
  u64 index(const Ball& b) const;  // b.depth == D
  // indices of the depth-D balls inside b (b.depth <= D)
  std::vector<u64> refine(const Ball& b) const;
  // depth-1 residue class (0..p)
  u64 residue(u64 i) const;

 private:
  int p_, D_;
  i64 pD_;
  u64 size_;
};

// valuation of det(x, y) for disjoint balls; -1 if the balls meet
int turning(int p, const Ball& x, const Ball& y);
// SL2(Z_p)-orbit of the ordered pair of disjoint balls: 0 for turning 0, else 2k-1 (square) or 2k (non-square)
int pair_orbit(int p, const Ball& x, const Ball& y);
// image of a ball under a Moebius transformation when it is again a ball of depth <= max_depth
std::optional<Ball> ball_image(int p, const RatMat& g, const Ball& b, int max_depth);
Ball canonical_ball(int p, const mpq_class& a, const mpq_class& b, int depth);

// Split orbit Omega = G/T ~ ordered pairs of distinct ends. Basis: boxes B1 x B2 of depth D = lambda + n,
// turning <= lambda, each carrying the product of the uniform probability measures.
struct SplitWindow {
  int p = 3, n = 1, lambda = 0, lambda_int = 0;
  P1Level level{3, 1};
  std::vector<std::pair<u64, u64>> boxes;
  std::vector<int> box_turning;
};
SplitWindow split_window(int p, int n, int lambda, size_t cap = 2'000'000);

// sparse integer matrix, column-major: column j -> (row, value)
struct IntMatrix {
  size_t rows = 0, cols = 0;
  std::vector<std::vector<std::pair<size_t, long>>> col;
};
IntMatrix compose(const IntMatrix& a, const IntMatrix& b);  // a * b
bool is_zero(const IntMatrix& m);
size_t rank_mod(const IntMatrix& m, u64 P = 2305843009213693951ULL);  // columns as rows

struct FiniteComplex {
  std::vector<std::string> names;
  std::vector<size_t> dims;
  std::vector<IntMatrix> differentials;  // differentials[i]: space i -> space i+1
  std::vector<int> interior;             // interior radius per space, -1 if not applicable
};

struct StarComplexReport {
  FiniteComplex complex;
  bool composite_zero = false;
  size_t rank_push = 0, rank_last = 0;
  bool exact_at_borels = false;  // image of the pushforwards = kernel of the last map
  bool last_onto = false;
  size_t interior_boxes = 0, interior_kernel_dim = 0, interior_kernel_generated = 0;
  bool interior_exact = false;  // interior kernel of the pushforwards = interior part of the K window
};
// 0 -> K -> S(Omega) -> S(G/B) + S(G/B') -> C -> 0 on the split window; K is spanned by
// elementary squares (u,w) - (u,w') - (u',w) + (u',w') with anchors u', w' from distinct residue classes.
StarComplexReport build_star_complex(int p, int n, int lambda, size_t cap = 2'000'000);

// Elliptic orbit Omega = G/T: basis of right T K_n cosets in G_{<=lambda}.
struct EllipticWindow {
  int n = 1, lambda = 0, lambda_int = 0;
  std::vector<ModMat> torus;        // image of T in SL2(Z/p^n)
  std::vector<CosetKey> reps;       // minimal key of each T K_n coset
  std::vector<int> rep_exponent;    // Cartan exponent of the coset
  size_t cosets = 0;                // number of K_n cosets covered
};
EllipticWindow elliptic_window(const Tree& T, const GroupElement& g0, int n, int lambda, size_t cap = 5'000'000);
// two-term complex S(Omega) -> C (integration); composites are vacuous
FiniteComplex elliptic_complex(const Tree& T, const EllipticWindow& W);

struct CoinvariantEstimate {
  std::string orbit;
  int p = 0, lambda = 0, lambda_int = 0;
  size_t window_dim = 0, interior_dim = 0, relations = 0, dropped = 0;
  long estimate = 0;
};
// dim (interior window) / span{f - gamma f}: elliptic case, generators = representatives of G_{<=1}/K_1
CoinvariantEstimate coinvariant_estimate_elliptic(const Tree& T, const GroupElement& g0, int n, int lambda);
// split case, computed on the dual side with SL2(Z_p)-invariant functionals (see source)
CoinvariantEstimate coinvariant_estimate_split(int p, int lambda);

}  // namespace sl2h::homology
