#pragma once
#include <optional>
#include <string>
#include <vector>

#include "sl2h/hecke.hpp"

namespace sl2h {

struct TruncatedOrbitalSeries {
  int lambda0 = 0;
  std::vector<Scalar> values;  // t(lambda0), t(lambda0+1), ...
  bool affine = false;
  Scalar slope, intercept;
  std::string basepoint = "x0";
  std::string normalization = HeckeFunction::normalization();
};

// f(k y k^{-1}) = f(y) for all k in K0
bool is_k0_class(const HeckeFunction& f);

// t(lambda) = int_{G<=lambda} (^h f)(y g y^{-1}) dy for g in K0; h defaults to the identity.
// Walks the vertices near Fix(g); the serial flag selects the reference loop.
Scalar truncated_weighted_trace(const HeckeFunction& f, const GroupElement& g, int lambda,
                                const std::optional<GroupElement>& h = {}, bool serial = false);
// same quantity by summing over every coset of G<=lambda at level n + 2 m(h)
Scalar truncated_weighted_trace_bruteforce(const HeckeFunction& f, const GroupElement& g, int lambda,
                                           const std::optional<GroupElement>& h = {}, size_t cap = 20'000'000);

// t on [lambda0, lambda0 + width]; lambda0 starts at supp(f) + m(h) + 1 and is raised up to 4 times
TruncatedOrbitalSeries wo_series(const HeckeFunction& f, const GroupElement& g, int width = 3,
                                 const std::optional<GroupElement>& h = {});
// intercept of the affine series; NotStabilized if no affine window is found
Scalar wo_integral(const HeckeFunction& f, const GroupElement& g, int width = 3,
                   const std::optional<GroupElement>& h = {});
// stabilized value of t for elliptic regular g
Scalar orbital_integral_elliptic(const HeckeFunction& f, const GroupElement& g);

// number of vertices y at distance r from x0 with d(u, y) <= R, where d(x0, u) = D (full tree, valence q+1)
u64 sphere_overlap_count(int q, int D, int r, int R);

struct WeightlessCondition {
  std::string borel;  // point of P^1(Z/p^n) fixing the Borel
  int t_val = 0;      // valuation of the Levi entry t
  u64 t_unit = 1;     // unit part of t mod p^n
  Scalar value;       // int_U f(x l u x^{-1}) du
};

struct WeightlessCertificate {
  bool weightless = false;
  int lambda_bound = 0;  // |val t| <= lambda_bound
  int level = 0;
  std::vector<WeightlessCondition> conditions;  // all conditions on success
  std::optional<WeightlessCondition> witness;   // first nonzero condition on failure
};

WeightlessCertificate weightless_check(const HeckeFunction& f);
// int_U f(x l u x^{-1}) du for a single condition
Scalar weightless_condition_value(const HeckeFunction& f, const GroupElement& x, int t_val, u64 t_unit);

struct WaldspurgerScan {
  int largest_shell = -1;                             // -1 = no nonzero value
  std::vector<std::pair<int, Scalar>> shell_values;  // one representative value per shell (first nonzero)
  bool class_functions = false;                       // one representative per shell sufficed
};
// g -> <^g f, h> over the Cartan shells 0..lambda_max; f and h supported on K0
WaldspurgerScan waldspurger_support_scan(const HeckeFunction& f, const HeckeFunction& h, int lambda_max,
                                         size_t cap = 50'000'000);
// <^a f, h> for a = diag(p^m, p^-m) k, f and h supported on K0
Scalar shell_pairing(const HeckeFunction& f, const HeckeFunction& h, int m, const ModMat& k_f, const ModMat& k_h);

// WO_g(f) for f in the weightless space, after checking invariance under one conjugation
Scalar average_value(const HeckeFunction& f, const GroupElement& g, const std::optional<GroupElement>& probe = {});

}  // namespace sl2h
