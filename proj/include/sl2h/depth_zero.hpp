#pragma once
#include <optional>
#include <vector>

#include "sl2h/finite_group.hpp"
#include "sl2h/hecke.hpp"

namespace sl2h {

// rho = compact induction from K0 of the inflation of a cuspidal sigma of SL(2, F_p)
struct DepthZeroSupercuspidal {
  int p = 0;
  int sigma = 0;  // index into character_table_sl2(p)

  DepthZeroSupercuspidal(int p, int sigma);
  int dim() const;
  // character of sigma at the reduction of an element of K0
  Scalar chi(const ModMat& kbar) const;
  Scalar chi_of(const GroupElement& k) const;  // k in K0
};

// e_sigma(k) = dim * chi(k^{-1}) on K0, level 1; idempotent
HeckeFunction matrix_coefficient(std::shared_ptr<const Tree> T, const DepthZeroSupercuspidal& rho);
// m_rho(k) = chi(k) on K0, level 1
HeckeFunction m_rho(std::shared_ptr<const Tree> T, const DepthZeroSupercuspidal& rho);

// trace of rho(h) on the K_n-fixed vectors, n = level of h
Scalar rho_trace(const DepthZeroSupercuspidal& rho, const HeckeFunction& h);
Scalar rho_trace_serial(const DepthZeroSupercuspidal& rho, const HeckeFunction& h);

struct CharValue {
  Scalar value;
  int n_stable = 0;                 // first level of the stable run
  std::vector<Scalar> by_level;     // values for n = 1, 2, ...
  std::optional<Scalar> frobenius;  // elliptic g only
};

// tr rho(h_n), h_n = normalized 1_{K_n g K_n}, for n = 1.. until three consecutive values agree
CharValue char_value(const Tree& T, const DepthZeroSupercuspidal& rho, const GroupElement& g, int n_max = 9);
// sum over all fixed vertices v of chi(b_v^{-1} g b_v); g elliptic in K0
Scalar frobenius_sum(const Tree& T, const DepthZeroSupercuspidal& rho, const GroupElement& g);

}  // namespace sl2h
