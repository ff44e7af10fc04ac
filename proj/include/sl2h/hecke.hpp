#pragma once
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "sl2h/scalar.hpp"
#include "sl2h/tree.hpp"

namespace sl2h {

// Bi-K_n-invariant compactly supported function on SL(2, Q_p), stored by right
// cosets x K_n.  The measure is f(x) dx with vol(K_0) = 1.
class HeckeFunction {
 public:
  using Map = std::map<CosetKey, Scalar>;

  HeckeFunction() = default;
  // drops zero coefficients; with check=true verifies left K_n-invariance
  HeckeFunction(std::shared_ptr<const Tree> tree, int level, Map values, bool check = true);

  const Tree& tree() const { return *tree_; }
  std::shared_ptr<const Tree> tree_ptr() const { return tree_; }
  int p() const { return tree_->p(); }
  int level() const { return level_; }
  int support_bound() const { return lambda_; }  // max Cartan exponent on the support, -1 if zero
  const Map& values() const { return values_; }
  size_t size() const { return values_.size(); }
  bool is_zero() const { return values_.empty(); }
  static constexpr const char* normalization() { return "vol(K0)=1"; }

  Scalar at(const GroupElement& g) const;
  Scalar at_key(const CosetKey& c) const;  // c at this level

  // same function at a finer level N >= level
  HeckeFunction refine(int N) const;
  bool is_left_invariant() const;

  HeckeFunction operator+(const HeckeFunction& o) const;
  HeckeFunction operator-(const HeckeFunction& o) const;
  HeckeFunction scaled(const Scalar& s) const;
  bool operator==(const HeckeFunction& o) const;  // as functions, after refining to a common level

  // integral over G
  Scalar integral() const;

  std::string serialize() const;
  static HeckeFunction deserialize(const std::string& text, i64 prec);

 private:
  std::shared_ptr<const Tree> tree_;
  int level_ = 0;
  int lambda_ = -1;
  Map values_;
};

// generators of K_n used for invariance checks and orbit closures
std::vector<GroupElement> level_generators(const Tree& T, int n);

// builders
HeckeFunction indicator_K(std::shared_ptr<const Tree> T, int n);  // 1_{K_n}
HeckeFunction unit_K(std::shared_ptr<const Tree> T, int n);       // vol(K_n)^{-1} 1_{K_n}
HeckeFunction double_coset(std::shared_ptr<const Tree> T, const GroupElement& g, int n);  // 1_{K_n g K_n}
HeckeFunction shell_indicator(std::shared_ptr<const Tree> T, int m);  // T_m = 1_{K0 diag(p^m) K0}
// level-n function x -> phi(x) on K_0 given by a function of SL(2, Z/p^n)
HeckeFunction from_k0_function(std::shared_ptr<const Tree> T, int n,
                               const std::function<Scalar(const ModMat&)>& phi);

// convolution; the serial version is the reference, the parallel one gathers per output coset
HeckeFunction convolve_serial(const HeckeFunction& f1, const HeckeFunction& f2, int lambda_cap = 8);
HeckeFunction convolve(const HeckeFunction& f1, const HeckeFunction& f2, int lambda_cap = 8);

// x -> f(h^{-1} x h), materialized at level n + 2 m(h)
HeckeFunction conjugate(const HeckeFunction& f, const GroupElement& h, size_t cap = 20'000'000);
HeckeFunction conjugate_serial(const HeckeFunction& f, const GroupElement& h, size_t cap = 20'000'000);

// integral of f times conj(h)
Scalar pairing(const HeckeFunction& f, const HeckeFunction& h);

}  // namespace sl2h
