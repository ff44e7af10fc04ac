#pragma once
#include <compare>
#include <functional>
#include <vector>

#include "sl2h/group.hpp"

namespace sl2h {

// Even vertex b x0 with b = [[p^a, num/p^e],[0, p^-a]], num canonical mod p^{a+e}.
struct VertexKey {
  int a = 0;
  int e = 0;
  u64 num = 0;
  auto operator<=>(const VertexKey&) const = default;
  int exponent() const { return std::max(a < 0 ? -a : a, e); }
};

// Right coset g K_n, stored as (vertex of g, b^{-1} g mod p^n).
struct CosetKey {
  VertexKey v;
  ModMat k;
  auto operator<=>(const CosetKey&) const = default;
};

struct CosetKeyHash {
  size_t operator()(const CosetKey& c) const {
    u64 h = (u64)(c.v.a + 1000) * 1000003ULL ^ (u64)c.v.e * 998244353ULL ^ c.v.num * 0x9E3779B97F4A7C15ULL;
    h ^= c.k.a * 0xC2B2AE3D27D4EB4FULL + (h << 6) + (h >> 2);
    h ^= c.k.b * 0x165667B19E3779F9ULL + (h << 6) + (h >> 2);
    h ^= c.k.c * 0x27D4EB2F165667C5ULL + (h << 6) + (h >> 2);
    h ^= c.k.d * 0x94D049BB133111EBULL + (h << 6) + (h >> 2);
    return (size_t)h;
  }
};

struct Iwasawa {
  VertexKey v;
  GroupElement b;  // canonical representative of v
  GroupElement k;  // b^{-1} g, in K0
};

// Arithmetic context: the prime and the absolute working precision.
class Tree {
 public:
  Tree(int p, i64 prec);
  int p() const { return p_; }
  i64 prec() const { return prec_; }
  u64 pn(int n) const { return ipow(p_, n); }

  GroupElement vertex_rep(const VertexKey& v) const;
  Iwasawa iwasawa(const GroupElement& g) const;
  VertexKey vertex_of(const GroupElement& g) const { return iwasawa(g).v; }
  CosetKey coset_key(const GroupElement& g, int n) const;
  GroupElement coset_rep(const CosetKey& c) const;
  GroupElement mat(const mpq_class& a, const mpq_class& b, const mpq_class& c, const mpq_class& d) const {
    return GroupElement::from_rationals(p_, a, b, c, d, prec_);
  }

  // vertices with Cartan exponent exactly m, in canonical order
  std::vector<VertexKey> sphere(int m) const;
  std::vector<VertexKey> ball(int lambda) const;
  // vertices at distance 2(m+1) adjacent through one step of length 2 to v (m = exponent(v))
  std::vector<VertexKey> children(const VertexKey& v) const;
  int distance(const VertexKey& v, const VertexKey& w) const;  // tree distance, even

  // one key per right coset of K_n in G_{<=lambda}; OutOfMemoryBudget above cap
  std::vector<CosetKey> enumerate_cosets(int lambda, int n, size_t cap = 50'000'000) const;

  struct WalkHit {
    VertexKey v;
    GroupElement b;
    GroupElement c;  // b^{-1} g b
    int m;           // cartan exponent of c = tree distance of v to Fix(g)
  };
  // vertices v with exponent(v) <= lambda and d(v, Fix g) <= mu, for g in K0
  std::vector<WalkHit> walk_near_fixed(const GroupElement& g, int lambda, int mu) const;
  // cosets x K0 with x^{-1} g x in K0, tree distance from x0 at most radius
  std::vector<VertexKey> fixed_vertices(const GroupElement& g, int radius) const;

 private:
  int p_;
  i64 prec_;
  std::vector<GroupElement> step_reps_;  // representatives b_s of the exponent-1 sphere
};

mpq_class vol_K(int p, int n);  // vol(K_n) with vol(K_0) = 1

}  // namespace sl2h
