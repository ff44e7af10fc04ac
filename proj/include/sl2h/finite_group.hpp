#pragma once
#include <map>
#include <string>
#include <vector>

#include "sl2h/group.hpp"
#include "sl2h/scalar.hpp"

namespace sl2h {

// Finite group given by its multiplication table; element 0 is the identity.
struct FiniteGroup {
  int order = 0;
  std::vector<int> mul;  // mul[x*order+y] = x*y
  std::vector<int> inv;
  std::vector<int> class_of;
  std::vector<std::vector<int>> classes;  // sorted by smallest member
  std::vector<std::string> names;         // printable element labels
  std::vector<ModMat> mats;               // matrix groups only
  std::map<ModMat, int> index;            // matrix groups only

  int prod(int x, int y) const { return mul[(size_t)x * order + y]; }
  int elem_order(int x) const;
  int exponent() const;
  int num_classes() const { return (int)classes.size(); }
  // fills inv, class_of and classes from the table
  void finish();
};

FiniteGroup cyclic_group(int n);
FiniteGroup symmetric_group(int n);
// SL(2, Z/p^n), elements in the sorted order of sl2_mod_elements
FiniteGroup sl2_mod_group(int p, int n);

// Characters as class functions with exact cyclotomic values.
struct CharacterTable {
  std::vector<std::vector<Scalar>> chi;  // chi[i][class]
  std::vector<int> dim;
  int size() const { return (int)chi.size(); }
};

// Burnside-Dixon over F_P, lifted to cyclotomic values; validated by sum of squares and orthogonality
CharacterTable character_table(const FiniteGroup& G);
// the table of SL(2, F_q), q an odd prime <= 13
const CharacterTable& character_table_sl2(int q);
const FiniteGroup& sl2_group(int q);

// <a, b> = |G|^{-1} sum_g a(g) conj(b(g)) for class functions given per class
Scalar inner_product(const FiniteGroup& G, const std::vector<Scalar>& a, const std::vector<Scalar>& b);
// no nonzero U(F_q)-invariants: sum over the upper unipotents vanishes
bool is_cuspidal(int q, const std::vector<Scalar>& chi);
// indices of the cuspidal characters of SL(2, F_q) in table order
std::vector<int> cuspidal_indices(int q);

std::string table_to_text(const FiniteGroup& G, const CharacterTable& T);
CharacterTable table_from_text(const FiniteGroup& G, const std::string& text);

// group algebra C[G] with counting measure
using GroupAlgebraElement = std::vector<Scalar>;
GroupAlgebraElement ga_mul(const FiniteGroup& G, const GroupAlgebraElement& a, const GroupAlgebraElement& b);
GroupAlgebraElement ga_delta(const FiniteGroup& G, int x);
// class averages, one value per class
std::vector<Scalar> cocenter_class(const FiniteGroup& G, const GroupAlgebraElement& a);

using GAMatrix = std::vector<std::vector<GroupAlgebraElement>>;
GAMatrix ga_matmul(const FiniteGroup& G, const GAMatrix& a, const GAMatrix& b);
// cocenter class of the trace; throws NotIdempotent unless e*e = e
std::vector<Scalar> chern_of_idempotent(const FiniteGroup& G, const GAMatrix& e);

}  // namespace sl2h
