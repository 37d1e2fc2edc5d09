#pragma once

#include <array>
#include <optional>
#include <utility>
#include <vector>

#include "fincat/limits.hpp"

namespace fincat {

/// A module A ⇸ B is a bifunctor B^op x A -> FinSet: contra = B, co = A.
using Profunctor = Bifunctor;

inline const CategoryRef& module_source(const Profunctor& p) { return p.co; }
inline const CategoryRef& module_target(const Profunctor& p) { return p.contra; }

/// One function per cell, cells numbered b * |A| + a.
struct ProfMorphism {
  std::vector<Map> components;
  bool operator==(const ProfMorphism&) const = default;
  auto operator<=>(const ProfMorphism&) const = default;
};

ValidationReport validate(const Profunctor& from, const Profunctor& to, const ProfMorphism& theta);
ProfMorphism identity_cell(const Profunctor& p);
ProfMorphism compose(const ProfMorphism& second, const ProfMorphism& first);
bool is_isomorphism(const ProfMorphism& theta);

/// Every 2-cell from -> to, in lexicographic order.
std::vector<ProfMorphism> two_cells(const Profunctor& from, const Profunctor& to);
std::optional<ProfMorphism> find_isomorphism(const Profunctor& a, const Profunctor& b);

/// The hom module 1: A ⇸ A.
Profunctor id_module(const CategoryRef& a);

/// outer∘inner for inner: C ⇸ A and outer: A ⇸ B, cellwise the coend over a
/// of inner(a, c) x outer(b, a).
struct Composite {
  Profunctor result;
  std::vector<Quotient> cells;  // per cell b * |C| + c
  std::vector<int> outer_sizes;  // outer(b, a) per b * |A| + a, to decode pairs
  int objects_a = 0;
  int objects_c = 0;

  /// Class of the pair (i in inner(a, c), j in outer(b, a)).
  int cls(int b, int c, int a, int i, int j) const;
  /// Decodes a class representative into (a, i, j).
  std::array<int, 3> representative(int b, int c, int cls) const;
};
Composite compose(const Profunctor& outer, const Profunctor& inner);

/// T_*: A ⇸ B with cells B(b, Ta), and T^*: B ⇸ A with cells B(Ta, b).
struct ModulePair {
  Profunctor lower;
  Profunctor upper;
};
ModulePair functor_to_modules(const Functor& t);

/// φ̄: I ⇸ B for a presheaf φ on B.
Profunctor weight_module(const SetFunctor& phi);
/// ψ̲: B ⇸ I for a covariant ψ on B.
Profunctor coweight_module(const SetFunctor& psi);

/// {|f, h|}: C ⇸ A for f: A ⇸ B and h: C ⇸ B, with counit f∘{|f,h|} => h.
struct RightLift {
  Profunctor lift;
  std::vector<NatSet> cells;  // per a * |C| + c: Nat(f(-, a), h(-, c))
  Composite composite;        // f∘lift
  ProfMorphism counit;
};
RightLift right_lift(const Profunctor& f, const Profunctor& h);

/// [[g, h]]: A ⇸ B for g: C ⇸ A and h: C ⇸ B, with counit [[g,h]]∘g => h.
struct RightExtension {
  Profunctor extension;
  std::vector<NatSet> cells;  // per b * |A| + a: Nat(g(a, -), h(b, -))
  Composite composite;        // extension∘g
  ProfMorphism counit;
};
RightExtension right_extend(const Profunctor& g, const Profunctor& h);

/// θ ↦ counit∘(f∘θ) as a map of 2-cell sets Mod(k, {|f,h|}) -> Mod(f∘k, h);
/// true when it is a bijection.
bool lift_bijection_holds(const Profunctor& f, const Profunctor& h, const Profunctor& k);
/// θ ↦ counit∘(θ∘g) as a map Mod(k, [[g,h]]) -> Mod(k∘g, h).
bool extend_bijection_holds(const Profunctor& g, const Profunctor& h, const Profunctor& k);

struct ProfAdjunction {
  Profunctor right;
  Composite right_after_left;  // right∘left: A ⇸ A
  Composite left_after_right;  // left∘right: B ⇸ B
  ProfMorphism unit;           // 1_A => right∘left
  ProfMorphism counit;         // left∘right => 1_B
};

/// Decides whether f: A ⇸ B has a right adjoint by testing whether the
/// canonical map {|f,1|}∘f -> {|f,f|} is invertible. Triangle identities
/// are checked before returning.
std::optional<ProfAdjunction> has_right_adjoint(const Profunctor& f);

/// Canonical isomorphisms of the bicategory, each verified invertible.
ProfMorphism left_unitor(const Profunctor& f);   // 1_B∘f => f
ProfMorphism right_unitor(const Profunctor& f);  // f∘1_A => f
/// (h∘g)∘f => h∘(g∘f), as a map from the cells of the first composite.
ProfMorphism associator(const Profunctor& h, const Profunctor& g, const Profunctor& f);

}  // namespace fincat
