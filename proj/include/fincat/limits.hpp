#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fincat/set_functor.hpp"

namespace fincat {

#ifdef NDEBUG
inline constexpr bool kCrossCheckDefault = false;
#else
inline constexpr bool kCrossCheckDefault = true;
#endif

/// Limit of a diagram in FinSet. The diagram is any SetFunctor; for a
/// presheaf the indexing category is base^op.
struct SetLimit {
  int apex = 0;
  std::vector<std::vector<int>> families;  // apex element -> matching family, one entry per object
  std::vector<Map> legs;                   // legs[k]: apex -> D(k)
};

/// Colimit in FinSet: disjoint union modulo the generated equivalence.
/// Classes are numbered in order of their least member, and the least member
/// of each class is its representative.
struct SetColimit {
  int apex = 0;
  std::vector<Map> legs;                              // legs[k]: D(k) -> apex
  std::vector<std::pair<int, int>> representatives;  // class -> (k, x)
};

SetLimit finset_limit(const SetFunctor& diagram);
SetColimit finset_colimit(const SetFunctor& diagram);

/// A functor contra^op x co -> FinSet.
struct Bifunctor {
  CategoryRef contra;
  CategoryRef co;
  std::vector<int> sizes;  // [b * co->object_count() + a]
  std::vector<Map> left;   // [u * co->object_count() + a]; u: b -> b' acts B(b', a) -> B(b, a)
  std::vector<Map> right;  // [b * co->morphism_count() + v]; v: a -> a' acts B(b, a) -> B(b, a')

  int size(int b, int a) const { return sizes[static_cast<std::size_t>(b) * co->object_count() + a]; }
  const Map& left_action(int u, int a) const { return left[static_cast<std::size_t>(u) * co->object_count() + a]; }
  const Map& right_action(int b, int v) const {
    return right[static_cast<std::size_t>(b) * co->morphism_count() + v];
  }
};

ValidationReport validate(const Bifunctor& b);

/// B(-, a) as a presheaf on contra.
SetFunctor column(const Bifunctor& b, int a);
/// B(b, -) as a covariant functor on co.
SetFunctor row(const Bifunctor& b, int x);

/// c(-, -) on a single category.
Bifunctor hom_bifunctor(const CategoryRef& c);
/// (b, a) -> p(b) x q(a); the pair (x, y) is element x * q(a) + y.
Bifunctor tensor(const SetFunctor& p, const SetFunctor& q);
/// Fixes the first variable's category and swaps roles: B^t(a, b) = B(b, a)
/// read as a bifunctor co^op x contra^op -> FinSet.
Bifunctor transpose(const Bifunctor& b);

/// Families e_k in B(k, k) with B(j, u) e_j = B(u, k) e_k for every u: j -> k.
struct EndResult {
  std::vector<std::vector<int>> families;
  int size() const { return static_cast<int>(families.size()); }
};
EndResult end(const Bifunctor& b);

/// Disjoint union over objects, quotiented.
struct Quotient {
  int size = 0;
  std::vector<int> offset;                            // per object
  std::vector<int> class_of;                          // flattened element -> class
  std::vector<std::pair<int, int>> representatives;  // class -> (k, x), least member
  int cls(int k, int x) const { return class_of[offset[k] + x]; }
};
/// Disjoint union of B(k, k) modulo B(u, j) z ~ B(k, u) z for u: j -> k, z in B(k, j).
Quotient coend(const Bifunctor& b);

/// {φ, T} for a presheaf φ and T: K^op -> FinSet (also a presheaf on K).
struct WeightedLimit {
  NatSet apex;                          // Nat(φ, T)
  std::optional<SetLimit> via_elements;  // conical limit of T∘d over el(φ)
  Map comparison;                        // apex -> via_elements->apex
  int size() const { return apex.size(); }
  /// Counit component at (k, x in φk), evaluated at an apex element.
  int counit(int k, int x, int element) const { return apex[element].components[k][x]; }
};

/// φ ∗ S for a presheaf φ and a covariant S: K -> FinSet.
struct WeightedColimit {
  Quotient apex;                           // coend of φ(j) x S(k)
  std::vector<int> diagram_sizes;          // S(k), to decode pairs
  std::optional<SetColimit> via_elements;  // conical colimit of S∘d^op over el(φ)^op
  Map comparison;                          // apex -> via_elements->apex
  int size() const { return apex.size; }
  /// Class of [x, s] with x in φ(k), s in S(k).
  int cls(int k, int x, int s) const { return apex.cls(k, x * diagram_sizes[k] + s); }
};

/// Both paths are run when cross_check is set; disagreement throws InternalMismatch.
WeightedLimit weighted_limit(const SetFunctor& weight, const SetFunctor& diagram,
                             bool cross_check = kCrossCheckDefault);
WeightedColimit weighted_colimit(const SetFunctor& weight, const SetFunctor& diagram,
                                 bool cross_check = kCrossCheckDefault);

/// A(S-, a) as a presheaf on the diagram's domain.
SetFunctor hom_into(const Functor& diagram, int a);
/// A(a, T-) for T: K^op -> A, as a presheaf on K.
SetFunctor hom_from(int a, const Functor& diagram);

/// Weighted (co)limit inside a finite category: apex object and the
/// universal (co)cone, components[k][x] a morphism of the target.
struct CategoryColimit {
  int apex = -1;
  NatTrans cocone;
};

/// Searches the target for an object corepresenting a -> Nat(φ, A(S-, a));
/// lowest object id wins.
std::optional<CategoryColimit> colimit_in_category(const SetFunctor& weight, const Functor& diagram);
/// {φ, T} for T: K^op -> A; cone components[k][x]: apex -> T(k).
std::optional<CategoryColimit> limit_in_category(const SetFunctor& weight, const Functor& diagram);

struct PreservationVerdict {
  bool preserved = false;
  std::string reason;
};

/// Does F: A -> B send the given colimit of S to a colimit of F∘S?
PreservationVerdict preserves_weighted_colimit(const Functor& f, const SetFunctor& weight, const Functor& diagram,
                                               const CategoryColimit& colimit);
/// Same for a covariant G: A -> FinSet, compared with φ ∗ (G∘S).
PreservationVerdict preserves_colimit_into_set(const SetFunctor& g, const SetFunctor& weight,
                                               const Functor& diagram, const CategoryColimit& colimit);
/// Does a presheaf ψ on A turn the colimit into a limit: ψ(c) ≅ Nat(φ, ψ∘S)?
PreservationVerdict presheaf_preserves_as_limit(const SetFunctor& psi, const SetFunctor& weight,
                                                const Functor& diagram, const CategoryColimit& colimit);

}  // namespace fincat
