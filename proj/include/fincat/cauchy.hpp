#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "fincat/profunctor.hpp"

namespace fincat {

/// L(φ)(k) = Nat(φ, Yk), covariant in k.
struct IsbellLeft {
  SetFunctor functor;
  std::vector<NatSet> cells;
};
IsbellLeft isbell_left(const SetFunctor& phi);

/// R(ψ)(k) = Nat(ψ, K(k, -)) for a covariant ψ; a presheaf.
struct IsbellRight {
  SetFunctor functor;
  std::vector<NatSet> cells;
};
IsbellRight isbell_right(const SetFunctor& psi);

/// φ => R L φ and ψ => L R ψ.
NatTrans isbell_unit(const SetFunctor& phi);
NatTrans isbell_counit(const SetFunctor& psi);

struct SmallProjectiveReport {
  bool small_projective = false;
  int colimit_size = 0;   // |φ ∗ L(φ)|
  int endo_size = 0;      // |Nat(φ, φ)|
};
/// Tests whether the canonical map φ ∗ L(φ) -> Nat(φ, φ) is bijective.
SmallProjectiveReport small_projective_report(const SetFunctor& phi);
bool is_small_projective(const SetFunctor& phi);

/// φ as a retract of a representable: r∘s = 1 with s: φ -> Yb, r: Yb -> φ.
struct Retract {
  int object = -1;
  NatTrans section;
  NatTrans retraction;
};
std::optional<Retract> retract_oracle(const SetFunctor& phi);

/// Idempotent-splitting completion.
struct CauchyCompletion {
  CategoryRef base;
  CategoryRef completion;
  Functor embedding;
  std::vector<int> idempotents;               // completion object -> idempotent of base
  std::vector<std::array<int, 3>> morphisms;  // completion morphism -> (source object, target object, base morphism)
};
CauchyCompletion cauchy_completion(const CategoryRef& a);

/// Every presheaf Q(A)(Z-, p) on A is small projective, and equals the image
/// of the idempotent p acting on its representable.
bool verify_completion(const CauchyCompletion& q);

struct DualityResult {
  Equivalence equivalence;     // opposite(Q(A^op)) -> Q(A)
  bool confirmed_by_search = false;
};
/// Identity-on-idempotents equivalence opposite(Q(A^op)) ≃ Q(A), validated
/// and cross-checked against find_equivalence.
DualityResult q_duality(const CategoryRef& a, std::uint64_t budget = kDefaultSearchBudget);

struct MoritaResult {
  bool equivalent = false;
  std::optional<Equivalence> witness;  // Q(A) -> Q(B)
  CategoryRef qa;
  CategoryRef qb;
};
MoritaResult morita_equivalent(const CategoryRef& a, const CategoryRef& b, std::uint64_t budget = kDefaultSearchBudget);

/// A small projective φ with the covariant ψ whose module is right adjoint to φ̄.
struct DualPair {
  SetFunctor phi;
  SetFunctor psi;
  ProfAdjunction adjunction;  // φ̄ ⊣ ψ̲
};
std::optional<DualPair> dual_pair(const SetFunctor& phi);

struct DualCheck {
  std::optional<CategoryColimit> colimit;  // φ ∗ F
  std::optional<CategoryColimit> limit;    // {ψ, F}
  bool consistent = false;  // both absent, or both present with isomorphic apexes
};
DualCheck dual_limit_colimit(const DualPair& pair, const Functor& f);

/// The canonical map φ ∗ G -> Nat(ψ, G) built from the counit of φ̄ ⊣ ψ̲ is bijective.
bool flem_holds(const DualPair& pair, const SetFunctor& g);

struct AbsoluteReport {
  int instances = 0;  // (diagram, functor) pairs with an existing colimit
  std::vector<std::string> violations;
};
/// For every diagram S: K -> C with a φ-colimit in C, and every sampled
/// functor out of C, checks that the colimit is preserved.
AbsoluteReport check_absolute_sampled(const SetFunctor& phi, const std::vector<Functor>& sample,
                                      std::uint64_t budget = kDefaultSearchBudget);

/// All functors between small sample categories, plus representable
/// functors from FinSet{1,2} into FinSet{1,2,4}.
std::vector<Functor> absolute_sample();

}  // namespace fincat
