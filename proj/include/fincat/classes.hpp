#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fincat/corpus.hpp"
#include "fincat/kan.hpp"

namespace fincat {

/// A finite class of weights, each a presheaf on its own small category.
struct WeightClass {
  std::string name;
  std::vector<NamedPresheaf> weights;
};

WeightClass empty_class();
/// The unique presheaf on the empty category.
WeightClass initial_class();
/// Δ1 on the monoid M = {1, e}; its colimits split the idempotent e.
WeightClass splitting_class();
/// Δ1 on the span b <- a -> c.
WeightClass pushout_class();
/// Δ1 on the empty category, discrete2, the parallel pair and the span.
WeightClass finite_colimit_class();
/// Δ1 on discrete2.
WeightClass binary_coproduct_class();

struct ClosureCaps {
  int rounds = 4;
  int members = 200;
  int set_size = 64;
  std::uint64_t budget = kDefaultSearchBudget;  // per diagram enumeration
};

struct ClosureResult {
  PresheafCollection collection;
  int rounds = 0;
  bool saturated_at_bound = false;  // the last round added nothing
  ClosureCaps cap;
  std::string cap_hit;              // which cap stopped the closure, if any
};

/// Closes the representables on A under φ ∗ S for every φ in the class and
/// every diagram S into the current collection. The round that finds
/// nothing new is counted.
ClosureResult phi_closure_bounded(const WeightClass& phi, const CategoryRef& a, const ClosureCaps& caps = {});

enum class Membership { yes, no_at_fixpoint, unknown_at_cap };
const char* to_string(Membership m);

Membership in_saturation_bounded(const SetFunctor& psi, const WeightClass& phi, const ClosureCaps& caps = {});

/// Closure members on each of the given domains, as a weight class.
WeightClass bounded_saturation(const WeightClass& phi, const std::vector<CategoryRef>& domains,
                               const ClosureCaps& caps = {});

struct CocompletenessReport {
  bool cocomplete = true;
  std::string weight;              // first weight with a missing colimit
  std::optional<Functor> witness;  // and the diagram
};
CocompletenessReport is_phi_cocomplete(const CategoryRef& n, const WeightClass& phi,
                                       std::uint64_t budget = kDefaultSearchBudget);

/// Objects a with A(a, -) preserving every Φ-colimit that exists in A.
std::vector<int> atoms(const CategoryRef& a, const WeightClass& phi, std::uint64_t budget = kDefaultSearchBudget);

/// Comparison φ ∗ {ψ, S(-, l)} -> {ψ, φ ∗ S(k, -)} for S with contra = K and co = L.
struct CommutationReport {
  int lhs = 0;
  int rhs = 0;
  Map comparison;  // built from the limit cone (φ ∗ - preserving the ψ-limit)
  Map dual_comparison;  // built from the colimit cocone ({ψ, -} preserving the φ-colimit)
  bool bijective = false;
  bool dual_bijective = false;
};
CommutationReport commutation(const SetFunctor& phi, const SetFunctor& psi, const Bifunctor& s);
bool check_commutation(const SetFunctor& phi, const SetFunctor& psi, const Bifunctor& s);

/// el(φ)^op filtered.
bool flat_for_finite_limits(const SetFunctor& phi);
/// el(φ) connected.
bool flat_for_terminal(const SetFunctor& phi);

/// ψ turns every existing Φ-colimit of N into a limit.
bool is_phi_continuous(const SetFunctor& psi, const WeightClass& phi, std::uint64_t budget = kDefaultSearchBudget);

struct RecognitionReport {
  bool fully_faithful = false;  // (i)
  bool cocomplete = false;      // (ii)
  bool generates = false;       // (iii) closure of the image reaches every object
  bool atomic = false;          // (iv) image within the atoms
  int closure_rounds = 0;
  bool all() const { return fully_faithful && cocomplete && generates && atomic; }
};
/// Throws CapExceeded when (iii) could not be decided within the caps.
RecognitionReport recognize_free_cocompletion(const Functor& g, const WeightClass& phi, const ClosureCaps& caps = {});

/// Connectedness of W/F for W the representables together with Δ0.
bool comma_connectedness_witness(const SetFunctor& f);

}  // namespace fincat
