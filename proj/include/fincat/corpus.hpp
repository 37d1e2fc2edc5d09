#pragma once

#include <random>
#include <string>
#include <vector>

#include "fincat/limits.hpp"

namespace fincat {

/// The monoid {1, e} with e·e = e, as a one-object category.
CategoryRef idempotent_monoid();
/// The five-element lattice M3: bottom < a, b, c < top.
CategoryRef diamond_lattice();
/// Full subcategory of FinSet on sets of the given sizes. Morphisms are all
/// functions, named like "2>1:00".
CategoryRef finset_category(const std::vector<int>& sizes);
/// The function a morphism of a finset_category stands for.
Map finset_function(const Category& c, int f);

struct NamedCategory {
  std::string name;
  CategoryRef category;
};
/// I, Empty, Two, span, cospan, parallel, M, Z2, Z3, M3, discrete2, chain3.
const std::vector<NamedCategory>& fixture_categories();
CategoryRef fixture_category(const std::string& name);

/// The terminal presheaf Δ1 and the initial presheaf Δ0.
SetFunctor terminal_presheaf(const CategoryRef& base);
SetFunctor initial_presheaf(const CategoryRef& base);

/// S: span^op x Z/n -> FinSet with S(a) = 1 and S(b) = S(c) = Z/n, where
/// Z/n translates both copies. Its limit over the span is a pullback of
/// free orbits, the standard witness that orbits do not commute with pullbacks.
Bifunctor group_cospan_diagram(int n);

struct NamedPresheaf {
  std::string name;
  SetFunctor presheaf;
};
/// Representables, Δ0, Δ1 and small enumerated presheaves on the fixture categories.
std::vector<NamedPresheaf> presheaf_corpus();

/// Every presheaf (or covariant functor) with all sets of size <= max_size,
/// one per isomorphism class.
std::vector<SetFunctor> enumerate_presheaves(const CategoryRef& base, int max_size,
                                             Variance variance = Variance::contra);

/// Small categories for randomized checks: fixtures with at most three
/// objects, and random preorders on up to three elements.
CategoryRef random_small_category(std::mt19937& rng);
SetFunctor random_set_functor(const CategoryRef& base, int max_size, Variance variance, std::mt19937& rng);
/// Uniform among all functors source -> target; nullopt when there are none.
std::optional<Functor> random_functor(const CategoryRef& source, const CategoryRef& target, std::mt19937& rng);

}  // namespace fincat
