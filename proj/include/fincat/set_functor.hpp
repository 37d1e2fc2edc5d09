#pragma once

#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "fincat/category.hpp"

namespace fincat {

/// A function between finite sets {0..n-1} -> {0..m-1}.
using Map = std::vector<int>;

enum class Variance { contra, co };

/// A functor base -> FinSet (co) or base^op -> FinSet (contra, a presheaf).
///
/// actions[f] for f: a -> b is a function sizes[b] -> sizes[a] when
/// contravariant and sizes[a] -> sizes[b] when covariant. Elements are
/// always 0..n-1.
struct SetFunctor {
  CategoryRef base;
  Variance variance = Variance::contra;
  std::vector<int> sizes;
  std::vector<Map> actions;

  int size(int a) const { return sizes[a]; }
  int act(int f, int x) const { return actions[f][x]; }
  /// Object whose set the action of f reads from / writes to.
  int action_source(int f) const { return variance == Variance::contra ? base->tgt(f) : base->src(f); }
  int action_target(int f) const { return variance == Variance::contra ? base->src(f) : base->tgt(f); }
  int total_size() const;
};

bool operator==(const SetFunctor& a, const SetFunctor& b);

/// Same data read on the opposite category: a presheaf on K is a covariant
/// functor on K^op and vice versa.
SetFunctor flip(const SetFunctor& f);

/// Family of functions components[a]: F(a) -> G(a).
struct NatTrans {
  std::vector<Map> components;

  bool operator==(const NatTrans&) const = default;
  auto operator<=>(const NatTrans&) const = default;
};

ValidationReport validate(const SetFunctor& f);
ValidationReport validate(const SetFunctor& from, const SetFunctor& to, const NatTrans& alpha);

NatTrans identity_nat(const SetFunctor& f);
/// beta after alpha.
NatTrans compose(const NatTrans& beta, const NatTrans& alpha);
bool is_isomorphism(const NatTrans& alpha);

/// Constraint graph shared by every "natural family" search: nodes carry a
/// function dom_size -> cod_size, and each edge demands
///   value[to][dom_map[x]] == cod_map[value[from][x]].
struct ActionView {
  struct Edge {
    int from;
    int to;
    const Map* dom_map;
    const Map* cod_map;
  };
  std::vector<int> dom_sizes;
  std::vector<int> cod_sizes;
  std::vector<Edge> edges;
};

ActionView nat_view(const SetFunctor& from, const SetFunctor& to);

enum class NatMode { all, isomorphisms };

/// Enumerates every family satisfying the view's constraints, in a fixed
/// order that depends only on the view. visit returns false to stop.
void for_each_solution(const ActionView& view, NatMode mode,
                       const std::function<bool(const std::vector<Map>&)>& visit);

void for_each_nat(const SetFunctor& from, const SetFunctor& to, NatMode mode,
                  const std::function<bool(const NatTrans&)>& visit);

/// All natural transformations from -> to, sorted, with an index for lookup.
class NatSet {
 public:
  NatSet() = default;
  explicit NatSet(std::vector<NatTrans> elements);

  int size() const { return static_cast<int>(elements_.size()); }
  const NatTrans& operator[](int i) const { return elements_[i]; }
  const std::vector<NatTrans>& elements() const { return elements_; }
  /// Index of alpha, or -1.
  int find(const NatTrans& alpha) const;

 private:
  std::vector<NatTrans> elements_;
  std::map<NatTrans, int> index_;
};

NatSet nat_transformations(const SetFunctor& from, const SetFunctor& to);
std::uint64_t nat_count(const SetFunctor& from, const SetFunctor& to);
std::optional<NatTrans> find_isomorphism(const SetFunctor& a, const SetFunctor& b);
bool is_isomorphic(const SetFunctor& a, const SetFunctor& b);

/// Cheap isomorphism invariant used to bucket presheaves before full testing.
std::vector<int> signature(const SetFunctor& f);

SetFunctor constant_functor(const CategoryRef& base, Variance variance, int n);
/// base(-, b) as a presheaf.
SetFunctor representable(const CategoryRef& base, int b);
/// base(a, -) as a covariant functor.
SetFunctor corepresentable(const CategoryRef& base, int a);

/// F∘G for G: B -> base(F); the variance of F is kept.
SetFunctor precompose(const SetFunctor& f, const Functor& g);

/// Category of elements. A morphism (k,x) -> (k',x') is a base morphism u
/// with act(u, x) = x'. For a presheaf u runs k' -> k in the base, so the
/// projection lands in base^op; for a covariant functor it lands in base.
struct Elements {
  CategoryRef category;
  Functor projection;
  std::vector<std::pair<int, int>> element;  // object -> (k, x)
  std::vector<int> offset;                   // first object id of the fibre over k
  int object_of(int k, int x) const { return offset[k] + x; }
};
Elements category_of_elements(const SetFunctor& f);

}  // namespace fincat
