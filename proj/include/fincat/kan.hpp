#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fincat/limits.hpp"

namespace fincat {

/// A(-, a).
SetFunctor yoneda_embed(const CategoryRef& a, int object);
/// The natural transformation Y(u): Ya -> Yb for u: a -> b.
NatTrans yoneda_morphism(const CategoryRef& a, int u);

struct LanResult {
  SetFunctor extension;                    // covariant on the codomain of K
  NatTrans unit;                           // T => Lan∘K, one component per object of A
  std::vector<WeightedColimit> pointwise;  // C(K-, c) * T for each object c
};

/// Pointwise left Kan extension of T: A -> FinSet along K: A -> C.
LanResult lan(const Functor& k, const SetFunctor& t);

/// b -> B(G-, b), together with the action of each B-morphism.
struct Nerve {
  std::vector<SetFunctor> values;
  std::vector<NatTrans> actions;  // per morphism h: b -> b', values[b] => values[b']
};
Nerve nerve(const Functor& g);

/// Finite full subcategory of the presheaf category, with every natural
/// transformation between the members as a morphism.
struct PresheafCategory {
  CategoryRef base;
  CategoryRef category;
  std::vector<SetFunctor> members;
  std::vector<NatTrans> morphisms;  // morphism id -> natural transformation
};
PresheafCategory materialize(const CategoryRef& base, const std::vector<SetFunctor>& members);

/// φ ∗ (W∘S) computed objectwise, where W is the inclusion of the
/// materialized subcategory into presheaves.
SetFunctor pointwise_colimit(const SetFunctor& weight, const Functor& diagram, const PresheafCategory& presheaves);

/// How a collection member was obtained.
struct Provenance {
  enum class Kind { representable, colimit };
  Kind kind = Kind::representable;
  int object = -1;                  // for representables
  std::string weight_name;          // for colimits
  std::optional<SetFunctor> weight;
  std::optional<Functor> diagram;   // into materialize(members at diagram_members)
  std::vector<int> diagram_members;
};

/// Presheaves on one base, pairwise non-isomorphic.
class PresheafCollection {
 public:
  explicit PresheafCollection(CategoryRef base) : base_(std::move(base)) {}

  const CategoryRef& base() const { return base_; }
  int size() const { return static_cast<int>(members_.size()); }
  const SetFunctor& operator[](int i) const { return members_[i]; }
  const std::vector<SetFunctor>& members() const { return members_; }
  const Provenance& provenance(int i) const { return provenance_[i]; }

  /// Index of a member isomorphic to f, or -1.
  int find(const SetFunctor& f) const;
  /// Adds f unless an isomorphic member exists; returns its index and whether it was new.
  std::pair<int, bool> add(SetFunctor f, Provenance how);

  /// Rebuilds member i from its provenance and checks the result is isomorphic to it.
  bool replay(int i) const;

 private:
  CategoryRef base_;
  std::vector<SetFunctor> members_;
  std::vector<Provenance> provenance_;
  std::map<std::vector<int>, std::vector<int>> buckets_;
};

/// Collection holding the representables of the base, in object order.
PresheafCollection representables(const CategoryRef& base);

}  // namespace fincat
