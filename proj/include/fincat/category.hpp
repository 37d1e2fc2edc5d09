#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fincat/error.hpp"

namespace fincat {

class Category;
using CategoryRef = std::shared_ptr<const Category>;

struct MorphismData {
  std::string name;
  int src = 0;
  int tgt = 0;
};

/// A finite category given by explicit tables.
///
/// Objects and morphisms are numbered 0..n-1. The composition table stores
/// g∘f at index g * morphism_count() + f, or -1 where no composite is
/// recorded. Construction only checks that the tables are well formed; the
/// category laws are checked by validate().
class Category {
  struct Token {};

 public:
  Category(Token, std::vector<std::string> objects, std::vector<MorphismData> morphisms,
           std::vector<int> identities, std::vector<int> compose);
  Category(const Category&) = delete;
  Category& operator=(const Category&) = delete;

  /// Throws MalformedTable on out-of-range ids, duplicate names, or an
  /// identity whose endpoints differ from its object.
  static CategoryRef make(std::vector<std::string> objects, std::vector<MorphismData> morphisms,
                          std::vector<int> identities, std::vector<int> compose);

  int object_count() const { return static_cast<int>(objects_.size()); }
  int morphism_count() const { return static_cast<int>(morphisms_.size()); }

  const std::string& object_name(int a) const { return objects_[a]; }
  const std::string& morphism_name(int f) const { return morphisms_[f].name; }
  int src(int f) const { return morphisms_[f].src; }
  int tgt(int f) const { return morphisms_[f].tgt; }
  int identity(int a) const { return identities_[a]; }
  bool is_identity(int f) const { return identities_[src(f)] == f; }

  /// g∘f, or -1 when the table has no entry.
  int compose(int g, int f) const { return compose_[static_cast<std::size_t>(g) * morphism_count() + f]; }
  bool composable(int g, int f) const { return tgt(f) == src(g); }

  std::span<const int> hom(int a, int b) const {
    const auto& h = hom_[static_cast<std::size_t>(a) * object_count() + b];
    return {h.data(), h.size()};
  }
  int hom_size(int a, int b) const { return static_cast<int>(hom(a, b).size()); }
  /// Position of f inside hom(src f, tgt f).
  int hom_position(int f) const { return hom_position_[f]; }

  std::optional<int> object_id(std::string_view name) const;
  std::optional<int> morphism_id(std::string_view name) const;

  const std::vector<std::string>& object_names() const { return objects_; }
  const std::vector<MorphismData>& morphisms() const { return morphisms_; }
  const std::vector<int>& identities() const { return identities_; }
  const std::vector<int>& compose_table() const { return compose_; }

 private:
  friend CategoryRef opposite(const CategoryRef& c);

  std::vector<std::string> objects_;
  std::vector<MorphismData> morphisms_;
  std::vector<int> identities_;
  std::vector<int> compose_;
  std::vector<std::vector<int>> hom_;
  std::vector<int> hom_position_;

  mutable std::once_flag op_once_;
  mutable CategoryRef op_;
  std::weak_ptr<const Category> op_of_;
};

/// Same object and morphism ids with src/tgt swapped and composition reversed.
/// opposite(opposite(c)) returns c itself while c is alive.
CategoryRef opposite(const CategoryRef& c);

/// Names, endpoints, identities and composition all agree.
bool structurally_equal(const Category& a, const Category& b);

/// Functor between finite categories given by its object and morphism maps.
struct Functor {
  CategoryRef source;
  CategoryRef target;
  std::vector<int> objects;
  std::vector<int> morphisms;

  int obj(int a) const { return objects[a]; }
  int mor(int f) const { return morphisms[f]; }
};

Functor identity_functor(const CategoryRef& c);
/// g after f.
Functor compose(const Functor& g, const Functor& f);
/// Same object and morphism maps, read as source^op -> target^op.
Functor opposite(const Functor& f);
bool operator==(const Functor& a, const Functor& b);

/// Transformation between functors F, G: A -> B; one B-morphism per object of A.
struct FunctorNat {
  std::vector<int> components;
};

/// One violated law together with the ids that witness it.
struct Violation {
  std::string law;
  std::vector<std::string> witness;
};

struct ValidationReport {
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
  std::string summary() const;
};

ValidationReport validate(const Category& c);
ValidationReport validate(const Functor& f);
ValidationReport validate(const Functor& f, const Functor& g, const FunctorNat& alpha);

bool is_filtered(const Category& c);
bool is_connected(const Category& c);

/// Inverse of f when f is an isomorphism.
std::optional<int> inverse(const Category& c, int f);

/// Canonical representative (least id) of each object's isomorphism class.
std::vector<int> isomorphism_classes(const Category& c);
int isomorphism_class_count(const Category& c);

/// Full subcategory on the listed objects, renumbered in the given order.
/// When morphism_ids is non-null it receives the original id of each new morphism.
CategoryRef full_subcategory(const Category& c, std::span<const int> objects,
                             std::vector<int>* morphism_ids = nullptr);

/// Full subcategory on one representative per isomorphism class.
struct Skeleton {
  CategoryRef category;
  std::vector<int> representatives;  // skeleton object -> original object
  std::vector<int> morphism_ids;     // skeleton morphism -> original morphism
};
Skeleton skeleton(const Category& c);

CategoryRef product(const Category& a, const Category& b);

/// Calls visit for every functor source -> target, in lexicographic order
/// of object map then morphism map. visit returns false to stop early.
/// Throws BudgetExceeded after `budget` search nodes.
void for_each_functor(const CategoryRef& source, const CategoryRef& target,
                      const std::function<bool(const Functor&)>& visit,
                      std::uint64_t budget = 1'000'000);
std::vector<Functor> all_functors(const CategoryRef& source, const CategoryRef& target,
                                  std::uint64_t budget = 1'000'000);

bool is_fully_faithful(const Functor& f);

struct Equivalence {
  Functor forward;
  Functor backward;
  FunctorNat unit;    // id => backward∘forward
  FunctorNat counit;  // forward∘backward => id
};

inline constexpr std::uint64_t kDefaultSearchBudget = 1'000'000;

/// Searches for an equivalence by matching skeletons. Returns nullopt when
/// the skeletons are not isomorphic; throws BudgetExceeded when the search
/// could not decide within `budget` nodes.
std::optional<Equivalence> find_equivalence(const CategoryRef& a, const CategoryRef& b,
                                            std::uint64_t budget = kDefaultSearchBudget);

/// Checks functoriality of both legs, naturality, and invertibility of unit and counit.
ValidationReport validate(const Equivalence& e);

// Builders for the standard shapes.
CategoryRef unit_category();                     // I
CategoryRef empty_category();                    // 0
CategoryRef discrete_category(int n);
CategoryRef arrow_category();                    // Two: a -> b
CategoryRef span_category();                     // b <- a -> c
CategoryRef cospan_category();                   // a -> c <- b
CategoryRef parallel_pair_category();            // f, g: a -> b
CategoryRef chain_category(int n);               // 0 -> 1 -> ... -> n-1

/// One-object category whose morphisms are the monoid elements;
/// compose(g, f) = table[g][f]. Element `unit` is the identity.
CategoryRef monoid_category(std::vector<std::string> elements,
                            const std::vector<std::vector<int>>& table, int unit = 0,
                            std::string object = "*");
CategoryRef cyclic_group(int n);

/// Poset category from a reflexive, transitive relation leq[i][j] = (i <= j).
CategoryRef poset_category(std::vector<std::string> elements,
                           const std::vector<std::vector<bool>>& leq);

/// Free category on a graph with no cycles.
struct GraphEdge {
  std::string name;
  int src;
  int tgt;
};
CategoryRef free_category(std::vector<std::string> objects, const std::vector<GraphEdge>& edges);

}  // namespace fincat
