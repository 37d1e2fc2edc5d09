#include "fincat/category.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <unordered_set>

#include "union_find.hpp"

namespace fincat {

namespace {

std::string join_witness(const std::vector<std::string>& w) {
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) out += ", ";
    out += w[i];
  }
  return out;
}

// Counts search nodes and throws once the budget is spent.
struct NodeBudget {
  std::uint64_t limit;
  std::uint64_t used = 0;
  void tick(const char* what) {
    if (++used > limit) throw BudgetExceeded(std::string(what) + ": search budget of " + std::to_string(limit) + " nodes exhausted");
  }
};

}  // namespace

Category::Category(Token, std::vector<std::string> objects, std::vector<MorphismData> morphisms,
                   std::vector<int> identities, std::vector<int> compose)
    : objects_(std::move(objects)),
      morphisms_(std::move(morphisms)),
      identities_(std::move(identities)),
      compose_(std::move(compose)) {
  const auto n = objects_.size();
  hom_.assign(n * n, {});
  hom_position_.assign(morphisms_.size(), 0);
  for (int f = 0; f < morphism_count(); ++f) {
    auto& h = hom_[static_cast<std::size_t>(src(f)) * n + tgt(f)];
    hom_position_[f] = static_cast<int>(h.size());
    h.push_back(f);
  }
}

CategoryRef Category::make(std::vector<std::string> objects, std::vector<MorphismData> morphisms,
                           std::vector<int> identities, std::vector<int> compose) {
  const int n = static_cast<int>(objects.size());
  const int m = static_cast<int>(morphisms.size());
  std::unordered_set<std::string> seen;
  for (const auto& o : objects) {
    if (!seen.insert(o).second) throw MalformedTable("duplicate object name '" + o + "'");
  }
  seen.clear();
  for (const auto& mor : morphisms) {
    if (!seen.insert(mor.name).second) throw MalformedTable("duplicate morphism name '" + mor.name + "'");
    if (mor.src < 0 || mor.src >= n || mor.tgt < 0 || mor.tgt >= n) {
      throw MalformedTable("morphism '" + mor.name + "' refers to an unknown object");
    }
  }
  if (static_cast<int>(identities.size()) != n) throw MalformedTable("identity table must have one entry per object");
  for (int a = 0; a < n; ++a) {
    const int id = identities[a];
    if (id < 0 || id >= m) throw MalformedTable("identity of '" + objects[a] + "' is not a morphism");
    if (morphisms[id].src != a || morphisms[id].tgt != a) {
      throw MalformedTable("identity of '" + objects[a] + "' is not an endomorphism of it");
    }
  }
  if (compose.size() != static_cast<std::size_t>(m) * m) throw MalformedTable("composition table has the wrong size");
  for (int h : compose) {
    if (h < -1 || h >= m) throw MalformedTable("composition table refers to an unknown morphism");
  }
  return std::make_shared<const Category>(Token{}, std::move(objects), std::move(morphisms), std::move(identities),
                                          std::move(compose));
}

std::optional<int> Category::object_id(std::string_view name) const {
  for (int a = 0; a < object_count(); ++a) {
    if (objects_[a] == name) return a;
  }
  return std::nullopt;
}

std::optional<int> Category::morphism_id(std::string_view name) const {
  for (int f = 0; f < morphism_count(); ++f) {
    if (morphisms_[f].name == name) return f;
  }
  return std::nullopt;
}

CategoryRef opposite(const CategoryRef& c) {
  if (auto back = c->op_of_.lock()) return back;
  std::call_once(c->op_once_, [&] {
    const int m = c->morphism_count();
    std::vector<MorphismData> mors = c->morphisms_;
    for (auto& mor : mors) std::swap(mor.src, mor.tgt);
    std::vector<int> comp(static_cast<std::size_t>(m) * m, -1);
    for (int g = 0; g < m; ++g) {
      for (int f = 0; f < m; ++f) comp[static_cast<std::size_t>(g) * m + f] = c->compose(f, g);
    }
    auto op = std::make_shared<Category>(Category::Token{}, c->objects_, std::move(mors), c->identities_,
                                         std::move(comp));
    op->op_of_ = c;
    c->op_ = std::move(op);
  });
  return c->op_;
}

bool structurally_equal(const Category& a, const Category& b) {
  if (&a == &b) return true;
  if (a.object_names() != b.object_names() || a.identities() != b.identities() ||
      a.compose_table() != b.compose_table() || a.morphism_count() != b.morphism_count()) {
    return false;
  }
  for (int f = 0; f < a.morphism_count(); ++f) {
    const auto& x = a.morphisms()[f];
    const auto& y = b.morphisms()[f];
    if (x.name != y.name || x.src != y.src || x.tgt != y.tgt) return false;
  }
  return true;
}

Functor identity_functor(const CategoryRef& c) {
  Functor f{c, c, {}, {}};
  f.objects.resize(c->object_count());
  f.morphisms.resize(c->morphism_count());
  std::iota(f.objects.begin(), f.objects.end(), 0);
  std::iota(f.morphisms.begin(), f.morphisms.end(), 0);
  return f;
}

Functor compose(const Functor& g, const Functor& f) {
  Functor h{f.source, g.target, {}, {}};
  h.objects.reserve(f.objects.size());
  for (int a : f.objects) h.objects.push_back(g.obj(a));
  h.morphisms.reserve(f.morphisms.size());
  for (int m : f.morphisms) h.morphisms.push_back(g.mor(m));
  return h;
}

Functor opposite(const Functor& f) {
  return Functor{opposite(f.source), opposite(f.target), f.objects, f.morphisms};
}

bool operator==(const Functor& a, const Functor& b) {
  return a.objects == b.objects && a.morphisms == b.morphisms &&
         structurally_equal(*a.source, *b.source) && structurally_equal(*a.target, *b.target);
}

std::string ValidationReport::summary() const {
  if (ok()) return "pass";
  std::ostringstream out;
  out << violations.size() << " violation(s)";
  for (const auto& v : violations) out << "\n  " << v.law << ": (" << join_witness(v.witness) << ")";
  return out.str();
}

ValidationReport validate(const Category& c) {
  ValidationReport report;
  constexpr std::size_t kMaxViolations = 64;
  auto add = [&](std::string law, std::vector<std::string> witness) {
    if (report.violations.size() < kMaxViolations) report.violations.push_back({std::move(law), std::move(witness)});
  };
  const int m = c.morphism_count();
  auto name = [&](int f) { return c.morphism_name(f); };
  for (int g = 0; g < m; ++g) {
    for (int f = 0; f < m; ++f) {
      const int h = c.compose(g, f);
      if (c.composable(g, f)) {
        if (h < 0) {
          add("composition undefined on a composable pair", {name(g), name(f)});
        } else if (c.src(h) != c.src(f) || c.tgt(h) != c.tgt(g)) {
          add("composite has wrong endpoints", {name(g), name(f), name(h)});
        }
      } else if (h >= 0) {
        add("composition defined on a non-composable pair", {name(g), name(f)});
      }
    }
  }
  for (int f = 0; f < m; ++f) {
    if (c.compose(c.identity(c.tgt(f)), f) != f) add("left identity law", {name(c.identity(c.tgt(f))), name(f)});
    if (c.compose(f, c.identity(c.src(f))) != f) add("right identity law", {name(f), name(c.identity(c.src(f)))});
  }
  for (int h = 0; h < m; ++h) {
    for (int g = 0; g < m; ++g) {
      if (!c.composable(h, g)) continue;
      const int hg = c.compose(h, g);
      for (int f = 0; f < m; ++f) {
        if (!c.composable(g, f)) continue;
        const int gf = c.compose(g, f);
        if (hg < 0 || gf < 0) continue;
        const int left = c.compose(hg, f);
        const int right = c.compose(h, gf);
        if (left != right) add("associativity", {name(h), name(g), name(f)});
      }
    }
  }
  return report;
}

ValidationReport validate(const Functor& f) {
  ValidationReport report;
  const Category& a = *f.source;
  const Category& b = *f.target;
  if (static_cast<int>(f.objects.size()) != a.object_count() ||
      static_cast<int>(f.morphisms.size()) != a.morphism_count()) {
    report.violations.push_back({"functor tables do not cover the source", {}});
    return report;
  }
  for (int x : f.objects) {
    if (x < 0 || x >= b.object_count()) {
      report.violations.push_back({"object map leaves the target", {std::to_string(x)}});
      return report;
    }
  }
  for (int m : f.morphisms) {
    if (m < 0 || m >= b.morphism_count()) {
      report.violations.push_back({"morphism map leaves the target", {std::to_string(m)}});
      return report;
    }
  }
  for (int m = 0; m < a.morphism_count(); ++m) {
    const int fm = f.mor(m);
    if (b.src(fm) != f.obj(a.src(m)) || b.tgt(fm) != f.obj(a.tgt(m))) {
      report.violations.push_back({"endpoints not preserved", {a.morphism_name(m)}});
    }
  }
  for (int x = 0; x < a.object_count(); ++x) {
    if (f.mor(a.identity(x)) != b.identity(f.obj(x))) {
      report.violations.push_back({"identity not preserved", {a.object_name(x)}});
    }
  }
  if (!report.ok()) return report;
  for (int g = 0; g < a.morphism_count(); ++g) {
    for (int m = 0; m < a.morphism_count(); ++m) {
      if (!a.composable(g, m)) continue;
      const int h = a.compose(g, m);
      if (h < 0) continue;
      if (b.compose(f.mor(g), f.mor(m)) != f.mor(h)) {
        report.violations.push_back({"composition not preserved", {a.morphism_name(g), a.morphism_name(m)}});
      }
    }
  }
  return report;
}

ValidationReport validate(const Functor& f, const Functor& g, const FunctorNat& alpha) {
  ValidationReport report;
  const Category& a = *f.source;
  const Category& b = *f.target;
  if (!structurally_equal(a, *g.source) || !structurally_equal(b, *g.target)) {
    report.violations.push_back({"functors have different endpoints", {}});
    return report;
  }
  if (static_cast<int>(alpha.components.size()) != a.object_count()) {
    report.violations.push_back({"one component per object required", {}});
    return report;
  }
  for (int x = 0; x < a.object_count(); ++x) {
    const int c = alpha.components[x];
    if (c < 0 || c >= b.morphism_count() || b.src(c) != f.obj(x) || b.tgt(c) != g.obj(x)) {
      report.violations.push_back({"component has wrong endpoints", {a.object_name(x)}});
    }
  }
  if (!report.ok()) return report;
  for (int m = 0; m < a.morphism_count(); ++m) {
    const int lhs = b.compose(g.mor(m), alpha.components[a.src(m)]);
    const int rhs = b.compose(alpha.components[a.tgt(m)], f.mor(m));
    if (lhs != rhs) report.violations.push_back({"naturality square", {a.morphism_name(m)}});
  }
  return report;
}

bool is_filtered(const Category& c) {
  const int n = c.object_count();
  if (n == 0) return false;
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      bool cospan = false;
      for (int x = 0; x < n && !cospan; ++x) cospan = c.hom_size(a, x) > 0 && c.hom_size(b, x) > 0;
      if (!cospan) return false;
    }
  }
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      auto hs = c.hom(a, b);
      for (std::size_t i = 0; i < hs.size(); ++i) {
        for (std::size_t j = i + 1; j < hs.size(); ++j) {
          bool equalized = false;
          for (int x = 0; x < n && !equalized; ++x) {
            for (int h : c.hom(b, x)) {
              if (c.compose(h, hs[i]) == c.compose(h, hs[j])) {
                equalized = true;
                break;
              }
            }
          }
          if (!equalized) return false;
        }
      }
    }
  }
  return true;
}

bool is_connected(const Category& c) {
  const int n = c.object_count();
  if (n == 0) return false;
  detail::UnionFind uf(n);
  for (int f = 0; f < c.morphism_count(); ++f) uf.unite(c.src(f), c.tgt(f));
  return uf.components() == 1;
}

std::optional<int> inverse(const Category& c, int f) {
  for (int g : c.hom(c.tgt(f), c.src(f))) {
    if (c.compose(g, f) == c.identity(c.src(f)) && c.compose(f, g) == c.identity(c.tgt(f))) return g;
  }
  return std::nullopt;
}

namespace {

std::optional<int> iso_between(const Category& c, int a, int b) {
  for (int f : c.hom(a, b)) {
    if (inverse(c, f)) return f;
  }
  return std::nullopt;
}

}  // namespace

std::vector<int> isomorphism_classes(const Category& c) {
  const int n = c.object_count();
  std::vector<int> rep(n, -1);
  for (int a = 0; a < n; ++a) {
    rep[a] = a;
    for (int b = 0; b < a; ++b) {
      if (rep[b] == b && iso_between(c, b, a)) {
        rep[a] = b;
        break;
      }
    }
  }
  return rep;
}

int isomorphism_class_count(const Category& c) {
  const auto rep = isomorphism_classes(c);
  int count = 0;
  for (int a = 0; a < static_cast<int>(rep.size()); ++a) count += rep[a] == a;
  return count;
}

CategoryRef full_subcategory(const Category& c, std::span<const int> objects, std::vector<int>* morphism_ids) {
  const int n = static_cast<int>(objects.size());
  std::vector<std::string> names;
  names.reserve(n);
  for (int a : objects) names.push_back(c.object_name(a));
  std::vector<MorphismData> mors;
  std::vector<int> original;
  std::vector<int> renumber(c.morphism_count(), -1);
  std::vector<int> ids(n, -1);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int f : c.hom(objects[i], objects[j])) {
        renumber[f] = static_cast<int>(mors.size());
        mors.push_back({c.morphism_name(f), i, j});
        original.push_back(f);
      }
    }
    ids[i] = renumber[c.identity(objects[i])];
  }
  const int m = static_cast<int>(mors.size());
  std::vector<int> comp(static_cast<std::size_t>(m) * m, -1);
  for (int g = 0; g < m; ++g) {
    for (int f = 0; f < m; ++f) {
      if (mors[f].tgt != mors[g].src) continue;
      const int h = c.compose(original[g], original[f]);
      comp[static_cast<std::size_t>(g) * m + f] = h < 0 ? -1 : renumber[h];
    }
  }
  if (morphism_ids) *morphism_ids = original;
  return Category::make(std::move(names), std::move(mors), std::move(ids), std::move(comp));
}

Skeleton skeleton(const Category& c) {
  const auto rep = isomorphism_classes(c);
  Skeleton s;
  for (int a = 0; a < c.object_count(); ++a) {
    if (rep[a] == a) s.representatives.push_back(a);
  }
  s.category = full_subcategory(c, s.representatives, &s.morphism_ids);
  return s;
}

CategoryRef product(const Category& a, const Category& b) {
  const int na = a.object_count(), nb = b.object_count();
  const int ma = a.morphism_count(), mb = b.morphism_count();
  std::vector<std::string> objects;
  for (int x = 0; x < na; ++x) {
    for (int y = 0; y < nb; ++y) objects.push_back("(" + a.object_name(x) + "," + b.object_name(y) + ")");
  }
  std::vector<MorphismData> mors;
  for (int f = 0; f < ma; ++f) {
    for (int g = 0; g < mb; ++g) {
      mors.push_back({"(" + a.morphism_name(f) + "," + b.morphism_name(g) + ")", a.src(f) * nb + b.src(g),
                      a.tgt(f) * nb + b.tgt(g)});
    }
  }
  std::vector<int> ids;
  for (int x = 0; x < na; ++x) {
    for (int y = 0; y < nb; ++y) ids.push_back(a.identity(x) * mb + b.identity(y));
  }
  const int m = ma * mb;
  std::vector<int> comp(static_cast<std::size_t>(m) * m, -1);
  for (int g = 0; g < m; ++g) {
    for (int f = 0; f < m; ++f) {
      const int h1 = a.compose(g / mb, f / mb);
      const int h2 = b.compose(g % mb, f % mb);
      if (h1 >= 0 && h2 >= 0) comp[static_cast<std::size_t>(g) * m + f] = h1 * mb + h2;
    }
  }
  return Category::make(std::move(objects), std::move(mors), std::move(ids), std::move(comp));
}

namespace {

// Composition triples (g, f, g∘f) of the source, grouped by the largest id
// among the three so each is checked as soon as it is fully assigned.
std::vector<std::vector<std::array<int, 3>>> triples_by_last(const Category& c) {
  std::vector<std::vector<std::array<int, 3>>> out(c.morphism_count());
  for (int g = 0; g < c.morphism_count(); ++g) {
    for (int f = 0; f < c.morphism_count(); ++f) {
      if (!c.composable(g, f)) continue;
      const int h = c.compose(g, f);
      if (h < 0) continue;
      out[std::max({g, f, h})].push_back({g, f, h});
    }
  }
  return out;
}

class FunctorSearch {
 public:
  FunctorSearch(const CategoryRef& source, const CategoryRef& target, const std::function<bool(const Functor&)>& visit,
                std::uint64_t budget)
      : src_(*source), tgt_(*target), visit_(visit), budget_{budget}, triples_(triples_by_last(src_)) {
    current_.source = source;
    current_.target = target;
    current_.objects.assign(src_.object_count(), -1);
    current_.morphisms.assign(src_.morphism_count(), -1);
  }

  void run() { assign_object(0); }

 private:
  bool assign_object(int a) {
    if (a == src_.object_count()) return assign_morphism(0);
    for (int x = 0; x < tgt_.object_count(); ++x) {
      budget_.tick("functor enumeration");
      current_.objects[a] = x;
      if (!assign_morphism_prefix_ok(a)) continue;
      if (!assign_object(a + 1)) return false;
    }
    current_.objects[a] = -1;
    return true;
  }

  // Every morphism whose endpoints are both assigned must have a candidate.
  bool assign_morphism_prefix_ok(int a) const {
    for (int b = 0; b <= a; ++b) {
      if (!src_.hom(a, b).empty() && tgt_.hom(current_.objects[a], current_.objects[b]).empty()) return false;
      if (!src_.hom(b, a).empty() && tgt_.hom(current_.objects[b], current_.objects[a]).empty()) return false;
    }
    return true;
  }

  bool consistent(int f) const {
    for (const auto& [g, h, gh] : triples_[f]) {
      if (tgt_.compose(current_.morphisms[g], current_.morphisms[h]) != current_.morphisms[gh]) return false;
    }
    return true;
  }

  bool assign_morphism(int f) {
    if (f == src_.morphism_count()) return visit_(current_);
    const int a = current_.objects[src_.src(f)];
    const int b = current_.objects[src_.tgt(f)];
    if (src_.is_identity(f)) {
      budget_.tick("functor enumeration");
      current_.morphisms[f] = tgt_.identity(a);
      if (consistent(f) && !assign_morphism(f + 1)) return false;
      current_.morphisms[f] = -1;
      return true;
    }
    for (int candidate : tgt_.hom(a, b)) {
      budget_.tick("functor enumeration");
      current_.morphisms[f] = candidate;
      if (!consistent(f)) continue;
      if (!assign_morphism(f + 1)) return false;
    }
    current_.morphisms[f] = -1;
    return true;
  }

  const Category& src_;
  const Category& tgt_;
  const std::function<bool(const Functor&)>& visit_;
  NodeBudget budget_;
  std::vector<std::vector<std::array<int, 3>>> triples_;
  Functor current_;
};

}  // namespace

void for_each_functor(const CategoryRef& source, const CategoryRef& target,
                      const std::function<bool(const Functor&)>& visit, std::uint64_t budget) {
  FunctorSearch search(source, target, visit, budget);
  search.run();
}

std::vector<Functor> all_functors(const CategoryRef& source, const CategoryRef& target, std::uint64_t budget) {
  std::vector<Functor> out;
  for_each_functor(
      source, target,
      [&](const Functor& f) {
        out.push_back(f);
        return true;
      },
      budget);
  return out;
}

bool is_fully_faithful(const Functor& f) {
  const Category& a = *f.source;
  const Category& b = *f.target;
  for (int x = 0; x < a.object_count(); ++x) {
    for (int y = 0; y < a.object_count(); ++y) {
      const auto src_hom = a.hom(x, y);
      const auto tgt_hom = b.hom(f.obj(x), f.obj(y));
      if (src_hom.size() != tgt_hom.size()) return false;
      std::set<int> images;
      for (int m : src_hom) images.insert(f.mor(m));
      if (images.size() != src_hom.size()) return false;
    }
  }
  return true;
}

namespace {

struct Signature {
  int endo;
  std::vector<int> out;
  std::vector<int> in;
  auto operator<=>(const Signature&) const = default;
};

Signature signature(const Category& c, int a) {
  Signature s{c.hom_size(a, a), {}, {}};
  for (int b = 0; b < c.object_count(); ++b) {
    s.out.push_back(c.hom_size(a, b));
    s.in.push_back(c.hom_size(b, a));
  }
  std::sort(s.out.begin(), s.out.end());
  std::sort(s.in.begin(), s.in.end());
  return s;
}

// Isomorphism search between two (skeletal) categories.
class IsoSearch {
 public:
  IsoSearch(const Category& a, const Category& b, NodeBudget& budget)
      : a_(a), b_(b), budget_(budget), triples_(triples_by_last(a)) {}

  bool run() {
    if (a_.object_count() != b_.object_count() || a_.morphism_count() != b_.morphism_count()) return false;
    const int n = a_.object_count();
    for (int x = 0; x < n; ++x) {
      sig_a_.push_back(signature(a_, x));
      sig_b_.push_back(signature(b_, x));
    }
    auto sorted_a = sig_a_, sorted_b = sig_b_;
    std::sort(sorted_a.begin(), sorted_a.end());
    std::sort(sorted_b.begin(), sorted_b.end());
    if (sorted_a != sorted_b) return false;
    object_map_.assign(n, -1);
    used_object_.assign(n, false);
    return match_object(0);
  }

  std::vector<int> object_map_;
  std::vector<int> morphism_map_;

 private:
  bool match_object(int x) {
    if (x == a_.object_count()) return match_morphisms();
    for (int y = 0; y < b_.object_count(); ++y) {
      if (used_object_[y] || sig_a_[x] != sig_b_[y]) continue;
      budget_.tick("equivalence search");
      object_map_[x] = y;
      bool ok = true;
      for (int z = 0; z <= x && ok; ++z) {
        ok = a_.hom_size(x, z) == b_.hom_size(y, object_map_[z]) && a_.hom_size(z, x) == b_.hom_size(object_map_[z], y);
      }
      if (!ok) continue;
      used_object_[y] = true;
      if (match_object(x + 1)) return true;
      used_object_[y] = false;
    }
    object_map_[x] = -1;
    return false;
  }

  bool match_morphisms() {
    morphism_map_.assign(a_.morphism_count(), -1);
    used_morphism_.assign(b_.morphism_count(), false);
    return match_morphism(0);
  }

  bool consistent(int f) const {
    for (const auto& [g, h, gh] : triples_[f]) {
      if (b_.compose(morphism_map_[g], morphism_map_[h]) != morphism_map_[gh]) return false;
    }
    return true;
  }

  bool match_morphism(int f) {
    if (f == a_.morphism_count()) return true;
    const int x = object_map_[a_.src(f)];
    const int y = object_map_[a_.tgt(f)];
    if (a_.is_identity(f)) {
      morphism_map_[f] = b_.identity(x);
      used_morphism_[morphism_map_[f]] = true;
      if (consistent(f) && match_morphism(f + 1)) return true;
      used_morphism_[morphism_map_[f]] = false;
      morphism_map_[f] = -1;
      return false;
    }
    for (int g : b_.hom(x, y)) {
      if (used_morphism_[g] || b_.is_identity(g)) continue;
      budget_.tick("equivalence search");
      morphism_map_[f] = g;
      if (!consistent(f)) continue;
      used_morphism_[g] = true;
      if (match_morphism(f + 1)) return true;
      used_morphism_[g] = false;
    }
    morphism_map_[f] = -1;
    return false;
  }

  const Category& a_;
  const Category& b_;
  NodeBudget& budget_;
  std::vector<std::vector<std::array<int, 3>>> triples_;
  std::vector<Signature> sig_a_, sig_b_;
  std::vector<bool> used_object_;
  std::vector<bool> used_morphism_;
};

// For each object x: an isomorphism x -> rep(x), with its inverse.
struct RepresentativeIsos {
  std::vector<int> rep;
  std::vector<int> to_rep;
  std::vector<int> from_rep;
};

RepresentativeIsos representative_isos(const Category& c) {
  RepresentativeIsos r;
  r.rep = isomorphism_classes(c);
  for (int x = 0; x < c.object_count(); ++x) {
    const int iso = x == r.rep[x] ? c.identity(x) : *iso_between(c, x, r.rep[x]);
    r.to_rep.push_back(iso);
    r.from_rep.push_back(*inverse(c, iso));
  }
  return r;
}

}  // namespace

std::optional<Equivalence> find_equivalence(const CategoryRef& a, const CategoryRef& b, std::uint64_t budget) {
  const Skeleton sa = skeleton(*a);
  const Skeleton sb = skeleton(*b);
  NodeBudget nodes{budget};
  IsoSearch search(*sa.category, *sb.category, nodes);
  if (!search.run()) return std::nullopt;

  const RepresentativeIsos ra = representative_isos(*a);
  const RepresentativeIsos rb = representative_isos(*b);
  // Positions of representatives inside each skeleton.
  std::vector<int> skel_index_a(a->object_count(), -1), skel_index_b(b->object_count(), -1);
  for (int i = 0; i < static_cast<int>(sa.representatives.size()); ++i) skel_index_a[sa.representatives[i]] = i;
  for (int i = 0; i < static_cast<int>(sb.representatives.size()); ++i) skel_index_b[sb.representatives[i]] = i;
  // Morphism correspondence between representatives, in original ids.
  std::vector<int> skel_mor_a(a->morphism_count(), -1), skel_mor_b(b->morphism_count(), -1);
  for (int i = 0; i < static_cast<int>(sa.morphism_ids.size()); ++i) skel_mor_a[sa.morphism_ids[i]] = i;
  for (int i = 0; i < static_cast<int>(sb.morphism_ids.size()); ++i) skel_mor_b[sb.morphism_ids[i]] = i;
  std::vector<int> inv_objects(sb.representatives.size()), inv_morphisms(sb.morphism_ids.size());
  for (int i = 0; i < static_cast<int>(search.object_map_.size()); ++i) inv_objects[search.object_map_[i]] = i;
  for (int i = 0; i < static_cast<int>(search.morphism_map_.size()); ++i) inv_morphisms[search.morphism_map_[i]] = i;

  Equivalence e;
  e.forward = Functor{a, b, {}, {}};
  for (int x = 0; x < a->object_count(); ++x) {
    e.forward.objects.push_back(sb.representatives[search.object_map_[skel_index_a[ra.rep[x]]]]);
  }
  for (int m = 0; m < a->morphism_count(); ++m) {
    const int x = a->src(m), y = a->tgt(m);
    const int conj = a->compose(ra.to_rep[y], a->compose(m, ra.from_rep[x]));
    e.forward.morphisms.push_back(sb.morphism_ids[search.morphism_map_[skel_mor_a[conj]]]);
  }
  e.backward = Functor{b, a, {}, {}};
  for (int y = 0; y < b->object_count(); ++y) {
    e.backward.objects.push_back(sa.representatives[inv_objects[skel_index_b[rb.rep[y]]]]);
  }
  for (int m = 0; m < b->morphism_count(); ++m) {
    const int x = b->src(m), y = b->tgt(m);
    const int conj = b->compose(rb.to_rep[y], b->compose(m, rb.from_rep[x]));
    e.backward.morphisms.push_back(sa.morphism_ids[inv_morphisms[skel_mor_b[conj]]]);
  }
  // GF(x) = rep(x); FG(y) = rep(y).
  e.unit.components = ra.to_rep;
  e.counit.components = rb.from_rep;
  if (!validate(e).ok()) throw InternalMismatch("constructed equivalence failed verification");
  return e;
}

ValidationReport validate(const Equivalence& e) {
  ValidationReport report;
  auto absorb = [&](const ValidationReport& r, const std::string& where) {
    for (const auto& v : r.violations) report.violations.push_back({where + ": " + v.law, v.witness});
  };
  absorb(validate(e.forward), "forward");
  absorb(validate(e.backward), "backward");
  if (!report.ok()) return report;
  const Functor gf = compose(e.backward, e.forward);
  const Functor fg = compose(e.forward, e.backward);
  absorb(validate(identity_functor(e.forward.source), gf, e.unit), "unit");
  absorb(validate(fg, identity_functor(e.forward.target), e.counit), "counit");
  for (int c : e.unit.components) {
    if (!inverse(*e.forward.source, c)) report.violations.push_back({"unit component not invertible", {}});
  }
  for (int c : e.counit.components) {
    if (!inverse(*e.forward.target, c)) report.violations.push_back({"counit component not invertible", {}});
  }
  return report;
}

CategoryRef unit_category() { return discrete_category(1); }

CategoryRef empty_category() { return discrete_category(0); }

CategoryRef discrete_category(int n) {
  std::vector<std::string> objects;
  std::vector<MorphismData> mors;
  std::vector<int> ids;
  for (int i = 0; i < n; ++i) {
    objects.push_back(n == 1 ? "*" : std::to_string(i));
    mors.push_back({"id_" + objects.back(), i, i});
    ids.push_back(i);
  }
  std::vector<int> comp(static_cast<std::size_t>(n) * n, -1);
  for (int i = 0; i < n; ++i) comp[static_cast<std::size_t>(i) * n + i] = i;
  return Category::make(std::move(objects), std::move(mors), std::move(ids), std::move(comp));
}

CategoryRef free_category(std::vector<std::string> objects, const std::vector<GraphEdge>& edges) {
  const int n = static_cast<int>(objects.size());
  // Paths are edge sequences listed in order of traversal.
  std::vector<std::vector<int>> paths;
  std::vector<int> path_src, path_tgt;
  for (int a = 0; a < n; ++a) {
    paths.push_back({});
    path_src.push_back(a);
    path_tgt.push_back(a);
  }
  for (std::size_t i = 0; i < paths.size(); ++i) {
    if (paths.size() > 4096) throw MalformedTable("free_category: graph has a cycle or too many paths");
    for (int e = 0; e < static_cast<int>(edges.size()); ++e) {
      if (edges[e].src != path_tgt[i]) continue;
      auto p = paths[i];
      p.push_back(e);
      paths.push_back(std::move(p));
      path_src.push_back(path_src[i]);
      path_tgt.push_back(edges[e].tgt);
    }
  }
  std::map<std::pair<int, std::vector<int>>, int> index;
  std::vector<MorphismData> mors;
  for (std::size_t i = 0; i < paths.size(); ++i) {
    std::string name;
    if (paths[i].empty()) {
      name = "id_" + objects[path_src[i]];
    } else {
      for (auto it = paths[i].rbegin(); it != paths[i].rend(); ++it) {
        if (!name.empty()) name += ".";
        name += edges[*it].name;
      }
    }
    index[{path_src[i], paths[i]}] = static_cast<int>(i);
    mors.push_back({name, path_src[i], path_tgt[i]});
  }
  const int m = static_cast<int>(paths.size());
  std::vector<int> comp(static_cast<std::size_t>(m) * m, -1);
  for (int g = 0; g < m; ++g) {
    for (int f = 0; f < m; ++f) {
      if (path_tgt[f] != path_src[g]) continue;
      auto p = paths[f];
      p.insert(p.end(), paths[g].begin(), paths[g].end());
      comp[static_cast<std::size_t>(g) * m + f] = index.at({path_src[f], p});
    }
  }
  std::vector<int> ids(n);
  std::iota(ids.begin(), ids.end(), 0);
  return Category::make(std::move(objects), std::move(mors), std::move(ids), std::move(comp));
}

CategoryRef arrow_category() { return free_category({"a", "b"}, {{"f", 0, 1}}); }

CategoryRef span_category() { return free_category({"a", "b", "c"}, {{"f", 0, 1}, {"g", 0, 2}}); }

CategoryRef cospan_category() { return free_category({"a", "b", "c"}, {{"f", 0, 2}, {"g", 1, 2}}); }

CategoryRef parallel_pair_category() { return free_category({"a", "b"}, {{"f", 0, 1}, {"g", 0, 1}}); }

CategoryRef chain_category(int n) {
  std::vector<std::string> names;
  std::vector<std::vector<bool>> leq(n, std::vector<bool>(n, false));
  for (int i = 0; i < n; ++i) {
    names.push_back(std::to_string(i));
    for (int j = i; j < n; ++j) leq[i][j] = true;
  }
  return poset_category(std::move(names), leq);
}

CategoryRef monoid_category(std::vector<std::string> elements, const std::vector<std::vector<int>>& table, int unit,
                            std::string object) {
  const int m = static_cast<int>(elements.size());
  std::vector<MorphismData> mors;
  for (auto& e : elements) mors.push_back({std::move(e), 0, 0});
  std::vector<int> comp(static_cast<std::size_t>(m) * m, -1);
  if (static_cast<int>(table.size()) != m) throw MalformedTable("monoid table must be square");
  for (int g = 0; g < m; ++g) {
    if (static_cast<int>(table[g].size()) != m) throw MalformedTable("monoid table must be square");
    for (int f = 0; f < m; ++f) comp[static_cast<std::size_t>(g) * m + f] = table[g][f];
  }
  return Category::make({std::move(object)}, std::move(mors), {unit}, std::move(comp));
}

CategoryRef cyclic_group(int n) {
  std::vector<std::string> names;
  std::vector<std::vector<int>> table(n, std::vector<int>(n));
  for (int i = 0; i < n; ++i) {
    names.push_back(i == 0 ? "1" : i == 1 ? "g" : "g" + std::to_string(i));
    for (int j = 0; j < n; ++j) table[i][j] = (i + j) % n;
  }
  return monoid_category(std::move(names), table);
}

CategoryRef poset_category(std::vector<std::string> elements, const std::vector<std::vector<bool>>& leq) {
  const int n = static_cast<int>(elements.size());
  std::vector<MorphismData> mors;
  std::vector<int> id_of(n, -1);
  std::vector<std::vector<int>> mor_of(n, std::vector<int>(n, -1));
  for (int i = 0; i < n; ++i) {
    if (!leq[i][i]) throw MalformedTable("poset relation must be reflexive");
    for (int j = 0; j < n; ++j) {
      if (!leq[i][j]) continue;
      mor_of[i][j] = static_cast<int>(mors.size());
      mors.push_back({i == j ? "id_" + elements[i] : elements[i] + "<=" + elements[j], i, j});
    }
    id_of[i] = mor_of[i][i];
  }
  const int m = static_cast<int>(mors.size());
  std::vector<int> comp(static_cast<std::size_t>(m) * m, -1);
  for (int g = 0; g < m; ++g) {
    for (int f = 0; f < m; ++f) {
      if (mors[f].tgt != mors[g].src) continue;
      const int h = mor_of[mors[f].src][mors[g].tgt];
      if (h < 0) throw MalformedTable("poset relation must be transitive");
      comp[static_cast<std::size_t>(g) * m + f] = h;
    }
  }
  return Category::make(std::move(elements), std::move(mors), std::move(id_of), std::move(comp));
}

}  // namespace fincat
