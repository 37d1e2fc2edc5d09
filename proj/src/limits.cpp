#include "fincat/limits.hpp"

#include <map>
#include <string>

#include "union_find.hpp"

namespace fincat {

namespace {

// Independent of the propagating solver used for natural transformations:
// plain backtracking over the product, each edge checked once both ends are set.
class FamilySearch {
 public:
  using Check = std::function<bool(const std::vector<int>&)>;

  FamilySearch(std::vector<int> sizes, std::vector<std::vector<Check>> checks_at)
      : sizes_(std::move(sizes)), checks_at_(std::move(checks_at)), current_(sizes_.size(), -1) {}

  std::vector<std::vector<int>> run() {
    step(0);
    return std::move(found_);
  }

 private:
  void step(std::size_t k) {
    if (k == sizes_.size()) {
      found_.push_back(current_);
      return;
    }
    for (int x = 0; x < sizes_[k]; ++x) {
      current_[k] = x;
      bool ok = true;
      for (const auto& check : checks_at_[k]) {
        if (!check(current_)) {
          ok = false;
          break;
        }
      }
      if (ok) step(k + 1);
    }
    current_[k] = -1;
  }

  std::vector<int> sizes_;
  std::vector<std::vector<Check>> checks_at_;
  std::vector<int> current_;
  std::vector<std::vector<int>> found_;
};

Quotient quotient(const std::vector<int>& sizes, const std::function<void(detail::UnionFind&, const std::vector<int>&)>& relate) {
  Quotient q;
  q.offset.assign(sizes.size() + 1, 0);
  for (std::size_t k = 0; k < sizes.size(); ++k) q.offset[k + 1] = q.offset[k] + sizes[k];
  detail::UnionFind uf(q.offset.back());
  relate(uf, q.offset);
  q.class_of.assign(q.offset.back(), -1);
  std::vector<int> class_of_root(q.offset.back(), -1);
  for (std::size_t k = 0; k < sizes.size(); ++k) {
    for (int x = 0; x < sizes[k]; ++x) {
      const int flat = q.offset[k] + x;
      const int root = uf.find(flat);
      if (class_of_root[root] < 0) {
        class_of_root[root] = q.size++;
        q.representatives.push_back({static_cast<int>(k), x});
      }
      q.class_of[flat] = class_of_root[root];
    }
  }
  q.offset.pop_back();
  return q;
}

bool is_bijection(const Map& m, int codomain) {
  if (static_cast<int>(m.size()) != codomain) return false;
  std::vector<bool> hit(codomain, false);
  for (int y : m) {
    if (y < 0 || y >= codomain || hit[y]) return false;
    hit[y] = true;
  }
  return true;
}

}  // namespace

SetLimit finset_limit(const SetFunctor& diagram) {
  const Category& c = *diagram.base;
  const int n = c.object_count();
  std::vector<std::vector<FamilySearch::Check>> checks(n);
  for (int u = 0; u < c.morphism_count(); ++u) {
    if (c.is_identity(u)) continue;
    const int s = diagram.action_source(u), t = diagram.action_target(u);
    const Map* act = &diagram.actions[u];
    checks[std::max(s, t)].push_back([=](const std::vector<int>& fam) { return (*act)[fam[s]] == fam[t]; });
  }
  SetLimit out;
  out.families = FamilySearch(diagram.sizes, std::move(checks)).run();
  out.apex = static_cast<int>(out.families.size());
  out.legs.assign(n, {});
  for (int k = 0; k < n; ++k) {
    for (const auto& fam : out.families) out.legs[k].push_back(fam[k]);
  }
  return out;
}

SetColimit finset_colimit(const SetFunctor& diagram) {
  const Category& c = *diagram.base;
  Quotient q = quotient(diagram.sizes, [&](detail::UnionFind& uf, const std::vector<int>& offset) {
    for (int u = 0; u < c.morphism_count(); ++u) {
      const int s = diagram.action_source(u), t = diagram.action_target(u);
      for (int x = 0; x < diagram.sizes[s]; ++x) uf.unite(offset[s] + x, offset[t] + diagram.act(u, x));
    }
  });
  SetColimit out;
  out.apex = q.size;
  out.representatives = q.representatives;
  for (int k = 0; k < c.object_count(); ++k) {
    Map leg;
    for (int x = 0; x < diagram.sizes[k]; ++x) leg.push_back(q.cls(k, x));
    out.legs.push_back(std::move(leg));
  }
  return out;
}

ValidationReport validate(const Bifunctor& b) {
  ValidationReport report;
  const Category& p = *b.contra;
  const Category& q = *b.co;
  const int np = p.object_count(), nq = q.object_count();
  if (static_cast<int>(b.sizes.size()) != np * nq ||
      b.left.size() != static_cast<std::size_t>(p.morphism_count()) * nq ||
      b.right.size() != static_cast<std::size_t>(np) * q.morphism_count()) {
    report.violations.push_back({"bifunctor tables have the wrong shape", {}});
    return report;
  }
  for (int a = 0; a < nq; ++a) {
    for (const auto& v : validate(column(b, a)).violations) {
      report.violations.push_back({"first variable: " + v.law, v.witness});
    }
  }
  for (int x = 0; x < np; ++x) {
    for (const auto& v : validate(row(b, x)).violations) {
      report.violations.push_back({"second variable: " + v.law, v.witness});
    }
  }
  if (!report.ok()) return report;
  for (int u = 0; u < p.morphism_count(); ++u) {
    for (int v = 0; v < q.morphism_count(); ++v) {
      // u: x -> x', v: a -> a'. Both routes B(x', a) -> B(x, a').
      const int x = p.src(u), x2 = p.tgt(u), a = q.src(v), a2 = q.tgt(v);
      const Map& l1 = b.left_action(u, a);
      const Map& r1 = b.right_action(x, v);
      const Map& r2 = b.right_action(x2, v);
      const Map& l2 = b.left_action(u, a2);
      for (int z = 0; z < b.size(x2, a); ++z) {
        if (r1[l1[z]] != l2[r2[z]]) {
          report.violations.push_back({"actions do not commute", {p.morphism_name(u), q.morphism_name(v)}});
          break;
        }
      }
    }
  }
  return report;
}

SetFunctor column(const Bifunctor& b, int a) {
  SetFunctor f{b.contra, Variance::contra, {}, {}};
  for (int x = 0; x < b.contra->object_count(); ++x) f.sizes.push_back(b.size(x, a));
  for (int u = 0; u < b.contra->morphism_count(); ++u) f.actions.push_back(b.left_action(u, a));
  return f;
}

SetFunctor row(const Bifunctor& b, int x) {
  SetFunctor f{b.co, Variance::co, {}, {}};
  for (int a = 0; a < b.co->object_count(); ++a) f.sizes.push_back(b.size(x, a));
  for (int v = 0; v < b.co->morphism_count(); ++v) f.actions.push_back(b.right_action(x, v));
  return f;
}

Bifunctor hom_bifunctor(const CategoryRef& c) {
  const Category& cat = *c;
  const int n = cat.object_count(), m = cat.morphism_count();
  Bifunctor b{c, c, {}, {}, {}};
  for (int x = 0; x < n; ++x) {
    for (int a = 0; a < n; ++a) b.sizes.push_back(cat.hom_size(x, a));
  }
  for (int u = 0; u < m; ++u) {
    for (int a = 0; a < n; ++a) {
      Map act;
      for (int g : cat.hom(cat.tgt(u), a)) act.push_back(cat.hom_position(cat.compose(g, u)));
      b.left.push_back(std::move(act));
    }
  }
  for (int x = 0; x < n; ++x) {
    for (int v = 0; v < m; ++v) {
      Map act;
      for (int g : cat.hom(x, cat.src(v))) act.push_back(cat.hom_position(cat.compose(v, g)));
      b.right.push_back(std::move(act));
    }
  }
  return b;
}

Bifunctor tensor(const SetFunctor& p, const SetFunctor& q) {
  if (p.variance != Variance::contra || q.variance != Variance::co) {
    throw MalformedTable("tensor expects a presheaf and a covariant functor");
  }
  const Category& pc = *p.base;
  const Category& qc = *q.base;
  Bifunctor b{p.base, q.base, {}, {}, {}};
  for (int x = 0; x < pc.object_count(); ++x) {
    for (int a = 0; a < qc.object_count(); ++a) b.sizes.push_back(p.sizes[x] * q.sizes[a]);
  }
  for (int u = 0; u < pc.morphism_count(); ++u) {
    for (int a = 0; a < qc.object_count(); ++a) {
      Map act;
      for (int x = 0; x < p.sizes[pc.tgt(u)]; ++x) {
        for (int y = 0; y < q.sizes[a]; ++y) act.push_back(p.act(u, x) * q.sizes[a] + y);
      }
      b.left.push_back(std::move(act));
    }
  }
  for (int x = 0; x < pc.object_count(); ++x) {
    for (int v = 0; v < qc.morphism_count(); ++v) {
      Map act;
      for (int i = 0; i < p.sizes[x]; ++i) {
        for (int y = 0; y < q.sizes[qc.src(v)]; ++y) act.push_back(i * q.sizes[qc.tgt(v)] + q.act(v, y));
      }
      b.right.push_back(std::move(act));
    }
  }
  return b;
}

Bifunctor transpose(const Bifunctor& b) {
  Bifunctor t{opposite(b.co), opposite(b.contra), {}, {}, {}};
  const int np = b.contra->object_count(), nq = b.co->object_count();
  for (int a = 0; a < nq; ++a) {
    for (int x = 0; x < np; ++x) t.sizes.push_back(b.size(x, a));
  }
  for (int v = 0; v < b.co->morphism_count(); ++v) {
    for (int x = 0; x < np; ++x) t.left.push_back(b.right_action(x, v));
  }
  for (int a = 0; a < nq; ++a) {
    for (int u = 0; u < b.contra->morphism_count(); ++u) t.right.push_back(b.left_action(u, a));
  }
  return t;
}

EndResult end(const Bifunctor& b) {
  if (!structurally_equal(*b.contra, *b.co)) throw EndpointMismatch("end needs both variables over one category");
  const Category& c = *b.co;
  const int n = c.object_count();
  std::vector<int> sizes;
  for (int k = 0; k < n; ++k) sizes.push_back(b.size(k, k));
  std::vector<std::vector<FamilySearch::Check>> checks(n);
  for (int u = 0; u < c.morphism_count(); ++u) {
    if (c.is_identity(u)) continue;
    const int j = c.src(u), k = c.tgt(u);
    const Map* r = &b.right_action(j, u);
    const Map* l = &b.left_action(u, k);
    checks[std::max(j, k)].push_back([=](const std::vector<int>& e) { return (*r)[e[j]] == (*l)[e[k]]; });
  }
  return EndResult{FamilySearch(sizes, std::move(checks)).run()};
}

Quotient coend(const Bifunctor& b) {
  if (!structurally_equal(*b.contra, *b.co)) throw EndpointMismatch("coend needs both variables over one category");
  const Category& c = *b.co;
  std::vector<int> sizes;
  for (int k = 0; k < c.object_count(); ++k) sizes.push_back(b.size(k, k));
  return quotient(sizes, [&](detail::UnionFind& uf, const std::vector<int>& offset) {
    for (int u = 0; u < c.morphism_count(); ++u) {
      const int j = c.src(u), k = c.tgt(u);
      const Map& l = b.left_action(u, j);
      const Map& r = b.right_action(k, u);
      for (int z = 0; z < b.size(k, j); ++z) uf.unite(offset[j] + l[z], offset[k] + r[z]);
    }
  });
}

WeightedLimit weighted_limit(const SetFunctor& weight, const SetFunctor& diagram, bool cross_check) {
  if (weight.variance != Variance::contra || diagram.variance != Variance::contra) {
    throw MalformedTable("weighted limit expects a presheaf weight and a diagram on K^op");
  }
  WeightedLimit out;
  out.apex = nat_transformations(weight, diagram);
  if (!cross_check) return out;

  const Elements el = category_of_elements(weight);
  // T∘d, covariant on el(φ).
  SetFunctor td{el.category, Variance::co, {}, {}};
  for (const auto& [k, x] : el.element) td.sizes.push_back(diagram.sizes[k]);
  for (int m = 0; m < el.category->morphism_count(); ++m) td.actions.push_back(diagram.actions[el.projection.mor(m)]);
  SetLimit lim = finset_limit(td);

  std::map<std::vector<int>, int> family_index;
  for (int i = 0; i < lim.apex; ++i) family_index.emplace(lim.families[i], i);
  for (const NatTrans& alpha : out.apex.elements()) {
    std::vector<int> fam;
    for (const auto& [k, x] : el.element) fam.push_back(alpha.components[k][x]);
    auto it = family_index.find(fam);
    out.comparison.push_back(it == family_index.end() ? -1 : it->second);
  }
  if (!is_bijection(out.comparison, lim.apex)) {
    throw InternalMismatch("weighted limit: natural transformations and cones over el disagree (" +
                           std::to_string(out.apex.size()) + " vs " + std::to_string(lim.apex) + ")");
  }
  out.via_elements = std::move(lim);
  return out;
}

WeightedColimit weighted_colimit(const SetFunctor& weight, const SetFunctor& diagram, bool cross_check) {
  if (weight.variance != Variance::contra || diagram.variance != Variance::co) {
    throw MalformedTable("weighted colimit expects a presheaf weight and a covariant diagram");
  }
  if (!structurally_equal(*weight.base, *diagram.base)) throw MalformedTable("weight and diagram domains differ");
  WeightedColimit out;
  out.apex = coend(tensor(weight, diagram));
  out.diagram_sizes = diagram.sizes;
  if (!cross_check) return out;

  const Elements el = category_of_elements(weight);
  // S∘d^op, read as a presheaf on el(φ).
  SetFunctor sd{el.category, Variance::contra, {}, {}};
  for (const auto& [k, x] : el.element) sd.sizes.push_back(diagram.sizes[k]);
  for (int m = 0; m < el.category->morphism_count(); ++m) sd.actions.push_back(diagram.actions[el.projection.mor(m)]);
  SetColimit colim = finset_colimit(sd);

  out.comparison.assign(out.apex.size, -1);
  bool consistent = true;
  for (int k = 0; k < weight.base->object_count() && consistent; ++k) {
    for (int x = 0; x < weight.sizes[k]; ++x) {
      for (int s = 0; s < diagram.sizes[k]; ++s) {
        const int from = out.cls(k, x, s);
        const int to = colim.legs[el.object_of(k, x)][s];
        if (out.comparison[from] < 0) {
          out.comparison[from] = to;
        } else if (out.comparison[from] != to) {
          consistent = false;
        }
      }
    }
  }
  if (!consistent || !is_bijection(out.comparison, colim.apex)) {
    throw InternalMismatch("weighted colimit: coend and colimit over el disagree (" + std::to_string(out.apex.size) +
                           " vs " + std::to_string(colim.apex) + ")");
  }
  out.via_elements = std::move(colim);
  return out;
}

SetFunctor hom_into(const Functor& diagram, int a) {
  const Category& k = *diagram.source;
  const Category& c = *diagram.target;
  SetFunctor f{diagram.source, Variance::contra, {}, {}};
  for (int x = 0; x < k.object_count(); ++x) f.sizes.push_back(c.hom_size(diagram.obj(x), a));
  for (int u = 0; u < k.morphism_count(); ++u) {
    Map act;
    for (int m : c.hom(diagram.obj(k.tgt(u)), a)) act.push_back(c.hom_position(c.compose(m, diagram.mor(u))));
    f.actions.push_back(std::move(act));
  }
  return f;
}

SetFunctor hom_from(int a, const Functor& diagram) {
  const Category& kop = *diagram.source;
  const Category& c = *diagram.target;
  SetFunctor f{opposite(diagram.source), Variance::contra, {}, {}};
  for (int x = 0; x < kop.object_count(); ++x) f.sizes.push_back(c.hom_size(a, diagram.obj(x)));
  for (int u = 0; u < kop.morphism_count(); ++u) {
    // u: k -> k' in K is k' -> k in K^op; acts A(a, T k) -> A(a, T k').
    Map act;
    for (int m : c.hom(a, diagram.obj(kop.src(u)))) act.push_back(c.hom_position(c.compose(diagram.mor(u), m)));
    f.actions.push_back(std::move(act));
  }
  return f;
}

namespace {

// Index of m∘λ in nats, where λ has components given as positions in hom(S k, c).
int postcompose_index(const Category& c, const Functor& diagram, int apex, const NatTrans& lambda, int m,
                      const NatSet& nats) {
  NatTrans composite;
  composite.components.resize(lambda.components.size());
  for (std::size_t k = 0; k < lambda.components.size(); ++k) {
    const int sk = diagram.obj(static_cast<int>(k));
    auto hom = c.hom(sk, apex);
    for (int pos : lambda.components[k]) composite.components[k].push_back(c.hom_position(c.compose(m, hom[pos])));
  }
  return nats.find(composite);
}

bool universal(const Category& c, const Functor& diagram, int apex, const NatTrans& lambda,
               const std::vector<NatSet>& nats) {
  for (int a = 0; a < c.object_count(); ++a) {
    Map images;
    for (int m : c.hom(apex, a)) images.push_back(postcompose_index(c, diagram, apex, lambda, m, nats[a]));
    if (!is_bijection(images, nats[a].size())) return false;
  }
  return true;
}

NatTrans positions_to_morphisms(const Category& c, const Functor& diagram, int apex, const NatTrans& lambda) {
  NatTrans out;
  for (std::size_t k = 0; k < lambda.components.size(); ++k) {
    auto hom = c.hom(diagram.obj(static_cast<int>(k)), apex);
    Map comp;
    for (int pos : lambda.components[k]) comp.push_back(hom[pos]);
    out.components.push_back(std::move(comp));
  }
  return out;
}

}  // namespace

std::optional<CategoryColimit> colimit_in_category(const SetFunctor& weight, const Functor& diagram) {
  const Category& c = *diagram.target;
  std::vector<NatSet> nats;
  for (int a = 0; a < c.object_count(); ++a) nats.push_back(nat_transformations(weight, hom_into(diagram, a)));
  for (int apex = 0; apex < c.object_count(); ++apex) {
    bool sizes_match = true;
    for (int a = 0; a < c.object_count() && sizes_match; ++a) sizes_match = c.hom_size(apex, a) == nats[a].size();
    if (!sizes_match) continue;
    for (const NatTrans& lambda : nats[apex].elements()) {
      if (universal(c, diagram, apex, lambda, nats)) {
        return CategoryColimit{apex, positions_to_morphisms(c, diagram, apex, lambda)};
      }
    }
  }
  return std::nullopt;
}

std::optional<CategoryColimit> limit_in_category(const SetFunctor& weight, const Functor& diagram) {
  // A limit in A is a colimit in A^op; morphism ids are shared.
  return colimit_in_category(weight, opposite(diagram));
}

PreservationVerdict preserves_weighted_colimit(const Functor& f, const SetFunctor& weight, const Functor& diagram,
                                               const CategoryColimit& colimit) {
  const Functor fs = compose(f, diagram);
  const Category& b = *f.target;
  const int fc = f.obj(colimit.apex);
  NatTrans image;
  for (std::size_t k = 0; k < colimit.cocone.components.size(); ++k) {
    Map comp;
    for (int m : colimit.cocone.components[k]) comp.push_back(b.hom_position(f.mor(m)));
    image.components.push_back(std::move(comp));
  }
  for (int x = 0; x < b.object_count(); ++x) {
    const NatSet nats = nat_transformations(weight, hom_into(fs, x));
    Map images;
    for (int m : b.hom(fc, x)) images.push_back(postcompose_index(b, fs, fc, image, m, nats));
    if (!is_bijection(images, nats.size())) {
      if (!colimit_in_category(weight, fs)) {
        return {false, "ColimitMissingInTarget: no colimit of F∘S exists in the target"};
      }
      return {false, "comparison not bijective at object " + b.object_name(x)};
    }
  }
  return {true, ""};
}

PreservationVerdict preserves_colimit_into_set(const SetFunctor& g, const SetFunctor& weight, const Functor& diagram,
                                               const CategoryColimit& colimit) {
  if (g.variance != Variance::co) throw MalformedTable("expected a covariant functor into FinSet");
  const SetFunctor gs = precompose(g, diagram);
  const WeightedColimit w = weighted_colimit(weight, gs, false);
  Map comparison(w.size(), -1);
  const Category& k = *weight.base;
  for (int j = 0; j < k.object_count(); ++j) {
    for (int x = 0; x < weight.sizes[j]; ++x) {
      const int leg = colimit.cocone.components[j][x];
      for (int s = 0; s < gs.sizes[j]; ++s) {
        const int from = w.cls(j, x, s);
        const int to = g.act(leg, s);
        if (comparison[from] >= 0 && comparison[from] != to) {
          throw InternalMismatch("comparison map from the weighted colimit is not well defined");
        }
        comparison[from] = to;
      }
    }
  }
  if (!is_bijection(comparison, g.sizes[colimit.apex])) {
    return {false, "comparison " + std::to_string(w.size()) + " -> " + std::to_string(g.sizes[colimit.apex]) +
                       " not bijective"};
  }
  return {true, ""};
}

PreservationVerdict presheaf_preserves_as_limit(const SetFunctor& psi, const SetFunctor& weight,
                                                const Functor& diagram, const CategoryColimit& colimit) {
  if (psi.variance != Variance::contra) throw MalformedTable("expected a presheaf");
  const SetFunctor ps = precompose(psi, diagram);
  const NatSet nats = nat_transformations(weight, ps);
  Map comparison;
  for (int y = 0; y < psi.sizes[colimit.apex]; ++y) {
    NatTrans alpha;
    for (const Map& legs : colimit.cocone.components) {
      Map comp;
      for (int leg : legs) comp.push_back(psi.act(leg, y));
      alpha.components.push_back(std::move(comp));
    }
    comparison.push_back(nats.find(alpha));
  }
  if (!is_bijection(comparison, nats.size())) {
    return {false, "comparison " + std::to_string(psi.sizes[colimit.apex]) + " -> " + std::to_string(nats.size()) +
                       " not bijective"};
  }
  return {true, ""};
}

}  // namespace fincat
