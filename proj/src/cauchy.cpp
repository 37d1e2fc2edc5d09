#include "fincat/cauchy.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <string>

#include "fincat/corpus.hpp"

namespace fincat {

namespace {

bool bijective(const Map& m, int codomain) {
  if (static_cast<int>(m.size()) != codomain) return false;
  std::vector<bool> hit(codomain, false);
  for (int y : m) {
    if (y < 0 || y >= codomain || hit[y]) return false;
    hit[y] = true;
  }
  return true;
}

void assign(Map& m, int x, int y, const char* what) {
  if (m[x] >= 0 && m[x] != y) throw InternalMismatch(std::string(what) + " is not well defined");
  m[x] = y;
}

}  // namespace

IsbellLeft isbell_left(const SetFunctor& phi) {
  if (phi.variance != Variance::contra) throw MalformedTable("isbell_left expects a presheaf");
  const Category& k = *phi.base;
  IsbellLeft out;
  out.functor = SetFunctor{phi.base, Variance::co, {}, {}};
  for (int c = 0; c < k.object_count(); ++c) {
    out.cells.push_back(nat_transformations(phi, representable(phi.base, c)));
    out.functor.sizes.push_back(out.cells.back().size());
  }
  for (int h = 0; h < k.morphism_count(); ++h) {
    const int c = k.src(h), c2 = k.tgt(h);
    Map act;
    for (const NatTrans& alpha : out.cells[c].elements()) {
      NatTrans moved;
      for (int j = 0; j < k.object_count(); ++j) {
        Map comp;
        auto hom = k.hom(j, c);
        for (int pos : alpha.components[j]) comp.push_back(k.hom_position(k.compose(h, hom[pos])));
        moved.components.push_back(std::move(comp));
      }
      const int idx = out.cells[c2].find(moved);
      if (idx < 0) throw InternalMismatch("Y(h)∘α is not natural");
      act.push_back(idx);
    }
    out.functor.actions.push_back(std::move(act));
  }
  return out;
}

IsbellRight isbell_right(const SetFunctor& psi) {
  if (psi.variance != Variance::co) throw MalformedTable("isbell_right expects a covariant functor");
  const Category& k = *psi.base;
  IsbellRight out;
  out.functor = SetFunctor{psi.base, Variance::contra, {}, {}};
  for (int c = 0; c < k.object_count(); ++c) {
    out.cells.push_back(nat_transformations(psi, corepresentable(psi.base, c)));
    out.functor.sizes.push_back(out.cells.back().size());
  }
  for (int h = 0; h < k.morphism_count(); ++h) {
    // h: c2 -> c acts R(c) -> R(c2) by precomposition.
    const int c2 = k.src(h), c = k.tgt(h);
    Map act;
    for (const NatTrans& beta : out.cells[c].elements()) {
      NatTrans moved;
      for (int j = 0; j < k.object_count(); ++j) {
        Map comp;
        auto hom = k.hom(c, j);
        for (int pos : beta.components[j]) comp.push_back(k.hom_position(k.compose(hom[pos], h)));
        moved.components.push_back(std::move(comp));
      }
      const int idx = out.cells[c2].find(moved);
      if (idx < 0) throw InternalMismatch("β∘K(h,-) is not natural");
      act.push_back(idx);
    }
    out.functor.actions.push_back(std::move(act));
  }
  return out;
}

NatTrans isbell_unit(const SetFunctor& phi) {
  const IsbellLeft l = isbell_left(phi);
  const IsbellRight r = isbell_right(l.functor);
  const Category& k = *phi.base;
  NatTrans out;
  for (int b = 0; b < k.object_count(); ++b) {
    Map comp;
    for (int x = 0; x < phi.sizes[b]; ++x) {
      // β_c(α) = α_b(x).
      NatTrans beta;
      for (int c = 0; c < k.object_count(); ++c) {
        Map bc;
        for (const NatTrans& alpha : l.cells[c].elements()) bc.push_back(alpha.components[b][x]);
        beta.components.push_back(std::move(bc));
      }
      const int idx = r.cells[b].find(beta);
      if (idx < 0) throw InternalMismatch("Isbell unit component is not natural");
      comp.push_back(idx);
    }
    out.components.push_back(std::move(comp));
  }
  return out;
}

NatTrans isbell_counit(const SetFunctor& psi) {
  const IsbellRight r = isbell_right(psi);
  const IsbellLeft l = isbell_left(r.functor);
  const Category& k = *psi.base;
  NatTrans out;
  for (int c = 0; c < k.object_count(); ++c) {
    Map comp;
    for (int y = 0; y < psi.sizes[c]; ++y) {
      // α_b(β) = β_c(y).
      NatTrans alpha;
      for (int b = 0; b < k.object_count(); ++b) {
        Map ab;
        for (const NatTrans& beta : r.cells[b].elements()) ab.push_back(beta.components[c][y]);
        alpha.components.push_back(std::move(ab));
      }
      const int idx = l.cells[c].find(alpha);
      if (idx < 0) throw InternalMismatch("Isbell counit component is not natural");
      comp.push_back(idx);
    }
    out.components.push_back(std::move(comp));
  }
  return out;
}

SmallProjectiveReport small_projective_report(const SetFunctor& phi) {
  const Category& k = *phi.base;
  const IsbellLeft l = isbell_left(phi);
  const WeightedColimit w = weighted_colimit(phi, l.functor);
  const NatSet endo = nat_transformations(phi, phi);
  Map comparison(w.size(), -1);
  for (int c = 0; c < k.object_count(); ++c) {
    for (int x = 0; x < phi.sizes[c]; ++x) {
      for (int a = 0; a < l.cells[c].size(); ++a) {
        const NatTrans& alpha = l.cells[c][a];
        // y in φ(j) goes to φ(α_j(y))(x).
        NatTrans image;
        for (int j = 0; j < k.object_count(); ++j) {
          Map comp;
          auto hom = k.hom(j, c);
          for (int pos : alpha.components[j]) comp.push_back(phi.act(hom[pos], x));
          image.components.push_back(std::move(comp));
        }
        const int idx = endo.find(image);
        if (idx < 0) throw InternalMismatch("small projectivity comparison lands outside Nat(φ, φ)");
        assign(comparison, w.cls(c, x, a), idx, "small projectivity comparison");
      }
    }
  }
  return {bijective(comparison, endo.size()), w.size(), endo.size()};
}

bool is_small_projective(const SetFunctor& phi) { return small_projective_report(phi).small_projective; }

std::optional<Retract> retract_oracle(const SetFunctor& phi) {
  const Category& k = *phi.base;
  for (int b = 0; b < k.object_count(); ++b) {
    const NatSet sections = nat_transformations(phi, representable(phi.base, b));
    if (sections.size() == 0) continue;
    for (int x = 0; x < phi.sizes[b]; ++x) {
      // The retraction Yb -> φ determined by x: m ↦ φ(m)(x).
      NatTrans r;
      for (int j = 0; j < k.object_count(); ++j) {
        Map comp;
        for (int m : k.hom(j, b)) comp.push_back(phi.act(m, x));
        r.components.push_back(std::move(comp));
      }
      for (const NatTrans& s : sections.elements()) {
        if (compose(r, s) == identity_nat(phi)) return Retract{b, s, r};
      }
    }
  }
  return std::nullopt;
}

CauchyCompletion cauchy_completion(const CategoryRef& a) {
  const Category& c = *a;
  CauchyCompletion out;
  out.base = a;
  for (int f = 0; f < c.morphism_count(); ++f) {
    if (c.src(f) == c.tgt(f) && c.compose(f, f) == f) out.idempotents.push_back(f);
  }
  const int n = static_cast<int>(out.idempotents.size());
  std::vector<std::string> objects;
  for (int e : out.idempotents) {
    std::string name = c.is_identity(e) ? c.object_name(c.src(e)) : c.morphism_name(e);
    while (std::find(objects.begin(), objects.end(), name) != objects.end()) name += "~";
    objects.push_back(std::move(name));
  }
  std::vector<MorphismData> mors;
  std::map<std::array<int, 3>, int> lookup;
  std::set<std::string> used;
  for (int p = 0; p < n; ++p) {
    for (int q = 0; q < n; ++q) {
      const int ep = out.idempotents[p], eq = out.idempotents[q];
      const bool plain = c.is_identity(ep) && c.is_identity(eq);
      for (int m : c.hom(c.src(ep), c.src(eq))) {
        if (c.compose(eq, c.compose(m, ep)) != m) continue;
        std::string name = plain ? c.morphism_name(m) : c.morphism_name(m) + "[" + objects[p] + "," + objects[q] + "]";
        while (!used.insert(name).second) name += "~";
        lookup[{p, q, m}] = static_cast<int>(mors.size());
        out.morphisms.push_back({p, q, m});
        mors.push_back({std::move(name), p, q});
      }
    }
  }
  std::vector<int> ids;
  for (int p = 0; p < n; ++p) ids.push_back(lookup.at({p, p, out.idempotents[p]}));
  const int m = static_cast<int>(mors.size());
  std::vector<int> comp(static_cast<std::size_t>(m) * m, -1);
  for (int g = 0; g < m; ++g) {
    for (int f = 0; f < m; ++f) {
      const auto& [p, q, mf] = out.morphisms[f];
      const auto& [q2, r, mg] = out.morphisms[g];
      if (q != q2) continue;
      comp[static_cast<std::size_t>(g) * m + f] = lookup.at({p, r, c.compose(mg, mf)});
    }
  }
  out.completion = Category::make(std::move(objects), std::move(mors), std::move(ids), std::move(comp));

  std::vector<int> object_of(c.object_count(), -1);
  for (int p = 0; p < n; ++p) {
    if (c.is_identity(out.idempotents[p])) object_of[c.src(out.idempotents[p])] = p;
  }
  out.embedding = Functor{a, out.completion, object_of, {}};
  for (int f = 0; f < c.morphism_count(); ++f) {
    out.embedding.morphisms.push_back(lookup.at({object_of[c.src(f)], object_of[c.tgt(f)], f}));
  }
  return out;
}

bool verify_completion(const CauchyCompletion& q) {
  if (!validate(*q.completion).ok() || !validate(q.embedding).ok() || !is_fully_faithful(q.embedding)) return false;
  const Category& c = *q.base;
  for (int p = 0; p < q.completion->object_count(); ++p) {
    const SetFunctor nerve_p = hom_into(q.embedding, p);
    if (!is_small_projective(nerve_p)) return false;
    // Image of Y(e) inside Y(b): {m : e∘m = m}.
    const int e = q.idempotents[p];
    SetFunctor image{q.base, Variance::contra, {}, {}};
    std::vector<std::vector<int>> members(c.object_count());
    for (int x = 0; x < c.object_count(); ++x) {
      for (int m : c.hom(x, c.src(e))) {
        if (c.compose(e, m) == m) members[x].push_back(m);
      }
      image.sizes.push_back(static_cast<int>(members[x].size()));
    }
    for (int f = 0; f < c.morphism_count(); ++f) {
      Map act;
      const auto& to = members[c.src(f)];
      for (int m : members[c.tgt(f)]) {
        act.push_back(static_cast<int>(std::find(to.begin(), to.end(), c.compose(m, f)) - to.begin()));
      }
      image.actions.push_back(std::move(act));
    }
    if (!validate(image).ok() || !is_isomorphic(image, nerve_p)) return false;
  }
  return true;
}

DualityResult q_duality(const CategoryRef& a, std::uint64_t budget) {
  const CauchyCompletion qa = cauchy_completion(a);
  const CauchyCompletion qop = cauchy_completion(opposite(a));
  const CategoryRef l = opposite(qop.completion);
  if (qa.idempotents != qop.idempotents) throw InternalMismatch("A and A^op disagree on idempotents");

  std::map<std::array<int, 3>, int> in_qa, in_qop;
  for (int f = 0; f < static_cast<int>(qa.morphisms.size()); ++f) in_qa[qa.morphisms[f]] = f;
  for (int f = 0; f < static_cast<int>(qop.morphisms.size()); ++f) in_qop[qop.morphisms[f]] = f;

  const int n = qa.completion->object_count();
  std::vector<int> same(n);
  for (int p = 0; p < n; ++p) same[p] = p;
  DualityResult out;
  Equivalence& e = out.equivalence;
  e.forward = Functor{l, qa.completion, same, {}};
  for (const auto& [p, q, m] : qop.morphisms) e.forward.morphisms.push_back(in_qa.at({q, p, m}));
  e.backward = Functor{qa.completion, l, same, {}};
  for (const auto& [p, q, m] : qa.morphisms) e.backward.morphisms.push_back(in_qop.at({q, p, m}));
  for (int p = 0; p < n; ++p) {
    e.unit.components.push_back(l->identity(p));
    e.counit.components.push_back(qa.completion->identity(p));
  }
  const ValidationReport report = validate(e);
  if (!report.ok()) throw InternalMismatch("duality functors are not an equivalence: " + report.summary());
  out.confirmed_by_search = find_equivalence(l, qa.completion, budget).has_value();
  return out;
}

MoritaResult morita_equivalent(const CategoryRef& a, const CategoryRef& b, std::uint64_t budget) {
  MoritaResult out;
  out.qa = cauchy_completion(a).completion;
  out.qb = cauchy_completion(b).completion;
  out.witness = find_equivalence(out.qa, out.qb, budget);
  out.equivalent = out.witness.has_value();
  return out;
}

std::optional<DualPair> dual_pair(const SetFunctor& phi) {
  auto adj = has_right_adjoint(weight_module(phi));
  if (!adj) return std::nullopt;
  const Profunctor& g = adj->right;
  SetFunctor psi{phi.base, Variance::co, {}, {}};
  for (int b = 0; b < phi.base->object_count(); ++b) psi.sizes.push_back(g.size(0, b));
  for (int v = 0; v < phi.base->morphism_count(); ++v) psi.actions.push_back(g.right_action(0, v));
  return DualPair{phi, std::move(psi), std::move(*adj)};
}

DualCheck dual_limit_colimit(const DualPair& pair, const Functor& f) {
  DualCheck out;
  out.colimit = colimit_in_category(pair.phi, f);
  out.limit = limit_in_category(flip(pair.psi), f);
  if (out.colimit.has_value() != out.limit.has_value()) return out;
  if (!out.colimit) {
    out.consistent = true;
    return out;
  }
  const auto classes = isomorphism_classes(*f.target);
  out.consistent = classes[out.colimit->apex] == classes[out.limit->apex];
  return out;
}

bool flem_holds(const DualPair& pair, const SetFunctor& g) {
  if (g.variance != Variance::co) throw MalformedTable("flem_holds expects a covariant functor");
  const Category& k = *pair.phi.base;
  const int nk = k.object_count();
  const WeightedColimit w = weighted_colimit(pair.phi, g);
  const NatSet nats = nat_transformations(pair.psi, g);
  const Composite& fg = pair.adjunction.left_after_right;
  const ProfMorphism& eps = pair.adjunction.counit;
  Map comparison(w.size(), -1);
  for (int b2 = 0; b2 < nk; ++b2) {
    for (int x = 0; x < pair.phi.sizes[b2]; ++x) {
      for (int s = 0; s < g.sizes[b2]; ++s) {
        NatTrans image;
        for (int b = 0; b < nk; ++b) {
          Map comp;
          auto hom = k.hom(b2, b);
          for (int y = 0; y < pair.psi.sizes[b]; ++y) {
            const int pos = eps.components[b2 * nk + b][fg.cls(b2, b, 0, y, x)];
            comp.push_back(g.act(hom[pos], s));
          }
          image.components.push_back(std::move(comp));
        }
        const int idx = nats.find(image);
        if (idx < 0) throw InternalMismatch("flem comparison lands outside Nat(ψ, G)");
        assign(comparison, w.cls(b2, x, s), idx, "flem comparison");
      }
    }
  }
  return bijective(comparison, nats.size());
}

AbsoluteReport check_absolute_sampled(const SetFunctor& phi, const std::vector<Functor>& sample,
                                      std::uint64_t budget) {
  AbsoluteReport out;
  std::vector<CategoryRef> sources;
  for (const Functor& f : sample) {
    if (std::find(sources.begin(), sources.end(), f.source) == sources.end()) sources.push_back(f.source);
  }
  for (const CategoryRef& c : sources) {
    for_each_functor(
        phi.base, c,
        [&](const Functor& s) {
          const auto colimit = colimit_in_category(phi, s);
          if (!colimit) return true;
          for (std::size_t i = 0; i < sample.size(); ++i) {
            if (sample[i].source != c) continue;
            ++out.instances;
            const PreservationVerdict v = preserves_weighted_colimit(sample[i], phi, s, *colimit);
            if (!v.preserved) {
              std::string diagram;
              for (int j = 0; j < phi.base->object_count(); ++j) {
                diagram += (j ? "," : "") + c->object_name(s.obj(j));
              }
              out.violations.push_back("diagram (" + diagram + ") with apex " + c->object_name(colimit->apex) +
                                       ", sample functor " + std::to_string(i) + ": " + v.reason);
            }
          }
          return true;
        },
        budget);
  }
  return out;
}

namespace {

// FinSet(c, -) restricted to two finset categories; `to` must contain every |c^n|.
Functor finset_hom_functor(const CategoryRef& from, int c, const CategoryRef& to) {
  const Category& a = *from;
  const Category& b = *to;
  Functor out{from, to, {}, {}};
  for (int x = 0; x < a.object_count(); ++x) {
    const int size = a.hom_size(c, x);
    int found = -1;
    for (int y = 0; y < b.object_count() && found < 0; ++y) {
      if (std::stoi(b.object_name(y)) == size) found = y;
    }
    if (found < 0) throw MalformedTable("hom functor target lacks a set of size " + std::to_string(size));
    out.objects.push_back(found);
  }
  for (int f = 0; f < a.morphism_count(); ++f) {
    const int x = a.src(f), y = a.tgt(f);
    Map fn;
    for (int m : a.hom(c, x)) fn.push_back(a.hom_position(a.compose(f, m)));
    int found = -1;
    for (int g : b.hom(out.obj(x), out.obj(y))) {
      if (finset_function(b, g) == fn) found = g;
    }
    out.morphisms.push_back(found);
  }
  return out;
}

}  // namespace

std::vector<Functor> absolute_sample() {
  std::vector<CategoryRef> cats;
  for (const auto& f : fixture_categories()) {
    if (f.category->object_count() <= 3) cats.push_back(f.category);
  }
  cats.push_back(cauchy_completion(idempotent_monoid()).completion);
  const CategoryRef set12 = finset_category({1, 2});
  cats.push_back(set12);
  std::vector<Functor> out;
  for (const CategoryRef& c : cats) {
    for (const CategoryRef& d : cats) {
      for (Functor& f : all_functors(c, d)) out.push_back(std::move(f));
    }
  }
  const CategoryRef set124 = finset_category({1, 2, 4});
  for (int c = 0; c < set12->object_count(); ++c) out.push_back(finset_hom_functor(set12, c, set124));
  return out;
}

}  // namespace fincat
