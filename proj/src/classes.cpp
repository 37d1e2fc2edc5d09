#include "fincat/classes.hpp"

#include <algorithm>
#include <numeric>

#include "union_find.hpp"

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
  if (y < 0) throw InternalMismatch(std::string(what) + " leaves its codomain");
  if (m[x] >= 0 && m[x] != y) throw InternalMismatch(std::string(what) + " is not well defined");
  m[x] = y;
}

WeightClass conical(std::string name, const std::vector<std::pair<std::string, CategoryRef>>& shapes) {
  WeightClass out{std::move(name), {}};
  for (const auto& [label, shape] : shapes) out.weights.push_back({label, terminal_presheaf(shape)});
  return out;
}

struct Instance {
  const NamedPresheaf* weight;
  Functor diagram;
  CategoryColimit colimit;
};

std::vector<Instance> existing_instances(const CategoryRef& a, const WeightClass& phi, std::uint64_t budget) {
  std::vector<Instance> out;
  for (const NamedPresheaf& w : phi.weights) {
    for_each_functor(
        w.presheaf.base, a,
        [&](const Functor& s) {
          if (auto c = colimit_in_category(w.presheaf, s)) out.push_back({&w, s, std::move(*c)});
          return true;
        },
        budget);
  }
  return out;
}

}  // namespace

WeightClass empty_class() { return {"empty", {}}; }

WeightClass initial_class() { return {"initial", {{"initial", terminal_presheaf(empty_category())}}}; }

WeightClass splitting_class() { return conical("splitting", {{"E", idempotent_monoid()}}); }

WeightClass pushout_class() { return conical("pushout", {{"pushout", span_category()}}); }

WeightClass finite_colimit_class() {
  return conical("finite-colimit", {{"initial", empty_category()},
                                    {"coproduct", discrete_category(2)},
                                    {"coequalizer", parallel_pair_category()},
                                    {"pushout", span_category()}});
}

WeightClass binary_coproduct_class() { return conical("binary-coproduct", {{"coproduct", discrete_category(2)}}); }

ClosureResult phi_closure_bounded(const WeightClass& phi, const CategoryRef& a, const ClosureCaps& caps) {
  if (caps.rounds <= 0 || caps.members <= 0 || caps.set_size <= 0) throw MalformedTable("closure caps must be positive");
  ClosureResult out{representables(a), 0, false, caps, ""};
  for (int round = 1; round <= caps.rounds; ++round) {
    out.rounds = round;
    const std::vector<SetFunctor> snapshot = out.collection.members();
    const PresheafCategory pc = materialize(a, snapshot);
    std::vector<int> everything(snapshot.size());
    std::iota(everything.begin(), everything.end(), 0);
    bool added = false;
    for (const NamedPresheaf& w : phi.weights) {
      for_each_functor(
          w.presheaf.base, pc.category,
          [&](const Functor& s) {
            SetFunctor value = pointwise_colimit(w.presheaf, s, pc);
            if (!value.sizes.empty() && *std::max_element(value.sizes.begin(), value.sizes.end()) > caps.set_size) {
              out.cap_hit = "set size";
              return true;
            }
            Provenance how;
            how.kind = Provenance::Kind::colimit;
            how.weight_name = w.name;
            how.weight = w.presheaf;
            how.diagram = s;
            how.diagram_members = everything;
            if (out.collection.add(std::move(value), std::move(how)).second) {
              added = true;
              if (out.collection.size() > caps.members) {
                out.cap_hit = "members";
                return false;
              }
            }
            return true;
          },
          caps.budget);
      if (out.cap_hit == "members") return out;
    }
    if (!out.cap_hit.empty()) return out;
    if (!added) {
      out.saturated_at_bound = true;
      return out;
    }
  }
  out.cap_hit = "rounds";
  return out;
}

const char* to_string(Membership m) {
  switch (m) {
    case Membership::yes:
      return "yes";
    case Membership::no_at_fixpoint:
      return "no-at-fixpoint";
    case Membership::unknown_at_cap:
      return "unknown-at-cap";
  }
  return "?";
}

Membership in_saturation_bounded(const SetFunctor& psi, const WeightClass& phi, const ClosureCaps& caps) {
  const ClosureResult closure = phi_closure_bounded(phi, psi.base, caps);
  if (closure.collection.find(psi) >= 0) return Membership::yes;
  return closure.saturated_at_bound ? Membership::no_at_fixpoint : Membership::unknown_at_cap;
}

WeightClass bounded_saturation(const WeightClass& phi, const std::vector<CategoryRef>& domains,
                               const ClosureCaps& caps) {
  WeightClass out{phi.name + "*", {}};
  for (std::size_t d = 0; d < domains.size(); ++d) {
    const ClosureResult closure = phi_closure_bounded(phi, domains[d], caps);
    if (!closure.saturated_at_bound) throw CapExceeded("closure on domain " + std::to_string(d) + " hit its " + closure.cap_hit + " cap");
    for (int i = 0; i < closure.collection.size(); ++i) {
      out.weights.push_back({"d" + std::to_string(d) + "#" + std::to_string(i), closure.collection[i]});
    }
  }
  return out;
}

CocompletenessReport is_phi_cocomplete(const CategoryRef& n, const WeightClass& phi, std::uint64_t budget) {
  CocompletenessReport out;
  for (const NamedPresheaf& w : phi.weights) {
    for_each_functor(
        w.presheaf.base, n,
        [&](const Functor& s) {
          if (colimit_in_category(w.presheaf, s)) return true;
          out.cocomplete = false;
          out.weight = w.name;
          out.witness = s;
          return false;
        },
        budget);
    if (!out.cocomplete) break;
  }
  return out;
}

std::vector<int> atoms(const CategoryRef& a, const WeightClass& phi, std::uint64_t budget) {
  const std::vector<Instance> instances = existing_instances(a, phi, budget);
  std::vector<int> out;
  for (int x = 0; x < a->object_count(); ++x) {
    const SetFunctor hom = corepresentable(a, x);
    bool preserved = true;
    for (const Instance& i : instances) {
      if (!preserves_colimit_into_set(hom, i.weight->presheaf, i.diagram, i.colimit).preserved) {
        preserved = false;
        break;
      }
    }
    if (preserved) out.push_back(x);
  }
  return out;
}

CommutationReport commutation(const SetFunctor& phi, const SetFunctor& psi, const Bifunctor& s) {
  if (phi.variance != Variance::contra || psi.variance != Variance::contra) throw MalformedTable("weights must be presheaves");
  if (!structurally_equal(*psi.base, *s.contra) || !structurally_equal(*phi.base, *s.co)) {
    throw EndpointMismatch("commutation: S must have contra = dom(ψ) and co = dom(φ)");
  }
  const Category& k = *psi.base;
  const Category& l = *phi.base;
  const int nk = k.object_count(), nl = l.object_count();

  // l ↦ {ψ, S(-, l)} as a covariant functor on L.
  std::vector<WeightedLimit> lims;
  SetFunctor lim{phi.base, Variance::co, {}, {}};
  for (int j = 0; j < nl; ++j) {
    lims.push_back(weighted_limit(psi, column(s, j), false));
    lim.sizes.push_back(lims.back().size());
  }
  for (int v = 0; v < l.morphism_count(); ++v) {
    Map act;
    for (const NatTrans& sigma : lims[l.src(v)].apex.elements()) {
      NatTrans moved;
      for (int c = 0; c < nk; ++c) {
        Map comp;
        for (int t : sigma.components[c]) comp.push_back(s.right_action(c, v)[t]);
        moved.components.push_back(std::move(comp));
      }
      act.push_back(lims[l.tgt(v)].apex.find(moved));
    }
    lim.actions.push_back(std::move(act));
  }
  const WeightedColimit lhs = weighted_colimit(phi, lim, false);

  // k ↦ φ ∗ S(k, -) as a presheaf on K.
  std::vector<WeightedColimit> cols;
  SetFunctor col{psi.base, Variance::contra, {}, {}};
  for (int c = 0; c < nk; ++c) {
    cols.push_back(weighted_colimit(phi, row(s, c), false));
    col.sizes.push_back(cols.back().size());
  }
  for (int u = 0; u < k.morphism_count(); ++u) {
    const int c = k.src(u), c2 = k.tgt(u);
    Map act(col.sizes[c2], -1);
    for (int j = 0; j < nl; ++j) {
      for (int x = 0; x < phi.sizes[j]; ++x) {
        for (int t = 0; t < s.size(c2, j); ++t) {
          assign(act, cols[c2].cls(j, x, t), cols[c].cls(j, x, s.left_action(u, j)[t]), "colimit presheaf action");
        }
      }
    }
    col.actions.push_back(std::move(act));
  }
  const NatSet rhs = nat_transformations(psi, col);

  CommutationReport out;
  out.lhs = lhs.size();
  out.rhs = rhs.size();

  // From the limit cone: φ ∗ π_(c,y) for each leg, then assemble the family.
  std::vector<std::vector<Map>> legs(nk);
  for (int c = 0; c < nk; ++c) {
    for (int y = 0; y < psi.sizes[c]; ++y) {
      Map leg(lhs.size(), -1);
      for (int j = 0; j < nl; ++j) {
        for (int x = 0; x < phi.sizes[j]; ++x) {
          for (int e = 0; e < lims[j].size(); ++e) {
            assign(leg, lhs.cls(j, x, e), cols[c].cls(j, x, lims[j].counit(c, y, e)), "image of a limit leg");
          }
        }
      }
      legs[c].push_back(std::move(leg));
    }
  }
  for (int z = 0; z < lhs.size(); ++z) {
    NatTrans family;
    for (int c = 0; c < nk; ++c) {
      Map comp;
      for (const Map& leg : legs[c]) comp.push_back(leg[z]);
      family.components.push_back(std::move(comp));
    }
    out.comparison.push_back(rhs.find(family));
  }

  // From the colimit cocone: {ψ, ι_(j,x)} applied to each element of the limit.
  out.dual_comparison.assign(lhs.size(), -1);
  for (int j = 0; j < nl; ++j) {
    for (int x = 0; x < phi.sizes[j]; ++x) {
      NatTrans iota;
      for (int c = 0; c < nk; ++c) {
        Map comp;
        for (int t = 0; t < s.size(c, j); ++t) comp.push_back(cols[c].cls(j, x, t));
        iota.components.push_back(std::move(comp));
      }
      for (int e = 0; e < lims[j].size(); ++e) {
        assign(out.dual_comparison, lhs.cls(j, x, e), rhs.find(compose(iota, lims[j].apex[e])), "induced map out of the colimit");
      }
    }
  }
  out.bijective = bijective(out.comparison, rhs.size());
  out.dual_bijective = bijective(out.dual_comparison, rhs.size());
  if (out.comparison != out.dual_comparison) throw InternalMismatch("the two comparison maps disagree");
  return out;
}

bool check_commutation(const SetFunctor& phi, const SetFunctor& psi, const Bifunctor& s) {
  return commutation(phi, psi, s).bijective;
}

bool flat_for_finite_limits(const SetFunctor& phi) {
  return is_filtered(*opposite(category_of_elements(phi).category));
}

bool flat_for_terminal(const SetFunctor& phi) { return is_connected(*category_of_elements(phi).category); }

bool is_phi_continuous(const SetFunctor& psi, const WeightClass& phi, std::uint64_t budget) {
  for (const Instance& i : existing_instances(psi.base, phi, budget)) {
    if (!presheaf_preserves_as_limit(psi, i.weight->presheaf, i.diagram, i.colimit).preserved) return false;
  }
  return true;
}

RecognitionReport recognize_free_cocompletion(const Functor& g, const WeightClass& phi, const ClosureCaps& caps) {
  const CategoryRef& b = g.target;
  const Category& cb = *b;
  RecognitionReport out;
  out.fully_faithful = is_fully_faithful(g);
  out.cocomplete = is_phi_cocomplete(b, phi, caps.budget).cocomplete;

  const std::vector<int> classes = isomorphism_classes(cb);
  std::vector<bool> reached(cb.object_count(), false);
  auto reach = [&](int x) {
    bool fresh = false;
    for (int y = 0; y < cb.object_count(); ++y) {
      if (classes[y] == classes[x] && !reached[y]) reached[y] = fresh = true;
    }
    return fresh;
  };
  for (int x : g.objects) reach(x);
  auto everything = [&] { return std::all_of(reached.begin(), reached.end(), [](bool r) { return r; }); };
  bool fixpoint = false;
  for (int round = 1; round <= caps.rounds && !everything(); ++round) {
    out.closure_rounds = round;
    std::vector<int> current;
    for (int y = 0; y < cb.object_count(); ++y) {
      if (reached[y]) current.push_back(y);
    }
    std::vector<int> mids;
    const CategoryRef sub = full_subcategory(cb, current, &mids);
    bool added = false;
    for (const NamedPresheaf& w : phi.weights) {
      for_each_functor(
          w.presheaf.base, sub,
          [&](const Functor& s) {
            Functor into{s.source, b, {}, {}};
            for (int o : s.objects) into.objects.push_back(current[o]);
            for (int m : s.morphisms) into.morphisms.push_back(mids[m]);
            if (auto c = colimit_in_category(w.presheaf, into)) added |= reach(c->apex);
            return true;
          },
          caps.budget);
    }
    if (!added) {
      fixpoint = true;
      break;
    }
  }
  out.generates = everything();
  if (!out.generates && !fixpoint) throw CapExceeded("closure of the image did not settle within " + std::to_string(caps.rounds) + " rounds");

  const std::vector<int> at = atoms(b, phi, caps.budget);
  out.atomic = std::all_of(g.objects.begin(), g.objects.end(),
                           [&](int x) { return std::find(at.begin(), at.end(), x) != at.end(); });
  return out;
}

bool comma_connectedness_witness(const SetFunctor& f) {
  const CategoryRef& base = f.base;
  std::vector<SetFunctor> members;
  for (int b = 0; b < base->object_count(); ++b) members.push_back(representable(base, b));
  members.push_back(initial_presheaf(base));
  const PresheafCategory pc = materialize(base, members);
  std::vector<NatSet> maps;
  std::vector<int> offset;
  int count = 0;
  for (const SetFunctor& w : members) {
    offset.push_back(count);
    maps.push_back(nat_transformations(w, f));
    count += maps.back().size();
  }
  detail::UnionFind uf(count);
  const Category& p = *pc.category;
  for (int beta = 0; beta < p.morphism_count(); ++beta) {
    const int i = p.src(beta), j = p.tgt(beta);
    for (int a2 = 0; a2 < maps[j].size(); ++a2) {
      const int a = maps[i].find(compose(maps[j][a2], pc.morphisms[beta]));
      if (a < 0) throw InternalMismatch("comma morphism leaves the comma category");
      uf.unite(offset[i] + a, offset[j] + a2);
    }
  }
  return count > 0 && uf.components() == 1;
}

}  // namespace fincat
