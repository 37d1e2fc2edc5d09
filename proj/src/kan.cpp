#include "fincat/kan.hpp"

#include <string>

namespace fincat {

SetFunctor yoneda_embed(const CategoryRef& a, int object) { return representable(a, object); }

NatTrans yoneda_morphism(const CategoryRef& a, int u) {
  const Category& c = *a;
  NatTrans alpha;
  for (int x = 0; x < c.object_count(); ++x) {
    Map comp;
    for (int m : c.hom(x, c.src(u))) comp.push_back(c.hom_position(c.compose(u, m)));
    alpha.components.push_back(std::move(comp));
  }
  return alpha;
}

LanResult lan(const Functor& k, const SetFunctor& t) {
  if (t.variance != Variance::co) throw MalformedTable("lan expects a covariant functor into FinSet");
  const Category& a = *k.source;
  const Category& c = *k.target;
  LanResult out;
  out.extension = SetFunctor{k.target, Variance::co, {}, {}};
  for (int x = 0; x < c.object_count(); ++x) {
    out.pointwise.push_back(weighted_colimit(hom_into(k, x), t));
    out.extension.sizes.push_back(out.pointwise.back().size());
  }
  for (int h = 0; h < c.morphism_count(); ++h) {
    const int x = c.src(h), y = c.tgt(h);
    const WeightedColimit& from = out.pointwise[x];
    const WeightedColimit& to = out.pointwise[y];
    Map act(from.size(), -1);
    for (int j = 0; j < a.object_count(); ++j) {
      auto hom = c.hom(k.obj(j), x);
      for (int pos = 0; pos < static_cast<int>(hom.size()); ++pos) {
        const int moved = c.hom_position(c.compose(h, hom[pos]));
        for (int s = 0; s < t.sizes[j]; ++s) {
          const int src = from.cls(j, pos, s);
          const int dst = to.cls(j, moved, s);
          if (act[src] >= 0 && act[src] != dst) throw InternalMismatch("Lan action is not well defined");
          act[src] = dst;
        }
      }
    }
    out.extension.actions.push_back(std::move(act));
  }
  for (int j = 0; j < a.object_count(); ++j) {
    const int kj = k.obj(j);
    const int id_pos = c.hom_position(c.identity(kj));
    Map comp;
    for (int s = 0; s < t.sizes[j]; ++s) comp.push_back(out.pointwise[kj].cls(j, id_pos, s));
    out.unit.components.push_back(std::move(comp));
  }
  return out;
}

Nerve nerve(const Functor& g) {
  const Category& b = *g.target;
  Nerve out;
  for (int x = 0; x < b.object_count(); ++x) out.values.push_back(hom_into(g, x));
  const Category& n = *g.source;
  for (int h = 0; h < b.morphism_count(); ++h) {
    NatTrans alpha;
    for (int k = 0; k < n.object_count(); ++k) {
      Map comp;
      for (int m : b.hom(g.obj(k), b.src(h))) comp.push_back(b.hom_position(b.compose(h, m)));
      alpha.components.push_back(std::move(comp));
    }
    out.actions.push_back(std::move(alpha));
  }
  return out;
}

PresheafCategory materialize(const CategoryRef& base, const std::vector<SetFunctor>& members) {
  const int n = static_cast<int>(members.size());
  PresheafCategory out;
  out.base = base;
  out.members = members;
  std::vector<std::string> objects;
  for (int i = 0; i < n; ++i) objects.push_back("P" + std::to_string(i));
  std::vector<MorphismData> mors;
  std::vector<std::vector<NatSet>> homs(n);
  std::vector<std::vector<int>> first(n, std::vector<int>(n, 0));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      homs[i].push_back(nat_transformations(members[i], members[j]));
      first[i][j] = static_cast<int>(mors.size());
      for (int e = 0; e < homs[i][j].size(); ++e) {
        mors.push_back({objects[i] + ">" + objects[j] + "#" + std::to_string(e), i, j});
        out.morphisms.push_back(homs[i][j][e]);
      }
    }
  }
  std::vector<int> ids;
  for (int i = 0; i < n; ++i) ids.push_back(first[i][i] + homs[i][i].find(identity_nat(members[i])));
  const int m = static_cast<int>(mors.size());
  std::vector<int> comp(static_cast<std::size_t>(m) * m, -1);
  for (int g = 0; g < m; ++g) {
    for (int f = 0; f < m; ++f) {
      if (mors[f].tgt != mors[g].src) continue;
      const int i = mors[f].src, j = mors[g].tgt;
      const int e = homs[i][j].find(compose(out.morphisms[g], out.morphisms[f]));
      if (e < 0) throw InternalMismatch("composite of natural transformations not found");
      comp[static_cast<std::size_t>(g) * m + f] = first[i][j] + e;
    }
  }
  out.category = Category::make(std::move(objects), std::move(mors), std::move(ids), std::move(comp));
  return out;
}

SetFunctor pointwise_colimit(const SetFunctor& weight, const Functor& diagram, const PresheafCategory& presheaves) {
  const Category& k = *weight.base;
  const CategoryRef& base = presheaves.base;
  const Category& a = *base;
  std::vector<WeightedColimit> values;
  SetFunctor out{base, Variance::contra, {}, {}};
  for (int x = 0; x < a.object_count(); ++x) {
    SetFunctor d{weight.base, Variance::co, {}, {}};
    for (int j = 0; j < k.object_count(); ++j) d.sizes.push_back(presheaves.members[diagram.obj(j)].sizes[x]);
    for (int u = 0; u < k.morphism_count(); ++u) d.actions.push_back(presheaves.morphisms[diagram.mor(u)].components[x]);
    values.push_back(weighted_colimit(weight, d));
    out.sizes.push_back(values.back().size());
  }
  for (int f = 0; f < a.morphism_count(); ++f) {
    // f: x' -> x acts on P(x) -> P(x').
    const int x = a.tgt(f), x2 = a.src(f);
    Map act(values[x].size(), -1);
    for (int j = 0; j < k.object_count(); ++j) {
      const SetFunctor& member = presheaves.members[diagram.obj(j)];
      for (int w = 0; w < weight.sizes[j]; ++w) {
        for (int s = 0; s < member.sizes[x]; ++s) {
          const int src = values[x].cls(j, w, s);
          const int dst = values[x2].cls(j, w, member.act(f, s));
          if (act[src] >= 0 && act[src] != dst) throw InternalMismatch("pointwise colimit action is not well defined");
          act[src] = dst;
        }
      }
    }
    out.actions.push_back(std::move(act));
  }
  return out;
}

int PresheafCollection::find(const SetFunctor& f) const {
  auto it = buckets_.find(signature(f));
  if (it == buckets_.end()) return -1;
  for (int i : it->second) {
    if (is_isomorphic(members_[i], f)) return i;
  }
  return -1;
}

std::pair<int, bool> PresheafCollection::add(SetFunctor f, Provenance how) {
  if (const int i = find(f); i >= 0) return {i, false};
  const int index = size();
  buckets_[signature(f)].push_back(index);
  members_.push_back(std::move(f));
  provenance_.push_back(std::move(how));
  return {index, true};
}

bool PresheafCollection::replay(int i) const {
  const Provenance& p = provenance_[i];
  if (p.kind == Provenance::Kind::representable) return is_isomorphic(representable(base_, p.object), members_[i]);
  std::vector<SetFunctor> parts;
  for (int m : p.diagram_members) parts.push_back(members_[m]);
  const PresheafCategory pc = materialize(base_, parts);
  Functor diagram = *p.diagram;
  diagram.target = pc.category;
  return is_isomorphic(pointwise_colimit(*p.weight, diagram, pc), members_[i]);
}

PresheafCollection representables(const CategoryRef& base) {
  PresheafCollection out(base);
  for (int b = 0; b < base->object_count(); ++b) {
    Provenance how;
    how.object = b;
    out.add(representable(base, b), how);
  }
  return out;
}

}  // namespace fincat
