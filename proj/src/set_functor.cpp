#include "fincat/set_functor.hpp"

#include <algorithm>
#include <string>

namespace fincat {

int SetFunctor::total_size() const {
  int total = 0;
  for (int s : sizes) total += s;
  return total;
}

bool operator==(const SetFunctor& a, const SetFunctor& b) {
  return a.variance == b.variance && a.sizes == b.sizes && a.actions == b.actions &&
         structurally_equal(*a.base, *b.base);
}

SetFunctor flip(const SetFunctor& f) {
  return SetFunctor{opposite(f.base), f.variance == Variance::contra ? Variance::co : Variance::contra, f.sizes,
                    f.actions};
}

ValidationReport validate(const SetFunctor& f) {
  ValidationReport report;
  const Category& c = *f.base;
  if (static_cast<int>(f.sizes.size()) != c.object_count() ||
      static_cast<int>(f.actions.size()) != c.morphism_count()) {
    report.violations.push_back({"tables do not cover the base category", {}});
    return report;
  }
  for (int a = 0; a < c.object_count(); ++a) {
    if (f.sizes[a] < 0) report.violations.push_back({"negative set size", {c.object_name(a)}});
  }
  for (int u = 0; u < c.morphism_count(); ++u) {
    const int s = f.action_source(u), t = f.action_target(u);
    const Map& m = f.actions[u];
    bool ok = static_cast<int>(m.size()) == f.sizes[s];
    for (int y : m) ok = ok && y >= 0 && y < f.sizes[t];
    if (!ok) report.violations.push_back({"action is not a function between the right sets", {c.morphism_name(u)}});
  }
  if (!report.ok()) return report;
  for (int a = 0; a < c.object_count(); ++a) {
    const Map& m = f.actions[c.identity(a)];
    for (int x = 0; x < f.sizes[a]; ++x) {
      if (m[x] != x) {
        report.violations.push_back({"identity acts non-trivially", {c.object_name(a), std::to_string(x)}});
        break;
      }
    }
  }
  for (int g = 0; g < c.morphism_count(); ++g) {
    for (int u = 0; u < c.morphism_count(); ++u) {
      if (!c.composable(g, u)) continue;
      const int h = c.compose(g, u);
      if (h < 0) continue;
      // contra: act(g∘u) = act(u)∘act(g); co: act(g∘u) = act(g)∘act(u).
      const int first = f.variance == Variance::contra ? g : u;
      const int second = f.variance == Variance::contra ? u : g;
      for (int x = 0; x < f.sizes[f.action_source(first)]; ++x) {
        if (f.act(second, f.act(first, x)) != f.act(h, x)) {
          report.violations.push_back({"action does not respect composition",
                                       {c.morphism_name(g), c.morphism_name(u), std::to_string(x)}});
          break;
        }
      }
    }
  }
  return report;
}

ValidationReport validate(const SetFunctor& from, const SetFunctor& to, const NatTrans& alpha) {
  ValidationReport report;
  const Category& c = *from.base;
  if (from.variance != to.variance || !structurally_equal(c, *to.base)) {
    report.violations.push_back({"functors have different shapes", {}});
    return report;
  }
  if (static_cast<int>(alpha.components.size()) != c.object_count()) {
    report.violations.push_back({"one component per object required", {}});
    return report;
  }
  for (int a = 0; a < c.object_count(); ++a) {
    const Map& m = alpha.components[a];
    bool ok = static_cast<int>(m.size()) == from.sizes[a];
    for (int y : m) ok = ok && y >= 0 && y < to.sizes[a];
    if (!ok) report.violations.push_back({"component is not a function", {c.object_name(a)}});
  }
  if (!report.ok()) return report;
  for (int u = 0; u < c.morphism_count(); ++u) {
    const int s = from.action_source(u), t = from.action_target(u);
    for (int x = 0; x < from.sizes[s]; ++x) {
      if (alpha.components[t][from.act(u, x)] != to.act(u, alpha.components[s][x])) {
        report.violations.push_back({"naturality square", {c.morphism_name(u), std::to_string(x)}});
        break;
      }
    }
  }
  return report;
}

NatTrans identity_nat(const SetFunctor& f) {
  NatTrans id;
  for (int s : f.sizes) {
    Map m(s);
    for (int x = 0; x < s; ++x) m[x] = x;
    id.components.push_back(std::move(m));
  }
  return id;
}

NatTrans compose(const NatTrans& beta, const NatTrans& alpha) {
  NatTrans out;
  out.components.resize(alpha.components.size());
  for (std::size_t a = 0; a < alpha.components.size(); ++a) {
    for (int y : alpha.components[a]) out.components[a].push_back(beta.components[a][y]);
  }
  return out;
}

bool is_isomorphism(const NatTrans& alpha) {
  for (const Map& m : alpha.components) {
    std::vector<bool> hit(m.size(), false);
    for (int y : m) {
      if (y < 0 || y >= static_cast<int>(m.size()) || hit[y]) return false;
      hit[y] = true;
    }
  }
  return true;
}

ActionView nat_view(const SetFunctor& from, const SetFunctor& to) {
  if (from.variance != to.variance || !structurally_equal(*from.base, *to.base)) {
    throw MalformedTable("natural transformations need functors of the same shape");
  }
  ActionView view{from.sizes, to.sizes, {}};
  const Category& c = *from.base;
  for (int u = 0; u < c.morphism_count(); ++u) {
    if (c.is_identity(u)) continue;
    view.edges.push_back({from.action_source(u), from.action_target(u), &from.actions[u], &to.actions[u]});
  }
  return view;
}

namespace {

class SolutionSearch {
 public:
  SolutionSearch(const ActionView& view, NatMode mode, const std::function<bool(const std::vector<Map>&)>& visit)
      : view_(view), mode_(mode), visit_(visit) {
    const int n = static_cast<int>(view.dom_sizes.size());
    offset_.resize(n + 1, 0);
    for (int a = 0; a < n; ++a) offset_[a + 1] = offset_[a] + view.dom_sizes[a];
    node_of_.resize(offset_[n]);
    for (int a = 0; a < n; ++a) {
      for (int x = offset_[a]; x < offset_[a + 1]; ++x) node_of_[x] = a;
    }
    touching_.resize(offset_[n]);
    for (const auto& e : view.edges) {
      for (int x = 0; x < view.dom_sizes[e.from]; ++x) {
        const int src = offset_[e.from] + x;
        const int dst = offset_[e.to] + (*e.dom_map)[x];
        const int id = static_cast<int>(constraints_.size());
        constraints_.push_back({src, dst, e.cod_map});
        touching_[src].push_back(id);
        if (dst != src) touching_[dst].push_back(id);
      }
    }
    value_.assign(offset_[n], -1);
    order_variables();
    if (mode == NatMode::isomorphisms) {
      used_.resize(n);
      for (int a = 0; a < n; ++a) used_[a].assign(view.cod_sizes[a], false);
    }
  }

  void run() {
    const int n = static_cast<int>(view_.dom_sizes.size());
    for (int a = 0; a < n; ++a) {
      if (mode_ == NatMode::isomorphisms && view_.dom_sizes[a] != view_.cod_sizes[a]) return;
      if (view_.dom_sizes[a] > 0 && view_.cod_sizes[a] == 0) return;
    }
    search(0);
  }

 private:
  struct Constraint {
    int src;
    int dst;
    const Map* cod;
  };

  bool assign(int var, int y) {
    std::vector<std::pair<int, int>> queue{{var, y}};
    while (!queue.empty()) {
      auto [v, val] = queue.back();
      queue.pop_back();
      if (value_[v] >= 0) {
        if (value_[v] != val) return false;
        continue;
      }
      if (mode_ == NatMode::isomorphisms) {
        auto& used = used_[node_of_[v]];
        if (used[val]) return false;
        used[val] = true;
      }
      value_[v] = val;
      trail_.push_back(v);
      for (int id : touching_[v]) {
        const Constraint& c = constraints_[id];
        const int sv = value_[c.src];
        if (sv < 0) continue;
        const int want = (*c.cod)[sv];
        if (value_[c.dst] < 0) {
          queue.push_back({c.dst, want});
        } else if (value_[c.dst] != want) {
          return false;
        }
      }
    }
    return true;
  }

  void undo(std::size_t mark) {
    while (trail_.size() > mark) {
      const int v = trail_.back();
      trail_.pop_back();
      if (mode_ == NatMode::isomorphisms) used_[node_of_[v]][value_[v]] = false;
      value_[v] = -1;
    }
  }

  // Branch first on the nodes whose values force the most other nodes, so a
  // representable's generator is chosen before the rest of it.
  void order_variables() {
    const int n = static_cast<int>(view_.dom_sizes.size());
    std::vector<std::vector<int>> out(n);
    for (const auto& e : view_.edges) {
      if (e.from != e.to) out[e.from].push_back(e.to);
    }
    std::vector<bool> placed(n, false);
    for (int round = 0; round < n; ++round) {
      int best = -1, best_reach = -1;
      for (int a = 0; a < n; ++a) {
        if (placed[a]) continue;
        std::vector<bool> seen(n, false);
        std::vector<int> todo{a};
        seen[a] = true;
        int reach = 0;
        while (!todo.empty()) {
          const int v = todo.back();
          todo.pop_back();
          for (int w : out[v]) {
            if (seen[w]) continue;
            seen[w] = true;
            todo.push_back(w);
            if (!placed[w]) ++reach;
          }
        }
        if (reach > best_reach) {
          best = a;
          best_reach = reach;
        }
      }
      placed[best] = true;
      for (int x = offset_[best]; x < offset_[best + 1]; ++x) order_.push_back(x);
    }
  }

  bool search(int pos) {
    const int total = static_cast<int>(value_.size());
    while (pos < total && value_[order_[pos]] >= 0) ++pos;
    if (pos == total) {
      std::vector<Map> components(view_.dom_sizes.size());
      for (std::size_t a = 0; a < components.size(); ++a) {
        components[a].assign(value_.begin() + offset_[a], value_.begin() + offset_[a + 1]);
      }
      return visit_(components);
    }
    const int var = order_[pos];
    const int cod = view_.cod_sizes[node_of_[var]];
    for (int y = 0; y < cod; ++y) {
      const std::size_t mark = trail_.size();
      const bool ok = assign(var, y);
      if (ok && !search(pos + 1)) return false;
      undo(mark);
    }
    return true;
  }

  const ActionView& view_;
  NatMode mode_;
  const std::function<bool(const std::vector<Map>&)>& visit_;
  std::vector<int> offset_;
  std::vector<int> node_of_;
  std::vector<Constraint> constraints_;
  std::vector<std::vector<int>> touching_;
  std::vector<int> value_;
  std::vector<int> order_;
  std::vector<int> trail_;
  std::vector<std::vector<bool>> used_;
};

}  // namespace

void for_each_solution(const ActionView& view, NatMode mode,
                       const std::function<bool(const std::vector<Map>&)>& visit) {
  SolutionSearch search(view, mode, visit);
  search.run();
}

void for_each_nat(const SetFunctor& from, const SetFunctor& to, NatMode mode,
                  const std::function<bool(const NatTrans&)>& visit) {
  const ActionView view = nat_view(from, to);
  for_each_solution(view, mode, [&](const std::vector<Map>& components) { return visit(NatTrans{components}); });
}

NatSet::NatSet(std::vector<NatTrans> elements) : elements_(std::move(elements)) {
  for (int i = 0; i < size(); ++i) index_.emplace(elements_[i], i);
}

int NatSet::find(const NatTrans& alpha) const {
  auto it = index_.find(alpha);
  return it == index_.end() ? -1 : it->second;
}

NatSet nat_transformations(const SetFunctor& from, const SetFunctor& to) {
  std::vector<NatTrans> out;
  for_each_nat(from, to, NatMode::all, [&](const NatTrans& alpha) {
    out.push_back(alpha);
    return true;
  });
  std::sort(out.begin(), out.end());
  return NatSet(std::move(out));
}

std::uint64_t nat_count(const SetFunctor& from, const SetFunctor& to) {
  std::uint64_t count = 0;
  for_each_nat(from, to, NatMode::all, [&](const NatTrans&) {
    ++count;
    return true;
  });
  return count;
}

std::optional<NatTrans> find_isomorphism(const SetFunctor& a, const SetFunctor& b) {
  if (a.variance != b.variance || !structurally_equal(*a.base, *b.base)) return std::nullopt;
  if (signature(a) != signature(b)) return std::nullopt;
  std::optional<NatTrans> found;
  for_each_nat(a, b, NatMode::isomorphisms, [&](const NatTrans& alpha) {
    found = alpha;
    return false;
  });
  return found;
}

bool is_isomorphic(const SetFunctor& a, const SetFunctor& b) { return find_isomorphism(a, b).has_value(); }

std::vector<int> signature(const SetFunctor& f) {
  std::vector<int> sig = f.sizes;
  for (int u = 0; u < f.base->morphism_count(); ++u) {
    std::vector<bool> hit(f.sizes[f.action_target(u)], false);
    int image = 0, fixed = 0;
    for (int x = 0; x < f.sizes[f.action_source(u)]; ++x) {
      const int y = f.act(u, x);
      if (!hit[y]) {
        hit[y] = true;
        ++image;
      }
      fixed += y == x;
    }
    sig.push_back(image);
    if (f.base->src(u) == f.base->tgt(u)) sig.push_back(fixed);
  }
  return sig;
}

SetFunctor constant_functor(const CategoryRef& base, Variance variance, int n) {
  SetFunctor f{base, variance, std::vector<int>(base->object_count(), n), {}};
  Map id(n);
  for (int x = 0; x < n; ++x) id[x] = x;
  f.actions.assign(base->morphism_count(), id);
  return f;
}

SetFunctor representable(const CategoryRef& base, int b) {
  const Category& c = *base;
  SetFunctor f{base, Variance::contra, {}, {}};
  for (int a = 0; a < c.object_count(); ++a) f.sizes.push_back(c.hom_size(a, b));
  for (int u = 0; u < c.morphism_count(); ++u) {
    // u: a -> a' acts hom(a', b) -> hom(a, b) by precomposition.
    Map m;
    for (int g : c.hom(c.tgt(u), b)) m.push_back(c.hom_position(c.compose(g, u)));
    f.actions.push_back(std::move(m));
  }
  return f;
}

SetFunctor corepresentable(const CategoryRef& base, int a) {
  const Category& c = *base;
  SetFunctor f{base, Variance::co, {}, {}};
  for (int b = 0; b < c.object_count(); ++b) f.sizes.push_back(c.hom_size(a, b));
  for (int u = 0; u < c.morphism_count(); ++u) {
    Map m;
    for (int g : c.hom(a, c.src(u))) m.push_back(c.hom_position(c.compose(u, g)));
    f.actions.push_back(std::move(m));
  }
  return f;
}

SetFunctor precompose(const SetFunctor& f, const Functor& g) {
  SetFunctor out{g.source, f.variance, {}, {}};
  for (int a = 0; a < g.source->object_count(); ++a) out.sizes.push_back(f.sizes[g.obj(a)]);
  for (int u = 0; u < g.source->morphism_count(); ++u) out.actions.push_back(f.actions[g.mor(u)]);
  return out;
}

Elements category_of_elements(const SetFunctor& f) {
  const Category& c = *f.base;
  Elements el;
  std::vector<std::string> objects;
  el.offset.resize(c.object_count() + 1, 0);
  for (int k = 0; k < c.object_count(); ++k) {
    el.offset[k + 1] = el.offset[k] + f.sizes[k];
    for (int x = 0; x < f.sizes[k]; ++x) {
      el.element.push_back({k, x});
      objects.push_back(c.object_name(k) + ":" + std::to_string(x));
    }
  }
  std::vector<MorphismData> mors;
  std::vector<int> base_mor;
  std::vector<int> first(c.morphism_count(), 0);
  for (int u = 0; u < c.morphism_count(); ++u) {
    first[u] = static_cast<int>(mors.size());
    const int s = f.action_source(u), t = f.action_target(u);
    for (int x = 0; x < f.sizes[s]; ++x) {
      mors.push_back({c.morphism_name(u) + "@" + c.object_name(s) + ":" + std::to_string(x), el.object_of(s, x),
                      el.object_of(t, f.act(u, x))});
      base_mor.push_back(u);
    }
  }
  std::vector<int> ids;
  for (const auto& [k, x] : el.element) ids.push_back(first[c.identity(k)] + x);
  const int m = static_cast<int>(mors.size());
  std::vector<int> comp(static_cast<std::size_t>(m) * m, -1);
  for (int g = 0; g < m; ++g) {
    for (int u = 0; u < m; ++u) {
      if (mors[u].tgt != mors[g].src) continue;
      // Base morphism whose action is act(g)∘act(u).
      const int w = f.variance == Variance::contra ? c.compose(base_mor[u], base_mor[g])
                                                   : c.compose(base_mor[g], base_mor[u]);
      const int x = el.element[mors[u].src].second;
      comp[static_cast<std::size_t>(g) * m + u] = first[w] + x;
    }
  }
  el.category = Category::make(std::move(objects), std::move(mors), std::move(ids), std::move(comp));
  el.projection.source = el.category;
  el.projection.target = f.variance == Variance::contra ? opposite(f.base) : f.base;
  for (const auto& [k, x] : el.element) el.projection.objects.push_back(k);
  el.projection.morphisms = base_mor;
  return el;
}

}  // namespace fincat
