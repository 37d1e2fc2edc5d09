#include "fincat/profunctor.hpp"

#include <algorithm>
#include <map>
#include <string>

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

// Records x -> y, insisting that repeated assignments agree.
void assign(Map& m, int x, int y, const char* what) {
  if (m[x] >= 0 && m[x] != y) throw InternalMismatch(std::string(what) + " is not well defined on classes");
  m[x] = y;
}

void require_same(const CategoryRef& a, const CategoryRef& b, const char* what) {
  if (!structurally_equal(*a, *b)) throw EndpointMismatch(what);
}

ActionView cell_view(const Profunctor& from, const Profunctor& to) {
  require_same(from.contra, to.contra, "2-cell between modules with different targets");
  require_same(from.co, to.co, "2-cell between modules with different sources");
  const Category& b = *from.contra;
  const Category& a = *from.co;
  const int na = a.object_count();
  ActionView view{from.sizes, to.sizes, {}};
  for (int u = 0; u < b.morphism_count(); ++u) {
    if (b.is_identity(u)) continue;
    for (int x = 0; x < na; ++x) {
      view.edges.push_back({b.tgt(u) * na + x, b.src(u) * na + x, &from.left_action(u, x), &to.left_action(u, x)});
    }
  }
  for (int y = 0; y < b.object_count(); ++y) {
    for (int v = 0; v < a.morphism_count(); ++v) {
      if (a.is_identity(v)) continue;
      view.edges.push_back({y * na + a.src(v), y * na + a.tgt(v), &from.right_action(y, v), &to.right_action(y, v)});
    }
  }
  return view;
}

}  // namespace

ValidationReport validate(const Profunctor& from, const Profunctor& to, const ProfMorphism& theta) {
  ValidationReport report;
  const ActionView view = cell_view(from, to);
  if (theta.components.size() != view.dom_sizes.size()) {
    report.violations.push_back({"one component per cell required", {}});
    return report;
  }
  for (std::size_t c = 0; c < view.dom_sizes.size(); ++c) {
    bool ok = static_cast<int>(theta.components[c].size()) == view.dom_sizes[c];
    for (int y : theta.components[c]) ok = ok && y >= 0 && y < view.cod_sizes[c];
    if (!ok) report.violations.push_back({"component is not a function", {std::to_string(c)}});
  }
  if (!report.ok()) return report;
  for (const auto& e : view.edges) {
    for (int x = 0; x < view.dom_sizes[e.from]; ++x) {
      if (theta.components[e.to][(*e.dom_map)[x]] != (*e.cod_map)[theta.components[e.from][x]]) {
        report.violations.push_back({"2-cell does not commute with an action", {std::to_string(e.from), std::to_string(x)}});
        break;
      }
    }
  }
  return report;
}

ProfMorphism identity_cell(const Profunctor& p) {
  ProfMorphism id;
  for (int s : p.sizes) {
    Map m(s);
    for (int x = 0; x < s; ++x) m[x] = x;
    id.components.push_back(std::move(m));
  }
  return id;
}

ProfMorphism compose(const ProfMorphism& second, const ProfMorphism& first) {
  return ProfMorphism{compose(NatTrans{second.components}, NatTrans{first.components}).components};
}

bool is_isomorphism(const ProfMorphism& theta) { return is_isomorphism(NatTrans{theta.components}); }

std::vector<ProfMorphism> two_cells(const Profunctor& from, const Profunctor& to) {
  std::vector<ProfMorphism> out;
  const ActionView view = cell_view(from, to);
  for_each_solution(view, NatMode::all, [&](const std::vector<Map>& c) {
    out.push_back(ProfMorphism{c});
    return true;
  });
  std::sort(out.begin(), out.end());
  return out;
}

std::optional<ProfMorphism> find_isomorphism(const Profunctor& a, const Profunctor& b) {
  if (!structurally_equal(*a.contra, *b.contra) || !structurally_equal(*a.co, *b.co)) return std::nullopt;
  std::optional<ProfMorphism> found;
  const ActionView view = cell_view(a, b);
  for_each_solution(view, NatMode::isomorphisms, [&](const std::vector<Map>& c) {
    found = ProfMorphism{c};
    return false;
  });
  return found;
}

Profunctor id_module(const CategoryRef& a) { return hom_bifunctor(a); }

int Composite::cls(int b, int c, int a, int i, int j) const {
  return cells[b * objects_c + c].cls(a, i * outer_sizes[b * objects_a + a] + j);
}

std::array<int, 3> Composite::representative(int b, int c, int cl) const {
  const auto [a, x] = cells[b * objects_c + c].representatives[cl];
  const int width = outer_sizes[b * objects_a + a];
  return {a, x / width, x % width};
}

Composite compose(const Profunctor& outer, const Profunctor& inner) {
  require_same(inner.contra, outer.co, "composite of modules whose endpoints do not meet");
  const Category& b = *outer.contra;
  const Category& a = *outer.co;
  const Category& c = *inner.co;
  const int nb = b.object_count(), na = a.object_count(), nc = c.object_count();
  Composite out;
  out.objects_a = na;
  out.objects_c = nc;
  out.outer_sizes = outer.sizes;
  out.result = Profunctor{outer.contra, inner.co, {}, {}, {}};
  for (int y = 0; y < nb; ++y) {
    for (int z = 0; z < nc; ++z) {
      out.cells.push_back(coend(tensor(column(inner, z), row(outer, y))));
      out.result.sizes.push_back(out.cells.back().size);
    }
  }
  for (int u = 0; u < b.morphism_count(); ++u) {
    // u: y' -> y acts cell (y, z) -> (y', z) through the outer factor.
    const int y = b.tgt(u), y2 = b.src(u);
    for (int z = 0; z < nc; ++z) {
      Map act(out.result.size(y, z), -1);
      for (int x = 0; x < na; ++x) {
        const Map& l = outer.left_action(u, x);
        for (int i = 0; i < inner.size(x, z); ++i) {
          for (int j = 0; j < outer.size(y, x); ++j) assign(act, out.cls(y, z, x, i, j), out.cls(y2, z, x, i, l[j]), "composite left action");
        }
      }
      out.result.left.push_back(std::move(act));
    }
  }
  for (int y = 0; y < nb; ++y) {
    for (int v = 0; v < c.morphism_count(); ++v) {
      const int z = c.src(v), z2 = c.tgt(v);
      Map act(out.result.size(y, z), -1);
      for (int x = 0; x < na; ++x) {
        const Map& r = inner.right_action(x, v);
        for (int i = 0; i < inner.size(x, z); ++i) {
          for (int j = 0; j < outer.size(y, x); ++j) assign(act, out.cls(y, z, x, i, j), out.cls(y, z2, x, r[i], j), "composite right action");
        }
      }
      out.result.right.push_back(std::move(act));
    }
  }
  return out;
}

ModulePair functor_to_modules(const Functor& t) {
  const Category& a = *t.source;
  const Category& b = *t.target;
  const int na = a.object_count(), nb = b.object_count();
  ModulePair out{Profunctor{t.target, t.source, {}, {}, {}}, Profunctor{t.source, t.target, {}, {}, {}}};
  Profunctor& lower = out.lower;
  for (int y = 0; y < nb; ++y) {
    for (int x = 0; x < na; ++x) lower.sizes.push_back(b.hom_size(y, t.obj(x)));
  }
  for (int u = 0; u < b.morphism_count(); ++u) {
    for (int x = 0; x < na; ++x) {
      Map act;
      for (int m : b.hom(b.tgt(u), t.obj(x))) act.push_back(b.hom_position(b.compose(m, u)));
      lower.left.push_back(std::move(act));
    }
  }
  for (int y = 0; y < nb; ++y) {
    for (int v = 0; v < a.morphism_count(); ++v) {
      Map act;
      for (int m : b.hom(y, t.obj(a.src(v)))) act.push_back(b.hom_position(b.compose(t.mor(v), m)));
      lower.right.push_back(std::move(act));
    }
  }
  Profunctor& upper = out.upper;
  for (int x = 0; x < na; ++x) {
    for (int y = 0; y < nb; ++y) upper.sizes.push_back(b.hom_size(t.obj(x), y));
  }
  for (int v = 0; v < a.morphism_count(); ++v) {
    for (int y = 0; y < nb; ++y) {
      Map act;
      for (int m : b.hom(t.obj(a.tgt(v)), y)) act.push_back(b.hom_position(b.compose(m, t.mor(v))));
      upper.left.push_back(std::move(act));
    }
  }
  for (int x = 0; x < na; ++x) {
    for (int u = 0; u < b.morphism_count(); ++u) {
      Map act;
      for (int m : b.hom(t.obj(x), b.src(u))) act.push_back(b.hom_position(b.compose(u, m)));
      upper.right.push_back(std::move(act));
    }
  }
  return out;
}

Profunctor weight_module(const SetFunctor& phi) {
  if (phi.variance != Variance::contra) throw MalformedTable("weight module expects a presheaf");
  Profunctor p{phi.base, unit_category(), phi.sizes, phi.actions, {}};
  for (int s : phi.sizes) {
    Map id(s);
    for (int x = 0; x < s; ++x) id[x] = x;
    p.right.push_back(std::move(id));
  }
  return p;
}

Profunctor coweight_module(const SetFunctor& psi) {
  if (psi.variance != Variance::co) throw MalformedTable("coweight module expects a covariant functor");
  Profunctor p{unit_category(), psi.base, psi.sizes, {}, psi.actions};
  for (int s : psi.sizes) {
    Map id(s);
    for (int x = 0; x < s; ++x) id[x] = x;
    p.left.push_back(std::move(id));
  }
  return p;
}

RightLift right_lift(const Profunctor& f, const Profunctor& h) {
  require_same(f.contra, h.contra, "right lifting needs modules with a common target");
  const Category& b = *f.contra;
  const Category& a = *f.co;
  const Category& c = *h.co;
  const int na = a.object_count(), nc = c.object_count();
  RightLift out;
  out.lift = Profunctor{f.co, h.co, {}, {}, {}};
  for (int x = 0; x < na; ++x) {
    for (int z = 0; z < nc; ++z) {
      out.cells.push_back(nat_transformations(column(f, x), column(h, z)));
      out.lift.sizes.push_back(out.cells.back().size());
    }
  }
  for (int u = 0; u < a.morphism_count(); ++u) {
    const int x = a.tgt(u), x2 = a.src(u);
    for (int z = 0; z < nc; ++z) {
      Map act;
      for (const NatTrans& alpha : out.cells[x * nc + z].elements()) {
        NatTrans moved;
        for (int y = 0; y < b.object_count(); ++y) {
          Map comp;
          for (int w : f.right_action(y, u)) comp.push_back(alpha.components[y][w]);
          moved.components.push_back(std::move(comp));
        }
        act.push_back(out.cells[x2 * nc + z].find(moved));
      }
      out.lift.left.push_back(std::move(act));
    }
  }
  for (int x = 0; x < na; ++x) {
    for (int v = 0; v < c.morphism_count(); ++v) {
      const int z = c.src(v), z2 = c.tgt(v);
      Map act;
      for (const NatTrans& alpha : out.cells[x * nc + z].elements()) {
        NatTrans moved;
        for (int y = 0; y < b.object_count(); ++y) {
          Map comp;
          for (int w : alpha.components[y]) comp.push_back(h.right_action(y, v)[w]);
          moved.components.push_back(std::move(comp));
        }
        act.push_back(out.cells[x * nc + z2].find(moved));
      }
      out.lift.right.push_back(std::move(act));
    }
  }
  out.composite = compose(f, out.lift);
  for (int y = 0; y < b.object_count(); ++y) {
    for (int z = 0; z < nc; ++z) {
      Map comp(out.composite.result.size(y, z), -1);
      for (int x = 0; x < na; ++x) {
        for (int i = 0; i < out.lift.size(x, z); ++i) {
          const NatTrans& alpha = out.cells[x * nc + z][i];
          for (int j = 0; j < f.size(y, x); ++j) assign(comp, out.composite.cls(y, z, x, i, j), alpha.components[y][j], "lifting counit");
        }
      }
      out.counit.components.push_back(std::move(comp));
    }
  }
  return out;
}

RightExtension right_extend(const Profunctor& g, const Profunctor& h) {
  require_same(g.co, h.co, "right extension needs modules with a common source");
  const Category& a = *g.contra;
  const Category& b = *h.contra;
  const Category& c = *g.co;
  const int na = a.object_count(), nb = b.object_count();
  RightExtension out;
  out.extension = Profunctor{h.contra, g.contra, {}, {}, {}};
  for (int y = 0; y < nb; ++y) {
    for (int x = 0; x < na; ++x) {
      out.cells.push_back(nat_transformations(row(g, x), row(h, y)));
      out.extension.sizes.push_back(out.cells.back().size());
    }
  }
  for (int u = 0; u < b.morphism_count(); ++u) {
    const int y = b.tgt(u), y2 = b.src(u);
    for (int x = 0; x < na; ++x) {
      Map act;
      for (const NatTrans& alpha : out.cells[y * na + x].elements()) {
        NatTrans moved;
        for (int z = 0; z < c.object_count(); ++z) {
          Map comp;
          for (int w : alpha.components[z]) comp.push_back(h.left_action(u, z)[w]);
          moved.components.push_back(std::move(comp));
        }
        act.push_back(out.cells[y2 * na + x].find(moved));
      }
      out.extension.left.push_back(std::move(act));
    }
  }
  for (int y = 0; y < nb; ++y) {
    for (int v = 0; v < a.morphism_count(); ++v) {
      const int x = a.src(v), x2 = a.tgt(v);
      Map act;
      for (const NatTrans& alpha : out.cells[y * na + x].elements()) {
        NatTrans moved;
        for (int z = 0; z < c.object_count(); ++z) {
          Map comp;
          for (int w : g.left_action(v, z)) comp.push_back(alpha.components[z][w]);
          moved.components.push_back(std::move(comp));
        }
        act.push_back(out.cells[y * na + x2].find(moved));
      }
      out.extension.right.push_back(std::move(act));
    }
  }
  out.composite = compose(out.extension, g);
  for (int y = 0; y < nb; ++y) {
    for (int z = 0; z < c.object_count(); ++z) {
      Map comp(out.composite.result.size(y, z), -1);
      for (int x = 0; x < na; ++x) {
        for (int i = 0; i < g.size(x, z); ++i) {
          for (int j = 0; j < out.extension.size(y, x); ++j) {
            assign(comp, out.composite.cls(y, z, x, i, j), out.cells[y * na + x][j].components[z][i], "extension counit");
          }
        }
      }
      out.counit.components.push_back(std::move(comp));
    }
  }
  return out;
}

namespace {

bool maps_bijectively(const std::vector<ProfMorphism>& images, const std::vector<ProfMorphism>& targets) {
  std::map<ProfMorphism, int> index;
  for (int i = 0; i < static_cast<int>(targets.size()); ++i) index.emplace(targets[i], i);
  Map m;
  for (const auto& image : images) {
    auto it = index.find(image);
    m.push_back(it == index.end() ? -1 : it->second);
  }
  return bijective(m, static_cast<int>(targets.size()));
}

}  // namespace

bool lift_bijection_holds(const Profunctor& f, const Profunctor& h, const Profunctor& k) {
  const RightLift lift = right_lift(f, h);
  const Composite fk = compose(f, k);
  const int na = f.co->object_count(), nb = f.contra->object_count(), nc = h.co->object_count();
  std::vector<ProfMorphism> images;
  for (const ProfMorphism& theta : two_cells(k, lift.lift)) {
    ProfMorphism image;
    for (int y = 0; y < nb; ++y) {
      for (int z = 0; z < nc; ++z) {
        Map comp(fk.result.size(y, z), -1);
        for (int x = 0; x < na; ++x) {
          for (int i = 0; i < k.size(x, z); ++i) {
            const int moved = theta.components[x * nc + z][i];
            for (int j = 0; j < f.size(y, x); ++j) {
              const int target = lift.counit.components[y * nc + z][lift.composite.cls(y, z, x, moved, j)];
              assign(comp, fk.cls(y, z, x, i, j), target, "whiskered 2-cell");
            }
          }
        }
        image.components.push_back(std::move(comp));
      }
    }
    images.push_back(std::move(image));
  }
  return maps_bijectively(images, two_cells(fk.result, h));
}

bool extend_bijection_holds(const Profunctor& g, const Profunctor& h, const Profunctor& k) {
  const RightExtension ext = right_extend(g, h);
  const Composite kg = compose(k, g);
  const int na = g.contra->object_count(), nb = h.contra->object_count(), nc = g.co->object_count();
  std::vector<ProfMorphism> images;
  for (const ProfMorphism& theta : two_cells(k, ext.extension)) {
    ProfMorphism image;
    for (int y = 0; y < nb; ++y) {
      for (int z = 0; z < nc; ++z) {
        Map comp(kg.result.size(y, z), -1);
        for (int x = 0; x < na; ++x) {
          for (int i = 0; i < g.size(x, z); ++i) {
            for (int j = 0; j < k.size(y, x); ++j) {
              const int moved = theta.components[y * na + x][j];
              const int target = ext.counit.components[y * nc + z][ext.composite.cls(y, z, x, i, moved)];
              assign(comp, kg.cls(y, z, x, i, j), target, "whiskered 2-cell");
            }
          }
        }
        image.components.push_back(std::move(comp));
      }
    }
    images.push_back(std::move(image));
  }
  return maps_bijectively(images, two_cells(kg.result, h));
}

std::optional<ProfAdjunction> has_right_adjoint(const Profunctor& f) {
  const CategoryRef& bref = f.contra;
  const Category& b = *f.contra;
  const Category& a = *f.co;
  const int na = a.object_count(), nb = b.object_count();
  RightLift adj = right_lift(f, id_module(bref));
  const RightLift ff = right_lift(f, f);
  Composite gf = compose(adj.lift, f);

  // Canonical comparison g∘f -> {|f,f|}: [b, i, α] ↦ (z ↦ f(α(z), a) i).
  std::vector<Map> comparison;
  for (int x2 = 0; x2 < na; ++x2) {
    for (int x = 0; x < na; ++x) {
      Map comp(gf.result.size(x2, x), -1);
      for (int y = 0; y < nb; ++y) {
        for (int i = 0; i < f.size(y, x); ++i) {
          for (int j = 0; j < adj.lift.size(x2, y); ++j) {
            const NatTrans& alpha = adj.cells[x2 * nb + y][j];
            NatTrans image;
            for (int y2 = 0; y2 < nb; ++y2) {
              auto hom = b.hom(y2, y);
              Map c;
              for (int pos : alpha.components[y2]) c.push_back(f.left_action(hom[pos], x)[i]);
              image.components.push_back(std::move(c));
            }
            assign(comp, gf.cls(x2, x, y, i, j), ff.cells[x2 * na + x].find(image), "adjunction comparison");
          }
        }
      }
      if (!bijective(comp, ff.lift.size(x2, x))) return std::nullopt;
      comparison.push_back(std::move(comp));
    }
  }

  ProfAdjunction out;
  // Unit: m in A(a', a) goes to the class whose comparison image is f(-, m).
  for (int x2 = 0; x2 < na; ++x2) {
    for (int x = 0; x < na; ++x) {
      const Map& comp = comparison[x2 * na + x];
      Map inverse(comp.size(), -1);
      for (int cl = 0; cl < static_cast<int>(comp.size()); ++cl) inverse[comp[cl]] = cl;
      Map unit;
      for (int m : a.hom(x2, x)) {
        NatTrans image;
        for (int y2 = 0; y2 < nb; ++y2) image.components.push_back(f.right_action(y2, m));
        unit.push_back(inverse[ff.cells[x2 * na + x].find(image)]);
      }
      out.unit.components.push_back(std::move(unit));
    }
  }

  auto unit_rep = [&](int x) {
    const int cl = out.unit.components[x * na + x][a.hom_position(a.identity(x))];
    return gf.representative(x, x, cl);
  };
  // Triangle for f: (ε f)∘(f η) = 1.
  for (int x = 0; x < na; ++x) {
    const auto [y1, i, j] = unit_rep(x);
    const NatTrans& alpha = adj.cells[x * nb + y1][j];
    for (int y = 0; y < nb; ++y) {
      for (int w = 0; w < f.size(y, x); ++w) {
        const int m = b.hom(y, y1)[alpha.components[y][w]];
        if (f.left_action(m, x)[i] != w) throw InternalMismatch("triangle identity fails for the left adjoint");
      }
    }
  }
  // Triangle for g: (g ε)∘(η g) = 1.
  for (int x = 0; x < na; ++x) {
    const auto [y1, i, j] = unit_rep(x);
    for (int y = 0; y < nb; ++y) {
      for (int j0 = 0; j0 < adj.lift.size(x, y); ++j0) {
        const int pos = adj.counit.components[y1 * nb + y][adj.composite.cls(y1, y, x, j0, i)];
        const int m = b.hom(y1, y)[pos];
        if (adj.lift.right_action(x, m)[j] != j0) throw InternalMismatch("triangle identity fails for the right adjoint");
      }
    }
  }

  out.right = std::move(adj.lift);
  out.left_after_right = std::move(adj.composite);
  out.counit = std::move(adj.counit);
  out.right_after_left = std::move(gf);
  return out;
}

ProfMorphism left_unitor(const Profunctor& f) {
  const Category& b = *f.contra;
  const int na = f.co->object_count(), nb = b.object_count();
  const Composite c = compose(id_module(f.contra), f);
  ProfMorphism out;
  for (int y = 0; y < nb; ++y) {
    for (int x = 0; x < na; ++x) {
      Map comp(c.result.size(y, x), -1);
      for (int y2 = 0; y2 < nb; ++y2) {
        auto hom = b.hom(y, y2);
        for (int i = 0; i < f.size(y2, x); ++i) {
          for (int j = 0; j < static_cast<int>(hom.size()); ++j) {
            assign(comp, c.cls(y, x, y2, i, j), f.left_action(hom[j], x)[i], "left unitor");
          }
        }
      }
      if (!bijective(comp, f.size(y, x))) throw InternalMismatch("left unitor is not invertible");
      out.components.push_back(std::move(comp));
    }
  }
  return out;
}

ProfMorphism right_unitor(const Profunctor& f) {
  const Category& a = *f.co;
  const int na = a.object_count(), nb = f.contra->object_count();
  const Composite c = compose(f, id_module(f.co));
  ProfMorphism out;
  for (int y = 0; y < nb; ++y) {
    for (int x = 0; x < na; ++x) {
      Map comp(c.result.size(y, x), -1);
      for (int x2 = 0; x2 < na; ++x2) {
        auto hom = a.hom(x2, x);
        for (int i = 0; i < static_cast<int>(hom.size()); ++i) {
          for (int j = 0; j < f.size(y, x2); ++j) {
            assign(comp, c.cls(y, x, x2, i, j), f.right_action(y, hom[i])[j], "right unitor");
          }
        }
      }
      if (!bijective(comp, f.size(y, x))) throw InternalMismatch("right unitor is not invertible");
      out.components.push_back(std::move(comp));
    }
  }
  return out;
}

ProfMorphism associator(const Profunctor& h, const Profunctor& g, const Profunctor& f) {
  // f: X ⇸ Y, g: Y ⇸ Z, h: Z ⇸ W.
  const Composite hg = compose(h, g);
  const Composite left = compose(hg.result, f);
  const Composite gf = compose(g, f);
  const Composite right = compose(h, gf.result);
  const int nw = h.contra->object_count(), nz = g.contra->object_count();
  const int ny = f.contra->object_count(), nx = f.co->object_count();
  ProfMorphism out;
  for (int w = 0; w < nw; ++w) {
    for (int x = 0; x < nx; ++x) {
      Map comp(left.result.size(w, x), -1);
      for (int y = 0; y < ny; ++y) {
        for (int i = 0; i < f.size(y, x); ++i) {
          for (int z = 0; z < nz; ++z) {
            for (int j = 0; j < g.size(z, y); ++j) {
              for (int k = 0; k < h.size(w, z); ++k) {
                assign(comp, left.cls(w, x, y, i, hg.cls(w, y, z, j, k)), right.cls(w, x, z, gf.cls(z, x, y, i, j), k),
                       "associator");
              }
            }
          }
        }
      }
      if (!bijective(comp, right.result.size(w, x))) throw InternalMismatch("associator is not invertible");
      out.components.push_back(std::move(comp));
    }
  }
  return out;
}

}  // namespace fincat
