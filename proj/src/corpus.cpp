#include "fincat/corpus.hpp"

#include <array>
#include <map>

namespace fincat {

CategoryRef idempotent_monoid() {
  // elements 1, e; e·e = e
  return monoid_category({"1", "e"}, {{0, 1}, {1, 1}});
}

CategoryRef diamond_lattice() {
  const std::vector<std::string> names{"0", "a", "b", "c", "1"};
  std::vector<std::vector<bool>> leq(5, std::vector<bool>(5, false));
  for (int i = 0; i < 5; ++i) {
    leq[i][i] = true;
    leq[0][i] = true;
    leq[i][4] = true;
  }
  return poset_category(names, leq);
}

namespace {

int ipow(int base, int exp) {
  int r = 1;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

int encode(const Map& f, int codomain) {
  int p = 0;
  for (int y : f) p = p * codomain + y;
  return p;
}

Map decode(int p, int domain, int codomain) {
  Map f(domain);
  for (int x = domain - 1; x >= 0; --x) {
    f[x] = p % codomain;
    p /= codomain;
  }
  return f;
}

}  // namespace

CategoryRef finset_category(const std::vector<int>& sizes) {
  const int n = static_cast<int>(sizes.size());
  std::vector<std::string> objects;
  for (int s : sizes) objects.push_back(std::to_string(s));
  std::vector<MorphismData> mors;
  std::vector<std::vector<int>> first(n, std::vector<int>(n, 0));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      first[i][j] = static_cast<int>(mors.size());
      const int count = ipow(sizes[j], sizes[i]);
      for (int p = 0; p < count; ++p) {
        std::string digits;
        for (int y : decode(p, sizes[i], sizes[j])) digits += std::to_string(y);
        mors.push_back({objects[i] + ">" + objects[j] + ":" + digits, i, j});
      }
    }
  }
  std::vector<int> ids;
  for (int i = 0; i < n; ++i) {
    Map id(sizes[i]);
    for (int x = 0; x < sizes[i]; ++x) id[x] = x;
    ids.push_back(first[i][i] + encode(id, sizes[i]));
  }
  const int m = static_cast<int>(mors.size());
  std::vector<Map> fn;
  for (const auto& mor : mors) {
    fn.push_back(decode(static_cast<int>(&mor - mors.data()) - first[mor.src][mor.tgt], sizes[mor.src], sizes[mor.tgt]));
  }
  std::vector<int> comp(static_cast<std::size_t>(m) * m, -1);
  for (int g = 0; g < m; ++g) {
    for (int f = 0; f < m; ++f) {
      if (mors[f].tgt != mors[g].src) continue;
      Map h;
      for (int y : fn[f]) h.push_back(fn[g][y]);
      comp[static_cast<std::size_t>(g) * m + f] = first[mors[f].src][mors[g].tgt] + encode(h, sizes[mors[g].tgt]);
    }
  }
  return Category::make(std::move(objects), std::move(mors), std::move(ids), std::move(comp));
}

Map finset_function(const Category& c, int f) {
  const int domain = std::stoi(c.object_name(c.src(f)));
  const int codomain = std::stoi(c.object_name(c.tgt(f)));
  return decode(c.hom_position(f), domain, codomain);
}

const std::vector<NamedCategory>& fixture_categories() {
  static const std::vector<NamedCategory> fixtures{
      {"I", unit_category()},
      {"Empty", empty_category()},
      {"Two", arrow_category()},
      {"span", span_category()},
      {"cospan", cospan_category()},
      {"parallel", parallel_pair_category()},
      {"M", idempotent_monoid()},
      {"Z2", cyclic_group(2)},
      {"Z3", cyclic_group(3)},
      {"M3", diamond_lattice()},
      {"discrete2", discrete_category(2)},
      {"chain3", chain_category(3)},
  };
  return fixtures;
}

CategoryRef fixture_category(const std::string& name) {
  for (const auto& f : fixture_categories()) {
    if (f.name == name) return f.category;
  }
  throw MalformedTable("no fixture category named '" + name + "'");
}

Bifunctor group_cospan_diagram(int n) {
  Bifunctor s{span_category(), cyclic_group(n), {}, {}, {}};
  const Category& k = *s.contra;
  const Category& g = *s.co;
  const int apex = *k.object_id("a");
  for (int x = 0; x < k.object_count(); ++x) s.sizes.push_back(x == apex ? 1 : n);
  for (int u = 0; u < k.morphism_count(); ++u) {
    Map act(s.sizes[k.tgt(u)]);
    for (int t = 0; t < static_cast<int>(act.size()); ++t) act[t] = k.is_identity(u) ? t : 0;
    s.left.push_back(std::move(act));
  }
  for (int x = 0; x < k.object_count(); ++x) {
    for (int v = 0; v < g.morphism_count(); ++v) {
      Map act(s.sizes[x]);
      for (int t = 0; t < s.sizes[x]; ++t) act[t] = x == apex ? 0 : (t + v) % n;
      s.right.push_back(std::move(act));
    }
  }
  return s;
}

SetFunctor terminal_presheaf(const CategoryRef& base) { return constant_functor(base, Variance::contra, 1); }
SetFunctor initial_presheaf(const CategoryRef& base) { return constant_functor(base, Variance::contra, 0); }

namespace {

struct Triple {
  int g, f, h;
};

// Triples (g, f, g∘f) indexed by the largest morphism id involved.
std::vector<std::vector<Triple>> composition_triples(const Category& c) {
  std::vector<std::vector<Triple>> out(c.morphism_count());
  for (int g = 0; g < c.morphism_count(); ++g) {
    for (int f = 0; f < c.morphism_count(); ++f) {
      if (!c.composable(g, f)) continue;
      const int h = c.compose(g, f);
      out[std::max({g, f, h})].push_back({g, f, h});
    }
  }
  return out;
}

bool triple_holds(const SetFunctor& s, const Triple& t) {
  const int first = s.variance == Variance::contra ? t.g : t.f;
  const int second = s.variance == Variance::contra ? t.f : t.g;
  for (int x = 0; x < s.sizes[s.action_source(first)]; ++x) {
    if (s.act(second, s.act(first, x)) != s.act(t.h, x)) return false;
  }
  return true;
}

class PresheafEnumerator {
 public:
  PresheafEnumerator(const CategoryRef& base, Variance variance, std::vector<int> sizes)
      : triples_(composition_triples(*base)) {
    current_ = SetFunctor{base, variance, std::move(sizes), std::vector<Map>(base->morphism_count())};
  }

  void run(const std::function<void(const SetFunctor&)>& visit) {
    visit_ = &visit;
    step(0);
  }

 private:
  void step(int u) {
    const Category& c = *current_.base;
    if (u == c.morphism_count()) {
      (*visit_)(current_);
      return;
    }
    const int s = current_.sizes[current_.action_source(u)];
    const int t = current_.sizes[current_.action_target(u)];
    auto accept = [&] {
      for (const Triple& tr : triples_[u]) {
        if (!triple_holds(current_, tr)) return false;
      }
      return true;
    };
    if (c.is_identity(u)) {
      current_.actions[u].resize(s);
      for (int x = 0; x < s; ++x) current_.actions[u][x] = x;
      if (accept()) step(u + 1);
      return;
    }
    if (s > 0 && t == 0) return;
    const int count = ipow(t, s);
    for (int p = 0; p < count; ++p) {
      current_.actions[u] = decode(p, s, t);
      if (accept()) step(u + 1);
    }
  }

  std::vector<std::vector<Triple>> triples_;
  SetFunctor current_;
  const std::function<void(const SetFunctor&)>* visit_ = nullptr;
};

void add_up_to_iso(std::vector<SetFunctor>& out, std::map<std::vector<int>, std::vector<int>>& buckets,
                   const SetFunctor& f) {
  auto& bucket = buckets[signature(f)];
  for (int i : bucket) {
    if (is_isomorphic(out[i], f)) return;
  }
  bucket.push_back(static_cast<int>(out.size()));
  out.push_back(f);
}

}  // namespace

std::vector<SetFunctor> enumerate_presheaves(const CategoryRef& base, int max_size, Variance variance) {
  const int n = base->object_count();
  std::vector<SetFunctor> out;
  std::map<std::vector<int>, std::vector<int>> buckets;
  std::vector<int> sizes(n, 0);
  while (true) {
    PresheafEnumerator(base, variance, sizes).run([&](const SetFunctor& f) { add_up_to_iso(out, buckets, f); });
    int i = 0;
    while (i < n && sizes[i] == max_size) sizes[i++] = 0;
    if (i == n) break;
    ++sizes[i];
  }
  return out;
}

std::vector<NamedPresheaf> presheaf_corpus() {
  std::vector<NamedPresheaf> corpus;
  // Enumeration bound per category, kept small where the category is large.
  const std::map<std::string, int> enumerate_up_to{{"I", 3},     {"Two", 2},  {"span", 1},      {"cospan", 1},
                                                   {"parallel", 2}, {"M", 3}, {"Z2", 3},        {"Z3", 3},
                                                   {"discrete2", 2}, {"chain3", 1}};
  for (const auto& [name, k] : fixture_categories()) {
    std::vector<SetFunctor> members;
    std::vector<std::string> labels;
    std::map<std::vector<int>, std::vector<int>> buckets;
    auto add = [&](const std::string& label, const SetFunctor& f) {
      const auto before = members.size();
      add_up_to_iso(members, buckets, f);
      if (members.size() > before) labels.push_back(label);
    };
    for (int b = 0; b < k->object_count(); ++b) add("Y(" + k->object_name(b) + ")", representable(k, b));
    add("initial", initial_presheaf(k));
    add("terminal", terminal_presheaf(k));
    if (auto it = enumerate_up_to.find(name); it != enumerate_up_to.end()) {
      int index = 0;
      for (const auto& f : enumerate_presheaves(k, it->second)) add("p" + std::to_string(index++), f);
    }
    for (std::size_t i = 0; i < members.size(); ++i) corpus.push_back({name + ":" + labels[i], members[i]});
  }
  return corpus;
}

CategoryRef random_small_category(std::mt19937& rng) {
  std::vector<CategoryRef> pool;
  for (const auto& f : fixture_categories()) {
    if (f.category->object_count() <= 3) pool.push_back(f.category);
  }
  std::uniform_int_distribution<int> pick(0, static_cast<int>(pool.size()) + 2);
  const int choice = pick(rng);
  if (choice < static_cast<int>(pool.size())) return pool[choice];
  // Random preorder on two or three elements.
  const int n = std::uniform_int_distribution<int>(2, 3)(rng);
  std::vector<std::vector<bool>> leq(n, std::vector<bool>(n, false));
  std::bernoulli_distribution coin(0.35);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) leq[i][j] = i == j || coin(rng);
  }
  for (int k = 0; k < n; ++k) {
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) leq[i][j] = leq[i][j] || (leq[i][k] && leq[k][j]);
    }
  }
  std::vector<std::string> names;
  for (int i = 0; i < n; ++i) names.push_back(std::string(1, static_cast<char>('p' + i)));
  return poset_category(names, leq);
}

SetFunctor random_set_functor(const CategoryRef& base, int max_size, Variance variance, std::mt19937& rng) {
  const Category& c = *base;
  const auto triples = composition_triples(c);
  std::uniform_int_distribution<int> size_dist(0, max_size);
  for (int attempt = 0; attempt < 2000; ++attempt) {
    SetFunctor f{base, variance, {}, std::vector<Map>(c.morphism_count())};
    for (int a = 0; a < c.object_count(); ++a) f.sizes.push_back(size_dist(rng));
    bool ok = true;
    for (int u = 0; u < c.morphism_count() && ok; ++u) {
      const int s = f.sizes[f.action_source(u)], t = f.sizes[f.action_target(u)];
      if (c.is_identity(u)) {
        for (int x = 0; x < s; ++x) f.actions[u].push_back(x);
      } else if (s > 0 && t == 0) {
        ok = false;
        break;
      } else {
        // A composite of already chosen actions is forced.
        const Triple* forced = nullptr;
        for (const Triple& tr : triples[u]) {
          if (tr.h == u && tr.g != u && tr.f != u) forced = &tr;
        }
        if (forced) {
          const int first = variance == Variance::contra ? forced->g : forced->f;
          const int second = variance == Variance::contra ? forced->f : forced->g;
          for (int x = 0; x < s; ++x) f.actions[u].push_back(f.act(second, f.act(first, x)));
        } else {
          std::uniform_int_distribution<int> value(0, std::max(0, t - 1));
          for (int x = 0; x < s; ++x) f.actions[u].push_back(value(rng));
        }
      }
      for (const Triple& tr : triples[u]) ok = ok && triple_holds(f, tr);
    }
    if (ok && validate(f).ok()) return f;
  }
  // Composition constraints too tight for blind sampling: fall back to a
  // random constant functor, which is always valid.
  return constant_functor(base, variance, size_dist(rng));
}

std::optional<Functor> random_functor(const CategoryRef& source, const CategoryRef& target, std::mt19937& rng) {
  const auto all = all_functors(source, target);
  if (all.empty()) return std::nullopt;
  return all[std::uniform_int_distribution<std::size_t>(0, all.size() - 1)(rng)];
}

}  // namespace fincat
