#pragma once

// Brute-force reference computations. Nothing here calls the library's
// solvers; only the data structures are shared.

#include <cstdint>
#include <functional>
#include <queue>
#include <random>
#include <stdexcept>
#include <vector>

#include "fincat/category.hpp"
#include "fincat/corpus.hpp"
#include "fincat/set_functor.hpp"

namespace oracle {

using fincat::Category;
using fincat::CategoryRef;
using fincat::Map;
using fincat::SetFunctor;

// Calls visit on every tuple with digit i in [0, radix[i]).
inline void odometer(const std::vector<int>& radix, const std::function<void(const std::vector<int>&)>& visit,
                     std::uint64_t limit = 5'000'000) {
  std::uint64_t total = 1;
  for (int r : radix) {
    if (r == 0) return;
    total *= static_cast<std::uint64_t>(r);
    if (total > limit) throw std::runtime_error("oracle search space too large");
  }
  std::vector<int> digits(radix.size(), 0);
  while (true) {
    visit(digits);
    std::size_t i = 0;
    while (i < digits.size() && ++digits[i] == radix[i]) digits[i++] = 0;
    if (i == digits.size()) return;
  }
}

inline int ipow(int b, int e) {
  int out = 1;
  for (int i = 0; i < e; ++i) out *= b;
  return out;
}

// All functions n -> m, as maps, in no particular order.
inline std::vector<Map> all_maps(int n, int m) {
  std::vector<Map> out;
  odometer(std::vector<int>(n, m), [&](const std::vector<int>& d) { out.push_back(d); });
  return out;
}

// Natural transformations F => G by trying every family of functions.
inline std::uint64_t nat_count(const SetFunctor& f, const SetFunctor& g) {
  const Category& c = *f.base;
  std::vector<std::vector<Map>> choices;
  std::vector<int> radix;
  for (int a = 0; a < c.object_count(); ++a) {
    choices.push_back(all_maps(f.sizes[a], g.sizes[a]));
    radix.push_back(static_cast<int>(choices.back().size()));
  }
  std::uint64_t count = 0;
  odometer(radix, [&](const std::vector<int>& pick) {
    for (int m = 0; m < c.morphism_count(); ++m) {
      const int s = f.action_source(m), t = f.action_target(m);
      const Map& as = choices[s][pick[s]];
      const Map& at = choices[t][pick[t]];
      for (int x = 0; x < f.sizes[s]; ++x) {
        if (at[f.act(m, x)] != g.act(m, as[x])) return;
      }
    }
    ++count;
  });
  return count;
}

// Functors C -> D by trying every object map and every endpoint-respecting morphism map.
inline std::uint64_t functor_count(const Category& c, const Category& d) {
  std::uint64_t count = 0;
  odometer(std::vector<int>(c.object_count(), d.object_count()), [&](const std::vector<int>& obj) {
    std::vector<std::vector<int>> options;
    std::vector<int> radix;
    for (int f = 0; f < c.morphism_count(); ++f) {
      std::vector<int> opts;
      for (int g = 0; g < d.morphism_count(); ++g) {
        if (d.src(g) == obj[c.src(f)] && d.tgt(g) == obj[c.tgt(f)]) opts.push_back(g);
      }
      radix.push_back(static_cast<int>(opts.size()));
      options.push_back(std::move(opts));
    }
    odometer(radix, [&](const std::vector<int>& pick) {
      auto image = [&](int f) { return options[f][pick[f]]; };
      for (int a = 0; a < c.object_count(); ++a) {
        if (image(c.identity(a)) != d.identity(obj[a])) return;
      }
      for (int g = 0; g < c.morphism_count(); ++g) {
        for (int f = 0; f < c.morphism_count(); ++f) {
          if (c.composable(g, f) && image(c.compose(g, f)) != d.compose(image(g), image(f))) return;
        }
      }
      ++count;
    });
  });
  return count;
}

// Hom sizes {m : q m p = m} between idempotents of c, row-major in morphism id order.
inline std::vector<int> karoubi_hom_sizes(const Category& c) {
  std::vector<int> idem;
  for (int f = 0; f < c.morphism_count(); ++f) {
    if (c.src(f) == c.tgt(f) && c.compose(f, f) == f) idem.push_back(f);
  }
  std::vector<int> out;
  for (int p : idem) {
    for (int q : idem) {
      int n = 0;
      for (int m = 0; m < c.morphism_count(); ++m) {
        if (c.src(m) == c.src(p) && c.tgt(m) == c.src(q) && c.compose(q, c.compose(m, p)) == m) ++n;
      }
      out.push_back(n);
    }
  }
  return out;
}

// Connected components of an undirected graph by breadth-first search.
inline int components(int n, const std::vector<std::pair<int, int>>& edges) {
  std::vector<std::vector<int>> adj(n);
  for (const auto& [a, b] : edges) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  std::vector<bool> seen(n, false);
  int count = 0;
  for (int s = 0; s < n; ++s) {
    if (seen[s]) continue;
    ++count;
    std::queue<int> todo;
    todo.push(s);
    seen[s] = true;
    while (!todo.empty()) {
      const int v = todo.front();
      todo.pop();
      for (int w : adj[v]) {
        if (!seen[w]) {
          seen[w] = true;
          todo.push(w);
        }
      }
    }
  }
  return count;
}

// |φ ∗ S|: components of the graph on triples (k, x, s) with
// (j, φ(u)x, s) ~ (k, x, S(u)s) for u: j -> k.
inline int weighted_colimit_size(const SetFunctor& phi, const SetFunctor& s) {
  const Category& c = *phi.base;
  std::vector<int> offset;
  int n = 0;
  for (int k = 0; k < c.object_count(); ++k) {
    offset.push_back(n);
    n += phi.sizes[k] * s.sizes[k];
  }
  auto id = [&](int k, int x, int t) { return offset[k] + x * s.sizes[k] + t; };
  std::vector<std::pair<int, int>> edges;
  for (int u = 0; u < c.morphism_count(); ++u) {
    const int j = c.src(u), k = c.tgt(u);
    for (int x = 0; x < phi.sizes[k]; ++x) {
      for (int t = 0; t < s.sizes[j]; ++t) edges.push_back({id(j, phi.act(u, x), t), id(k, x, s.act(u, t))});
    }
  }
  return components(n, edges);
}

// Orbits of a set of size n under the given generating self-maps.
inline int orbit_count(int n, const std::vector<Map>& generators) {
  std::vector<std::pair<int, int>> edges;
  for (const Map& g : generators) {
    for (int x = 0; x < n; ++x) edges.push_back({x, g[x]});
  }
  return components(n, edges);
}

// Random presheaf on a small category: random sizes and random maps until
// the functor laws hold, using the category's composition directly.
inline SetFunctor random_presheaf(const CategoryRef& base, int max_size, std::mt19937& rng,
                                  fincat::Variance variance = fincat::Variance::contra) {
  const Category& c = *base;
  std::uniform_int_distribution<int> size(0, max_size);
  for (int attempt = 0; attempt < 5000; ++attempt) {
    SetFunctor f{base, variance, {}, {}};
    for (int a = 0; a < c.object_count(); ++a) f.sizes.push_back(size(rng));
    for (int m = 0; m < c.morphism_count(); ++m) {
      const int s = f.action_source(m), t = f.action_target(m);
      Map act(f.sizes[s]);
      for (int x = 0; x < f.sizes[s]; ++x) {
        if (c.is_identity(m)) {
          act[x] = x;
        } else if (f.sizes[t] == 0) {
          act.clear();
          break;
        } else {
          act[x] = std::uniform_int_distribution<int>(0, f.sizes[t] - 1)(rng);
        }
      }
      if (static_cast<int>(act.size()) != f.sizes[s]) break;
      f.actions.push_back(std::move(act));
    }
    if (static_cast<int>(f.actions.size()) != c.morphism_count()) continue;
    bool ok = true;
    for (int g = 0; g < c.morphism_count() && ok; ++g) {
      for (int h = 0; h < c.morphism_count() && ok; ++h) {
        if (!c.composable(g, h)) continue;
        const int gh = c.compose(g, h);
        for (int x = 0; x < f.sizes[f.action_source(gh)] && ok; ++x) {
          const int direct = f.act(gh, x);
          const int stepwise = variance == fincat::Variance::contra ? f.act(h, f.act(g, x)) : f.act(g, f.act(h, x));
          ok = direct == stepwise;
        }
      }
    }
    if (ok) return f;
  }
  return fincat::constant_functor(base, variance, 1);
}

// Fixture categories with at most `objects` objects.
inline std::vector<CategoryRef> small_fixtures(int objects = 3) {
  std::vector<CategoryRef> out;
  for (const auto& f : fincat::fixture_categories()) {
    if (f.category->object_count() <= objects) out.push_back(f.category);
  }
  return out;
}

}  // namespace oracle
