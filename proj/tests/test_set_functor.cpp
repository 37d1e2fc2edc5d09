#include <doctest.h>

#include <algorithm>
#include <random>

#include "fincat/corpus.hpp"
#include "fincat/set_functor.hpp"
#include "oracles.hpp"

using namespace fincat;

TEST_CASE("representables and corepresentables are valid") {
  for (const auto& [name, c] : fixture_categories()) {
    for (int b = 0; b < c->object_count(); ++b) {
      INFO(name << " " << b);
      CHECK(validate(representable(c, b)).ok());
      CHECK(validate(corepresentable(c, b)).ok());
    }
  }
}

TEST_CASE("validate catches a broken presheaf") {
  SetFunctor f = representable(span_category(), 0);
  CHECK(validate(f).ok());
  SetFunctor g{cyclic_group(2), Variance::contra, {2}, {{0, 1}, {0, 0}}};
  CHECK_FALSE(validate(g).ok());  // g·g must act as the identity
}

TEST_CASE("Yoneda: Nat(Yb, F) has |F(b)| elements, each determined by its value at id_b") {
  for (const NamedPresheaf& p : presheaf_corpus()) {
    const CategoryRef& k = p.presheaf.base;
    for (int b = 0; b < k->object_count(); ++b) {
      const SetFunctor yb = representable(k, b);
      const NatSet nats = nat_transformations(yb, p.presheaf);
      INFO(p.name << " at " << k->object_name(b));
      REQUIRE(nats.size() == p.presheaf.sizes[b]);
      std::vector<int> values;
      const int id_pos = k->hom_position(k->identity(b));
      for (const NatTrans& alpha : nats.elements()) {
        CHECK(validate(yb, p.presheaf, alpha).ok());
        values.push_back(alpha.components[b][id_pos]);
      }
      std::sort(values.begin(), values.end());
      CHECK(std::adjacent_find(values.begin(), values.end()) == values.end());
    }
  }
}

TEST_CASE("property: natural transformation count agrees with brute force") {
  std::mt19937 rng(3);
  for (int i = 0; i < 120; ++i) {
    const auto k = random_small_category(rng);
    const Variance v = i % 2 ? Variance::co : Variance::contra;
    const SetFunctor f = oracle::random_presheaf(k, 2, rng, v);
    const SetFunctor g = oracle::random_presheaf(k, 3, rng, v);
    REQUIRE(validate(f).ok());
    REQUIRE(validate(g).ok());
    const NatSet nats = nat_transformations(f, g);
    CHECK(static_cast<std::uint64_t>(nats.size()) == oracle::nat_count(f, g));
    CHECK(nat_count(f, g) == static_cast<std::uint64_t>(nats.size()));
    for (const NatTrans& alpha : nats.elements()) CHECK(validate(f, g, alpha).ok());
    CHECK(std::is_sorted(nats.elements().begin(), nats.elements().end()));
  }
}

TEST_CASE("property: a relabelled presheaf is isomorphic to the original") {
  std::mt19937 rng(17);
  for (int i = 0; i < 60; ++i) {
    const auto k = random_small_category(rng);
    const SetFunctor f = oracle::random_presheaf(k, 3, rng);
    // Apply a random bijection to each set.
    std::vector<Map> perm;
    for (int s : f.sizes) {
      Map p(s);
      for (int x = 0; x < s; ++x) p[x] = x;
      std::shuffle(p.begin(), p.end(), rng);
      perm.push_back(p);
    }
    SetFunctor g = f;
    for (int m = 0; m < k->morphism_count(); ++m) {
      const int s = f.action_source(m), t = f.action_target(m);
      for (int x = 0; x < f.sizes[s]; ++x) g.actions[m][perm[s][x]] = perm[t][f.act(m, x)];
    }
    REQUIRE(validate(g).ok());
    CHECK(signature(f) == signature(g));
    const auto iso = find_isomorphism(f, g);
    REQUIRE(iso.has_value());
    CHECK(is_isomorphism(*iso));
    CHECK(validate(f, g, *iso).ok());
  }
}

TEST_CASE("non-isomorphic presheaves are told apart") {
  const auto z2 = cyclic_group(2);
  const SetFunctor trivial{z2, Variance::contra, {2}, {{0, 1}, {0, 1}}};
  const SetFunctor swap{z2, Variance::contra, {2}, {{0, 1}, {1, 0}}};
  CHECK_FALSE(is_isomorphic(trivial, swap));
  CHECK(nat_transformations(swap, trivial).size() == 2);
  CHECK(nat_transformations(trivial, swap).size() == 0);
}

TEST_CASE("composition of natural transformations is associative and unital") {
  std::mt19937 rng(23);
  for (int i = 0; i < 40; ++i) {
    const auto k = random_small_category(rng);
    const SetFunctor f = oracle::random_presheaf(k, 2, rng);
    const SetFunctor g = oracle::random_presheaf(k, 2, rng);
    const SetFunctor h = oracle::random_presheaf(k, 2, rng);
    const NatSet fg = nat_transformations(f, g), gh = nat_transformations(g, h);
    if (fg.size() == 0 || gh.size() == 0) continue;
    const NatTrans& a = fg[0];
    const NatTrans& b = gh[gh.size() - 1];
    CHECK(validate(f, h, compose(b, a)).ok());
    CHECK(compose(identity_nat(g), a) == a);
    CHECK(compose(a, identity_nat(f)) == a);
  }
}

TEST_CASE("category of elements") {
  const auto k = span_category();
  const SetFunctor y = representable(k, 0);
  const Elements el = category_of_elements(y);
  CHECK(el.category->object_count() == y.total_size());
  CHECK(validate(*el.category).ok());
  CHECK(validate(el.projection).ok());
  CHECK(el.projection.target == opposite(k));

  const SetFunctor co = corepresentable(k, 0);
  const Elements el_co = category_of_elements(co);
  CHECK(el_co.projection.target == k);
  CHECK(el_co.category->object_count() == 3);
  // el of A(a, -) has the initial object (a, id).
  CHECK(el_co.category->hom_size(el_co.object_of(0, 0), el_co.object_of(1, 0)) == 1);
}

TEST_CASE("property: el is a valid category with a valid projection") {
  std::mt19937 rng(29);
  for (int i = 0; i < 50; ++i) {
    const auto k = random_small_category(rng);
    const SetFunctor f = oracle::random_presheaf(k, 3, rng, i % 2 ? Variance::co : Variance::contra);
    const Elements el = category_of_elements(f);
    CHECK(validate(*el.category).ok());
    CHECK(validate(el.projection).ok());
    CHECK(el.category->object_count() == f.total_size());
  }
}

TEST_CASE("precompose and flip") {
  const auto k = arrow_category();
  const SetFunctor y = representable(k, 1);
  const SetFunctor f = flip(y);
  CHECK(f.variance == Variance::co);
  CHECK(f.base == opposite(k));
  CHECK(validate(f).ok());
  CHECK(flip(f) == y);
  const Functor pick{unit_category(), k, {1}, {k->identity(1)}};
  const SetFunctor restricted = precompose(y, pick);
  CHECK(restricted.sizes == std::vector<int>{1});
}

TEST_CASE("the presheaf corpus is large and pairwise non-isomorphic per base") {
  const auto corpus = presheaf_corpus();
  CHECK(corpus.size() >= 50);
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    CHECK(validate(corpus[i].presheaf).ok());
  }
}
