#include <doctest.h>

#include <random>

#include "fincat/cauchy.hpp"
#include "fincat/corpus.hpp"
#include "fincat/profunctor.hpp"
#include "oracles.hpp"

using namespace fincat;

namespace {

// Cell (b, c) of outer∘inner by brute-force components over (a, i, j).
int composite_cell_oracle(const Profunctor& outer, const Profunctor& inner, int b, int c) {
  const Category& a_cat = *inner.contra;
  std::vector<int> offset;
  int n = 0;
  for (int a = 0; a < a_cat.object_count(); ++a) {
    offset.push_back(n);
    n += inner.size(a, c) * outer.size(b, a);
  }
  auto node = [&](int a, int i, int j) { return offset[a] + i * outer.size(b, a) + j; };
  std::vector<std::pair<int, int>> edges;
  for (int u = 0; u < a_cat.morphism_count(); ++u) {
    const int a = a_cat.src(u), a2 = a_cat.tgt(u);
    for (int i = 0; i < inner.size(a2, c); ++i) {
      for (int j = 0; j < outer.size(b, a); ++j) {
        edges.push_back({node(a, inner.left_action(u, c)[i], j), node(a2, i, outer.right_action(b, u)[j])});
      }
    }
  }
  return oracle::components(n, edges);
}

// Modules between the given categories built from random presheaves.
Profunctor random_module(const CategoryRef& target, const CategoryRef& source, std::mt19937& rng) {
  const SetFunctor p = oracle::random_presheaf(target, 2, rng);
  const SetFunctor q = oracle::random_presheaf(source, 2, rng, Variance::co);
  return tensor(p, q);
}

}  // namespace

TEST_CASE("identity modules and unitors") {
  std::mt19937 rng(79);
  for (int i = 0; i < 30; ++i) {
    const auto a = random_small_category(rng);
    const auto b = random_small_category(rng);
    const Profunctor f = random_module(b, a, rng);
    REQUIRE(validate(id_module(a)).ok());
    const ProfMorphism l = left_unitor(f), r = right_unitor(f);
    CHECK(is_isomorphism(l));
    CHECK(is_isomorphism(r));
    CHECK(validate(compose(id_module(b), f).result, f, l).ok());
    CHECK(validate(compose(f, id_module(a)).result, f, r).ok());
  }
}

TEST_CASE("property: composite cells agree with brute force") {
  std::mt19937 rng(83);
  for (int i = 0; i < 40; ++i) {
    const auto a = random_small_category(rng), b = random_small_category(rng), c = random_small_category(rng);
    const Profunctor inner = i % 3 == 0 ? hom_bifunctor(a) : random_module(a, c, rng);
    const auto& c_cat = inner.co;
    const Profunctor outer = random_module(b, a, rng);
    const Composite comp = compose(outer, inner);
    REQUIRE(validate(comp.result).ok());
    for (int bb = 0; bb < b->object_count(); ++bb) {
      for (int cc = 0; cc < c_cat->object_count(); ++cc) {
        CHECK(comp.result.size(bb, cc) == composite_cell_oracle(outer, inner, bb, cc));
      }
    }
  }
}

TEST_CASE("property: the associator is invertible") {
  std::mt19937 rng(89);
  for (int i = 0; i < 25; ++i) {
    const auto a = random_small_category(rng), b = random_small_category(rng);
    const auto c = random_small_category(rng), d = random_small_category(rng);
    const Profunctor f = random_module(b, a, rng);
    const Profunctor g = random_module(c, b, rng);
    const Profunctor h = random_module(d, c, rng);
    const ProfMorphism alpha = associator(h, g, f);
    CHECK(is_isomorphism(alpha));
    CHECK(validate(compose(compose(h, g).result, f).result, compose(h, compose(g, f).result).result, alpha).ok());
  }
}

TEST_CASE("T_* is left adjoint to T^*") {
  std::mt19937 rng(97);
  int done = 0;
  while (done < 25) {
    const auto a = random_small_category(rng), b = random_small_category(rng);
    const auto t = random_functor(a, b, rng);
    if (!t) continue;
    const ModulePair mp = functor_to_modules(*t);
    REQUIRE(validate(mp.lower).ok());
    REQUIRE(validate(mp.upper).ok());
    const auto adj = has_right_adjoint(mp.lower);
    REQUIRE(adj.has_value());
    CHECK(find_isomorphism(adj->right, mp.upper).has_value());
    CHECK(validate(id_module(a), adj->right_after_left.result, adj->unit).ok());
    CHECK(validate(adj->left_after_right.result, id_module(b), adj->counit).ok());
    ++done;
  }
}

TEST_CASE("property: right lifts and right extensions are universal") {
  std::mt19937 rng(101);
  for (int i = 0; i < 25; ++i) {
    const auto a = random_small_category(rng), b = random_small_category(rng), c = random_small_category(rng);
    const Profunctor f = random_module(b, a, rng);  // A ⇸ B
    const Profunctor h = random_module(b, c, rng);  // C ⇸ B
    const Profunctor k = random_module(a, c, rng);  // C ⇸ A
    const RightLift lift = right_lift(f, h);
    REQUIRE(validate(lift.lift).ok());
    CHECK(validate(lift.composite.result, h, lift.counit).ok());
    CHECK(lift_bijection_holds(f, h, k));

    const Profunctor g = random_module(a, c, rng);  // C ⇸ A
    const Profunctor k2 = random_module(b, a, rng);  // A ⇸ B
    const RightExtension ext = right_extend(g, h);
    REQUIRE(validate(ext.extension).ok());
    CHECK(validate(ext.composite.result, h, ext.counit).ok());
    CHECK(extend_bijection_holds(g, h, k2));
  }
}

TEST_CASE("weight modules have right adjoints exactly when small projective") {
  for (const NamedPresheaf& p : presheaf_corpus()) {
    if (p.presheaf.base->morphism_count() > 12) continue;
    INFO(p.name);
    const bool adjoint = has_right_adjoint(weight_module(p.presheaf)).has_value();
    CHECK(adjoint == retract_oracle(p.presheaf).has_value());
  }
}

TEST_CASE("the weight and coweight modules of a representable") {
  const auto m = idempotent_monoid();
  const Profunctor w = weight_module(representable(m, 0));
  CHECK(w.contra == m);
  CHECK(w.co->object_count() == 1);
  CHECK(w.size(0, 0) == 2);
  const Profunctor cw = coweight_module(corepresentable(m, 0));
  CHECK(cw.co == m);
  CHECK(cw.size(0, 0) == 2);
  const auto adj = has_right_adjoint(w);
  REQUIRE(adj.has_value());
  CHECK(find_isomorphism(adj->right, cw).has_value());
}

TEST_CASE("two-cells") {
  const auto z2 = cyclic_group(2);
  const Profunctor h = id_module(z2);
  const auto cells = two_cells(h, h);
  // Endomorphisms of the regular Z/2-biset: the centre, both elements.
  CHECK(cells.size() == 2);
  for (const auto& c : cells) CHECK(validate(h, h, c).ok());
  CHECK(validate(h, h, compose(cells[1], cells[1])).ok());
  CHECK(compose(identity_cell(h), cells[1]) == cells[1]);
}
