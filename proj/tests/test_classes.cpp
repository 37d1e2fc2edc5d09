#include <doctest.h>

#include <random>

#include "fincat/cauchy.hpp"
#include "fincat/classes.hpp"
#include "fincat/corpus.hpp"
#include "oracles.hpp"

using namespace fincat;

namespace {

bool same_members(const PresheafCollection& c, const std::vector<SetFunctor>& expected) {
  if (c.size() != static_cast<int>(expected.size())) return false;
  for (const SetFunctor& f : expected) {
    if (c.find(f) < 0) return false;
  }
  return true;
}

std::vector<SetFunctor> representable_list(const CategoryRef& a) {
  std::vector<SetFunctor> out;
  for (int b = 0; b < a->object_count(); ++b) out.push_back(representable(a, b));
  return out;
}

// Least upper bound in a poset category straight from the hom table.
int join_oracle(const Category& p, int x, int y) {
  int best = -1;
  for (int z = 0; z < p.object_count(); ++z) {
    if (p.hom_size(x, z) == 0 || p.hom_size(y, z) == 0) continue;
    bool least = true;
    for (int w = 0; w < p.object_count(); ++w) {
      if (p.hom_size(x, w) && p.hom_size(y, w) && !p.hom_size(z, w)) least = false;
    }
    if (least) best = z;
  }
  return best;
}

// Objects a with |A(a, x v y)| = |A(a, x)| + |A(a, y)| for every existing join.
std::vector<int> coproduct_atoms_oracle(const Category& p) {
  std::vector<int> out;
  for (int a = 0; a < p.object_count(); ++a) {
    bool ok = true;
    for (int x = 0; x < p.object_count(); ++x) {
      for (int y = 0; y < p.object_count(); ++y) {
        const int j = join_oracle(p, x, y);
        if (j >= 0 && p.hom_size(a, j) != p.hom_size(a, x) + p.hom_size(a, y)) ok = false;
      }
    }
    if (ok) out.push_back(a);
  }
  return out;
}

std::vector<int> initial_atoms_oracle(const Category& p) {
  int bottom = -1;
  for (int z = 0; z < p.object_count(); ++z) {
    bool least = true;
    for (int w = 0; w < p.object_count(); ++w) least = least && p.hom_size(z, w) == 1;
    if (least) bottom = z;
  }
  std::vector<int> out;
  for (int a = 0; a < p.object_count(); ++a) {
    if (bottom < 0 || p.hom_size(a, bottom) == 0) out.push_back(a);
  }
  return out;
}

CategoryRef random_poset(std::mt19937& rng, int n) {
  // Random relation, then reflexive-transitive closure, kept antisymmetric by
  // only allowing i <= j for i < j.
  std::vector<std::vector<bool>> leq(n, std::vector<bool>(n, false));
  for (int i = 0; i < n; ++i) {
    leq[i][i] = true;
    for (int j = i + 1; j < n; ++j) leq[i][j] = rng() % 2 == 0;
  }
  for (int k = 0; k < n; ++k) {
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        if (leq[i][k] && leq[k][j]) leq[i][j] = true;
      }
    }
  }
  std::vector<std::string> names;
  for (int i = 0; i < n; ++i) names.push_back("p" + std::to_string(i));
  return poset_category(names, leq);
}

}  // namespace

TEST_CASE("closure under no weights is the representables") {
  for (const auto& [name, c] : fixture_categories()) {
    if (c->morphism_count() > 30) continue;
    INFO(name);
    const ClosureResult r = phi_closure_bounded(empty_class(), c);
    CHECK(r.saturated_at_bound);
    CHECK(same_members(r.collection, representable_list(c)));
  }
}

TEST_CASE("closure under the initial weight adds exactly Δ0") {
  for (const std::string name : {"I", "Two", "span", "M", "Z2", "discrete2"}) {
    INFO(name);
    const auto c = fixture_category(name);
    const ClosureResult r = phi_closure_bounded(initial_class(), c);
    CHECK(r.saturated_at_bound);
    auto expected = representable_list(c);
    expected.push_back(initial_presheaf(c));
    CHECK(same_members(r.collection, expected));
    for (int i = 0; i < r.collection.size(); ++i) CHECK(r.collection.replay(i));
  }
}

TEST_CASE("closure of M under splitting is {Y*, E} in two rounds") {
  const auto m = idempotent_monoid();
  const ClosureResult r = phi_closure_bounded(splitting_class(), m);
  CHECK(r.saturated_at_bound);
  CHECK(r.rounds == 2);
  CHECK(r.cap_hit.empty());
  CHECK(same_members(r.collection, {representable(m, 0), terminal_presheaf(m)}));
  CHECK(r.collection.replay(1));
  CHECK(r.collection.provenance(1).kind == Provenance::Kind::colimit);
}

TEST_CASE("closure reports the cap it hit") {
  ClosureCaps caps;
  caps.rounds = 1;
  const ClosureResult r = phi_closure_bounded(finite_colimit_class(), arrow_category(), caps);
  CHECK_FALSE(r.saturated_at_bound);
  CHECK(r.cap_hit == "rounds");
  caps.rounds = 4;
  caps.members = 3;
  const ClosureResult m = phi_closure_bounded(finite_colimit_class(), arrow_category(), caps);
  CHECK_FALSE(m.saturated_at_bound);
  CHECK(m.cap_hit == "members");
  CHECK_THROWS_AS(bounded_saturation(finite_colimit_class(), {arrow_category()}, caps), CapExceeded);
}

TEST_CASE("saturation membership") {
  // Three copies of Yb on Two need two rounds of binary coproducts.
  ClosureCaps one_round;
  one_round.rounds = 1;
  CHECK(in_saturation_bounded(constant_functor(arrow_category(), Variance::contra, 3), finite_colimit_class(),
                              one_round) == Membership::unknown_at_cap);
  const auto m = idempotent_monoid();
  for (const auto& cls : {empty_class(), initial_class(), splitting_class()}) {
    CHECK(in_saturation_bounded(representable(m, 0), cls) == Membership::yes);
  }
  CHECK(in_saturation_bounded(initial_presheaf(m), initial_class()) == Membership::yes);
  CHECK(in_saturation_bounded(terminal_presheaf(m), initial_class()) == Membership::no_at_fixpoint);
  CHECK(in_saturation_bounded(terminal_presheaf(m), splitting_class()) == Membership::yes);
  CHECK(std::string(to_string(Membership::no_at_fixpoint)) == "no-at-fixpoint");
}

TEST_CASE("Φ-cocompleteness") {
  CHECK(is_phi_cocomplete(arrow_category(), initial_class()).cocomplete);
  const CocompletenessReport m = is_phi_cocomplete(idempotent_monoid(), initial_class());
  CHECK_FALSE(m.cocomplete);
  CHECK(m.weight == "initial");
  CHECK(m.witness.has_value());
  for (const auto& [name, c] : fixture_categories()) {
    if (c->morphism_count() > 30) continue;
    CHECK(is_phi_cocomplete(c, empty_class()).cocomplete);
  }
  CHECK(is_phi_cocomplete(cauchy_completion(idempotent_monoid()).completion, splitting_class()).cocomplete);
  CHECK_FALSE(is_phi_cocomplete(idempotent_monoid(), splitting_class()).cocomplete);
  CHECK(is_phi_cocomplete(finset_category({0, 1, 2}), initial_class()).cocomplete);
}

TEST_CASE("atoms") {
  for (const auto& [name, c] : fixture_categories()) {
    if (c->morphism_count() > 30) continue;
    INFO(name);
    CHECK(atoms(c, empty_class()).size() == static_cast<std::size_t>(c->object_count()));
  }
  CHECK(atoms(empty_category(), initial_class()).empty());

  // x + x = x in a poset, while A(a, x) + A(a, x) has two elements when a <= x.
  // So no object is an atom for binary coproducts.
  const auto m3 = diamond_lattice();
  CHECK(atoms(m3, binary_coproduct_class()) == coproduct_atoms_oracle(*m3));
  CHECK(atoms(m3, binary_coproduct_class()).empty());
  CHECK(atoms(m3, initial_class()) == initial_atoms_oracle(*m3));
  CHECK(atoms(m3, initial_class()).size() == 4);
}

TEST_CASE("property: lattice atoms against brute force") {
  std::mt19937 rng(107);
  for (int i = 0; i < 20; ++i) {
    const auto p = random_poset(rng, 2 + i % 3);
    CHECK(atoms(p, binary_coproduct_class()) == coproduct_atoms_oracle(*p));
    CHECK(atoms(p, initial_class()) == initial_atoms_oracle(*p));
  }
}

TEST_CASE("Z/2 orbits do not preserve the pullback of free orbits") {
  const Bifunctor s = group_cospan_diagram(2);
  const SetFunctor phi = terminal_presheaf(cyclic_group(2));
  const SetFunctor psi = terminal_presheaf(span_category());
  const CommutationReport r = commutation(phi, psi, s);
  CHECK(r.lhs == 2);
  CHECK(r.rhs == 1);
  CHECK_FALSE(r.bijective);
  CHECK_FALSE(r.dual_bijective);
  CHECK_FALSE(check_commutation(phi, psi, s));

  // Δ1 is continuous for pushouts but not flat.
  CHECK(is_phi_continuous(phi, pushout_class()));
  CHECK_FALSE(flat_for_finite_limits(phi));

  // With the trivial group everything commutes.
  const Bifunctor s1 = group_cospan_diagram(1);
  CHECK(check_commutation(terminal_presheaf(cyclic_group(1)), psi, s1));
}

TEST_CASE("commutation with representable limits and filtered colimits") {
  std::mt19937 rng(109);
  for (int i = 0; i < 30; ++i) {
    const auto k = random_small_category(rng);
    const auto l = random_small_category(rng);
    const SetFunctor p = oracle::random_presheaf(k, 2, rng);
    const SetFunctor q = oracle::random_presheaf(l, 2, rng, Variance::co);
    const Bifunctor s = tensor(p, q);
    const SetFunctor phi = oracle::random_presheaf(l, 2, rng);
    for (int b = 0; b < k->object_count(); ++b) CHECK(check_commutation(phi, representable(k, b), s));
  }
  // Δ1 on the chain 0 -> 1 against binary products.
  const auto chain = chain_category(2);
  const auto d2 = discrete_category(2);
  for (int i = 0; i < 20; ++i) {
    const SetFunctor p = oracle::random_presheaf(d2, 3, rng);
    const SetFunctor q = oracle::random_presheaf(chain, 3, rng, Variance::co);
    CHECK(check_commutation(terminal_presheaf(chain), terminal_presheaf(d2), tensor(p, q)));
  }
}

TEST_CASE("property: both readings of commutation agree") {
  std::mt19937 rng(113);
  for (int i = 0; i < 60; ++i) {
    const auto k = random_small_category(rng);
    const auto l = random_small_category(rng);
    const SetFunctor p = oracle::random_presheaf(k, 2, rng);
    const SetFunctor q = oracle::random_presheaf(l, 2, rng, Variance::co);
    const SetFunctor phi = oracle::random_presheaf(l, 2, rng);
    const SetFunctor psi = oracle::random_presheaf(k, 2, rng);
    const CommutationReport r = commutation(phi, psi, tensor(p, q));
    CHECK(r.bijective == r.dual_bijective);
    CHECK(r.comparison.size() == static_cast<std::size_t>(r.lhs));
  }
}

TEST_CASE("flatness tests") {
  for (const auto& [name, c] : fixture_categories()) {
    for (int b = 0; b < c->object_count(); ++b) {
      CHECK(flat_for_finite_limits(representable(c, b)));
      CHECK(flat_for_terminal(representable(c, b)));
    }
  }
  CHECK_FALSE(flat_for_finite_limits(terminal_presheaf(cyclic_group(2))));
  CHECK(flat_for_terminal(terminal_presheaf(cyclic_group(2))));
  CHECK(flat_for_finite_limits(terminal_presheaf(chain_category(2))));
  CHECK_FALSE(flat_for_terminal(initial_presheaf(arrow_category())));
  CHECK_FALSE(flat_for_terminal(terminal_presheaf(discrete_category(2))));
}

TEST_CASE("flat weights are continuous; the converse fails only on Δ1 over Z/2") {
  int flat = 0;
  for (const NamedPresheaf& p : presheaf_corpus()) {
    const auto& n = p.presheaf.base;
    if (n->morphism_count() > 12) continue;
    INFO(p.name);
    if (flat_for_finite_limits(p.presheaf)) {
      ++flat;
      CHECK(is_phi_continuous(p.presheaf, finite_colimit_class()));
    }
  }
  CHECK(flat > 5);
  for (const auto& [name, c] : fixture_categories()) {
    for (int b = 0; b < c->object_count(); ++b) CHECK(is_phi_continuous(representable(c, b), finite_colimit_class()));
  }
}

TEST_CASE("finite-limit flat weights are closed under flat colimits of representables") {
  const auto corpus = presheaf_corpus();
  std::vector<SetFunctor> flat_weights;
  for (const NamedPresheaf& p : corpus) {
    if (p.presheaf.base->object_count() <= 2 && p.presheaf.base->morphism_count() <= 4 &&
        flat_for_finite_limits(p.presheaf)) {
      flat_weights.push_back(p.presheaf);
    }
  }
  REQUIRE(flat_weights.size() > 2);
  int instances = 0;
  for (const auto& k : oracle::small_fixtures(3)) {
    if (k->morphism_count() > 8) continue;
    const PresheafCategory pc = materialize(k, representable_list(k));
    for (const SetFunctor& w : flat_weights) {
      for_each_functor(w.base, pc.category, [&](const Functor& s) {
        const SetFunctor out = pointwise_colimit(w, s, pc);
        CHECK(flat_for_finite_limits(out));
        ++instances;
        return true;
      });
    }
  }
  CHECK(instances > 50);
}

TEST_CASE("atoms agree with atoms of the bounded saturation") {
  struct Case {
    CategoryRef a;
    WeightClass phi;
    std::vector<CategoryRef> domains;
  };
  const std::vector<Case> cases = {
      {arrow_category(), initial_class(), {empty_category(), unit_category()}},
      {cauchy_completion(idempotent_monoid()).completion, splitting_class(), {idempotent_monoid()}},
      {chain_category(3), initial_class(), {empty_category(), arrow_category()}},
  };
  for (const Case& c : cases) {
    REQUIRE(is_phi_cocomplete(c.a, c.phi).cocomplete);
    const WeightClass sat = bounded_saturation(c.phi, c.domains);
    CHECK(sat.weights.size() > c.phi.weights.size());
    CHECK(atoms(c.a, c.phi) == atoms(c.a, sat));
  }
}

TEST_CASE("objects with a reflexion into a cocomplete subposet are closed under colimits") {
  // Pentagon: 0 < a < b < 1, 0 < c < 1.
  const auto n5 = poset_category({"0", "a", "b", "c", "1"}, {{true, true, true, true, true},
                                                             {false, true, true, false, true},
                                                             {false, false, true, false, true},
                                                             {false, false, false, true, true},
                                                             {false, false, false, false, true}});
  const WeightClass phi = finite_colimit_class();
  int checked = 0, partial = 0;
  for (const auto& p : {chain_category(4), diamond_lattice(), product(*arrow_category(), *arrow_category()), n5}) {
    REQUIRE(is_phi_cocomplete(p, phi).cocomplete);
    const int n = p->object_count();
    for (int mask = 1; mask < (1 << n); ++mask) {
      std::vector<int> c_objs;
      for (int a = 0; a < n; ++a) {
        if (mask & (1 << a)) c_objs.push_back(a);
      }
      if (!is_phi_cocomplete(full_subcategory(*p, c_objs), phi).cocomplete) continue;
      // b has a reflexion when some c above it lies below every c' above it.
      std::vector<int> b_objs;
      for (int a = 0; a < n; ++a) {
        bool has = false;
        for (int c : c_objs) {
          if (!p->hom_size(a, c)) continue;
          bool least = true;
          for (int c2 : c_objs) least = least && (!p->hom_size(a, c2) || p->hom_size(c, c2));
          has = has || least;
        }
        if (has) b_objs.push_back(a);
      }
      if (static_cast<int>(b_objs.size()) < n) ++partial;
      std::vector<int> ids;
      const auto b_cat = full_subcategory(*p, b_objs, &ids);
      const Functor incl{b_cat, p, b_objs, ids};
      for (const NamedPresheaf& w : phi.weights) {
        for_each_functor(w.presheaf.base, b_cat, [&](const Functor& s) {
          const auto col = colimit_in_category(w.presheaf, compose(incl, s));
          REQUIRE(col.has_value());
          CHECK(std::find(b_objs.begin(), b_objs.end(), col->apex) != b_objs.end());
          ++checked;
          return true;
        });
      }
    }
  }
  CHECK(checked > 100);
  CHECK(partial > 0);
}

TEST_CASE("recognizing free cocompletions") {
  const auto m = idempotent_monoid();
  const CauchyCompletion q = cauchy_completion(m);
  const RecognitionReport r = recognize_free_cocompletion(q.embedding, splitting_class());
  CHECK(r.fully_faithful);
  CHECK(r.cocomplete);
  CHECK(r.generates);
  CHECK(r.atomic);
  CHECK(r.all());

  for (const auto& [name, c] : fixture_categories()) {
    if (c->morphism_count() > 30) continue;
    INFO(name);
    CHECK(recognize_free_cocompletion(identity_functor(c), empty_class()).all());
  }

  const Functor collapse{m, unit_category(), {0}, {0, 0}};
  const RecognitionReport bad = recognize_free_cocompletion(collapse, splitting_class());
  CHECK_FALSE(bad.fully_faithful);
  CHECK_FALSE(bad.all());

  // M itself is not the splitting cocompletion of M.
  CHECK_FALSE(recognize_free_cocompletion(identity_functor(m), splitting_class()).cocomplete);
}

TEST_CASE("comma categories over representables and Δ0 are connected") {
  for (const auto& [name, c] : fixture_categories()) {
    if (c->morphism_count() > 12) continue;
    INFO(name);
    for (int b = 0; b < c->object_count(); ++b) CHECK(comma_connectedness_witness(representable(c, b)));
    CHECK(comma_connectedness_witness(initial_presheaf(c)));
  }
  std::mt19937 rng(131);
  for (int i = 0; i < 20; ++i) {
    CHECK(comma_connectedness_witness(oracle::random_presheaf(arrow_category(), 3, rng)));
  }
}
