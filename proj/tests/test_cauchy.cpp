#include <doctest.h>

#include <random>

#include "fincat/cauchy.hpp"
#include "fincat/corpus.hpp"
#include "oracles.hpp"

using namespace fincat;

TEST_CASE("Q(M) has two objects and the Karoubi hom sizes") {
  const CauchyCompletion q = cauchy_completion(idempotent_monoid());
  REQUIRE(validate(*q.completion).ok());
  CHECK(isomorphism_class_count(*q.completion) == 2);
  std::vector<int> sizes;
  for (int p = 0; p < q.completion->object_count(); ++p) {
    for (int r = 0; r < q.completion->object_count(); ++r) sizes.push_back(q.completion->hom_size(p, r));
  }
  CHECK(sizes == std::vector<int>{2, 1, 1, 1});
  CHECK(sizes == oracle::karoubi_hom_sizes(*q.base));
  CHECK(q.completion->object_name(0) == "*");
  CHECK(q.completion->object_name(1) == "e");
}

TEST_CASE("completions of every fixture match the Karoubi oracle and verify") {
  for (const auto& [name, c] : fixture_categories()) {
    INFO(name);
    const CauchyCompletion q = cauchy_completion(c);
    REQUIRE(validate(*q.completion).ok());
    std::vector<int> sizes;
    for (int p = 0; p < q.completion->object_count(); ++p) {
      for (int r = 0; r < q.completion->object_count(); ++r) sizes.push_back(q.completion->hom_size(p, r));
    }
    CHECK(sizes == oracle::karoubi_hom_sizes(*c));
    CHECK(is_fully_faithful(q.embedding));
    CHECK(verify_completion(q));
  }
}

TEST_CASE("small projective: three tests agree on the corpus") {
  const auto corpus = presheaf_corpus();
  int projective = 0;
  for (const NamedPresheaf& p : corpus) {
    INFO(p.name);
    const SmallProjectiveReport r = small_projective_report(p.presheaf);
    const auto retract = retract_oracle(p.presheaf);
    const bool adjoint = has_right_adjoint(weight_module(p.presheaf)).has_value();
    CHECK(r.small_projective == retract.has_value());
    CHECK(r.small_projective == adjoint);
    if (r.small_projective) {
      ++projective;
      CHECK(r.colimit_size == r.endo_size);
      const SetFunctor yb = representable(p.presheaf.base, retract->object);
      CHECK(validate(p.presheaf, yb, retract->section).ok());
      CHECK(validate(yb, p.presheaf, retract->retraction).ok());
      CHECK(compose(retract->retraction, retract->section) == identity_nat(p.presheaf));
    }
  }
  CHECK(projective > 0);
  CHECK(projective < static_cast<int>(corpus.size()));
}

TEST_CASE("E splits e and the terminal Z/2-set does not") {
  CHECK(is_small_projective(terminal_presheaf(idempotent_monoid())));
  CHECK_FALSE(is_small_projective(terminal_presheaf(cyclic_group(2))));
  CHECK_FALSE(is_small_projective(initial_presheaf(span_category())));
  CHECK(is_small_projective(representable(diamond_lattice(), 2)));
}

TEST_CASE("Isbell unit and counit") {
  for (const NamedPresheaf& p : presheaf_corpus()) {
    if (p.presheaf.base->morphism_count() > 12) continue;
    INFO(p.name);
    const IsbellLeft l = isbell_left(p.presheaf);
    REQUIRE(validate(l.functor).ok());
    const IsbellRight rl = isbell_right(l.functor);
    REQUIRE(validate(rl.functor).ok());
    const NatTrans unit = isbell_unit(p.presheaf);
    CHECK(validate(p.presheaf, rl.functor, unit).ok());
    // Representables and their retracts are Isbell-reflexive.
    if (is_small_projective(p.presheaf)) CHECK(is_isomorphism(unit));
    const SetFunctor psi = l.functor;
    const NatTrans counit = isbell_counit(psi);
    CHECK(validate(psi, isbell_left(isbell_right(psi).functor).functor, counit).ok());
  }
}

TEST_CASE("Q(A^op)^op is equivalent to Q(A)") {
  for (const std::string name : {"I", "M", "Z2"}) {
    INFO(name);
    const DualityResult d = q_duality(fixture_category(name));
    CHECK(validate(d.equivalence).ok());
    CHECK(d.confirmed_by_search);
  }
  for (const auto& [name, c] : fixture_categories()) {
    if (c->morphism_count() > 30) continue;
    INFO(name);
    CHECK(q_duality(c).confirmed_by_search);
  }
}

TEST_CASE("Morita equivalence") {
  const auto m = idempotent_monoid();
  const MoritaResult mq = morita_equivalent(m, cauchy_completion(m).completion);
  CHECK(mq.equivalent);
  REQUIRE(mq.witness.has_value());
  CHECK(validate(*mq.witness).ok());
  CHECK_FALSE(morita_equivalent(cyclic_group(2), unit_category()).equivalent);
  CHECK_FALSE(morita_equivalent(m, unit_category()).equivalent);
  for (const auto& [name, c] : fixture_categories()) {
    INFO(name);
    CHECK(morita_equivalent(c, c).equivalent);
    const auto qa = cauchy_completion(c).completion;
    CHECK(find_equivalence(cauchy_completion(qa).completion, qa).has_value());
  }
  // A category and its skeleton are Morita equivalent.
  const auto qqm = cauchy_completion(cauchy_completion(m).completion).completion;
  CHECK(morita_equivalent(qqm, m).equivalent);
}

TEST_CASE("limits and colimits weighted by a dual pair exist together") {
  const auto m = idempotent_monoid();
  const auto pair = dual_pair(terminal_presheaf(m));
  REQUIRE(pair.has_value());
  CHECK(pair->psi.variance == Variance::co);
  CHECK(pair->psi.sizes == std::vector<int>{1});

  const DualCheck in_m = dual_limit_colimit(*pair, identity_functor(m));
  CHECK_FALSE(in_m.colimit.has_value());
  CHECK_FALSE(in_m.limit.has_value());
  CHECK(in_m.consistent);

  const CauchyCompletion q = cauchy_completion(m);
  const DualCheck in_q = dual_limit_colimit(*pair, q.embedding);
  REQUIRE(in_q.colimit.has_value());
  REQUIRE(in_q.limit.has_value());
  CHECK(in_q.consistent);
  CHECK(in_q.colimit->apex == in_q.limit->apex);

  CHECK_FALSE(dual_pair(terminal_presheaf(cyclic_group(2))).has_value());
}

TEST_CASE("property: φ ∗ G ≅ Nat(ψ, G) for dual pairs") {
  std::mt19937 rng(103);
  int pairs = 0;
  for (const NamedPresheaf& p : presheaf_corpus()) {
    if (p.presheaf.base->morphism_count() > 12) continue;
    const auto pair = dual_pair(p.presheaf);
    if (!pair) continue;
    ++pairs;
    for (int i = 0; i < 4; ++i) {
      const SetFunctor g = oracle::random_presheaf(p.presheaf.base, 3, rng, Variance::co);
      CHECK(flem_holds(*pair, g));
    }
  }
  CHECK(pairs > 5);
}

TEST_CASE("absoluteness by sampling") {
  const std::vector<Functor> sample = absolute_sample();
  CHECK(sample.size() > 100);
  const AbsoluteReport e = check_absolute_sampled(terminal_presheaf(idempotent_monoid()), sample);
  CHECK(e.instances > 0);
  CHECK(e.violations.empty());
  const AbsoluteReport z = check_absolute_sampled(terminal_presheaf(cyclic_group(2)), sample);
  CHECK_FALSE(z.violations.empty());
  const AbsoluteReport y = check_absolute_sampled(representable(span_category(), 0), sample);
  CHECK(y.violations.empty());
}
