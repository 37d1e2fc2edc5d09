// Acceptance checks: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "checks.hpp"
#include "fincat/cauchy.hpp"
#include "fincat/classes.hpp"
#include "fincat/corpus.hpp"
#include "oracles.hpp"

using namespace fincat;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

bool bijective(const Map& m, int target_size) {
  if (static_cast<int>(m.size()) != target_size) return false;
  std::vector<bool> hit(target_size, false);
  for (int y : m) {
    if (y < 0 || y >= target_size || hit[y]) return false;
    hit[y] = true;
  }
  return true;
}

std::vector<int> hom_table(const Category& c) {
  std::vector<int> out;
  for (int p = 0; p < c.object_count(); ++p) {
    for (int q = 0; q < c.object_count(); ++q) out.push_back(c.hom_size(p, q));
  }
  return out;
}

std::string join(const std::vector<int>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s;
}

bool same_members(const PresheafCollection& c, const std::vector<SetFunctor>& expected) {
  if (c.size() != static_cast<int>(expected.size())) return false;
  for (const SetFunctor& f : expected) {
    if (c.find(f) < 0) return false;
  }
  return true;
}

Outcome cauchy_of_m() {
  const CauchyCompletion q = cauchy_completion(idempotent_monoid());
  const int classes = isomorphism_class_count(*q.completion);
  const std::vector<int> sizes = hom_table(*q.completion);
  const std::vector<int> oracle_sizes = oracle::karoubi_hom_sizes(*q.base);
  const bool ok = classes == 2 && sizes == std::vector<int>{2, 1, 1, 1} && sizes == oracle_sizes;
  return {ok, "classes=" + std::to_string(classes) + " homs=(" + join(sizes) + ") oracle=(" + join(oracle_sizes) + ")"};
}

Outcome small_projective_agreement() {
  const auto corpus = presheaf_corpus();
  int agree = 0, projective = 0;
  for (const NamedPresheaf& p : corpus) {
    const bool a = is_small_projective(p.presheaf);
    const bool b = retract_oracle(p.presheaf).has_value();
    const bool c = has_right_adjoint(weight_module(p.presheaf)).has_value();
    if (a == b && b == c) ++agree;
    if (a) ++projective;
  }
  const int n = static_cast<int>(corpus.size());
  return {n >= 50 && agree == n, std::to_string(agree) + "/" + std::to_string(n) + " agree, " +
                                     std::to_string(projective) + " small projective"};
}

Outcome orbits_vs_pullback() {
  const SetFunctor phi = terminal_presheaf(cyclic_group(2));
  const SetFunctor psi = terminal_presheaf(span_category());
  const CommutationReport r = commutation(phi, psi, group_cospan_diagram(2));
  const bool commutes = check_commutation(phi, psi, group_cospan_diagram(2));
  const bool continuous = is_phi_continuous(phi, pushout_class());
  const bool flat = flat_for_finite_limits(phi);
  std::ostringstream d;
  d << "commutes=" << commutes << " colim-of-pullback=" << r.lhs << " pullback-of-colim=" << r.rhs
    << " continuous=" << continuous << " flat=" << flat;
  return {!commutes && r.lhs == 2 && r.rhs == 1 && continuous && !flat, d.str()};
}

Outcome dual_paths() {
  std::mt19937 rng(2024);
  int agree = 0;
  const int n = 100;
  for (int i = 0; i < n; ++i) {
    const auto k = random_small_category(rng);
    const SetFunctor phi = oracle::random_presheaf(k, 2, rng);
    bool ok;
    if (i % 2 == 0) {
      const SetFunctor s = oracle::random_presheaf(k, 2, rng, Variance::co);
      const WeightedColimit c = weighted_colimit(phi, s, true);
      ok = c.via_elements && bijective(c.comparison, c.via_elements->apex) &&
           c.size() == oracle::weighted_colimit_size(phi, s);
    } else {
      const SetFunctor t = oracle::random_presheaf(k, 2, rng);
      const WeightedLimit l = weighted_limit(phi, t, true);
      ok = l.via_elements && bijective(l.comparison, l.via_elements->apex) &&
           static_cast<std::uint64_t>(l.size()) == oracle::nat_count(phi, t);
    }
    if (ok) ++agree;
  }
  return {agree == n, std::to_string(agree) + "/" + std::to_string(n) + " instances agree"};
}

Outcome yoneda_suite() {
  int triples = 0, good = 0;
  for (const NamedPresheaf& p : presheaf_corpus()) {
    const CategoryRef& k = p.presheaf.base;
    for (int b = 0; b < k->object_count(); ++b) {
      ++triples;
      const SetFunctor yb = representable(k, b);
      const NatSet nats = nat_transformations(yb, p.presheaf);
      bool ok = nats.size() == p.presheaf.sizes[b] &&
                static_cast<std::uint64_t>(nats.size()) == oracle::nat_count(yb, p.presheaf);
      for (const NatTrans& alpha : nats.elements()) ok = ok && validate(yb, p.presheaf, alpha).ok();
      if (ok) ++good;
    }
  }
  return {triples > 0 && good == triples, std::to_string(good) + "/" + std::to_string(triples) + " (K, b, F)"};
}

Outcome closure_fixtures() {
  int checked = 0;
  bool ok = true;
  for (const auto& [name, c] : fixture_categories()) {
    if (c->morphism_count() > 30) continue;
    std::vector<SetFunctor> reps;
    for (int b = 0; b < c->object_count(); ++b) reps.push_back(representable(c, b));
    const ClosureResult none = phi_closure_bounded(empty_class(), c);
    ok = ok && none.saturated_at_bound && same_members(none.collection, reps);
    const ClosureResult init = phi_closure_bounded(initial_class(), c);
    reps.push_back(initial_presheaf(c));
    ok = ok && init.saturated_at_bound && same_members(init.collection, reps);
    ++checked;
  }
  const auto m = idempotent_monoid();
  const ClosureResult split = phi_closure_bounded(splitting_class(), m);
  const bool split_ok =
      split.saturated_at_bound && same_members(split.collection, {representable(m, 0), terminal_presheaf(m)});
  return {ok && split_ok, std::to_string(checked) + " categories for empty/initial; splitting on M gives " +
                              std::to_string(split.collection.size()) + " members in " +
                              std::to_string(split.rounds) + " rounds, fixpoint=" +
                              (split.saturated_at_bound ? "yes" : "no")};
}

Outcome morita() {
  const auto m = idempotent_monoid();
  const bool mq = morita_equivalent(m, cauchy_completion(m).completion).equivalent;
  const bool z2i = morita_equivalent(cyclic_group(2), unit_category()).equivalent;
  int self = 0, idem = 0, total = 0;
  for (const auto& [name, c] : fixture_categories()) {
    ++total;
    if (morita_equivalent(c, c).equivalent) ++self;
    const auto qa = cauchy_completion(c).completion;
    if (find_equivalence(cauchy_completion(qa).completion, qa).has_value()) ++idem;
  }
  std::ostringstream d;
  d << "M~QM=" << mq << " Z2~I=" << z2i << " A~A " << self << "/" << total << " QQA~QA " << idem << "/" << total;
  return {mq && !z2i && self == total && idem == total, d.str()};
}

Outcome duality() {
  bool ok = true;
  for (const std::string name : {"I", "M", "Z2"}) {
    const DualityResult d = q_duality(fixture_category(name));
    ok = ok && d.confirmed_by_search && validate(d.equivalence).ok();
  }
  const auto m = idempotent_monoid();
  const auto pair = dual_pair(terminal_presheaf(m));
  if (!pair) return {false, "E has no dual pair"};
  const DualCheck in_m = dual_limit_colimit(*pair, identity_functor(m));
  const DualCheck in_q = dual_limit_colimit(*pair, cauchy_completion(m).embedding);
  const bool m_ok = in_m.consistent && !in_m.colimit && !in_m.limit;
  const bool q_ok = in_q.consistent && in_q.colimit && in_q.limit;
  std::ostringstream d;
  d << "q_duality on I, M, Z2 " << (ok ? "ok" : "failed") << "; in M neither exists=" << m_ok
    << "; in Q(M) both exist and agree=" << q_ok;
  return {ok && m_ok && q_ok, d.str()};
}

Outcome kan_adjunction() {
  std::mt19937 rng(9);
  int done = 0, good = 0;
  while (done < 30) {
    const auto a = random_small_category(rng);
    const auto c = random_small_category(rng);
    const auto k = random_functor(a, c, rng);
    if (!k) continue;
    const SetFunctor t = oracle::random_presheaf(a, 2, rng, Variance::co);
    const SetFunctor s = oracle::random_presheaf(c, 2, rng, Variance::co);
    if (checks::lan_adjunction_bijective(*k, t, s)) ++good;
    ++done;
  }
  return {good == done, std::to_string(good) + "/" + std::to_string(done) + " bijections"};
}

Outcome absoluteness() {
  const std::vector<Functor> sample = absolute_sample();
  int weights = 0, instances = 0, violations = 0;
  for (const NamedPresheaf& p : presheaf_corpus()) {
    if (!is_small_projective(p.presheaf)) continue;
    const AbsoluteReport r = check_absolute_sampled(p.presheaf, sample);
    ++weights;
    instances += r.instances;
    violations += static_cast<int>(r.violations.size());
  }
  const AbsoluteReport z2 = check_absolute_sampled(terminal_presheaf(cyclic_group(2)), sample);
  std::ostringstream d;
  d << weights << " small projective weights, " << instances << " instances, " << violations
    << " violations over " << sample.size() << " functors; Δ1 on Z/2: " << z2.violations.size() << " violations";
  return {weights > 0 && violations == 0 && !z2.violations.empty(), d.str()};
}

Outcome recognition() {
  const auto m = idempotent_monoid();
  const RecognitionReport good = recognize_free_cocompletion(cauchy_completion(m).embedding, splitting_class());
  const Functor collapse{m, unit_category(), {0}, {0, 0}};
  const RecognitionReport bad = recognize_free_cocompletion(collapse, splitting_class());
  std::ostringstream d;
  d << "Z: (i)=" << good.fully_faithful << " (ii)=" << good.cocomplete << " (iii)=" << good.generates
    << " (iv)=" << good.atomic << "; collapse (i)=" << bad.fully_faithful;
  return {good.all() && !bad.fully_faithful, d.str()};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"Cauchy completion of M", cauchy_of_m},
      {"small projective three-way agreement", small_projective_agreement},
      {"orbits versus pullback over Z/2", orbits_vs_pullback},
      {"weighted (co)limit dual paths", dual_paths},
      {"Yoneda suite", yoneda_suite},
      {"closure fixtures", closure_fixtures},
      {"Morita equivalence", morita},
      {"Cauchy duality and dual pairs", duality},
      {"Kan adjunction", kan_adjunction},
      {"sampled absoluteness", absoluteness},
      {"free cocompletion recognition", recognition},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!o.pass) ++failed;
    std::printf("%s %2zu %-40s %s (%.2fs)\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                o.detail.c_str(), secs);
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
