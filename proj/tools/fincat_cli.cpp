#include <algorithm>
#include <functional>
#include <iostream>
#include <random>

#include <CLI11.hpp>

#include "fincat/cauchy.hpp"
#include "fincat/classes.hpp"
#include "fincat/kan.hpp"
#include "fincat/workspace.hpp"

using namespace fincat;
using Report = nlohmann::ordered_json;

namespace {

struct Options {
  bool json = false;
  int cap_rounds = ClosureCaps{}.rounds;
  int cap_members = ClosureCaps{}.members;
  std::uint64_t budget = kDefaultSearchBudget;
  unsigned seed = 0;
  std::vector<std::string> files;

  ClosureCaps caps() const {
    ClosureCaps c;
    c.rounds = cap_rounds;
    c.members = cap_members;
    c.budget = budget;
    return c;
  }
};

// Exit code requested by a command whose report is still printed.
int g_status = 0;

std::string scalar_text(const Report& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

void render(const Report& j, std::ostream& out, const std::string& indent = "") {
  for (const auto& [key, v] : j.items()) {
    if (v.is_object()) {
      out << indent << key << ":\n";
      render(v, out, indent + "  ");
    } else if (v.is_array() && std::all_of(v.begin(), v.end(), [](const Report& e) { return e.is_primitive(); })) {
      out << indent << key << ":";
      for (const Report& e : v) out << " " << scalar_text(e);
      out << "\n";
    } else if (v.is_array()) {
      out << indent << key << ":\n";
      for (const Report& e : v) out << indent << "  - " << (e.is_primitive() ? scalar_text(e) : e.dump()) << "\n";
    } else {
      out << indent << key << ": " << scalar_text(v) << "\n";
    }
  }
}

Report sizes_by_object(const Category& c, const std::vector<int>& sizes) {
  Report out = Report::object();
  for (int a = 0; a < c.object_count(); ++a) out[c.object_name(a)] = sizes[a];
  return out;
}

Report functor_report(const Functor& f) {
  Report out;
  for (int a = 0; a < f.source->object_count(); ++a) out[f.source->object_name(a)] = f.target->object_name(f.obj(a));
  return out;
}

Report cocone_report(const Category& target, const std::optional<CategoryColimit>& c) {
  if (!c) return Report{{"exists", false}};
  Report legs = Report::array();
  for (const Map& comp : c->cocone.components) {
    Report row = Report::array();
    for (int m : comp) row.push_back(target.morphism_name(m));
    legs.push_back(row);
  }
  return Report{{"exists", true}, {"apex", target.object_name(c->apex)}, {"legs", legs}};
}

Report profunctor_sizes(const Profunctor& p) {
  Report out;
  const Category& b = *p.contra;
  const Category& a = *p.co;
  for (int y = 0; y < b.object_count(); ++y) {
    for (int x = 0; x < a.object_count(); ++x) out[b.object_name(y) + "," + a.object_name(x)] = p.size(y, x);
  }
  return out;
}

SetFunctor presheaf_arg(const Workspace& w, const std::string& name) {
  const SetFunctor& f = w.presheaf(name);
  if (f.variance != Variance::contra) throw ValidationError("'" + name + "' is covariant; a presheaf is required");
  return f;
}

using Args = std::vector<std::string>;
using Handler = std::function<Report(const Workspace&, const Args&, const Options&)>;

struct Command {
  const char* name;
  const char* usage;
  int min_args;
  int max_args;
  Handler run;
};

Report cmd_validate(const Workspace& w, const Args& args, const Options&) {
  Args names = args;
  if (names.empty()) {
    for (const auto& [n, e] : w.categories) names.push_back(n);
    for (const auto& [n, e] : w.functors) names.push_back(n);
    for (const auto& [n, e] : w.presheaves) names.push_back(n);
    for (const auto& [n, e] : w.profunctors) names.push_back(n);
  }
  Report out;
  for (const std::string& n : names) {
    const std::string kind = w.kind_of(n);
    ValidationReport r;
    if (kind == "category") {
      r = validate(*w.category(n));
    } else if (kind == "functor") {
      r = validate(w.functor(n));
    } else if (kind == "presheaf") {
      r = validate(w.presheaf(n));
    } else if (kind == "profunctor") {
      r = validate(w.profunctor(n));
    } else if (kind.empty()) {
      r = validate(*w.category(n));  // category expression such as Q(M)
    }
    out[n] = r.ok() ? "ok" : r.summary();
    if (!r.ok()) g_status = 3;
  }
  return out;
}

Report cmd_limit(const Workspace& w, const Args& a, const Options&) {
  const SetFunctor& d = w.presheaf(a[0]);
  const SetLimit l = finset_limit(d);
  return Report{{"diagram", a[0]}, {"apex", l.apex}, {"families", l.families}};
}

Report cmd_colimit(const Workspace& w, const Args& a, const Options&) {
  const SetFunctor& d = w.presheaf(a[0]);
  const SetColimit c = finset_colimit(d);
  Report reps = Report::array();
  for (const auto& [k, x] : c.representatives) reps.push_back(d.base->object_name(k) + ":" + std::to_string(x));
  return Report{{"diagram", a[0]}, {"apex", c.apex}, {"representatives", reps}};
}

Report cmd_wlimit(const Workspace& w, const Args& a, const Options&) {
  const SetFunctor phi = presheaf_arg(w, a[0]);
  if (w.kind_of(a[1]) == "functor") {
    const Functor& t = w.functor(a[1]);
    return Report{{"weight", a[0]}, {"diagram", a[1]}, {"limit", cocone_report(*t.target, limit_in_category(phi, t))}};
  }
  const WeightedLimit l = weighted_limit(phi, w.presheaf(a[1]), true);
  return Report{{"weight", a[0]}, {"diagram", a[1]}, {"size", l.size()}, {"via_elements", l.via_elements->apex}};
}

Report cmd_wcolimit(const Workspace& w, const Args& a, const Options&) {
  const SetFunctor phi = presheaf_arg(w, a[0]);
  if (w.kind_of(a[1]) == "functor") {
    const Functor& s = w.functor(a[1]);
    return Report{{"weight", a[0]}, {"diagram", a[1]}, {"colimit", cocone_report(*s.target, colimit_in_category(phi, s))}};
  }
  const WeightedColimit c = weighted_colimit(phi, w.presheaf(a[1]), true);
  return Report{{"weight", a[0]}, {"diagram", a[1]}, {"size", c.size()}, {"via_elements", c.via_elements->apex}};
}

Report cmd_kan(const Workspace& w, const Args& a, const Options&) {
  const Functor& k = w.functor(a[0]);
  const LanResult r = lan(k, w.presheaf(a[1]));
  return Report{{"along", a[0]}, {"of", a[1]}, {"extension", sizes_by_object(*k.target, r.extension.sizes)},
                {"unit", r.unit.components}};
}

Report cmd_nerve(const Workspace& w, const Args& a, const Options&) {
  const Functor& g = w.functor(a[0]);
  const Nerve n = nerve(g);
  Report out;
  for (int b = 0; b < g.target->object_count(); ++b) {
    out[g.target->object_name(b)] = sizes_by_object(*g.source, n.values[b].sizes);
  }
  return Report{{"functor", a[0]}, {"values", out}};
}

Report cmd_elements(const Workspace& w, const Args& a, const Options&) {
  const Elements el = category_of_elements(w.presheaf(a[0]));
  return Report{{"presheaf", a[0]},
                {"objects", el.category->object_names()},
                {"morphisms", el.category->morphism_count()},
                {"connected", is_connected(*el.category)},
                {"opposite_filtered", is_filtered(*opposite(el.category))}};
}

Report cmd_filtered(const Workspace& w, const Args& a, const Options&) {
  return Report{{"category", a[0]}, {"filtered", is_filtered(*w.category(a[0]))}};
}

Report cmd_connected(const Workspace& w, const Args& a, const Options&) {
  return Report{{"category", a[0]}, {"connected", is_connected(*w.category(a[0]))}};
}

Report cmd_lift(const Workspace& w, const Args& a, const Options&) {
  const RightLift r = right_lift(w.profunctor(a[0]), w.profunctor(a[1]));
  return Report{{"f", a[0]}, {"h", a[1]}, {"lift", profunctor_sizes(r.lift)}};
}

Report cmd_extend(const Workspace& w, const Args& a, const Options&) {
  const RightExtension r = right_extend(w.profunctor(a[0]), w.profunctor(a[1]));
  return Report{{"g", a[0]}, {"h", a[1]}, {"extension", profunctor_sizes(r.extension)}};
}

Report cmd_adjoint(const Workspace& w, const Args& a, const Options&) {
  const Profunctor f = w.kind_of(a[0]) == "presheaf" ? weight_module(presheaf_arg(w, a[0])) : w.profunctor(a[0]);
  const auto adj = has_right_adjoint(f);
  Report out{{"module", a[0]}, {"has_right_adjoint", adj.has_value()}};
  if (adj) out["right_adjoint"] = profunctor_sizes(adj->right);
  return out;
}

Report cmd_smallproj(const Workspace& w, const Args& a, const Options&) {
  const SetFunctor phi = presheaf_arg(w, a[0]);
  const SmallProjectiveReport r = small_projective_report(phi);
  const auto retract = retract_oracle(phi);
  Report out{{"presheaf", a[0]},
             {"small_projective", r.small_projective},
             {"colimit_size", r.colimit_size},
             {"endo_size", r.endo_size},
             {"retract_of", retract ? Report("Y(" + phi.base->object_name(retract->object) + ")") : Report(nullptr)},
             {"module_has_right_adjoint", has_right_adjoint(weight_module(phi)).has_value()}};
  return out;
}

Report cmd_cauchy(const Workspace& w, const Args& a, const Options&) {
  const CauchyCompletion q = cauchy_completion(w.category(a[0]));
  const Category& c = *q.completion;
  Report homs = Report::array();
  for (int p = 0; p < c.object_count(); ++p) {
    for (int r = 0; r < c.object_count(); ++r) {
      homs.push_back(c.object_name(p) + " -> " + c.object_name(r) + ": " + std::to_string(c.hom_size(p, r)));
    }
  }
  return Report{{"category", a[0]},
                {"objects", c.object_count()},
                {"object_names", c.object_names()},
                {"isomorphism_classes", isomorphism_class_count(c)},
                {"hom_sizes", homs},
                {"verified", verify_completion(q)}};
}

Report cmd_isbell(const Workspace& w, const Args& a, const Options&) {
  const SetFunctor phi = presheaf_arg(w, a[0]);
  const IsbellLeft l = isbell_left(phi);
  const IsbellRight r = isbell_right(l.functor);
  return Report{{"presheaf", a[0]},
                {"left", sizes_by_object(*phi.base, l.functor.sizes)},
                {"right_of_left", sizes_by_object(*phi.base, r.functor.sizes)},
                {"unit_invertible", is_isomorphism(isbell_unit(phi))}};
}

Report cmd_duality(const Workspace& w, const Args& a, const Options& o) {
  const DualityResult d = q_duality(w.category(a[0]), o.budget);
  return Report{{"category", a[0]},
                {"equivalence", validate(d.equivalence).ok()},
                {"objects", d.equivalence.forward.source->object_count()},
                {"confirmed_by_search", d.confirmed_by_search}};
}

Report cmd_morita(const Workspace& w, const Args& a, const Options& o) {
  const MoritaResult m = morita_equivalent(w.category(a[0]), w.category(a[1]), o.budget);
  Report out{{"a", a[0]}, {"b", a[1]}, {"morita_equivalent", m.equivalent}};
  if (m.witness) out["witness"] = Report{{"forward", functor_report(m.witness->forward)}, {"backward", functor_report(m.witness->backward)}};
  return out;
}

Report cmd_closure(const Workspace& w, const Args& a, const Options& o) {
  const ClosureResult r = phi_closure_bounded(w.weight_class(a[0]), w.category(a[1]), o.caps());
  Report members = Report::array();
  for (int i = 0; i < r.collection.size(); ++i) {
    const Provenance& p = r.collection.provenance(i);
    std::string how = p.kind == Provenance::Kind::representable ? "Y(" + r.collection.base()->object_name(p.object) + ")"
                                                                : "colimit weighted by " + p.weight_name;
    Report sizes = Report::array();
    for (int s : r.collection[i].sizes) sizes.push_back(s);
    members.push_back(Report{{"provenance", how}, {"sizes", sizes}});
  }
  if (!r.cap_hit.empty()) g_status = 4;
  return Report{{"class", a[0]},
                {"category", a[1]},
                {"members", r.collection.size()},
                {"rounds", r.rounds},
                {"saturated_at_bound", r.saturated_at_bound},
                {"cap_hit", r.cap_hit.empty() ? Report(nullptr) : Report(r.cap_hit)},
                {"collection", members}};
}

Report cmd_saturation(const Workspace& w, const Args& a, const Options& o) {
  return Report{{"presheaf", a[0]},
                {"class", a[1]},
                {"membership", to_string(in_saturation_bounded(w.presheaf(a[0]), w.weight_class(a[1]), o.caps()))}};
}

Report cmd_cocomplete(const Workspace& w, const Args& a, const Options& o) {
  const CategoryRef c = w.category(a[0]);
  const CocompletenessReport r = is_phi_cocomplete(c, w.weight_class(a[1]), o.budget);
  Report out{{"category", a[0]}, {"class", a[1]}, {"cocomplete", r.cocomplete}};
  if (r.witness) out["missing"] = Report{{"weight", r.weight}, {"diagram", functor_report(*r.witness)}};
  return out;
}

Report cmd_atoms(const Workspace& w, const Args& a, const Options& o) {
  const CategoryRef c = w.category(a[0]);
  Report names = Report::array();
  for (int x : atoms(c, w.weight_class(a[1]), o.budget)) names.push_back(c->object_name(x));
  return Report{{"category", a[0]}, {"class", a[1]}, {"atoms", names}};
}

Report cmd_commute(const Workspace& w, const Args& a, const Options&) {
  std::string phi, psi, s;
  if (a.size() == 1) {
    const CommutationEntry& e = w.commutation(a[0]);
    phi = e.phi;
    psi = e.psi;
    s = e.diagram;
  } else if (a.size() == 3) {
    phi = a[0];
    psi = a[1];
    s = a[2];
  } else {
    throw ValidationError("commute takes a commutation name or three arguments: phi psi diagram");
  }
  const CommutationReport r = commutation(presheaf_arg(w, phi), presheaf_arg(w, psi), w.profunctor(s));
  return Report{{"phi", phi},
                {"psi", psi},
                {"diagram", s},
                {"colimit_of_limits", r.lhs},
                {"limit_of_colimits", r.rhs},
                {"commutes", r.bijective}};
}

Report cmd_flat(const Workspace& w, const Args& a, const Options&) {
  const SetFunctor phi = presheaf_arg(w, a[0]);
  return Report{{"presheaf", a[0]},
                {"flat_for_finite_limits", flat_for_finite_limits(phi)},
                {"flat_for_terminal", flat_for_terminal(phi)}};
}

Report cmd_continuous(const Workspace& w, const Args& a, const Options& o) {
  return Report{{"presheaf", a[0]},
                {"class", a[1]},
                {"continuous", is_phi_continuous(presheaf_arg(w, a[0]), w.weight_class(a[1]), o.budget)}};
}

Report cmd_recognize(const Workspace& w, const Args& a, const Options& o) {
  const RecognitionReport r = recognize_free_cocompletion(w.functor(a[0]), w.weight_class(a[1]), o.caps());
  return Report{{"functor", a[0]},
                {"class", a[1]},
                {"fully_faithful", r.fully_faithful},
                {"cocomplete", r.cocomplete},
                {"generates", r.generates},
                {"atomic", r.atomic},
                {"free_cocompletion", r.all()}};
}

Report cmd_absolute(const Workspace& w, const Args& a, const Options& o) {
  const SetFunctor phi = presheaf_arg(w, a[0]);
  std::vector<Functor> sample = absolute_sample();
  if (a.size() > 1) {
    const std::size_t count = std::stoul(a[1]);
    std::mt19937 rng(o.seed);
    std::shuffle(sample.begin(), sample.end(), rng);
    if (count < sample.size()) sample.resize(count);
  }
  const AbsoluteReport r = check_absolute_sampled(phi, sample, o.budget);
  Report first = Report::array();
  for (std::size_t i = 0; i < r.violations.size() && i < 5; ++i) first.push_back(r.violations[i]);
  return Report{{"presheaf", a[0]},
                {"small_projective", is_small_projective(phi)},
                {"sample_functors", sample.size()},
                {"instances", r.instances},
                {"violations", r.violations.size()},
                {"first_violations", first}};
}

const std::vector<Command>& commands() {
  static const std::vector<Command> table{
      {"validate", "validate every entity, or the named ones", 0, 64, cmd_validate},
      {"limit", "conical limit in FinSet of a presheaf diagram", 1, 1, cmd_limit},
      {"colimit", "conical colimit in FinSet", 1, 1, cmd_colimit},
      {"wlimit", "weighted limit {weight, diagram}; diagram is a presheaf or a functor", 2, 2, cmd_wlimit},
      {"wcolimit", "weighted colimit weight * diagram; diagram is covariant or a functor", 2, 2, cmd_wcolimit},
      {"kan", "left Kan extension of a covariant functor along a functor", 2, 2, cmd_kan},
      {"nerve", "values of the nerve of a functor", 1, 1, cmd_nerve},
      {"elements", "category of elements of a presheaf", 1, 1, cmd_elements},
      {"filtered", "is the category filtered", 1, 1, cmd_filtered},
      {"connected", "is the category connected", 1, 1, cmd_connected},
      {"lift", "right lifting {|f, h|} of modules", 2, 2, cmd_lift},
      {"extend", "right extension [[g, h]] of modules", 2, 2, cmd_extend},
      {"adjoint", "right adjoint of a module, or of the module of a presheaf", 1, 1, cmd_adjoint},
      {"smallproj", "small projectivity with both independent checks", 1, 1, cmd_smallproj},
      {"cauchy", "idempotent-splitting completion", 1, 1, cmd_cauchy},
      {"isbell", "Isbell adjunction on a presheaf", 1, 1, cmd_isbell},
      {"duality", "opposite(Q(A^op)) against Q(A)", 1, 1, cmd_duality},
      {"morita", "equivalence of Cauchy completions", 2, 2, cmd_morita},
      {"closure", "bounded closure of the representables: closure CLASS CATEGORY", 2, 2, cmd_closure},
      {"saturation", "bounded saturation membership: saturation PRESHEAF CLASS", 2, 2, cmd_saturation},
      {"cocomplete", "does the category have all colimits of the class: cocomplete CATEGORY CLASS", 2, 2, cmd_cocomplete},
      {"atoms", "objects whose hom functor preserves the class: atoms CATEGORY CLASS", 2, 2, cmd_atoms},
      {"commute", "colimit/limit commutation: commute NAME | commute PHI PSI DIAGRAM", 1, 3, cmd_commute},
      {"flat", "flatness for finite limits and for the terminal weight", 1, 1, cmd_flat},
      {"continuous", "does the presheaf turn the class's colimits into limits", 2, 2, cmd_continuous},
      {"recognize", "free cocompletion conditions: recognize FUNCTOR CLASS", 2, 2, cmd_recognize},
      {"absolute-sample", "preservation of the weight's colimits by sampled functors [count]", 1, 2, cmd_absolute},
  };
  return table;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite category calculus: weighted limits, modules, Cauchy completion"};
  Options opt;
  app.add_flag("--json", opt.json, "machine-readable JSON output");
  app.add_option("--cap-rounds", opt.cap_rounds, "closure round cap")->check(CLI::PositiveNumber);
  app.add_option("--cap-members", opt.cap_members, "closure member cap")->check(CLI::PositiveNumber);
  app.add_option("--budget", opt.budget, "search node budget")->check(CLI::PositiveNumber);
  app.add_option("--seed", opt.seed, "seed for sampled checks");
  app.add_option("-w,--workspace", opt.files, "workspace JSON files (default: the bundled fixtures)");
  app.require_subcommand(1);

  std::vector<Args> args(commands().size());
  std::vector<CLI::App*> subs;
  for (std::size_t i = 0; i < commands().size(); ++i) {
    const Command& c = commands()[i];
    CLI::App* sub = app.add_subcommand(c.name, c.usage);
    sub->fallthrough();
    auto* opt_args = sub->add_option("args", args[i], "entity names");
    opt_args->expected(c.min_args, c.max_args);
    if (c.min_args > 0) opt_args->required();
    subs.push_back(sub);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    const Workspace w = load_workspace(opt.files.empty() ? fixture_files(FINCAT_FIXTURE_DIR) : opt.files);
    for (std::size_t i = 0; i < subs.size(); ++i) {
      if (!subs[i]->parsed()) continue;
      const Report r = commands()[i].run(w, args[i], opt);
      if (opt.json) {
        std::cout << r.dump(2) << "\n";
      } else {
        render(r, std::cout);
      }
    }
    return g_status;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const ValidationError& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return 3;
  } catch (const UnresolvedReference& e) {
    std::cerr << "unresolved reference: " << e.what() << "\n";
    return 3;
  } catch (const MalformedTable& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return 3;
  } catch (const EndpointMismatch& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return 3;
  } catch (const BudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return 4;
  } catch (const CapExceeded& e) {
    std::cerr << "cap exceeded: " << e.what() << "\n";
    return 4;
  } catch (const InternalMismatch& e) {
    std::cerr << "internal mismatch: " << e.what() << "\n";
    return 5;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
