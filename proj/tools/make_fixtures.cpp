// Regenerates the JSON fixture corpus: make-fixtures [output-dir]
#include <filesystem>
#include <fstream>
#include <iostream>

#include "fincat/cauchy.hpp"
#include "fincat/corpus.hpp"
#include "fincat/workspace.hpp"

using namespace fincat;
using nlohmann::json;

namespace {

void write(const std::string& dir, const std::string& file, const json& doc) {
  std::ofstream out(dir + "/" + file);
  out << doc.dump(2) << "\n";
  if (!out) throw std::runtime_error("cannot write " + dir + "/" + file);
  std::cout << "wrote " << file << "\n";
}

Functor constant_functor_to(const CategoryRef& source, const CategoryRef& target, int object) {
  Functor f{source, target, std::vector<int>(source->object_count(), object), {}};
  f.morphisms.assign(source->morphism_count(), target->identity(object));
  return f;
}

}  // namespace

int main(int argc, char** argv) {
  const std::string dir = argc > 1 ? argv[1] : FINCAT_FIXTURE_DIR;
  try {
    std::filesystem::create_directories(dir);
    write(dir, "monoid_M.json", {{"categories", {{"M", category_to_json(*fixture_category("M"))}}}});

    json cats = json::object();
    for (const auto& [name, c] : fixture_categories()) {
      if (name != "M") cats[name] = category_to_json(*c);
    }
    cats["Set12"] = category_to_json(*finset_category({1, 2}));
    write(dir, "categories.json", {{"categories", cats}});

    const CauchyCompletion qm = cauchy_completion(fixture_category("M"));
    json cauchy;
    cauchy["categories"]["QM"] = category_to_json(*qm.completion);
    cauchy["functors"]["Z"] = functor_to_json("M", "QM", qm.embedding);
    cauchy["functors"]["id_M"] = functor_to_json("M", "M", identity_functor(fixture_category("M")));
    cauchy["functors"]["collapse_M"] =
        functor_to_json("M", "I", constant_functor_to(fixture_category("M"), fixture_category("I"), 0));
    cauchy["presheaves"]["E"] = presheaf_to_json("M", terminal_presheaf(fixture_category("M")));
    cauchy["presheaves"]["Y_M"] = presheaf_to_json("M", representable(fixture_category("M"), 0));
    write(dir, "cauchy.json", cauchy);

    json weights;
    auto add = [&](const std::string& name, const std::string& on, const SetFunctor& f) {
      weights["presheaves"][name] = presheaf_to_json(on, f);
    };
    add("delta1_Z2", "Z2", terminal_presheaf(fixture_category("Z2")));
    add("delta1_span", "span", terminal_presheaf(fixture_category("span")));
    add("delta1_Two", "Two", terminal_presheaf(fixture_category("Two")));
    add("delta1_discrete2", "discrete2", terminal_presheaf(fixture_category("discrete2")));
    add("delta0_Two", "Two", initial_presheaf(fixture_category("Two")));
    add("Y_Two_a", "Two", representable(fixture_category("Two"), 0));
    add("Y_Two_b", "Two", representable(fixture_category("Two"), 1));
    add("Y_span_a", "span", representable(fixture_category("span"), 0));
    SetFunctor points = constant_functor(fixture_category("I"), Variance::co, 2);
    add("two_points", "I", points);
    for (const char* c : {"empty", "initial", "splitting", "pushout", "finite-colimit", "binary-coproduct"}) {
      weights["classes"][std::string(c)] = {{"builtin", c}};
    }
    const CategoryRef two = fixture_category("Two");
    Functor pick_a{fixture_category("I"), two, {*two->object_id("a")}, {two->identity(*two->object_id("a"))}};
    weights["functors"]["pick_a"] = functor_to_json("I", "Two", pick_a);
    weights["functors"]["collapse_Two"] =
        functor_to_json("Two", "I", constant_functor_to(two, fixture_category("I"), 0));
    write(dir, "weights.json", weights);

    json example;
    example["profunctors"]["S_group_cospan"] = profunctor_to_json("span", "Z2", group_cospan_diagram(2));
    example["commutations"]["example8.2"] = {{"phi", "delta1_Z2"}, {"psi", "delta1_span"}, {"diagram", "S_group_cospan"}};
    write(dir, "commutation.json", example);

    // Round trip: the corpus must load and serialize back to itself.
    const Workspace w = load_workspace(fixture_files(dir));
    std::cout << "loaded " << w.categories.size() << " categories, " << w.presheaves.size() << " presheaves\n";
  } catch (const std::exception& e) {
    std::cerr << "make-fixtures: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
