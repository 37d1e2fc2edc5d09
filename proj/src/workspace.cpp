#include "fincat/workspace.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "fincat/cauchy.hpp"

namespace fincat {

using nlohmann::json;

namespace {

std::string context(const std::string& kind, const std::string& name) { return kind + " '" + name + "'"; }

const json& field(const json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) throw ValidationError(where + ": missing field '" + key + "'");
  return j.at(key);
}

std::string as_string(const json& j, const std::string& where) {
  if (!j.is_string()) throw ValidationError(where + ": expected a string, got " + j.dump());
  return j.get<std::string>();
}

int object_named(const Category& c, const std::string& name, const std::string& where) {
  auto id = c.object_id(name);
  if (!id) throw ValidationError(where + ": no object '" + name + "'");
  return *id;
}

int morphism_named(const Category& c, const std::string& name, const std::string& where) {
  auto id = c.morphism_id(name);
  if (!id) throw ValidationError(where + ": no morphism '" + name + "'");
  return *id;
}

int element_named(const std::vector<std::string>& elements, const std::string& name, const std::string& where) {
  auto it = std::find(elements.begin(), elements.end(), name);
  if (it == elements.end()) throw ValidationError(where + ": no element '" + name + "'");
  return static_cast<int>(it - elements.begin());
}

std::vector<std::string> element_list(const json& j, const std::string& where) {
  if (!j.is_array()) throw ValidationError(where + ": element list must be an array");
  std::vector<std::string> out;
  for (const json& e : j) {
    std::string name = e.is_string() ? e.get<std::string>() : e.dump();
    if (std::find(out.begin(), out.end(), name) != out.end()) throw ValidationError(where + ": duplicate element '" + name + "'");
    out.push_back(std::move(name));
  }
  return out;
}

// Reads {elem: elem} into a total function; identity when absent and allowed.
Map read_action(const json* j, const std::vector<std::string>& from, const std::vector<std::string>& to,
                bool identity_default, const std::string& where) {
  Map out(from.size(), -1);
  if (!j) {
    if (!identity_default && !from.empty()) throw ValidationError(where + ": action missing");
    for (std::size_t x = 0; x < from.size(); ++x) out[x] = static_cast<int>(x);
    return out;
  }
  if (!j->is_object()) throw ValidationError(where + ": action must be an object");
  for (const auto& [k, v] : j->items()) {
    const int x = element_named(from, k, where);
    out[x] = element_named(to, v.is_string() ? v.get<std::string>() : v.dump(), where);
  }
  for (std::size_t x = 0; x < from.size(); ++x) {
    if (out[x] < 0) throw ValidationError(where + ": action undefined on element '" + from[x] + "'");
  }
  return out;
}

json action_json(const Map& m, const std::vector<std::string>& from, const std::vector<std::string>& to) {
  json out = json::object();
  for (std::size_t x = 0; x < m.size(); ++x) out[from[x]] = to[m[x]];
  return out;
}

std::vector<std::string> numbered(int n) {
  std::vector<std::string> out;
  for (int i = 0; i < n; ++i) out.push_back(std::to_string(i));
  return out;
}

void check(const ValidationReport& r, const std::string& where) {
  if (!r.ok()) throw ValidationError(where + ": " + r.summary());
}

CategoryRef category_from_json(const json& j, const std::string& where) {
  std::vector<std::string> objects;
  for (const json& o : field(j, "objects", where)) objects.push_back(as_string(o, where));
  std::vector<MorphismData> mors;
  auto find_object = [&](const std::string& name) {
    auto it = std::find(objects.begin(), objects.end(), name);
    if (it == objects.end()) throw ValidationError(where + ": no object '" + name + "'");
    return static_cast<int>(it - objects.begin());
  };
  for (const json& m : field(j, "morphisms", where)) {
    mors.push_back({as_string(field(m, "id", where), where), find_object(as_string(field(m, "src", where), where)),
                    find_object(as_string(field(m, "tgt", where), where))});
  }
  auto find_morphism = [&](const std::string& name) {
    for (std::size_t f = 0; f < mors.size(); ++f) {
      if (mors[f].name == name) return static_cast<int>(f);
    }
    throw ValidationError(where + ": no morphism '" + name + "'");
  };
  const json& ids_json = field(j, "identities", where);
  std::vector<int> ids;
  for (const std::string& o : objects) {
    if (!ids_json.contains(o)) throw ValidationError(where + ": object '" + o + "' has no identity");
    ids.push_back(find_morphism(as_string(ids_json.at(o), where)));
  }
  const std::size_t m = mors.size();
  std::vector<int> comp(m * m, -1);
  std::vector<bool> given(m * m, false);
  if (j.contains("compose")) {
    for (const json& t : j.at("compose")) {
      if (!t.is_array() || t.size() != 3) throw ValidationError(where + ": compose entries are [g, f, g∘f]");
      const int g = find_morphism(as_string(t[0], where));
      const int f = find_morphism(as_string(t[1], where));
      const int h = find_morphism(as_string(t[2], where));
      const std::size_t at = static_cast<std::size_t>(g) * m + f;
      if (given[at] && comp[at] != h) {
        throw ValidationError(where + ": conflicting composites for (" + mors[g].name + ", " + mors[f].name + ")");
      }
      comp[at] = h;
      given[at] = true;
    }
  }
  for (std::size_t f = 0; f < m; ++f) {
    const int before = ids[mors[f].src], after = ids[mors[f].tgt];
    if (!given[static_cast<std::size_t>(after) * m + f]) comp[static_cast<std::size_t>(after) * m + f] = static_cast<int>(f);
    if (!given[f * m + before]) comp[f * m + before] = static_cast<int>(f);
  }
  CategoryRef c;
  try {
    c = Category::make(std::move(objects), std::move(mors), std::move(ids), std::move(comp));
  } catch (const MalformedTable& e) {
    throw ValidationError(where + ": " + e.what());
  }
  check(validate(*c), where);
  return c;
}

}  // namespace

json category_to_json(const Category& c) {
  json out;
  out["objects"] = c.object_names();
  out["morphisms"] = json::array();
  for (int f = 0; f < c.morphism_count(); ++f) {
    out["morphisms"].push_back(
        {{"id", c.morphism_name(f)}, {"src", c.object_name(c.src(f))}, {"tgt", c.object_name(c.tgt(f))}});
  }
  out["identities"] = json::object();
  for (int a = 0; a < c.object_count(); ++a) out["identities"][c.object_name(a)] = c.morphism_name(c.identity(a));
  out["compose"] = json::array();
  for (int g = 0; g < c.morphism_count(); ++g) {
    for (int f = 0; f < c.morphism_count(); ++f) {
      if (!c.composable(g, f) || c.is_identity(g) || c.is_identity(f)) continue;
      out["compose"].push_back({c.morphism_name(g), c.morphism_name(f), c.morphism_name(c.compose(g, f))});
    }
  }
  return out;
}

json functor_to_json(const std::string& source, const std::string& target, const Functor& f) {
  json out{{"source", source}, {"target", target}, {"objects", json::object()}, {"morphisms", json::object()}};
  for (int a = 0; a < f.source->object_count(); ++a) out["objects"][f.source->object_name(a)] = f.target->object_name(f.obj(a));
  for (int m = 0; m < f.source->morphism_count(); ++m) {
    if (f.source->is_identity(m)) continue;
    out["morphisms"][f.source->morphism_name(m)] = f.target->morphism_name(f.mor(m));
  }
  return out;
}

json presheaf_to_json(const std::string& on, const SetFunctor& f, const std::vector<std::vector<std::string>>& elements) {
  const Category& c = *f.base;
  std::vector<std::vector<std::string>> names = elements;
  if (names.empty()) {
    for (int a = 0; a < c.object_count(); ++a) names.push_back(numbered(f.sizes[a]));
  }
  json out{{"on", on}, {"variance", f.variance == Variance::contra ? "contra" : "co"}, {"sets", json::object()},
           {"actions", json::object()}};
  for (int a = 0; a < c.object_count(); ++a) out["sets"][c.object_name(a)] = names[a];
  for (int m = 0; m < c.morphism_count(); ++m) {
    if (c.is_identity(m)) continue;
    out["actions"][c.morphism_name(m)] = action_json(f.actions[m], names[f.action_source(m)], names[f.action_target(m)]);
  }
  return out;
}

json profunctor_to_json(const std::string& contra, const std::string& co, const Profunctor& p,
                        const std::vector<std::vector<std::string>>& elements) {
  const Category& b = *p.contra;
  const Category& a = *p.co;
  const int na = a.object_count();
  std::vector<std::vector<std::string>> names = elements;
  if (names.empty()) {
    for (int y = 0; y < b.object_count(); ++y) {
      for (int x = 0; x < na; ++x) names.push_back(numbered(p.size(y, x)));
    }
  }
  json out{{"contra", contra}, {"co", co}, {"sets", json::object()}, {"left", json::object()}, {"right", json::object()}};
  for (int y = 0; y < b.object_count(); ++y) {
    for (int x = 0; x < na; ++x) out["sets"][b.object_name(y)][a.object_name(x)] = names[y * na + x];
  }
  for (int u = 0; u < b.morphism_count(); ++u) {
    if (b.is_identity(u)) continue;
    for (int x = 0; x < na; ++x) {
      out["left"][b.morphism_name(u)][a.object_name(x)] =
          action_json(p.left_action(u, x), names[b.tgt(u) * na + x], names[b.src(u) * na + x]);
    }
  }
  for (int y = 0; y < b.object_count(); ++y) {
    for (int v = 0; v < a.morphism_count(); ++v) {
      if (a.is_identity(v)) continue;
      out["right"][b.object_name(y)][a.morphism_name(v)] =
          action_json(p.right_action(y, v), names[y * na + a.src(v)], names[y * na + a.tgt(v)]);
    }
  }
  return out;
}

CategoryRef Workspace::category(std::string_view expr) const {
  const std::string key(expr);
  if (auto it = categories.find(key); it != categories.end()) return it->second;
  if (auto it = derived_.find(expr); it != derived_.end()) return it->second;
  CategoryRef out;
  auto wrapped = [&](std::string_view prefix) {
    return expr.size() > prefix.size() + 1 && expr.substr(0, prefix.size()) == prefix && expr.back() == ')';
  };
  if (wrapped("Q(")) {
    out = cauchy_completion(category(expr.substr(2, expr.size() - 3))).completion;
  } else if (wrapped("op(")) {
    out = opposite(category(expr.substr(3, expr.size() - 4)));
  } else {
    throw UnresolvedReference("unknown category '" + key + "'");
  }
  derived_.emplace(key, out);
  return out;
}

const Functor& Workspace::functor(const std::string& name) const {
  auto it = functors.find(name);
  if (it == functors.end()) throw UnresolvedReference("unknown functor '" + name + "'");
  return it->second.functor;
}

const SetFunctor& Workspace::presheaf(const std::string& name) const {
  auto it = presheaves.find(name);
  if (it == presheaves.end()) throw UnresolvedReference("unknown presheaf '" + name + "'");
  return it->second.presheaf;
}

const Profunctor& Workspace::profunctor(const std::string& name) const {
  auto it = profunctors.find(name);
  if (it == profunctors.end()) throw UnresolvedReference("unknown profunctor '" + name + "'");
  return it->second.profunctor;
}

const WeightClass& Workspace::weight_class(const std::string& name) const {
  auto it = classes.find(name);
  if (it == classes.end()) throw UnresolvedReference("unknown weight class '" + name + "'");
  return it->second.resolved;
}

const CommutationEntry& Workspace::commutation(const std::string& name) const {
  auto it = commutations.find(name);
  if (it == commutations.end()) throw UnresolvedReference("unknown commutation '" + name + "'");
  return it->second;
}

std::string Workspace::kind_of(const std::string& name) const {
  if (categories.count(name)) return "category";
  if (functors.count(name)) return "functor";
  if (presheaves.count(name)) return "presheaf";
  if (profunctors.count(name)) return "profunctor";
  if (classes.count(name)) return "class";
  if (commutations.count(name)) return "commutation";
  return {};
}

namespace {

const char* const kSections[] = {"categories", "functors", "presheaves", "profunctors", "classes", "commutations"};

std::pair<int, int> line_column(const std::string& text, std::size_t byte) {
  int line = 1, column = 1;
  for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

WeightClass builtin_class(const std::string& name, const std::string& where) {
  if (name == "empty") return empty_class();
  if (name == "initial") return initial_class();
  if (name == "splitting") return splitting_class();
  if (name == "pushout") return pushout_class();
  if (name == "finite-colimit") return finite_colimit_class();
  if (name == "binary-coproduct") return binary_coproduct_class();
  throw UnresolvedReference(where + ": unknown builtin class '" + name + "'");
}

struct Source {
  json doc;
  std::string label;
};

}  // namespace

Workspace load_workspace_text(const std::vector<std::string>& texts, const std::vector<std::string>& labels) {
  std::vector<Source> docs;
  for (std::size_t i = 0; i < texts.size(); ++i) {
    const std::string label = i < labels.size() ? labels[i] : "<input " + std::to_string(i) + ">";
    try {
      docs.push_back({json::parse(texts[i]), label});
    } catch (const json::parse_error& e) {
      const auto [line, column] = line_column(texts[i], e.byte);
      throw ParseError(label + ":" + std::to_string(line) + ":" + std::to_string(column) + ": " + e.what(), line, column);
    }
    if (!docs.back().doc.is_object()) throw ParseError(label + ":1:1: top level must be an object", 1, 1);
    for (const auto& [key, value] : docs.back().doc.items()) {
      if (std::find(std::begin(kSections), std::end(kSections), key) == std::end(kSections)) {
        throw ValidationError(label + ": unknown section '" + key + "'");
      }
      if (!value.is_object()) throw ValidationError(label + ": section '" + key + "' must be an object");
    }
  }

  // name -> (section, file)
  std::map<std::string, std::pair<std::string, std::string>> seen;
  std::map<std::string, std::vector<std::pair<std::string, const json*>>> by_section;
  for (const Source& s : docs) {
    for (const auto& [section, entries] : s.doc.items()) {
      for (const auto& [name, value] : entries.items()) {
        if (auto it = seen.find(name); it != seen.end()) {
          throw DuplicateName("name '" + name + "' defined in " + it->second.second + " and " + s.label);
        }
        seen[name] = {section, s.label};
        by_section[section].push_back({name, &value});
      }
    }
  }

  Workspace w;
  for (const auto& [name, j] : by_section["categories"]) {
    w.categories[name] = category_from_json(*j, context("category", name));
  }
  for (const auto& [name, j] : by_section["functors"]) {
    const std::string where = context("functor", name);
    FunctorEntry e;
    e.source = as_string(field(*j, "source", where), where);
    e.target = as_string(field(*j, "target", where), where);
    const CategoryRef a = w.category(e.source), b = w.category(e.target);
    Functor f{a, b, std::vector<int>(a->object_count(), -1), std::vector<int>(a->morphism_count(), -1)};
    for (const auto& [k, v] : field(*j, "objects", where).items()) {
      f.objects[object_named(*a, k, where)] = object_named(*b, as_string(v, where), where);
    }
    for (int x = 0; x < a->object_count(); ++x) {
      if (f.objects[x] < 0) throw ValidationError(where + ": object '" + a->object_name(x) + "' is not mapped");
    }
    if (j->contains("morphisms")) {
      for (const auto& [k, v] : j->at("morphisms").items()) {
        f.morphisms[morphism_named(*a, k, where)] = morphism_named(*b, as_string(v, where), where);
      }
    }
    for (int m = 0; m < a->morphism_count(); ++m) {
      if (f.morphisms[m] >= 0) continue;
      if (!a->is_identity(m)) throw ValidationError(where + ": morphism '" + a->morphism_name(m) + "' is not mapped");
      f.morphisms[m] = b->identity(f.objects[a->src(m)]);
    }
    check(validate(f), where);
    e.functor = std::move(f);
    w.functors[name] = std::move(e);
  }
  for (const auto& [name, j] : by_section["presheaves"]) {
    const std::string where = context("presheaf", name);
    PresheafEntry e;
    e.on = as_string(field(*j, "on", where), where);
    const CategoryRef base = w.category(e.on);
    const std::string variance = j->contains("variance") ? as_string(j->at("variance"), where) : "contra";
    if (variance != "contra" && variance != "co") throw ValidationError(where + ": variance must be contra or co");
    SetFunctor f{base, variance == "contra" ? Variance::contra : Variance::co, {}, {}};
    const json& sets = field(*j, "sets", where);
    for (int a = 0; a < base->object_count(); ++a) {
      const std::string& o = base->object_name(a);
      e.elements.push_back(sets.contains(o) ? element_list(sets.at(o), where + " at " + o) : std::vector<std::string>{});
      f.sizes.push_back(static_cast<int>(e.elements.back().size()));
    }
    for (const auto& [k, v] : sets.items()) object_named(*base, k, where);
    const json empty = json::object();
    const json& actions = j->contains("actions") ? j->at("actions") : empty;
    for (const auto& [k, v] : actions.items()) morphism_named(*base, k, where);
    for (int m = 0; m < base->morphism_count(); ++m) {
      const std::string& mn = base->morphism_name(m);
      const json* given = actions.contains(mn) ? &actions.at(mn) : nullptr;
      f.actions.push_back(read_action(given, e.elements[f.action_source(m)], e.elements[f.action_target(m)],
                                      base->is_identity(m), where + " action of " + mn));
    }
    check(validate(f), where);
    e.presheaf = std::move(f);
    w.presheaves[name] = std::move(e);
  }
  for (const auto& [name, j] : by_section["profunctors"]) {
    const std::string where = context("profunctor", name);
    ProfunctorEntry e;
    e.contra = as_string(field(*j, "contra", where), where);
    e.co = as_string(field(*j, "co", where), where);
    const CategoryRef b = w.category(e.contra), a = w.category(e.co);
    const int na = a->object_count();
    Profunctor p{b, a, {}, {}, {}};
    const json& sets = field(*j, "sets", where);
    for (int y = 0; y < b->object_count(); ++y) {
      for (int x = 0; x < na; ++x) {
        const std::string& by = b->object_name(y);
        const std::string& ax = a->object_name(x);
        const bool has = sets.contains(by) && sets.at(by).contains(ax);
        e.elements.push_back(has ? element_list(sets.at(by).at(ax), where + " at " + by + "," + ax)
                                 : std::vector<std::string>{});
        p.sizes.push_back(static_cast<int>(e.elements.back().size()));
      }
    }
    const json empty = json::object();
    const json& left = j->contains("left") ? j->at("left") : empty;
    const json& right = j->contains("right") ? j->at("right") : empty;
    for (int u = 0; u < b->morphism_count(); ++u) {
      for (int x = 0; x < na; ++x) {
        const std::string& un = b->morphism_name(u);
        const std::string& ax = a->object_name(x);
        const json* given = left.contains(un) && left.at(un).contains(ax) ? &left.at(un).at(ax) : nullptr;
        p.left.push_back(read_action(given, e.elements[b->tgt(u) * na + x], e.elements[b->src(u) * na + x],
                                     b->is_identity(u), where + " left action of " + un + " at " + ax));
      }
    }
    for (int y = 0; y < b->object_count(); ++y) {
      for (int v = 0; v < a->morphism_count(); ++v) {
        const std::string& by = b->object_name(y);
        const std::string& vn = a->morphism_name(v);
        const json* given = right.contains(by) && right.at(by).contains(vn) ? &right.at(by).at(vn) : nullptr;
        p.right.push_back(read_action(given, e.elements[y * na + a->src(v)], e.elements[y * na + a->tgt(v)],
                                      a->is_identity(v), where + " right action of " + vn + " at " + by));
      }
    }
    check(validate(p), where);
    e.profunctor = std::move(p);
    w.profunctors[name] = std::move(e);
  }
  for (const auto& [name, j] : by_section["classes"]) {
    const std::string where = context("class", name);
    ClassEntry e;
    if (j->contains("builtin")) {
      e.builtin = as_string(j->at("builtin"), where);
      e.resolved = builtin_class(e.builtin, where);
    } else {
      e.resolved.name = name;
      for (const json& item : field(*j, "weights", where)) {
        const std::string label = as_string(field(item, "name", where), where);
        const std::string ref = as_string(field(item, "presheaf", where), where);
        const SetFunctor& p = w.presheaf(ref);
        if (p.variance != Variance::contra) throw ValidationError(where + ": weight '" + ref + "' is not a presheaf");
        e.weights.push_back({label, ref});
        e.resolved.weights.push_back({label, p});
      }
    }
    w.classes[name] = std::move(e);
  }
  for (const auto& [name, j] : by_section["commutations"]) {
    const std::string where = context("commutation", name);
    CommutationEntry e{as_string(field(*j, "phi", where), where), as_string(field(*j, "psi", where), where),
                       as_string(field(*j, "diagram", where), where)};
    const SetFunctor& phi = w.presheaf(e.phi);
    const SetFunctor& psi = w.presheaf(e.psi);
    const Profunctor& s = w.profunctor(e.diagram);
    if (!structurally_equal(*psi.base, *s.contra) || !structurally_equal(*phi.base, *s.co)) {
      throw ValidationError(where + ": diagram must have contra = dom(psi) and co = dom(phi)");
    }
    w.commutations[name] = std::move(e);
  }
  return w;
}

Workspace load_workspace(const std::vector<std::string>& paths) {
  std::vector<std::string> texts;
  for (const std::string& p : paths) {
    std::ifstream in(p);
    if (!in) throw ParseError(p + ": cannot open file", 0, 0);
    std::ostringstream buf;
    buf << in.rdbuf();
    texts.push_back(buf.str());
  }
  return load_workspace_text(texts, paths);
}

json serialize(const Workspace& w) {
  json out = json::object();
  for (const auto& [name, c] : w.categories) out["categories"][name] = category_to_json(*c);
  for (const auto& [name, e] : w.functors) out["functors"][name] = functor_to_json(e.source, e.target, e.functor);
  for (const auto& [name, e] : w.presheaves) out["presheaves"][name] = presheaf_to_json(e.on, e.presheaf, e.elements);
  for (const auto& [name, e] : w.profunctors) {
    out["profunctors"][name] = profunctor_to_json(e.contra, e.co, e.profunctor, e.elements);
  }
  for (const auto& [name, e] : w.classes) {
    if (!e.builtin.empty()) {
      out["classes"][name] = {{"builtin", e.builtin}};
      continue;
    }
    json weights = json::array();
    for (const auto& [label, ref] : e.weights) weights.push_back({{"name", label}, {"presheaf", ref}});
    out["classes"][name] = {{"weights", weights}};
  }
  for (const auto& [name, e] : w.commutations) {
    out["commutations"][name] = {{"phi", e.phi}, {"psi", e.psi}, {"diagram", e.diagram}};
  }
  return out;
}

std::vector<std::string> fixture_files(const std::string& dir) {
  std::vector<std::string> out;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".json") out.push_back(entry.path().string());
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace fincat
