#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "fincat/classes.hpp"
#include "fincat/profunctor.hpp"

namespace fincat {

/// Malformed JSON; line and column are 1-based.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line, int column) : Error(what), line(line), column(column) {}
  int line;
  int column;
};

/// An entity failed validation; the message carries the violated law and witness.
class ValidationError : public Error {
 public:
  using Error::Error;
};

class DuplicateName : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class UnresolvedReference : public Error {
 public:
  using Error::Error;
};

struct FunctorEntry {
  std::string source;
  std::string target;
  Functor functor;
};

struct PresheafEntry {
  std::string on;
  SetFunctor presheaf;
  std::vector<std::vector<std::string>> elements;  // element names per object
};

struct ProfunctorEntry {
  std::string contra;
  std::string co;
  Profunctor profunctor;
  std::vector<std::vector<std::string>> elements;  // per cell b * |co| + a
};

struct ClassEntry {
  std::string builtin;  // empty when given by weights
  std::vector<std::pair<std::string, std::string>> weights;  // (label, presheaf name)
  WeightClass resolved;
};

/// φ ∗ {ψ, S} against {ψ, φ ∗ S}.
struct CommutationEntry {
  std::string phi;
  std::string psi;
  std::string diagram;  // profunctor with contra = dom ψ, co = dom φ
};

/// Named entities loaded from JSON fragments.
///
/// Category references may be expressions: Q(X) is the Cauchy completion of
/// X and op(X) its opposite.
class Workspace {
 public:
  std::map<std::string, CategoryRef> categories;
  std::map<std::string, FunctorEntry> functors;
  std::map<std::string, PresheafEntry> presheaves;
  std::map<std::string, ProfunctorEntry> profunctors;
  std::map<std::string, ClassEntry> classes;
  std::map<std::string, CommutationEntry> commutations;

  CategoryRef category(std::string_view expr) const;
  const Functor& functor(const std::string& name) const;
  const SetFunctor& presheaf(const std::string& name) const;
  const Profunctor& profunctor(const std::string& name) const;
  const WeightClass& weight_class(const std::string& name) const;
  const CommutationEntry& commutation(const std::string& name) const;

  /// Kind of entity a name refers to ("category", "functor", ...), or empty.
  std::string kind_of(const std::string& name) const;

 private:
  mutable std::map<std::string, CategoryRef, std::less<>> derived_;
};

/// Parses and validates every file, rejecting duplicate names across files.
Workspace load_workspace(const std::vector<std::string>& paths);
/// Same from in-memory documents; `labels` name them in error messages.
Workspace load_workspace_text(const std::vector<std::string>& texts, const std::vector<std::string>& labels);

/// Canonical form: sorted keys, identity actions and identity composites omitted.
nlohmann::json serialize(const Workspace& w);

nlohmann::json category_to_json(const Category& c);
/// Presheaf or covariant functor with element names 0..n-1.
nlohmann::json presheaf_to_json(const std::string& on, const SetFunctor& f,
                                const std::vector<std::vector<std::string>>& elements = {});
nlohmann::json functor_to_json(const std::string& source, const std::string& target, const Functor& f);
nlohmann::json profunctor_to_json(const std::string& contra, const std::string& co, const Profunctor& p,
                                  const std::vector<std::vector<std::string>>& elements = {});

/// The .json files of a directory, sorted by name.
std::vector<std::string> fixture_files(const std::string& dir);

}  // namespace fincat
