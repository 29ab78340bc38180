#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "dopt/adlens.hpp"
#include "dopt/coproduct.hpp"
#include "dopt/fincore.hpp"
#include "dopt/finset.hpp"
#include "dopt/instances.hpp"
#include "dopt/optic.hpp"
#include "dopt/tambara.hpp"

namespace dopt::cli {

using nlohmann::json;

/// Malformed input: unreadable file, bad JSON, wrong field types, unresolved
/// references, or a builtin that refuses its parameters. The message starts
/// with the document path and the entity.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A law failure met while building an entity, e.g. decoding a
/// representation that fails validation.
class CheckError : public std::runtime_error {
 public:
  CheckError(std::string law, const std::string& msg) : std::runtime_error(msg), law(std::move(law)) {}
  std::string law;
};

/// Section name and entity name.
using Key = std::pair<std::string, std::string>;

const std::vector<std::string>& section_names();

/// Provenance of a base bicategory, used to find coproduct data.
struct BaseInfo {
  std::optional<std::size_t> family_max_base;
  std::shared_ptr<const SpanBicategory> spans;
};

struct IndexedEntry {
  IndexedPtr ptr;
  BaseInfo base;
};

struct OpticEntry {
  std::shared_ptr<OpticCategory> cat;
  BaseInfo base;
  /// validate_indexed on L and R.
  ValidationReport indexed_report;
  const OpticTable& table() const;

 private:
  mutable std::shared_ptr<OpticTable> table_;
};

struct ObjectEntry {
  std::string optic;
  OpticObject object;
};

struct MorphismEntry {
  std::string optic;
  OpticMorphism morphism;
};

struct LensEntry {
  Cospan source, target;
  DLensCanonical lens;
};

struct PrismEntry {
  Span source, target;
  DPrismCanonical prism;
};

struct WitnessEntry {
  Cospan source, target;
  LensWitness witness;
};

struct TambaraEntry {
  std::string optic;
  TambaraRep rep;
};

struct PresheafEntry {
  std::string optic;
  Presheaf presheaf;
};

struct EntityReport {
  Key key;
  std::string path;
  ValidationReport report;
};

/// Named entities from one or more JSON documents. Entities are built on
/// first use; builders throw InputError.
class Document {
 public:
  void load(const std::string& path);
  void load_json(const json& doc, const std::string& path);

  bool has(const std::string& section, const std::string& name) const;
  /// The sections holding `name`, in section order.
  std::vector<std::string> sections_of(const std::string& name) const;
  std::vector<std::string> names(const std::string& section) const;
  std::vector<Key> keys() const;
  /// "path: section 'name'"
  std::string where(const Key& key) const;

  std::size_t set(const std::string& name);
  FinFn function(const std::string& name);
  CatPtr category(const std::string& name);
  FinFunctor functor(const std::string& name);
  BicatPtr bicategory(const std::string& name);
  const BaseInfo& bicategory_info(const std::string& name);
  const IndexedEntry& indexed(const std::string& name);
  const OpticEntry& optic(const std::string& name);
  const ObjectEntry& object(const std::string& name);
  const MorphismEntry& morphism(const std::string& name);
  const Cospan& cospan(const std::string& name);
  const Span& span(const std::string& name);
  const LensEntry& lens(const std::string& name);
  const PrismEntry& prism(const std::string& name);
  const WitnessEntry& witness(const std::string& name);
  const TambaraEntry& tambara(const std::string& name);
  const PresheafEntry& presheaf(const std::string& name);
  const ad::Prog& program(const std::string& name);

  /// Builds the entity and everything it references.
  void resolve(const Key& key);
  /// Entities reachable from the roots, roots included, in key order. An
  /// entity whose builder raises CheckError is kept and reported by validate.
  std::set<Key> closure(const std::vector<Key>& roots);
  /// Runs the validator of each entity. Builders may throw InputError.
  std::vector<EntityReport> validate(const std::set<Key>& keys);

 private:
  struct Raw {
    std::string path;
    json body;
  };
  class Scope;

  const Raw& raw(const std::string& section, const std::string& name);
  void depend(const Key& key);

  std::map<Key, Raw> raw_;
  std::map<Key, std::set<Key>> deps_;
  std::map<Key, CheckError> failed_;
  std::vector<Key> stack_;

  std::map<std::string, std::size_t> sets_;
  std::map<std::string, FinFn> functions_;
  std::map<std::string, CatPtr> categories_;
  std::map<std::string, FinFunctor> functors_;
  std::map<std::string, BicatPtr> bicategories_;
  std::map<std::string, BaseInfo> bicategory_info_;
  std::map<std::string, IndexedEntry> indexed_;
  std::map<std::string, OpticEntry> optics_;
  std::map<std::string, ObjectEntry> objects_;
  std::map<std::string, MorphismEntry> morphisms_;
  std::map<std::string, Cospan> cospans_;
  std::map<std::string, Span> spans_;
  std::map<std::string, LensEntry> lenses_;
  std::map<std::string, PrismEntry> prisms_;
  std::map<std::string, WitnessEntry> witnesses_;
  std::map<std::string, TambaraEntry> tambara_;
  std::map<std::string, PresheafEntry> presheaves_;
  std::map<std::string, ad::Prog> programs_;
};

// JSON renderings, in the same shapes the loader accepts.
json to_json(const FinFn& f);
json to_json(const OpticObject& s);
json to_json(const Witness& w);
json to_json(const DLensCanonical& c);
json to_json(const DPrismCanonical& c);
json to_json(const Cospan& c);
json to_json(const TambaraRep& p);
json to_json(const Presheaf& f);
json to_json(const ValidationReport& r);

}  // namespace dopt::cli
