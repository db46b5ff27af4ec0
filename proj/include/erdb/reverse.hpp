#pragma once

// Rebuilds the ER model behind an annotated relational schema by undoing
// the forward steps.
//
// Relation kinds are told apart by their leading keys:
//   regular entity  first attribute underlined and named after the relation's
//                   first three letters
//   subtype         leads with a regular relation's key, one underlined attribute
//   multivalued     leads with a regular relation's key, exactly two attributes,
//                   both underlined, the second named as the relation
//   weak entity     leads with a regular relation's key, two underlined
//                   attributes, otherwise
// Foreign keys always carry a bracketed suffix; a prefix names the subtype
// that owns the referenced key, whether or not it has a relation.
//
// Information the forward steps drop is restored by convention:
//   - a weak entity's identifying relationship is named <Weak>Of
//   - elements are declared in the order their relations appear
//   - the key in first position is the designated key
// Each such normalization is reported as a note.

#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "erdb/diagnostic.hpp"
#include "erdb/model.hpp"
#include "erdb/transform.hpp"

namespace erdb {

enum class RelationKind { RegularEntity, SubtypeRel, RelationshipRel, MvaRel, WeakRel };

std::string_view to_string(RelationKind k);

struct Classification {
  std::map<Identifier, RelationKind> kinds;
  // Non-regular relation -> the regular relation whose key it leads with.
  std::map<Identifier, Identifier> owners;
  // Primary-key name -> the regular relation it belongs to.
  std::map<Identifier, Identifier> key_owners;
  std::vector<Diagnostic> diagnostics;

  bool ok() const { return !has_errors(diagnostics); }
};

Classification classify_relations(const RelationalSchema& s);

class ReverseError : public std::runtime_error {
 public:
  enum class Code { NotForeignKey, DanglingFk, BadHolder };

  ReverseError(Code code, Diagnostic d) : std::runtime_error(d.message), code_(code), diag_(std::move(d)) {}

  Code code() const noexcept { return code_; }
  const Diagnostic& diagnostic() const noexcept { return diag_; }

 private:
  Code code_;
  Diagnostic diag_;
};

struct FkInterpretation {
  // endpoints[0] is the entity behind the holding relation, endpoints[1]
  // the referenced one.
  RelationshipType relationship;
  // Set when the key is prefixed: the subtype it names, with its supertype.
  std::optional<Subtype> referenced_subtype;
  // Number of relationship attributes following the key.
  std::size_t attribute_count = 0;
};

// Interprets the suffixed attribute at `index` of `rel`. Throws ReverseError.
FkInterpretation interpret_fk(const Relation& rel, std::size_t index, const Classification& ctx);

struct ReverseResult {
  ERModel model;
  std::vector<Diagnostic> diagnostics;
  // The configuration that places every 1:1 key where this schema has it.
  TransformConfig recovered_config;

  bool ok() const { return !has_errors(diagnostics); }
};

ReverseResult reverse_transform(const RelationalSchema& s);

}  // namespace erdb
