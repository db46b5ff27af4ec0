#pragma once

// Compiles a validated ER model into an annotated relational schema.
//
// Steps, in the order transform_model applies them:
//   REG  regular entity types                (declaration order)
//   SUB  subtypes that need a relation       (declaration order)
//   GNG  1:N relationships                   (declaration order)
//   SOG  1:1 subtype/regular relationships   (declaration order)
//   MVA  multivalued attributes              (owner declaration order)
//   WAK  weak entity types                   (declaration order)
//
// REG must precede SUB and both must precede the rest. Relations appear in
// creation order, except that the relation chosen to hold a 1:1 foreign key
// moves to the end of the schema when the key is added.

#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "erdb/diagnostic.hpp"
#include "erdb/model.hpp"

namespace erdb {

enum class SogPolicy {
  // The subtype's relation when it exists, otherwise the regular one.
  PreferSubtypeRelation,
  PreferRegularRelation,
  // Only `sog_choices`; unnamed relationships fall back to
  // PreferSubtypeRelation.
  Explicit,
};

struct TransformConfig {
  SogPolicy sog_policy = SogPolicy::PreferSubtypeRelation;
  // relationship -> chosen participant; overrides the policy
  std::map<Identifier, Identifier> sog_choices;
  // Let 1:N relationships have subtype endpoints.
  bool extensions = false;

  static TransformConfig explicit_choices(std::map<Identifier, Identifier> choices) {
    TransformConfig c;
    c.sog_policy = SogPolicy::Explicit;
    c.sog_choices = std::move(choices);
    return c;
  }
};

enum class Step { REG, SUB, GNG, SOG, MVA, WAK };

std::string_view to_string(Step s);

struct TraceEntry {
  Step step;
  Identifier subject;       // the element transformed
  Relation relation;        // the relation as it stood after the step
  std::size_t position;     // its index in the schema after the step

  bool operator==(const TraceEntry&) const = default;
};

using TransformTrace = std::vector<TraceEntry>;

// Rebuilds the schema as it stood after the first `count` trace entries.
RelationalSchema replay(const TransformTrace& trace, std::size_t count);

class TransformError : public std::runtime_error {
 public:
  enum class Code {
    PrerequisiteFailed,
    InvalidConfig,
    WrongStep,
    NoDesignatedKey,
    MissingSupertypeRelation,
    MissingOwnerRelation,
    UnsupportedParticipant,
    NoChoosableRelation,
    NameCollision,
    AttributeCollision,
  };

  TransformError(Code code, std::vector<Diagnostic> diags);

  Code code() const noexcept { return code_; }
  const std::vector<Diagnostic>& diagnostics() const noexcept { return diags_; }

 private:
  Code code_;
  std::vector<Diagnostic> diags_;
};

struct TransformResult {
  RelationalSchema schema;
  TransformTrace trace;
  std::vector<Diagnostic> warnings;  // validator warnings carried over
};

// Individual steps. Each expects the schema to already hold the relations
// the step refers to; transform_model guarantees that.

Relation transform_regular(const RegularEntityType& e);

bool subtype_needs_relation(const Subtype& s, const ERModel& m, const TransformConfig& cfg);

Relation transform_subtype(const Subtype& s, const RelationalSchema& schema);

void transform_one_to_many(const RelationshipType& r, const ERModel& m, RelationalSchema& schema,
                           const TransformConfig& cfg = {});

// Returns the name of the relation that received the foreign key.
Identifier transform_one_to_one_sub(const RelationshipType& r, const ERModel& m, RelationalSchema& schema,
                                    const TransformConfig& cfg = {});

Relation transform_multivalued(const RegularEntityType& owner, const Attribute& a, const RelationalSchema& schema);

Relation transform_weak(const WeakEntityType& w, const RelationalSchema& schema);

// Throws TransformError(InvalidConfig) when an explicit choice names an
// unknown relationship, a non 1:1 one, or a non-participant.
void check_config(const ERModel& m, const TransformConfig& cfg);

// Validates, then runs every step. Throws TransformError.
TransformResult transform_model(const ERModel& m, const TransformConfig& cfg = {});

}  // namespace erdb
