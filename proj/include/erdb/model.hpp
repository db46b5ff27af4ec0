#pragma once

// Domain types shared by every stage of the pipeline: the ER side (the
// conceptual model that is written in `.er` files) and the relational side
// (the annotated schema written in `.rds` files).

#include <array>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace erdb {

// Source position of a parsed element. Locations never take part in
// structural equality, so parsed and hand-built models compare equal.
struct SourceLoc {
  int line = 0;
  int column = 0;

  friend bool operator==(const SourceLoc&, const SourceLoc&) { return true; }
};

// ---------------------------------------------------------------------------
// Names

// Names are plain strings so that the validator can report malformed ones.
// A well-formed name is purely alphabetic and starts with an uppercase
// letter; multi-word names are concatenated with interior capitals.
using Identifier = std::string;

bool is_alphabetic(std::string_view name);
bool starts_uppercase(std::string_view name);

// True when `attribute` starts with the same letters as `entity`, compared
// case-insensitively over min(3, |entity|) letters.
bool shares_name_prefix(std::string_view entity, std::string_view attribute);

// ---------------------------------------------------------------------------
// ER side

enum class AttributeKind { Simple, Key, Multivalued, PartialKey };

std::string_view to_string(AttributeKind k);

struct Attribute {
  Identifier name;
  AttributeKind kind = AttributeKind::Simple;
  SourceLoc loc;

  bool operator==(const Attribute&) const = default;
};

struct RegularEntityType {
  Identifier name;
  std::vector<Attribute> attributes;
  SourceLoc loc;

  bool operator==(const RegularEntityType&) const = default;
};

struct Subtype {
  Identifier name;
  Identifier supertype;
  std::vector<Attribute> attributes;  // intrinsic, Simple only
  SourceLoc loc;

  bool operator==(const Subtype&) const = default;
};

struct WeakEntityType {
  Identifier name;
  Identifier owner;
  Identifier identifying_relationship;
  Attribute partial_key;
  std::vector<Attribute> attributes;  // Simple only
  SourceLoc loc;

  bool operator==(const WeakEntityType&) const = default;
};

// Cardinality bounds: min is Zero or One, max is One or Many.
enum class Bound { Zero, One, Many };

std::string_view to_string(Bound b);

struct CardinalityPair {
  Bound min = Bound::One;
  Bound max = Bound::One;

  bool operator==(const CardinalityPair&) const = default;
};

bool is_valid(const CardinalityPair& p);

// The pair written nearest a participant bounds how many relationship
// instances each instance of that participant takes part in.
struct RelationshipEndpoint {
  Identifier participant;
  CardinalityPair nearest;

  bool operator==(const RelationshipEndpoint&) const = default;
};

struct RelationshipType {
  Identifier name;
  std::array<RelationshipEndpoint, 2> endpoints;
  std::vector<Attribute> attributes;  // Simple only
  SourceLoc loc;

  bool operator==(const RelationshipType&) const = default;
};

struct ERModel {
  std::vector<RegularEntityType> regular_entities;
  std::vector<Subtype> subtypes;
  std::vector<WeakEntityType> weak_entities;
  std::vector<RelationshipType> relationships;

  bool operator==(const ERModel&) const = default;

  const RegularEntityType* find_regular(std::string_view name) const;
  const Subtype* find_subtype(std::string_view name) const;
  const WeakEntityType* find_weak(std::string_view name) const;
  const RelationshipType* find_relationship(std::string_view name) const;

  bool is_regular(std::string_view name) const { return find_regular(name) != nullptr; }
  bool is_subtype(std::string_view name) const { return find_subtype(name) != nullptr; }

  // Relationships in which `participant` appears at either endpoint.
  std::vector<const RelationshipType*> relationships_of(std::string_view participant) const;
};

// ---------------------------------------------------------------------------
// Operations on the ER side

struct RatioClass {
  enum class Kind { OneToOne, OneToMany, ManyToMany };
  Kind kind = Kind::OneToOne;
  // For OneToMany: index of the N-side endpoint, whose nearest pair has max 1.
  std::size_t n_side = 0;

  bool operator==(const RatioClass&) const = default;
};

RatioClass ratio_class(const RelationshipType& rel);

class ModelError : public std::runtime_error {
 public:
  enum class Code { NoDesignatedKey };

  ModelError(Code code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Code code() const noexcept { return code_; }

 private:
  Code code_;
};

// Indices of the Key attributes of `e` that satisfy the three-letter rule,
// in declaration order.
std::vector<std::size_t> designated_key_candidates(const RegularEntityType& e);

// The first Key attribute whose name shares the entity's leading letters.
// Throws ModelError(NoDesignatedKey) when there is none.
const Attribute& designated_key(const RegularEntityType& e);

// ---------------------------------------------------------------------------
// Relational side

struct FkSuffix {
  Identifier relationship;
  Bound near_min = Bound::One;  // min of the pair nearest the holding entity
  Bound far_min = Bound::One;   // min and max of the pair nearest the referenced entity
  Bound far_max = Bound::One;

  bool operator==(const FkSuffix&) const = default;
};

struct RdsAttribute {
  Identifier name;
  bool underlined = false;
  std::optional<Identifier> prefix;  // subtype owning the referenced key
  std::optional<FkSuffix> suffix;

  bool operator==(const RdsAttribute&) const = default;

  bool is_foreign_key() const { return suffix.has_value(); }
  // Name after prefix application, e.g. "Manager-EmpNo".
  std::string qualified_name() const;
};

struct Relation {
  Identifier name;
  std::vector<RdsAttribute> attributes;

  bool operator==(const Relation&) const = default;

  const RdsAttribute* find(std::string_view qualified) const;
  std::size_t underlined_count() const;
};

struct RelationalSchema {
  std::vector<Relation> relations;

  bool operator==(const RelationalSchema&) const = default;

  const Relation* find(std::string_view name) const;
  Relation* find(std::string_view name);
  std::optional<std::size_t> index_of(std::string_view name) const;
};

// Checks the attribute-level annotations (prefix implies suffix, underlined
// implies no suffix) and relation-level ones (nonempty, has a key, unique
// names). Returns one message per violation.
std::vector<std::string> invariant_violations(const Relation& r);
std::vector<std::string> invariant_violations(const RelationalSchema& s);

}  // namespace erdb
