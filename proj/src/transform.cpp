#include "erdb/transform.hpp"

#include <algorithm>

#include "erdb/validator.hpp"

namespace erdb {

std::string_view to_string(Step s) {
  switch (s) {
    case Step::REG: return "REG";
    case Step::SUB: return "SUB";
    case Step::GNG: return "GNG";
    case Step::SOG: return "SOG";
    case Step::MVA: return "MVA";
    case Step::WAK: return "WAK";
  }
  return "?";
}

TransformError::TransformError(Code code, std::vector<Diagnostic> diags)
    : std::runtime_error(diags.empty() ? std::string("transformation failed") : diags.front().message),
      code_(code),
      diags_(std::move(diags)) {}

RelationalSchema replay(const TransformTrace& trace, std::size_t count) {
  RelationalSchema s;
  for (std::size_t i = 0; i < std::min(count, trace.size()); ++i) {
    const auto& e = trace[i];
    if (auto idx = s.index_of(e.relation.name)) {
      s.relations.erase(s.relations.begin() + static_cast<std::ptrdiff_t>(*idx));
    }
    const auto pos = std::min(e.position, s.relations.size());
    s.relations.insert(s.relations.begin() + static_cast<std::ptrdiff_t>(pos), e.relation);
  }
  return s;
}

namespace {

[[noreturn]] void fail(TransformError::Code code, std::string message, std::string element = {}) {
  throw TransformError(code, {make_error(rule::kTransform, std::move(message), std::move(element))});
}

RdsAttribute plain(const Identifier& name, bool underlined = false) {
  RdsAttribute a;
  a.name = name;
  a.underlined = underlined;
  return a;
}

void append(Relation& r, RdsAttribute a) {
  if (r.find(a.qualified_name()) != nullptr) {
    fail(TransformError::Code::AttributeCollision,
         "relation " + r.name + " already has an attribute named " + a.qualified_name(), "relation " + r.name);
  }
  r.attributes.push_back(std::move(a));
}

const Relation& require(const RelationalSchema& schema, const Identifier& name, TransformError::Code code,
                        const std::string& why) {
  const Relation* r = schema.find(name);
  if (r == nullptr || r->attributes.empty()) fail(code, "no relation " + name + " in the schema (" + why + ")");
  return *r;
}

// Name of the primary key that stands for `participant`: its own relation's
// key for a regular entity type, the supertype relation's key for a subtype.
Identifier key_for(const Identifier& participant, const ERModel& m, const RelationalSchema& schema) {
  if (const auto* s = m.find_subtype(participant)) {
    return require(schema, s->supertype, TransformError::Code::MissingSupertypeRelation,
                   "supertype of " + participant)
        .attributes.front()
        .name;
  }
  return require(schema, participant, TransformError::Code::MissingOwnerRelation, "referenced by a relationship")
      .attributes.front()
      .name;
}

void move_to_end(RelationalSchema& schema, const Identifier& name) {
  auto idx = schema.index_of(name);
  if (!idx) return;
  auto it = schema.relations.begin() + static_cast<std::ptrdiff_t>(*idx);
  std::rotate(it, it + 1, schema.relations.end());
}

std::size_t subtype_endpoint(const RelationshipType& r, const ERModel& m) {
  return m.is_subtype(r.endpoints[0].participant) ? 0 : 1;
}

// Which endpoint of a 1:1 subtype/regular relationship receives the key.
std::size_t choose_side(const RelationshipType& r, const ERModel& m, const TransformConfig& cfg,
                        bool subtype_has_relation) {
  if (auto it = cfg.sog_choices.find(r.name); it != cfg.sog_choices.end()) {
    return r.endpoints[0].participant == it->second ? 0 : 1;
  }
  const std::size_t sub = subtype_endpoint(r, m);
  if (cfg.sog_policy == SogPolicy::PreferRegularRelation) return 1 - sub;
  return subtype_has_relation ? sub : 1 - sub;
}

void add_foreign_key(Relation& holder, const RelationshipType& r, const RelationshipEndpoint& near,
                     const RelationshipEndpoint& far, const ERModel& m, const RelationalSchema& schema) {
  RdsAttribute fk;
  fk.name = key_for(far.participant, m, schema);
  if (m.is_subtype(far.participant)) fk.prefix = far.participant;
  fk.suffix = FkSuffix{r.name, near.nearest.min, far.nearest.min, far.nearest.max};
  append(holder, std::move(fk));
  for (const auto& a : r.attributes) append(holder, plain(a.name));
}

}  // namespace

Relation transform_regular(const RegularEntityType& e) {
  const auto candidates = designated_key_candidates(e);
  if (candidates.empty()) {
    fail(TransformError::Code::NoDesignatedKey, "entity " + e.name + " has no designated key", "entity " + e.name);
  }
  const std::size_t pk = candidates.front();
  Relation r;
  r.name = e.name;
  r.attributes.push_back(plain(e.attributes[pk].name, true));
  for (std::size_t i = 0; i < e.attributes.size(); ++i) {
    if (i != pk && e.attributes[i].kind == AttributeKind::Key) append(r, plain(e.attributes[i].name, true));
  }
  for (const auto& a : e.attributes) {
    if (a.kind == AttributeKind::Simple) append(r, plain(a.name));
  }
  return r;
}

bool subtype_needs_relation(const Subtype& s, const ERModel& m, const TransformConfig& cfg) {
  if (!s.attributes.empty()) return true;
  for (const auto* r : m.relationships_of(s.name)) {
    const auto cls = ratio_class(*r);
    if (cls.kind == RatioClass::Kind::OneToMany && r->endpoints[cls.n_side].participant == s.name) return true;
    if (cls.kind == RatioClass::Kind::OneToOne) {
      // Without an intrinsic attribute or an N-side role the subtype has no
      // relation yet, so only an explicit choice can pick it.
      auto it = cfg.sog_choices.find(r->name);
      if (it != cfg.sog_choices.end() && it->second == s.name) return true;
    }
  }
  return false;
}

Relation transform_subtype(const Subtype& s, const RelationalSchema& schema) {
  const Relation& super =
      require(schema, s.supertype, TransformError::Code::MissingSupertypeRelation, "supertype of " + s.name);
  Relation r;
  r.name = s.name;
  r.attributes.push_back(plain(super.attributes.front().name, true));
  for (const auto& a : s.attributes) append(r, plain(a.name));
  return r;
}

void transform_one_to_many(const RelationshipType& r, const ERModel& m, RelationalSchema& schema,
                           const TransformConfig& cfg) {
  const auto cls = ratio_class(r);
  if (cls.kind != RatioClass::Kind::OneToMany) {
    fail(TransformError::Code::WrongStep, "relationship " + r.name + " is not one-to-many", "rel " + r.name);
  }
  const auto& n_side = r.endpoints[cls.n_side];
  const auto& one_side = r.endpoints[1 - cls.n_side];
  if (!cfg.extensions && (m.is_subtype(n_side.participant) || m.is_subtype(one_side.participant))) {
    fail(TransformError::Code::UnsupportedParticipant,
         "one-to-many relationship " + r.name + " has a subtype participant", "rel " + r.name);
  }
  require(schema, n_side.participant, TransformError::Code::NoChoosableRelation, "N-side of " + r.name);
  const Identifier holder_name = n_side.participant;
  Relation copy = *schema.find(holder_name);
  add_foreign_key(copy, r, n_side, one_side, m, schema);
  *schema.find(holder_name) = std::move(copy);
}

Identifier transform_one_to_one_sub(const RelationshipType& r, const ERModel& m, RelationalSchema& schema,
                                    const TransformConfig& cfg) {
  if (ratio_class(r).kind != RatioClass::Kind::OneToOne) {
    fail(TransformError::Code::WrongStep, "relationship " + r.name + " is not one-to-one", "rel " + r.name);
  }
  if (m.is_subtype(r.endpoints[0].participant) == m.is_subtype(r.endpoints[1].participant)) {
    fail(TransformError::Code::UnsupportedParticipant,
         "one-to-one relationship " + r.name + " must join a subtype and a regular entity type", "rel " + r.name);
  }
  const std::size_t sub = subtype_endpoint(r, m);
  std::size_t chosen = choose_side(r, m, cfg, schema.find(r.endpoints[sub].participant) != nullptr);
  if (schema.find(r.endpoints[chosen].participant) == nullptr) chosen = 1 - chosen;
  const Identifier holder_name = r.endpoints[chosen].participant;
  if (schema.find(holder_name) == nullptr) {
    fail(TransformError::Code::NoChoosableRelation, "neither participant of " + r.name + " has a relation",
         "rel " + r.name);
  }
  Relation copy = *schema.find(holder_name);
  add_foreign_key(copy, r, r.endpoints[chosen], r.endpoints[1 - chosen], m, schema);
  *schema.find(holder_name) = std::move(copy);
  move_to_end(schema, holder_name);
  return holder_name;
}

Relation transform_multivalued(const RegularEntityType& owner, const Attribute& a, const RelationalSchema& schema) {
  if (schema.find(a.name) != nullptr) {
    fail(TransformError::Code::NameCollision,
         "multivalued attribute " + a.name + " of " + owner.name + " collides with relation " + a.name,
         "entity " + owner.name + "/multi " + a.name);
  }
  const Relation& o = require(schema, owner.name, TransformError::Code::MissingOwnerRelation, "owner of " + a.name);
  Relation r;
  r.name = a.name;
  r.attributes.push_back(plain(o.attributes.front().name, true));
  append(r, plain(a.name, true));
  return r;
}

Relation transform_weak(const WeakEntityType& w, const RelationalSchema& schema) {
  if (schema.find(w.name) != nullptr) {
    fail(TransformError::Code::NameCollision, "weak entity " + w.name + " collides with relation " + w.name,
         "weak " + w.name);
  }
  const Relation& o = require(schema, w.owner, TransformError::Code::MissingOwnerRelation, "owner of " + w.name);
  Relation r;
  r.name = w.name;
  r.attributes.push_back(plain(o.attributes.front().name, true));
  append(r, plain(w.partial_key.name, true));
  for (const auto& a : w.attributes) append(r, plain(a.name));
  return r;
}

void check_config(const ERModel& m, const TransformConfig& cfg) {
  std::vector<Diagnostic> diags;
  for (const auto& [rel, participant] : cfg.sog_choices) {
    const auto* r = m.find_relationship(rel);
    if (r == nullptr) {
      diags.push_back(make_error(rule::kConfig, "unknown relationship " + rel));
    } else if (ratio_class(*r).kind != RatioClass::Kind::OneToOne) {
      diags.push_back(make_error(rule::kConfig, "relationship " + rel + " is not one-to-one"));
    } else if (r->endpoints[0].participant != participant && r->endpoints[1].participant != participant) {
      diags.push_back(make_error(rule::kConfig, participant + " does not participate in " + rel));
    }
  }
  if (!diags.empty()) throw TransformError(TransformError::Code::InvalidConfig, std::move(diags));
}

TransformResult transform_model(const ERModel& m, const TransformConfig& cfg) {
  auto diags = validate_notation(m, {cfg.extensions});
  if (has_errors(diags)) throw TransformError(TransformError::Code::PrerequisiteFailed, std::move(diags));
  check_config(m, cfg);

  TransformResult out;
  out.warnings = std::move(diags);
  auto& schema = out.schema;
  auto record = [&](Step step, const Identifier& subject, const Identifier& relation) {
    const auto idx = *schema.index_of(relation);
    out.trace.push_back({step, subject, schema.relations[idx], idx});
  };
  auto create = [&](Step step, const Identifier& subject, Relation r) {
    const Identifier name = r.name;
    schema.relations.push_back(std::move(r));
    record(step, subject, name);
  };

  for (const auto& e : m.regular_entities) create(Step::REG, e.name, transform_regular(e));
  for (const auto& s : m.subtypes) {
    if (subtype_needs_relation(s, m, cfg)) create(Step::SUB, s.name, transform_subtype(s, schema));
  }
  for (const auto& r : m.relationships) {
    const auto cls = ratio_class(r);
    if (cls.kind != RatioClass::Kind::OneToMany) continue;
    transform_one_to_many(r, m, schema, cfg);
    record(Step::GNG, r.name, r.endpoints[cls.n_side].participant);
  }
  for (const auto& r : m.relationships) {
    if (ratio_class(r).kind != RatioClass::Kind::OneToOne) continue;
    const auto holder = transform_one_to_one_sub(r, m, schema, cfg);
    record(Step::SOG, r.name, holder);
  }
  for (const auto& e : m.regular_entities) {
    for (const auto& a : e.attributes) {
      if (a.kind == AttributeKind::Multivalued) create(Step::MVA, a.name, transform_multivalued(e, a, schema));
    }
  }
  for (const auto& w : m.weak_entities) create(Step::WAK, w.name, transform_weak(w, schema));
  return out;
}

}  // namespace erdb
