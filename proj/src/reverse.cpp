#include "erdb/reverse.hpp"

#include <algorithm>
#include <set>

namespace erdb {

std::string_view to_string(RelationKind k) {
  switch (k) {
    case RelationKind::RegularEntity: return "regular entity";
    case RelationKind::SubtypeRel: return "subtype";
    case RelationKind::RelationshipRel: return "relationship";
    case RelationKind::MvaRel: return "multivalued attribute";
    case RelationKind::WeakRel: return "weak entity";
  }
  return "?";
}

namespace {

bool bare(const RdsAttribute& a) { return !a.prefix && !a.suffix; }

bool leads_with_regular_key(const Relation& r) {
  return !r.attributes.empty() && r.attributes[0].underlined && bare(r.attributes[0]) &&
         shares_name_prefix(r.name, r.attributes[0].name);
}

std::string path_of(const Relation& r) { return "relation " + r.name; }

}  // namespace

Classification classify_relations(const RelationalSchema& s) {
  Classification c;
  for (const auto& r : s.relations) {
    if (!leads_with_regular_key(r)) continue;
    const auto& key = r.attributes[0].name;
    if (auto it = c.key_owners.find(key); it != c.key_owners.end()) {
      c.diagnostics.push_back(make_warning(
          rule::kAmbiguous,
          "relation " + r.name + " leads with key " + key + " of earlier relation " + it->second +
              "; it is read as dependent on " + it->second,
          path_of(r)));
      continue;
    }
    c.key_owners[key] = r.name;
    c.kinds[r.name] = RelationKind::RegularEntity;
  }

  for (const auto& r : s.relations) {
    if (c.kinds.count(r.name) != 0) continue;
    auto unclassifiable = [&](const std::string& why) {
      c.diagnostics.push_back(
          make_error(rule::kUnclassifiable, "cannot classify relation " + r.name + ": " + why, path_of(r)));
    };
    if (r.attributes.empty() || !r.attributes[0].underlined || !bare(r.attributes[0])) {
      unclassifiable("it does not lead with an underlined key");
      continue;
    }
    const auto owner = c.key_owners.find(r.attributes[0].name);
    if (owner == c.key_owners.end()) {
      unclassifiable("no regular entity relation has the key " + r.attributes[0].name);
      continue;
    }
    const std::size_t underlined = r.underlined_count();
    const std::size_t n = r.attributes.size();
    const bool plain = std::all_of(r.attributes.begin(), r.attributes.end(), bare);
    std::optional<RelationKind> kind;
    if (underlined == 1) {
      kind = RelationKind::SubtypeRel;
    } else if (underlined == 2 && r.attributes[1].underlined && plain) {
      // Two underlined attributes alone form a multivalued attribute when the
      // second repeats the relation's name; a weak entity with only its
      // partial key produces the same shape under a different name.
      kind = (n == 2 && r.attributes[1].name == r.name) ? RelationKind::MvaRel : RelationKind::WeakRel;
    }
    if (!kind) {
      unclassifiable(std::to_string(underlined) + " underlined attributes match no relation kind");
      continue;
    }
    c.kinds[r.name] = *kind;
    c.owners[r.name] = owner->second;
  }
  return c;
}

FkInterpretation interpret_fk(const Relation& rel, std::size_t index, const Classification& ctx) {
  const RdsAttribute& a = rel.attributes.at(index);
  if (!a.suffix) {
    throw ReverseError(ReverseError::Code::NotForeignKey,
                       make_error(rule::kDanglingFk,
                                  "attribute " + a.qualified_name() + " in " + rel.name + " has no bracketed suffix",
                                  path_of(rel)));
  }
  const auto kind = ctx.kinds.find(rel.name);
  if (kind == ctx.kinds.end() ||
      (kind->second != RelationKind::RegularEntity && kind->second != RelationKind::SubtypeRel)) {
    throw ReverseError(ReverseError::Code::BadHolder,
                       make_error(rule::kDanglingFk,
                                  "foreign key " + a.qualified_name() + " sits in " + rel.name +
                                      ", which is neither a regular entity nor a subtype relation",
                                  path_of(rel)));
  }
  const auto owner = ctx.key_owners.find(a.name);
  if (owner == ctx.key_owners.end()) {
    throw ReverseError(ReverseError::Code::DanglingFk,
                       make_error(rule::kDanglingFk,
                                  "foreign key " + a.qualified_name() + " in " + rel.name +
                                      " matches no regular entity relation's key",
                                  path_of(rel)));
  }

  FkInterpretation out;
  auto& r = out.relationship;
  const auto& sfx = *a.suffix;
  r.name = sfx.relationship;
  r.endpoints[0].participant = rel.name;
  // The max nearest the holding entity is always 1 and is not written.
  r.endpoints[0].nearest = {sfx.near_min, Bound::One};
  r.endpoints[1].participant = a.prefix ? *a.prefix : owner->second;
  r.endpoints[1].nearest = {sfx.far_min, sfx.far_max};
  if (a.prefix) {
    Subtype s;
    s.name = *a.prefix;
    s.supertype = owner->second;
    out.referenced_subtype = std::move(s);
  }
  for (std::size_t i = index + 1; i < rel.attributes.size(); ++i) {
    const auto& next = rel.attributes[i];
    if (next.suffix || next.underlined) break;
    r.attributes.push_back({next.name, AttributeKind::Simple, {}});
    ++out.attribute_count;
  }
  return out;
}

namespace {

std::size_t first_foreign_key(const Relation& r) {
  auto it = std::find_if(r.attributes.begin(), r.attributes.end(),
                         [](const RdsAttribute& a) { return a.suffix.has_value(); });
  return static_cast<std::size_t>(it - r.attributes.begin());
}

bool holds_one_to_one_key(const Relation& r) {
  return std::any_of(r.attributes.begin(), r.attributes.end(), [](const RdsAttribute& a) {
    return a.suffix && a.suffix->far_max == Bound::One;
  });
}

// Orders regular entity types so that a forward run reproduces the schema.
// Unmoved relations and multivalued owners keep their relative order; moved
// relations go as late as that allows.
std::vector<Identifier> regular_order(const RelationalSchema& s, const Classification& c) {
  std::vector<Identifier> fixed;
  std::vector<Identifier> moved;
  for (const auto& r : s.relations) {
    auto k = c.kinds.find(r.name);
    if (k == c.kinds.end() || k->second != RelationKind::RegularEntity) continue;
    (holds_one_to_one_key(r) ? moved : fixed).push_back(r.name);
  }
  std::vector<Identifier> mva_owners;
  for (const auto& r : s.relations) {
    auto k = c.kinds.find(r.name);
    if (k == c.kinds.end() || k->second != RelationKind::MvaRel) continue;
    const auto& owner = c.owners.at(r.name);
    if (std::find(mva_owners.begin(), mva_owners.end(), owner) == mva_owners.end()) mva_owners.push_back(owner);
  }

  std::vector<Identifier> out;
  std::vector<Identifier> pending;
  std::size_t cursor = 0;
  for (const auto& owner : mva_owners) {
    auto it = std::find(fixed.begin(), fixed.end(), owner);
    if (it == fixed.end()) {
      pending.push_back(owner);
      continue;
    }
    const auto idx = static_cast<std::size_t>(it - fixed.begin());
    for (; cursor < idx; ++cursor) out.push_back(fixed[cursor]);
    out.insert(out.end(), pending.begin(), pending.end());
    pending.clear();
    out.push_back(fixed[cursor++]);
  }
  for (; cursor < fixed.size(); ++cursor) out.push_back(fixed[cursor]);
  out.insert(out.end(), pending.begin(), pending.end());
  for (const auto& name : moved) {
    if (std::find(out.begin(), out.end(), name) == out.end()) out.push_back(name);
  }
  return out;
}

}  // namespace

ReverseResult reverse_transform(const RelationalSchema& s) {
  ReverseResult out;
  auto& diags = out.diagnostics;
  for (auto& msg : invariant_violations(s)) diags.push_back(make_error(rule::kRdsInvariant, std::move(msg)));
  if (!out.ok()) return out;

  Classification c = classify_relations(s);
  diags.insert(diags.end(), c.diagnostics.begin(), c.diagnostics.end());
  auto& m = out.model;

  // Entity attributes: everything before the first foreign key.
  std::map<Identifier, RegularEntityType> regulars;
  std::vector<Subtype> subtypes;
  for (const auto& r : s.relations) {
    auto k = c.kinds.find(r.name);
    if (k == c.kinds.end()) continue;
    const std::size_t end = first_foreign_key(r);
    if (k->second == RelationKind::RegularEntity) {
      RegularEntityType e;
      e.name = r.name;
      for (std::size_t i = 0; i < end; ++i) {
        const auto& a = r.attributes[i];
        e.attributes.push_back({a.name, a.underlined ? AttributeKind::Key : AttributeKind::Simple, {}});
      }
      if (std::count_if(e.attributes.begin(), e.attributes.end(),
                        [](const Attribute& a) { return a.kind == AttributeKind::Key; }) > 1) {
        diags.push_back(make_note(rule::kNormalized,
                                  "key " + e.attributes[0].name + " of " + e.name +
                                      " is taken as the designated key because it comes first",
                                  path_of(r)));
      }
      regulars[r.name] = std::move(e);
    } else if (k->second == RelationKind::SubtypeRel) {
      Subtype st;
      st.name = r.name;
      st.supertype = c.owners.at(r.name);
      for (std::size_t i = 1; i < end; ++i) st.attributes.push_back({r.attributes[i].name, AttributeKind::Simple, {}});
      subtypes.push_back(std::move(st));
    }
  }

  // Relationships, in the order their keys appear.
  std::set<Identifier> relationship_names;
  for (const auto& r : s.relations) {
    auto k = c.kinds.find(r.name);
    if (k == c.kinds.end()) continue;
    const std::size_t start = first_foreign_key(r);
    for (std::size_t i = start; i < r.attributes.size(); ++i) {
      const auto& a = r.attributes[i];
      if (!a.suffix) {
        if (a.underlined) {
          diags.push_back(make_error(rule::kUnclassifiable,
                                     "underlined attribute " + a.name + " follows a foreign key in " + r.name,
                                     path_of(r)));
        }
        continue;
      }
      try {
        FkInterpretation fk = interpret_fk(r, i, c);
        i += fk.attribute_count;
        auto& rel = fk.relationship;
        if (fk.referenced_subtype) {
          auto existing = std::find_if(subtypes.begin(), subtypes.end(),
                                       [&](const Subtype& st) { return st.name == fk.referenced_subtype->name; });
          if (existing == subtypes.end()) {
            if (c.kinds.count(fk.referenced_subtype->name) != 0) {
              diags.push_back(make_error(rule::kDanglingFk,
                                         "prefix " + fk.referenced_subtype->name + " in " + r.name +
                                             " names a relation that is not a subtype relation",
                                         path_of(r)));
              continue;
            }
            subtypes.push_back(*fk.referenced_subtype);
          } else if (existing->supertype != fk.referenced_subtype->supertype) {
            diags.push_back(make_error(rule::kDanglingFk,
                                       "prefix " + existing->name + " in " + r.name + " implies supertype " +
                                           fk.referenced_subtype->supertype + ", but its relation leads with the key of " +
                                           existing->supertype,
                                       path_of(r)));
            continue;
          }
        }
        if (!relationship_names.insert(rel.name).second) {
          diags.push_back(
              make_error(rule::kDuplicate, "relationship " + rel.name + " is encoded more than once", path_of(r)));
          continue;
        }
        const auto cls = ratio_class(rel);
        if (cls.kind == RatioClass::Kind::OneToOne) {
          out.recovered_config.sog_choices[rel.name] = r.name;
          out.recovered_config.sog_policy = SogPolicy::Explicit;
        }
        auto is_sub = [&](const Identifier& n) {
          return std::any_of(subtypes.begin(), subtypes.end(), [&](const Subtype& st) { return st.name == n; });
        };
        if (cls.kind == RatioClass::Kind::OneToMany &&
            (is_sub(rel.endpoints[0].participant) || is_sub(rel.endpoints[1].participant))) {
          out.recovered_config.extensions = true;
        }
        // A 1:1 relationship is written subtype first, whichever side holds the key.
        if (cls.kind == RatioClass::Kind::OneToOne && !is_sub(rel.endpoints[0].participant) &&
            is_sub(rel.endpoints[1].participant)) {
          std::swap(rel.endpoints[0], rel.endpoints[1]);
        }
        m.relationships.push_back(std::move(rel));
      } catch (const ReverseError& e) {
        diags.push_back(e.diagnostic());
      }
    }
  }

  // Multivalued attributes and weak entities.
  for (const auto& r : s.relations) {
    auto k = c.kinds.find(r.name);
    if (k == c.kinds.end()) continue;
    if (k->second == RelationKind::MvaRel) {
      regulars[c.owners.at(r.name)].attributes.push_back({r.name, AttributeKind::Multivalued, {}});
    } else if (k->second == RelationKind::WeakRel) {
      WeakEntityType w;
      w.name = r.name;
      w.owner = c.owners.at(r.name);
      w.identifying_relationship = r.name + "Of";
      w.partial_key = {r.attributes[1].name, AttributeKind::PartialKey, {}};
      for (std::size_t i = 2; i < r.attributes.size(); ++i) {
        w.attributes.push_back({r.attributes[i].name, AttributeKind::Simple, {}});
      }
      diags.push_back(make_note(rule::kNormalized,
                                "identifying relationship of weak entity " + w.name + " is named " +
                                    w.identifying_relationship,
                                path_of(r)));
      m.weak_entities.push_back(std::move(w));
    }
  }

  for (const auto& name : regular_order(s, c)) m.regular_entities.push_back(std::move(regulars[name]));
  m.subtypes = std::move(subtypes);
  if (!s.relations.empty()) {
    diags.push_back(make_note(rule::kNormalized, "elements are declared in the order their relations appear"));
  }
  return out;
}

}  // namespace erdb
