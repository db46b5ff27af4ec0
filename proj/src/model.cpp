#include "erdb/model.hpp"

#include <algorithm>
#include <cctype>
#include <set>

namespace erdb {

bool is_alphabetic(std::string_view name) {
  return !name.empty() && std::all_of(name.begin(), name.end(), [](char c) {
    return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z');
  });
}

bool starts_uppercase(std::string_view name) {
  return !name.empty() && name.front() >= 'A' && name.front() <= 'Z';
}

bool shares_name_prefix(std::string_view entity, std::string_view attribute) {
  const std::size_t n = std::min<std::size_t>(3, entity.size());
  if (n == 0 || attribute.size() < n) return false;
  for (std::size_t i = 0; i < n; ++i) {
    const auto a = std::tolower(static_cast<unsigned char>(entity[i]));
    const auto b = std::tolower(static_cast<unsigned char>(attribute[i]));
    if (a != b) return false;
  }
  return true;
}

std::string_view to_string(AttributeKind k) {
  switch (k) {
    case AttributeKind::Simple: return "attr";
    case AttributeKind::Key: return "key";
    case AttributeKind::Multivalued: return "multi";
    case AttributeKind::PartialKey: return "partial";
  }
  return "attr";
}

std::string_view to_string(Bound b) {
  switch (b) {
    case Bound::Zero: return "0";
    case Bound::One: return "1";
    case Bound::Many: return "n";
  }
  return "1";
}

bool is_valid(const CardinalityPair& p) {
  return p.min != Bound::Many && p.max != Bound::Zero;
}

namespace {
template <typename T>
const T* find_named(const std::vector<T>& items, std::string_view name) {
  auto it = std::find_if(items.begin(), items.end(), [&](const T& x) { return x.name == name; });
  return it == items.end() ? nullptr : &*it;
}
}  // namespace

const RegularEntityType* ERModel::find_regular(std::string_view name) const {
  return find_named(regular_entities, name);
}
const Subtype* ERModel::find_subtype(std::string_view name) const {
  return find_named(subtypes, name);
}
const WeakEntityType* ERModel::find_weak(std::string_view name) const {
  return find_named(weak_entities, name);
}
const RelationshipType* ERModel::find_relationship(std::string_view name) const {
  return find_named(relationships, name);
}

std::vector<const RelationshipType*> ERModel::relationships_of(std::string_view participant) const {
  std::vector<const RelationshipType*> out;
  for (const auto& r : relationships) {
    if (r.endpoints[0].participant == participant || r.endpoints[1].participant == participant) {
      out.push_back(&r);
    }
  }
  return out;
}

RatioClass ratio_class(const RelationshipType& rel) {
  const bool first_one = rel.endpoints[0].nearest.max == Bound::One;
  const bool second_one = rel.endpoints[1].nearest.max == Bound::One;
  if (first_one && second_one) return {RatioClass::Kind::OneToOne, 0};
  if (first_one) return {RatioClass::Kind::OneToMany, 0};
  if (second_one) return {RatioClass::Kind::OneToMany, 1};
  return {RatioClass::Kind::ManyToMany, 0};
}

std::vector<std::size_t> designated_key_candidates(const RegularEntityType& e) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < e.attributes.size(); ++i) {
    const auto& a = e.attributes[i];
    if (a.kind == AttributeKind::Key && shares_name_prefix(e.name, a.name)) out.push_back(i);
  }
  return out;
}

const Attribute& designated_key(const RegularEntityType& e) {
  const auto candidates = designated_key_candidates(e);
  if (candidates.empty()) {
    throw ModelError(ModelError::Code::NoDesignatedKey,
                     "entity " + e.name + " has no key attribute named after its first letters");
  }
  return e.attributes[candidates.front()];
}

std::string RdsAttribute::qualified_name() const {
  return prefix ? *prefix + "-" + name : name;
}

const RdsAttribute* Relation::find(std::string_view qualified) const {
  for (const auto& a : attributes) {
    if (a.qualified_name() == qualified) return &a;
  }
  return nullptr;
}

std::size_t Relation::underlined_count() const {
  return static_cast<std::size_t>(
      std::count_if(attributes.begin(), attributes.end(), [](const RdsAttribute& a) { return a.underlined; }));
}

const Relation* RelationalSchema::find(std::string_view name) const {
  return find_named(relations, name);
}

Relation* RelationalSchema::find(std::string_view name) {
  auto it = std::find_if(relations.begin(), relations.end(), [&](const Relation& r) { return r.name == name; });
  return it == relations.end() ? nullptr : &*it;
}

std::optional<std::size_t> RelationalSchema::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < relations.size(); ++i) {
    if (relations[i].name == name) return i;
  }
  return std::nullopt;
}

std::vector<std::string> invariant_violations(const Relation& r) {
  std::vector<std::string> out;
  if (r.attributes.empty()) {
    out.push_back("relation " + r.name + " has no attributes");
    return out;
  }
  if (r.underlined_count() == 0) out.push_back("relation " + r.name + " has no underlined key attribute");
  std::set<std::string> seen;
  for (const auto& a : r.attributes) {
    const auto q = a.qualified_name();
    if (!seen.insert(q).second) out.push_back("relation " + r.name + " repeats attribute " + q);
    if (a.prefix && !a.suffix) {
      out.push_back("attribute " + q + " in " + r.name + " has a prefix but no bracketed suffix");
    }
    if (a.underlined && a.suffix) {
      out.push_back("underlined attribute " + q + " in " + r.name + " carries a bracketed suffix");
    }
    if (a.suffix && (a.suffix->near_min == Bound::Many || a.suffix->far_min == Bound::Many ||
                     a.suffix->far_max == Bound::Zero)) {
      out.push_back("attribute " + q + " in " + r.name + " has an out-of-range suffix variable");
    }
  }
  return out;
}

std::vector<std::string> invariant_violations(const RelationalSchema& s) {
  std::vector<std::string> out;
  std::set<std::string> names;
  for (const auto& r : s.relations) {
    if (!names.insert(r.name).second) out.push_back("relation " + r.name + " is defined twice");
    auto v = invariant_violations(r);
    out.insert(out.end(), v.begin(), v.end());
  }
  return out;
}

}  // namespace erdb
