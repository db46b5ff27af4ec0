#include "erdb/validator.hpp"

#include <algorithm>
#include <array>
#include <string>
#include <tuple>

namespace erdb {

namespace {

constexpr std::array kCatalog{
    RuleCatalogEntry{rule::kDesignatedKey,
                     "each regular entity type has a key attribute named after its first three letters",
                     Severity::Error},
    RuleCatalogEntry{rule::kNameForm, "names are capital-letter initialized and in singular form", Severity::Error},
    RuleCatalogEntry{rule::kNameCharset, "names contain alphabetic letters only", Severity::Error},
    RuleCatalogEntry{rule::kSubtypeProperty, "each subtype has an intrinsic attribute or a relationship",
                     Severity::Error},
    RuleCatalogEntry{rule::kSubset, "each relationship is covered by a supported transformation step",
                     Severity::Error},
    RuleCatalogEntry{rule::kStructure, "attribute kinds and cardinalities are placed where they are allowed",
                     Severity::Error},
};

// Sort key: source position when known, else declaration position.
struct Position {
  int line = 0;
  int column = 0;
  int category = 0;
  std::size_t index = 0;
  std::size_t sub = 0;

  auto tie() const { return std::tie(line, column, category, index, sub); }
};

struct Finding {
  Position pos;
  Diagnostic diag;
};

class Checker {
 public:
  Checker(const ERModel& m, const ValidationOptions& opts) : m_(m), opts_(opts) {}

  std::vector<Diagnostic> run() {
    for (std::size_t i = 0; i < m_.regular_entities.size(); ++i) regular(i);
    for (std::size_t i = 0; i < m_.subtypes.size(); ++i) subtype(i);
    for (std::size_t i = 0; i < m_.weak_entities.size(); ++i) weak(i);
    for (std::size_t i = 0; i < m_.relationships.size(); ++i) relationship(i);

    std::stable_sort(findings_.begin(), findings_.end(), [](const Finding& a, const Finding& b) {
      if (a.pos.tie() != b.pos.tie()) return a.pos.tie() < b.pos.tie();
      return a.diag.rule < b.diag.rule;
    });
    std::vector<Diagnostic> out;
    out.reserve(findings_.size());
    for (auto& f : findings_) out.push_back(std::move(f.diag));
    return out;
  }

 private:
  void add(Position pos, const SourceLoc& loc, Diagnostic d) {
    d.line = loc.line;
    d.column = loc.column;
    pos.line = loc.line;
    pos.column = loc.column;
    findings_.push_back({pos, std::move(d)});
  }

  void name(const Identifier& n, const std::string& path, const Position& pos, const SourceLoc& loc,
            bool entity_type) {
    if (!is_alphabetic(n)) {
      add(pos, loc,
          make_error(rule::kNameCharset,
                     "name '" + n + "' may contain only alphabetic letters (no digits, underscores, dashes, "
                                    "hyphens, slashes or other symbols)",
                     path));
      return;
    }
    if (!starts_uppercase(n)) {
      add(pos, loc, make_error(rule::kNameForm, "name '" + n + "' must start with a capital letter", path));
    }
    // Plural heuristic: a trailing 's' not preceded by another 's'.
    if (entity_type && n.size() > 1 && n.back() == 's' && n[n.size() - 2] != 's') {
      add(pos, loc, make_warning(rule::kNameForm, "name '" + n + "' looks plural; use the singular form", path));
    }
  }

  void attributes(const std::vector<Attribute>& attrs, const std::string& owner, Position pos,
                  std::initializer_list<AttributeKind> allowed) {
    for (std::size_t j = 0; j < attrs.size(); ++j) {
      const auto& a = attrs[j];
      pos.sub = j + 1;
      const std::string path = owner + "/" + std::string(to_string(a.kind)) + " " + a.name;
      name(a.name, path, pos, a.loc, false);
      if (std::find(allowed.begin(), allowed.end(), a.kind) == allowed.end()) {
        add(pos, a.loc,
            make_error(rule::kStructure,
                       std::string(to_string(a.kind)) + " attribute " + a.name + " is not allowed here", path));
      }
    }
  }

  void regular(std::size_t i) {
    const auto& e = m_.regular_entities[i];
    const Position pos{0, 0, 0, i, 0};
    const std::string path = "entity " + e.name;
    name(e.name, path, pos, e.loc, true);
    attributes(e.attributes, path, pos, {AttributeKind::Key, AttributeKind::Simple, AttributeKind::Multivalued});

    const auto candidates = designated_key_candidates(e);
    if (candidates.empty()) {
      add(pos, e.loc,
          make_error(rule::kDesignatedKey,
                     "entity " + e.name + " needs a key attribute whose name starts with '" +
                         e.name.substr(0, std::min<std::size_t>(3, e.name.size())) + "'",
                     path));
    } else if (candidates.size() > 1) {
      add(pos, e.loc,
          make_warning(rule::kDesignatedKey,
                       "entity " + e.name + " has several keys named after it; " +
                           e.attributes[candidates.front()].name + " is used as the primary key",
                       path));
    }
  }

  void subtype(std::size_t i) {
    const auto& s = m_.subtypes[i];
    const Position pos{0, 0, 1, i, 0};
    const std::string path = "subtype " + s.name;
    name(s.name, path, pos, s.loc, true);
    attributes(s.attributes, path, pos, {AttributeKind::Simple});
    if (s.attributes.empty() && m_.relationships_of(s.name).empty()) {
      add(pos, s.loc,
          make_error(rule::kSubtypeProperty,
                     "subtype " + s.name + " has neither an intrinsic attribute nor a relationship", path));
    }
  }

  void weak(std::size_t i) {
    const auto& w = m_.weak_entities[i];
    const Position pos{0, 0, 2, i, 0};
    const std::string path = "weak " + w.name;
    name(w.name, path, pos, w.loc, true);
    name(w.identifying_relationship, path + "/via " + w.identifying_relationship, pos, w.loc, false);
    attributes({w.partial_key}, path, pos, {AttributeKind::PartialKey});
    Position rest = pos;
    rest.sub = 1;
    attributes(w.attributes, path, rest, {AttributeKind::Simple});
  }

  void relationship(std::size_t i) {
    const auto& r = m_.relationships[i];
    const Position pos{0, 0, 3, i, 0};
    const std::string path = "rel " + r.name;
    name(r.name, path, pos, r.loc, false);
    attributes(r.attributes, path, pos, {AttributeKind::Simple});

    for (const auto& ep : r.endpoints) {
      if (!is_valid(ep.nearest)) {
        add(pos, r.loc,
            make_error(rule::kStructure, "cardinality pair near " + ep.participant + " is out of range", path));
        return;
      }
    }
    const auto& a = r.endpoints[0].participant;
    const auto& b = r.endpoints[1].participant;
    if (a == b) {
      add(pos, r.loc, make_error(rule::kSubset, "unary relationship " + r.name + " is not supported", path));
      return;
    }
    const int subtypes = int(m_.is_subtype(a)) + int(m_.is_subtype(b));
    const Subtype* sa = m_.find_subtype(a);
    const Subtype* sb = m_.find_subtype(b);
    if ((sa && sa->supertype == b) || (sb && sb->supertype == a)) {
      add(pos, r.loc,
          make_error(rule::kSubset, "relationship " + r.name + " between a subtype and its own supertype is not supported",
                     path));
      return;
    }
    switch (ratio_class(r).kind) {
      case RatioClass::Kind::ManyToMany:
        add(pos, r.loc,
            make_error(rule::kSubset, "many-to-many relationship " + r.name + " is not supported", path));
        break;
      case RatioClass::Kind::OneToOne:
        if (subtypes == 0) {
          add(pos, r.loc,
              make_error(rule::kSubset,
                         "one-to-one relationship " + r.name + " between two regular entity types is not supported",
                         path));
        } else if (subtypes == 2) {
          add(pos, r.loc,
              make_error(rule::kSubset,
                         "one-to-one relationship " + r.name + " between two subtypes is not supported", path));
        }
        break;
      case RatioClass::Kind::OneToMany:
        if (subtypes > 0 && !opts_.extensions) {
          add(pos, r.loc,
              make_error(rule::kSubset,
                         "one-to-many relationship " + r.name + " with a subtype participant is not supported",
                         path));
        }
        break;
    }
  }

  const ERModel& m_;
  const ValidationOptions& opts_;
  std::vector<Finding> findings_;
};

}  // namespace

std::span<const RuleCatalogEntry> notation_rule_catalog() { return kCatalog; }

std::vector<Diagnostic> validate_notation(const ERModel& m, const ValidationOptions& opts) {
  return Checker(m, opts).run();
}

}  // namespace erdb
