#pragma once

#include <span>
#include <string_view>
#include <vector>

#include "erdb/diagnostic.hpp"
#include "erdb/model.hpp"

namespace erdb {

struct RuleCatalogEntry {
  std::string_view id;
  std::string_view description;
  Severity severity;
};

// The notation rules checked before transformation.
//
//   R2.4.2    every regular entity type has a key named after its first
//             three letters (a warning when several keys qualify)
//   R2.5.1    every name starts with an uppercase letter; entity-type names
//             ending in a single 's' draw an advisory plural warning
//   R2.5.2    every name is purely alphabetic
//   R2.2.1-I  every subtype has an intrinsic attribute or takes part in a
//             relationship
//   SUBSET    every relationship maps onto a supported step: 1:N between
//             two regular entity types, or 1:1 between a subtype and a
//             regular entity type
//   STRUCT    attribute kinds sit on the element kinds that allow them
std::span<const RuleCatalogEntry> notation_rule_catalog();

struct ValidationOptions {
  // Also admit 1:N relationships with subtype endpoints.
  bool extensions = false;
};

// Returns the findings sorted by model position, then rule id. An empty
// result means the model conforms.
std::vector<Diagnostic> validate_notation(const ERModel& m, const ValidationOptions& opts = {});

}  // namespace erdb
