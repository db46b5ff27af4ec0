#pragma once

// The `.rds` text format, one relation per line:
//
//   Department[_DepNo_, _Name_, Field, Manager-EmpNo(Manages, 1, 1, 1), StartDate]
//
// `_Attr_` marks an underlined (primary-key) attribute, `Prefix-Attr` a
// foreign key whose referenced key belongs to subtype `Prefix`, and
// `(Rel, v2, v3, v4)` the bracketed foreign-key suffix with variables
// written as 0, 1 or n. `//` starts a comment; blank lines are ignored.
// The parser also accepts an en dash in place of the prefix hyphen and any
// spacing around punctuation.

#include <string>

#include "erdb/diagnostic.hpp"
#include "erdb/model.hpp"

namespace erdb {

struct RdsSourceFile {
  std::string text;
  std::string name = "<input>";
};

std::string emit_attribute(const RdsAttribute& a);
std::string emit_relation(const Relation& r);
std::string emit_rds(const RelationalSchema& s);

// Parses and checks the annotation invariants (prefix implies suffix,
// underlined implies no suffix, every relation has an underlined key).
Parsed<RelationalSchema> parse_rds(const RdsSourceFile& src);

}  // namespace erdb
