#pragma once

// The `.er` text format: a keyword-led block per model element.
//
//   entity <Name> { key <Attr>; [key|attr|multi <Attr>;]* }
//   subtype <Name> of <Super> { [attr <Attr>;]* }
//   weak <Name> of <Owner> via <RelName> { partial <Attr>; [attr <Attr>;]* }
//   rel <Name> (<Participant> <min>..<max>, <Participant> <min>..<max>) { [attr <Attr>;]* }
//
// <min> is 0 or 1, <max> is 1 or n, and the pair after a participant is the
// one written nearest that participant. `//` starts a comment. Whitespace and
// newlines are insignificant.

#include <string>
#include <string_view>

#include "erdb/diagnostic.hpp"
#include "erdb/model.hpp"

namespace erdb {

struct ErSourceFile {
  std::string text;
  std::string name = "<input>";
};

// Parses and resolves references. Notation rules are left to the validator,
// except the character class of names, which the lexer reports as R2.5.2.
Parsed<ERModel> parse_er(const ErSourceFile& src);

// Canonical text: elements grouped by kind in declaration order, one member
// per line, blank line between blocks.
std::string emit_er(const ERModel& m);

}  // namespace erdb
