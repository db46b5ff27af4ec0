#pragma once

#include <string>
#include <vector>

#include "erdb/diagnostic.hpp"
#include "erdb/model.hpp"

namespace erdb {

struct DdlResult {
  std::string text;
  // Warnings only: unresolved foreign keys and relations that could not be
  // classified. Both also appear as comments in `text`.
  std::vector<Diagnostic> diagnostics;
};

// One CREATE TABLE per relation, columns typed TEXT. Underlined attributes
// form the primary key. Suffixed attributes reference the regular relation
// whose key they carry (prefix stripped), with the suffix kept as a comment.
// Every non-regular relation also references its owner through the
// leading key.
DdlResult emit_ddl(const RelationalSchema& s);

}  // namespace erdb
