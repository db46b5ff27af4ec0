#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace erdb {

enum class Severity { Note, Warning, Error };

std::string_view to_string(Severity s);

// Rule identifiers. The R-prefixed ones are notation rules checked by the
// validator; the rest come from the other pipeline stages.
namespace rule {
inline constexpr std::string_view kDesignatedKey = "R2.4.2";
inline constexpr std::string_view kNameForm = "R2.5.1";
inline constexpr std::string_view kNameCharset = "R2.5.2";
inline constexpr std::string_view kSubtypeProperty = "R2.2.1-I";
inline constexpr std::string_view kSubset = "SUBSET";

inline constexpr std::string_view kSyntax = "SYNTAX";
inline constexpr std::string_view kReference = "REF";
inline constexpr std::string_view kDuplicate = "DUP";
inline constexpr std::string_view kStructure = "STRUCT";

inline constexpr std::string_view kRdsInvariant = "RDS";

inline constexpr std::string_view kTransform = "XFORM";
inline constexpr std::string_view kConfig = "CONFIG";

inline constexpr std::string_view kUnclassifiable = "CLASSIFY";
inline constexpr std::string_view kDanglingFk = "FK";
inline constexpr std::string_view kAmbiguous = "AMBIGUOUS";
inline constexpr std::string_view kNormalized = "NORMALIZED";
}  // namespace rule

struct Diagnostic {
  std::string rule;
  Severity severity = Severity::Error;
  std::string message;
  // Model-element path such as "entity Employee/attr EmpNo"; may be empty.
  std::string element;
  int line = 0;  // 1-based; 0 when the finding has no source position
  int column = 0;

  bool operator==(const Diagnostic&) const = default;
};

Diagnostic make_error(std::string_view rule, std::string message, std::string element = {});
Diagnostic make_warning(std::string_view rule, std::string message, std::string element = {});
Diagnostic make_note(std::string_view rule, std::string message, std::string element = {});

bool has_errors(const std::vector<Diagnostic>& diags);
bool has_warnings(const std::vector<Diagnostic>& diags);

// `path:line:col: severity[rule]: message`. Without a source position the
// element path stands in for line and column.
std::string render(const Diagnostic& d, std::string_view path);
std::string render_all(const std::vector<Diagnostic>& diags, std::string_view path);

// Outcome of a parse: a value when no error was found, plus every
// diagnostic collected along the way.
template <typename T>
struct Parsed {
  std::optional<T> value;
  std::vector<Diagnostic> diagnostics;

  bool ok() const { return value.has_value(); }
};

}  // namespace erdb
