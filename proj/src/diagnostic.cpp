#include "erdb/diagnostic.hpp"

#include <algorithm>

namespace erdb {

std::string_view to_string(Severity s) {
  switch (s) {
    case Severity::Note: return "note";
    case Severity::Warning: return "warning";
    case Severity::Error: return "error";
  }
  return "error";
}

namespace {
Diagnostic make(Severity sev, std::string_view rule, std::string message, std::string element) {
  Diagnostic d;
  d.rule = std::string(rule);
  d.severity = sev;
  d.message = std::move(message);
  d.element = std::move(element);
  return d;
}
}  // namespace

Diagnostic make_error(std::string_view rule, std::string message, std::string element) {
  return make(Severity::Error, rule, std::move(message), std::move(element));
}

Diagnostic make_warning(std::string_view rule, std::string message, std::string element) {
  return make(Severity::Warning, rule, std::move(message), std::move(element));
}

Diagnostic make_note(std::string_view rule, std::string message, std::string element) {
  return make(Severity::Note, rule, std::move(message), std::move(element));
}

bool has_errors(const std::vector<Diagnostic>& diags) {
  return std::any_of(diags.begin(), diags.end(),
                     [](const Diagnostic& d) { return d.severity == Severity::Error; });
}

bool has_warnings(const std::vector<Diagnostic>& diags) {
  return std::any_of(diags.begin(), diags.end(),
                     [](const Diagnostic& d) { return d.severity == Severity::Warning; });
}

std::string render(const Diagnostic& d, std::string_view path) {
  std::string out(path);
  if (d.line > 0) {
    out += ':' + std::to_string(d.line) + ':' + std::to_string(d.column);
  } else if (!d.element.empty()) {
    out += ": " + d.element;
  }
  out += ": ";
  out += to_string(d.severity);
  out += '[' + d.rule + "]: " + d.message;
  return out;
}

std::string render_all(const std::vector<Diagnostic>& diags, std::string_view path) {
  std::string out;
  for (const auto& d : diags) {
    out += render(d, path);
    out += '\n';
  }
  return out;
}

}  // namespace erdb
