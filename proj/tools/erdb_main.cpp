#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "erdb/ddl.hpp"
#include "erdb/er_text.hpp"
#include "erdb/rds_text.hpp"
#include "erdb/reverse.hpp"
#include "erdb/roundtrip.hpp"
#include "erdb/transform.hpp"
#include "erdb/validator.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kWarnings = 1;
constexpr int kErrors = 2;
constexpr int kIo = 3;

struct IoError {
  std::string message;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError{"cannot read " + path};
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError{"error reading " + path};
  return ss.str();
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text << std::flush;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text) || !out.flush()) throw IoError{"cannot write " + path};
}

int severity_exit(const std::vector<erdb::Diagnostic>& diags) {
  if (erdb::has_errors(diags)) return kErrors;
  if (erdb::has_warnings(diags)) return kWarnings;
  return kOk;
}

struct Options {
  std::string input;
  std::string output;
  std::vector<std::string> sog_choices;
  std::string sog_policy = "subtype";
  bool extensions = false;
  bool trace = false;
  bool all_choices = false;
};

erdb::TransformConfig make_config(const Options& o) {
  erdb::TransformConfig cfg;
  cfg.extensions = o.extensions;
  cfg.sog_policy = o.sog_policy == "regular" ? erdb::SogPolicy::PreferRegularRelation
                                             : erdb::SogPolicy::PreferSubtypeRelation;
  for (const auto& pair : o.sog_choices) {
    const auto eq = pair.find('=');
    cfg.sog_choices[pair.substr(0, eq)] = pair.substr(eq + 1);
  }
  return cfg;
}

std::optional<erdb::ERModel> load_er(const Options& o, std::vector<erdb::Diagnostic>& diags) {
  auto parsed = erdb::parse_er({read_file(o.input), o.input});
  diags = std::move(parsed.diagnostics);
  return std::move(parsed.value);
}

int cmd_validate(const Options& o) {
  std::vector<erdb::Diagnostic> diags;
  auto model = load_er(o, diags);
  if (model) {
    for (auto& d : erdb::validate_notation(*model, {o.extensions})) diags.push_back(std::move(d));
  }
  std::cout << erdb::render_all(diags, o.input);
  return model ? severity_exit(diags) : kErrors;
}

std::string render_trace(const erdb::TransformTrace& trace) {
  std::string out;
  for (const auto& e : trace) {
    out += std::string(erdb::to_string(e.step)) + ' ' + e.subject + " -> " + erdb::emit_relation(e.relation) + " @" +
           std::to_string(e.position) + '\n';
  }
  return out;
}

int cmd_transform(const Options& o) {
  std::vector<erdb::Diagnostic> diags;
  auto model = load_er(o, diags);
  if (!model) {
    std::cerr << erdb::render_all(diags, o.input);
    return kErrors;
  }
  try {
    auto result = erdb::transform_model(*model, make_config(o));
    for (auto& d : result.warnings) diags.push_back(std::move(d));
    std::cerr << erdb::render_all(diags, o.input);
    if (o.trace) std::cerr << render_trace(result.trace);
    write_output(o.output, erdb::emit_rds(result.schema));
    return severity_exit(diags);
  } catch (const erdb::TransformError& e) {
    for (const auto& d : e.diagnostics()) diags.push_back(d);
    std::cerr << erdb::render_all(diags, o.input);
    return kErrors;
  }
}

int cmd_reverse(const Options& o) {
  auto parsed = erdb::parse_rds({read_file(o.input), o.input});
  if (!parsed.ok()) {
    std::cerr << erdb::render_all(parsed.diagnostics, o.input);
    return kErrors;
  }
  auto result = erdb::reverse_transform(*parsed.value);
  std::cerr << erdb::render_all(result.diagnostics, o.input);
  if (!result.ok()) return kErrors;
  write_output(o.output, erdb::emit_er(result.model));
  return severity_exit(result.diagnostics);
}

int cmd_roundtrip(const Options& o) {
  std::vector<erdb::Diagnostic> diags;
  auto model = load_er(o, diags);
  if (!model) {
    std::cerr << erdb::render_all(diags, o.input);
    return kErrors;
  }
  std::vector<erdb::TransformConfig> configs;
  if (o.all_choices) {
    configs = erdb::sog_configurations(*model, o.extensions);
  } else {
    configs.push_back(make_config(o));
  }
  int failures = 0;
  std::string report;
  for (std::size_t i = 0; i < configs.size(); ++i) {
    auto r = erdb::roundtrip_check(*model, configs[i]);
    if (r.ok) continue;
    ++failures;
    report += "configuration " + std::to_string(i + 1) + " of " + std::to_string(configs.size()) + ":\n";
    report += erdb::render_all(r.diagnostics, o.input);
    for (const auto& d : r.differences) report += d + '\n';
  }
  if (failures > 0) {
    write_output(o.output, report);
    return kErrors;
  }
  write_output(o.output, "ok: " + std::to_string(configs.size()) + " configuration(s)\n");
  return kOk;
}

int cmd_ddl(const Options& o) {
  auto parsed = erdb::parse_rds({read_file(o.input), o.input});
  if (!parsed.ok()) {
    std::cerr << erdb::render_all(parsed.diagnostics, o.input);
    return kErrors;
  }
  auto result = erdb::emit_ddl(*parsed.value);
  std::cerr << erdb::render_all(result.diagnostics, o.input);
  write_output(o.output, result.text);
  return severity_exit(result.diagnostics);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ER model to relational schema compiler"};
  app.require_subcommand(1);
  Options o;

  auto add_io = [&](CLI::App* sub, const std::string& what) {
    sub->add_option("input", o.input, what)->required();
    sub->add_option("-o,--output", o.output, "Output file (default: standard output)");
  };
  auto add_sog = [&](CLI::App* sub) {
    sub->add_option("--sog-choice", o.sog_choices, "Relationship=Participant to hold a 1:1 key (repeatable)")
        ->check([](const std::string& v) -> std::string {
          const auto eq = v.find('=');
          if (eq == std::string::npos || eq == 0 || eq + 1 == v.size()) return "expected Relationship=Participant";
          return {};
        });
    sub->add_option("--sog-policy", o.sog_policy, "Default side for 1:1 keys")
        ->check(CLI::IsMember({"subtype", "regular"}));
    sub->add_flag("--extensions", o.extensions, "Allow 1:N relationships with subtype endpoints");
  };

  auto* validate = app.add_subcommand("validate", "Check an .er model against the notation rules");
  add_io(validate, ".er file");
  validate->add_flag("--extensions", o.extensions, "Allow 1:N relationships with subtype endpoints");

  auto* transform = app.add_subcommand("transform", "Transform an .er model into an .rds schema");
  add_io(transform, ".er file");
  add_sog(transform);
  transform->add_flag("--trace", o.trace, "Write the step trace to standard error");

  auto* reverse = app.add_subcommand("reverse", "Recover an .er model from an .rds schema");
  add_io(reverse, ".rds file");

  auto* roundtrip = app.add_subcommand("roundtrip", "Check that an .er model survives forward and reverse");
  add_io(roundtrip, ".er file");
  add_sog(roundtrip);
  roundtrip->add_flag("--all-choices", o.all_choices, "Try every assignment of 1:1 keys");

  auto* ddl = app.add_subcommand("ddl", "Emit SQL DDL for an .rds schema");
  add_io(ddl, ".rds file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kErrors;
  }

  try {
    if (*validate) return cmd_validate(o);
    if (*transform) return cmd_transform(o);
    if (*reverse) return cmd_reverse(o);
    if (*roundtrip) return cmd_roundtrip(o);
    return cmd_ddl(o);
  } catch (const IoError& e) {
    std::cerr << "erdb: " << e.message << '\n';
    return kIo;
  }
}
