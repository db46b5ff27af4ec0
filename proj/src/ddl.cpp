#include "erdb/ddl.hpp"

#include "erdb/rds_text.hpp"
#include "erdb/reverse.hpp"

namespace erdb {

namespace {

std::string quoted(const std::string& name) {
  if (name.find_first_not_of("ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789_") == std::string::npos) {
    return name;
  }
  return '"' + name + '"';
}

std::string suffix_comment(const FkSuffix& s) {
  return s.relationship + ", " + std::string(to_string(s.near_min)) + ", " + std::string(to_string(s.far_min)) + ", " +
         std::string(to_string(s.far_max));
}

struct Item {
  std::string text;
  std::string comment;
  bool clause = true;  // false for comment-only lines
};

}  // namespace

DdlResult emit_ddl(const RelationalSchema& s) {
  DdlResult out;
  Classification c = classify_relations(s);
  for (auto d : c.diagnostics) {
    if (d.severity == Severity::Error) d.severity = Severity::Warning;
    out.diagnostics.push_back(std::move(d));
  }

  auto key_of = [&](const Identifier& owner) -> std::string {
    const Relation* r = s.find(owner);
    return r && !r->attributes.empty() ? r->attributes[0].name : std::string();
  };

  bool first_table = true;
  for (const auto& r : s.relations) {
    std::vector<Item> items;
    std::vector<std::string> pk;
    for (const auto& a : r.attributes) {
      const std::string col = quoted(a.qualified_name());
      items.push_back({col + " TEXT" + (a.underlined ? " NOT NULL" : ""), {}});
      if (a.underlined) pk.push_back(col);
    }
    if (!pk.empty()) {
      std::string line = "PRIMARY KEY (";
      for (std::size_t i = 0; i < pk.size(); ++i) line += (i ? ", " : "") + pk[i];
      items.push_back({line + ")", {}});
    }
    if (auto it = c.owners.find(r.name); it != c.owners.end()) {
      const std::string key = quoted(r.attributes[0].name);
      items.push_back({"FOREIGN KEY (" + key + ") REFERENCES " + quoted(it->second) + " (" + quoted(key_of(it->second)) + ")", {}});
    } else if (!c.kinds.count(r.name)) {
      items.push_back({"-- relation " + r.name + " could not be classified", {}, false});
    }
    for (const auto& a : r.attributes) {
      if (!a.suffix) continue;
      const std::string col = quoted(a.qualified_name());
      auto owner = c.key_owners.find(a.name);
      if (owner == c.key_owners.end()) {
        items.push_back({"-- unresolved foreign key " + col + " (" + suffix_comment(*a.suffix) + ")", {}, false});
        Diagnostic d = make_warning(rule::kDanglingFk, "no relation has primary key " + a.name,
                                    "relation " + r.name + ", attribute " + a.qualified_name());
        out.diagnostics.push_back(std::move(d));
        continue;
      }
      items.push_back({"FOREIGN KEY (" + col + ") REFERENCES " + quoted(owner->second) + " (" + quoted(a.name) + ")",
                       suffix_comment(*a.suffix)});
    }

    if (!first_table) out.text += '\n';
    first_table = false;
    out.text += "CREATE TABLE " + quoted(r.name) + " (\n";
    std::size_t last_clause = items.size();
    for (std::size_t i = 0; i < items.size(); ++i) {
      if (items[i].clause) last_clause = i;
    }
    for (std::size_t i = 0; i < items.size(); ++i) {
      out.text += "  " + items[i].text;
      if (items[i].clause && i != last_clause) out.text += ',';
      if (!items[i].comment.empty()) out.text += "  -- " + items[i].comment;
      out.text += '\n';
    }
    out.text += ");\n";
  }
  return out;
}

}  // namespace erdb
