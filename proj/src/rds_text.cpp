#include "erdb/rds_text.hpp"

#include <set>
#include <string_view>

namespace erdb {

std::string emit_attribute(const RdsAttribute& a) {
  std::string out;
  if (a.underlined) out += '_';
  out += a.qualified_name();
  if (a.underlined) out += '_';
  if (a.suffix) {
    out += '(' + a.suffix->relationship + ", ";
    out += to_string(a.suffix->near_min);
    out += ", ";
    out += to_string(a.suffix->far_min);
    out += ", ";
    out += to_string(a.suffix->far_max);
    out += ')';
  }
  return out;
}

std::string emit_relation(const Relation& r) {
  std::string out = r.name + '[';
  for (std::size_t i = 0; i < r.attributes.size(); ++i) {
    if (i > 0) out += ", ";
    out += emit_attribute(r.attributes[i]);
  }
  out += ']';
  return out;
}

std::string emit_rds(const RelationalSchema& s) {
  std::string out;
  for (const auto& r : s.relations) {
    out += emit_relation(r);
    out += '\n';
  }
  return out;
}

namespace {

struct LineError {
  std::size_t column;
  std::string message;
};

class LineParser {
 public:
  explicit LineParser(std::string_view line) : s_(line) {}

  Relation relation() {
    Relation r;
    skip_ws();
    r.name = name("a relation name");
    skip_ws();
    expect('[');
    skip_ws();
    if (!at(']')) {
      for (;;) {
        r.attributes.push_back(attribute());
        skip_ws();
        if (at(',')) {
          ++pos_;
          skip_ws();
          continue;
        }
        break;
      }
    }
    expect(']');
    skip_ws();
    if (pos_ != s_.size()) fail("unexpected text after ']'");
    return r;
  }

 private:
  [[noreturn]] void fail(const std::string& message) { throw LineError{pos_ + 1, message}; }

  bool at(char c) const { return pos_ < s_.size() && s_[pos_] == c; }

  void expect(char c) {
    if (!at(c)) fail(std::string("expected '") + c + "'" + found());
    ++pos_;
  }

  std::string found() const {
    if (pos_ >= s_.size()) return ", found end of line";
    return std::string(", found '") + s_[pos_] + "'";
  }

  void skip_ws() {
    while (pos_ < s_.size() && (s_[pos_] == ' ' || s_[pos_] == '\t' || s_[pos_] == '\r')) ++pos_;
  }

  static bool letter(char c) { return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z'); }

  Identifier name(std::string_view what) {
    const std::size_t start = pos_;
    while (pos_ < s_.size() && letter(s_[pos_])) ++pos_;
    if (pos_ == start) {
      fail("expected " + std::string(what) + found());
    }
    return Identifier(s_.substr(start, pos_ - start));
  }

  // Hyphen, or the UTF-8 en dash.
  bool take_dash() {
    if (at('-')) {
      ++pos_;
      return true;
    }
    if (s_.substr(pos_, 3) == "\xE2\x80\x93") {
      pos_ += 3;
      return true;
    }
    return false;
  }

  Bound bound() {
    skip_ws();
    if (at('0')) {
      ++pos_;
      return Bound::Zero;
    }
    if (at('1')) {
      ++pos_;
      return Bound::One;
    }
    if (at('n') || at('N')) {
      ++pos_;
      return Bound::Many;
    }
    fail("expected 0, 1 or n" + found());
  }

  void comma() {
    skip_ws();
    expect(',');
  }

  RdsAttribute attribute() {
    RdsAttribute a;
    if (at('_')) {
      ++pos_;
      a.underlined = true;
    }
    Identifier first = name("an attribute name");
    if (take_dash()) {
      a.prefix = std::move(first);
      a.name = name("an attribute name after the prefix");
    } else {
      a.name = std::move(first);
    }
    if (a.underlined) expect('_');
    skip_ws();
    if (at('(')) {
      ++pos_;
      skip_ws();
      FkSuffix sfx;
      sfx.relationship = name("a relationship name");
      comma();
      sfx.near_min = bound();
      comma();
      sfx.far_min = bound();
      comma();
      sfx.far_max = bound();
      skip_ws();
      expect(')');
      a.suffix = std::move(sfx);
    }
    return a;
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

std::string_view strip_comment(std::string_view line) {
  const auto c = line.find("//");
  return c == std::string_view::npos ? line : line.substr(0, c);
}

bool blank(std::string_view line) {
  return line.find_first_not_of(" \t\r") == std::string_view::npos;
}

}  // namespace

Parsed<RelationalSchema> parse_rds(const RdsSourceFile& src) {
  Parsed<RelationalSchema> out;
  RelationalSchema schema;
  std::set<std::string> names;
  std::string_view text = src.text;
  int line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    line = strip_comment(line);
    if (blank(line)) continue;
    try {
      Relation r = LineParser(line).relation();
      for (auto& msg : invariant_violations(r)) {
        Diagnostic d = make_error(rule::kRdsInvariant, std::move(msg), "relation " + r.name);
        d.line = line_no;
        d.column = 1;
        out.diagnostics.push_back(std::move(d));
      }
      if (!names.insert(r.name).second) {
        Diagnostic d = make_error(rule::kDuplicate, "relation " + r.name + " is defined twice", "relation " + r.name);
        d.line = line_no;
        d.column = 1;
        out.diagnostics.push_back(std::move(d));
      }
      schema.relations.push_back(std::move(r));
    } catch (const LineError& e) {
      Diagnostic d = make_error(rule::kSyntax, e.message);
      d.line = line_no;
      d.column = static_cast<int>(e.column);
      out.diagnostics.push_back(std::move(d));
    }
  }
  if (!has_errors(out.diagnostics)) out.value = std::move(schema);
  return out;
}

}  // namespace erdb
