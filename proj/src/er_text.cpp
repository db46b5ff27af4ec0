#include "erdb/er_text.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <vector>

namespace erdb {

namespace {

enum class Tok { Word, Number, LBrace, RBrace, LParen, RParen, Semi, Comma, DotDot, Bad, End };

struct Token {
  Tok kind = Tok::End;
  std::string text;
  int line = 1;
  int column = 1;
};

bool is_letter(char c) { return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z'); }
bool is_digit(char c) { return c >= '0' && c <= '9'; }

class Lexer {
 public:
  Lexer(std::string_view text, std::vector<Diagnostic>& diags) : text_(text), diags_(diags) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_space_and_comments();
      Token t;
      t.line = line_;
      t.column = col_;
      if (pos_ >= text_.size()) {
        out.push_back(t);
        return out;
      }
      const char c = text_[pos_];
      if (is_letter(c) || c == '_' || static_cast<unsigned char>(c) >= 0x80) {
        t.kind = Tok::Word;
        t.text = word();
        if (!is_alphabetic(t.text)) {
          Diagnostic d = make_error(rule::kNameCharset,
                                    "name '" + t.text +
                                        "' may contain only alphabetic letters (no digits, underscores, "
                                        "dashes, hyphens, slashes or other symbols)");
          d.line = t.line;
          d.column = t.column;
          diags_.push_back(std::move(d));
        }
      } else if (is_digit(c)) {
        t.kind = Tok::Number;
        while (pos_ < text_.size() && is_digit(text_[pos_])) t.text += advance();
      } else if (c == '.' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '.') {
        t.kind = Tok::DotDot;
        t.text = "..";
        advance();
        advance();
      } else {
        t.text = std::string(1, advance());
        switch (c) {
          case '{': t.kind = Tok::LBrace; break;
          case '}': t.kind = Tok::RBrace; break;
          case '(': t.kind = Tok::LParen; break;
          case ')': t.kind = Tok::RParen; break;
          case ';': t.kind = Tok::Semi; break;
          case ',': t.kind = Tok::Comma; break;
          default: t.kind = Tok::Bad; break;
        }
      }
      out.push_back(std::move(t));
    }
  }

 private:
  char advance() {
    const char c = text_[pos_++];
    if (c == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    return c;
  }

  bool at_comment() const {
    return pos_ + 1 < text_.size() && text_[pos_] == '/' && text_[pos_ + 1] == '/';
  }

  void skip_space_and_comments() {
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        advance();
      } else if (at_comment()) {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      } else {
        break;
      }
    }
  }

  // A name runs over letters plus the symbols people tend to put in names,
  // so that `Start_Date` is one malformed name rather than three tokens.
  std::string word() {
    std::string out;
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      const bool symbol = c == '_' || c == '-' || (c == '/' && !at_comment());
      if (is_letter(c) || is_digit(c) || symbol || static_cast<unsigned char>(c) >= 0x80) {
        out += advance();
      } else {
        break;
      }
    }
    return out;
  }

  std::string_view text_;
  std::vector<Diagnostic>& diags_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

struct SyntaxError {};

class Parser {
 public:
  Parser(std::vector<Token> toks, std::vector<Diagnostic>& diags) : toks_(std::move(toks)), diags_(diags) {}

  ERModel run() {
    ERModel m;
    while (peek().kind != Tok::End) {
      try {
        declaration(m);
      } catch (const SyntaxError&) {
        recover();
      }
    }
    return m;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  const Token& next() {
    const Token& t = toks_[pos_];
    if (t.kind != Tok::End) ++pos_;
    return t;
  }

  bool at_word(std::string_view w) const { return peek().kind == Tok::Word && peek().text == w; }

  [[noreturn]] void fail(const Token& at, const std::string& message) {
    Diagnostic d = make_error(rule::kSyntax, message);
    d.line = at.line;
    d.column = at.column;
    diags_.push_back(std::move(d));
    throw SyntaxError{};
  }

  static std::string describe(const Token& t) {
    if (t.kind == Tok::End) return "end of input";
    return "'" + t.text + "'";
  }

  void expect(Tok kind, std::string_view what) {
    if (peek().kind != kind) fail(peek(), "expected " + std::string(what) + ", found " + describe(peek()));
    next();
  }

  void expect_word(std::string_view w) {
    if (!at_word(w)) fail(peek(), "expected '" + std::string(w) + "', found " + describe(peek()));
    next();
  }

  Identifier name(std::string_view what) {
    if (peek().kind != Tok::Word) fail(peek(), "expected " + std::string(what) + ", found " + describe(peek()));
    return next().text;
  }

  // Skip to the next top-level declaration keyword.
  void recover() {
    while (peek().kind != Tok::End) {
      if (peek().kind == Tok::Word &&
          (at_word("entity") || at_word("subtype") || at_word("weak") || at_word("rel"))) {
        return;
      }
      next();
    }
  }

  static SourceLoc loc_of(const Token& t) { return {t.line, t.column}; }

  void declaration(ERModel& m) {
    const Token& t = peek();
    if (at_word("entity")) {
      next();
      entity(m, t);
    } else if (at_word("subtype")) {
      next();
      subtype(m, t);
    } else if (at_word("weak")) {
      next();
      weak(m, t);
    } else if (at_word("rel")) {
      next();
      relationship(m, t);
    } else {
      fail(t, "expected 'entity', 'subtype', 'weak' or 'rel', found " + describe(t));
    }
  }

  // Parses `{ member* }` where each member is `<keyword> <Name>;`.
  std::vector<Attribute> body(std::string_view owner, std::initializer_list<AttributeKind> allowed) {
    std::vector<Attribute> out;
    expect(Tok::LBrace, "'{'");
    while (peek().kind != Tok::RBrace) {
      const Token& kw = peek();
      if (kw.kind != Tok::Word) fail(kw, "expected a member keyword, found " + describe(kw));
      std::optional<AttributeKind> kind;
      for (auto k : {AttributeKind::Key, AttributeKind::Simple, AttributeKind::Multivalued,
                     AttributeKind::PartialKey}) {
        if (kw.text == to_string(k)) kind = k;
      }
      if (!kind) fail(kw, "expected a member keyword, found " + describe(kw));
      if (std::find(allowed.begin(), allowed.end(), *kind) == allowed.end()) {
        fail(kw, "'" + kw.text + "' is not allowed in " + std::string(owner));
      }
      next();
      const Token& at = peek();
      Attribute a{name("an attribute name"), *kind, loc_of(at)};
      expect(Tok::Semi, "';'");
      out.push_back(std::move(a));
    }
    next();
    return out;
  }

  void entity(ERModel& m, const Token& start) {
    RegularEntityType e;
    e.loc = loc_of(start);
    e.name = name("an entity name");
    e.attributes = body("an entity", {AttributeKind::Key, AttributeKind::Simple, AttributeKind::Multivalued});
    m.regular_entities.push_back(std::move(e));
  }

  void subtype(ERModel& m, const Token& start) {
    Subtype s;
    s.loc = loc_of(start);
    s.name = name("a subtype name");
    expect_word("of");
    s.supertype = name("a supertype name");
    s.attributes = body("a subtype", {AttributeKind::Simple});
    m.subtypes.push_back(std::move(s));
  }

  void weak(ERModel& m, const Token& start) {
    WeakEntityType w;
    w.loc = loc_of(start);
    w.name = name("a weak entity name");
    expect_word("of");
    w.owner = name("an owner name");
    expect_word("via");
    w.identifying_relationship = name("an identifying relationship name");
    const Token& open = peek();
    auto members = body("a weak entity", {AttributeKind::PartialKey, AttributeKind::Simple});
    std::size_t partials = 0;
    for (auto& a : members) {
      if (a.kind == AttributeKind::PartialKey) {
        if (partials++ == 0) w.partial_key = a;
      } else {
        w.attributes.push_back(std::move(a));
      }
    }
    if (partials != 1) {
      Diagnostic d = make_error(rule::kStructure,
                                "weak entity " + w.name + " must declare exactly one partial key, found " +
                                    std::to_string(partials));
      d.line = open.line;
      d.column = open.column;
      diags_.push_back(std::move(d));
    }
    m.weak_entities.push_back(std::move(w));
  }

  Bound bound_value(const Token& t, bool is_max) {
    if (t.kind == Tok::Number && t.text == "0" && !is_max) return Bound::Zero;
    if (t.kind == Tok::Number && t.text == "1") return Bound::One;
    if (t.kind == Tok::Word && t.text == "n" && is_max) return Bound::Many;
    fail(t, is_max ? "cardinality max must be 1 or n, found " + describe(t)
                   : "cardinality min must be 0 or 1, found " + describe(t));
  }

  RelationshipEndpoint endpoint() {
    RelationshipEndpoint ep;
    ep.participant = name("a participant name");
    ep.nearest.min = bound_value(next(), false);
    expect(Tok::DotDot, "'..'");
    ep.nearest.max = bound_value(next(), true);
    return ep;
  }

  void relationship(ERModel& m, const Token& start) {
    RelationshipType r;
    r.loc = loc_of(start);
    r.name = name("a relationship name");
    expect(Tok::LParen, "'('");
    r.endpoints[0] = endpoint();
    expect(Tok::Comma, "','");
    r.endpoints[1] = endpoint();
    if (peek().kind == Tok::Comma) fail(peek(), "only binary relationships are supported");
    expect(Tok::RParen, "')'");
    r.attributes = body("a relationship", {AttributeKind::Simple});
    m.relationships.push_back(std::move(r));
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  std::vector<Diagnostic>& diags_;
};

void at(Diagnostic& d, const SourceLoc& loc) {
  d.line = loc.line;
  d.column = loc.column;
}

void check_attributes(const std::string& owner, const std::vector<const Attribute*>& attrs,
                      std::vector<Diagnostic>& diags) {
  std::set<std::string> seen;
  for (const auto* a : attrs) {
    if (!seen.insert(a->name).second) {
      Diagnostic d = make_error(rule::kDuplicate, owner + " declares attribute " + a->name + " twice");
      at(d, a->loc);
      diags.push_back(std::move(d));
    }
  }
}

void check_structure(const ERModel& m, std::vector<Diagnostic>& diags) {
  std::set<std::string> names;
  auto unique = [&](const std::string& name, const SourceLoc& loc) {
    if (!names.insert(name).second) {
      Diagnostic d = make_error(rule::kDuplicate, "name " + name + " is declared more than once");
      at(d, loc);
      diags.push_back(std::move(d));
    }
  };
  auto pointers = [](const std::vector<Attribute>& v) {
    std::vector<const Attribute*> out;
    for (const auto& a : v) out.push_back(&a);
    return out;
  };

  for (const auto& e : m.regular_entities) {
    unique(e.name, e.loc);
    check_attributes("entity " + e.name, pointers(e.attributes), diags);
    const bool has_key = std::any_of(e.attributes.begin(), e.attributes.end(),
                                     [](const Attribute& a) { return a.kind == AttributeKind::Key; });
    if (!has_key) {
      Diagnostic d = make_error(rule::kStructure, "entity " + e.name + " has no key attribute");
      at(d, e.loc);
      diags.push_back(std::move(d));
    }
  }
  for (const auto& s : m.subtypes) {
    unique(s.name, s.loc);
    check_attributes("subtype " + s.name, pointers(s.attributes), diags);
    if (!m.is_regular(s.supertype)) {
      Diagnostic d = make_error(rule::kReference,
                                "supertype " + s.supertype + " of " + s.name + " is not a regular entity type");
      at(d, s.loc);
      diags.push_back(std::move(d));
    }
  }
  for (const auto& w : m.weak_entities) {
    unique(w.name, w.loc);
    auto attrs = pointers(w.attributes);
    attrs.insert(attrs.begin(), &w.partial_key);
    check_attributes("weak entity " + w.name, attrs, diags);
    if (!m.is_regular(w.owner)) {
      Diagnostic d = make_error(rule::kReference,
                                "owner " + w.owner + " of " + w.name + " is not a regular entity type");
      at(d, w.loc);
      diags.push_back(std::move(d));
    }
  }
  for (const auto& r : m.relationships) {
    unique(r.name, r.loc);
    check_attributes("relationship " + r.name, pointers(r.attributes), diags);
    for (const auto& ep : r.endpoints) {
      if (!m.is_regular(ep.participant) && !m.is_subtype(ep.participant)) {
        Diagnostic d = make_error(rule::kReference, "participant " + ep.participant + " of " + r.name +
                                                        " is not a regular entity type or subtype");
        at(d, r.loc);
        diags.push_back(std::move(d));
      }
    }
  }
}

void emit_members(std::ostringstream& out, const std::vector<Attribute>& attrs) {
  for (const auto& a : attrs) out << "  " << to_string(a.kind) << ' ' << a.name << ";\n";
}

void emit_block(std::ostringstream& out, const std::string& header, const std::vector<Attribute>& attrs) {
  if (attrs.empty()) {
    out << header << " { }\n";
    return;
  }
  out << header << " {\n";
  emit_members(out, attrs);
  out << "}\n";
}

std::string endpoint_text(const RelationshipEndpoint& ep) {
  return ep.participant + ' ' + std::string(to_string(ep.nearest.min)) + ".." +
         std::string(to_string(ep.nearest.max));
}

}  // namespace

Parsed<ERModel> parse_er(const ErSourceFile& src) {
  Parsed<ERModel> result;
  auto tokens = Lexer(src.text, result.diagnostics).run();
  ERModel m = Parser(std::move(tokens), result.diagnostics).run();
  check_structure(m, result.diagnostics);
  if (!has_errors(result.diagnostics)) result.value = std::move(m);
  return result;
}

std::string emit_er(const ERModel& m) {
  std::ostringstream out;
  bool first = true;
  auto separate = [&] {
    if (!first) out << '\n';
    first = false;
  };
  for (const auto& e : m.regular_entities) {
    separate();
    emit_block(out, "entity " + e.name, e.attributes);
  }
  for (const auto& s : m.subtypes) {
    separate();
    emit_block(out, "subtype " + s.name + " of " + s.supertype, s.attributes);
  }
  for (const auto& w : m.weak_entities) {
    separate();
    std::vector<Attribute> members;
    members.push_back(w.partial_key);
    members.back().kind = AttributeKind::PartialKey;
    members.insert(members.end(), w.attributes.begin(), w.attributes.end());
    emit_block(out, "weak " + w.name + " of " + w.owner + " via " + w.identifying_relationship, members);
  }
  for (const auto& r : m.relationships) {
    separate();
    emit_block(out,
               "rel " + r.name + " (" + endpoint_text(r.endpoints[0]) + ", " + endpoint_text(r.endpoints[1]) + ")",
               r.attributes);
  }
  return out.str();
}

}  // namespace erdb
