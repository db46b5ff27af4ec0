#include "erdb/roundtrip.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "erdb/rds_text.hpp"
#include "erdb/reverse.hpp"

namespace erdb {

namespace {

template <typename T>
void sort_by_name(std::vector<T>& v) {
  std::stable_sort(v.begin(), v.end(), [](const T& a, const T& b) { return a.name < b.name; });
}

std::vector<Attribute> canonical_attributes(const RegularEntityType& e) {
  const auto candidates = designated_key_candidates(e);
  std::vector<Attribute> out;
  if (!candidates.empty()) out.push_back(e.attributes[candidates.front()]);
  for (auto kind : {AttributeKind::Key, AttributeKind::Simple, AttributeKind::Multivalued, AttributeKind::PartialKey}) {
    for (std::size_t i = 0; i < e.attributes.size(); ++i) {
      if (!candidates.empty() && i == candidates.front()) continue;
      if (e.attributes[i].kind == kind) out.push_back(e.attributes[i]);
    }
  }
  return out;
}

std::string attributes_text(const std::vector<Attribute>& attrs) {
  std::string out = "[";
  for (std::size_t i = 0; i < attrs.size(); ++i) {
    if (i > 0) out += ", ";
    out += std::string(to_string(attrs[i].kind)) + " " + attrs[i].name;
  }
  return out + "]";
}

std::string endpoints_text(const RelationshipType& r) {
  std::string out = "(";
  for (std::size_t i = 0; i < 2; ++i) {
    if (i > 0) out += ", ";
    const auto& ep = r.endpoints[i];
    out += ep.participant + " " + std::string(to_string(ep.nearest.min)) + ".." +
           std::string(to_string(ep.nearest.max));
  }
  return out + ")";
}

template <typename T, typename Compare>
void diff_lists(const std::string& label, const std::vector<T>& expected, const std::vector<T>& actual,
                Compare compare, std::vector<std::string>& out) {
  std::map<std::string, const T*> exp;
  std::map<std::string, const T*> act;
  for (const auto& x : expected) exp[x.name] = &x;
  for (const auto& x : actual) act[x.name] = &x;
  for (const auto& [name, x] : exp) {
    auto it = act.find(name);
    if (it == act.end()) {
      out.push_back("- " + label + " " + name + ": missing");
    } else {
      compare(label + " " + name, *x, *it->second, out);
    }
  }
  for (const auto& [name, x] : act) {
    if (exp.count(name) == 0) out.push_back("- " + label + " " + name + ": unexpected");
  }
}

void field(const std::string& where, const std::string& what, const std::string& expected, const std::string& actual,
           std::vector<std::string>& out) {
  if (expected != actual) out.push_back("- " + where + ": " + what + " " + expected + " != " + actual);
}

}  // namespace

ERModel normalize(const ERModel& m) {
  ERModel out = m;
  for (auto& e : out.regular_entities) e.attributes = canonical_attributes(e);
  for (auto& w : out.weak_entities) w.identifying_relationship = w.name + "Of";
  for (auto& r : out.relationships) {
    const auto cls = ratio_class(r);
    const bool swap = (cls.kind == RatioClass::Kind::OneToMany && cls.n_side == 1) ||
                      (cls.kind == RatioClass::Kind::OneToOne && !m.is_subtype(r.endpoints[0].participant) &&
                       m.is_subtype(r.endpoints[1].participant));
    if (swap) std::swap(r.endpoints[0], r.endpoints[1]);
  }
  sort_by_name(out.regular_entities);
  sort_by_name(out.subtypes);
  sort_by_name(out.weak_entities);
  sort_by_name(out.relationships);
  return out;
}

std::vector<std::string> model_diff(const ERModel& expected, const ERModel& actual) {
  std::vector<std::string> out;
  diff_lists("entity", expected.regular_entities, actual.regular_entities,
             [](const std::string& where, const RegularEntityType& a, const RegularEntityType& b, auto& o) {
               field(where, "attributes", attributes_text(a.attributes), attributes_text(b.attributes), o);
             },
             out);
  diff_lists("subtype", expected.subtypes, actual.subtypes,
             [](const std::string& where, const Subtype& a, const Subtype& b, auto& o) {
               field(where, "supertype", a.supertype, b.supertype, o);
               field(where, "attributes", attributes_text(a.attributes), attributes_text(b.attributes), o);
             },
             out);
  diff_lists("weak", expected.weak_entities, actual.weak_entities,
             [](const std::string& where, const WeakEntityType& a, const WeakEntityType& b, auto& o) {
               field(where, "owner", a.owner, b.owner, o);
               field(where, "identifying relationship", a.identifying_relationship, b.identifying_relationship, o);
               field(where, "partial key", a.partial_key.name, b.partial_key.name, o);
               field(where, "attributes", attributes_text(a.attributes), attributes_text(b.attributes), o);
             },
             out);
  diff_lists("rel", expected.relationships, actual.relationships,
             [](const std::string& where, const RelationshipType& a, const RelationshipType& b, auto& o) {
               field(where, "endpoints", endpoints_text(a), endpoints_text(b), o);
               field(where, "attributes", attributes_text(a.attributes), attributes_text(b.attributes), o);
             },
             out);
  // Same content, different order.
  if (out.empty() && !(expected == actual)) out.push_back("- declaration order differs");
  return out;
}

std::vector<TransformConfig> sog_configurations(const ERModel& m, bool extensions) {
  std::vector<const RelationshipType*> one_to_one;
  for (const auto& r : m.relationships) {
    if (ratio_class(r).kind == RatioClass::Kind::OneToOne &&
        m.is_subtype(r.endpoints[0].participant) != m.is_subtype(r.endpoints[1].participant)) {
      one_to_one.push_back(&r);
    }
  }
  std::vector<TransformConfig> out;
  TransformConfig base;
  base.extensions = extensions;
  out.push_back(base);
  base.sog_policy = SogPolicy::PreferRegularRelation;
  out.push_back(base);
  const std::size_t k = std::min<std::size_t>(one_to_one.size(), 12);
  for (std::size_t mask = 0; mask < (std::size_t{1} << k); ++mask) {
    std::map<Identifier, Identifier> choices;
    for (std::size_t i = 0; i < k; ++i) {
      const auto* r = one_to_one[i];
      choices[r->name] = r->endpoints[(mask >> i) & 1].participant;
    }
    TransformConfig c = TransformConfig::explicit_choices(std::move(choices));
    c.extensions = extensions;
    out.push_back(std::move(c));
  }
  return out;
}

RoundTripReport roundtrip_check(const ERModel& m, const TransformConfig& cfg) {
  RoundTripReport report;
  TransformResult first;
  try {
    first = transform_model(m, cfg);
  } catch (const TransformError& e) {
    report.diagnostics = e.diagnostics();
    report.differences.push_back("- forward transformation failed: " + std::string(e.what()));
    return report;
  }
  report.forward_text = emit_rds(first.schema);

  auto parsed = parse_rds({report.forward_text, "<forward>"});
  if (!parsed.ok()) {
    report.diagnostics = parsed.diagnostics;
    report.differences.push_back("- emitted schema does not parse back");
    return report;
  }
  if (!(*parsed.value == first.schema)) report.differences.push_back("- emitted schema reparses differently");

  ReverseResult reversed = reverse_transform(*parsed.value);
  report.diagnostics = reversed.diagnostics;
  if (!reversed.ok()) {
    report.differences.push_back("- reverse transformation failed");
    return report;
  }
  for (auto& d : model_diff(normalize(m), normalize(reversed.model))) report.differences.push_back(std::move(d));

  try {
    report.second_text = emit_rds(transform_model(reversed.model, reversed.recovered_config).schema);
  } catch (const TransformError& e) {
    for (const auto& d : e.diagnostics()) report.diagnostics.push_back(d);
    report.differences.push_back("- forward transformation of the reversed model failed: " + std::string(e.what()));
    return report;
  }
  if (report.second_text != report.forward_text) {
    report.differences.push_back("- forward output of the reversed model differs:");
    report.differences.push_back("  first:\n" + report.forward_text);
    report.differences.push_back("  second:\n" + report.second_text);
  }
  report.ok = report.differences.empty();
  return report;
}

}  // namespace erdb
