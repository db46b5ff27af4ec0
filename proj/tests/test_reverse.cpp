#include <gtest/gtest.h>

#include "erdb/reverse.hpp"
#include "erdb/roundtrip.hpp"
#include "support/data.hpp"

using namespace erdb;
using namespace erdb::testing;

namespace {

bool has_rule(const std::vector<Diagnostic>& diags, std::string_view rule) {
  for (const auto& d : diags) {
    if (d.rule == rule) return true;
  }
  return false;
}

ReverseError::Code reverse_error(const Relation& r, std::size_t i, const Classification& c) {
  try {
    interpret_fk(r, i, c);
  } catch (const ReverseError& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected ReverseError";
  return ReverseError::Code::NotForeignKey;
}

}  // namespace

TEST(Classify, CompanyKinds) {
  const auto c = classify_relations(load_rds("company.rds"));
  ASSERT_TRUE(c.ok());
  const std::map<Identifier, RelationKind> expected = {
      {"Employee", RelationKind::RegularEntity}, {"Project", RelationKind::RegularEntity},
      {"Department", RelationKind::RegularEntity}, {"Engineer", RelationKind::SubtypeRel},
      {"Location", RelationKind::MvaRel}, {"Dependent", RelationKind::WeakRel}};
  EXPECT_EQ(c.kinds, expected);
  EXPECT_EQ(c.owners.at("Engineer"), "Employee");
  EXPECT_EQ(c.owners.at("Location"), "Department");
  EXPECT_EQ(c.owners.at("Dependent"), "Employee");
  EXPECT_EQ(c.key_owners.at("ProNo"), "Project");
}

TEST(Classify, SingleEntity) {
  const auto c = classify_relations(rds("E[_ENo_]"));
  ASSERT_TRUE(c.ok());
  EXPECT_EQ(c.kinds.at("E"), RelationKind::RegularEntity);
}

TEST(Classify, OrphanDependent) {
  const auto c = classify_relations(load_rds("invalid/orphan_dependent.rds"));
  EXPECT_FALSE(c.ok());
  EXPECT_TRUE(has_rule(c.diagnostics, rule::kUnclassifiable));
  EXPECT_EQ(c.kinds.count("Dependent"), 0u);
}

TEST(Classify, TwoUnderlinedWithForeignNameIsWeak) {
  const auto c = classify_relations(rds("Employee[_EmpNo_]\nChild[_EmpNo_, _Label_]"));
  ASSERT_TRUE(c.ok());
  EXPECT_EQ(c.kinds.at("Child"), RelationKind::WeakRel);
}

TEST(Classify, ThreeUnderlinedIsUnclassifiable) {
  const auto c = classify_relations(rds("Employee[_EmpNo_]\nOdd[_EmpNo_, _A_, _B_]"));
  EXPECT_TRUE(has_rule(c.diagnostics, rule::kUnclassifiable));
}

TEST(Classify, KeyRepeatedByLookalikeIsAmbiguous) {
  const auto c = classify_relations(rds("Emp[_EmpNo_]\nEmployee[_EmpNo_, Grade]"));
  EXPECT_TRUE(has_rule(c.diagnostics, rule::kAmbiguous));
  EXPECT_EQ(c.kinds.at("Emp"), RelationKind::RegularEntity);
  EXPECT_EQ(c.kinds.at("Employee"), RelationKind::SubtypeRel);
}

TEST(InterpretFk, Controls) {
  const auto s = load_rds("company.rds");
  const auto c = classify_relations(s);
  const Relation& project = *s.find("Project");
  const auto fk = interpret_fk(project, 3, c);
  EXPECT_EQ(fk.relationship.name, "Controls");
  EXPECT_EQ(fk.relationship.endpoints[0], (RelationshipEndpoint{"Project", {Bound::One, Bound::One}}));
  EXPECT_EQ(fk.relationship.endpoints[1], (RelationshipEndpoint{"Department", {Bound::One, Bound::Many}}));
  EXPECT_EQ(ratio_class(fk.relationship).kind, RatioClass::Kind::OneToMany);
  EXPECT_FALSE(fk.referenced_subtype);
  EXPECT_EQ(fk.attribute_count, 0u);
}

TEST(InterpretFk, ManagesNamesSubtypeFromPrefix) {
  const auto s = load_rds("company.rds");
  const auto c = classify_relations(s);
  const auto fk = interpret_fk(*s.find("Department"), 3, c);
  EXPECT_EQ(fk.relationship.name, "Manages");
  EXPECT_EQ(fk.relationship.endpoints[0].participant, "Department");
  EXPECT_EQ(fk.relationship.endpoints[1].participant, "Manager");
  EXPECT_EQ(ratio_class(fk.relationship).kind, RatioClass::Kind::OneToOne);
  ASSERT_TRUE(fk.referenced_subtype);
  EXPECT_EQ(fk.referenced_subtype->name, "Manager");
  EXPECT_EQ(fk.referenced_subtype->supertype, "Employee");
  ASSERT_EQ(fk.relationship.attributes.size(), 1u);
  EXPECT_EQ(fk.relationship.attributes[0].name, "StartDate");
}

TEST(InterpretFk, ConsultFromEngineer) {
  const auto s = load_rds("company.rds");
  const auto c = classify_relations(s);
  const auto fk = interpret_fk(*s.find("Engineer"), 2, c);
  EXPECT_EQ(fk.relationship.endpoints[0].participant, "Engineer");
  EXPECT_EQ(fk.relationship.endpoints[1].participant, "Project");
  EXPECT_EQ(fk.relationship.attributes.size(), 1u);
  EXPECT_EQ(fk.relationship.attributes[0].name, "Hours");
}

TEST(InterpretFk, AttributesStopAtNextForeignKey) {
  const auto s = load_rds("company_consult_project.rds");
  const auto c = classify_relations(s);
  const Relation& project = *s.find("Project");
  EXPECT_EQ(interpret_fk(project, 3, c).attribute_count, 0u);
  EXPECT_EQ(interpret_fk(project, 4, c).attribute_count, 1u);
}

TEST(InterpretFk, Errors) {
  const auto s = rds("Project[_ProNo_, Name, DepNo(Controls, 1, 1, n)]\nLocation[_ProNo_, _Location_]");
  const auto c = classify_relations(s);
  EXPECT_EQ(reverse_error(*s.find("Project"), 1, c), ReverseError::Code::NotForeignKey);
  EXPECT_EQ(reverse_error(*s.find("Project"), 2, c), ReverseError::Code::DanglingFk);
}

TEST(Reverse, GoldenSchemaIsNormalizedCompany) {
  const auto rev = reverse_transform(load_rds("company.rds"));
  ASSERT_TRUE(rev.ok()) << render_all(rev.diagnostics, "company.rds");
  EXPECT_EQ(model_diff(normalize(load_er("company.er")), normalize(rev.model)), std::vector<std::string>{});

  const auto* manager = rev.model.find_subtype("Manager");
  ASSERT_NE(manager, nullptr);
  EXPECT_EQ(manager->supertype, "Employee");
  EXPECT_TRUE(manager->attributes.empty());
  const auto* dep = rev.model.find_regular("Department");
  ASSERT_NE(dep, nullptr);
  EXPECT_EQ(dep->attributes.back(), (Attribute{"Location", AttributeKind::Multivalued, {}}));
  EXPECT_EQ(rev.model.find_weak("Dependent")->identifying_relationship, "DependentOf");
}

TEST(Reverse, NormalizationsAreNotes) {
  const auto rev = reverse_transform(load_rds("company.rds"));
  EXPECT_FALSE(rev.diagnostics.empty());
  bool weak_note = false;
  for (const auto& d : rev.diagnostics) {
    EXPECT_EQ(d.severity, Severity::Note);
    EXPECT_EQ(d.rule, rule::kNormalized);
    weak_note |= d.message.find("DependentOf") != std::string::npos;
  }
  EXPECT_TRUE(weak_note);
}

TEST(Reverse, RecoveredConfigPinsEveryOneToOne) {
  const auto rev = reverse_transform(load_rds("company.rds"));
  EXPECT_EQ(rev.recovered_config.sog_policy, SogPolicy::Explicit);
  const std::map<Identifier, Identifier> expected = {{"Consult", "Engineer"}, {"Manages", "Department"}};
  EXPECT_EQ(rev.recovered_config.sog_choices, expected);
  EXPECT_FALSE(rev.recovered_config.extensions);
}

TEST(Reverse, VariantReversesToSameModel) {
  const auto a = reverse_transform(load_rds("company.rds"));
  const auto b = reverse_transform(load_rds("company_consult_project.rds"));
  ASSERT_TRUE(b.ok());
  EXPECT_EQ(normalize(a.model), normalize(b.model));
  EXPECT_EQ(b.recovered_config.sog_choices.at("Consult"), "Project");
}

TEST(Reverse, SingleEntity) {
  const auto rev = reverse_transform(rds("E[_ENo_]"));
  ASSERT_TRUE(rev.ok());
  ASSERT_EQ(rev.model.regular_entities.size(), 1u);
  EXPECT_EQ(rev.model.regular_entities[0].attributes, (std::vector<Attribute>{{"ENo", AttributeKind::Key, {}}}));
  EXPECT_TRUE(rev.model.subtypes.empty());
}

TEST(Reverse, OrphanDependentFails) {
  const auto rev = reverse_transform(load_rds("invalid/orphan_dependent.rds"));
  EXPECT_FALSE(rev.ok());
  EXPECT_TRUE(has_rule(rev.diagnostics, rule::kUnclassifiable));
}

TEST(Reverse, DanglingForeignKeyFails) {
  const auto rev = reverse_transform(load_rds("invalid/dangling_fk.rds"));
  EXPECT_FALSE(rev.ok());
  EXPECT_TRUE(has_rule(rev.diagnostics, rule::kDanglingFk));
}

TEST(Reverse, ForeignKeyInWeakRelationFails) {
  const auto rev = reverse_transform(rds("Employee[_EmpNo_]\nProject[_ProNo_]\n"
                                         "Dependent[_EmpNo_, _Name_, ProNo(Works, 1, 1, n)]"));
  EXPECT_FALSE(rev.ok());
}

TEST(Reverse, RelationshipEncodedTwiceFails) {
  const auto rev = reverse_transform(rds("Employee[_EmpNo_, ProNo(Works, 1, 1, n)]\n"
                                         "Project[_ProNo_, EmpNo(Works, 1, 1, n)]"));
  EXPECT_FALSE(rev.ok());
  EXPECT_TRUE(has_rule(rev.diagnostics, rule::kDuplicate));
}

TEST(Reverse, KeyTieKeepsFirstAsDesignated) {
  const auto rev = reverse_transform(rds("Department[_DepNo_, _Name_, Field]"));
  ASSERT_TRUE(rev.ok());
  EXPECT_EQ(designated_key(rev.model.regular_entities[0]).name, "DepNo");
}
