#include <gtest/gtest.h>

#include "erdb/model.hpp"

using namespace erdb;

namespace {

RelationshipType rel(const char* name, CardinalityPair a, CardinalityPair b) {
  return {name, {{{"A", a}, {"B", b}}}, {}, {}};
}

constexpr CardinalityPair kOneOne{Bound::One, Bound::One};
constexpr CardinalityPair kOneMany{Bound::One, Bound::Many};

Attribute key(const char* n) { return {n, AttributeKind::Key, {}}; }
Attribute simple(const char* n) { return {n, AttributeKind::Simple, {}}; }

}  // namespace

TEST(RatioClass, ControlsIsOneToManyWithProjectOnNSide) {
  RelationshipType controls{"Controls", {{{"Department", kOneMany}, {"Project", kOneOne}}}, {}, {}};
  const auto c = ratio_class(controls);
  EXPECT_EQ(c.kind, RatioClass::Kind::OneToMany);
  EXPECT_EQ(controls.endpoints[c.n_side].participant, "Project");
}

TEST(RatioClass, ManagesIsOneToOne) {
  EXPECT_EQ(ratio_class(rel("Manages", kOneOne, kOneOne)).kind, RatioClass::Kind::OneToOne);
}

TEST(RatioClass, BothManyIsManyToMany) {
  EXPECT_EQ(ratio_class(rel("R", kOneMany, {Bound::Zero, Bound::Many})).kind, RatioClass::Kind::ManyToMany);
}

TEST(RatioClass, MinimaDoNotMatter) {
  const auto c = ratio_class(rel("R", {Bound::Zero, Bound::One}, {Bound::Zero, Bound::Many}));
  EXPECT_EQ(c.kind, RatioClass::Kind::OneToMany);
  EXPECT_EQ(c.n_side, 0u);
}

TEST(DesignatedKey, Employee) {
  RegularEntityType e{"Employee", {key("EmpNo"), simple("Name"), simple("Address"), simple("Salary")}, {}};
  EXPECT_EQ(designated_key(e).name, "EmpNo");
}

TEST(DesignatedKey, DepartmentPicksDepNoOverName) {
  RegularEntityType e{"Department", {key("DepNo"), key("Name"), simple("Field")}, {}};
  EXPECT_EQ(designated_key(e).name, "DepNo");
}

TEST(DesignatedKey, LaterInDeclarationOrderStillFound) {
  RegularEntityType e{"Department", {key("Name"), key("DepNo")}, {}};
  EXPECT_EQ(designated_key(e).name, "DepNo");
}

TEST(DesignatedKey, TieTakesFirst) {
  RegularEntityType e{"Employee", {key("EmpNo"), key("EmpCode")}, {}};
  EXPECT_EQ(designated_key(e).name, "EmpNo");
  EXPECT_EQ(designated_key_candidates(e).size(), 2u);
}

TEST(DesignatedKey, NoMatchingKeyThrows) {
  RegularEntityType e{"Project", {key("Name")}, {}};
  try {
    designated_key(e);
    FAIL() << "expected ModelError";
  } catch (const ModelError& err) {
    EXPECT_EQ(err.code(), ModelError::Code::NoDesignatedKey);
  }
}

TEST(DesignatedKey, SimpleAttributeNeverQualifies) {
  RegularEntityType e{"Project", {key("Name"), simple("ProNo")}, {}};
  EXPECT_THROW(designated_key(e), ModelError);
}

TEST(Names, PrefixComparisonIgnoresCase) {
  EXPECT_TRUE(shares_name_prefix("Employee", "EMPNO"));
  EXPECT_TRUE(shares_name_prefix("employee", "EmpNo"));
  EXPECT_FALSE(shares_name_prefix("Employee", "SSN"));
  EXPECT_FALSE(shares_name_prefix("Employee", "Em"));
}

TEST(Names, ShortEntityNamesCompareOverTheirLength) {
  EXPECT_TRUE(shares_name_prefix("E", "ENo"));
  EXPECT_TRUE(shares_name_prefix("Ab", "AbKey"));
  EXPECT_FALSE(shares_name_prefix("E", "XNo"));
}

TEST(Names, CharacterClass) {
  EXPECT_TRUE(is_alphabetic("StartDate"));
  EXPECT_FALSE(is_alphabetic("Start_Date"));
  EXPECT_FALSE(is_alphabetic("Start-Date"));
  EXPECT_FALSE(is_alphabetic("Date2"));
  EXPECT_FALSE(is_alphabetic(""));
  EXPECT_TRUE(starts_uppercase("Employee"));
  EXPECT_FALSE(starts_uppercase("employee"));
}

TEST(CardinalityPair, Validity) {
  EXPECT_TRUE(is_valid({Bound::Zero, Bound::One}));
  EXPECT_TRUE(is_valid({Bound::One, Bound::Many}));
  EXPECT_FALSE(is_valid({Bound::Many, Bound::Many}));
  EXPECT_FALSE(is_valid({Bound::One, Bound::Zero}));
}

TEST(ERModel, LookupsAndRelationshipsOf) {
  ERModel m;
  m.regular_entities.push_back({"Employee", {key("EmpNo")}, {}});
  m.subtypes.push_back({"Manager", "Employee", {}, {}});
  m.relationships.push_back({"Manages", {{{"Manager", kOneOne}, {"Employee", kOneOne}}}, {}, {}});
  EXPECT_TRUE(m.is_regular("Employee"));
  EXPECT_TRUE(m.is_subtype("Manager"));
  EXPECT_FALSE(m.is_regular("Manager"));
  EXPECT_EQ(m.relationships_of("Manager").size(), 1u);
  EXPECT_TRUE(m.relationships_of("Nobody").empty());
}

TEST(RdsAttribute, QualifiedName) {
  RdsAttribute a{"EmpNo", false, "Manager", FkSuffix{"Manages", Bound::One, Bound::One, Bound::One}};
  EXPECT_EQ(a.qualified_name(), "Manager-EmpNo");
  EXPECT_TRUE(a.is_foreign_key());
  EXPECT_EQ(RdsAttribute{"EmpNo"}.qualified_name(), "EmpNo");
}

TEST(RelationInvariants, CleanRelationHasNone) {
  Relation r{"Department", {{"DepNo", true}, {"Name", true}, {"Field"}}};
  EXPECT_TRUE(invariant_violations(r).empty());
  EXPECT_EQ(r.underlined_count(), 2u);
}

TEST(RelationInvariants, PrefixWithoutSuffix) {
  Relation r{"Department", {{"DepNo", true}, {"EmpNo", false, "Manager", std::nullopt}}};
  EXPECT_EQ(invariant_violations(r).size(), 1u);
}

TEST(RelationInvariants, UnderlinedWithSuffix) {
  Relation r{"X", {{"A", true, std::nullopt, FkSuffix{"R"}}}};
  EXPECT_FALSE(invariant_violations(r).empty());
}

TEST(RelationInvariants, NoKeyAndDuplicates) {
  EXPECT_FALSE(invariant_violations(Relation{"X", {{"A"}}}).empty());
  EXPECT_FALSE(invariant_violations(Relation{"X", {}}).empty());
  EXPECT_FALSE(invariant_violations(Relation{"X", {{"A", true}, {"A"}}}).empty());
  // Prefix distinguishes otherwise equal names.
  Relation ok{"X", {{"EmpNo", true}, {"EmpNo", false, "Manager", FkSuffix{"R"}}}};
  EXPECT_TRUE(invariant_violations(ok).empty());
}

TEST(SchemaInvariants, DuplicateRelationNames) {
  RelationalSchema s{{{"E", {{"ENo", true}}}, {"E", {{"ENo", true}}}}};
  EXPECT_FALSE(invariant_violations(s).empty());
  EXPECT_EQ(s.index_of("E"), 0u);
  EXPECT_FALSE(s.index_of("F").has_value());
}

TEST(SourceLoc, IgnoredByEquality) {
  Attribute a{"Name", AttributeKind::Simple, {3, 4}};
  Attribute b{"Name", AttributeKind::Simple, {9, 1}};
  EXPECT_EQ(a, b);
}
