#include <gtest/gtest.h>

#include "erdb/roundtrip.hpp"
#include "support/data.hpp"

using namespace erdb;
using namespace erdb::testing;

TEST(Normalize, SortsElementsAndOrdersAttributes) {
  const auto m = normalize(er("entity Zeta { attr Note; multi Tag; key Code; key ZetNo; }\n"
                              "entity Alpha { key AlpNo; }\n"));
  ASSERT_EQ(m.regular_entities.size(), 2u);
  EXPECT_EQ(m.regular_entities[0].name, "Alpha");
  std::vector<std::string> names;
  for (const auto& a : m.regular_entities[1].attributes) names.push_back(a.name);
  EXPECT_EQ(names, (std::vector<std::string>{"ZetNo", "Code", "Note", "Tag"}));
}

TEST(Normalize, RenamesIdentifyingRelationship) {
  const auto m = normalize(er("entity Employee { key EmpNo; }\nweak Dependent of Employee via HasDependent { partial Name; }"));
  EXPECT_EQ(m.weak_entities[0].identifying_relationship, "DependentOf");
}

TEST(Normalize, OrientsEndpoints) {
  const auto m = normalize(er("entity Department { key DepNo; }\nentity Project { key ProNo; }\n"
                              "entity Employee { key EmpNo; }\nsubtype Manager of Employee { }\n"
                              "rel Controls (Department 1..n, Project 1..1) { }\n"
                              "rel Manages (Department 1..1, Manager 1..1) { }\n"));
  EXPECT_EQ(m.find_relationship("Controls")->endpoints[0].participant, "Project");
  EXPECT_EQ(m.find_relationship("Manages")->endpoints[0].participant, "Manager");
}

TEST(Normalize, Idempotent) {
  const auto m = normalize(load_er("company.er"));
  EXPECT_EQ(normalize(m), m);
}

TEST(ModelDiff, NamesEachDifference) {
  const auto a = er("entity Employee { key EmpNo; attr Name; }\nentity Project { key ProNo; }");
  const auto b = er("entity Employee { key EmpNo; attr Salary; }\nentity Task { key TasNo; }");
  const auto d = model_diff(a, b);
  ASSERT_EQ(d.size(), 3u);
  EXPECT_NE(d[0].find("entity Employee: attributes"), std::string::npos);
  EXPECT_NE(d[1].find("entity Project: missing"), std::string::npos);
  EXPECT_NE(d[2].find("entity Task: unexpected"), std::string::npos);
  EXPECT_TRUE(model_diff(a, a).empty());
}

TEST(ModelDiff, OrderOnly) {
  const auto a = er("entity Alpha { key AlpNo; }\nentity Beta { key BetNo; }");
  const auto b = er("entity Beta { key BetNo; }\nentity Alpha { key AlpNo; }");
  EXPECT_EQ(model_diff(a, b), std::vector<std::string>{"- declaration order differs"});
}

TEST(SogConfigurations, Company) {
  const auto configs = sog_configurations(load_er("company.er"));
  ASSERT_EQ(configs.size(), 6u);
  EXPECT_EQ(configs[0].sog_policy, SogPolicy::PreferSubtypeRelation);
  EXPECT_EQ(configs[1].sog_policy, SogPolicy::PreferRegularRelation);
  for (std::size_t i = 2; i < configs.size(); ++i) EXPECT_EQ(configs[i].sog_choices.size(), 2u);
}

TEST(SogConfigurations, NoOneToOne) {
  EXPECT_EQ(sog_configurations(er("entity E { key ENo; }")).size(), 3u);
}

TEST(RoundTrip, CompanyUnderEveryChoice) {
  const auto m = load_er("company.er");
  for (const auto& cfg : sog_configurations(m)) {
    const auto r = roundtrip_check(m, cfg);
    EXPECT_TRUE(r.ok) << r.differences.size();
    EXPECT_EQ(r.forward_text, r.second_text);
  }
  EXPECT_EQ(roundtrip_check(m).forward_text, read_data("company.rds"));
}

TEST(RoundTrip, OutsideSubsetIsReportedNotThrown) {
  const auto r = roundtrip_check(load_er("invalid/subset_many_to_many.er"));
  EXPECT_FALSE(r.ok);
  EXPECT_FALSE(r.differences.empty());
  ASSERT_FALSE(r.diagnostics.empty());
  EXPECT_EQ(r.diagnostics[0].rule, "SUBSET");
}

TEST(RoundTrip, CollisionIsReportedNotThrown) {
  auto m = load_er("company.er");
  // Controls' attribute lands in Project next to Project's own Name.
  for (auto& r : m.relationships) {
    if (r.name == "Controls") r.attributes.push_back({"Name", AttributeKind::Simple, {}});
  }
  const auto r = roundtrip_check(m);
  EXPECT_FALSE(r.ok);
  EXPECT_FALSE(r.differences.empty());
}

TEST(RoundTrip, RenamedIdentifyingRelationshipStillPasses) {
  auto m = load_er("company.er");
  m.weak_entities[0].identifying_relationship = "Supports";
  EXPECT_TRUE(roundtrip_check(m).ok);
}
