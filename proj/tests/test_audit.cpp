#include <gtest/gtest.h>

#include <json.hpp>
#include <set>

#include "ballred/audit.hpp"

using namespace ballred;

TEST(AuditDimension, AllChecksPassN3) {
  const VerificationReport rep = audit_dimension(3);
  EXPECT_TRUE(rep.all_passed);
  for (const auto& c : rep.checks) {
    EXPECT_TRUE(c.passed) << c.name;
    if (!c.skipped) EXPECT_GT(c.margin, 0.0) << c.name;
  }
}

TEST(AuditDimension, FrozenMarginsN3) {
  const VerificationReport rep = audit_dimension(3);
  for (const auto& c : rep.checks) {
    if (c.name == "one") {
      EXPECT_NEAR(c.lhs, -2.2714, 1e-4);
      EXPECT_GT(c.margin, 2.0);
    }
    if (c.name == "two") EXPECT_NEAR(c.lhs, -1.1652, 1e-4);
    if (c.name == "mum") EXPECT_NEAR(c.lhs, 0.39716, 1e-5);
    if (c.name == "m-rhobar") EXPECT_NEAR(c.lhs, -0.20611, 1e-5);
  }
}

TEST(AuditDimension, ExactRationalCheckN4) {
  // alpha(1/2) = 319/225 < beta^2(1/2) = 9 at N = 4
  const VerificationReport rep = audit_dimension(4);
  bool seen = false;
  for (const auto& c : rep.checks) {
    if (c.name == "first") {
      seen = true;
      EXPECT_FALSE(c.skipped);
      EXPECT_NEAR(c.lhs, 319.0 / 225.0, 1e-13);
      EXPECT_NEAR(c.rhs, 9.0, 1e-13);
      EXPECT_TRUE(c.passed);
    }
  }
  EXPECT_TRUE(seen);
}

TEST(AuditDimension, TwoTailProbeN7) {
  // 5 rb^2 - 2 + 7 rb / 2^{N-1} < 0 at N = 7
  const VerificationReport rep = audit_dimension(7);
  for (const auto& c : rep.checks) {
    if (c.name == "two-tail") {
      EXPECT_FALSE(c.skipped);
      const double rb = kRhoBar;
      EXPECT_NEAR(c.lhs, 5.0 * rb * rb - 2.0 + 7.0 * rb / 64.0, 1e-14);
      EXPECT_LT(c.lhs, 0.0);
      EXPECT_TRUE(c.passed);
    }
  }
}

TEST(AuditDimension, DimensionGuardsRecordSkips) {
  const VerificationReport rep3 = audit_dimension(3);
  std::set<std::string> skipped3;
  for (const auto& c : rep3.checks)
    if (c.skipped) skipped3.insert(c.name);
  EXPECT_EQ(skipped3,
            (std::set<std::string>{"first", "first-aux", "sob", "two-tail", "an3", "an1"}));

  const VerificationReport rep5 = audit_dimension(5);
  std::set<std::string> skipped5;
  for (const auto& c : rep5.checks)
    if (c.skipped) skipped5.insert(c.name);
  EXPECT_EQ(skipped5, (std::set<std::string>{"two-tail", "an3", "an1"}));

  const VerificationReport rep7 = audit_dimension(7);
  for (const auto& c : rep7.checks) EXPECT_FALSE(c.skipped) << c.name;
}

TEST(AuditDimension, CoverageExactlyOncePerDimension) {
  const auto expected = audit_check_names();
  for (int dim : {3, 6, 12}) {
    const VerificationReport rep = audit_dimension(dim);
    ASSERT_EQ(rep.checks.size(), expected.size());
    for (std::size_t k = 0; k < expected.size(); ++k) {
      EXPECT_EQ(rep.checks[k].name, expected[k]);
      EXPECT_EQ(rep.checks[k].dimension, dim);
    }
  }
}

TEST(AuditDimension, MeshRefinementNeverFlipsPassToFail) {
  for (int dim : {3, 9}) {
    const VerificationReport coarse = audit_dimension(dim, 1000);
    const VerificationReport fine = audit_dimension(dim, 10000);
    ASSERT_EQ(coarse.checks.size(), fine.checks.size());
    for (std::size_t k = 0; k < coarse.checks.size(); ++k) {
      if (coarse.checks[k].passed) EXPECT_TRUE(fine.checks[k].passed) << coarse.checks[k].name;
    }
  }
}

TEST(AuditDimension, WitnessReportedForMeshChecks) {
  const VerificationReport rep = audit_dimension(6);
  for (const auto& c : rep.checks) {
    if (c.skipped) continue;
    if (c.name == "ineq" || c.name == "an0" || c.name == "14" || c.name == "pa3" ||
        c.name == "emme-poly" || c.name == "limiti-lower" || c.name == "limiti-upper") {
      ASSERT_TRUE(c.witness.has_value()) << c.name;
    }
  }
}

TEST(AuditRange, FullSweepPasses) {
  const VerificationReport rep = audit_range(3, 20);
  EXPECT_TRUE(rep.all_passed);
  EXPECT_EQ(rep.dimension_range.first, 3);
  EXPECT_EQ(rep.dimension_range.second, 20);
  EXPECT_EQ(rep.checks.size(), audit_check_names().size() * 18);
  // dimensions appear in order
  int prev = 2;
  for (const auto& c : rep.checks) {
    EXPECT_GE(c.dimension, prev);
    prev = std::max(prev, c.dimension);
  }
}

TEST(AuditRange, SingleDimensionSliceMatches) {
  const VerificationReport a = audit_range(4, 4);
  const VerificationReport b = audit_dimension(4);
  ASSERT_EQ(a.checks.size(), b.checks.size());
  for (std::size_t k = 0; k < a.checks.size(); ++k) {
    EXPECT_EQ(a.checks[k].name, b.checks[k].name);
    EXPECT_EQ(a.checks[k].lhs, b.checks[k].lhs);
    EXPECT_EQ(a.checks[k].margin, b.checks[k].margin);
  }
}

TEST(EmitReport, JsonSchemaAndRoundTrip) {
  const VerificationReport rep = audit_dimension(3);
  const std::string json = emit_report(rep, ReportFormat::JSON);
  const auto parsed = nlohmann::json::parse(json);
  ASSERT_TRUE(parsed.contains("dimension_range"));
  ASSERT_TRUE(parsed.contains("all_passed"));
  ASSERT_TRUE(parsed.contains("checks"));
  ASSERT_TRUE(parsed.contains("runtime_ms"));
  EXPECT_EQ(parsed["dimension_range"][0], 3);
  EXPECT_EQ(parsed["dimension_range"][1], 3);
  EXPECT_EQ(parsed["all_passed"], rep.all_passed);
  ASSERT_EQ(parsed["checks"].size(), rep.checks.size());
  for (std::size_t k = 0; k < rep.checks.size(); ++k) {
    const auto& jc = parsed["checks"][k];
    const auto& c = rep.checks[k];
    EXPECT_EQ(jc["name"], c.name);
    EXPECT_EQ(jc["dimension"], c.dimension);
    EXPECT_EQ(jc["relation"], to_string(c.relation));
    EXPECT_EQ(jc["passed"], c.passed);
    // 17-significant-digit round trip is exact
    EXPECT_EQ(jc["lhs"].get<double>(), c.lhs);
    EXPECT_EQ(jc["rhs"].get<double>(), c.rhs);
    EXPECT_EQ(jc["margin"].get<double>(), c.margin);
    EXPECT_EQ(jc.contains("witness"), c.witness.has_value());
    if (c.witness) EXPECT_EQ(jc["witness"].get<double>(), *c.witness);
  }
}

TEST(EmitReport, EmptyAndFailingReports) {
  VerificationReport rep;
  rep.dimension_range = {5, 5};
  EXPECT_EQ(nlohmann::json::parse(emit_report(rep, ReportFormat::JSON))["checks"].size(), 0u);

  InequalityCheck bad;
  bad.name = "synthetic";
  bad.dimension = 5;
  bad.lhs = 1.0;
  bad.rhs = 0.0;
  bad.relation = Relation::LT;
  bad.margin = -1.0;
  bad.passed = false;
  rep.checks.push_back(bad);
  rep.all_passed = false;
  const auto parsed = nlohmann::json::parse(emit_report(rep, ReportFormat::JSON));
  EXPECT_FALSE(parsed["all_passed"].get<bool>());
  const std::string text = emit_report(rep, ReportFormat::TEXT);
  EXPECT_NE(text.find("FAIL"), std::string::npos);
}

TEST(EmitReport, TextFormatListsEveryCheck) {
  const VerificationReport rep = audit_dimension(3);
  const std::string text = emit_report(rep, ReportFormat::TEXT);
  for (const auto& c : rep.checks) EXPECT_NE(text.find(c.name), std::string::npos);
  EXPECT_NE(text.find("ALL PASSED"), std::string::npos);
}

TEST(Audit, RuntimeBudget) {
  const VerificationReport rep = audit_range(3, 20);
  EXPECT_LT(rep.runtime_ms, 10000);
}
