#include <gtest/gtest.h>

#include "relcheck/errors.hpp"
#include "relcheck/suites.hpp"

using namespace relcheck;

TEST(Report, EmptyReportJson) {
  Report r("empty", 3);
  std::string json = render_json(r);
  Report back = parse_report_json(json);
  EXPECT_EQ(back.suite, "empty");
  EXPECT_EQ(back.seed, 3u);
  EXPECT_TRUE(back.checks.empty());
  EXPECT_TRUE(r.passed());
}

TEST(Report, InfoDoesNotFail) {
  Report r("x");
  r.info("note", "plumbing", "1");
  EXPECT_TRUE(r.passed());
  r.expect("bad", "plumbing", false, "2");
  EXPECT_FALSE(r.passed());
}

TEST(Report, JsonRoundTripWithWitness) {
  Report r("x", 9);
  r.expect_zero("zero", "plumbing", Expr(0));
  Check& c = r.expect("bad", "plumbing", false, "x1 - 1/2");
  c.witness = Witness{{"x1", "1/3"}};
  c.ms = 17;
  Report back = parse_report_json(render_json(r, true));
  EXPECT_EQ(render_json(back, true), render_json(r, true));
  EXPECT_NE(render_json(r).find("\"ms\": 0"), std::string::npos);
}

TEST(Suites, SameSeedSameJson) {
  SuiteOptions options;
  options.seed = 42;
  EXPECT_EQ(render_json(run_suite("frozen", options)), render_json(run_suite("frozen", options)));
  options.mass = "3";
  EXPECT_EQ(render_json(run_suite("jacobi", options)), render_json(run_suite("jacobi", options)));
}

TEST(Suites, SeedIsEchoed) {
  SuiteOptions options;
  options.seed = 1234;
  EXPECT_EQ(run_suite("algebra", options).seed, 1234u);
}

TEST(Suites, InvalidRequests) {
  SuiteOptions options;
  EXPECT_THROW(run_suite("nonsense", options), DomainError);
  options.mass = "-1";
  EXPECT_THROW(run_suite("jacobi", options), DomainError);
  options.mass = "abc";
  EXPECT_THROW(run_suite("jacobi", options), DomainError);
  options.mass = "1";
  options.signature = "++";
  EXPECT_THROW(run_suite("lagrangian", options), DomainError);
}

TEST(Suites, AlgebraPasses) {
  SuiteOptions options;
  EXPECT_TRUE(run_suite("algebra", options).passed());
}

TEST(Suites, InteractionFails) {
  SuiteOptions options;
  options.f = "1";
  Report r = run_suite("instant-form", options);
  EXPECT_FALSE(r.passed());
  EXPECT_NE(render_text(r).find("at {"), std::string::npos);
}
