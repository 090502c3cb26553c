#include "wallcross/cli.hpp"

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include <sstream>

using namespace wallcross;
using nlohmann::json;

namespace {

RunConfig base(const std::string& command) {
  RunConfig c;
  c.command = command;
  c.seed = 7;
  return c;
}

json report_of(const RunResult& r) { return json::parse(r.report); }

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

}  // namespace

TEST(Cli, DegreeReport) {
  auto c = base("degree");
  c.manifold = "hyperquadric:2";
  c.map = "f0";
  const auto r = run(c);
  ASSERT_EQ(r.exit_code, 0) << r.report;
  const auto j = report_of(r);
  EXPECT_EQ(j["degree"], 2);
  EXPECT_EQ(j["tool_version"], "1.0.0");
  EXPECT_EQ(j["config"]["seed"], 7);
  EXPECT_TRUE(j["tolerances"].contains("wall_tol"));
  ASSERT_FALSE(j["checks"].empty());
  EXPECT_TRUE(j["checks"][0]["pass"].get<bool>());
}

TEST(Cli, InlineMatrixAndDeterminism) {
  auto c = base("degree");
  c.manifold = "hyperquadric:3";
  c.map = "[[0,1,0,0],[0,0,1,0],[0,0,0,-1]]";
  const auto a = run(c);
  const auto b = run(c);
  ASSERT_EQ(a.exit_code, 0) << a.report;
  EXPECT_EQ(report_of(a)["degree"], -2);
  EXPECT_EQ(a.report, b.report);
}

TEST(Cli, ExitCodes) {
  auto c = base("degree");
  c.manifold = "hyperquadric:2";
  c.map = "f0";
  c.seed.reset();
  auto r = run(c);
  EXPECT_EQ(r.exit_code, 1);
  EXPECT_EQ(report_of(r)["error"]["kind"], "invalid_input");

  c = base("degree");
  c.manifold = "sphere:2";
  c.map = "f0";
  EXPECT_EQ(run(c).exit_code, 1);

  c = base("degree");
  c.manifold = "veronese:2";
  c.map = "[[0,1,0],[0,0,1]]";
  r = run(c);
  EXPECT_EQ(r.exit_code, 1);
  EXPECT_NE(report_of(r)["error"]["message"].get<std::string>().find("wall point"), std::string::npos);

  c = base("degree");
  c.manifold = "hyperquadric:2";
  c.map = "f0";
  c.format = "xml";
  EXPECT_EQ(run(c).exit_code, 1);

  c = base("bogus");
  EXPECT_EQ(run(c).exit_code, 1);
}

TEST(Cli, WallReport) {
  auto c = base("wall");
  c.manifold = "veronese:3";
  c.map = "[[0,1,-1,0],[0,0,1,-1]]";
  const auto j = report_of(run(c));
  EXPECT_TRUE(j["wall"]["on_wall"].get<bool>());
  EXPECT_EQ(j["wall"]["reason"], "multiple-intersections");
}

TEST(Cli, TrackWithPlotAndCsv) {
  auto c = base("track");
  c.manifold = "hyperquadric:2";
  c.from = "f0";
  c.to = "f1";
  const auto r = run(c);
  ASSERT_EQ(r.exit_code, 0) << r.report;
  const auto j = report_of(r);
  EXPECT_EQ(j["delta"], -2);
  ASSERT_EQ(j["crossings"].size(), 1u);
  EXPECT_NEAR(j["crossings"][0]["t"].get<double>(), 0.4401370385, 1e-8);
  const auto plot = lines(r.plot);
  EXPECT_EQ(plot.front(), "t,degree");
  EXPECT_EQ(plot[1], "0,2");
  EXPECT_EQ(plot.back(), "1,0");
  c.format = "csv";
  const auto csv = lines(run(c).report);
  EXPECT_EQ(csv.front(), "t,sign,regular,transversal,chart,point");
  EXPECT_EQ(csv.size(), 2u);
}

TEST(Cli, BrockettSingleAndScan) {
  auto c = base("brockett");
  c.p_coeffs = "0,0";
  c.q_coeffs = "1,0";
  auto r = run(c);
  ASSERT_EQ(r.exit_code, 0) << r.report;
  EXPECT_EQ(report_of(r)["degree"], 0);

  c = base("brockett");
  c.n = 3;
  c.pairs = 60;
  r = run(c);
  ASSERT_EQ(r.exit_code, 0) << r.report;
  const auto j = report_of(r);
  for (const auto& [k, v] : j["scans"][0]["histogram"].items()) EXPECT_EQ(std::abs(std::stoi(k)) % 2, 1);

  c = base("brockett");
  c.p_coeffs = "1/2";
  c.q_coeffs = "1/2";
  EXPECT_EQ(run(c).exit_code, 1);
}

TEST(Cli, WronskiAndPolePlacement) {
  auto c = base("wronski");
  c.p = 2;
  c.q = 3;
  c.real_degree = false;
  auto j = report_of(run(c));
  EXPECT_EQ(j["eg_count"], "1");
  EXPECT_EQ(j["complex_degree"], "5");
  EXPECT_EQ(j["operator"].size(), 7u);

  c = base("wronski");
  c.p = 1;
  c.q = 2;
  auto r = run(c);
  ASSERT_EQ(r.exit_code, 0) << r.report;
  EXPECT_EQ(std::abs(report_of(r)["degree"].get<int>()), 1);

  c = base("poleplace");
  c.p = 1;
  c.q = 2;
  c.datum = "random";
  c.samples = 30;
  r = run(c);
  ASSERT_EQ(r.exit_code, 0) << r.report;
  EXPECT_LE(report_of(r)["max_projective_distance"].get<double>(), 1e-10);

  c.datum = "@" WALLCROSS_TEST_DATA "/wronski12.json";
  EXPECT_EQ(run(c).exit_code, 0);
}

TEST(Cli, SubspaceWithGivenPoints) {
  auto c = base("subspace");
  c.p = 1;
  c.q = 2;
  c.points = "-1,1/2";
  auto r = run(c);
  ASSERT_EQ(r.exit_code, 0) << r.report;
  const auto j = report_of(r);
  EXPECT_EQ(j["runs"][0]["solutions"].size(), 1u);
  c.points = "1,1";
  EXPECT_EQ(run(c).exit_code, 1);
}

TEST(Cli, MatrixParsing) {
  EXPECT_EQ(parse_matrix("1 2; 3/4 5").size(), 2u);
  EXPECT_EQ(parse_matrix("[[1,2],[3,4]]")[1][0], Rational(3));
  EXPECT_THROW(parse_matrix("[[1,2],[3]]"), Error);
  EXPECT_THROW(parse_matrix("[[1,2]"), Error);
  EXPECT_THROW(parse_matrix(""), Error);
}
