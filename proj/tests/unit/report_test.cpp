#include <gtest/gtest.h>

#include "common.hpp"
#include "report.hpp"

#ifndef CHANRES_CLI
#error "CHANRES_CLI must name the chanres executable"
#endif

namespace chanres {
namespace {

using cli::Json;
using testing::W;

TEST(Report, FnvKnownValues) {
  EXPECT_EQ(cli::fnv1a64(""), "cbf29ce484222325");
  EXPECT_EQ(cli::fnv1a64("a"), "af63dc4c8601ec8c");
}

TEST(Report, VerdictFieldsInOrder) {
  RestrictionVerdict v{Property::ExistBounded, true, 1, true, W("P>Q!m P>Q?m"), ""};
  EXPECT_EQ(cli::verdict_json(v).dump(),
            R"({"property":"existentially-bounded","holds":true,"parameter":1,"bounded_claim":true,)"
            R"("witness":{"type":"trace","word":"P>Q!m P>Q?m"},"note":""})");
  const Pumping p{Lasso{{}, W("P>Q!m")}, Channel{"P", "Q"}, 1};
  EXPECT_EQ(cli::witness_json(p)["lasso"], "(ε)(P>Q!m)^ω");
  EXPECT_TRUE(cli::witness_json(std::monostate{}).is_null());
}

struct Cli {
  int exit_code;
  Json report;
};

Cli run(const std::string& args) {
  const auto r = testing::run_command(std::string(CHANRES_CLI) + " " + args);
  return {r.exit_code, Json::parse(r.out)};
}

std::string fixture(const char* name) { return testing::fixture_path(name); }

TEST(Cli, CheckExitCodes) {
  const auto hd = run("check --property hd " + fixture("h2.bmsc"));
  EXPECT_EQ(hd.exit_code, 1);
  EXPECT_EQ(hd.report["verdicts"][0]["witness"]["type"], "crossing-pair");
  const auto k3 = run("check --property ksync --k 3 " + fixture("h5.bmsc"));
  EXPECT_EQ(k3.exit_code, 0);
  EXPECT_EQ(k3.report["verdicts"][0]["witness"]["type"], "segments");
  EXPECT_EQ(k3.report["bounds"]["k"], 3);
  const auto exb = run("check --property exb --max-b 4 " + fixture("c5.csm"));
  EXPECT_EQ(exb.exit_code, 1);
  EXPECT_EQ(exb.report["verdicts"][0]["witness"]["type"], "pumping");
  EXPECT_EQ(run("check --property hd " + fixture("stream.csm")).exit_code, 2);
}

TEST(Cli, BoundsAreRecorded) {
  const auto r = run("classify " + fixture("stream.csm"));
  EXPECT_EQ(r.exit_code, 0);
  const auto& b = r.report["bounds"];
  EXPECT_EQ(b["depth"], 12);
  EXPECT_EQ(b["cap"], 6);
  EXPECT_EQ(b["max_len"], 12);
  EXPECT_EQ(b["max_b"], "sends");
  EXPECT_EQ(b["unroll"], 3);
  EXPECT_EQ(r.report["input"]["kind"], "csm");
}

TEST(Cli, InputErrors) {
  const auto missing = run("classify /nonexistent/x.bmsc");
  EXPECT_EQ(missing.exit_code, 3);
  EXPECT_TRUE(missing.report.contains("error"));
  const auto bad = run("closure --word 'P>Q#m'");
  EXPECT_EQ(bad.exit_code, 3);
  const auto syntax = run("lang --kind gt " + fixture("h2.bmsc"));
  EXPECT_EQ(syntax.exit_code, 3);
  EXPECT_EQ(syntax.report["error"]["kind"], "parse");
  EXPECT_TRUE(syntax.report["error"].contains("line"));
}

TEST(Cli, KindOverride) {
  const auto r = run("classify --kind hmsc " + fixture("stream.hmsc"));
  EXPECT_EQ(r.report["input"]["kind"], "hmsc");
  EXPECT_EQ(run("validate " + fixture("h7.hmsc")).report["valid"], true);
}

TEST(Cli, LanguageAndClosure) {
  const auto lang = run("lang --max-len 8 " + fixture("stream.gt"));
  EXPECT_EQ(lang.exit_code, 0);
  EXPECT_EQ(lang.report["count"], 3);
  const auto cl = run("closure --word 'P>Q!m1 P>Q?m1 R>S!m2 R>S?m2'");
  EXPECT_EQ(cl.report["count"], 6);
  const auto tr = run("translate --verify --max-len 10 " + fixture("two_pairs.gt"));
  EXPECT_EQ(tr.exit_code, 0);
  EXPECT_EQ(tr.report["verification"]["inclusion"], true);
  EXPECT_EQ(tr.report["verification"]["closure_equal"], true);
}

TEST(Cli, ExploreReportsDeadlocks) {
  const auto r = run("explore --depth 8 --cap 4 " + fixture("stream.csm"));
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_TRUE(r.report["deadlock"].is_null());
  EXPECT_FALSE(r.report["exploration"]["maximal"].empty());
}

}  // namespace
}  // namespace chanres
