#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <sstream>

#include "h31cert/cli.hpp"
#include "support.hpp"

using namespace h31cert;

namespace {

struct CliRun {
  int code = 0;
  std::string out;
  std::string err;
};

CliRun run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "h31cert");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  CliRun r;
  r.code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("h31cert_" + name)).string();
}

}  // namespace

TEST(Cli, SeriesRevert) {
  CliRun r = run_cli({"series", "revert", "1,0,1/2,0,3/8"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("1,0,-1/2,0,3/8"), std::string::npos);
  Json j = Json::parse(run_cli({"series", "revert", "1,0,1/2,0,3/8", "--format", "json"}).out);
  EXPECT_EQ(j.at("result"), "1,0,-1/2,0,3/8");
}

TEST(Cli, SeriesHankelAndCompose) {
  Json h = Json::parse(run_cli({"series", "hankel", "1,0,-1/2,0,3/8", "--format", "json"}).out);
  EXPECT_EQ(h.at("result"), "-1/16");
  Json c = Json::parse(run_cli({"series", "compose", "1,1,0,0", "1,1,0,0", "--format", "json"}).out);
  EXPECT_EQ(c.at("result"), "1,2,2,1");
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run_cli({"series", "revert", "1,2", "--bogus"}).code, cli::kUsageExit);
  EXPECT_EQ(run_cli({}).code, cli::kUsageExit);
  EXPECT_EQ(run_cli({"series", "revert", "2,1"}).code, cli::kUsageExit);
  EXPECT_EQ(run_cli({"prove", "lemma", "9.9"}).code, cli::kUsageExit);
  EXPECT_EQ(run_cli({"scan", "--count", "0"}).code, cli::kUsageExit);
  EXPECT_EQ(run_cli({"map", "lz", "3", "0", "0", "0"}).code, cli::kUsageExit);
  EXPECT_EQ(run_cli({"--help"}).code, 0);
}

TEST(Cli, Maps) {
  Json lz = Json::parse(run_cli({"map", "lz", "0", "1", "1/2", "i", "--format", "json"}).out);
  EXPECT_EQ(lz.at("result"), "0,2,0,2");
  Json h = Json::parse(run_cli({"map", "h31", "2,2,2,2", "--format", "json"}).out);
  EXPECT_EQ(h.at("h31"), "1/64");
  EXPECT_EQ(h.at("identity"), true);
  Json f = Json::parse(run_cli({"map", "c2f", "2,2,2,2", "--format", "json"}).out);
  EXPECT_EQ(f.at("result").get<std::string>().substr(0, 6), "1,3/2,");
}

TEST(Cli, ProveTheoremJson) {
  CliRun r = run_cli({"prove", "theorem", "--format", "json"});
  EXPECT_EQ(r.code, 0);
  Json j = Json::parse(r.out);
  EXPECT_EQ(j.at("status"), "proved");
  EXPECT_EQ(j.at("bound"), "1/16");
}

TEST(Cli, ProveExitCodes) {
  EXPECT_EQ(run_cli({"prove", "lemma", "1.2a"}).code, 0);
  EXPECT_EQ(run_cli({"prove", "lemma", "1.4", "--invert", "1.4"}).code, 1);
  EXPECT_EQ(run_cli({"prove", "lemma", "1.3", "--depth-budget", "0"}).code, 2);
  CliRun p = run_cli({"prove", "lemma", "1.2e", "--perturb", "1.2e=c + 1"});
  EXPECT_EQ(p.code, 1);
}

TEST(Cli, Sharpness) {
  CliRun r = run_cli({"sharpness"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("-1/16"), std::string::npos);
}

TEST(Cli, Scan) {
  CliRun r = run_cli({"scan", "--count", "50", "--seed", "3", "--format", "json"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(Json::parse(r.out).at("all_bounded"), true);
}

TEST(Cli, ExpandMatchesTheta) {
  CliRun r = run_cli({"expand", "--format", "json"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(Json::parse(r.out).at("matches_theta"), true);
}

TEST(Cli, CertificateRoundTrip) {
  std::string path = temp_path("lemma18.json");
  ASSERT_EQ(run_cli({"prove", "lemma", "1.8", "--format", "json", "--out", path}).code, 0);
  CliRun v = run_cli({"cert", "verify", path, "--format", "json"});
  EXPECT_EQ(v.code, 0);
  Json j = Json::parse(v.out);
  EXPECT_EQ(j.at("consistent"), true);
  EXPECT_EQ(j.at("replayed"), "proved");
  EXPECT_EQ(run_cli({"cert", "show", path}).code, 0);
  std::remove(path.c_str());
  EXPECT_EQ(run_cli({"cert", "verify", path}).code, cli::kUsageExit);
}
