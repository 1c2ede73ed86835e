#include <gtest/gtest.h>

#include "h31cert/proof_driver.hpp"
#include "support.hpp"

using namespace h31cert;
using h31test::q;

namespace {

const Json& theorem_json() {
  static const Json j = prove_theorem();
  return j;
}

}  // namespace

TEST(Lemmas, AllProved) {
  ProofSession s;
  for (const auto& id : lemma_ids()) {
    const StepResult& r = s.lemma(id);
    EXPECT_EQ(r.status, Status::Proved) << id;
    EXPECT_EQ(replay_certificate(r.certificate), Status::Proved) << id;
  }
}

TEST(Lemmas, CriticalPointPathRecordedAlongsideTheBoxCertificate) {
  StepResult r = prove_lemma("1.3");
  ASSERT_EQ(r.status, Status::Proved);
  std::vector<std::string> kinds;
  for (const auto& part : r.certificate.at("parts")) kinds.push_back(part.at("certificate").at("kind"));
  EXPECT_NE(std::find(kinds.begin(), kinds.end(), "bound"), kinds.end());
  EXPECT_NE(std::find(kinds.begin(), kinds.end(), "critical-point"), kinds.end());
}

TEST(Lemmas, UnknownIdRejected) { EXPECT_THROW(prove_lemma("1.9"), UsageError); }

TEST(Cases, AllProved) {
  ProofSession s;
  for (const auto& id : case_ids()) {
    const StepResult& r = s.proof_case(id);
    EXPECT_EQ(r.status, Status::Proved) << id;
    EXPECT_EQ(replay_certificate(r.certificate), Status::Proved) << id;
  }
}

TEST(Cases, VertexValues) {
  StepResult a = prove_case("A");
  const Json* eval = nullptr;
  for (const auto& part : a.certificate.at("parts"))
    if (part.at("certificate").at("kind") == "evaluation" && part.at("required") == true) eval = &part.at("certificate");
  ASSERT_NE(eval, nullptr);
  std::map<std::string, std::string> seen;
  for (const auto& p : eval->at("points")) {
    Point pt = point_from_json(p.at("point"));
    seen[pt.at("c").str() + "," + pt.at("x").str() + "," + pt.at("y").str()] = p.at("value");
  }
  EXPECT_EQ(seen.at("0,0,0"), "0");
  EXPECT_EQ(seen.at("0,0,1"), "320");
  EXPECT_EQ(seen.at("0,1,0"), "320");
  EXPECT_EQ(seen.at("0,1,1"), "320");
  for (const char* v : {"2,0,0", "2,0,1", "2,1,0", "2,1,1"}) EXPECT_EQ(seen.at(v), "80") << v;
}

TEST(Cases, EdgeBoundOfTheOriginEdge) {
  StepResult r = prove_case("B.v");
  EXPECT_EQ(r.status, Status::Proved);
  EXPECT_NE(r.certificate.dump().find("80"), std::string::npos);
}

TEST(Theorem, ProvedWithTheSharpBound) {
  const Json& t = theorem_json();
  EXPECT_EQ(t.at("status"), "proved");
  EXPECT_EQ(t.at("theta_max"), "320");
  EXPECT_EQ(t.at("bound"), "1/16");
  EXPECT_TRUE(t.at("first_failure").is_null());
  for (const auto& w : t.at("attainment")) EXPECT_EQ(w.at("theta"), "320");
  EXPECT_EQ(t.at("steps").size(), proof_plan().size());
}

TEST(Theorem, DeterministicDump) { EXPECT_EQ(prove_theorem().dump(), theorem_json().dump()); }

TEST(Theorem, ReplaysFromJson) {
  std::string why;
  EXPECT_EQ(replay_certificate(theorem_json(), &why), Status::Proved) << why;
  Json bad = theorem_json();
  bad["bound"] = "1/17";
  EXPECT_NE(replay_certificate(bad), Status::Proved);
}

TEST(Theorem, InvertedLemmaFailsAtThatStep) {
  DriverConfig cfg;
  cfg.overrides["1.4"].invert = true;
  Json t = prove_theorem(cfg);
  EXPECT_EQ(t.at("status"), "refuted");
  EXPECT_EQ(t.at("first_failure"), "lemma-1.4");
  StepResult r = prove_lemma("1.4", cfg);
  EXPECT_EQ(r.status, Status::Refuted);
  ASSERT_TRUE(r.witnesses.contains("counterexample"));
  Point at = point_from_json(r.witnesses.at("counterexample"));
  LemmaSpec spec = lemma_spec("1.4");
  EXPECT_TRUE(spec.region.contains(at));
  EXPECT_LE(spec.poly.eval(at), q(0));
}

TEST(Theorem, ZeroBudgetIsInconclusiveAtTheFirstBoxStep) {
  DriverConfig cfg;
  cfg.box.depth_budget = 0;
  Json t = prove_theorem(cfg);
  EXPECT_EQ(t.at("status"), "inconclusive");
  EXPECT_EQ(t.at("first_failure"), "lemma-1.3");
}

TEST(Theorem, PerturbedLemmaIsRefutedWithAWitness) {
  DriverConfig cfg;
  LemmaSpec spec = lemma_spec("1.2e");
  cfg.overrides["1.2e"].poly = spec.poly + MultiPoly::parse("c^2");
  StepResult r = prove_lemma("1.2e", cfg);
  EXPECT_EQ(r.status, Status::Refuted);
  ASSERT_TRUE(r.witnesses.contains("counterexample"));
  Json t = prove_theorem(cfg);
  EXPECT_EQ(t.at("first_failure"), "lemma-1.2e");
}

TEST(Theorem, DependentStepsInheritFailures) {
  DriverConfig cfg;
  cfg.overrides["1.2a"].invert = true;
  ProofSession s(cfg);
  const StepResult& r = s.proof_case("B.vi");
  EXPECT_NE(r.status, Status::Proved);
  EXPECT_EQ(r.failed_dependencies, std::vector<std::string>{"lemma-1.2a"});
}

TEST(Sharpness, ExtremalFunction) {
  SharpnessReport r = verify_sharpness();
  EXPECT_EQ(r.h31, q(-1, 16));
  EXPECT_EQ(abs(r.h31), q(1, 16));
  EXPECT_EQ(format_series(r.inverse), "1,0,-1/2,0,3/8");
  EXPECT_EQ(r.status(), Status::Proved);
  EXPECT_EQ(replay_certificate(r.to_json()), Status::Proved);
}

TEST(Scan, Examples) {
  EXPECT_THROW(empirical_scan(0, 1), UsageError);
  ScanReport one = empirical_scan(1, 5);
  EXPECT_EQ(one.max_mod_sq, q(1, 4096));
  EXPECT_TRUE(one.all_bounded);
  ScanReport many = empirical_scan(500, 42, true);
  EXPECT_TRUE(many.all_bounded);
  EXPECT_TRUE(many.all_identity);
  EXPECT_LE(many.max_mod_sq, q(1, 256));
  EXPECT_EQ(many.records.size(), 500u);
  EXPECT_EQ(empirical_scan(500, 42).to_json().dump(), many.to_json().dump());
}
