#include <gtest/gtest.h>

#include <random>

#include "h31cert/catalog.hpp"
#include "h31cert/certificate.hpp"
#include "h31cert/proof_driver.hpp"
#include "support.hpp"

using namespace h31cert;
using h31test::q;

namespace {

Interval closed(Rational a, Rational b) { return Interval::closed(std::move(a), std::move(b)); }
Interval open_lo(Rational a, Rational b) { return Interval(std::move(a), std::move(b), true, false); }
MultiPoly mp(const std::string& s) { return MultiPoly::parse_expression(s); }

}  // namespace

TEST(Bernstein, Examples) {
  Box b{{"c", closed(q(0), q(2))}, {"x", closed(q(0), q(1))}};
  EXPECT_EQ(bernstein_bounds(MultiPoly(q(320)), b), std::make_pair(q(320), q(320)));
  Box unit{{"x", closed(q(0), q(1))}};
  EXPECT_EQ(bernstein_bounds(mp("x*(1 - x)"), unit), std::make_pair(q(0), q(1, 2)));
  Box face{{"c", closed(q(2), q(2))}, {"x", closed(q(0), q(1))}, {"y", closed(q(0), q(1))}};
  EXPECT_EQ(bernstein_bounds(theta_poly(), face), std::make_pair(q(80), q(80)));
}

TEST(BernsteinProperty, EnclosesSampledValues) {
  std::mt19937_64 rng(31);
  std::uniform_int_distribution<long> coef(-9, 9), num(0, 40);
  for (int k = 0; k < 60; ++k) {
    MultiPoly p;
    for (int i = 0; i <= 3; ++i)
      for (int j = 0; i + j <= 4; ++j) p += MultiPoly::monomial(Rational(coef(rng)), {{"c", i}, {"x", j}});
    Rational c0(num(rng) - 20, 10), x0(num(rng), 40);
    Box b{{"c", closed(c0, c0 + q(1, 2))}, {"x", closed(x0, x0 + q(1, 3))}};
    auto [lo, hi] = bernstein_bounds(p, b);
    for (int s = 0; s <= 6; ++s)
      for (int t = 0; t <= 6; ++t) {
        Rational v = p.eval({{"c", c0 + Rational(s, 12)}, {"x", x0 + Rational(t, 18)}});
        EXPECT_LE(lo, v);
        EXPECT_LE(v, hi);
      }
  }
}

TEST(BernsteinProperty, SubdivisionTightens) {
  MultiPoly p = catalog::Psi();
  Rational width(2);
  Rational prev_lo, prev_hi;
  for (int k = 0; k < 6; ++k) {
    Box b{{"c", closed(q(1), q(1) + width)}, {"x", closed(q(1, 4), q(1, 4) + width / q(2))}};
    auto [lo, hi] = bernstein_bounds(p, b);
    if (k > 0) {
      EXPECT_LE(prev_lo, lo);
      EXPECT_LE(hi, prev_hi);
    }
    prev_lo = lo;
    prev_hi = hi;
    width = width / q(2);
  }
}

TEST(BoxCert, LemmaBoxes) {
  Box closed_box{{"c", closed(q(0), catalog::split_low())}, {"x", closed(q(0), q(1, 4))}};
  BoundCertificate c = certify_box_bound(catalog::Psi(), closed_box, Relation::Le, q(320));
  EXPECT_EQ(c.status, Status::Proved);
  EXPECT_EQ(replay_bound(c.to_json()), Status::Proved);
  LemmaSpec l14 = lemma_spec("1.4");
  EXPECT_EQ(certify_box_bound(l14.poly, l14.region, l14.relation, l14.bound).status, Status::Proved);
  Box gamma_box{{"c", open_lo(catalog::split_low(), q(1))}, {"x", closed(q(3, 5), q(1))}};
  BoundCertificate g = certify_box_bound(catalog::Gamma(), gamma_box, Relation::Lt, q(0));
  EXPECT_EQ(g.status, Status::Proved);
  EXPECT_EQ(replay_bound(g.to_json()), Status::Proved);
}

TEST(BoxCert, RefutesWithAWitnessInsideTheBox) {
  Box b{{"c", closed(q(0), q(2))}, {"x", closed(q(0), q(1))}};
  BoundCertificate c = certify_box_bound(mp("c + x"), b, Relation::Le, q(5, 2));
  ASSERT_EQ(c.status, Status::Refuted);
  ASSERT_TRUE(c.counterexample.has_value());
  EXPECT_TRUE(b.contains(*c.counterexample));
  EXPECT_GT(mp("c + x").eval(*c.counterexample), q(5, 2));
}

TEST(BoxCert, StrictClaimTightAtAVertex) {
  Box b{{"x", closed(q(0), q(1))}};
  EXPECT_EQ(certify_box_bound(mp("x*(1 - x)"), b, Relation::Ge, q(0)).status, Status::Proved);
  BoundCertificate strict = certify_box_bound(mp("x*(1 - x)"), b, Relation::Gt, q(0));
  EXPECT_EQ(strict.status, Status::Refuted);
  Box open_box{{"x", Interval(q(0), q(1), true, true)}};
  EXPECT_EQ(certify_box_bound(mp("x*(1 - x)"), open_box, Relation::Gt, q(0)).status, Status::Proved);
}

TEST(BoxCert, ZeroBudgetIsInconclusiveNotProved) {
  Box b{{"c", closed(q(0), catalog::split_low())}, {"x", closed(q(0), q(1, 4))}};
  BoxCertOptions opt;
  opt.depth_budget = 0;
  BoundCertificate c = certify_box_bound(catalog::Psi(), b, Relation::Le, q(320), opt);
  EXPECT_EQ(c.status, Status::Inconclusive);
}

TEST(BoxCertProperty, ProvedClaimsHoldOnAGrid) {
  std::mt19937_64 rng(32);
  std::uniform_int_distribution<long> coef(-5, 5);
  for (int k = 0; k < 40; ++k) {
    MultiPoly p;
    for (int i = 0; i <= 2; ++i)
      for (int j = 0; j <= 2; ++j) p += MultiPoly::monomial(Rational(coef(rng)), {{"c", i}, {"x", j}});
    Box b{{"c", closed(q(0), q(1))}, {"x", closed(q(0), q(1))}};
    Rational bound(coef(rng) + 5);
    BoundCertificate c = certify_box_bound(p, b, Relation::Le, bound);
    ASSERT_NE(c.status, Status::Inconclusive);
    bool violated = false;
    for (int s = 0; s <= 16; ++s)
      for (int t = 0; t <= 16; ++t)
        if (bound < p.eval({{"c", Rational(s, 16)}, {"x", Rational(t, 16)}})) violated = true;
    if (c.status == Status::Proved) {
      EXPECT_FALSE(violated);
    }
    if (violated) {
      EXPECT_EQ(c.status, Status::Refuted);
    }
    EXPECT_EQ(replay_bound(c.to_json()), c.status);
  }
}

TEST(BoxReplay, TamperedCertificatesAreRejected) {
  Box b{{"c", closed(q(0), catalog::split_low())}, {"x", closed(q(0), q(1, 4))}};
  Json j = certify_box_bound(catalog::Psi(), b, Relation::Le, q(320)).to_json();
  Json lowered = j;
  lowered["bound"] = "319";
  EXPECT_NE(replay_bound(lowered), Status::Proved);
  Json moved = j;
  moved["poly"] = (catalog::Psi() + MultiPoly(q(1, 1000))).str();
  EXPECT_NE(replay_bound(moved), Status::Proved);
  Json pruned = j;
  if (pruned["tree"].contains("split")) {
    pruned["tree"].erase("split");
    std::string why;
    EXPECT_NE(replay_bound(pruned, &why), Status::Proved);
  }
}

TEST(CofactorChain, LemmaPatterns) {
  LemmaSpec l14 = lemma_spec("1.4");
  auto M = ChainOp::merge;
  auto D = ChainOp::drop;
  ChainCertificate c14 = certify_via_cofactor_chain(catalog::phi_list(), "x", l14.region[1], "c", l14.region[0],
                                                    {M(0), M(1), M(2), M(3), D(4), D(5), D(6)}, Relation::Le, q(0));
  EXPECT_EQ(c14.status, Status::Proved);
  EXPECT_EQ(replay_chain(c14.to_json()), Status::Proved);
  LemmaSpec l16 = lemma_spec("1.6");
  ChainCertificate c16 = certify_via_cofactor_chain(catalog::gamma_coeffs(), "x", l16.region[1], "c", l16.region[0],
                                                    {M(0), M(1), M(2), M(3), D(4), D(5), D(6)}, Relation::Le, q(0));
  EXPECT_EQ(c16.status, Status::Proved);
}

TEST(CofactorChain, ShuffledPatternIsRefuted) {
  LemmaSpec l18 = lemma_spec("1.8");
  auto M = ChainOp::merge;
  auto D = ChainOp::drop;
  ChainCertificate good = certify_via_cofactor_chain(catalog::psi_list(), "c", l18.region[0], "x", l18.region[1],
                                                     {M(0), M(1), M(2), D(3), D(4)}, Relation::Le, q(0));
  EXPECT_EQ(good.status, Status::Proved);
  ChainCertificate bad = certify_via_cofactor_chain(catalog::psi_list(), "c", l18.region[0], "x", l18.region[1],
                                                    {D(0), M(1), M(2), D(3), D(4)}, Relation::Le, q(0));
  EXPECT_EQ(bad.status, Status::Refuted);
  EXPECT_FALSE(bad.failing.empty());
  EXPECT_EQ(replay_chain(bad.to_json()), Status::Refuted);
}

TEST(CriticalPoint, SimpleParabola) {
  CriticalPointInput in;
  in.poly = mp("(x - 1/2)^2");
  in.var = "x";
  in.num = MultiPoly(q(1));
  in.den = MultiPoly(q(2));
  CriticalPointReport r = critical_point_check(in);
  EXPECT_TRUE(r.identity_holds);
  EXPECT_EQ(in.poly.diff("x").diff("x"), MultiPoly(q(2)));
  in.num = MultiPoly(q(1));
  in.den = MultiPoly(q(3));
  EXPECT_FALSE(critical_point_check(in).identity_holds);
}

TEST(CriticalPoint, ConcaveFamilyEnvelope) {
  CriticalPointInput in;
  in.poly = mp("1 - a*(x - 1/2)^2");
  in.var = "x";
  in.num = MultiPoly(q(1));
  in.den = MultiPoly(q(2));
  in.region = Box{{"a", closed(q(1), q(2))}};
  in.second_derivative = mp("-2*a");
  in.envelope_bound = q(1);
  CriticalPointReport r = critical_point_check(in);
  EXPECT_EQ(r.status, Status::Proved);
  EXPECT_EQ(replay_certificate(r.to_json()), Status::Proved);
  in.envelope_bound = q(1, 2);
  EXPECT_EQ(critical_point_check(in).status, Status::Refuted);
}

TEST(CriticalPoint, StationaryConditionOfTheInteriorCase) {
  Box left{{"c", closed(q(0), q(3, 2))}, {"x", closed(q(0), q(1))}};
  EXPECT_EQ(certify_box_bound(catalog::stationary_condition(), left, Relation::Gt, q(0)).status, Status::Proved);
}

TEST(Cover, DetectsGaps) {
  Box target{{"c", closed(q(0), q(2))}};
  std::vector<CoverPiece> halves{{"l", Box{{"c", closed(q(0), q(1))}}}, {"r", Box{{"c", open_lo(q(1), q(2))}}}};
  EXPECT_TRUE(check_cover(target, halves).covered);
  std::vector<CoverPiece> gap{{"l", Box{{"c", Interval(q(0), q(1), false, true)}}},
                              {"r", Box{{"c", open_lo(q(1), q(2))}}}};
  CoverReport r = check_cover(target, gap);
  EXPECT_FALSE(r.covered);
  ASSERT_TRUE(r.uncovered.has_value());
  EXPECT_TRUE(r.uncovered->intervals()[0].is_point());
  EXPECT_EQ(replay_cover(r.to_json()), Status::Refuted);
}
