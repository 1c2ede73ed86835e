#include <gtest/gtest.h>

#include <random>

#include "h31cert/catalog.hpp"
#include "h31cert/coefficient_maps.hpp"
#include "h31cert/uni_cert.hpp"
#include "support.hpp"

using namespace h31cert;
using namespace h31cert::catalog;
using h31test::q;

namespace {

UniPoly up(const std::string& s) { return UniPoly::from_multi(MultiPoly::parse_expression(s), "c"); }

Interval closed(Rational a, Rational b) { return Interval::closed(std::move(a), std::move(b)); }

}  // namespace

TEST(Sturm, Chains) {
  auto chain = sturm_chain(up("c^2 - 1"));
  ASSERT_EQ(chain.size(), 3u);
  EXPECT_EQ(chain[0], up("c^2 - 1"));
  EXPECT_EQ(chain[1], up("2*c"));
  EXPECT_EQ(chain[2].degree(), 0);
  EXPECT_GT(chain[2].leading(), q(0));
  EXPECT_LE(sturm_chain(psi(1)).size(), 7u);
  EXPECT_EQ(sturm_chain(up("5")).size(), 1u);
  EXPECT_THROW(sturm_chain(UniPoly()), UsageError);
}

TEST(Sturm, RootCounts) {
  EXPECT_EQ(count_real_roots(up("c^2 - 1"), closed(q(0), q(2))), 1);
  EXPECT_EQ(count_real_roots(up("c^2 + 1"), closed(q(-10), q(10))), 0);
  ASSERT_TRUE(psi(1).coeff(0).is_zero() && psi(1).coeff(1).is_zero());
  std::vector<Rational> cofactor;
  for (int k = 2; k <= psi(1).degree(); ++k) cofactor.push_back(psi(1).coeff(k));
  EXPECT_EQ(count_real_roots(UniPoly(cofactor), Interval(q(0), q(2), true, false)), 0);
  EXPECT_EQ(count_real_roots(up("c^2 - 1"), Interval(q(-1), q(1), true, true)), 0);
  EXPECT_EQ(count_real_roots(up("(c - 1)^3*(c + 2)"), closed(q(-3), q(3))), 2);
}

TEST(Sturm, RootCountsMatchSympyOracle) {
  for (const auto& row : h31test::oracle("roots.json")) {
    std::vector<Rational> coeffs;
    for (const auto& s : row.at("coeffs")) coeffs.push_back(Rational::parse(s.get<std::string>()));
    Interval i = closed(Rational::parse(row.at("lo").get<std::string>()), Rational::parse(row.at("hi").get<std::string>()));
    EXPECT_EQ(count_real_roots(UniPoly(coeffs), i), row.at("closed").get<int>()) << i.str();
  }
}

TEST(SignCert, LemmaClaims) {
  EXPECT_EQ(certify_sign(psi(1), closed(q(0), q(2)), Relation::Le).status, Status::Proved);
  EXPECT_EQ(certify_sign(psi(5), closed(q(0), q(2)), Relation::Le).status, Status::Proved);
  UniPoly d = psi(1) + psi(2) + psi(3) + psi(4).scaled(q(3, 5));
  EXPECT_EQ(certify_sign(d, closed(split_high(), q(2)), Relation::Le).status, Status::Proved);
}

TEST(SignCert, RefutationCarriesARationalWitness) {
  SignCertificate c = certify_sign(up("c^2 - 1"), closed(q(0), q(2)), Relation::Le);
  ASSERT_EQ(c.status, Status::Refuted);
  ASSERT_TRUE(c.counterexample.has_value());
  EXPECT_GT(up("c^2 - 1")(*c.counterexample), q(0));
  EXPECT_EQ(replay_sign(c), Status::Refuted);
}

TEST(SignCert, StrictnessAtARoot) {
  EXPECT_EQ(certify_sign(up("-(c - 1)^2"), closed(q(0), q(2)), Relation::Le).status, Status::Proved);
  EXPECT_EQ(certify_sign(up("-(c - 1)^2"), closed(q(0), q(2)), Relation::Lt).status, Status::Refuted);
  EXPECT_EQ(certify_sign(up("-(c - 1)^2"), Interval(q(1), q(2), true, false), Relation::Lt).status, Status::Proved);
}

TEST(SignCert, ReplayRoundTripAndTamper) {
  SignCertificate c = certify_sign(psi(1), closed(q(0), q(2)), Relation::Le);
  SignCertificate back = SignCertificate::from_json(c.to_json());
  EXPECT_EQ(replay_sign(back), Status::Proved);
  back.poly = back.poly + UniPoly(std::vector<Rational>{q(1000)});
  std::string why;
  EXPECT_NE(replay_sign(back, &why), Status::Proved);
  EXPECT_FALSE(why.empty());
}

TEST(SignCertProperty, AgreesWithDenseSampling) {
  std::mt19937_64 rng(21);
  std::uniform_int_distribution<long> coef(-6, 6);
  for (int k = 0; k < 200; ++k) {
    std::vector<Rational> cs;
    for (int j = 0; j < 5; ++j) cs.emplace_back(coef(rng));
    UniPoly p(cs);
    if (p.is_zero()) continue;
    SignCertificate c = certify_sign(p, closed(q(-2), q(2)), Relation::Le);
    bool any_positive = false;
    for (int j = -200; j <= 200; ++j)
      if (p(q(j, 100)).sign() > 0) any_positive = true;
    if (any_positive) {
      EXPECT_EQ(c.status, Status::Refuted);
    }
    if (c.status == Status::Proved) {
      EXPECT_FALSE(any_positive);
    }
    if (c.status == Status::Refuted) {
      EXPECT_GT(p(*c.counterexample), q(0));
    }
    EXPECT_NE(c.status, Status::Inconclusive);
    EXPECT_EQ(replay_sign(c), c.status);
  }
}

TEST(SignCertProperty, RationalRootsOnAndNearTheGrid) {
  std::mt19937_64 rng(22);
  std::uniform_int_distribution<long> num(-8, 8), den(1, 4), count(1, 5);
  for (int k = 0; k < 300; ++k) {
    UniPoly p(std::vector<Rational>{Rational(num(rng) == 0 ? 1 : -1)});
    long n = count(rng);
    for (long j = 0; j < n; ++j) p = p * UniPoly(std::vector<Rational>{-Rational(num(rng), den(rng)), 1});
    Interval i = closed(Rational(num(rng), 2) - q(4), Rational(num(rng), 2) + q(4));
    for (Relation rel : {Relation::Le, Relation::Lt, Relation::Ge, Relation::Gt}) {
      SignCertificate c = certify_sign(p, i, rel);
      bool violated = false;
      for (int j = 0; j <= 960; ++j)
        if (!sign_satisfies(p(i.lo() + i.width() * Rational(j, 960)).sign(), rel)) violated = true;
      if (violated) {
        EXPECT_EQ(c.status, Status::Refuted) << p.str() << " on " << i.str();
      }
      EXPECT_NE(c.status, Status::Inconclusive);
      EXPECT_EQ(replay_sign(c), c.status) << p.str() << " on " << i.str();
      EXPECT_EQ(count_real_roots(p, i), static_cast<int>(isolate_roots(p, i.lo(), i.hi()).size()));
    }
  }
}

TEST(Factorization, CaseEdgeIdentity) {
  MultiPoly x = MultiPoly::var("x");
  MultiPoly edge = theta_poly().subs({{"c", q(0)}, {"y", q(1)}});
  MultiPoly gap = MultiPoly(q(320)) - edge;
  FactorizationCheck f = verify_factorization(gap, {MultiPoly(q(4)) - x, MultiPoly(q(1)) - x, x * x}, q(64));
  EXPECT_TRUE(f.holds);
}

TEST(Factorization, LastLemmaCoefficient) {
  UniPoly four_minus = up("4 - c^2");
  FactorizationCheck f = verify_factorization(psi(5), {four_minus, four_minus, up("c^2 - 4*c - 4")}, q(1));
  EXPECT_TRUE(f.holds);
  FactorizationCheck bad = verify_factorization(psi(5), {four_minus, four_minus, up("c^2 - 4*c - 3")}, q(1));
  EXPECT_FALSE(bad.holds);
  EXPECT_FALSE(bad.residual.is_zero());
  EXPECT_EQ(bad.to_json().at("status"), "refuted");
  EXPECT_TRUE(bad.to_json().at("witnesses").contains("residual"));
}
