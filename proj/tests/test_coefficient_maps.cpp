#include <gtest/gtest.h>

#include "h31cert/coefficient_maps.hpp"
#include "h31cert/identities.hpp"
#include "support.hpp"

using namespace h31cert;
using h31test::q;
using G = GaussianRational;

namespace {

LZParams lz(Rational c1, G mu, G rho, G psi) { return {std::move(c1), mu, rho, psi}; }

std::vector<G> all_two() { return std::vector<G>(4, G(2)); }

}  // namespace

TEST(LZExpand, Examples) {
  auto c = lz_expand(lz(q(2), G(q(1, 3), q(1, 5)), G(q(-1, 2)), G(q(0), q(1))));
  EXPECT_EQ(c[1], G(2));
  EXPECT_EQ(c[2], G(2));
  EXPECT_EQ(c[3], G(2));
  c = lz_expand(lz(q(0), G(1), G(q(1, 7), q(-2, 7)), G(q(3, 5), q(4, 5))));
  EXPECT_EQ(c[1], G(2));
  EXPECT_EQ(c[2], G(0));
  EXPECT_EQ(c[3], G(2));
  c = lz_expand(lz(q(0), G(0), G(0), G(1)));
  EXPECT_EQ(c[1], G(0));
  EXPECT_EQ(c[2], G(0));
  EXPECT_EQ(c[3], G(2));
}

TEST(LZExpand, RejectsParametersOutsideTheDisc) {
  EXPECT_THROW(lz_expand(lz(q(5, 2), G(0), G(0), G(0))), DomainError);
  EXPECT_THROW(lz_expand(lz(q(-1), G(0), G(0), G(0))), DomainError);
  EXPECT_THROW(lz_expand(lz(q(1), G(q(4, 5), q(4, 5)), G(0), G(0))), DomainError);
  EXPECT_THROW(lz_expand(lz(q(1), G(0), G(q(11, 10)), G(0))), DomainError);
  EXPECT_THROW(lz_expand(lz(q(1), G(0), G(0), G(q(0), q(-3, 2)))), DomainError);
}

TEST(LZProperty, CoefficientsStayInTheCaratheodoryRange) {
  for (std::uint64_t seed = 1; seed <= 1000; ++seed) {
    auto c = lz_expand(sample_lz_params(seed));
    for (const auto& ct : c) EXPECT_LE(mod_sq(ct), q(4));
  }
}

TEST(OzakiMap, Examples) {
  auto f = caratheodory_to_ozaki(std::vector<G>(4, G(0)), 5);
  EXPECT_EQ(f, PowerSeries<G>::identity(5));
  auto k = caratheodory_to_ozaki(all_two(), 5);
  EXPECT_EQ(k[2], G(q(3, 2)));
  EXPECT_EQ(k, caratheodory_to_ozaki_exp(all_two(), 5));
  EXPECT_THROW(caratheodory_to_ozaki(std::vector<G>(2, G(0)), 5), UsageError);
}

TEST(OzakiMap, MatchesSympyOracle) {
  for (const auto& row : h31test::oracle("h31.json")) {
    std::vector<G> c, a;
    for (const auto& v : row.at("c")) c.push_back(h31test::gaussian(v));
    for (const auto& v : row.at("a")) a.push_back(h31test::gaussian(v));
    EXPECT_EQ(caratheodory_to_ozaki(c, 5).index1(), a);
    EXPECT_EQ(caratheodory_to_ozaki_exp(c, 5).index1(), a);
  }
}

TEST(ClosedForm, MatchesSympyOracle) {
  for (const auto& row : h31test::oracle("h31.json")) {
    std::vector<G> c;
    for (const auto& v : row.at("c")) c.push_back(h31test::gaussian(v));
    G expect = h31test::gaussian(row.at("h31"));
    EXPECT_EQ(h31_inverse_closed_form(c), expect);
    EXPECT_EQ(h31_inverse_pipeline(c), expect);
  }
}

TEST(ClosedForm, Examples) {
  EXPECT_EQ(h31_inverse_closed_form(std::vector<G>(4, G(0))), G(0));
  EXPECT_EQ(h31_inverse_closed_form(all_two()), G(q(1, 64)));
  EXPECT_EQ(h31_inverse_pipeline(all_two()), G(q(1, 64)));
}

TEST(ClosedForm, EqualsPipelineForSampledCoefficients) {
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    auto c = sample_caratheodory(seed, 1 + static_cast<int>(seed % 4)).c;
    EXPECT_EQ(h31_inverse_closed_form(c), h31_inverse_pipeline(c));
  }
}

TEST(SymbolicIdentities, AllHold) {
  EXPECT_EQ(identity_reversion().status(), Status::Proved);
  EXPECT_EQ(identity_inverse_coefficients().status(), Status::Proved);
  EXPECT_EQ(identity_closed_form().status(), Status::Proved);
  IdentityCheck disc = identity_lz_form();
  EXPECT_EQ(disc.status(), Status::Proved);
  EXPECT_FALSE(disc.notes.empty());
}

TEST(Theta, MatchesSympyExpansionOfNestedForm) {
  auto fx = h31test::oracle("theta.json");
  MultiPoly expect;
  for (const auto& t : fx.at("terms"))
    expect += MultiPoly::monomial(Rational::parse(t.at("coef").get<std::string>()),
                                  {{"c", t.at("c").get<int>()}, {"x", t.at("x").get<int>()}, {"y", t.at("y").get<int>()}});
  EXPECT_TRUE((theta_poly() - expect).is_zero());
  for (const auto& p : fx.at("points")) {
    Point at{{"c", Rational::parse(p.at("c").get<std::string>())},
             {"x", Rational::parse(p.at("x").get<std::string>())},
             {"y", Rational::parse(p.at("y").get<std::string>())}};
    EXPECT_EQ(theta_poly().eval(at), Rational::parse(p.at("value").get<std::string>()));
  }
}

TEST(Theta, Examples) {
  MultiPoly t = theta_poly();
  EXPECT_EQ(t.eval({{"c", q(0)}, {"x", q(0)}, {"y", q(1)}}), q(320));
  EXPECT_TRUE((t.subs({{"c", q(2)}}) - MultiPoly(q(80))).is_zero());
  MultiPoly edge = MultiPoly::parse_expression("48*c^2 - 12*c^4 + 5/4*c^6");
  EXPECT_TRUE((t.subs({{"x", q(0)}, {"y", q(0)}}) - edge).is_zero());
}

TEST(Theta, ModulusTermsSumToTheDeterminant) {
  MultiPoly expr;
  for (const auto& term : h31_modulus_terms()) expr += term.expression();
  auto c = lz_symbolic();
  EXPECT_TRUE((expr - h31_inverse_closed_form(c[0], c[1], c[2], c[3]).scaled(q(5120))).is_zero());
}

TEST(Dominance, Examples) {
  DominanceVerdict zero = theta_dominates_h31(lz(q(0), G(0), G(0), G(0)));
  EXPECT_TRUE(zero.holds);
  EXPECT_EQ(zero.h31, G(0));
  DominanceVerdict koebe = theta_dominates_h31(lz(q(2), G(0), G(0), G(0)));
  EXPECT_TRUE(koebe.holds);
  EXPECT_EQ(koebe.h31, G(q(1, 64)));
  EXPECT_EQ(koebe.lhs, koebe.rhs);
}

TEST(Dominance, HoldsForRandomRationalModuli) {
  for (std::uint64_t seed = 1; seed <= 1000; ++seed) {
    DominanceVerdict v = theta_dominates_h31(sample_lz_params(seed));
    EXPECT_TRUE(v.holds) << "seed " << seed;
    EXPECT_TRUE(v.exact);
  }
}

TEST(Dominance, IrrationalModuliUseABracket) {
  LZParams p = lz(q(1), G(q(1, 2), q(1, 3)), G(q(1, 5), q(1, 7)), G(q(1, 2)));
  DominanceVerdict v = theta_dominates_h31(p);
  EXPECT_TRUE(v.holds);
  EXPECT_FALSE(v.exact);
  EXPECT_LE(v.x_lo * v.x_lo, mod_sq(p.mu));
  EXPECT_GE(v.x_hi * v.x_hi, mod_sq(p.mu));
}

TEST(Sampler, Examples) {
  EXPECT_EQ(caratheodory_from_atoms({q(1)}, {q(0)}), all_two());
  std::vector<G> i_atom{G(q(0), q(2)), G(-2), G(q(0), q(-2)), G(2)};
  EXPECT_EQ(caratheodory_from_atoms({q(1)}, {q(1)}), i_atom);
  std::vector<G> pair{G(0), G(-2), G(0), G(2)};
  EXPECT_EQ(caratheodory_from_atoms({q(1, 2), q(1, 2)}, {q(1), q(-1)}), pair);
  EXPECT_THROW(caratheodory_from_atoms({q(1, 2)}, {q(0)}), UsageError);
  EXPECT_THROW(sample_caratheodory(1, 5), UsageError);
}

TEST(SamplerProperty, DeterministicAndBounded) {
  for (std::uint64_t seed = 0; seed < 500; ++seed) {
    auto a = sample_caratheodory(seed, 3), b = sample_caratheodory(seed, 3);
    EXPECT_EQ(a.c, b.c);
    for (const auto& ct : a.c) EXPECT_LE(mod_sq(ct), q(4));
  }
}

TEST(Sharpness, ExtremalSeries) {
  EXPECT_EQ(format_series(f0_series(5)), "1,0,1/2,0,3/8");
  EXPECT_EQ(f0_coefficient(3), q(5, 16));
}
