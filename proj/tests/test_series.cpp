#include <gtest/gtest.h>

#include <random>

#include "h31cert/coefficient_maps.hpp"
#include "h31cert/series.hpp"
#include "support.hpp"

using namespace h31cert;
using h31test::q;
using RS = PowerSeries<Rational>;

namespace {

RS series(std::vector<Rational> from_zero) { return RS(std::move(from_zero)); }

RS random_normalized(std::mt19937_64& rng, int order) {
  std::uniform_int_distribution<long> n(-30, 30), d(1, 9);
  RS f = RS::identity(order);
  for (int k = 2; k <= order; ++k) f[k] = Rational(n(rng), d(rng));
  return f;
}

}  // namespace

TEST(SeriesMul, Examples) {
  RS z = RS::identity(5);
  RS zz = series_mul(z, z);
  for (int k = 0; k <= 5; ++k) EXPECT_EQ(zz[k], q(k == 2 ? 1 : 0));
  RS a = series({0, 1, 1, 0, 0, 0}), b = series({0, 1, -1, 0, 0, 0});
  EXPECT_EQ(series_mul(a, b), series({0, 0, 1, 0, -1, 0}));
  RS f0 = f0_series(5);
  EXPECT_EQ(series_mul(f0, f0), series({0, 0, 1, 0, 1, 0}));
}

TEST(SeriesMul, MismatchedOrdersRejected) {
  EXPECT_THROW(series_mul(RS::identity(3), RS::identity(4)), UsageError);
  EXPECT_THROW(series_compose(RS::identity(3), RS::identity(4)), UsageError);
}

TEST(SeriesCompose, Examples) {
  RS f = series({0, 1, q(2, 3), -1, 5, q(1, 7)});
  EXPECT_EQ(series_compose(f, RS::identity(5)), f);
  RS g = series({0, 1, 1, 0, 0});
  EXPECT_EQ(series_compose(g, g), series({0, 1, 2, 2, 1}));
  EXPECT_THROW(series_compose(f, series({1, 1, 0, 0, 0, 0})), DomainError);
}

TEST(SeriesRevert, Examples) {
  EXPECT_EQ(series_revert(RS::identity(5)), RS::identity(5));
  EXPECT_EQ(format_series(series_revert(f0_series(5))), "1,0,-1/2,0,3/8");
  EXPECT_THROW(series_revert(series({0, 2, 1})), DomainError);
  EXPECT_THROW(series_revert(series({1, 1, 1})), DomainError);
}

TEST(SeriesRevert, MatchesSympyOracle) {
  for (const auto& c : h31test::oracle("reversion.json")) {
    std::vector<Rational> a, t;
    for (const auto& s : c.at("series")) a.push_back(Rational::parse(s.get<std::string>()));
    for (const auto& s : c.at("inverse")) t.push_back(Rational::parse(s.get<std::string>()));
    EXPECT_EQ(series_revert(RS::from_index1(a)).index1(), t);
  }
}

TEST(SeriesRevert, ClosedFormsForRandomSeries) {
  std::mt19937_64 rng(11);
  for (int k = 0; k < 200; ++k) {
    RS f = random_normalized(rng, 5);
    RS g = series_revert(f);
    const Rational &a2 = f[2], &a3 = f[3], &a4 = f[4], &a5 = f[5];
    EXPECT_EQ(g[2], -a2);
    EXPECT_EQ(g[3], -a3 + q(2) * a2 * a2);
    EXPECT_EQ(g[4], -a4 + q(5) * a2 * a3 - q(5) * pow(a2, 3));
    EXPECT_EQ(g[5], -a5 + q(6) * a2 * a4 - q(21) * a2 * a2 * a3 + q(3) * a3 * a3 + q(14) * pow(a2, 4));
  }
}

TEST(SeriesProperty, ReversionIsAnInvolutionAndInverse) {
  std::mt19937_64 rng(12);
  for (int k = 0; k < 100; ++k) {
    int order = 2 + k % 7;
    RS f = random_normalized(rng, order);
    RS g = series_revert(f);
    EXPECT_EQ(series_compose(f, g), RS::identity(order));
    EXPECT_EQ(series_compose(g, f), RS::identity(order));
    EXPECT_EQ(series_revert(g), f);
  }
}

TEST(SeriesProperty, CompositionIsAssociative) {
  std::mt19937_64 rng(13);
  for (int k = 0; k < 50; ++k) {
    RS f = random_normalized(rng, 6), g = random_normalized(rng, 6), h = random_normalized(rng, 6);
    EXPECT_EQ(series_compose(f, series_compose(g, h)), series_compose(series_compose(f, g), h));
  }
}

TEST(SeriesExp, Examples) {
  RS zero(4);
  EXPECT_EQ(series_exp(zero), series({1, 0, 0, 0, 0}));
  EXPECT_EQ(series_exp(RS::identity(3)), series({1, 1, q(1, 2), q(1, 6)}));
  RS log1p(6);
  for (int k = 1; k <= 6; ++k) log1p[k] = Rational(k % 2 ? 1 : -1, k);
  EXPECT_EQ(series_exp(log1p), series({1, 1, 0, 0, 0, 0, 0}));
  EXPECT_THROW(series_exp(series({1, 1})), DomainError);
}

TEST(SeriesCalculus, DeriveAndIntegrate) {
  EXPECT_EQ(series_derive(series({0, 0, 0, 1})), series({0, 0, 3}));
  EXPECT_EQ(series_derive(f0_series(5)), series({1, 0, q(3, 2), 0, q(15, 8)}));
  std::mt19937_64 rng(14);
  for (int k = 0; k < 50; ++k) {
    RS f = random_normalized(rng, 6);
    f[0] = q(k);
    RS back = series_integrate(series_derive(f));
    f[0] = q(0);
    EXPECT_EQ(back, f);
  }
}

TEST(SeriesResize, TruncatesAndExtends) {
  RS f = f0_series(5);
  EXPECT_EQ(series_resize(f, 3), series({0, 1, 0, q(1, 2)}));
  EXPECT_EQ(series_resize(series_resize(f, 8), 5), f);
}

TEST(Hankel, Examples) {
  Rational a2 = q(3, 7), a3 = q(-5, 2);
  EXPECT_EQ(hankel_det(std::vector<Rational>{1, a2, a3}, HankelSpec{2, 1}), a3 - a2 * a2);
  EXPECT_EQ(hankel_det(std::vector<Rational>{1, 0, q(-1, 2), 0, q(3, 8)}, HankelSpec{3, 1}), q(-1, 16));
  EXPECT_EQ(hankel_det(std::vector<Rational>{1, 0, 0, 0, 0}, HankelSpec{3, 1}), q(0));
}

TEST(Hankel, UsageErrors) {
  EXPECT_THROW(hankel_det(std::vector<Rational>{1, 2, 3, 4}, HankelSpec{3, 1}), UsageError);
  EXPECT_THROW(hankel_det(std::vector<Rational>{1, 2, 3}, HankelSpec{0, 1}), UsageError);
  EXPECT_THROW(hankel_det(std::vector<Rational>{1, 2, 3}, HankelSpec{1, 0}), UsageError);
}

TEST(Hankel, ThreeByThreeMatchesSarrus) {
  std::mt19937_64 rng(15);
  for (int k = 0; k < 100; ++k) {
    RS f = random_normalized(rng, 5);
    auto a = f.index1();
    Rational sarrus = a[0] * a[2] * a[4] + q(2) * a[1] * a[2] * a[3] - a[2] * a[2] * a[2] - a[0] * a[3] * a[3] -
                      a[1] * a[1] * a[4];
    EXPECT_EQ(hankel_det(f, HankelSpec{3, 1}), sarrus);
  }
}

TEST(SeriesText, ParseAndFormat) {
  RS f = parse_series("1,0,1/2,0,3/8");
  EXPECT_EQ(f, f0_series(5));
  EXPECT_EQ(format_series(f), "1,0,1/2,0,3/8");
  EXPECT_THROW(parse_series(""), InputError);
  EXPECT_THROW(parse_series("1,2,"), InputError);
  EXPECT_THROW(parse_series("1,x"), InputError);
}
