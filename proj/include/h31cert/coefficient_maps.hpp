#pragma once

#include <array>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "h31cert/bernstein.hpp"
#include "h31cert/box.hpp"
#include "h31cert/multi_poly.hpp"
#include "h31cert/rational.hpp"
#include "h31cert/series.hpp"

namespace h31cert {

/// Disc parameters of a Caratheodory function with c1 real in [0, 2].
struct LZParams {
  Rational c1;
  GaussianRational mu;
  GaussianRational rho;
  GaussianRational psi;

  Rational nu() const { return Rational(4) - c1 * c1; }

  void validate() const {
    if (c1.sign() < 0 || Rational(2) < c1) throw DomainError("lz: c1 must lie in [0, 2]");
    if (Rational(1) < mod_sq(mu)) throw DomainError("lz: |mu| > 1");
    if (Rational(1) < mod_sq(rho)) throw DomainError("lz: |rho| > 1");
    if (Rational(1) < mod_sq(psi)) throw DomainError("lz: |psi| > 1");
  }
};

/// c1..c4 from (c1, mu, rho, psi). Conjugates are passed separately so the
/// same formulas run over MultiPoly with independent conjugate symbols.
template <class T>
std::array<T, 4> lz_formulas(const T& c1, const T& mu, const T& mu_bar, const T& rho, const T& rho_bar,
                             const T& psi) {
  T one(Rational(1));
  T nu = T(Rational(4)) - c1 * c1;
  T um = one - mu * mu_bar;
  T ur = one - rho * rho_bar;
  T c2 = (c1 * c1 + nu * mu) * T(Rational(1, 2));
  T c3 = (c1 * c1 * c1 + T(Rational(2)) * c1 * nu * mu - c1 * nu * mu * mu + T(Rational(2)) * nu * um * rho) *
         T(Rational(1, 4));
  T c1sq = c1 * c1;
  T c4 = (c1sq * c1sq + T(Rational(3)) * c1sq * nu * mu + (T(Rational(4)) - T(Rational(3)) * c1sq) * nu * mu * mu +
          c1sq * nu * mu * mu * mu + T(Rational(4)) * nu * um * ur * psi +
          T(Rational(4)) * nu * um * (c1 * rho - c1 * mu * rho - mu_bar * rho * rho)) *
         T(Rational(1, 8));
  return {c1, c2, c3, c4};
}

inline std::array<GaussianRational, 4> lz_expand(const LZParams& p) {
  p.validate();
  GaussianRational c1(p.c1);
  auto c = lz_formulas<GaussianRational>(c1, p.mu, p.mu.conj(), p.rho, p.rho.conj(), p.psi);
  for (const auto& ct : c)
    if (Rational(4) < mod_sq(ct)) throw DomainError("lz: produced |c_t| > 2");
  return c;
}

/// Symbolic c1..c4 over (c, m, mb, r, rb, s): m = mu, mb = conj(mu), etc.
inline std::array<MultiPoly, 4> lz_symbolic() {
  auto v = [](const char* n) { return MultiPoly::var(n); };
  return lz_formulas<MultiPoly>(v("c"), v("m"), v("mb"), v("r"), v("rb"), v("s"));
}

/// a_2..a_N of the normalized f with 1 + z f''/f' = (3 p(z) - 1)/2, from
/// f'' = q f' with q = (3/2)(p - 1)/z. Writing f' = sum b_k z^k:
/// (k+1) b_{k+1} = (3/2) sum_{j<=k} c_{j+1} b_{k-j}, a_n = b_{n-1}/n.
template <class T>
PowerSeries<T> caratheodory_to_ozaki(const std::vector<T>& c, int order = 5) {
  if (order < 1) throw UsageError("caratheodory_to_ozaki: order must be positive");
  if (static_cast<int>(c.size()) < order - 1)
    throw UsageError("caratheodory_to_ozaki: need " + std::to_string(order - 1) + " Caratheodory coefficients");
  std::vector<T> b(static_cast<std::size_t>(order), T(Rational(0)));
  b[0] = T(Rational(1));
  for (int k = 0; k + 1 < order; ++k) {
    T acc(Rational(0));
    for (int j = 0; j <= k; ++j) acc += c[j] * b[k - j];
    b[k + 1] = acc * T(Rational(3, 2 * (k + 1)));
  }
  PowerSeries<T> f(order);
  for (int n = 1; n <= order; ++n) f[n] = b[n - 1] * T(Rational(1, n));
  return f;
}

/// Same map through f' = exp(integral q); kept as an independent path.
template <class T>
PowerSeries<T> caratheodory_to_ozaki_exp(const std::vector<T>& c, int order = 5) {
  if (order < 2) return caratheodory_to_ozaki(c, order);
  if (static_cast<int>(c.size()) < order - 1) throw UsageError("caratheodory_to_ozaki_exp: too few coefficients");
  PowerSeries<T> q(order - 2);
  for (int j = 0; j <= order - 2; ++j) q[j] = c[j] * T(Rational(3, 2));
  PowerSeries<T> fp = series_exp(series_integrate(q));
  PowerSeries<T> f(order);
  for (int n = 1; n <= order; ++n) f[n] = fp[n - 1] * T(Rational(1, n));
  return f;
}

/// H_{3,1}(f^{-1}) for f in the Ozaki class, directly in c1..c4.
template <class T>
T h31_inverse_closed_form(const T& c1, const T& c2, const T& c3, const T& c4) {
  auto k = [](long v) { return T(Rational(v)); };
  T c1_2 = c1 * c1;
  T c1_3 = c1_2 * c1;
  T c1_4 = c1_2 * c1_2;
  T s = k(27) * c1_4 * c1_2 - k(108) * c1_4 * c2 + k(36) * c1_3 * c3 + k(117) * c1_2 * c2 * c2 - k(88) * c2 * c2 * c2 +
        k(72) * c1 * c2 * c3 - k(72) * c1_2 * c4 - k(80) * c3 * c3 + k(96) * c2 * c4;
  return s * T(Rational(1, 5120));
}

template <class T>
T h31_inverse_closed_form(const std::vector<T>& c) {
  if (c.size() < 4) throw UsageError("h31_inverse_closed_form: need c1..c4");
  return h31_inverse_closed_form(c[0], c[1], c[2], c[3]);
}

/// The same quantity through the series pipeline: revert then Hankel.
template <class T>
T h31_inverse_pipeline(const std::vector<T>& c) {
  return hankel_det(series_revert(caratheodory_to_ozaki(c, 5)), HankelSpec{3, 1});
}

/// The bounding polynomial theta(c, x, y) in sparse form.
inline MultiPoly theta_poly() {
  MultiPoly c = MultiPoly::var("c"), x = MultiPoly::var("x"), y = MultiPoly::var("y");
  auto q = [](long n, long d = 1) { return MultiPoly(Rational(n, d)); };
  MultiPoly c2 = c * c, c3 = c2 * c, c4 = c2 * c2, c6 = c4 * c2;
  MultiPoly x2 = x * x, x3 = x2 * x, x4 = x2 * x2;
  MultiPoly nu = q(4) - c2;
  MultiPoly one_x = q(1) - x2;
  MultiPoly sq = c2 - q(18, 7);
  MultiPoly inner = q(13, 2) * c4 * x + q(2) * c4 * x2 + (q(37) * c2 - q(37, 4) * c4) * x2 + (q(4) * c2 - c4) * x4 +
                    (q(236, 7) + q(7) * sq * sq) * x3 +
                    one_x * (q(2) * c * nu * (q(1) + q(2) * x) * x + q(4) * c3 * (q(1) + q(3) * x)) * y +
                    q(4) * one_x * (q(3) * c2 * x + nu * (q(5) + x2)) * y * y +
                    q(12) * (c2 + q(2) * nu * x) * one_x * (q(1) - y * y);
  return q(5, 4) * c6 + nu * inner;
}

/// One term coef(c) * m^a mb^b r^d s^e * (1-|mu|^2)^f * (1-|rho|^2)^g of
/// the expanded determinant; its modulus majorant is
/// |coef(c)| x^(a+b) y^d (1-x^2)^f (1-y^2)^g with |s| <= 1.
struct ModulusTerm {
  MultiPoly coef;
  int m = 0, mb = 0, r = 0, s = 0, um = 0, ur = 0;

  MultiPoly expression() const {
    auto v = [](const char* n) { return MultiPoly::var(n); };
    MultiPoly one(1);
    return coef * v("m").pow(m) * v("mb").pow(mb) * v("r").pow(r) * v("s").pow(s) *
           (one - v("m") * v("mb")).pow(um) * (one - v("r") * v("rb")).pow(ur);
  }
  MultiPoly majorant(int sign) const {
    auto v = [](const char* n) { return MultiPoly::var(n); };
    MultiPoly one(1);
    return coef.scaled(Rational(sign)) * v("x").pow(m + mb) * v("y").pow(r) * (one - v("x") * v("x")).pow(um) *
           (one - v("y") * v("y")).pow(ur);
  }
};

/// 5120 H written term by term in (c, mu, conj mu, rho, conj rho, psi).
inline std::vector<ModulusTerm> h31_modulus_terms() {
  MultiPoly c = MultiPoly::var("c");
  auto q = [](long n, long d = 1) { return MultiPoly(Rational(n, d)); };
  MultiPoly c2 = c * c, c3 = c2 * c, c4 = c2 * c2, c6 = c4 * c2;
  MultiPoly nu = q(4) - c2;
  MultiPoly sq = c2 - q(18, 7);
  std::vector<ModulusTerm> t;
  t.push_back({q(5, 4) * c6});
  t.push_back({q(-13, 2) * c4 * nu, 1});
  t.push_back({q(-2) * c4 * nu, 2});
  t.push_back({(q(37) * c2 - q(37, 4) * c4) * nu, 2});
  t.push_back({c2 * nu * nu, 4});
  t.push_back({(q(-236, 7) - q(7) * sq * sq) * nu, 3});
  t.push_back({q(2) * c * nu * nu, 1, 0, 1, 0, 1, 0});
  t.push_back({q(-4) * c * nu * nu, 2, 0, 1, 0, 1, 0});
  t.push_back({q(4) * c3 * nu, 0, 0, 1, 0, 1, 0});
  t.push_back({q(12) * c3 * nu, 1, 0, 1, 0, 1, 0});
  t.push_back({q(12) * c2 * nu, 0, 1, 2, 0, 1, 0});
  t.push_back({q(-20) * nu * nu, 0, 0, 2, 0, 1, 0});
  t.push_back({q(-4) * nu * nu, 1, 1, 2, 0, 1, 0});
  t.push_back({q(-12) * c2 * nu, 0, 0, 0, 1, 1, 1});
  t.push_back({q(24) * nu * nu, 1, 0, 0, 1, 1, 1});
  return t;
}

/// Right side of the determinant in the disc parameters as printed, with
/// mu^2 and rho^2 in place of |mu|^2 and |rho|^2 and no psi on the last block.
inline MultiPoly h31_lz_form_as_printed() {
  auto v = [](const char* n) { return MultiPoly::var(n); };
  auto q = [](long n, long d = 1) { return MultiPoly(Rational(n, d)); };
  MultiPoly c = v("c"), m = v("m"), r = v("r");
  MultiPoly c2 = c * c, c3 = c2 * c, c4 = c2 * c2, c6 = c4 * c2;
  MultiPoly nu = q(4) - c2;
  MultiPoly sq = c2 - q(18, 7);
  MultiPoly um = q(1) - m * m;
  return q(5, 4) * c6 +
         nu * (q(-13, 2) * c4 * m - q(2) * c4 * m * m + (q(37) * c2 - q(37, 4) * c4) * m * m + c2 * nu * m.pow(4) -
               (q(236, 7) + q(7) * sq * sq) * m.pow(3) +
               um * (q(2) * c * nu * (q(1) - q(2) * m) * m + q(4) * c3 * (q(1) + q(3) * m)) * r +
               q(4) * um * (q(3) * c2 * m - nu * (q(5) + m * m)) * r * r +
               q(12) * (q(0) - c2 + q(2) * nu * m) * um * (q(1) - r * r));
}

/// Corrected form: moduli in the (1 - |.|^2) factors, conj(mu) in the
/// rho^2 block, psi on the last block.
inline MultiPoly h31_lz_form_corrected() {
  MultiPoly out;
  for (const auto& t : h31_modulus_terms()) out += t.expression();
  return out;
}

struct DominanceVerdict {
  bool holds = false;
  bool exact = false;  // true when |mu| and |rho| were rational
  GaussianRational h31;
  Rational lhs;  // 5120^2 |H|^2
  Rational rhs;  // theta^2 or squared Bernstein lower bound
  Rational x_lo, x_hi, y_lo, y_hi;
};

namespace detail {

inline bool exact_sqrt(const Rational& q, Rational& out) {
  auto [lo, hi] = sqrt_bracket(q);
  if (lo == hi) {
    out = lo;
    return true;
  }
  return false;
}

}  // namespace detail

/// Checks 5120 |H| <= theta(c1, |mu|, |rho|) exactly; irrational moduli go
/// through a rational bracket and a Bernstein lower bound of theta on it.
inline DominanceVerdict theta_dominates_h31(const LZParams& p) {
  auto c = lz_expand(p);
  DominanceVerdict v;
  v.h31 = h31_inverse_closed_form(c[0], c[1], c[2], c[3]);
  v.lhs = Rational(5120 * 5120) * mod_sq(v.h31);
  static const MultiPoly theta = theta_poly();
  Rational x, y;
  if (detail::exact_sqrt(mod_sq(p.mu), x) && detail::exact_sqrt(mod_sq(p.rho), y)) {
    v.exact = true;
    v.x_lo = v.x_hi = x;
    v.y_lo = v.y_hi = y;
    Rational t = theta.eval({{"c", p.c1}, {"x", x}, {"y", y}});
    v.rhs = t * t;
    v.holds = t.sign() >= 0 && v.lhs <= v.rhs;
    return v;
  }
  for (unsigned bits : {32u, 64u, 128u, 256u}) {
    auto [xl, xh] = sqrt_bracket(mod_sq(p.mu), bits);
    auto [yl, yh] = sqrt_bracket(mod_sq(p.rho), bits);
    if (Rational(1) < xh) xh = Rational(1);
    if (Rational(1) < yh) yh = Rational(1);
    Box b{{"c", Interval::point(p.c1)}, {"x", Interval::closed(xl, xh)}, {"y", Interval::closed(yl, yh)}};
    Rational low = bernstein_bounds(theta, b).first;
    v.x_lo = xl;
    v.x_hi = xh;
    v.y_lo = yl;
    v.y_hi = yh;
    v.rhs = low.sign() > 0 ? low * low : Rational(0);
    if (low.sign() >= 0 && v.lhs <= v.rhs) {
      v.holds = true;
      return v;
    }
  }
  return v;
}

/// Unimodular Gaussian rational ((1 - s^2) + 2 s i) / (1 + s^2).
inline GaussianRational pythagorean_unit(const Rational& s) {
  Rational d = Rational(1) + s * s;
  return {(Rational(1) - s * s) / d, Rational(2) * s / d};
}

/// c_t = 2 sum_j lambda_j eps_j^t, t = 1..4.
inline std::vector<GaussianRational> caratheodory_from_atoms(const std::vector<Rational>& lambdas,
                                                             const std::vector<Rational>& s) {
  if (lambdas.empty() || lambdas.size() != s.size()) throw UsageError("atoms: need matching weights and points");
  Rational total(0);
  for (const auto& l : lambdas) {
    if (l.sign() <= 0) throw UsageError("atoms: weights must be positive");
    total += l;
  }
  if (!(total == Rational(1))) throw UsageError("atoms: weights must sum to 1");
  std::vector<GaussianRational> c(4, GaussianRational(0));
  for (std::size_t j = 0; j < s.size(); ++j) {
    GaussianRational e = pythagorean_unit(s[j]);
    GaussianRational p = e;
    for (int t = 0; t < 4; ++t) {
      c[t] += GaussianRational(Rational(2) * lambdas[j]) * p;
      p = p * e;
    }
  }
  return c;
}

struct CaratheodorySample {
  std::uint64_t seed = 0;
  std::vector<Rational> lambdas;
  std::vector<Rational> s;
  std::vector<GaussianRational> c;
};

/// Random convex combination of k extreme points of the Caratheodory class.
inline CaratheodorySample sample_caratheodory(std::uint64_t seed, int k) {
  if (k < 1 || k > 4) throw UsageError("sample_caratheodory: atoms must be in 1..4");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> weight(1, 1000), num(-2000, 2000), den(1, 400);
  CaratheodorySample out;
  out.seed = seed;
  long sum = 0;
  std::vector<long> w;
  for (int j = 0; j < k; ++j) {
    w.push_back(weight(rng));
    sum += w.back();
  }
  for (int j = 0; j < k; ++j) {
    out.lambdas.emplace_back(w[j], sum);
    out.s.emplace_back(num(rng), den(rng));
  }
  out.c = caratheodory_from_atoms(out.lambdas, out.s);
  return out;
}

/// Random disc parameters with rational |mu| and |rho|.
inline LZParams sample_lz_params(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> unit(0, 1000), num(-500, 500), den(1, 100);
  auto disc_point = [&] {
    Rational radius(unit(rng), 1000);
    return GaussianRational(radius) * pythagorean_unit(Rational(num(rng), den(rng)));
  };
  LZParams p;
  p.c1 = Rational(2 * unit(rng), 1000);
  p.mu = disc_point();
  p.rho = disc_point();
  p.psi = disc_point();
  return p;
}

/// Coefficient of z^(2k+1) in z (1 - z^2)^(-1/2): binom(2k, k) / 4^k.
inline Rational f0_coefficient(int k) {
  Rational acc(1);
  for (int j = 1; j <= k; ++j) acc *= Rational(2 * j - 1, 2 * j);
  return acc;
}

/// a_1..a_N of z / sqrt(1 - z^2).
inline PowerSeries<Rational> f0_series(int order = 5) {
  PowerSeries<Rational> f(order);
  for (int n = 1; n <= order; n += 2) f[n] = f0_coefficient((n - 1) / 2);
  return f;
}

}  // namespace h31cert
