#pragma once

#include <string>
#include <vector>

#include "h31cert/coefficient_maps.hpp"
#include "h31cert/multi_poly.hpp"
#include "h31cert/uni_poly.hpp"

/// Named polynomials and constants of the bound argument.
namespace h31cert::catalog {

inline Rational split_low() { return Rational(87137, 250000); }
inline Rational split_high() { return Rational(4511, 4000); }
/// Rational brackets for 4/sqrt(7) and sqrt(5/2).
inline Rational c_lo() { return Rational(7559, 5000); }
inline Rational s_lo() { return Rational(15811, 10000); }
inline Rational s_hi() { return Rational(15812, 10000); }

inline UniPoly uni(std::vector<Rational> low_to_high) { return UniPoly(std::move(low_to_high)); }

/// Coefficients of x^0..x^4 of Psi - 320, as polynomials in c (index 1..5).
inline UniPoly psi(int i) {
  using R = Rational;
  switch (i) {
    case 1:
      return uni({0, 0, -160, 16, 20, -4, R(5, 4)});
    case 2:
      return uni({0, 32, 48, 32, 14, -10, R(-13, 2)});
    case 3:
      return uni({-256, 64, 276, -48, -82, 8, R(29, 4)});
    case 4:
      return uni({320, -32, -272, -32, 76, 10, -7});
    case 5:
      return uni({-64, -64, 48, 32, -12, -4, 1});
  }
  throw UsageError("psi index must be 1..5");
}

/// Coefficients of c^0..c^6 of Psi - 320, as polynomials in x (index 1..7).
inline UniPoly phi(int i) {
  using R = Rational;
  switch (i) {
    case 1:
      return uni({0, 0, -256, 320, -64});
    case 2:
      return uni({0, 32, 64, -32, -64});
    case 3:
      return uni({-160, 48, 276, -272, 48});
    case 4:
      return uni({16, 32, -48, -32, 32});
    case 5:
      return uni({20, 14, -82, 76, -12});
    case 6:
      return uni({-4, -10, 8, 10, -4});
    case 7:
      return uni({R(5, 4), R(-13, 2), R(29, 4), -7, 1});
  }
  throw UsageError("phi index must be 1..7");
}

inline UniPoly gamma(int i) {
  switch (i) {
    case 1:
      return uni({0, 0, -256, 320, -64});
    case 2:
      return uni({0, 0, 96, -32, -64});
    case 3:
      return uni({0, 0, 164, -272, 48});
    case 4:
      return uni({0, 0, 0, -32, 32});
    case 5:
      return uni({0, 0, -48, 76, -12});
    case 6:
      return uni({0, 0, -6, 10, -4});
    case 7:
      return uni({0, 0, 2, -7, 1});
  }
  throw UsageError("gamma index must be 1..7");
}

inline std::vector<UniPoly> psi_list() { return {psi(1), psi(2), psi(3), psi(4), psi(5)}; }
inline std::vector<UniPoly> phi_list() { return {phi(1), phi(2), phi(3), phi(4), phi(5), phi(6), phi(7)}; }
/// Gamma uses gamma_1..gamma_6 and phi_7 as its c^6 coefficient.
inline std::vector<UniPoly> gamma_coeffs() {
  return {gamma(1), gamma(2), gamma(3), gamma(4), gamma(5), gamma(6), phi(7)};
}

inline MultiPoly stack(const std::vector<UniPoly>& coeffs, const std::string& coeff_var, const std::string& power_var) {
  MultiPoly out;
  MultiPoly v = MultiPoly::var(power_var);
  for (std::size_t i = 0; i < coeffs.size(); ++i)
    out += coeffs[i].to_multi(coeff_var) * v.pow(static_cast<unsigned>(i));
  return out;
}

/// Psi(c, x) = 320 + sum psi_{i+1}(c) x^i.
inline MultiPoly Psi() { return MultiPoly(320) + stack(psi_list(), "c", "x"); }
/// Phi(c, x) = sum phi_{i+1}(x) c^i.
inline MultiPoly Phi() { return stack(phi_list(), "x", "c"); }
inline MultiPoly Gamma() { return stack(gamma_coeffs(), "x", "c"); }

inline UniPoly lemma13_den_factor() { return uni({88, -28, -82, 21, 11}); }
inline UniPoly lemma13_numerator() {
  return uni({225280, -71680, -321536, 103936, 148224, -39936, -19856, 7816, -80, -662, -59});
}

/// 320 + psi_1 + psi_2 x + (psi_3 + psi_4/4) x^2.
inline MultiPoly lemma13_envelope() {
  MultiPoly x = MultiPoly::var("x");
  return MultiPoly(320) + psi(1).to_multi("c") + psi(2).to_multi("c") * x +
         (psi(3) + psi(4).scaled(Rational(1, 4))).to_multi("c") * x * x;
}

/// y-free envelope used where the y^2 coefficient of theta is non-positive.
inline MultiPoly interior_envelope() {
  return MultiPoly::parse(
      "-21/4*c^6 - 14*c^5 + 38*c^4 + 48*c^3 - 144*c^2 + 32*c + 384"
      " + c^6*x^4 - 4*c^5*x^4 - 8*c^4*x^4 + 32*c^3*x^4 + 16*c^2*x^4 - 64*c*x^4"
      " - 7*c^6*x^3 + 10*c^5*x^3 + 40*c^4*x^3 - 32*c^3*x^3 - 32*c^2*x^3 - 32*c*x^3 - 64*x^3"
      " + 29/4*c^6*x^2 + 8*c^5*x^2 - 54*c^4*x^2 - 48*c^3*x^2 + 100*c^2*x^2 + 64*c*x^2");
}

/// c^2 (x - 8) - 4 (x - 5): sign of the y^2 coefficient for x < 1.
inline MultiPoly stationary_condition() { return MultiPoly::parse_expression("c^2*(x - 8) - 4*(x - 5)"); }

/// Bracket of the y^2 coefficient of theta divided by (4 - c^2)(1 - x^2).
inline MultiPoly y2_bracket() {
  return MultiPoly::parse_expression("4*(4 - c^2)*(x^2 + 5) + 12*c^2*x - 12*(2*(4 - c^2)*x + c^2)");
}

inline MultiPoly stationary_y_num() { return MultiPoly::parse_expression("4*c*x*(1 + 2*x) + c^3*(2 + (5 - 2*x)*x)"); }
inline MultiPoly stationary_y_den() {
  return MultiPoly::parse_expression("4*(c^2*(-8 + x) - 4*(-5 + x))*(-1 + x)");
}

}  // namespace h31cert::catalog
