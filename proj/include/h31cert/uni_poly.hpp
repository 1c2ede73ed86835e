#pragma once

#include <string>
#include <utility>
#include <vector>

#include "h31cert/errors.hpp"
#include "h31cert/multi_poly.hpp"
#include "h31cert/rational.hpp"

namespace h31cert {

/// Dense univariate polynomial, coefficients from degree 0 upward.
class UniPoly {
 public:
  UniPoly() = default;
  explicit UniPoly(std::vector<Rational> low_to_high) : c_(std::move(low_to_high)) { trim(); }
  UniPoly(const Rational& constant) : c_{constant} { trim(); }  // NOLINT(google-explicit-constructor)
  template <std::integral I>
  UniPoly(I constant) : UniPoly(Rational(constant)) {}  // NOLINT(google-explicit-constructor)

  static UniPoly x() { return UniPoly(std::vector<Rational>{Rational(0), Rational(1)}); }

  /// From a polynomial in at most one variable.
  static UniPoly from_multi(const MultiPoly& p, const std::string& var) {
    auto used = p.used_vars();
    if (used.size() > 1 || (used.size() == 1 && used[0] != var))
      throw UsageError("UniPoly: polynomial '" + p.str() + "' is not univariate in " + var);
    auto parts = p.coeffs_in(var);
    std::vector<Rational> c;
    for (const auto& part : parts) c.push_back(part.constant_term());
    return UniPoly(std::move(c));
  }

  MultiPoly to_multi(const std::string& var) const {
    MultiPoly out;
    MultiPoly v = MultiPoly::var(var);
    for (int k = degree(); k >= 0; --k) out = out * v + MultiPoly(c_[k]);
    return out;
  }

  /// Single-variable text, e.g. "5/4*c^6 - 4*c^5 + 320".
  static UniPoly parse(std::string_view text, const std::string& var) {
    return from_multi(MultiPoly::parse(text), var);
  }
  std::string str(const std::string& var = "c") const { return to_multi(var).str(); }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<Rational>& coeffs() const { return c_; }
  Rational coeff(int k) const { return k >= 0 && k <= degree() ? c_[k] : Rational(0); }
  Rational leading() const { return is_zero() ? Rational(0) : c_.back(); }

  Rational operator()(const Rational& t) const {
    Rational acc(0);
    for (int k = degree(); k >= 0; --k) acc = acc * t + c_[k];
    return acc;
  }
  int sign_at(const Rational& t) const { return (*this)(t).sign(); }

  UniPoly derivative() const {
    std::vector<Rational> d;
    for (int k = 1; k <= degree(); ++k) d.push_back(c_[k] * Rational(k));
    return UniPoly(std::move(d));
  }

  UniPoly operator-() const {
    UniPoly out = *this;
    for (auto& v : out.c_) v = -v;
    return out;
  }
  friend UniPoly operator+(const UniPoly& a, const UniPoly& b) {
    std::vector<Rational> c(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t k = 0; k < c.size(); ++k) c[k] = a.coeff(static_cast<int>(k)) + b.coeff(static_cast<int>(k));
    return UniPoly(std::move(c));
  }
  friend UniPoly operator-(const UniPoly& a, const UniPoly& b) { return a + (-b); }
  friend UniPoly operator*(const UniPoly& a, const UniPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Rational> c(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
    return UniPoly(std::move(c));
  }
  UniPoly scaled(const Rational& k) const {
    UniPoly out = *this;
    for (auto& v : out.c_) v *= k;
    out.trim();
    return out;
  }
  friend bool operator==(const UniPoly& a, const UniPoly& b) { return a.c_ == b.c_; }

  /// Euclidean division: *this = q*d + r with deg r < deg d.
  std::pair<UniPoly, UniPoly> divmod(const UniPoly& d) const {
    if (d.is_zero()) throw DomainError("UniPoly: division by the zero polynomial");
    std::vector<Rational> r = c_;
    int dd = d.degree();
    std::vector<Rational> q(std::max(0, degree() - dd + 1));
    for (int k = degree(); k >= dd; --k) {
      if (r[k].is_zero()) continue;
      Rational f = r[k] / d.c_[dd];
      q[k - dd] = f;
      for (int j = 0; j <= dd; ++j) r[k - dd + j] -= f * d.c_[j];
    }
    return {UniPoly(std::move(q)), UniPoly(std::move(r))};
  }

  UniPoly monic() const { return is_zero() ? *this : scaled(Rational(1) / leading()); }

  /// p(a*t + b) as a polynomial in t.
  UniPoly compose_affine(const Rational& a, const Rational& b) const {
    UniPoly lin(std::vector<Rational>{b, a});
    UniPoly out;
    for (int k = degree(); k >= 0; --k) out = out * lin + UniPoly(c_[k]);
    return out;
  }

  /// p(q(t)).
  UniPoly compose(const UniPoly& q) const {
    UniPoly out;
    for (int k = degree(); k >= 0; --k) out = out * q + UniPoly(c_[k]);
    return out;
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  }
  std::vector<Rational> c_;
};

inline UniPoly pow(const UniPoly& p, unsigned k) {
  UniPoly out(1);
  for (unsigned i = 0; i < k; ++i) out = out * p;
  return out;
}

inline UniPoly poly_gcd(UniPoly a, UniPoly b) {
  while (!b.is_zero()) {
    UniPoly r = a.divmod(b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

/// p / gcd(p, p'): same distinct roots, all simple.
inline UniPoly squarefree_part(const UniPoly& p) {
  if (p.degree() <= 0) return p;
  UniPoly g = poly_gcd(p, p.derivative());
  return p.divmod(g).first;
}

/// Multiplicity of a rational root r of p (0 if not a root).
inline int root_multiplicity(UniPoly p, const Rational& r) {
  if (p.is_zero()) throw UsageError("root_multiplicity: zero polynomial");
  UniPoly lin(std::vector<Rational>{-r, Rational(1)});
  int m = 0;
  while (p.degree() >= 1 && p(r).is_zero()) {
    p = p.divmod(lin).first;
    ++m;
  }
  return m;
}

}  // namespace h31cert
