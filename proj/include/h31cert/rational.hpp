#pragma once

#include <gmpxx.h>

#include <compare>
#include <concepts>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>

#include "h31cert/errors.hpp"

namespace h31cert {

/// Exact rational number, always in lowest terms with a positive
/// denominator. Thin value wrapper over GMP's mpq_class so that no
/// expression templates leak into generic code.
class Rational {
 public:
  Rational() = default;

  template <std::integral I>
  Rational(I v) : v_(to_mpz(v)) {}  // NOLINT(google-explicit-constructor)

  Rational(const mpz_class& n) : v_(n) {}  // NOLINT(google-explicit-constructor)

  Rational(const mpz_class& n, const mpz_class& d) {
    if (d == 0) throw InputError("rational: zero denominator");
    v_ = mpq_class(n, d);
    v_.canonicalize();
  }

  explicit Rational(const mpq_class& q) : v_(q) { v_.canonicalize(); }

  /// Accepts "p/q" or "p" with optional sign; no decimal point.
  static Rational parse(std::string_view text) {
    std::string s(text);
    auto first = s.find_first_not_of(" \t");
    auto last = s.find_last_not_of(" \t");
    if (first == std::string::npos) throw InputError("rational: empty text");
    s = s.substr(first, last - first + 1);
    auto slash = s.find('/');
    auto digits_ok = [](const std::string& part, bool allow_sign) {
      if (part.empty()) return false;
      std::size_t i = 0;
      if (allow_sign && (part[0] == '-' || part[0] == '+')) i = 1;
      if (i == part.size()) return false;
      for (; i < part.size(); ++i)
        if (part[i] < '0' || part[i] > '9') return false;
      return true;
    };
    std::string num = slash == std::string::npos ? s : s.substr(0, slash);
    std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
    if (!digits_ok(num, true) || !digits_ok(den, false))
      throw InputError("rational: cannot parse '" + std::string(text) + "'");
    if (num[0] == '+') num.erase(0, 1);
    return Rational(mpz_class(num), mpz_class(den));
  }

  std::string str() const {
    if (v_.get_den() == 1) return v_.get_num().get_str();
    return v_.get_num().get_str() + "/" + v_.get_den().get_str();
  }

  mpz_class numerator() const { return v_.get_num(); }
  mpz_class denominator() const { return v_.get_den(); }
  const mpq_class& raw() const { return v_; }

  int sign() const { return sgn(v_); }
  bool is_zero() const { return sgn(v_) == 0; }
  bool is_integer() const { return v_.get_den() == 1; }
  double to_double() const { return v_.get_d(); }

  Rational operator-() const { return Rational(mpq_class(-v_)); }
  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) throw DomainError("rational: division by zero");
    v_ /= o.v_;
    return *this;
  }

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    int c = cmp(a.v_, b.v_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

 private:
  template <std::integral I>
  static mpz_class to_mpz(I v) {
    if constexpr (std::is_signed_v<I>) {
      return mpz_class(static_cast<long>(v));
    } else {
      return mpz_class(static_cast<unsigned long>(v));
    }
  }

  mpq_class v_;
};

/// `rational_normalize` of the contract: reduced fraction n/d with d > 0.
inline Rational rational_normalize(const mpz_class& n, const mpz_class& d) { return Rational(n, d); }

inline Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }

inline Rational pow(Rational base, unsigned exp) {
  Rational out(1);
  while (exp) {
    if (exp & 1u) out *= base;
    base *= base;
    exp >>= 1u;
  }
  return out;
}

inline Rational midpoint(const Rational& a, const Rational& b) { return (a + b) / Rational(2); }

/// Rational bracket lo <= sqrt(q) <= hi with hi - lo <= 2^-bits; exact
/// (lo == hi) when q is a perfect rational square.
inline std::pair<Rational, Rational> sqrt_bracket(const Rational& q, unsigned bits = 64) {
  if (q.sign() < 0) throw DomainError("sqrt_bracket: negative argument");
  mpz_class n = q.numerator(), d = q.denominator();
  mpz_class rn, rd;
  mpz_sqrt(rn.get_mpz_t(), n.get_mpz_t());
  mpz_sqrt(rd.get_mpz_t(), d.get_mpz_t());
  if (rn * rn == n && rd * rd == d) {
    Rational r(rn, rd);
    return {r, r};
  }
  // sqrt(n/d) = sqrt(n*d*4^bits) / (d * 2^bits)
  mpz_class scale = mpz_class(1) << bits;
  mpz_class radicand = n * d * scale * scale;
  mpz_class root;
  mpz_sqrt(root.get_mpz_t(), radicand.get_mpz_t());
  mpz_class den = d * scale;
  return {Rational(root, den), Rational(root + 1, den)};
}

/// Exact complex rational re + im*i.
class GaussianRational {
 public:
  GaussianRational() = default;
  template <std::integral I>
  GaussianRational(I re) : re_(re) {}  // NOLINT(google-explicit-constructor)
  GaussianRational(Rational re) : re_(std::move(re)) {}  // NOLINT(google-explicit-constructor)
  GaussianRational(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {}

  const Rational& re() const { return re_; }
  const Rational& im() const { return im_; }
  bool is_real() const { return im_.is_zero(); }
  bool is_zero() const { return re_.is_zero() && im_.is_zero(); }

  GaussianRational conj() const { return {re_, -im_}; }

  GaussianRational operator-() const { return {-re_, -im_}; }
  GaussianRational& operator+=(const GaussianRational& o) {
    re_ += o.re_;
    im_ += o.im_;
    return *this;
  }
  GaussianRational& operator-=(const GaussianRational& o) {
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
  }
  GaussianRational& operator*=(const GaussianRational& o) {
    Rational r = re_ * o.re_ - im_ * o.im_;
    Rational i = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(r);
    im_ = std::move(i);
    return *this;
  }
  GaussianRational& operator/=(const GaussianRational& o) {
    Rational m = o.re_ * o.re_ + o.im_ * o.im_;
    if (m.is_zero()) throw DomainError("gaussian: division by zero");
    *this *= o.conj();
    re_ /= m;
    im_ /= m;
    return *this;
  }

  friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
  friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
  friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
  friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }
  friend bool operator==(const GaussianRational& a, const GaussianRational& b) = default;

  /// "re", "im i", "re+im i" with rationals in p/q form, e.g. "1/2-3/4i".
  std::string str() const {
    if (im_.is_zero()) return re_.str();
    std::string imag = im_.str() + "i";
    if (re_.is_zero()) return imag;
    return re_.str() + (im_.sign() > 0 ? "+" : "") + imag;
  }

  static GaussianRational parse(std::string_view text) {
    std::string s;
    for (char ch : text)
      if (ch != ' ' && ch != '\t') s.push_back(ch);
    if (s.empty()) throw InputError("gaussian: empty text");
    if (s.back() != 'i') return {Rational::parse(s)};
    s.pop_back();
    // split at the last sign that is not the leading one
    std::size_t split = std::string::npos;
    for (std::size_t k = s.size(); k-- > 1;) {
      if (s[k] == '+' || s[k] == '-') {
        split = k;
        break;
      }
    }
    auto imag_of = [](std::string part) {
      if (part.empty() || part == "+") return Rational(1);
      if (part == "-") return Rational(-1);
      return Rational::parse(part);
    };
    if (split == std::string::npos) return {Rational(0), imag_of(s)};
    return {Rational::parse(s.substr(0, split)), imag_of(s.substr(split))};
  }

 private:
  Rational re_;
  Rational im_;
};

/// `gaussian_mod_sq`: re^2 + im^2, exact.
inline Rational mod_sq(const GaussianRational& z) { return z.re() * z.re() + z.im() * z.im(); }
inline Rational mod_sq(const Rational& r) { return r * r; }

inline GaussianRational pow(GaussianRational base, unsigned exp) {
  GaussianRational out(1);
  while (exp) {
    if (exp & 1u) out *= base;
    base *= base;
    exp >>= 1u;
  }
  return out;
}

/// Rational-endpoint interval with explicit openness flags.
class Interval {
 public:
  Interval() : Interval(Rational(0), Rational(0)) {}
  Interval(Rational lo, Rational hi, bool lo_open = false, bool hi_open = false)
      : lo_(std::move(lo)), hi_(std::move(hi)), lo_open_(lo_open), hi_open_(hi_open) {
    if (hi_ < lo_) throw DomainError("interval: lo > hi");
    if (lo_ == hi_ && (lo_open_ || hi_open_))
      throw DomainError("interval: degenerate interval must be closed");
  }

  static Interval closed(Rational lo, Rational hi) { return {std::move(lo), std::move(hi)}; }
  static Interval point(const Rational& p) { return {p, p}; }

  const Rational& lo() const { return lo_; }
  const Rational& hi() const { return hi_; }
  bool lo_open() const { return lo_open_; }
  bool hi_open() const { return hi_open_; }
  bool is_point() const { return lo_ == hi_; }
  Rational width() const { return hi_ - lo_; }
  Interval closure() const { return {lo_, hi_}; }

  bool contains(const Rational& p) const {
    bool above = lo_open_ ? lo_ < p : lo_ <= p;
    bool below = hi_open_ ? p < hi_ : p <= hi_;
    return above && below;
  }

  /// True when every point of `inner` lies in *this.
  bool contains(const Interval& inner) const {
    bool left = lo_ < inner.lo_ || (lo_ == inner.lo_ && (!lo_open_ || inner.lo_open_));
    bool right = inner.hi_ < hi_ || (inner.hi_ == hi_ && (!hi_open_ || inner.hi_open_));
    return left && right;
  }

  std::string str() const {
    return std::string(lo_open_ ? "(" : "[") + lo_.str() + ", " + hi_.str() + (hi_open_ ? ")" : "]");
  }

  /// Parses "[a, b]", "(a, b]", ... as produced by str().
  static Interval parse(std::string_view text) {
    std::string s;
    for (char ch : text)
      if (ch != ' ' && ch != '\t') s.push_back(ch);
    if (s.size() < 5) throw InputError("interval: cannot parse '" + std::string(text) + "'");
    char open = s.front(), close = s.back();
    if ((open != '[' && open != '(') || (close != ']' && close != ')'))
      throw InputError("interval: bad brackets in '" + std::string(text) + "'");
    auto comma = s.find(',');
    if (comma == std::string::npos) throw InputError("interval: missing comma");
    return {Rational::parse(s.substr(1, comma - 1)), Rational::parse(s.substr(comma + 1, s.size() - comma - 2)),
            open == '(', close == ')'};
  }

  friend bool operator==(const Interval&, const Interval&) = default;

 private:
  Rational lo_;
  Rational hi_;
  bool lo_open_ = false;
  bool hi_open_ = false;
};

}  // namespace h31cert
