#pragma once

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "h31cert/errors.hpp"
#include "h31cert/rational.hpp"

namespace h31cert {

/// Sparse multivariate polynomial with exact rational coefficients.
/// Variable names are kept sorted; exponent vectors follow that order.
class MultiPoly {
 public:
  using Exponents = std::vector<int>;
  using Terms = std::map<Exponents, Rational>;

  MultiPoly() = default;
  MultiPoly(const Rational& c) {  // NOLINT(google-explicit-constructor)
    if (!c.is_zero()) terms_[{}] = c;
  }
  template <std::integral I>
  MultiPoly(I c) : MultiPoly(Rational(c)) {}  // NOLINT(google-explicit-constructor)

  static MultiPoly var(const std::string& name) {
    MultiPoly p;
    p.vars_ = {name};
    p.terms_[{1}] = Rational(1);
    return p;
  }

  /// Monomial coef * prod name_i^exp_i.
  static MultiPoly monomial(const Rational& coef, const std::map<std::string, int>& powers) {
    MultiPoly p;
    if (coef.is_zero()) return p;
    Exponents e;
    for (const auto& [name, k] : powers) {
      if (k < 0) throw UsageError("monomial: negative exponent");
      p.vars_.push_back(name);
      e.push_back(k);
    }
    p.terms_[e] = coef;
    return p;
  }

  const std::vector<std::string>& vars() const { return vars_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  bool is_constant() const {
    for (const auto& [e, c] : terms_)
      for (int k : e)
        if (k != 0) return false;
    return true;
  }
  Rational constant_term() const {
    for (const auto& [e, c] : terms_)
      if (std::all_of(e.begin(), e.end(), [](int k) { return k == 0; })) return c;
    return Rational(0);
  }

  int var_index(const std::string& name) const {
    auto it = std::find(vars_.begin(), vars_.end(), name);
    return it == vars_.end() ? -1 : static_cast<int>(it - vars_.begin());
  }
  bool has_var(const std::string& name) const { return var_index(name) >= 0; }

  int degree(const std::string& name) const {
    int i = var_index(name);
    if (i < 0) return is_zero() ? -1 : 0;
    int d = is_zero() ? -1 : 0;
    for (const auto& [e, c] : terms_) d = std::max(d, e[i]);
    return d;
  }
  int total_degree() const {
    int d = -1;
    for (const auto& [e, c] : terms_) {
      int s = 0;
      for (int k : e) s += k;
      d = std::max(d, s);
    }
    return d;
  }

  /// Variables that actually occur with a positive exponent.
  std::vector<std::string> used_vars() const {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < vars_.size(); ++i) {
      bool used = false;
      for (const auto& [e, c] : terms_)
        if (e[i] > 0) used = true;
      if (used) out.push_back(vars_[i]);
    }
    return out;
  }

  /// Re-expresses the polynomial over a sorted superset of its variables.
  MultiPoly with_vars(const std::vector<std::string>& target) const {
    if (target == vars_) return *this;
    std::vector<int> where(vars_.size());
    for (std::size_t i = 0; i < vars_.size(); ++i) {
      auto it = std::find(target.begin(), target.end(), vars_[i]);
      if (it == target.end()) {
        bool used = false;
        for (const auto& [e, c] : terms_)
          if (e[i] > 0) used = true;
        if (used) throw UsageError("with_vars: variable '" + vars_[i] + "' missing from target");
        where[i] = -1;
      } else {
        where[i] = static_cast<int>(it - target.begin());
      }
    }
    MultiPoly out;
    out.vars_ = target;
    for (const auto& [e, c] : terms_) {
      Exponents ne(target.size(), 0);
      for (std::size_t i = 0; i < e.size(); ++i)
        if (where[i] >= 0) ne[where[i]] = e[i];
      out.terms_[ne] += c;
    }
    return out;
  }

  MultiPoly trimmed() const { return with_vars(used_vars()); }

  MultiPoly operator-() const {
    MultiPoly out = *this;
    for (auto& [e, c] : out.terms_) c = -c;
    return out;
  }

  MultiPoly& operator+=(const MultiPoly& o) { return accumulate(o, Rational(1)); }
  MultiPoly& operator-=(const MultiPoly& o) { return accumulate(o, Rational(-1)); }
  MultiPoly& operator*=(const MultiPoly& o) {
    *this = *this * o;
    return *this;
  }

  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
    auto names = merged_vars(a.vars_, b.vars_);
    MultiPoly x = a.with_vars(names), y = b.with_vars(names);
    MultiPoly out;
    out.vars_ = names;
    for (const auto& [ea, ca] : x.terms_) {
      for (const auto& [eb, cb] : y.terms_) {
        Exponents e(ea);
        for (std::size_t i = 0; i < e.size(); ++i) e[i] += eb[i];
        out.terms_[e] += ca * cb;
      }
    }
    out.prune();
    return out;
  }

  friend bool operator==(const MultiPoly& a, const MultiPoly& b) {
    MultiPoly d = a - b;
    return d.is_zero();
  }

  MultiPoly scaled(const Rational& k) const {
    if (k.is_zero()) return {};
    MultiPoly out = *this;
    for (auto& [e, c] : out.terms_) c *= k;
    return out;
  }

  MultiPoly pow(unsigned k) const {
    MultiPoly out(1), base = *this;
    while (k) {
      if (k & 1u) out *= base;
      base *= base;
      k >>= 1u;
    }
    return out;
  }

  /// Full evaluation; every used variable needs a value.
  Rational eval(const std::map<std::string, Rational>& at) const {
    MultiPoly r = subs(at);
    if (!r.is_constant())
      throw UsageError("eval: no value for variable '" + r.used_vars().front() + "'");
    return r.constant_term();
  }

  /// Partial evaluation at rational values.
  MultiPoly subs(const std::map<std::string, Rational>& at) const {
    std::vector<int> idx;
    std::vector<const Rational*> val;
    for (std::size_t i = 0; i < vars_.size(); ++i) {
      auto it = at.find(vars_[i]);
      idx.push_back(it == at.end() ? -1 : static_cast<int>(i));
      val.push_back(it == at.end() ? nullptr : &it->second);
    }
    MultiPoly out;
    out.vars_ = vars_;
    for (const auto& [e, c] : terms_) {
      Rational k = c;
      Exponents ne(e);
      for (std::size_t i = 0; i < e.size(); ++i) {
        if (idx[i] >= 0 && e[i] > 0) {
          k *= h31cert::pow(*val[i], static_cast<unsigned>(e[i]));
          ne[i] = 0;
        }
      }
      out.terms_[ne] += k;
    }
    out.prune();
    return out.trimmed();
  }

  /// Substitutes a polynomial for one variable.
  MultiPoly subs(const std::string& name, const MultiPoly& q) const {
    int i = var_index(name);
    if (i < 0) return *this;
    int d = degree(name);
    std::vector<MultiPoly> powers{MultiPoly(1)};
    for (int k = 1; k <= d; ++k) powers.push_back(powers.back() * q);
    auto parts = coeffs_in(name);
    MultiPoly out;
    for (int k = 0; k <= d; ++k)
      if (!parts[k].is_zero()) out += parts[k] * powers[k];
    return out;
  }

  MultiPoly diff(const std::string& name) const {
    int i = var_index(name);
    MultiPoly out;
    out.vars_ = vars_;
    if (i < 0) return out;
    for (const auto& [e, c] : terms_) {
      if (e[i] == 0) continue;
      Exponents ne(e);
      ne[i] -= 1;
      out.terms_[ne] += c * Rational(e[i]);
    }
    out.prune();
    return out;
  }

  /// Coefficients with respect to one variable: p = sum_k out[k] * name^k.
  std::vector<MultiPoly> coeffs_in(const std::string& name) const {
    int i = var_index(name);
    int d = std::max(degree(name), 0);
    std::vector<MultiPoly> out(d + 1);
    for (auto& part : out) part.vars_ = vars_;
    for (const auto& [e, c] : terms_) {
      int k = i < 0 ? 0 : e[i];
      Exponents ne(e);
      if (i >= 0) ne[i] = 0;
      out[k].terms_[ne] += c;
    }
    for (auto& part : out) {
      part.prune();
      part = part.trimmed();
    }
    return out;
  }

  /// Expanded sparse text, descending lexicographic term order.
  std::string str() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      const auto& [e, c] = *it;
      std::string mono;
      for (std::size_t i = 0; i < e.size(); ++i) {
        if (e[i] == 0) continue;
        if (!mono.empty()) mono += "*";
        mono += vars_[i];
        if (e[i] > 1) mono += "^" + std::to_string(e[i]);
      }
      Rational mag = abs(c);
      std::string body;
      if (mono.empty()) {
        body = mag.str();
      } else if (mag == Rational(1)) {
        body = mono;
      } else {
        body = mag.str() + "*" + mono;
      }
      if (first) {
        out = (c.sign() < 0 ? "-" : "") + body;
        first = false;
      } else {
        out += (c.sign() < 0 ? " - " : " + ") + body;
      }
    }
    return out;
  }

  /// Sparse expanded form only: "coef*c^i*x^j*y^k +- ...".
  static MultiPoly parse(std::string_view text);
  /// Nested arithmetic form with parentheses, e.g. "5/4*c^6 + (4-c^2)*(...)".
  static MultiPoly parse_expression(std::string_view text);

 private:
  static std::vector<std::string> merged_vars(const std::vector<std::string>& a, const std::vector<std::string>& b) {
    std::set<std::string> s(a.begin(), a.end());
    s.insert(b.begin(), b.end());
    return {s.begin(), s.end()};
  }

  MultiPoly& accumulate(const MultiPoly& o, const Rational& sign) {
    auto names = merged_vars(vars_, o.vars_);
    *this = with_vars(names);
    MultiPoly y = o.with_vars(names);
    for (const auto& [e, c] : y.terms_) terms_[e] += sign * c;
    prune();
    return *this;
  }

  void prune() {
    for (auto it = terms_.begin(); it != terms_.end();) {
      if (it->second.is_zero())
        it = terms_.erase(it);
      else
        ++it;
    }
  }

  std::vector<std::string> vars_;
  Terms terms_;
};

inline MultiPoly pow(const MultiPoly& p, unsigned k) { return p.pow(k); }

namespace detail {

class PolyParser {
 public:
  PolyParser(std::string_view text, bool nested) : s_(text), nested_(nested) {}

  MultiPoly run() {
    skip();
    if (pos_ >= s_.size()) fail("empty polynomial");
    MultiPoly p = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected character '" + std::string(1, s_[pos_]) + "'");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& why) const {
    throw InputError("polynomial parse error at offset " + std::to_string(pos_) + ": " + why);
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char ch) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == ch) {
      ++pos_;
      return true;
    }
    return false;
  }

  MultiPoly expr() {
    MultiPoly acc = term();
    for (;;) {
      if (eat('+'))
        acc += term();
      else if (eat('-'))
        acc -= term();
      else
        return acc;
    }
  }

  MultiPoly term() {
    MultiPoly acc = unary();
    for (;;) {
      if (eat('*')) {
        acc *= unary();
      } else if (eat('/')) {
        MultiPoly d = unary();
        if (!d.is_constant()) fail("division by a non-constant");
        Rational k = d.constant_term();
        if (k.is_zero()) fail("division by zero");
        acc = acc.scaled(Rational(1) / k);
      } else {
        return acc;
      }
    }
  }

  MultiPoly unary() {
    if (eat('-')) return -unary();
    if (eat('+')) return unary();
    return power();
  }

  MultiPoly power() {
    MultiPoly base = primary();
    if (eat('^')) {
      skip();
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (start == pos_) fail("exponent must be a non-negative integer");
      unsigned long k = std::stoul(std::string(s_.substr(start, pos_ - start)));
      if (k > 64) fail("exponent too large");
      return base.pow(static_cast<unsigned>(k));
    }
    return base;
  }

  MultiPoly primary() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    char ch = s_[pos_];
    if (ch == '(') {
      if (!nested_) fail("parentheses are not accepted in sparse form");
      ++pos_;
      MultiPoly inner = expr();
      if (!eat(')')) fail("missing ')'");
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(ch))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (pos_ < s_.size() && s_[pos_] == '.') fail("decimal literals are not accepted");
      return MultiPoly(Rational(mpz_class(std::string(s_.substr(start, pos_ - start)))));
    }
    if (std::isalpha(static_cast<unsigned char>(ch))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
      return MultiPoly::var(std::string(s_.substr(start, pos_ - start)));
    }
    fail("unexpected character '" + std::string(1, ch) + "'");
  }

  std::string_view s_;
  bool nested_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline MultiPoly MultiPoly::parse(std::string_view text) { return detail::PolyParser(text, false).run(); }
inline MultiPoly MultiPoly::parse_expression(std::string_view text) { return detail::PolyParser(text, true).run(); }

}  // namespace h31cert
