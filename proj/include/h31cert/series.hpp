#pragma once

#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "h31cert/errors.hpp"
#include "h31cert/rational.hpp"

namespace h31cert {

/// Truncated power series sum_{k=0..N} coeffs[k] z^k over an exact ring T
/// (Rational, GaussianRational or MultiPoly).
template <class T>
class PowerSeries {
 public:
  PowerSeries() = default;
  explicit PowerSeries(int order) : c_(static_cast<std::size_t>(check_order(order)) + 1, T(Rational(0))) {}
  explicit PowerSeries(std::vector<T> from_zero) : c_(std::move(from_zero)) {
    if (c_.empty()) throw UsageError("series: empty coefficient list");
  }

  /// Coefficients a_1..a_N (no constant term), the normalized-function layout.
  static PowerSeries from_index1(const std::vector<T>& a) {
    PowerSeries s(static_cast<int>(a.size()));
    for (std::size_t k = 0; k < a.size(); ++k) s.c_[k + 1] = a[k];
    return s;
  }

  static PowerSeries identity(int order) {
    PowerSeries s(order);
    if (order >= 1) s.c_[1] = T(Rational(1));
    return s;
  }

  int order() const { return static_cast<int>(c_.size()) - 1; }
  const T& operator[](int k) const { return c_.at(static_cast<std::size_t>(k)); }
  T& operator[](int k) { return c_.at(static_cast<std::size_t>(k)); }
  const std::vector<T>& coeffs() const { return c_; }

  /// a_1..a_N.
  std::vector<T> index1() const { return {c_.begin() + 1, c_.end()}; }

  bool zero_constant() const { return c_[0] == T(Rational(0)); }

  friend bool operator==(const PowerSeries& a, const PowerSeries& b) { return a.c_ == b.c_; }

 private:
  static int check_order(int order) {
    if (order < 0) throw UsageError("series: negative truncation order");
    return order;
  }
  std::vector<T> c_;
};

namespace detail {
template <class T>
void same_order(const PowerSeries<T>& a, const PowerSeries<T>& b, const char* op) {
  if (a.order() != b.order())
    throw UsageError(std::string(op) + ": mismatched truncation orders " + std::to_string(a.order()) + " and " +
                     std::to_string(b.order()));
}
}  // namespace detail

template <class T>
PowerSeries<T> series_add(const PowerSeries<T>& a, const PowerSeries<T>& b) {
  detail::same_order(a, b, "series_add");
  PowerSeries<T> out(a.order());
  for (int k = 0; k <= a.order(); ++k) out[k] = a[k] + b[k];
  return out;
}

/// Cauchy product truncated at the common order.
template <class T>
PowerSeries<T> series_mul(const PowerSeries<T>& a, const PowerSeries<T>& b) {
  detail::same_order(a, b, "series_mul");
  int n = a.order();
  PowerSeries<T> out(n);
  for (int i = 0; i <= n; ++i) {
    if (a[i] == T(Rational(0))) continue;
    for (int j = 0; i + j <= n; ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

/// outer(inner(z)) by Horner; inner must have zero constant term.
template <class T>
PowerSeries<T> series_compose(const PowerSeries<T>& outer, const PowerSeries<T>& inner) {
  detail::same_order(outer, inner, "series_compose");
  if (!inner.zero_constant()) throw DomainError("series_compose: inner series has a nonzero constant term");
  int n = outer.order();
  PowerSeries<T> acc(n);
  for (int k = n; k >= 0; --k) {
    acc = series_mul(acc, inner);
    acc[0] += outer[k];
  }
  return acc;
}

/// Functional inverse g with f(g(z)) = z, solved order by order.
template <class T>
PowerSeries<T> series_revert(const PowerSeries<T>& f) {
  if (f.order() < 1 || !f.zero_constant() || !(f[1] == T(Rational(1))))
    throw DomainError("series_revert: series must be normalized (a0 = 0, a1 = 1)");
  int n = f.order();
  PowerSeries<T> g = PowerSeries<T>::identity(n);
  for (int k = 2; k <= n; ++k) {
    PowerSeries<T> fg = series_compose(f, g);
    g[k] -= fg[k];
  }
  return g;
}

/// exp(q) for q with zero constant term, via E_n = (1/n) sum_k k q_k E_{n-k}.
template <class T>
PowerSeries<T> series_exp(const PowerSeries<T>& q) {
  if (!q.zero_constant()) throw DomainError("series_exp: nonzero constant term");
  int n = q.order();
  PowerSeries<T> e(n);
  e[0] = T(Rational(1));
  for (int m = 1; m <= n; ++m) {
    T acc(Rational(0));
    for (int k = 1; k <= m; ++k) acc += T(Rational(k)) * q[k] * e[m - k];
    e[m] = acc * T(Rational(1, m));
  }
  return e;
}

/// Term-wise derivative; result has order N-1.
template <class T>
PowerSeries<T> series_derive(const PowerSeries<T>& f) {
  int n = f.order();
  if (n == 0) return PowerSeries<T>(0);
  PowerSeries<T> out(n - 1);
  for (int k = 1; k <= n; ++k) out[k - 1] = T(Rational(k)) * f[k];
  return out;
}

/// Term-wise antiderivative with zero constant; result has order N+1.
template <class T>
PowerSeries<T> series_integrate(const PowerSeries<T>& f) {
  int n = f.order();
  PowerSeries<T> out(n + 1);
  for (int k = 0; k <= n; ++k) out[k + 1] = f[k] * T(Rational(1, k + 1));
  return out;
}

/// Truncates or zero-extends to a new order.
template <class T>
PowerSeries<T> series_resize(const PowerSeries<T>& f, int order) {
  PowerSeries<T> out(order);
  for (int k = 0; k <= std::min(order, f.order()); ++k) out[k] = f[k];
  return out;
}

struct HankelSpec {
  int r = 3;
  int n = 1;
};

/// Determinant by cofactor expansion; ring-generic (no division).
template <class T>
T determinant(const std::vector<std::vector<T>>& m) {
  std::size_t size = m.size();
  if (size == 0) return T(Rational(1));
  if (size == 1) return m[0][0];
  if (size == 2) return m[0][0] * m[1][1] - m[0][1] * m[1][0];
  T acc(Rational(0));
  for (std::size_t j = 0; j < size; ++j) {
    if (m[0][j] == T(Rational(0))) continue;
    std::vector<std::vector<T>> minor;
    for (std::size_t i = 1; i < size; ++i) {
      std::vector<T> row;
      for (std::size_t k = 0; k < size; ++k)
        if (k != j) row.push_back(m[i][k]);
      minor.push_back(std::move(row));
    }
    T term = m[0][j] * determinant(minor);
    if (j % 2 == 0)
      acc += term;
    else
      acc -= term;
  }
  return acc;
}

/// Hankel determinant H_{r,n} of a_1, a_2, ... where a[k-1] holds a_k.
template <class T>
T hankel_det(const std::vector<T>& a, HankelSpec spec) {
  if (spec.r < 1 || spec.n < 1) throw UsageError("hankel_det: r and n must be positive");
  std::size_t need = static_cast<std::size_t>(spec.n + 2 * spec.r - 2);
  if (a.size() < need)
    throw UsageError("hankel_det: need coefficients up to index " + std::to_string(need) + ", got " +
                     std::to_string(a.size()));
  std::vector<std::vector<T>> m(spec.r, std::vector<T>(spec.r));
  for (int i = 0; i < spec.r; ++i)
    for (int j = 0; j < spec.r; ++j) m[i][j] = a[static_cast<std::size_t>(spec.n + i + j - 1)];
  return determinant(m);
}

template <class T>
T hankel_det(const PowerSeries<T>& f, HankelSpec spec) {
  return hankel_det(f.index1(), spec);
}

/// "a1,a2,...,aN" -> series of order N with zero constant term.
inline PowerSeries<Rational> parse_series(std::string_view text) {
  std::vector<Rational> a;
  std::string s(text);
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) a.push_back(Rational::parse(item));
  if (s.empty() || a.empty()) throw InputError("series: empty coefficient list");
  if (!s.empty() && s.back() == ',') throw InputError("series: trailing comma");
  return PowerSeries<Rational>::from_index1(a);
}

inline std::string format_series(const PowerSeries<Rational>& f) {
  std::string out;
  for (int k = 1; k <= f.order(); ++k) {
    if (k > 1) out += ",";
    out += f[k].str();
  }
  return out;
}

}  // namespace h31cert
