#pragma once

#include <string>
#include <utility>
#include <vector>

#include "h31cert/box.hpp"
#include "h31cert/multi_poly.hpp"
#include "h31cert/rational.hpp"

namespace h31cert {

/// Dense coefficient tensor of a polynomial over a fixed variable list;
/// flat index with the last variable fastest.
class DensePoly {
 public:
  DensePoly(const MultiPoly& p, const std::vector<std::string>& vars) : vars_(vars) {
    for (const auto& name : p.used_vars())
      if (std::find(vars.begin(), vars.end(), name) == vars.end())
        throw UsageError("polynomial variable '" + name + "' has no interval in the box");
    MultiPoly q = p.with_vars(merged(p.vars(), vars));
    std::vector<int> where;
    for (const auto& name : vars) where.push_back(q.var_index(name));
    deg_.assign(vars.size(), 0);
    for (const auto& [e, c] : q.terms())
      for (std::size_t k = 0; k < vars.size(); ++k) deg_[k] = std::max(deg_[k], e[where[k]]);
    build_strides();
    coef_.assign(total_, Rational(0));
    for (const auto& [e, c] : q.terms()) {
      std::size_t idx = 0;
      for (std::size_t k = 0; k < vars.size(); ++k) idx += static_cast<std::size_t>(e[where[k]]) * stride_[k];
      coef_[idx] += c;
    }
  }

  const std::vector<std::string>& vars() const { return vars_; }
  const std::vector<int>& degrees() const { return deg_; }
  const std::vector<Rational>& coeffs() const { return coef_; }
  std::size_t stride(std::size_t k) const { return stride_[k]; }

  Rational eval(const std::vector<Rational>& at) const {
    std::vector<Rational> work = coef_;
    std::size_t len = total_;
    for (std::size_t k = vars_.size(); k-- > 0;) {
      std::size_t n = static_cast<std::size_t>(deg_[k]) + 1;
      std::size_t outer = len / n;
      for (std::size_t o = 0; o < outer; ++o) {
        Rational acc(0);
        for (std::size_t j = n; j-- > 0;) acc = acc * at[k] + work[o * n + j];
        work[o] = acc;
      }
      len = outer;
    }
    return work[0];
  }

  Rational eval(const Point& p) const {
    std::vector<Rational> at;
    for (const auto& name : vars_) at.push_back(p.at(name));
    return eval(at);
  }

  /// Bernstein coefficients on the box (same variable order as vars()).
  std::vector<Rational> bernstein(const std::vector<Interval>& ivs) const {
    std::vector<Rational> b = coef_;
    for (std::size_t k = 0; k < vars_.size(); ++k) {
      const Rational& lo = ivs[k].lo();
      Rational w = ivs[k].hi() - ivs[k].lo();
      int d = deg_[k];
      if (d == 0) continue;
      std::size_t n = static_cast<std::size_t>(d) + 1;
      std::vector<Rational> fiber(n);
      std::vector<Rational> wpow(n, Rational(1));
      for (std::size_t j = 1; j < n; ++j) wpow[j] = wpow[j - 1] * w;
      std::size_t st = stride_[k];
      std::size_t block = st * n;
      for (std::size_t base = 0; base < total_; base += block) {
        for (std::size_t off = 0; off < st; ++off) {
          for (std::size_t j = 0; j < n; ++j) fiber[j] = b[base + off + j * st];
          to_bernstein_1d(fiber, lo, wpow, d);
          for (std::size_t j = 0; j < n; ++j) b[base + off + j * st] = fiber[j];
        }
      }
    }
    return b;
  }

 private:
  static std::vector<std::string> merged(std::vector<std::string> a, const std::vector<std::string>& b) {
    for (const auto& s : b)
      if (std::find(a.begin(), a.end(), s) == a.end()) a.push_back(s);
    std::sort(a.begin(), a.end());
    return a;
  }

  void build_strides() {
    stride_.assign(vars_.size(), 1);
    total_ = 1;
    for (std::size_t k = vars_.size(); k-- > 0;) {
      stride_[k] = total_;
      total_ *= static_cast<std::size_t>(deg_[k]) + 1;
    }
  }

  /// Power basis in x -> Bernstein basis of degree d in u, x = lo + w u.
  static void to_bernstein_1d(std::vector<Rational>& a, const Rational& lo, const std::vector<Rational>& wpow, int d) {
    if (!lo.is_zero())
      for (int i = 0; i < d; ++i)
        for (int j = d - 1; j >= i; --j) a[j] += lo * a[j + 1];
    for (int j = 1; j <= d; ++j) a[j] *= wpow[j];
    std::vector<Rational> out(a.size());
    const auto& binom = binomials(d);
    for (int i = 0; i <= d; ++i) {
      Rational acc(0);
      for (int j = 0; j <= i; ++j) {
        if (a[j].is_zero()) continue;
        acc += a[j] * Rational(binom[i][j]) / Rational(binom[d][j]);
      }
      out[i] = acc;
    }
    a.swap(out);
  }

  static const std::vector<std::vector<long>>& binomials(int d) {
    static thread_local std::vector<std::vector<long>> table;
    if (static_cast<int>(table.size()) <= d) {
      table.clear();
      for (int n = 0; n <= std::max(d, 16); ++n) {
        std::vector<long> row(n + 1, 1);
        for (int k = 1; k < n; ++k) row[k] = table[n - 1][k - 1] + table[n - 1][k];
        table.push_back(row);
      }
    }
    return table;
  }

  std::vector<std::string> vars_;
  std::vector<int> deg_;
  std::vector<std::size_t> stride_;
  std::size_t total_ = 1;
  std::vector<Rational> coef_;
};

/// Min and max Bernstein coefficient of p on the box: lower <= p <= upper there.
inline std::pair<Rational, Rational> bernstein_bounds(const MultiPoly& p, const Box& b) {
  DensePoly d(p, b.vars());
  auto coeffs = d.bernstein(b.intervals());
  Rational lo = coeffs[0], hi = coeffs[0];
  for (const auto& v : coeffs) {
    if (v < lo) lo = v;
    if (hi < v) hi = v;
  }
  return {lo, hi};
}

}  // namespace h31cert
