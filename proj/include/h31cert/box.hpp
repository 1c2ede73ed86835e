#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "h31cert/errors.hpp"
#include "h31cert/rational.hpp"
#include "h31cert/status.hpp"

namespace h31cert {

using Point = std::map<std::string, Rational>;

/// Axis-aligned product of rational intervals, variables sorted by name.
class Box {
 public:
  Box() = default;
  Box(std::initializer_list<std::pair<std::string, Interval>> axes) {
    for (const auto& [name, iv] : axes) set(name, iv);
  }

  void set(const std::string& name, const Interval& iv) {
    auto it = std::lower_bound(vars_.begin(), vars_.end(), name);
    auto k = it - vars_.begin();
    if (it != vars_.end() && *it == name) {
      ivs_[k] = iv;
    } else {
      vars_.insert(it, name);
      ivs_.insert(ivs_.begin() + k, iv);
    }
  }

  const std::vector<std::string>& vars() const { return vars_; }
  const std::vector<Interval>& intervals() const { return ivs_; }
  std::size_t dim() const { return vars_.size(); }
  const Interval& operator[](std::size_t k) const { return ivs_.at(k); }

  const Interval& at(const std::string& name) const {
    for (std::size_t k = 0; k < vars_.size(); ++k)
      if (vars_[k] == name) return ivs_[k];
    throw UsageError("box has no variable '" + name + "'");
  }
  bool has(const std::string& name) const { return std::find(vars_.begin(), vars_.end(), name) != vars_.end(); }

  Box closure() const {
    Box b = *this;
    for (auto& iv : b.ivs_) iv = iv.closure();
    return b;
  }

  bool contains(const Point& p) const {
    for (std::size_t k = 0; k < vars_.size(); ++k) {
      auto it = p.find(vars_[k]);
      if (it == p.end() || !ivs_[k].contains(it->second)) return false;
    }
    return true;
  }

  /// True when every point of inner lies in *this (same variables).
  bool contains(const Box& inner) const {
    if (inner.vars_ != vars_) return false;
    for (std::size_t k = 0; k < vars_.size(); ++k)
      if (!ivs_[k].contains(inner.ivs_[k])) return false;
    return true;
  }

  Json to_json() const {
    Json j = Json::object();
    for (std::size_t k = 0; k < vars_.size(); ++k) j[vars_[k]] = ivs_[k].str();
    return j;
  }
  static Box from_json(const Json& j) {
    Box b;
    for (const auto& [name, iv] : j.items()) b.set(name, Interval::parse(iv.get<std::string>()));
    return b;
  }

  std::string str() const {
    std::string out;
    for (std::size_t k = 0; k < vars_.size(); ++k) {
      if (k) out += " x ";
      out += vars_[k] + " in " + ivs_[k].str();
    }
    return out;
  }

  friend bool operator==(const Box&, const Box&) = default;

 private:
  std::vector<std::string> vars_;
  std::vector<Interval> ivs_;
};

inline Json point_to_json(const Point& p) {
  Json j = Json::object();
  for (const auto& [k, v] : p) j[k] = v.str();
  return j;
}

inline Point point_from_json(const Json& j) {
  Point p;
  for (const auto& [k, v] : j.items()) p[k] = Rational::parse(v.get<std::string>());
  return p;
}

}  // namespace h31cert
