#pragma once

#include <optional>
#include <string>
#include <vector>

#include "h31cert/box_cert.hpp"
#include "h31cert/multi_poly.hpp"
#include "h31cert/uni_cert.hpp"

namespace h31cert {

/// den^power * q(num/den) in `var`, a polynomial whenever power >= deg_var q.
inline MultiPoly cleared_subs(const MultiPoly& q, const std::string& var, const MultiPoly& num, const MultiPoly& den,
                              int power) {
  auto parts = q.coeffs_in(var);
  if (static_cast<int>(parts.size()) - 1 > power) throw UsageError("cleared_subs: power below degree");
  MultiPoly out;
  for (std::size_t k = 0; k < parts.size(); ++k) {
    if (parts[k].is_zero()) continue;
    out += parts[k] * num.pow(static_cast<unsigned>(k)) * den.pow(static_cast<unsigned>(power - static_cast<int>(k)));
  }
  return out;
}

/// Sign claim over a parameter region: univariate goes to uni-cert, the
/// rest to box-cert. Stored as JSON either way.
struct RegionSign {
  Status status = Status::Inconclusive;
  Json cert;
};

inline RegionSign certify_region_sign(const MultiPoly& p, const Box& region, Relation rel, const BoxCertOptions& opt) {
  auto used = p.used_vars();
  if (used.size() <= 1 && region.dim() == 1) {
    std::string var = region.vars()[0];
    SignCertificate sc = certify_sign(UniPoly::from_multi(p, var), region[0], rel, var);
    return {sc.status, sc.to_json()};
  }
  BoundCertificate bc = certify_box_bound(p, region, rel, Rational(0), opt);
  return {bc.status, bc.to_json()};
}

struct CriticalPointInput {
  MultiPoly poly;
  std::string var;
  MultiPoly num;
  MultiPoly den;
  Box region;  // parameter region (variables other than var)
  std::optional<MultiPoly> second_derivative;
  std::optional<Rational> envelope_bound;
  /// Closed form claimed for poly at the stationary point, as num/den.
  std::optional<std::pair<MultiPoly, MultiPoly>> claimed_value;
};

struct CriticalPointReport {
  CriticalPointInput in;
  bool identity_holds = false;
  MultiPoly residual;
  std::optional<bool> second_identity_holds;
  std::optional<RegionSign> second_sign;
  std::optional<RegionSign> den_sign;
  std::optional<RegionSign> envelope_sign;
  MultiPoly envelope_cleared;
  std::optional<bool> claimed_value_holds;
  Status status = Status::Inconclusive;
  std::vector<std::string> notes;

  Json to_json() const {
    Json j;
    j["kind"] = "critical-point";
    j["poly"] = in.poly.str();
    j["var"] = in.var;
    j["num"] = in.num.str();
    j["den"] = in.den.str();
    j["region"] = in.region.to_json();
    j["status"] = to_string(status);
    Json w;
    w["stationary_identity"] = identity_holds;
    if (!identity_holds) w["residual"] = residual.str();
    if (in.second_derivative) {
      w["second_derivative"] = in.second_derivative->str();
      w["second_derivative_identity"] = second_identity_holds.value_or(false);
      if (second_sign) w["second_derivative_sign"] = second_sign->cert;
    }
    if (den_sign) w["denominator_sign"] = den_sign->cert;
    if (in.envelope_bound) {
      w["envelope_bound"] = in.envelope_bound->str();
      w["envelope_cleared"] = envelope_cleared.str();
      if (envelope_sign) w["envelope_sign"] = envelope_sign->cert;
    }
    if (claimed_value_holds) w["claimed_value_identity"] = *claimed_value_holds;
    j["witnesses"] = w;
    if (!notes.empty()) j["notes"] = notes;
    return j;
  }
};

/// Stationary-point check: exact identity that d/dvar poly vanishes at
/// var = num/den, sign of the second derivative on the region, and (for
/// quadratics in var) the envelope poly(num/den) <= bound as a
/// cleared-denominator polynomial inequality.
inline CriticalPointReport critical_point_check(const CriticalPointInput& in, const BoxCertOptions& opt = {}) {
  CriticalPointReport r;
  r.in = in;
  int d = in.poly.degree(in.var);
  if (d < 2) throw UsageError("critical_point_check: polynomial must be at least quadratic in " + in.var);
  MultiPoly px = in.poly.diff(in.var);
  r.residual = cleared_subs(px, in.var, in.num, in.den, d - 1);
  r.identity_holds = r.residual.is_zero();
  Status st = r.identity_holds ? Status::Proved : Status::Refuted;
  if (in.second_derivative) {
    MultiPoly pxx = px.diff(in.var);
    int e = std::max(d - 2, 0);
    MultiPoly lhs = cleared_subs(pxx, in.var, in.num, in.den, e);
    MultiPoly rhs = *in.second_derivative * in.den.pow(static_cast<unsigned>(e));
    r.second_identity_holds = lhs == rhs;
    if (!*r.second_identity_holds) {
      st = combine(st, Status::Refuted);
      r.notes.push_back("claimed second derivative differs from the computed one");
    }
    r.second_sign = certify_region_sign(*in.second_derivative, in.region, Relation::Lt, opt);
    st = combine(st, r.second_sign->status);
  }
  if (in.envelope_bound) {
    if (d != 2 || !in.second_derivative) throw UsageError("critical_point_check: envelope needs a concave quadratic");
    RegionSign neg = certify_region_sign(in.den, in.region, Relation::Lt, opt);
    r.den_sign = neg.status == Status::Proved ? neg : certify_region_sign(in.den, in.region, Relation::Gt, opt);
    if (r.den_sign->status != Status::Proved) {
      st = combine(st, Status::Inconclusive);
      r.notes.push_back("denominator sign not certified on the region");
    }
    r.envelope_cleared = cleared_subs(in.poly - MultiPoly(*in.envelope_bound), in.var, in.num, in.den, 2);
    r.envelope_sign = certify_region_sign(r.envelope_cleared, in.region, Relation::Le, opt);
    st = combine(st, r.envelope_sign->status);
  }
  if (in.claimed_value) {
    MultiPoly value = cleared_subs(in.poly, in.var, in.num, in.den, d);
    const auto& [cn, cd] = *in.claimed_value;
    r.claimed_value_holds = value * cd == cn * in.den.pow(static_cast<unsigned>(d));
    if (!*r.claimed_value_holds) r.notes.push_back("claimed closed form at the stationary point does not match");
  }
  r.status = st;
  return r;
}

}  // namespace h31cert
