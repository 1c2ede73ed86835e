#pragma once

#include <string>
#include <tuple>
#include <vector>

#include "h31cert/box_cert.hpp"
#include "h31cert/cofactor_chain.hpp"
#include "h31cert/cover.hpp"
#include "h31cert/critical_point.hpp"
#include "h31cert/identities.hpp"
#include "h31cert/uni_cert.hpp"

namespace h31cert {

/// Exact evaluation of a polynomial at listed points against a bound.
struct EvaluationCheck {
  MultiPoly poly;
  Relation relation = Relation::Le;
  Rational bound;
  std::vector<Point> points;
  std::vector<Rational> values;
  Status status = Status::Proved;
  std::optional<Point> counterexample;

  Json to_json() const {
    Json j;
    j["kind"] = "evaluation";
    j["poly"] = poly.str();
    j["relation"] = to_string(relation);
    j["bound"] = bound.str();
    j["status"] = to_string(status);
    j["points"] = Json::array();
    for (std::size_t k = 0; k < points.size(); ++k)
      j["points"].push_back(Json{{"point", point_to_json(points[k])}, {"value", values[k].str()}});
    if (counterexample) j["witnesses"] = Json{{"counterexample", point_to_json(*counterexample)}};
    return j;
  }
};

inline EvaluationCheck evaluate_points(const MultiPoly& p, const std::vector<Point>& pts, Relation rel,
                                      const Rational& bound) {
  EvaluationCheck e{p, rel, bound, pts, {}, Status::Proved, std::nullopt};
  for (const auto& pt : pts) {
    Rational v = p.eval(pt);
    e.values.push_back(v);
    if (!sign_satisfies((v - bound).sign(), rel) && e.status == Status::Proved) {
      e.status = Status::Refuted;
      e.counterexample = pt;
    }
  }
  return e;
}

/// A list of sub-certificates; required parts decide the status, the rest
/// are recorded cross-checks.
class Composite {
 public:
  void add(const std::string& role, const Json& cert, Status st, bool required = true) {
    parts_.emplace_back(role, cert, st, required);
  }
  void add(const std::string& role, const SignCertificate& c, bool required = true) {
    add(role, c.to_json(), c.status, required);
  }
  void add(const std::string& role, const BoundCertificate& c, bool required = true) {
    add(role, c.to_json(), c.status, required);
  }
  void add(const std::string& role, const FactorizationCheck& c, bool required = true) {
    add(role, c.to_json(), c.holds ? Status::Proved : Status::Refuted, required);
  }
  void add(const std::string& role, const IdentityCheck& c, bool required = true) {
    add(role, c.to_json(), c.status(), required);
  }
  void add(const std::string& role, const ChainCertificate& c, bool required = true) {
    add(role, c.to_json(), c.status, required);
  }
  void add(const std::string& role, const CriticalPointReport& c, bool required = true) {
    add(role, c.to_json(), c.status, required);
  }
  void add(const std::string& role, const EvaluationCheck& c, bool required = true) {
    add(role, c.to_json(), c.status, required);
  }
  void add(const std::string& role, const CoverReport& c, bool required = true) {
    add(role, c.to_json(), c.covered ? Status::Proved : Status::Refuted, required);
  }

  void note(const std::string& text) { notes_.push_back(text); }

  Status status() const {
    Status s = Status::Proved;
    for (const auto& [role, cert, st, req] : parts_)
      if (req) s = combine(s, st);
    return s;
  }

  /// Role and certificate of the first required part that is not proved.
  std::optional<std::pair<std::string, Json>> first_failure() const {
    Status want = status();
    if (want == Status::Proved) return std::nullopt;
    for (const auto& [role, cert, st, req] : parts_)
      if (req && st == want) return std::make_pair(role, cert);
    return std::nullopt;
  }

  Json to_json() const {
    Json j;
    j["kind"] = "composite";
    j["status"] = to_string(status());
    j["parts"] = Json::array();
    for (const auto& [role, cert, st, req] : parts_)
      j["parts"].push_back(Json{{"role", role}, {"required", req}, {"certificate", cert}});
    if (!notes_.empty()) j["notes"] = notes_;
    return j;
  }

  bool empty() const { return parts_.empty(); }

 private:
  std::vector<std::tuple<std::string, Json, Status, bool>> parts_;
  std::vector<std::string> notes_;
};

Status replay_certificate(const Json& j, std::string* why = nullptr);

namespace detail {

inline Status reject(std::string* why, const std::string& msg) {
  if (why) *why = msg;
  return Status::Inconclusive;
}

/// (poly - bound, relation) of a nested sign or bound certificate.
inline std::pair<MultiPoly, Relation> nested_claim(const Json& j) {
  std::string kind = j.at("kind").get<std::string>();
  if (kind == "sign") {
    std::string rel = j.at("relation").get<std::string>();
    return {MultiPoly::parse(j.at("poly").get<std::string>()), relation_from_string(rel.substr(0, rel.find(' ')))};
  }
  if (kind == "bound")
    return {MultiPoly::parse(j.at("poly").get<std::string>()) - MultiPoly(Rational::parse(j.at("bound").get<std::string>())),
            relation_from_string(j.at("relation").get<std::string>())};
  throw InputError("expected a sign or bound certificate, got '" + kind + "'");
}

inline Status replay_nested_sign(const Json& j, const MultiPoly& expect, Relation rel, std::string* why) {
  auto [p, r] = nested_claim(j);
  if (!(p == expect) || r != rel) return reject(why, "nested sign certificate does not state the expected claim");
  return replay_certificate(j, why);
}

inline Status replay_critical_point(const Json& j, std::string* why) {
  MultiPoly p = MultiPoly::parse(j.at("poly").get<std::string>());
  std::string var = j.at("var").get<std::string>();
  MultiPoly num = MultiPoly::parse(j.at("num").get<std::string>());
  MultiPoly den = MultiPoly::parse(j.at("den").get<std::string>());
  const Json& w = j.at("witnesses");
  int d = p.degree(var);
  if (d < 2) return reject(why, "critical point needs a quadratic or higher polynomial");
  bool ident = cleared_subs(p.diff(var), var, num, den, d - 1).is_zero();
  if (ident != w.at("stationary_identity").get<bool>()) return reject(why, "stationary identity recomputes differently");
  Status st = ident ? Status::Proved : Status::Refuted;
  if (w.contains("second_derivative")) {
    MultiPoly sd = MultiPoly::parse(w.at("second_derivative").get<std::string>());
    int e = std::max(d - 2, 0);
    bool same = cleared_subs(p.diff(var).diff(var), var, num, den, e) == sd * den.pow(static_cast<unsigned>(e));
    if (same != w.at("second_derivative_identity").get<bool>()) return reject(why, "second derivative identity differs");
    if (!same) st = combine(st, Status::Refuted);
    st = combine(st, replay_nested_sign(w.at("second_derivative_sign"), sd, Relation::Lt, why));
  }
  if (w.contains("envelope_bound")) {
    Rational b = Rational::parse(w.at("envelope_bound").get<std::string>());
    MultiPoly cleared = cleared_subs(p - MultiPoly(b), var, num, den, 2);
    if (!(cleared == MultiPoly::parse(w.at("envelope_cleared").get<std::string>())))
      return reject(why, "cleared envelope differs");
    const Json& ds = w.at("denominator_sign");
    auto [dp, dr] = nested_claim(ds);
    if (!(dp == den) || (dr != Relation::Lt && dr != Relation::Gt)) return reject(why, "denominator sign claim differs");
    if (replay_certificate(ds, why) != Status::Proved) st = combine(st, Status::Inconclusive);
    st = combine(st, replay_nested_sign(w.at("envelope_sign"), cleared, Relation::Le, why));
  }
  Status claimed = status_from_string(j.at("status").get<std::string>());
  return st == claimed ? st : reject(why, "critical-point status does not replay");
}

inline Status replay_majorant(const Json& j, std::string* why) {
  auto terms = h31_modulus_terms();
  const Json& tj = j.at("terms");
  if (tj.size() != terms.size()) return reject(why, "majorant term count differs");
  std::vector<int> signs;
  Status st = Status::Proved;
  for (std::size_t k = 0; k < terms.size(); ++k) {
    int s = tj[k].at("sign").get<int>();
    if (s != 1 && s != -1) return reject(why, "majorant sign must be +1 or -1");
    if (!(MultiPoly::parse(tj[k].at("coef").get<std::string>()) == terms[k].coef))
      return reject(why, "majorant coefficient differs");
    signs.push_back(s);
    st = combine(st, replay_nested_sign(tj[k].at("certificate"), terms[k].coef, s > 0 ? Relation::Ge : Relation::Le,
                                        why));
  }
  IdentityCheck id = identity_majorant(signs);
  return combine(st, id.status());
}

inline Status replay_sharpness(const Json& j, std::string* why) {
  PowerSeries<Rational> f = f0_series(5);
  PowerSeries<Rational> g = series_revert(f);
  Rational h = hankel_det(g, HankelSpec{3, 1});
  if (format_series(f) != j.at("series").get<std::string>() || format_series(g) != j.at("inverse").get<std::string>() ||
      h.str() != j.at("h31").get<std::string>())
    return reject(why, "sharpness values do not recompute");
  Rational bound = Rational::parse(j.at("bound").get<std::string>());
  return abs(h) == bound ? Status::Proved : Status::Refuted;
}

}  // namespace detail

/// Re-establishes a stored certificate from its witnesses and returns the
/// status they support; a mismatch with the stored status is inconclusive.
inline Status replay_certificate(const Json& j, std::string* why) {
  std::string kind = j.at("kind").get<std::string>();
  if (kind == "sign") return replay_sign(SignCertificate::from_json(j), why);
  if (kind == "bound") return replay_bound(j, why);
  if (kind == "chain") return replay_chain(j, why);
  if (kind == "cover") return replay_cover(j, why);
  if (kind == "critical-point") return detail::replay_critical_point(j, why);
  if (kind == "majorant") return detail::replay_majorant(j, why);
  if (kind == "sharpness") return detail::replay_sharpness(j, why);
  if (kind == "factorization") {
    FactorizationCheck f = FactorizationCheck::from_json(j);
    FactorizationCheck again = verify_factorization(f.poly, f.factors, f.scalar, f.remainder);
    return again.holds ? Status::Proved : Status::Refuted;
  }
  if (kind == "identity") {
    IdentityCheck again = rebuild_identity(j);
    const Json& checks = j.at("checks");
    if (checks.size() != again.items.size()) return detail::reject(why, "identity check count differs");
    for (std::size_t k = 0; k < checks.size(); ++k)
      if (!(MultiPoly::parse(checks[k].at("lhs").get<std::string>()) == again.items[k].lhs) ||
          !(MultiPoly::parse(checks[k].at("rhs").get<std::string>()) == again.items[k].rhs))
        return detail::reject(why, "identity '" + again.items[k].name + "' does not rebuild");
    return again.status();
  }
  if (kind == "evaluation") {
    MultiPoly p = MultiPoly::parse(j.at("poly").get<std::string>());
    std::vector<Point> pts;
    for (const auto& e : j.at("points")) {
      pts.push_back(point_from_json(e.at("point")));
      if (p.eval(pts.back()).str() != e.at("value").get<std::string>()) return detail::reject(why, "stored value differs");
    }
    return evaluate_points(p, pts, relation_from_string(j.at("relation").get<std::string>()),
                           Rational::parse(j.at("bound").get<std::string>()))
        .status;
  }
  if (kind == "composite") {
    Status st = Status::Proved;
    for (const auto& part : j.at("parts")) {
      std::string sub_why;
      Status s = replay_certificate(part.at("certificate"), &sub_why);
      Status stored = status_from_string(part.at("certificate").at("status").get<std::string>());
      if (s != stored)
        return detail::reject(why, part.at("role").get<std::string>() + ": " +
                                       (sub_why.empty() ? "status does not replay" : sub_why));
      if (part.at("required").get<bool>()) st = combine(st, s);
    }
    return st;
  }
  if (kind == "theorem") {
    Status st = Status::Proved;
    for (const auto& step : j.at("steps")) {
      std::string sub_why;
      Status s = replay_certificate(step.at("certificate"), &sub_why);
      Status own = status_from_string(step.at("certificate").at("status").get<std::string>());
      if (s != own) return detail::reject(why, step.at("id").get<std::string>() + ": " + sub_why);
      st = combine(st, status_from_string(step.at("status").get<std::string>()));
    }
    if (Rational::parse(j.at("theta_max").get<std::string>()) / Rational(5120) !=
        Rational::parse(j.at("bound").get<std::string>()))
      return detail::reject(why, "bound is not theta_max / 5120");
    return st;
  }
  throw InputError("unknown certificate kind '" + kind + "'");
}

}  // namespace h31cert
