#pragma once

#include <optional>
#include <string>
#include <vector>

#include "h31cert/box_cert.hpp"
#include "h31cert/uni_cert.hpp"

namespace h31cert {

/// One domination step on P(u, v) = sum_i P_i(u) v^i with 0 <= v <= 1.
///   merge k : P_k <= 0          => P_k v^k <= P_k v^(k+1)
///   drop k  : P_k <= 0          => P_k v^k <= 0
///   lower k : P_k >= 0, v <= s  => P_k v^k <= s P_k v^(k-1)
struct ChainOp {
  enum class Kind { Merge, Drop, Lower };
  Kind kind = Kind::Merge;
  int k = 0;
  Rational s{1};

  static ChainOp merge(int k) { return {Kind::Merge, k, Rational(1)}; }
  static ChainOp drop(int k) { return {Kind::Drop, k, Rational(1)}; }
  static ChainOp lower(int k, const Rational& s) { return {Kind::Lower, k, s}; }

  std::string str() const {
    switch (kind) {
      case Kind::Merge:
        return "merge(" + std::to_string(k) + ")";
      case Kind::Drop:
        return "drop(" + std::to_string(k) + ")";
      case Kind::Lower:
        return "lower(" + std::to_string(k) + ", " + s.str() + ")";
    }
    return "?";
  }

  static ChainOp parse(const std::string& text) {
    auto open = text.find('('), close = text.rfind(')');
    if (open == std::string::npos || close == std::string::npos) throw InputError("chain op: '" + text + "'");
    std::string name = text.substr(0, open), args = text.substr(open + 1, close - open - 1);
    auto comma = args.find(',');
    int k = std::stoi(args.substr(0, comma));
    if (name == "merge") return merge(k);
    if (name == "drop") return drop(k);
    if (name == "lower" && comma != std::string::npos) return lower(k, Rational::parse(args.substr(comma + 1)));
    throw InputError("chain op: '" + text + "'");
  }
};

struct ChainStep {
  ChainOp op;
  SignCertificate sign;
};

struct ChainCertificate {
  std::vector<UniPoly> coeffs;
  std::string u_var;
  std::string v_var;
  Interval u_interval;
  Interval v_interval;
  std::vector<ChainOp> ops;
  std::vector<ChainStep> steps;
  std::vector<UniPoly> dominating;
  Relation relation = Relation::Le;
  Rational bound;
  std::optional<BoundCertificate> final_cert;
  Status status = Status::Inconclusive;
  std::string failing;

  MultiPoly dominating_poly() const {
    MultiPoly out;
    MultiPoly v = MultiPoly::var(v_var);
    for (std::size_t i = 0; i < dominating.size(); ++i) out += dominating[i].to_multi(u_var) * v.pow(static_cast<unsigned>(i));
    return out;
  }

  Json to_json() const {
    Json j;
    j["kind"] = "chain";
    j["u_var"] = u_var;
    j["u_interval"] = u_interval.str();
    j["v_var"] = v_var;
    j["v_interval"] = v_interval.str();
    j["coefficients"] = Json::array();
    for (const auto& p : coeffs) j["coefficients"].push_back(p.str(u_var));
    j["claim"] = "sum_i P_i(" + u_var + ") " + v_var + "^i " + to_string(relation) + " " + bound.str();
    j["relation"] = to_string(relation);
    j["bound"] = bound.str();
    j["status"] = to_string(status);
    j["steps"] = Json::array();
    for (const auto& s : steps) j["steps"].push_back(Json{{"op", s.op.str()}, {"certificate", s.sign.to_json()}});
    j["dominating"] = dominating_poly().str();
    if (final_cert) j["final"] = final_cert->to_json();
    if (!failing.empty()) j["witnesses"] = Json{{"failing_step", failing}};
    return j;
  }
};

/// Replays the prefix-sum domination argument: each op is justified by a
/// uni-cert sign certificate on the u-interval, and the final dominating
/// polynomial is certified on the (u, v) box.
inline ChainCertificate certify_via_cofactor_chain(const std::vector<UniPoly>& coeffs, const std::string& u_var,
                                                   const Interval& u_iv, const std::string& v_var, const Interval& v_iv,
                                                   const std::vector<ChainOp>& ops, Relation rel, const Rational& bound,
                                                   const BoxCertOptions& opt = {}) {
  if (coeffs.empty()) throw UsageError("cofactor chain: empty coefficient list");
  if (!is_upper(rel)) throw UsageError("cofactor chain: only upper bounds are supported");
  if (v_iv.lo().sign() < 0 || Rational(1) < v_iv.hi())
    throw UsageError("cofactor chain: the power variable must range inside [0, 1]");
  ChainCertificate cert{coeffs, u_var, v_var, u_iv, v_iv, ops, {}, coeffs, rel, bound, std::nullopt,
                        Status::Inconclusive, ""};
  auto& d = cert.dominating;
  for (const auto& op : ops) {
    if (op.k < 0 || op.k >= static_cast<int>(d.size())) throw UsageError("cofactor chain: op index out of range");
    Relation need = op.kind == ChainOp::Kind::Lower ? Relation::Ge : Relation::Le;
    if (op.kind == ChainOp::Kind::Lower && (op.k == 0 || op.s < v_iv.hi() || op.s.sign() < 0))
      throw UsageError("cofactor chain: lower() needs k >= 1 and v <= s");
    SignCertificate sc = certify_sign(d[op.k], u_iv, need, u_var);
    cert.steps.push_back({op, sc});
    if (sc.status != Status::Proved) {
      cert.status = sc.status;
      cert.failing = op.str();
      return cert;
    }
    UniPoly moved = d[op.k];
    d[op.k] = UniPoly();
    switch (op.kind) {
      case ChainOp::Kind::Merge:
        if (op.k + 1 >= static_cast<int>(d.size())) d.resize(op.k + 2);
        d[op.k + 1] = d[op.k + 1] + moved;
        break;
      case ChainOp::Kind::Drop:
        break;
      case ChainOp::Kind::Lower:
        d[op.k - 1] = d[op.k - 1] + moved.scaled(op.s);
        break;
    }
  }
  while (!d.empty() && d.back().is_zero()) d.pop_back();
  MultiPoly dom = cert.dominating_poly();
  Box box{{u_var, u_iv}, {v_var, v_iv}};
  cert.final_cert = certify_box_bound(dom, box, rel, bound, opt);
  cert.status = cert.final_cert->status;
  if (cert.status != Status::Proved) cert.failing = "final";
  return cert;
}

/// Re-checks a stored chain certificate.
inline Status replay_chain(const Json& j, std::string* why = nullptr) {
  auto reject = [&](const std::string& msg) {
    if (why) *why = msg;
    return Status::Inconclusive;
  };
  std::string u = j.at("u_var").get<std::string>(), v = j.at("v_var").get<std::string>();
  Interval u_iv = Interval::parse(j.at("u_interval").get<std::string>());
  Interval v_iv = Interval::parse(j.at("v_interval").get<std::string>());
  if (v_iv.lo().sign() < 0 || Rational(1) < v_iv.hi()) return reject("power variable outside [0, 1]");
  std::vector<UniPoly> d;
  for (const auto& s : j.at("coefficients")) d.push_back(UniPoly::parse(s.get<std::string>(), u));
  Status claimed = status_from_string(j.at("status").get<std::string>());
  for (const auto& step : j.at("steps")) {
    ChainOp op = ChainOp::parse(step.at("op").get<std::string>());
    SignCertificate sc = SignCertificate::from_json(step.at("certificate"));
    if (op.k < 0 || op.k >= static_cast<int>(d.size())) return reject("op index out of range");
    if (!(sc.poly == d[op.k]) || !(sc.interval == u_iv)) return reject("sign certificate does not match " + op.str());
    Relation need = op.kind == ChainOp::Kind::Lower ? Relation::Ge : Relation::Le;
    if (sc.relation != need) return reject("wrong relation for " + op.str());
    Status st = replay_sign(sc, why);
    if (st != Status::Proved) {
      if (claimed == Status::Refuted && st == Status::Refuted) return Status::Refuted;
      return reject("sign certificate for " + op.str() + " does not replay");
    }
    UniPoly moved = d[op.k];
    d[op.k] = UniPoly();
    if (op.kind == ChainOp::Kind::Merge) {
      if (op.k + 1 >= static_cast<int>(d.size())) d.resize(op.k + 2);
      d[op.k + 1] = d[op.k + 1] + moved;
    } else if (op.kind == ChainOp::Kind::Lower) {
      if (op.k == 0 || op.s < v_iv.hi() || op.s.sign() < 0) return reject("lower() precondition");
      d[op.k - 1] = d[op.k - 1] + moved.scaled(op.s);
    }
  }
  MultiPoly dom;
  MultiPoly vv = MultiPoly::var(v);
  for (std::size_t i = 0; i < d.size(); ++i) dom += d[i].to_multi(u) * vv.pow(static_cast<unsigned>(i));
  if (!j.contains("final")) return reject("missing final certificate");
  const Json& fin = j.at("final");
  if (!(MultiPoly::parse(fin.at("poly").get<std::string>()) == dom)) return reject("final polynomial mismatch");
  if (fin.at("relation").get<std::string>() != j.at("relation").get<std::string>() ||
      fin.at("bound").get<std::string>() != j.at("bound").get<std::string>())
    return reject("final claim mismatch");
  return replay_bound(fin, why);
}

}  // namespace h31cert
