#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "h31cert/catalog.hpp"
#include "h31cert/certificate.hpp"

namespace h31cert {

/// Replaces a lemma's polynomial or flips its relation; only the direct
/// certificate runs for an overridden lemma.
struct LemmaOverride {
  std::optional<MultiPoly> poly;
  bool invert = false;
};

struct DriverConfig {
  BoxCertOptions box;
  std::uint64_t seed = 0;
  std::map<std::string, LemmaOverride> overrides;
};

struct StepResult {
  std::string id;
  std::string method;
  std::string region;
  Status status = Status::Inconclusive;
  Json witnesses = Json::object();
  Json certificate;
  std::vector<std::string> depends;
  std::vector<std::string> failed_dependencies;

  Json to_json() const {
    Json j;
    j["id"] = id;
    j["method"] = method;
    j["region"] = region;
    j["status"] = to_string(status);
    j["witnesses"] = witnesses;
    j["depends"] = depends;
    if (!failed_dependencies.empty()) j["failed_dependencies"] = failed_dependencies;
    j["certificate"] = certificate;
    return j;
  }
};

/// A lemma claim "poly REL bound on region".
struct LemmaSpec {
  std::string id;
  MultiPoly poly;
  Box region;
  Relation relation = Relation::Le;
  Rational bound;
};

inline Relation flipped(Relation r) {
  switch (r) {
    case Relation::Le:
      return Relation::Ge;
    case Relation::Lt:
      return Relation::Gt;
    case Relation::Ge:
      return Relation::Le;
    case Relation::Gt:
      return Relation::Lt;
  }
  return r;
}

inline const std::vector<std::string>& lemma_ids() {
  static const std::vector<std::string> ids{"1.2a", "1.2b", "1.2c", "1.2d", "1.2e", "1.3",
                                            "1.4",  "1.5",  "1.6",  "1.7",  "1.8"};
  return ids;
}

inline const std::vector<std::string>& case_ids() {
  static const std::vector<std::string> ids{"A",     "B.i",   "B.ii", "B.iii", "B.iv", "B.v",   "B.vi",
                                            "B.vii", "B.viii", "C.i", "C.ii",  "C.iii", "C.iv", "C.v",
                                            "C.vi",  "D",     "D1",   "D2"};
  return ids;
}

namespace detail {

inline Interval iv(const Rational& lo, const Rational& hi, bool lo_open = false, bool hi_open = false) {
  return Interval(lo, hi, lo_open, hi_open);
}
inline Box cx_box(const Interval& c, const Interval& x) { return Box{{"c", c}, {"x", x}}; }
inline MultiPoly mp(const std::string& s) { return MultiPoly::parse_expression(s); }
inline MultiPoly psi_sum(int upto) {
  UniPoly s;
  for (int i = 1; i <= upto; ++i) s = s + catalog::psi(i);
  return s.to_multi("c");
}

}  // namespace detail

inline LemmaSpec lemma_spec(const std::string& id) {
  using detail::cx_box;
  using detail::iv;
  Rational a = catalog::split_low(), b = catalog::split_high();
  Rational zero(0), one(1), two(2);
  auto cbox = [](const Interval& i) { return Box{{"c", i}}; };
  if (id == "1.2a") return {id, catalog::psi(1).to_multi("c"), cbox(iv(zero, two)), Relation::Le, zero};
  if (id == "1.2b") return {id, detail::psi_sum(2), cbox(iv(a, two, true)), Relation::Le, zero};
  if (id == "1.2c") return {id, detail::psi_sum(3), cbox(iv(a, b, true)), Relation::Le, zero};
  if (id == "1.2d")
    return {id, detail::psi_sum(3) + catalog::psi(4).to_multi("c").scaled(Rational(3, 5)), cbox(iv(b, two)),
            Relation::Le, zero};
  if (id == "1.2e") return {id, catalog::psi(5).to_multi("c"), cbox(iv(zero, two)), Relation::Le, zero};
  if (id == "1.3")
    return {id, catalog::Psi(), cx_box(iv(zero, a), iv(zero, Rational(1, 4), true, true)), Relation::Le, Rational(320)};
  if (id == "1.4") return {id, catalog::Phi(), cx_box(iv(zero, a), iv(Rational(1, 4), one, false, true)), Relation::Lt, zero};
  if (id == "1.5")
    return {id, catalog::Psi(), cx_box(iv(a, b, true), iv(zero, Rational(3, 5), true, true)), Relation::Le,
            Rational(320)};
  if (id == "1.6") return {id, catalog::Phi(), cx_box(iv(a, one, true), iv(Rational(3, 5), one)), Relation::Lt, zero};
  if (id == "1.7")
    return {id, catalog::Psi(), cx_box(iv(one, b, true), iv(Rational(3, 5), one)), Relation::Le, Rational(320)};
  if (id == "1.8") return {id, catalog::Psi(), cx_box(iv(b, two, true), iv(zero, one)), Relation::Le, Rational(320)};
  throw UsageError("unknown lemma '" + id + "'");
}

/// Plan order of every step feeding the theorem, with its dependencies.
struct PlanStep {
  std::string id;
  std::vector<std::string> depends;
};

inline const std::vector<PlanStep>& proof_plan() {
  static const std::vector<PlanStep> plan = [] {
    std::vector<PlanStep> p;
    for (const char* s : {"identity-reversion", "identity-inverse-coefficients", "identity-closed-form",
                          "identity-disc-parameters", "identity-modulus-majorant"})
      p.push_back({s, {}});
    for (const auto& l : lemma_ids()) p.push_back({"lemma-" + l, {}});
    for (const auto& c : case_ids()) {
      PlanStep s{"case-" + c, {}};
      if (c == "C.vi") {
        for (const auto& l : lemma_ids())
          if (l.rfind("1.2", 0) != 0) s.depends.push_back("lemma-" + l);
        s.depends.push_back("case-B.vi");
        s.depends.push_back("case-B.vii");
      } else if (c == "B.vi") {
        s.depends.push_back("lemma-1.2a");
      } else if (c == "D1") {
        s.depends = {"case-D", "case-C.vi"};
      } else if (c == "D2") {
        s.depends = {"case-D"};
      }
      p.push_back(s);
    }
    PlanStep cover{"cover-omega", {}};
    for (const auto& c : case_ids()) cover.depends.push_back("case-" + c);
    p.push_back(cover);
    p.push_back({"sharpness", {}});
    return p;
  }();
  return plan;
}

struct SharpnessReport {
  PowerSeries<Rational> series{5};
  PowerSeries<Rational> inverse{5};
  Rational h31;
  Rational bound{1, 16};
  Rational center_value{1};

  Status status() const { return abs(h31) == bound ? Status::Proved : Status::Refuted; }

  Json to_json() const {
    Json j;
    j["kind"] = "sharpness";
    j["function"] = "z/sqrt(1-z^2)";
    j["series"] = format_series(series);
    j["inverse"] = format_series(inverse);
    j["h31"] = h31.str();
    j["abs_h31"] = abs(h31).str();
    j["bound"] = bound.str();
    j["center_value"] = center_value.str();
    j["status"] = to_string(status());
    return j;
  }
};

/// f0 = z/sqrt(1 - z^2) from its binomial expansion, reverted, H_{3,1}.
inline SharpnessReport verify_sharpness() {
  SharpnessReport r;
  r.series = f0_series(5);
  r.inverse = series_revert(r.series);
  r.h31 = hankel_det(r.inverse, HankelSpec{3, 1});
  PowerSeries<Rational> fp = series_derive(r.series);
  r.center_value = Rational(1) + Rational(0) * fp[1] / fp[0];
  return r;
}

struct ScanRecord {
  std::uint64_t seed = 0;
  int atoms = 0;
  std::vector<GaussianRational> c;
  GaussianRational h31;
  bool bound_ok = false;
  bool identity_ok = false;

  Json to_json() const {
    Json j;
    j["seed"] = seed;
    j["atoms"] = atoms;
    j["c"] = Json::array();
    for (const auto& v : c) j["c"].push_back(v.str());
    j["h31"] = h31.str();
    j["mod_sq"] = mod_sq(h31).str();
    j["bound_ok"] = bound_ok;
    j["identity_ok"] = identity_ok;
    return j;
  }
};

struct ScanReport {
  long count = 0;
  std::uint64_t seed = 0;
  Rational bound_sq{1, 256};
  Rational max_mod_sq;
  ScanRecord argmax;
  bool all_bounded = true;
  bool all_identity = true;
  std::vector<ScanRecord> records;

  Json to_json(bool with_records = false) const {
    Json j;
    j["kind"] = "scan";
    j["count"] = count;
    j["seed"] = seed;
    j["bound_mod_sq"] = bound_sq.str();
    j["max_mod_sq"] = max_mod_sq.str();
    j["max_mod_sq_approx"] = max_mod_sq.to_double();
    j["argmax"] = argmax.to_json();
    j["all_bounded"] = all_bounded;
    j["all_identity"] = all_identity;
    j["status"] = all_bounded && all_identity ? "proved" : "refuted";
    if (with_records) {
      j["records"] = Json::array();
      for (const auto& r : records) j["records"].push_back(r.to_json());
    }
    return j;
  }
};

/// Sample 0 is the extreme point c_t = 2; sample i > 0 draws 1 + i % 4
/// atoms from seed + i.
inline ScanReport empirical_scan(long count, std::uint64_t seed, bool keep_records = false) {
  if (count < 1) throw UsageError("scan: count must be at least 1");
  ScanReport rep;
  rep.count = count;
  rep.seed = seed;
  for (long i = 0; i < count; ++i) {
    ScanRecord r;
    r.seed = seed + static_cast<std::uint64_t>(i);
    if (i == 0) {
      r.atoms = 1;
      r.c.assign(4, GaussianRational(2));
    } else {
      r.atoms = 1 + static_cast<int>(i % 4);
      r.c = sample_caratheodory(r.seed, r.atoms).c;
    }
    r.h31 = h31_inverse_closed_form(r.c);
    r.identity_ok = r.h31 == h31_inverse_pipeline(r.c);
    Rational m = mod_sq(r.h31);
    r.bound_ok = m <= rep.bound_sq;
    rep.all_bounded = rep.all_bounded && r.bound_ok;
    rep.all_identity = rep.all_identity && r.identity_ok;
    if (i == 0 || rep.max_mod_sq < m) {
      rep.max_mod_sq = m;
      rep.argmax = r;
    }
    if (keep_records) rep.records.push_back(std::move(r));
  }
  return rep;
}

namespace detail {

inline SignCertificate sign_on(const MultiPoly& p, const std::string& var, const Interval& i, Relation rel) {
  return certify_sign(UniPoly::from_multi(p, var), i, rel, var);
}

inline MultiPoly theta_y(int k) {
  auto parts = theta_poly().coeffs_in("y");
  return k < static_cast<int>(parts.size()) ? parts[k] : MultiPoly();
}

inline MultiPoly theta_at(const std::map<std::string, Rational>& fixed) { return theta_poly().subs(fixed); }

inline Json witnesses_of(const Composite& comp) {
  Json w = Json::object();
  auto fail = comp.first_failure();
  if (!fail) return w;
  w["failing_part"] = fail->first;
  const Json& cert = fail->second;
  if (cert.contains("witnesses")) {
    const Json& fw = cert.at("witnesses");
    for (const char* key : {"counterexample", "counterexample_value", "violating_root", "failing_step", "residual",
                            "uncovered_cell"})
      if (fw.contains(key)) w[key] = fw.at(key);
    if (fw.contains("failing_step") && cert.contains("steps")) {
      for (const auto& s : cert.at("steps"))
        if (s.at("op") == fw.at("failing_step") && s.at("certificate").at("witnesses").contains("counterexample"))
          w["counterexample"] = s.at("certificate").at("witnesses").at("counterexample");
      if (fw.at("failing_step") == "final" && cert.contains("final") &&
          cert.at("final").at("witnesses").contains("counterexample"))
        w["counterexample"] = cert.at("final").at("witnesses").at("counterexample");
    }
  }
  return w;
}

}  // namespace detail

/// Runs plan steps on demand, memoizing results; a step whose dependency is
/// not proved is inconclusive.
class ProofSession {
 public:
  explicit ProofSession(DriverConfig cfg = {}) : cfg_(std::move(cfg)) {}

  const DriverConfig& config() const { return cfg_; }

  /// Copies results of base that cannot be affected by this session's overrides.
  void reuse(const ProofSession& base) {
    for (const auto& [id, r] : base.done_)
      if (!touched(id)) done_.emplace(id, r);
  }

  const StepResult& step(const std::string& id) {
    if (auto it = done_.find(id); it != done_.end()) return it->second;
    const PlanStep& ps = plan_step(id);
    std::vector<std::string> failed;
    for (const auto& d : ps.depends)
      if (step(d).status != Status::Proved) failed.push_back(d);
    StepResult r = run(id);
    r.depends = ps.depends;
    if (!failed.empty()) {
      r.failed_dependencies = failed;
      if (r.status == Status::Proved) r.status = Status::Inconclusive;
    }
    return done_.emplace(id, std::move(r)).first->second;
  }

  const StepResult& lemma(const std::string& id) { return step("lemma-" + id); }
  const StepResult& proof_case(const std::string& id) { return step("case-" + id); }

  Json theorem() {
    Json j;
    j["kind"] = "theorem";
    j["claim"] = "|H_{3,1}(f^{-1})| <= 1/16 for f in the Ozaki class";
    j["theta_max"] = "320";
    Rational bound = Rational(320) / Rational(5120);
    if (!(bound == Rational(1, 16))) throw std::logic_error("theta_max / 5120 is not 1/16");
    j["bound"] = bound.str();
    Status st = Status::Proved;
    Json steps = Json::array();
    std::optional<std::string> first;
    for (const auto& ps : proof_plan()) {
      const StepResult& r = step(ps.id);
      steps.push_back(r.to_json());
      if (r.status != Status::Proved && !first) first = ps.id;
      st = combine(st, r.status);
    }
    j["status"] = to_string(st);
    j["first_failure"] = first ? Json(*first) : Json(nullptr);
    Json att = Json::array();
    MultiPoly theta = theta_poly();
    for (const auto& [c, x, y] : std::vector<std::tuple<int, int, int>>{{0, 0, 1}, {0, 1, 0}, {0, 1, 1}}) {
      Point p{{"c", Rational(c)}, {"x", Rational(x)}, {"y", Rational(y)}};
      att.push_back(Json{{"c", std::to_string(c)}, {"x", std::to_string(x)}, {"y", std::to_string(y)},
                         {"theta", theta.eval(p).str()}});
    }
    j["attainment"] = att;
    j["config"] = Json{{"depth_budget", cfg_.box.depth_budget}, {"seed", cfg_.seed}};
    j["steps"] = steps;
    return j;
  }

 private:
  static const PlanStep& plan_step(const std::string& id) {
    for (const auto& ps : proof_plan())
      if (ps.id == id) return ps;
    throw UsageError("unknown proof step '" + id + "'");
  }

  bool touched(const std::string& id) const {
    if (id.rfind("lemma-", 0) == 0 && cfg_.overrides.count(id.substr(6))) return true;
    for (const auto& d : plan_step(id).depends)
      if (touched(d)) return true;
    return false;
  }

  StepResult finish(const std::string& id, const std::string& method, const std::string& region,
                    const Composite& comp) const {
    StepResult r;
    r.id = id;
    r.method = method;
    r.region = region;
    r.status = comp.status();
    r.witnesses = detail::witnesses_of(comp);
    r.certificate = comp.to_json();
    return r;
  }

  StepResult run(const std::string& id) {
    if (id.rfind("identity-", 0) == 0) return run_identity(id);
    if (id.rfind("lemma-", 0) == 0) return run_lemma(id.substr(6));
    if (id.rfind("case-", 0) == 0) return run_case(id.substr(5));
    if (id == "cover-omega") return run_cover();
    if (id == "sharpness") {
      SharpnessReport s = verify_sharpness();
      Composite comp;
      comp.add("sharpness", s.to_json(), s.status());
      StepResult r = finish(id, "sharpness", "f0 = z/sqrt(1-z^2)", comp);
      r.witnesses = Json{{"h31", s.h31.str()}, {"inverse", format_series(s.inverse)}};
      return r;
    }
    throw UsageError("unknown proof step '" + id + "'");
  }

  StepResult run_identity(const std::string& id) {
    Composite comp;
    if (id == "identity-reversion") comp.add("identity", identity_reversion());
    if (id == "identity-inverse-coefficients") comp.add("identity", identity_inverse_coefficients());
    if (id == "identity-closed-form") comp.add("identity", identity_closed_form());
    if (id == "identity-disc-parameters") comp.add("identity", identity_lz_form());
    if (id == "identity-modulus-majorant") {
      std::vector<int> signs;
      Json terms = Json::array();
      Status st = Status::Proved;
      for (const auto& t : h31_modulus_terms()) {
        SignCertificate pos = detail::sign_on(t.coef, "c", Interval(Rational(0), Rational(2)), Relation::Ge);
        SignCertificate cert = pos.status == Status::Proved
                                   ? pos
                                   : detail::sign_on(t.coef, "c", Interval(Rational(0), Rational(2)), Relation::Le);
        int s = pos.status == Status::Proved ? 1 : -1;
        st = combine(st, cert.status);
        signs.push_back(s);
        terms.push_back(Json{{"term", t.expression().str()}, {"coef", t.coef.str()}, {"sign", s},
                             {"certificate", cert.to_json()}});
      }
      IdentityCheck sum = identity_majorant(signs);
      sum.params["signs"] = signs;
      st = combine(st, sum.status());
      Json maj{{"kind", "majorant"}, {"terms", terms}, {"status", to_string(st)}};
      comp.add("majorant", maj, st);
      comp.add("identity", sum);
    }
    if (comp.empty()) throw UsageError("unknown identity step '" + id + "'");
    return finish(id, "identity-check", "symbolic", comp);
  }

  StepResult run_lemma(const std::string& lid) {
    using detail::mp;
    LemmaSpec spec = lemma_spec(lid);
    std::string sid = "lemma-" + lid;
    Composite comp;
    auto ov = cfg_.overrides.find(lid);
    const BoxCertOptions& opt = cfg_.box;
    auto direct = [&](const MultiPoly& p, Relation rel) {
      if (spec.region.dim() == 1) {
        std::string v = spec.region.vars()[0];
        comp.add("direct", detail::sign_on(p - MultiPoly(spec.bound), v, spec.region[0], rel));
      } else {
        comp.add("direct", certify_box_bound(p, spec.region, rel, spec.bound, opt));
      }
    };
    std::string method = spec.region.dim() == 1 ? "sign-certificate" : "bound-certificate";
    if (ov != cfg_.overrides.end()) {
      MultiPoly p = ov->second.poly.value_or(spec.poly);
      Relation rel = ov->second.invert ? flipped(spec.relation) : spec.relation;
      direct(p, rel);
      StepResult r = finish(sid, method + " (override)", spec.region.str(), comp);
      r.witnesses["override"] = Json{{"poly", p.str()}, {"relation", to_string(rel)}, {"bound", spec.bound.str()}};
      return r;
    }
    direct(spec.poly, spec.relation);
    Rational a = catalog::split_low(), b = catalog::split_high();
    Interval c02(Rational(0), Rational(2));
    if (lid == "1.2a") {
      MultiPoly c = MultiPoly::var("c");
      comp.add("factorization",
               verify_factorization(spec.poly, {c * c, mp("4 - c^2"), mp("14 - 2*c + c^2")}, Rational(-2),
                                    {mp("-48*c^2"), mp("-3/4*c^6")}));
      comp.add("factor 4 - c^2 >= 0", detail::sign_on(mp("4 - c^2"), "c", c02, Relation::Ge));
      comp.add("factor 14 - 2c + c^2 > 0", detail::sign_on(mp("14 - 2*c + c^2"), "c", c02, Relation::Gt));
      method = "sign-certificate+factorization";
    } else if (lid == "1.2e") {
      comp.add("factorization",
               verify_factorization(spec.poly, {mp("4 - c^2"), mp("4 - c^2"), mp("c^2 - 4*c - 4")}, Rational(1)));
      comp.add("factor c^2 - 4c - 4 <= 0", detail::sign_on(mp("c^2 - 4*c - 4"), "c", c02, Relation::Le));
      method = "sign-certificate+factorization";
    } else if (lid == "1.2b" || lid == "1.2c" || lid == "1.2d") {
      Rational scale = lid == "1.2d" ? b : a;
      Interval t = lid == "1.2b"   ? Interval(Rational(1), Rational(500000, 87137), true, false)
                   : lid == "1.2c" ? Interval(Rational(1), Rational(563875, 174274), true, false)
                                   : Interval(Rational(1), Rational(8000, 4511));
      UniPoly q = UniPoly::from_multi(spec.poly, "c").compose_affine(scale, Rational(0));
      comp.add("substituted c = " + scale.str() + "*t", certify_sign(q, t, Relation::Le, "t"));
      MultiPoly tv = MultiPoly::var("t");
      comp.add("substitution", identity_explicit("p(" + scale.str() + "*t)", spec.poly.subs("c", tv.scaled(scale)),
                                                 q.to_multi("t")));
      const Interval& ci = spec.region[0];
      IdentityCheck ends = identity_explicit("c(t_lo)", MultiPoly(scale * t.lo()), MultiPoly(ci.lo()));
      ends.items.push_back({"c(t_hi)", MultiPoly(scale * t.hi()), MultiPoly(ci.hi())});
      comp.add("endpoints", ends);
      if (t.lo_open() != ci.lo_open() || t.hi_open() != ci.hi_open())
        comp.add("endpoints", identity_explicit("openness", MultiPoly(1), MultiPoly(0)));
      if (lid == "1.2d") comp.note("0.6 read as 3/5; the proof body's \"06\" is the same constant");
      method = "sign-certificate+substitution";
    } else if (lid == "1.3") {
      lemma13(comp, spec);
      method = "bound-certificate+critical-point";
    } else {
      lemma_chain(lid, comp, spec);
      method = "bound-certificate+cofactor-chain";
    }
    return finish(sid, method, spec.region.str(), comp);
  }

  void lemma13(Composite& comp, const LemmaSpec& spec) {
    using detail::mp;
    const BoxCertOptions& opt = cfg_.box;
    Rational a = catalog::split_low();
    Interval ci(Rational(0), a);
    MultiPoly h = catalog::lemma13_envelope();
    MultiPoly x = MultiPoly::var("x");
    MultiPoly p4 = catalog::psi(4).to_multi("c"), p5 = catalog::psi(5).to_multi("c");
    comp.add("envelope identity",
             identity_explicit("Psi - h", spec.poly - h, p4 * x * x * (x - MultiPoly(Rational(1, 4))) + p5 * x.pow(4)));
    comp.add("psi4 >= 0", detail::sign_on(p4, "c", ci, Relation::Ge));
    comp.add("psi5 <= 0", detail::sign_on(p5, "c", ci, Relation::Le));
    CriticalPointInput in;
    in.poly = h;
    in.var = "x";
    in.num = catalog::psi(2).to_multi("c").scaled(Rational(-2));
    in.den = catalog::psi(3).to_multi("c").scaled(Rational(4)) + p4;
    in.region = Box{{"c", ci}};
    MultiPoly d = catalog::lemma13_den_factor().to_multi("c");
    in.second_derivative = -(mp("4 - c^2") * d);
    in.envelope_bound = Rational(320);
    in.claimed_value = std::make_pair(catalog::lemma13_numerator().to_multi("c"), d.scaled(Rational(8)));
    CriticalPointReport cp = critical_point_check(in, opt);
    comp.add("critical point", cp);
    MultiPoly value = cleared_subs(h, "x", in.num, in.den, 2);
    comp.note("closed form at the stationary point is N/(8 D); the printed N/(8 D^2) is checked as informative");
    comp.add("printed value N/(8 D^2)",
             identity_explicit("h(x0) * 8 D^2 * den^2 = N * den^2", value * d.pow(2).scaled(Rational(8)),
                               catalog::lemma13_numerator().to_multi("c") * in.den.pow(2)),
             false);
  }

  void lemma_chain(const std::string& lid, Composite& comp, const LemmaSpec& spec) {
    using detail::mp;
    const BoxCertOptions& opt = cfg_.box;
    const Interval& ci = spec.region[0];
    const Interval& xi = spec.region[1];
    auto M = ChainOp::merge;
    auto D = ChainOp::drop;
    if (lid == "1.4" || lid == "1.6") {
      comp.add("Phi = Psi - 320", identity_explicit("Phi", catalog::Phi(), catalog::Psi() - MultiPoly(320)));
      std::vector<UniPoly> coeffs = lid == "1.4" ? catalog::phi_list() : catalog::gamma_coeffs();
      if (lid == "1.6") {
        comp.add("Gamma - Phi >= 0", certify_box_bound(catalog::Gamma() - catalog::Phi(), spec.region, Relation::Ge,
                                                       Rational(0), opt));
        comp.add("gamma4 <= 0", certify_sign(catalog::gamma(4), xi, Relation::Le, "x"), false);
        comp.add("gamma7 <= 0", certify_sign(catalog::gamma(7), xi, Relation::Le, "x"), false);
      }
      comp.add("chain", certify_via_cofactor_chain(coeffs, "x", xi, "c", ci,
                                                   {M(0), M(1), M(2), M(3), D(4), D(5), D(6)}, Relation::Le,
                                                   Rational(0), opt));
      return;
    }
    std::vector<UniPoly> coeffs = catalog::psi_list();
    std::vector<ChainOp> ops;
    if (lid == "1.5") ops = {M(0), M(1), ChainOp::lower(3, Rational(3, 5)), D(2), D(4)};
    if (lid == "1.7") ops = {M(0), M(1)};
    if (lid == "1.8") ops = {M(0), M(1), M(2), D(3), D(4)};
    comp.add("chain", certify_via_cofactor_chain(coeffs, "c", ci, "x", xi, ops, Relation::Le, Rational(0), opt));
    if (lid == "1.7") {
      UniPoly s3 = catalog::psi(1) + catalog::psi(2) + catalog::psi(3);
      comp.add("psi1+psi2+psi3", identity_explicit("psi1+psi2+psi3", s3.to_multi("c"),
                                                   mp("-256 + 96*c + 164*c^2 - 48*c^4 - 6*c^5 + 2*c^6")),
               false);
      comp.add("psi1+psi2+psi3 <= -23", certify_sign(s3 + UniPoly(23), ci, Relation::Le, "c"), false);
      comp.add("psi4 <= 63", certify_sign(catalog::psi(4) - UniPoly(63), ci, Relation::Le, "c"), false);
      comp.add("psi5 <= -53", certify_sign(catalog::psi(5) + UniPoly(53), ci, Relation::Le, "c"), false);
      comp.add("-23x^2 + 63x^3 - 53x^4 < 0", detail::sign_on(mp("-23*x^2 + 63*x^3 - 53*x^4"), "x", xi, Relation::Lt),
               false);
      comp.add("320 - 23x^2 + 63x^3 - 53x^4 <= 198037/625",
               detail::sign_on(mp("320 - 23*x^2 + 63*x^3 - 53*x^4 - 198037/625"), "x", xi, Relation::Le), false);
      comp.note("printed 318.459 is 198037/625 = 318.4592 rounded down; the certified claim is Psi <= 320");
    }
  }

  StepResult run_case(const std::string& cid) {
    using detail::mp;
    using detail::theta_at;
    const BoxCertOptions& opt = cfg_.box;
    MultiPoly theta = theta_poly();
    Rational zero(0), one(1), two(2), top(320);
    Interval c02(zero, two), u01(zero, one);
    Composite comp;
    std::string sid = "case-" + cid, method, region;
    auto R = [](long v) { return Rational(v); };
    auto restriction = [&](std::map<std::string, Rational> fixed, const MultiPoly& stated, const std::string& name) {
      comp.add("restriction", identity_theta_restriction(fixed, stated, name));
    };
    auto upper_1d = [&](const MultiPoly& p, const std::string& v, const Interval& i, const Rational& bound) {
      comp.add("bound <= " + bound.str(), detail::sign_on(p - MultiPoly(bound), v, i, Relation::Le));
    };
    if (cid == "A") {
      std::vector<Point> verts;
      for (int c : {0, 2})
        for (int x : {0, 1})
          for (int y : {0, 1}) verts.push_back(Point{{"c", R(c)}, {"x", R(x)}, {"y", R(y)}});
      comp.add("vertices", evaluate_points(theta, verts, Relation::Le, top));
      IdentityCheck printed{"explicit", Json::object(), {}, {}};
      for (const auto& v : verts) {
        long stated = v.at("c") == two ? 0 : (v.at("x").is_zero() && v.at("y").is_zero() ? 0 : 320);
        printed.items.push_back({"theta" + point_to_json(v).dump(), MultiPoly(theta.eval(v)), MultiPoly(R(stated))});
      }
      comp.add("printed vertex values", printed, false);
      comp.note("the four c = 2 vertices evaluate to 80, not the printed 0");
      method = "evaluation";
      region = "8 vertices of [0, 2] x [0, 1] x [0, 1]";
    } else if (cid == "B.i") {
      restriction({{"c", zero}, {"x", zero}}, mp("320*y^2"), "theta(0,0,y)");
      upper_1d(mp("320*y^2"), "y", u01, top);
      method = "sign-certificate";
      region = "c = 0, x = 0, y in [0, 1]";
    } else if (cid == "B.ii") {
      restriction({{"c", zero}, {"x", one}}, MultiPoly(top), "theta(0,1,y)");
      upper_1d(MultiPoly(top), "y", u01, top);
      method = "sign-certificate";
      region = "c = 0, x = 1, y in [0, 1]";
    } else if (cid == "B.iii") {
      restriction({{"c", zero}, {"y", zero}}, mp("384*x - 64*x^3"), "theta(0,x,0)");
      upper_1d(mp("384*x - 64*x^3"), "x", u01, top);
      method = "sign-certificate";
      region = "c = 0, y = 0, x in [0, 1]";
    } else if (cid == "B.iv") {
      MultiPoly stated = mp("320 - 64*(4 - x)*(1 - x)*x^2");
      restriction({{"c", zero}, {"y", one}}, stated, "theta(0,x,1)");
      comp.add("factorization", verify_factorization(theta_at({{"c", zero}, {"y", one}}) - MultiPoly(top),
                                                     {mp("4 - x"), mp("1 - x"), mp("x^2")}, Rational(-64)));
      comp.add("4 - x >= 0", detail::sign_on(mp("4 - x"), "x", u01, Relation::Ge));
      comp.add("1 - x >= 0", detail::sign_on(mp("1 - x"), "x", u01, Relation::Ge));
      upper_1d(stated, "x", u01, top);
      method = "sign-certificate+factorization";
      region = "c = 0, y = 1, x in [0, 1]";
    } else if (cid == "B.v") {
      MultiPoly stated = mp("48*c^2 - 12*c^4 + 5/4*c^6");
      restriction({{"x", zero}, {"y", zero}}, stated, "theta(c,0,0)");
      upper_1d(stated, "c", c02, R(80));
      method = "sign-certificate";
      region = "x = 0, y = 0, c in [0, 2]";
    } else if (cid == "B.vi") {
      MultiPoly stated = MultiPoly(top) + catalog::psi(1).to_multi("c");
      restriction({{"x", zero}, {"y", one}}, stated, "theta(c,0,1)");
      upper_1d(stated, "c", c02, top);
      method = "sign-certificate";
      region = "x = 0, y = 1, c in [0, 2]";
    } else if (cid == "B.vii") {
      MultiPoly stated = mp("320 - 60*c^2 + 16*c^4 - 4*c^6");
      restriction({{"x", one}, {"y", zero}}, stated, "theta(c,1,0)");
      restriction({{"x", one}, {"y", one}}, stated, "theta(c,1,1)");
      upper_1d(stated, "c", c02, top);
      method = "sign-certificate";
      region = "x = 1, y in {0, 1}, c in [0, 2]";
    } else if (cid == "B.viii") {
      restriction({{"c", two}}, MultiPoly(R(80)), "theta(2,x,y)");
      upper_1d(MultiPoly(R(80)), "x", u01, top);
      comp.add("printed value 0", identity_explicit("theta(2,x,y)", theta_at({{"c", two}}), MultiPoly(zero)), false);
      comp.note("theta(2,x,y) expands to 80, not the printed 0; the bound 320 holds either way");
      method = "sign-certificate";
      region = "c = 2, the four edges in x and y";
    } else if (cid == "C.i") {
      restriction({{"c", two}}, MultiPoly(R(80)), "theta(2,x,y)");
      upper_1d(MultiPoly(R(80)), "x", u01, top);
      method = "sign-certificate";
      region = "c = 2, (x, y) in [0, 1]^2";
    } else if (cid == "C.ii") {
      MultiPoly stated = mp("384*x - 64*x^3 + 64*(5 - x)*(1 - x)^2*(1 + x)*y^2");
      restriction({{"c", zero}}, stated, "theta(0,x,y)");
      comp.add("y^2 coefficient >= 0", detail::sign_on(mp("64*(5 - x)*(1 - x)^2*(1 + x)"), "x", u01, Relation::Ge));
      comp.add("direct", certify_box_bound(stated, Box{{"x", u01}, {"y", u01}}, Relation::Le, top, opt));
      method = "bound-certificate";
      region = "c = 0, (x, y) in [0, 1]^2";
    } else if (cid == "C.iii") {
      MultiPoly env = mp("5/4*c^6 + (4 - c^2)*(4*c^3 + 80 + 12*c^2)");
      MultiPoly bracket = mp("4*c^3*(1 - y) + 80*(1 - y^2) + 32*c^2*y^2");
      MultiPoly face = theta_at({{"x", zero}});
      comp.add("envelope identity", identity_explicit("E - theta(c,0,y)", env - face, mp("4 - c^2") * bracket));
      Box cy{{"c", c02}, {"y", u01}};
      comp.add("bracket >= 0", certify_box_bound(bracket, cy, Relation::Ge, zero, opt));
      comp.add("4 - c^2 >= 0", detail::sign_on(mp("4 - c^2"), "c", c02, Relation::Ge));
      upper_1d(env, "c", c02, top);
      comp.add("direct", certify_box_bound(face, cy, Relation::Le, top, opt));
      method = "sign-certificate+envelope";
      region = "x = 0, (c, y) in [0, 2] x [0, 1]";
    } else if (cid == "C.iv") {
      MultiPoly stated = mp("320 - 60*c^2 + 16*c^4 - 4*c^6");
      restriction({{"x", one}}, stated, "theta(c,1,y)");
      upper_1d(stated, "c", c02, top);
      method = "sign-certificate";
      region = "x = 1, (c, y) in [0, 2] x [0, 1]";
    } else if (cid == "C.v") {
      MultiPoly face = theta_at({{"y", zero}});
      Box cx = detail::cx_box(c02, u01);
      comp.add("direct", certify_box_bound(face, cx, Relation::Le, top, opt));
      MultiPoly env = mp("5/4*c^6 + (4 - c^2)*(80 + 21/4*c^4 + 12*c^2)");
      comp.add("printed envelope", certify_box_bound(face - env, cx, Relation::Le, zero, opt), false);
      comp.add("printed envelope <= 320", detail::sign_on(env - MultiPoly(top), "c", c02, Relation::Le), false);
      method = "bound-certificate";
      region = "y = 0, (c, x) in [0, 2] x [0, 1]";
    } else if (cid == "C.vi") {
      restriction({{"y", one}}, catalog::Psi(), "theta(c,x,1)");
      comp.add("Phi = Psi - 320", identity_explicit("Phi", catalog::Phi(), catalog::Psi() - MultiPoly(top)));
      std::vector<CoverPiece> pieces;
      for (const auto& l : lemma_ids())
        if (l.rfind("1.2", 0) != 0) pieces.push_back({"lemma-" + l, lemma_spec(l).region});
      pieces.push_back({"case-B.vi", detail::cx_box(c02, Interval::point(zero))});
      pieces.push_back({"case-B.vii", detail::cx_box(c02, Interval::point(one))});
      comp.add("cover", check_cover(detail::cx_box(c02, u01), pieces));
      method = "cover";
      region = "y = 1, (c, x) in [0, 2] x [0, 1]";
    } else if (cid == "D") {
      MultiPoly cy2 = detail::theta_y(2);
      MultiPoly r = catalog::stationary_condition(), q = catalog::y2_bracket();
      comp.add("R > 0", certify_box_bound(r, detail::cx_box(Interval(zero, catalog::c_lo()), u01), Relation::Gt,
                                          zero, opt));
      comp.add("Q = 4(1 - x)R", identity_explicit("Q", q, mp("4*(1 - x)") * r));
      comp.add("y^2 coefficient", identity_explicit("C", cy2, mp("(4 - c^2)*(1 - x^2)") * q));
      comp.add("7 c_lo^2 < 16", evaluate_points(mp("7*c^2 - 16"), {{{"c", catalog::c_lo()}}}, Relation::Lt, zero));
      comp.add("s_lo^2 < 5/2", evaluate_points(mp("c^2 - 5/2"), {{{"c", catalog::s_lo()}}}, Relation::Lt, zero));
      comp.add("s_hi^2 > 5/2", evaluate_points(mp("c^2 - 5/2"), {{{"c", catalog::s_hi()}}}, Relation::Gt, zero));
      CriticalPointInput in;
      in.poly = theta;
      in.var = "y";
      in.num = catalog::stationary_y_num();
      in.den = catalog::stationary_y_den();
      in.region = detail::cx_box(c02, u01);
      comp.add("stationary y", critical_point_check(in, opt));
      method = "region-split";
      region = "interior (0, 2) x (0, 1) x (0, 1)";
    } else if (cid == "D1") {
      MultiPoly f = mp("2*c^2*x^2 - 5*c^2*x - 2*c^2 - 8*x^2 - 4*x");
      MultiPoly by = detail::theta_y(1), cy2 = detail::theta_y(2);
      Box cx = detail::cx_box(c02, u01);
      comp.add("y coefficient", identity_explicit("B", by, mp("-2*c*(c^2 - 4)*(x^2 - 1)") * f));
      comp.add("F <= 0", certify_box_bound(f, cx, Relation::Le, zero, opt));
      comp.add("B >= 0", certify_box_bound(by, cx, Relation::Ge, zero, opt));
      comp.add("face difference", identity_explicit("theta(c,x,1) - theta", theta_at({{"y", one}}) - theta,
                                                    by * mp("1 - y") + cy2 * mp("1 - y^2")));
      method = "reduction-to-face";
      region = "interior where the y^2 coefficient is >= 0";
    } else if (cid == "D2") {
      MultiPoly ay = detail::theta_y(0), by = detail::theta_y(1), cy2 = detail::theta_y(2);
      MultiPoly h = catalog::interior_envelope();
      MultiPoly k = mp("13*c^4 + 20*c^3 - 48*c^2 + 16*c + 192");
      comp.add("envelope identity", identity_explicit("h - (A + B)", h - ay - by, mp("(4 - c^2)*(1 - x)") * k.scaled(Rational(1, 2))));
      comp.add("K > 0", detail::sign_on(k, "c", c02, Relation::Gt));
      comp.add("B >= 0", certify_box_bound(by, detail::cx_box(c02, u01), Relation::Ge, zero, opt));
      comp.add("theta - (A + B)", identity_explicit("theta - (A + B)", theta - ay - by,
                                                    cy2 * MultiPoly::var("y").pow(2) - by * mp("1 - y")));
      Box low = detail::cx_box(Interval(catalog::c_lo(), catalog::s_hi()), u01);
      Box high = detail::cx_box(Interval(catalog::s_lo(), two), u01);
      comp.add("h < 296", certify_box_bound(h, low, Relation::Lt, R(296), opt));
      comp.add("h < 300", certify_box_bound(h, high, Relation::Lt, R(300), opt));
      MultiPoly e1 = mp("295 + 28*x^2 - 81*x^3 - 8*x^4"), e2 = mp("282 + 17*x^2 + x^4");
      comp.add("printed h <= 295 + 28x^2 - 81x^3 - 8x^4", certify_box_bound(h - e1, low, Relation::Le, zero, opt), false);
      comp.add("printed 295 + 28x^2 - 81x^3 - 8x^4 < 296", detail::sign_on(e1 - MultiPoly(R(296)), "x", u01, Relation::Lt),
               false);
      comp.add("printed h <= 282 + 17x^2 + x^4", certify_box_bound(h - e2, high, Relation::Le, zero, opt), false);
      comp.add("printed 282 + 17x^2 + x^4 < 300", detail::sign_on(e2 - MultiPoly(R(300)), "x", u01, Relation::Lt),
               false);
      method = "envelope";
      region = "interior where the y^2 coefficient is <= 0, c in [" + catalog::c_lo().str() + ", 2]";
    } else {
      throw UsageError("unknown case '" + cid + "'");
    }
    return finish(sid, method, region, comp);
  }

  StepResult run_cover() {
    Rational zero(0), one(1), two(2);
    Interval c02(zero, two), u01(zero, one);
    Interval cin(zero, two, true, true), uin(zero, one, true, true);
    auto box3 = [](const Interval& c, const Interval& x, const Interval& y) {
      return Box{{"c", c}, {"x", x}, {"y", y}};
    };
    std::vector<CoverPiece> pieces;
    for (int c : {0, 2})
      for (int x : {0, 1})
        for (int y : {0, 1})
          pieces.push_back({"case-A", box3(Interval::point(Rational(c)), Interval::point(Rational(x)),
                                           Interval::point(Rational(y)))});
    auto pt = [](int v) { return Interval::point(Rational(v)); };
    pieces.push_back({"case-B.i", box3(pt(0), pt(0), u01)});
    pieces.push_back({"case-B.ii", box3(pt(0), pt(1), u01)});
    pieces.push_back({"case-B.iii", box3(pt(0), u01, pt(0))});
    pieces.push_back({"case-B.iv", box3(pt(0), u01, pt(1))});
    pieces.push_back({"case-B.v", box3(c02, pt(0), pt(0))});
    pieces.push_back({"case-B.vi", box3(c02, pt(0), pt(1))});
    pieces.push_back({"case-B.vii", box3(c02, pt(1), pt(0))});
    pieces.push_back({"case-B.vii", box3(c02, pt(1), pt(1))});
    pieces.push_back({"case-B.viii", box3(pt(2), pt(0), u01)});
    pieces.push_back({"case-B.viii", box3(pt(2), pt(1), u01)});
    pieces.push_back({"case-B.viii", box3(pt(2), u01, pt(0))});
    pieces.push_back({"case-B.viii", box3(pt(2), u01, pt(1))});
    pieces.push_back({"case-C.i", box3(pt(2), u01, u01)});
    pieces.push_back({"case-C.ii", box3(pt(0), u01, u01)});
    pieces.push_back({"case-C.iii", box3(c02, pt(0), u01)});
    pieces.push_back({"case-C.iv", box3(c02, pt(1), u01)});
    pieces.push_back({"case-C.v", box3(c02, u01, pt(0))});
    pieces.push_back({"case-C.vi", box3(c02, u01, pt(1))});
    pieces.push_back({"case-D1|case-D2", box3(cin, uin, uin)});
    Composite comp;
    comp.add("cover", check_cover(box3(c02, u01, u01), pieces));
    return finish("cover-omega", "cover", "[0, 2] x [0, 1] x [0, 1]", comp);
  }

  DriverConfig cfg_;
  std::map<std::string, StepResult> done_;
};

inline StepResult prove_lemma(const std::string& id, const DriverConfig& cfg = {}) {
  ProofSession s(cfg);
  return s.lemma(id);
}

inline StepResult prove_case(const std::string& id, const DriverConfig& cfg = {}) {
  ProofSession s(cfg);
  return s.proof_case(id);
}

inline Json prove_theorem(const DriverConfig& cfg = {}) {
  ProofSession s(cfg);
  return s.theorem();
}

}  // namespace h31cert
