#pragma once

#include <optional>
#include <string>
#include <vector>

#include "h31cert/multi_poly.hpp"
#include "h31cert/rational.hpp"
#include "h31cert/status.hpp"
#include "h31cert/uni_poly.hpp"

namespace h31cert {

/// Canonical Sturm sequence p, p', -rem(...), ...
inline std::vector<UniPoly> sturm_chain(const UniPoly& p) {
  if (p.is_zero()) throw UsageError("sturm_chain: zero polynomial");
  std::vector<UniPoly> chain{p};
  UniPoly d = p.derivative();
  if (d.is_zero()) return chain;
  chain.push_back(d);
  for (;;) {
    UniPoly r = chain[chain.size() - 2].divmod(chain.back()).second;
    if (r.is_zero()) break;
    chain.push_back(-r);
  }
  return chain;
}

inline int sign_variations(const std::vector<UniPoly>& chain, const Rational& t) {
  int count = 0, last = 0;
  for (const auto& q : chain) {
    int s = q.sign_at(t);
    if (s == 0) continue;
    if (last != 0 && s != last) ++count;
    last = s;
  }
  return count;
}

/// Distinct real roots of p in the interval, endpoints honoured exactly.
inline int count_real_roots(const UniPoly& p, const Interval& i) {
  if (p.is_zero()) throw UsageError("count_real_roots: zero polynomial");
  UniPoly s = squarefree_part(p);
  if (i.is_point()) return s(i.lo()).is_zero() ? 1 : 0;
  auto chain = sturm_chain(s);
  int n = sign_variations(chain, i.lo()) - sign_variations(chain, i.hi());
  if (!i.lo_open() && s(i.lo()).is_zero()) ++n;
  if (i.hi_open() && s(i.hi()).is_zero()) --n;
  return n;
}

/// One isolated root: exact rational, or the only root inside the open (lo, hi)
/// whose endpoints are not roots.
struct RootItem {
  bool exact = false;
  Rational lo;
  Rational hi;

  Json to_json() const {
    if (exact) return Json{{"root", lo.str()}};
    return Json{{"isolating", "(" + lo.str() + ", " + hi.str() + ")"}};
  }
  static RootItem from_json(const Json& j) {
    if (j.contains("root")) {
      Rational r = Rational::parse(j.at("root").get<std::string>());
      return {true, r, r};
    }
    Interval iv = Interval::parse(j.at("isolating").get<std::string>());
    return {false, iv.lo(), iv.hi()};
  }
  friend bool operator==(const RootItem&, const RootItem&) = default;
};

namespace detail {

struct Isolator {
  const UniPoly& s;
  std::vector<UniPoly> chain;
  Rational lo, hi;
  std::vector<RootItem> out;

  int open_count(const Rational& a, const Rational& b) const {
    int n = sign_variations(chain, a) - sign_variations(chain, b);
    if (s(b).is_zero()) --n;
    return n;
  }

  void run(const Rational& a, const Rational& b) {
    int n = open_count(a, b);
    if (n <= 0) return;
    if (n == 1 && lo < a && b < hi && !s(a).is_zero() && !s(b).is_zero()) {
      out.push_back({false, a, b});
      return;
    }
    Rational m = midpoint(a, b);
    run(a, m);
    if (s(m).is_zero()) out.push_back({true, m, m});
    run(m, b);
  }
};

}  // namespace detail

/// Isolates all distinct roots of p in the closed [lo, hi], sorted.
inline std::vector<RootItem> isolate_roots(const UniPoly& p, const Rational& lo, const Rational& hi) {
  UniPoly s = squarefree_part(p);
  if (s.degree() <= 0) return {};
  detail::Isolator iso{s, sturm_chain(s), lo, hi, {}};
  if (s(lo).is_zero()) iso.out.push_back({true, lo, lo});
  if (lo < hi) {
    iso.run(lo, hi);
    if (s(hi).is_zero()) iso.out.push_back({true, hi, hi});
  }
  return iso.out;
}

/// One rational point strictly inside each gap between consecutive roots
/// (and the interval ends) of the closed hull [lo, hi].
inline std::vector<Rational> gap_samples(const std::vector<RootItem>& items, const Rational& lo, const Rational& hi) {
  std::vector<Rational> samples;
  if (!(lo < hi)) return samples;
  Rational left = lo;
  bool left_is_open_end = false;
  std::size_t k = 0;
  if (!items.empty() && items[0].exact && items[0].lo == lo) k = 1;
  for (; k <= items.size(); ++k) {
    Rational right = hi;
    bool right_is_open_end = false;
    if (k < items.size()) {
      right = items[k].lo;
      right_is_open_end = !items[k].exact;
    }
    bool nonempty = left < right || (left == right && left_is_open_end && right_is_open_end);
    if (nonempty) {
      if (left_is_open_end)
        samples.push_back(left);
      else if (right_is_open_end)
        samples.push_back(right);
      else
        samples.push_back(midpoint(left, right));
    }
    if (k < items.size()) {
      left = items[k].hi;
      left_is_open_end = !items[k].exact;
    }
  }
  return samples;
}

/// Sign certificate for "p REL 0 on interval".
struct SignCertificate {
  UniPoly poly;
  std::string var = "c";
  Interval interval;
  Relation relation = Relation::Le;
  std::string method;
  Status status = Status::Inconclusive;
  int root_count = 0;
  std::vector<RootItem> roots;
  std::vector<Rational> samples;
  std::optional<Rational> counterexample;
  std::optional<RootItem> violating_root;
  std::string note;

  Json to_json() const {
    Json j;
    j["kind"] = "sign";
    j["poly"] = poly.str(var);
    j["var"] = var;
    j["interval"] = interval.str();
    j["relation"] = to_string(relation) + " 0";
    j["method"] = method;
    j["status"] = to_string(status);
    Json w;
    w["root_count"] = root_count;
    w["roots"] = Json::array();
    for (const auto& r : roots) w["roots"].push_back(r.to_json());
    w["samples"] = Json::array();
    for (const auto& s : samples) w["samples"].push_back(s.str());
    if (counterexample) {
      w["counterexample"] = counterexample->str();
      w["counterexample_value"] = poly(*counterexample).str();
    }
    if (violating_root) w["violating_root"] = violating_root->to_json();
    j["witnesses"] = w;
    if (!note.empty()) j["note"] = note;
    return j;
  }

  static SignCertificate from_json(const Json& j) {
    SignCertificate c;
    c.var = j.at("var").get<std::string>();
    c.poly = UniPoly::parse(j.at("poly").get<std::string>(), c.var);
    c.interval = Interval::parse(j.at("interval").get<std::string>());
    std::string rel = j.at("relation").get<std::string>();
    c.relation = relation_from_string(rel.substr(0, rel.find(' ')));
    c.method = j.at("method").get<std::string>();
    c.status = status_from_string(j.at("status").get<std::string>());
    const Json& w = j.at("witnesses");
    c.root_count = w.at("root_count").get<int>();
    for (const auto& r : w.at("roots")) c.roots.push_back(RootItem::from_json(r));
    for (const auto& s : w.at("samples")) c.samples.push_back(Rational::parse(s.get<std::string>()));
    if (w.contains("counterexample")) c.counterexample = Rational::parse(w.at("counterexample").get<std::string>());
    if (w.contains("violating_root")) c.violating_root = RootItem::from_json(w.at("violating_root"));
    if (j.contains("note")) c.note = j.at("note").get<std::string>();
    return c;
  }
};

namespace detail {

inline bool root_in(const RootItem& r, const Interval& i) {
  if (r.exact) return i.contains(r.lo);
  return true;  // open items lie strictly inside the hull
}

}  // namespace detail

/// Decides p REL 0 on the interval. Refutations carry a rational point where
/// the relation fails, or (strict claims only) an isolated irrational root.
inline SignCertificate certify_sign(const UniPoly& p, const Interval& i, Relation rel, const std::string& var = "c") {
  SignCertificate cert;
  cert.poly = p;
  cert.var = var;
  cert.interval = i;
  cert.relation = rel;
  if (p.degree() <= 0 || i.is_point()) {
    cert.method = "endpoint-eval";
    std::vector<Rational> pts{i.lo()};
    if (!i.is_point()) pts = {midpoint(i.lo(), i.hi())};
    cert.samples = pts;
    int s = p(pts[0]).sign();
    if (sign_satisfies(s, rel)) {
      cert.status = Status::Proved;
    } else {
      cert.status = Status::Refuted;
      cert.counterexample = pts[0];
    }
    cert.root_count = p.is_zero() ? -1 : (s == 0 ? 1 : 0);
    return cert;
  }
  cert.method = "sturm-root-count";
  UniPoly s = squarefree_part(p);
  cert.roots = isolate_roots(s, i.lo(), i.hi());
  cert.root_count = static_cast<int>(cert.roots.size());
  cert.samples = gap_samples(cert.roots, i.lo(), i.hi());
  cert.status = Status::Proved;
  for (const auto& q : cert.samples) {
    if (!sign_satisfies(p.sign_at(q), rel)) {
      cert.status = Status::Refuted;
      cert.counterexample = q;
      return cert;
    }
  }
  if (is_strict(rel)) {
    for (const auto& r : cert.roots) {
      if (!detail::root_in(r, i)) continue;
      cert.status = Status::Refuted;
      if (r.exact)
        cert.counterexample = r.lo;
      else
        cert.violating_root = r;
      return cert;
    }
  }
  return cert;
}

/// Independent re-check of a stored sign certificate from its witnesses.
/// Returns the status the witnesses establish (refuted certificates are
/// re-checked by evaluating the counterexample).
inline Status replay_sign(const SignCertificate& c, std::string* why = nullptr) {
  auto reject = [&](const std::string& msg) {
    if (why) *why = msg;
    return Status::Inconclusive;
  };
  const Interval& i = c.interval;
  if (c.status == Status::Refuted) {
    if (c.counterexample) {
      if (!i.contains(*c.counterexample)) return reject("counterexample outside interval");
      if (sign_satisfies(c.poly.sign_at(*c.counterexample), c.relation)) return reject("counterexample satisfies claim");
      return Status::Refuted;
    }
    if (c.violating_root && is_strict(c.relation)) {
      const auto& r = *c.violating_root;
      if (!(i.lo() <= r.lo && r.hi <= i.hi())) return reject("violating root outside interval");
      if (count_real_roots(c.poly, Interval(r.lo, r.hi, true, true)) < 1) return reject("no root in stored interval");
      return Status::Refuted;
    }
    return reject("refuted certificate without witness");
  }
  if (c.method == "endpoint-eval") {
    if (!(c.poly.degree() <= 0 || i.is_point())) return reject("endpoint-eval needs a constant or a point interval");
    if (c.samples.size() != 1 || !i.contains(c.samples[0])) return reject("bad endpoint sample");
    return sign_satisfies(c.poly.sign_at(c.samples[0]), c.relation) ? Status::Proved : reject("sample violates claim");
  }
  if (c.method != "sturm-root-count") return reject("unknown method " + c.method);
  UniPoly s = squarefree_part(c.poly);
  if (count_real_roots(s, i.closure()) != static_cast<int>(c.roots.size())) return reject("root count mismatch");
  for (std::size_t k = 0; k < c.roots.size(); ++k) {
    const auto& r = c.roots[k];
    if (k > 0 && !(c.roots[k - 1].hi <= r.lo)) return reject("roots not sorted");
    if (r.lo < i.lo() || i.hi() < r.hi) return reject("root outside hull");
    if (r.exact) {
      if (!s(r.lo).is_zero()) return reject("stored exact root is not a root");
    } else {
      if (!(i.lo() < r.lo && r.hi < i.hi())) return reject("isolating interval touches the hull ends");
      if (s(r.lo).is_zero() || s(r.hi).is_zero()) return reject("isolating interval ends at a root");
      if (count_real_roots(s, Interval(r.lo, r.hi, true, true)) != 1) return reject("isolating interval not isolating");
    }
  }
  if (gap_samples(c.roots, i.lo(), i.hi()) != c.samples) return reject("gap samples do not match the roots");
  for (const auto& q : c.samples)
    if (!sign_satisfies(c.poly.sign_at(q), c.relation)) return reject("gap sample violates claim");
  if (is_strict(c.relation))
    for (const auto& r : c.roots)
      if (detail::root_in(r, i)) return reject("root inside interval under a strict claim");
  return Status::Proved;
}

/// Exact identity check p == scalar * prod(factors) + sum(remainder).
struct FactorizationCheck {
  MultiPoly poly;
  std::vector<MultiPoly> factors;
  Rational scalar{1};
  std::vector<MultiPoly> remainder;
  bool holds = false;
  MultiPoly residual;

  Json to_json() const {
    Json j;
    j["kind"] = "factorization";
    j["poly"] = poly.str();
    j["scalar"] = scalar.str();
    j["factors"] = Json::array();
    for (const auto& f : factors) j["factors"].push_back(f.str());
    j["remainder"] = Json::array();
    for (const auto& r : remainder) j["remainder"].push_back(r.str());
    j["status"] = holds ? "proved" : "refuted";
    if (!holds) j["witnesses"] = Json{{"residual", residual.str()}};
    return j;
  }
  static FactorizationCheck from_json(const Json& j) {
    FactorizationCheck f;
    f.poly = MultiPoly::parse(j.at("poly").get<std::string>());
    f.scalar = Rational::parse(j.at("scalar").get<std::string>());
    for (const auto& s : j.at("factors")) f.factors.push_back(MultiPoly::parse(s.get<std::string>()));
    for (const auto& s : j.at("remainder")) f.remainder.push_back(MultiPoly::parse(s.get<std::string>()));
    return f;
  }
};

inline FactorizationCheck verify_factorization(const MultiPoly& p, const std::vector<MultiPoly>& factors,
                                               const Rational& scalar, const std::vector<MultiPoly>& remainder = {}) {
  FactorizationCheck f{p, factors, scalar, remainder, false, {}};
  MultiPoly rhs(scalar);
  for (const auto& q : factors) rhs = rhs * q;
  for (const auto& r : remainder) rhs += r;
  f.residual = p - rhs;
  f.holds = f.residual.is_zero();
  return f;
}

inline FactorizationCheck verify_factorization(const UniPoly& p, const std::vector<UniPoly>& factors,
                                               const Rational& scalar, const std::string& var = "c") {
  std::vector<MultiPoly> fs;
  for (const auto& q : factors) fs.push_back(q.to_multi(var));
  return verify_factorization(p.to_multi(var), fs, scalar);
}

}  // namespace h31cert
