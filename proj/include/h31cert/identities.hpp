#pragma once

#include <string>
#include <vector>

#include "h31cert/catalog.hpp"
#include "h31cert/coefficient_maps.hpp"
#include "h31cert/series.hpp"

namespace h31cert {

struct IdentityItem {
  std::string name;
  MultiPoly lhs;
  MultiPoly rhs;
  bool holds() const { return lhs == rhs; }
};

/// Exact polynomial identities, each tagged by the recipe that rebuilds it.
struct IdentityCheck {
  std::string recipe;
  Json params = Json::object();
  std::vector<IdentityItem> items;
  std::vector<std::string> notes;

  Status status() const {
    for (const auto& it : items)
      if (!it.holds()) return Status::Refuted;
    return Status::Proved;
  }

  Json to_json() const {
    Json j;
    j["kind"] = "identity";
    j["recipe"] = recipe;
    if (!params.empty()) j["params"] = params;
    j["status"] = to_string(status());
    j["checks"] = Json::array();
    for (const auto& it : items) {
      Json c{{"name", it.name}, {"lhs", it.lhs.str()}, {"rhs", it.rhs.str()}, {"holds", it.holds()}};
      if (!it.holds()) c["residual"] = (it.lhs - it.rhs).str();
      j["checks"].push_back(c);
    }
    if (!notes.empty()) j["notes"] = notes;
    return j;
  }
};

namespace detail {

inline MultiPoly sym(const std::string& n) { return MultiPoly::var(n); }
inline MultiPoly qq(long n, long d = 1) { return MultiPoly(Rational(n, d)); }

inline PowerSeries<MultiPoly> symbolic_ozaki() {
  std::vector<MultiPoly> c{sym("c1"), sym("c2"), sym("c3"), sym("c4")};
  return caratheodory_to_ozaki(c, 5);
}

}  // namespace detail

/// Reversion of z + a2 z^2 + ... + a5 z^5 against the closed forms.
inline IdentityCheck identity_reversion() {
  using detail::qq;
  using detail::sym;
  IdentityCheck r{"reversion-closed-forms", Json::object(), {}, {}};
  MultiPoly a2 = sym("a2"), a3 = sym("a3"), a4 = sym("a4"), a5 = sym("a5");
  PowerSeries<MultiPoly> f = PowerSeries<MultiPoly>::from_index1({qq(1), a2, a3, a4, a5});
  PowerSeries<MultiPoly> g = series_revert(f);
  r.items.push_back({"t2", g[2], qq(0) - a2});
  r.items.push_back({"t3", g[3], qq(0) - a3 + qq(2) * a2 * a2});
  r.items.push_back({"t4", g[4], qq(0) - a4 + qq(5) * a2 * a3 - qq(5) * a2.pow(3)});
  r.items.push_back({"t5", g[5],
                     qq(0) - a5 + qq(6) * a2 * a4 - qq(21) * a2 * a2 * a3 + qq(3) * a3 * a3 + qq(14) * a2.pow(4)});
  return r;
}

/// Inverse coefficients of the Ozaki map in c1..c4, and the two map paths.
inline IdentityCheck identity_inverse_coefficients() {
  using detail::qq;
  using detail::sym;
  IdentityCheck r{"inverse-coefficients", Json::object(), {}, {}};
  MultiPoly c1 = sym("c1"), c2 = sym("c2"), c3 = sym("c3"), c4 = sym("c4");
  PowerSeries<MultiPoly> f = detail::symbolic_ozaki();
  PowerSeries<MultiPoly> f_exp = caratheodory_to_ozaki_exp(std::vector<MultiPoly>{c1, c2, c3, c4}, 5);
  for (int n = 2; n <= 5; ++n) r.items.push_back({"a" + std::to_string(n) + " (exp path)", f[n], f_exp[n]});
  PowerSeries<MultiPoly> g = series_revert(f);
  r.items.push_back({"t2", g[2], qq(-3, 4) * c1});
  r.items.push_back({"t3", g[3], qq(1, 4) * (qq(3) * c1 * c1 - c2)});
  r.items.push_back({"t4", g[4], qq(-1, 32) * (qq(27) * c1.pow(3) - qq(21) * c1 * c2 + qq(4) * c3)});
  r.items.push_back({"t5", g[5],
                     qq(-3, 160) * (qq(4) * c4 - qq(22) * c1 * c3 + qq(69) * c1 * c1 * c2 - qq(7) * c2 * c2 -
                                    qq(54) * c1.pow(4))});
  return r;
}

/// Hankel determinant of the inverse series against the closed form.
inline IdentityCheck identity_closed_form() {
  using detail::sym;
  IdentityCheck r{"closed-form-determinant", Json::object(), {}, {}};
  PowerSeries<MultiPoly> g = series_revert(detail::symbolic_ozaki());
  MultiPoly h = hankel_det(g, HankelSpec{3, 1});
  r.items.push_back({"H31", h, h31_inverse_closed_form(sym("c1"), sym("c2"), sym("c3"), sym("c4"))});
  return r;
}

/// Closed form after substituting the disc parameters; m, mb, r, rb, s are
/// mu, conj(mu), rho, conj(rho), psi as independent symbols.
inline IdentityCheck identity_lz_form() {
  IdentityCheck r{"disc-parameter-form", Json::object(), {}, {}};
  auto c = lz_symbolic();
  MultiPoly h = h31_inverse_closed_form(c[0], c[1], c[2], c[3]).scaled(Rational(5120));
  r.items.push_back({"5120*H31", h, h31_lz_form_corrected()});
  MultiPoly printed = h31_lz_form_as_printed();
  if (!(printed == h))
    r.notes.push_back("printed form (mu^2, rho^2 for the moduli, no psi on the last block) differs from the "
                      "substitution in " +
                      std::to_string((h - printed).size()) + " monomials; the corrected form is certified");
  return r;
}

/// Sum of the term-wise modulus bounds equals theta.
inline IdentityCheck identity_majorant(const std::vector<int>& signs) {
  IdentityCheck r{"modulus-majorant", Json::object(), {}, {}};
  auto terms = h31_modulus_terms();
  if (signs.size() != terms.size()) throw UsageError("identity_majorant: one sign per term");
  MultiPoly sum;
  for (std::size_t k = 0; k < terms.size(); ++k) sum += terms[k].majorant(signs[k]);
  r.items.push_back({"sum |term|", sum, theta_poly()});
  return r;
}

/// theta restricted by fixing some of c, x, y, against a stated form.
inline IdentityCheck identity_theta_restriction(const std::map<std::string, Rational>& fixed, const MultiPoly& stated,
                                                const std::string& name) {
  IdentityCheck r{"theta-restriction", Json::object(), {}, {}};
  for (const auto& [k, v] : fixed) r.params[k] = v.str();
  r.params["stated"] = stated.str();
  r.params["name"] = name;
  MultiPoly t = theta_poly();
  r.items.push_back({name, fixed.empty() ? t : t.subs(fixed), stated});
  return r;
}

/// Plain lhs == rhs with both sides stored.
inline IdentityCheck identity_explicit(const std::string& name, const MultiPoly& lhs, const MultiPoly& rhs) {
  IdentityCheck r{"explicit", Json::object(), {}, {}};
  r.items.push_back({name, lhs, rhs});
  return r;
}

/// Rebuilds a stored identity from its recipe; explicit ones re-parse both sides.
inline IdentityCheck rebuild_identity(const Json& j) {
  std::string recipe = j.at("recipe").get<std::string>();
  if (recipe == "reversion-closed-forms") return identity_reversion();
  if (recipe == "inverse-coefficients") return identity_inverse_coefficients();
  if (recipe == "closed-form-determinant") return identity_closed_form();
  if (recipe == "disc-parameter-form") return identity_lz_form();
  if (recipe == "modulus-majorant") {
    std::vector<int> signs;
    for (const auto& s : j.at("params").at("signs")) signs.push_back(s.get<int>());
    IdentityCheck r = identity_majorant(signs);
    r.params = j.at("params");
    return r;
  }
  if (recipe == "theta-restriction") {
    const Json& p = j.at("params");
    std::map<std::string, Rational> fixed;
    for (const char* v : {"c", "x", "y"})
      if (p.contains(v)) fixed[v] = Rational::parse(p.at(v).get<std::string>());
    return identity_theta_restriction(fixed, MultiPoly::parse(p.at("stated").get<std::string>()),
                                      p.at("name").get<std::string>());
  }
  if (recipe == "explicit") {
    IdentityCheck r{"explicit", Json::object(), {}, {}};
    for (const auto& c : j.at("checks"))
      r.items.push_back({c.at("name").get<std::string>(), MultiPoly::parse(c.at("lhs").get<std::string>()),
                         MultiPoly::parse(c.at("rhs").get<std::string>())});
    return r;
  }
  throw InputError("unknown identity recipe '" + recipe + "'");
}

}  // namespace h31cert
