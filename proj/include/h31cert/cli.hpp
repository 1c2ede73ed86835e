#pragma once

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "h31cert/proof_driver.hpp"

namespace h31cert::cli {

inline constexpr int kUsageExit = 64;

inline std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(item);
  if (s.empty() || out.empty() || s.back() == ',') throw InputError("expected a comma-separated list, got '" + s + "'");
  return out;
}

inline std::vector<GaussianRational> parse_gaussian_list(const std::string& s) {
  std::vector<GaussianRational> out;
  for (const auto& item : split_list(s)) out.push_back(GaussianRational::parse(item));
  return out;
}

inline std::string join(const std::vector<GaussianRational>& v) {
  std::string out;
  for (std::size_t k = 0; k < v.size(); ++k) out += (k ? "," : "") + v[k].str();
  return out;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void render_parts(const Json& cert, std::ostream& os) {
  if (!cert.contains("parts")) return;
  for (const auto& p : cert.at("parts")) {
    os << "  " << p.at("role").get<std::string>() << (p.at("required").get<bool>() ? "" : " (informative)") << ": "
       << p.at("certificate").at("status").get<std::string>() << "\n";
  }
}

/// Text rendering derived from a JSON result.
inline void render_text(const Json& j, std::ostream& os) {
  std::string kind = j.contains("kind") && j.at("kind").is_string() ? j.at("kind").get<std::string>() : "";
  if (kind == "theorem") {
    os << "theorem: " << j.at("status").get<std::string>() << "\n";
    os << "claim: " << j.at("claim").get<std::string>() << "\n";
    os << "bound: " << j.at("bound").get<std::string>() << " = " << j.at("theta_max").get<std::string>() << "/5120\n";
    if (!j.at("first_failure").is_null()) os << "first failure: " << j.at("first_failure").get<std::string>() << "\n";
    for (const auto& a : j.at("attainment"))
      os << "attainment: theta(" << a.at("c").get<std::string>() << "," << a.at("x").get<std::string>() << ","
         << a.at("y").get<std::string>() << ") = " << a.at("theta").get<std::string>() << "\n";
    for (const auto& s : j.at("steps"))
      os << "  " << s.at("id").get<std::string>() << ": " << s.at("status").get<std::string>() << " ["
         << s.at("method").get<std::string>() << "]\n";
    return;
  }
  if (j.contains("id") && j.contains("certificate")) {
    os << j.at("id").get<std::string>() << ": " << j.at("status").get<std::string>() << "\n";
    os << "method: " << j.at("method").get<std::string>() << "\n";
    os << "region: " << j.at("region").get<std::string>() << "\n";
    if (!j.at("witnesses").empty()) os << "witnesses: " << j.at("witnesses").dump() << "\n";
    if (j.contains("failed_dependencies")) os << "failed dependencies: " << j.at("failed_dependencies").dump() << "\n";
    render_parts(j.at("certificate"), os);
    return;
  }
  if (kind == "sharpness") {
    os << "f0 = " << j.at("function").get<std::string>() << "\n";
    os << "a1..a5: " << j.at("series").get<std::string>() << "\n";
    os << "t1..t5: " << j.at("inverse").get<std::string>() << "\n";
    os << "H = " << j.at("h31").get<std::string>() << "\n";
    os << "|H| = " << j.at("abs_h31").get<std::string>() << " (bound " << j.at("bound").get<std::string>() << ")\n";
    os << "status: " << j.at("status").get<std::string>() << "\n";
    return;
  }
  if (kind == "series") {
    os << j.at("result").get<std::string>() << "\n";
    return;
  }
  for (const auto& [k, v] : j.items()) os << k << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
  render_parts(j, os);
}

struct Options {
  int depth_budget = 24;
  int order = 5;
  std::uint64_t seed = 0;
  long count = 1;
  std::string format = "text";
  std::string out;
  bool records = false;
  std::vector<std::string> perturb;
  std::vector<std::string> invert;
};

inline DriverConfig driver_config(const Options& o) {
  DriverConfig cfg;
  cfg.box.depth_budget = o.depth_budget;
  cfg.seed = o.seed;
  for (const auto& p : o.perturb) {
    auto eq = p.find('=');
    if (eq == std::string::npos) throw UsageError("--perturb expects id=polynomial");
    std::string id = p.substr(0, eq);
    lemma_spec(id);
    cfg.overrides[id].poly = MultiPoly::parse_expression(p.substr(eq + 1));
  }
  for (const auto& id : o.invert) {
    lemma_spec(id);
    cfg.overrides[id].invert = true;
  }
  return cfg;
}

/// Runs the command line; returns the process exit code.
inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"Exact certification of the third Hankel determinant bound for inverse Ozaki functions", "h31cert"};
  app.require_subcommand(1);
  Options o;
  auto global = [&](CLI::App* sub) {
    sub->add_option("--depth-budget", o.depth_budget, "subdivision depth budget")->check(CLI::NonNegativeNumber);
    sub->add_option("--order", o.order, "series truncation order")->check(CLI::PositiveNumber);
    sub->add_option("--seed", o.seed, "random seed");
    sub->add_option("--count", o.count, "sample count");
    sub->add_option("--format", o.format, "json or text")->check(CLI::IsMember({"json", "text"}));
    sub->add_option("--out", o.out, "output file");
  };
  global(&app);
  app.fallthrough();

  std::string arg1, arg2;
  int hankel_r = 3, hankel_n = 1;
  std::vector<std::string> lz(4);

  auto* series = app.add_subcommand("series", "series utilities");
  series->require_subcommand(1);
  auto* revert = series->add_subcommand("revert", "functional inverse of a1,a2,...");
  revert->add_option("coeffs", arg1)->required();
  auto* compose = series->add_subcommand("compose", "outer(inner(z))");
  compose->add_option("outer", arg1)->required();
  compose->add_option("inner", arg2)->required();
  auto* hankel = series->add_subcommand("hankel", "Hankel determinant of a1,a2,...");
  hankel->add_option("coeffs", arg1)->required();
  hankel->add_option("-r", hankel_r)->check(CLI::PositiveNumber);
  hankel->add_option("-n", hankel_n)->check(CLI::PositiveNumber);
  for (auto* s : {revert, compose, hankel}) global(s);

  auto* map = app.add_subcommand("map", "coefficient maps");
  map->require_subcommand(1);
  auto* c2f = map->add_subcommand("c2f", "Caratheodory c1,c2,... to Ozaki a1,a2,...");
  c2f->add_option("c", arg1)->required();
  auto* lzc = map->add_subcommand("lz", "c1..c4 from c1, mu, rho, psi");
  lzc->add_option("c1", lz[0])->required();
  lzc->add_option("mu", lz[1])->required();
  lzc->add_option("rho", lz[2])->required();
  lzc->add_option("psi", lz[3])->required();
  auto* h31 = map->add_subcommand("h31", "H_{3,1}(f^{-1}) from c1,c2,c3,c4");
  h31->add_option("c", arg1)->required();
  for (auto* s : {c2f, lzc, h31}) global(s);

  auto* prove = app.add_subcommand("prove", "certify a lemma, case or the theorem");
  prove->require_subcommand(1);
  auto* plemma = prove->add_subcommand("lemma", "certify one lemma");
  plemma->add_option("id", arg1)->required();
  auto* pcase = prove->add_subcommand("case", "certify one case");
  pcase->add_option("id", arg1)->required();
  auto* ptheorem = prove->add_subcommand("theorem", "run the full plan");
  for (auto* s : {plemma, pcase, ptheorem}) {
    global(s);
    s->add_option("--perturb", o.perturb, "replace a lemma polynomial: id=poly");
    s->add_option("--invert", o.invert, "flip the relation of a lemma");
  }

  auto* sharp = app.add_subcommand("sharpness", "H_{3,1} of the inverse of z/sqrt(1-z^2)");
  global(sharp);
  auto* scan = app.add_subcommand("scan", "seeded Caratheodory samples");
  global(scan);
  scan->add_flag("--records", o.records, "include every sample");

  auto* cert = app.add_subcommand("cert", "inspect stored certificates");
  cert->require_subcommand(1);
  auto* show = cert->add_subcommand("show", "render a certificate");
  show->add_option("file", arg1)->required();
  auto* verify = cert->add_subcommand("verify", "replay a certificate");
  verify->add_option("file", arg1)->required();
  for (auto* s : {show, verify}) global(s);

  auto* expand = app.add_subcommand("expand", "expand a nested polynomial and compare with theta");
  expand->add_option("file", arg1, "nested form")->default_val(std::string(H31CERT_DATA_DIR) + "/theta_nested.txt");
  global(expand);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e, out, err);
    app.exit(e, out, err);
    return kUsageExit;
  }

  try {
    Json result;
    int code = 0;
    auto series_out = [&](const std::string& op, const PowerSeries<Rational>& f) {
      result = Json{{"kind", "series"}, {"op", op}, {"result", format_series(f)}};
    };
    auto trunc = [&](const PowerSeries<Rational>& f) {
      return revert->count("--order") || compose->count("--order") ? series_resize(f, o.order) : f;
    };
    if (revert->parsed()) {
      series_out("revert", series_revert(trunc(parse_series(arg1))));
    } else if (compose->parsed()) {
      series_out("compose", series_compose(trunc(parse_series(arg1)), trunc(parse_series(arg2))));
    } else if (hankel->parsed()) {
      Rational h = hankel_det(parse_series(arg1), HankelSpec{hankel_r, hankel_n});
      result = Json{{"kind", "series"}, {"op", "hankel"}, {"r", hankel_r}, {"n", hankel_n}, {"result", h.str()}};
    } else if (c2f->parsed()) {
      auto c = parse_gaussian_list(arg1);
      auto f = caratheodory_to_ozaki(c, o.order);
      result = Json{{"kind", "series"}, {"op", "c2f"}, {"result", join(f.index1())}};
    } else if (lzc->parsed()) {
      LZParams p{Rational::parse(lz[0]), GaussianRational::parse(lz[1]), GaussianRational::parse(lz[2]),
                 GaussianRational::parse(lz[3])};
      auto c = lz_expand(p);
      result = Json{{"kind", "series"}, {"op", "lz"}, {"result", join({c.begin(), c.end()})}};
    } else if (h31->parsed()) {
      auto c = parse_gaussian_list(arg1);
      GaussianRational closed = h31_inverse_closed_form(c), pipe = h31_inverse_pipeline(c);
      result = Json{{"kind", "h31"},          {"c", join(c)},
                    {"h31", closed.str()},    {"pipeline", pipe.str()},
                    {"identity", closed == pipe}, {"mod_sq", mod_sq(closed).str()},
                    {"within_bound", mod_sq(closed) <= Rational(1, 256)}};
    } else if (plemma->parsed() || pcase->parsed()) {
      ProofSession s(driver_config(o));
      const StepResult& r = plemma->parsed() ? s.lemma(arg1) : s.proof_case(arg1);
      result = r.to_json();
      code = exit_code(r.status);
    } else if (ptheorem->parsed()) {
      ProofSession s(driver_config(o));
      result = s.theorem();
      code = exit_code(status_from_string(result.at("status").get<std::string>()));
    } else if (sharp->parsed()) {
      SharpnessReport r = verify_sharpness();
      result = r.to_json();
      code = exit_code(r.status());
    } else if (scan->parsed()) {
      ScanReport r = empirical_scan(o.count, o.seed, o.records);
      result = r.to_json(o.records);
      code = r.all_bounded && r.all_identity ? 0 : 1;
    } else if (show->parsed()) {
      result = Json::parse(read_file(arg1));
    } else if (verify->parsed()) {
      Json j = Json::parse(read_file(arg1));
      const Json& c = j.contains("id") && j.contains("certificate") ? j.at("certificate") : j;
      std::string why;
      Status replayed = replay_certificate(c, &why);
      Status stored = status_from_string(c.at("status").get<std::string>());
      result = Json{{"kind", "verification"}, {"file", arg1}, {"stored", to_string(stored)},
                    {"replayed", to_string(replayed)}, {"consistent", replayed == stored}};
      if (!why.empty()) result["reason"] = why;
      result["status"] = to_string(replayed == stored ? replayed : Status::Inconclusive);
      code = exit_code(status_from_string(result.at("status").get<std::string>()));
    } else if (expand->parsed()) {
      MultiPoly p = MultiPoly::parse_expression(read_file(arg1));
      bool same = p == theta_poly();
      result = Json{{"kind", "expand"}, {"file", arg1}, {"sparse", p.str()}, {"matches_theta", same},
                    {"status", same ? "proved" : "refuted"}};
      code = same ? 0 : 1;
    }
    std::ostringstream text;
    if (o.format == "json")
      text << result.dump(2) << "\n";
    else
      render_text(result, text);
    if (o.out.empty()) {
      out << text.str();
    } else {
      std::ofstream f(o.out);
      if (!f) throw InputError("cannot write '" + o.out + "'");
      f << text.str();
    }
    return code;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
  } catch (const InputError& e) {
    err << "input error: " << e.what() << "\n";
  } catch (const DomainError& e) {
    err << "domain error: " << e.what() << "\n";
  } catch (const Json::exception& e) {
    err << "input error: " << e.what() << "\n";
  } catch (const std::invalid_argument& e) {
    err << "input error: " << e.what() << "\n";
  } catch (const std::out_of_range& e) {
    err << "input error: " << e.what() << "\n";
  }
  return kUsageExit;
}

}  // namespace h31cert::cli
