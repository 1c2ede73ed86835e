#pragma once

#include <fstream>
#include <ostream>
#include <string>

#include "h31cert/rational.hpp"
#include "json.hpp"

namespace h31cert {

inline void PrintTo(const Rational& r, std::ostream* os) { *os << r.str(); }
inline void PrintTo(const GaussianRational& z, std::ostream* os) { *os << z.str(); }

}  // namespace h31cert

namespace h31test {

inline nlohmann::json oracle(const std::string& name) {
  std::ifstream in(std::string(H31CERT_ORACLE_DIR) + "/" + name);
  if (!in) throw std::runtime_error("missing oracle fixture " + name);
  return nlohmann::json::parse(in);
}

inline h31cert::GaussianRational gaussian(const nlohmann::json& j) {
  return {h31cert::Rational::parse(j.at("re").get<std::string>()), h31cert::Rational::parse(j.at("im").get<std::string>())};
}

inline h31cert::Rational q(long n, long d = 1) { return h31cert::Rational(n, d); }

}  // namespace h31test
