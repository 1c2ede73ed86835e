#pragma once

#include <string>
#include <string_view>

#include "h31cert/errors.hpp"
#include "json.hpp"

namespace h31cert {

using Json = nlohmann::ordered_json;

enum class Status { Proved, Refuted, Inconclusive };

inline std::string to_string(Status s) {
  switch (s) {
    case Status::Proved:
      return "proved";
    case Status::Refuted:
      return "refuted";
    case Status::Inconclusive:
      return "inconclusive";
  }
  return "inconclusive";
}

inline Status status_from_string(std::string_view s) {
  if (s == "proved") return Status::Proved;
  if (s == "refuted") return Status::Refuted;
  if (s == "inconclusive") return Status::Inconclusive;
  throw InputError("unknown status '" + std::string(s) + "'");
}

/// Refuted dominates inconclusive, which dominates proved.
inline Status combine(Status a, Status b) {
  if (a == Status::Refuted || b == Status::Refuted) return Status::Refuted;
  if (a == Status::Inconclusive || b == Status::Inconclusive) return Status::Inconclusive;
  return Status::Proved;
}

/// Process exit code for a final status.
inline int exit_code(Status s) {
  switch (s) {
    case Status::Proved:
      return 0;
    case Status::Refuted:
      return 1;
    case Status::Inconclusive:
      return 2;
  }
  return 2;
}

/// Relation of a claim "p REL bound".
enum class Relation { Le, Lt, Ge, Gt };

inline std::string to_string(Relation r) {
  switch (r) {
    case Relation::Le:
      return "<=";
    case Relation::Lt:
      return "<";
    case Relation::Ge:
      return ">=";
    case Relation::Gt:
      return ">";
  }
  return "<=";
}

inline Relation relation_from_string(std::string_view s) {
  if (s == "<=" || s == "le") return Relation::Le;
  if (s == "<" || s == "lt") return Relation::Lt;
  if (s == ">=" || s == "ge") return Relation::Ge;
  if (s == ">" || s == "gt") return Relation::Gt;
  throw InputError("unknown relation '" + std::string(s) + "'");
}

inline bool is_strict(Relation r) { return r == Relation::Lt || r == Relation::Gt; }
inline bool is_upper(Relation r) { return r == Relation::Le || r == Relation::Lt; }

/// Whether a value with the given sign (of p - bound) satisfies the relation.
inline bool sign_satisfies(int sign, Relation r) {
  switch (r) {
    case Relation::Le:
      return sign <= 0;
    case Relation::Lt:
      return sign < 0;
    case Relation::Ge:
      return sign >= 0;
    case Relation::Gt:
      return sign > 0;
  }
  return false;
}

}  // namespace h31cert
