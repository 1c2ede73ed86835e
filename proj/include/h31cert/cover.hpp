#pragma once

#include <optional>
#include <string>
#include <vector>

#include "h31cert/box.hpp"

namespace h31cert {

struct CoverPiece {
  std::string label;
  Box box;
};

struct CoverReport {
  Box target;
  std::vector<CoverPiece> pieces;
  bool covered = false;
  long cells = 0;
  std::optional<Box> uncovered;

  Json to_json() const {
    Json j;
    j["kind"] = "cover";
    j["target"] = target.to_json();
    j["pieces"] = Json::array();
    for (const auto& p : pieces) j["pieces"].push_back(Json{{"label", p.label}, {"box", p.box.to_json()}});
    j["status"] = covered ? "proved" : "refuted";
    Json w;
    w["elementary_cells"] = cells;
    if (uncovered) w["uncovered_cell"] = uncovered->to_json();
    j["witnesses"] = w;
    return j;
  }
};

namespace detail {

/// Points and open gaps between consecutive breakpoints, kept if inside iv.
inline std::vector<Interval> elementary_cells(std::vector<Rational> cuts, const Interval& iv) {
  cuts.push_back(iv.lo());
  cuts.push_back(iv.hi());
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  std::vector<Interval> out;
  for (std::size_t k = 0; k < cuts.size(); ++k) {
    if (cuts[k] < iv.lo() || iv.hi() < cuts[k]) continue;
    Interval pt = Interval::point(cuts[k]);
    if (iv.contains(pt)) out.push_back(pt);
    if (k + 1 < cuts.size() && cuts[k + 1] <= iv.hi()) {
      Interval gap(cuts[k], cuts[k + 1], true, true);
      if (iv.contains(gap)) out.push_back(gap);
    }
  }
  return out;
}

}  // namespace detail

/// Decides whether the pieces cover the target by splitting it into the
/// elementary cells cut out by every piece endpoint; each cell must lie in
/// a single piece.
inline CoverReport check_cover(const Box& target, const std::vector<CoverPiece>& pieces) {
  CoverReport r{target, pieces, false, 0, std::nullopt};
  for (const auto& p : pieces)
    if (p.box.vars() != target.vars()) throw UsageError("cover piece '" + p.label + "' has different variables");
  std::size_t n = target.dim();
  std::vector<std::vector<Interval>> axes(n);
  for (std::size_t k = 0; k < n; ++k) {
    std::vector<Rational> cuts;
    for (const auto& p : pieces) {
      cuts.push_back(p.box[k].lo());
      cuts.push_back(p.box[k].hi());
    }
    axes[k] = detail::elementary_cells(cuts, target[k]);
  }
  std::vector<std::size_t> idx(n, 0);
  for (;;) {
    Box cell;
    for (std::size_t k = 0; k < n; ++k) cell.set(target.vars()[k], axes[k][idx[k]]);
    ++r.cells;
    bool inside = false;
    for (const auto& p : pieces)
      if (p.box.contains(cell)) {
        inside = true;
        break;
      }
    if (!inside) {
      r.uncovered = cell;
      return r;
    }
    std::size_t k = 0;
    while (k < n && ++idx[k] == axes[k].size()) idx[k++] = 0;
    if (k == n) break;
  }
  r.covered = true;
  return r;
}

inline Status replay_cover(const Json& j, std::string* why = nullptr) {
  Box target = Box::from_json(j.at("target"));
  std::vector<CoverPiece> pieces;
  for (const auto& p : j.at("pieces")) pieces.push_back({p.at("label").get<std::string>(), Box::from_json(p.at("box"))});
  CoverReport r = check_cover(target, pieces);
  if (!r.covered && why) *why = "uncovered cell " + r.uncovered->str();
  return r.covered ? Status::Proved : Status::Refuted;
}

}  // namespace h31cert
