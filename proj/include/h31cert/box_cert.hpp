#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "h31cert/bernstein.hpp"
#include "h31cert/box.hpp"
#include "h31cert/multi_poly.hpp"
#include "h31cert/status.hpp"

namespace h31cert {

struct BoxCertOptions {
  int depth_budget = 24;
  long node_cap = 400000;
  /// Nesting levels of vertex blow-up allowed below the root.
  int blowup_levels = 2;
  long chart_node_cap = 20000;
};

/// Certified claim "poly REL bound on box" with its replayable subdivision tree.
struct BoundCertificate {
  MultiPoly poly;
  Box box;
  Relation relation = Relation::Le;
  Rational bound;
  std::string method = "branch-tree";
  Status status = Status::Inconclusive;
  Json tree;
  std::optional<Point> counterexample;
  /// Box vertices where the claim is tight and a blow-up chart settled it.
  std::vector<Point> equality_points;
  /// All leaves strictly settled: the claim holds strictly off equality_points.
  bool strict_off_equality = false;
  long nodes = 0;
  int max_depth = 0;
  std::string note;

  Json to_json() const {
    Json j;
    j["kind"] = "bound";
    j["poly"] = poly.str();
    j["box"] = box.to_json();
    j["claim"] = "poly " + to_string(relation) + " " + bound.str();
    j["relation"] = to_string(relation);
    j["bound"] = bound.str();
    j["method"] = method;
    j["status"] = to_string(status);
    Json w;
    w["nodes"] = nodes;
    w["max_depth"] = max_depth;
    w["strict_off_equality"] = strict_off_equality;
    w["equality_set"] = Json::array();
    for (const auto& p : equality_points) w["equality_set"].push_back(point_to_json(p));
    if (counterexample) {
      w["counterexample"] = point_to_json(*counterexample);
      w["counterexample_value"] = poly.eval(*counterexample).str();
    }
    j["witnesses"] = w;
    if (!note.empty()) j["note"] = note;
    j["tree"] = tree;
    return j;
  }
};

namespace detail {

struct NodeResult {
  Status status = Status::Proved;
  bool strict = true;
  std::optional<Point> counterexample;
  std::vector<Point> equality;
  Json tree;
};

/// Certifies g <= 0 (or g < 0) on closed sub-boxes of a claim box.
class BoxSolver {
 public:
  BoxSolver(const MultiPoly& g, const Box& claim_box, bool strict, const BoxCertOptions& opt, int blowup_levels,
            long node_cap)
      : g_(g), dense_(g, claim_box.vars()), claim_(claim_box), strict_(strict), opt_(opt),
        blowup_levels_(blowup_levels), node_cap_(node_cap) {
    for (const auto& iv : claim_box.intervals()) root_width_.push_back(iv.width());
  }

  NodeResult solve(int depth_budget) {
    budget_ = depth_budget;
    return node(claim_.closure().intervals(), 0);
  }

  long nodes() const { return nodes_; }
  int max_depth() const { return max_depth_; }

 private:
  Point to_point(const std::vector<Rational>& at) const {
    Point p;
    for (std::size_t k = 0; k < at.size(); ++k) p[claim_.vars()[k]] = at[k];
    return p;
  }

  bool violates(const Rational& v) const { return strict_ ? v.sign() >= 0 : v.sign() > 0; }

  Json box_json(const std::vector<Interval>& ivs) const {
    Json j = Json::object();
    for (std::size_t k = 0; k < ivs.size(); ++k) j[claim_.vars()[k]] = ivs[k].str();
    return j;
  }

  NodeResult node(const std::vector<Interval>& ivs, int depth) {
    NodeResult res;
    ++nodes_;
    max_depth_ = std::max(max_depth_, depth);
    res.tree["box"] = box_json(ivs);
    if (nodes_ > node_cap_) {
      res.status = Status::Inconclusive;
      res.tree["inconclusive"] = "node cap";
      return res;
    }
    auto coeffs = dense_.bernstein(ivs);
    Rational mx = coeffs[0];
    for (const auto& v : coeffs)
      if (mx < v) mx = v;
    if (mx.sign() < 0 || (!strict_ && mx.is_zero())) {
      res.strict = mx.sign() < 0;
      res.tree["max"] = mx.str();
      return res;
    }
    // counterexample probes: vertices and centre
    std::size_t n = ivs.size();
    std::vector<std::vector<Rational>> zero_vertices;
    for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
      std::vector<Rational> v(n);
      bool dup = false;
      for (std::size_t k = 0; k < n; ++k) {
        bool up = (mask >> k) & 1u;
        if (up && ivs[k].is_point()) dup = true;
        v[k] = up ? ivs[k].hi() : ivs[k].lo();
      }
      if (dup) continue;
      Rational val = dense_.eval(v);
      Point p = to_point(v);
      if (violates(val) && claim_.contains(p)) {
        res.status = Status::Refuted;
        res.counterexample = p;
        res.tree["counterexample"] = point_to_json(p);
        return res;
      }
      if (val.is_zero()) zero_vertices.push_back(v);
    }
    {
      std::vector<Rational> mid(n);
      for (std::size_t k = 0; k < n; ++k) mid[k] = midpoint(ivs[k].lo(), ivs[k].hi());
      Point p = to_point(mid);
      if (violates(dense_.eval(mid)) && claim_.contains(p)) {
        res.status = Status::Refuted;
        res.counterexample = p;
        res.tree["counterexample"] = point_to_json(p);
        return res;
      }
    }
    if (zero_vertices.size() == 1 && blowup_levels_ > 0 && depth < budget_) {
      auto attempt = blowup(ivs, zero_vertices[0], depth);
      if (attempt.status == Status::Proved || attempt.status == Status::Refuted) return attempt;
    }
    if (depth >= budget_) {
      res.status = Status::Inconclusive;
      res.tree["inconclusive"] = "depth budget";
      return res;
    }
    std::size_t axis = n;
    Rational best(-1);
    for (std::size_t k = 0; k < n; ++k) {
      if (root_width_[k].is_zero()) continue;
      Rational rel = ivs[k].width() / root_width_[k];
      if (best < rel) {
        best = rel;
        axis = k;
      }
    }
    if (axis == n || best.is_zero()) {
      res.status = Status::Inconclusive;
      res.tree["inconclusive"] = "point box";
      return res;
    }
    Rational m = midpoint(ivs[axis].lo(), ivs[axis].hi());
    std::vector<Interval> left = ivs, right = ivs;
    left[axis] = Interval(ivs[axis].lo(), m);
    right[axis] = Interval(m, ivs[axis].hi());
    res.tree["split"] = claim_.vars()[axis];
    res.tree["children"] = Json::array();
    for (const auto* child : {&left, &right}) {
      NodeResult r = node(*child, depth + 1);
      res.tree["children"].push_back(std::move(r.tree));
      res.strict = res.strict && r.strict;
      res.equality.insert(res.equality.end(), r.equality.begin(), r.equality.end());
      if (r.status != Status::Proved) {
        res.status = r.status;
        res.counterexample = r.counterexample;
        if (r.status == Status::Refuted) return res;
      }
    }
    return res;
  }

  NodeResult blowup(const std::vector<Interval>& ivs, const std::vector<Rational>& vertex, int depth);

  const MultiPoly& g_;
  DensePoly dense_;
  Box claim_;
  bool strict_;
  BoxCertOptions opt_;
  int blowup_levels_;
  long node_cap_;
  std::vector<Rational> root_width_;
  int budget_ = 0;
  long nodes_ = 0;
  int max_depth_ = 0;
};

struct BlowupSetup {
  std::vector<std::string> axes;  // non-degenerate variables, blown up
  MultiPoly local;                // g in local coordinates, vertex at origin
  int order = 0;                  // common power of the chart variable
};

/// g in coordinates u in [0,1]^n with the chosen vertex at u = 0.
inline BlowupSetup blowup_setup(const MultiPoly& g, const std::vector<std::string>& vars,
                                const std::vector<Interval>& ivs, const std::vector<Rational>& vertex) {
  BlowupSetup s;
  MultiPoly local = g;
  for (std::size_t k = 0; k < vars.size(); ++k) {
    if (ivs[k].is_point()) {
      local = local.subs({{vars[k], ivs[k].lo()}});
      continue;
    }
    Rational w = ivs[k].width();
    if (vertex[k] == ivs[k].hi()) w = -w;
    local = local.subs(vars[k], MultiPoly(vertex[k]) + MultiPoly::var(vars[k]).scaled(w));
    s.axes.push_back(vars[k]);
  }
  s.local = local.with_vars(s.axes);
  int m = -1;
  for (const auto& [e, c] : s.local.terms()) {
    int t = 0;
    for (int k : e) t += k;
    m = m < 0 ? t : std::min(m, t);
  }
  s.order = std::max(m, 0);
  return s;
}

/// Chart k: u_j = t_j u_k (j != k), divided by u_k^order.
inline MultiPoly blowup_chart(const BlowupSetup& s, std::size_t k) {
  MultiPoly out;
  for (const auto& [e, c] : s.local.terms()) {
    int total = 0;
    for (int v : e) total += v;
    std::map<std::string, int> powers;
    for (std::size_t j = 0; j < e.size(); ++j) powers[s.axes[j]] = j == k ? total - s.order : e[j];
    out += MultiPoly::monomial(c, powers);
  }
  return out;
}

/// Chart domain: the unit box with the face t_k = 0 removed (it maps to the vertex).
inline Box chart_box(const std::vector<std::string>& axes, std::size_t k) {
  Box b;
  for (std::size_t j = 0; j < axes.size(); ++j) b.set(axes[j], Interval(Rational(0), Rational(1), j == k, false));
  return b;
}

inline NodeResult BoxSolver::blowup(const std::vector<Interval>& ivs, const std::vector<Rational>& vertex, int depth) {
  NodeResult res;
  Point vp = to_point(vertex);
  if (strict_ && claim_.contains(vp)) {
    res.status = Status::Refuted;
    res.counterexample = vp;
    return res;
  }
  BlowupSetup s = blowup_setup(g_, claim_.vars(), ivs, vertex);
  if (s.order == 0 || s.axes.empty()) {
    res.status = Status::Inconclusive;
    return res;
  }
  res.tree["box"] = box_json(ivs);
  Json bj;
  bj["vertex"] = point_to_json(vp);
  bj["order"] = s.order;
  bj["charts"] = Json::array();
  for (std::size_t k = 0; k < s.axes.size(); ++k) {
    MultiPoly gk = blowup_chart(s, k);
    Box ub = chart_box(s.axes, k);
    BoxSolver sub(gk, ub, strict_, opt_, blowup_levels_ - 1, opt_.chart_node_cap);
    NodeResult r = sub.solve(budget_ - depth - 1);
    nodes_ += sub.nodes();
    if (r.status != Status::Proved) {
      res.status = Status::Inconclusive;
      if (r.status == Status::Refuted && r.counterexample) {
        const Point& t = *r.counterexample;
        Rational uk = t.at(s.axes[k]);
        if (uk.sign() > 0) {
          Point back = vp;
          for (std::size_t j = 0; j < s.axes.size(); ++j) {
            const auto& name = s.axes[j];
            std::size_t idx = 0;
            while (claim_.vars()[idx] != name) ++idx;
            Rational u = j == k ? uk : t.at(name) * uk;
            Rational w = ivs[idx].width();
            back[name] = vertex[idx] == ivs[idx].hi() ? vertex[idx] - w * u : vertex[idx] + w * u;
          }
          if (claim_.contains(back) && violates(dense_.eval(back))) {
            res.status = Status::Refuted;
            res.counterexample = back;
            res.tree["counterexample"] = point_to_json(back);
          }
        }
      }
      return res;
    }
    res.strict = res.strict && r.strict;
    bj["charts"].push_back(Json{{"axis", s.axes[k]}, {"tree", std::move(r.tree)}});
  }
  res.tree["blowup"] = std::move(bj);
  res.equality.push_back(vp);
  return res;
}

inline MultiPoly claim_gap(const MultiPoly& p, Relation rel, const Rational& bound) {
  return is_upper(rel) ? p - MultiPoly(bound) : MultiPoly(bound) - p;
}

}  // namespace detail

/// Branch-and-bound certification of "p REL bound" on the box. Budget
/// exhaustion yields inconclusive, never proved.
inline BoundCertificate certify_box_bound(const MultiPoly& p, const Box& box, Relation rel, const Rational& bound,
                                          const BoxCertOptions& opt = {}) {
  BoundCertificate cert;
  cert.poly = p;
  cert.box = box;
  cert.relation = rel;
  cert.bound = bound;
  MultiPoly g = detail::claim_gap(p, rel, bound);
  detail::BoxSolver solver(g, box, is_strict(rel), opt, opt.blowup_levels, opt.node_cap);
  detail::NodeResult r = solver.solve(opt.depth_budget);
  cert.status = r.status;
  cert.tree = std::move(r.tree);
  cert.counterexample = r.counterexample;
  cert.nodes = solver.nodes();
  cert.max_depth = solver.max_depth();
  if (r.status == Status::Proved) {
    cert.equality_points = r.equality;
    cert.strict_off_equality = r.strict;
    bool leaf = !cert.tree.contains("split") && !cert.tree.contains("blowup");
    cert.method = leaf ? "bernstein-global" : (r.equality.empty() ? "branch-tree" : "branch-tree+equality-blowup");
  } else if (r.status == Status::Refuted) {
    cert.method = "counterexample";
  }
  return cert;
}

namespace detail {

/// Re-checks a subdivision tree; returns true iff it establishes the claim.
class TreeReplayer {
 public:
  TreeReplayer(const MultiPoly& g, const Box& claim, bool strict, int levels)
      : g_(g), dense_(g, claim.vars()), claim_(claim), strict_(strict), levels_(levels) {}

  bool check(const Json& node, const std::vector<Interval>& ivs, std::string* why) {
    Box b = Box::from_json(node.at("box"));
    if (b.intervals() != ivs) return fail(why, "node box does not match its parent split");
    if (node.contains("max")) {
      auto coeffs = dense_.bernstein(ivs);
      Rational mx = coeffs[0];
      for (const auto& v : coeffs)
        if (mx < v) mx = v;
      if (mx.str() != node.at("max").get<std::string>()) return fail(why, "stored Bernstein bound differs");
      if (mx.sign() > 0 || (strict_ && mx.is_zero())) return fail(why, "leaf bound does not settle the claim");
      return true;
    }
    if (node.contains("split")) {
      std::string var = node.at("split").get<std::string>();
      std::size_t axis = 0;
      while (axis < claim_.vars().size() && claim_.vars()[axis] != var) ++axis;
      if (axis == claim_.vars().size()) return fail(why, "split on unknown variable");
      const auto& kids = node.at("children");
      if (kids.size() != 2) return fail(why, "split needs two children");
      Rational m = midpoint(ivs[axis].lo(), ivs[axis].hi());
      std::vector<Interval> left = ivs, right = ivs;
      left[axis] = Interval(ivs[axis].lo(), m);
      right[axis] = Interval(m, ivs[axis].hi());
      return check(kids[0], left, why) && check(kids[1], right, why);
    }
    if (node.contains("blowup")) {
      if (levels_ <= 0) return fail(why, "blow-up nesting too deep");
      const Json& bj = node.at("blowup");
      Point vp = point_from_json(bj.at("vertex"));
      std::vector<Rational> vertex;
      for (std::size_t k = 0; k < ivs.size(); ++k) {
        const Rational& v = vp.at(claim_.vars()[k]);
        if (!(v == ivs[k].lo() || v == ivs[k].hi())) return fail(why, "blow-up point is not a box vertex");
        vertex.push_back(v);
      }
      if (strict_ && claim_.contains(vp)) return fail(why, "strict claim blown up at an included vertex");
      BlowupSetup s = blowup_setup(g_, claim_.vars(), ivs, vertex);
      int order = bj.at("order").get<int>();
      if (order != s.order || order <= 0) return fail(why, "blow-up order mismatch");
      const auto& charts = bj.at("charts");
      if (charts.size() != s.axes.size()) return fail(why, "blow-up chart count mismatch");
      for (std::size_t k = 0; k < s.axes.size(); ++k) {
        if (charts[k].at("axis").get<std::string>() != s.axes[k]) return fail(why, "chart axis mismatch");
        MultiPoly gk = blowup_chart(s, k);
        Box ub = chart_box(s.axes, k);
        TreeReplayer sub(gk, ub, strict_, levels_ - 1);
        if (!sub.check(charts[k].at("tree"), ub.closure().intervals(), why)) return false;
      }
      return true;
    }
    return fail(why, "unsettled node");
  }

 private:
  static bool fail(std::string* why, const std::string& msg) {
    if (why) *why = msg;
    return false;
  }
  const MultiPoly& g_;
  DensePoly dense_;
  Box claim_;
  bool strict_;
  int levels_;
};

}  // namespace detail

/// Replays a stored bound certificate (JSON form).
inline Status replay_bound(const Json& j, std::string* why = nullptr) {
  MultiPoly p = MultiPoly::parse(j.at("poly").get<std::string>());
  Box box = Box::from_json(j.at("box"));
  Relation rel = relation_from_string(j.at("relation").get<std::string>());
  Rational bound = Rational::parse(j.at("bound").get<std::string>());
  MultiPoly g = detail::claim_gap(p, rel, bound);
  Status claimed = status_from_string(j.at("status").get<std::string>());
  if (claimed == Status::Refuted) {
    const Json& w = j.at("witnesses");
    if (!w.contains("counterexample")) {
      if (why) *why = "refuted without counterexample";
      return Status::Inconclusive;
    }
    Point p0 = point_from_json(w.at("counterexample"));
    Rational v = g.eval(p0);
    bool bad = is_strict(rel) ? v.sign() >= 0 : v.sign() > 0;
    if (box.contains(p0) && bad) return Status::Refuted;
    if (why) *why = "counterexample does not violate the claim";
    return Status::Inconclusive;
  }
  if (claimed != Status::Proved) return Status::Inconclusive;
  detail::TreeReplayer rp(g, box, is_strict(rel), 4);
  return rp.check(j.at("tree"), box.closure().intervals(), why) ? Status::Proved : Status::Inconclusive;
}

}  // namespace h31cert
