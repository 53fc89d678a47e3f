#pragma once

#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "config.hpp"
#include "elliptic.hpp"
#include "walk.hpp"

namespace qwalk {

using ojson = nlohmann::ordered_json;

struct OracleSummary {
  std::string status = "skipped";  // finite | exceeds | resource_limit | error | skipped
  int order = 0;
  int n_max = 0;
  std::string message;
  bool operator==(const OracleSummary&) const = default;
};

struct CriterionEntry {
  std::string name;  // order4, order6, order8, rank4m(k), rank4m2(k)
  bool consulted = false;
  std::optional<Rat> exact;
  std::optional<double> residual;
  bool is_zero = false;
  std::string note;
  bool operator==(const CriterionEntry&) const = default;
};

struct Criterion4mEntry {
  int m = 0;
  double residual = 0, rel_residual = 0, residual_half = 0, rel_residual_half = 0;
  bool fires = false;
  bool operator==(const Criterion4mEntry&) const = default;
};

struct EllipticSummary {
  std::string status = "skipped";  // ok | skipped | error
  std::string message;
  std::vector<double> x;           // branch points, inf for a point at infinity
  double X_y1 = 0, omega1 = 0, omega2 = 0, omega3 = 0, rho = 0;
  double e1 = 0, e2 = 0, e3 = 0, g2 = 0, g3 = 0;
  double period_rel_diff = 0;
  bool d4_zero = false, ordering_ok = true;
  std::optional<long> scan_n;
  double scan_distance = 0;
  std::vector<Criterion4mEntry> criterion_4m;
  bool operator==(const EllipticSummary&) const = default;
};

struct RouteResult {
  std::string name;
  std::string status;  // positive | negative | skipped | error
  int order = 0;       // claimed order when positive
  std::string excludes;  // human-readable exclusion set when negative
  std::string evidence;  // value or residual behind the claim
  bool operator==(const RouteResult&) const = default;
};

struct Inconsistency {
  std::vector<std::string> routes;
  std::string message;
  std::vector<std::string> residuals;
  bool operator==(const Inconsistency&) const = default;
};

struct Consolidated {
  std::string status = "none";  // finite | none | unconfirmed | degenerate | undecided | inconsistent
  int order = 0;
  std::vector<std::string> agreeing_routes;
  std::string message;
  bool operator==(const Consolidated&) const = default;
};

struct Verdict {
  WalkSpec walk;
  std::string digest;
  Config config;
  DegeneracyReport degeneracy;
  OracleSummary oracle;
  std::vector<CriterionEntry> criteria;
  EllipticSummary elliptic;
  std::vector<RouteResult> routes;
  Consolidated consolidated;
  std::vector<Inconsistency> inconsistencies;
  std::vector<std::string> notes;

  bool operator==(const Verdict&) const = default;

  int exit_code() const {
    const std::string& s = consolidated.status;
    if (s == "inconsistent") return 3;
    if (s == "finite") return 0;
    if (s == "degenerate") return 2;
    if (s == "undecided") return 4;
    return 1;
  }
};

// ---------------------------------------------------------------- JSON

namespace detail {
inline ojson str_list(const std::vector<std::string>& v) {
  ojson a = ojson::array();
  for (const auto& s : v) a.push_back(s);
  return a;
}
inline std::vector<std::string> str_list(const ojson& a) {
  std::vector<std::string> v;
  for (const auto& s : a) v.push_back(s.get<std::string>());
  return v;
}
inline double dbl(const ojson& j) { return parse_double(j.get<std::string>()); }
}  // namespace detail

inline ojson to_json(const Verdict& v) {
  ojson j;
  j["walk"] = walk_to_json(v.walk);
  j["digest"] = v.digest;
  j["config"] = config_to_json(v.config);
  const DegeneracyReport& d = v.degeneracy;
  j["degeneracy"] = {{"is_singular", d.is_singular}, {"reducible", d.reducible}, {"genus", d.genus},
                     {"rank_P", d.rank_P}, {"zero_drift", d.zero_drift}};
  j["oracle"] = {{"status", v.oracle.status}, {"order", v.oracle.order}, {"n_max", v.oracle.n_max},
                 {"message", v.oracle.message}};
  ojson crit = ojson::array();
  for (const auto& c : v.criteria) {
    ojson e;
    e["name"] = c.name;
    e["consulted"] = c.consulted;
    e["exact"] = c.exact ? ojson(to_string(*c.exact)) : ojson(nullptr);
    e["residual"] = c.residual ? ojson(fmt_double(*c.residual)) : ojson(nullptr);
    e["is_zero"] = c.is_zero;
    e["note"] = c.note;
    crit.push_back(e);
  }
  j["criteria"] = crit;
  const EllipticSummary& E = v.elliptic;
  ojson el;
  el["status"] = E.status;
  el["message"] = E.message;
  if (E.status == "ok") {
    ojson xs = ojson::array();
    for (double x : E.x) xs.push_back(fmt_double(x));
    el["branch_points"] = xs;
    el["d4_zero"] = E.d4_zero;
    el["ordering_ok"] = E.ordering_ok;
    el["X_y1"] = fmt_double(E.X_y1);
    el["omega1"] = fmt_double(E.omega1);
    el["omega2"] = fmt_double(E.omega2);
    el["omega3"] = fmt_double(E.omega3);
    el["rho"] = fmt_double(E.rho);
    el["e"] = {fmt_double(E.e1), fmt_double(E.e2), fmt_double(E.e3)};
    el["g2"] = fmt_double(E.g2);
    el["g3"] = fmt_double(E.g3);
    el["period_rel_diff"] = fmt_double(E.period_rel_diff);
    el["scan"] = E.scan_n ? ojson{{"n", *E.scan_n}, {"distance", fmt_double(E.scan_distance)}} : ojson(nullptr);
    ojson c4 = ojson::array();
    for (const auto& c : E.criterion_4m)
      c4.push_back({{"m", c.m},
                    {"residual", fmt_double(c.residual)},
                    {"rel_residual", fmt_double(c.rel_residual)},
                    {"residual_half", fmt_double(c.residual_half)},
                    {"rel_residual_half", fmt_double(c.rel_residual_half)},
                    {"fires", c.fires}});
    el["criterion_4m"] = c4;
  }
  j["elliptic"] = el;
  ojson routes = ojson::array();
  for (const auto& r : v.routes)
    routes.push_back({{"name", r.name}, {"status", r.status}, {"order", r.order}, {"excludes", r.excludes},
                      {"evidence", r.evidence}});
  j["routes"] = routes;
  j["consolidated"] = {{"status", v.consolidated.status},
                       {"order", v.consolidated.order},
                       {"agreeing_routes", detail::str_list(v.consolidated.agreeing_routes)},
                       {"message", v.consolidated.message}};
  ojson inc = ojson::array();
  for (const auto& i : v.inconsistencies)
    inc.push_back({{"routes", detail::str_list(i.routes)},
                   {"message", i.message},
                   {"residuals", detail::str_list(i.residuals)}});
  j["inconsistencies"] = inc;
  j["notes"] = detail::str_list(v.notes);
  return j;
}

inline Verdict verdict_from_json(const ojson& j) {
  try {
    Verdict v;
    v.walk = parse_walk(nlohmann::json::parse(j.at("walk").dump()));
    v.digest = j.at("digest").get<std::string>();
    v.config = config_from_json(j.at("config"));
    const ojson& d = j.at("degeneracy");
    v.degeneracy = {d.at("is_singular").get<bool>(), d.at("reducible").get<bool>(), d.at("genus").get<int>(),
                    d.at("rank_P").get<int>(), d.at("zero_drift").get<bool>()};
    const ojson& o = j.at("oracle");
    v.oracle = {o.at("status").get<std::string>(), o.at("order").get<int>(), o.at("n_max").get<int>(),
                o.at("message").get<std::string>()};
    for (const ojson& e : j.at("criteria")) {
      CriterionEntry c;
      c.name = e.at("name").get<std::string>();
      c.consulted = e.at("consulted").get<bool>();
      if (!e.at("exact").is_null()) c.exact = parse_rational(e.at("exact").get<std::string>());
      if (!e.at("residual").is_null()) c.residual = detail::dbl(e.at("residual"));
      c.is_zero = e.at("is_zero").get<bool>();
      c.note = e.at("note").get<std::string>();
      v.criteria.push_back(c);
    }
    const ojson& el = j.at("elliptic");
    EllipticSummary& E = v.elliptic;
    E.status = el.at("status").get<std::string>();
    E.message = el.at("message").get<std::string>();
    if (E.status == "ok") {
      for (const ojson& x : el.at("branch_points")) E.x.push_back(detail::dbl(x));
      E.d4_zero = el.at("d4_zero").get<bool>();
      E.ordering_ok = el.at("ordering_ok").get<bool>();
      E.X_y1 = detail::dbl(el.at("X_y1"));
      E.omega1 = detail::dbl(el.at("omega1"));
      E.omega2 = detail::dbl(el.at("omega2"));
      E.omega3 = detail::dbl(el.at("omega3"));
      E.rho = detail::dbl(el.at("rho"));
      E.e1 = detail::dbl(el.at("e").at(0));
      E.e2 = detail::dbl(el.at("e").at(1));
      E.e3 = detail::dbl(el.at("e").at(2));
      E.g2 = detail::dbl(el.at("g2"));
      E.g3 = detail::dbl(el.at("g3"));
      E.period_rel_diff = detail::dbl(el.at("period_rel_diff"));
      if (!el.at("scan").is_null()) {
        E.scan_n = el.at("scan").at("n").get<long>();
        E.scan_distance = detail::dbl(el.at("scan").at("distance"));
      }
      for (const ojson& c : el.at("criterion_4m"))
        E.criterion_4m.push_back({c.at("m").get<int>(), detail::dbl(c.at("residual")),
                                  detail::dbl(c.at("rel_residual")), detail::dbl(c.at("residual_half")),
                                  detail::dbl(c.at("rel_residual_half")), c.at("fires").get<bool>()});
    }
    for (const ojson& r : j.at("routes"))
      v.routes.push_back({r.at("name").get<std::string>(), r.at("status").get<std::string>(),
                          r.at("order").get<int>(), r.at("excludes").get<std::string>(),
                          r.at("evidence").get<std::string>()});
    const ojson& c = j.at("consolidated");
    v.consolidated = {c.at("status").get<std::string>(), c.at("order").get<int>(),
                      detail::str_list(c.at("agreeing_routes")), c.at("message").get<std::string>()};
    for (const ojson& i : j.at("inconsistencies"))
      v.inconsistencies.push_back({detail::str_list(i.at("routes")), i.at("message").get<std::string>(),
                                   detail::str_list(i.at("residuals"))});
    v.notes = detail::str_list(j.at("notes"));
    return v;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed verdict document: ") + e.what());
  }
}

inline std::string report_json(const Verdict& v) { return to_json(v).dump(2) + "\n"; }

inline std::string report_text(const Verdict& v) {
  std::ostringstream o;
  o << "walk: " << v.digest << "\n";
  const DegeneracyReport& d = v.degeneracy;
  o << "genus " << d.genus << ", rank(P) " << d.rank_P << (d.is_singular ? ", singular" : "")
    << (d.reducible ? ", reducible" : "") << (d.zero_drift ? ", zero drift" : "") << "\n";
  o << "oracle: " << v.oracle.status;
  if (v.oracle.status == "finite") o << " (order " << v.oracle.order << ")";
  if (v.oracle.status == "exceeds") o << " (no order <= " << 2 * v.oracle.n_max << ")";
  o << "\n";
  for (const auto& c : v.criteria) {
    if (!c.consulted) continue;
    o << "  " << c.name << " = " << (c.exact ? to_string(*c.exact) : fmt_double(c.residual.value_or(0)))
      << (c.is_zero ? "  [zero]" : "") << "\n";
  }
  if (v.elliptic.status == "ok") {
    o << "elliptic: omega2 " << fmt_double(v.elliptic.omega2) << ", omega3 " << fmt_double(v.elliptic.omega3)
      << ", omega3/omega2 " << fmt_double(v.elliptic.rho);
    if (v.elliptic.scan_n) o << ", scan n = " << *v.elliptic.scan_n;
    o << "\n";
  } else if (v.elliptic.status == "error") {
    o << "elliptic: " << v.elliptic.message << "\n";
  }
  o << "routes:";
  for (const auto& r : v.routes) {
    o << " " << r.name << "=" << r.status;
    if (r.status == "positive") o << "(" << r.order << ")";
  }
  o << "\n";
  o << "verdict: " << v.consolidated.message << "\n";
  for (const auto& i : v.inconsistencies) o << "inconsistency: " << i.message << "\n";
  for (const auto& n : v.notes) o << "note: " << n << "\n";
  return o.str();
}

}  // namespace qwalk
