#pragma once

#include <functional>
#include <set>
#include <string>
#include <vector>

#include "criteria.hpp"
#include "elliptic.hpp"
#include "group.hpp"
#include "verdict.hpp"

namespace qwalk {

namespace detail {

struct Claim {
  RouteResult r;
  std::function<bool(int)> excluded = [](int) { return false; };

  bool allows(int order) const {
    if (r.status == "positive") return r.order == order;
    if (r.status == "negative") return !excluded(order);
    return true;
  }
};

inline Claim positive(std::string name, int order, std::string evidence) {
  return {{std::move(name), "positive", order, "", std::move(evidence)}};
}
inline Claim negative(std::string name, std::string excludes, std::string evidence, std::function<bool(int)> ex) {
  return {{std::move(name), "negative", 0, std::move(excludes), std::move(evidence)}, std::move(ex)};
}
inline Claim skipped(std::string name, std::string why, bool error = false) {
  return {{std::move(name), error ? "error" : "skipped", 0, "", std::move(why)}};
}

inline CriterionEntry exact_entry(const CriterionValue& c) {
  CriterionEntry e;
  e.name = c.name();
  e.consulted = true;
  e.exact = c.exact;
  e.is_zero = c.is_zero;
  return e;
}

// Claims of the rank tests: the smallest k that fires fixes the order, the others exclude theirs.
inline Claim rank_claim(const std::string& name, const std::vector<CriterionEntry>& entries,
                        const std::vector<int>& ks, std::function<int(int)> order_of) {
  if (entries.empty()) return skipped(name, "no admissible k");
  std::set<int> excl;
  std::string list;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (!entries[i].note.empty()) return skipped(name, entries[i].note, true);
    if (entries[i].is_zero) return positive(name, order_of(ks[i]), "residual " + fmt_double(*entries[i].residual));
    excl.insert(order_of(ks[i]));
    list += (list.empty() ? "" : ",") + std::to_string(order_of(ks[i]));
  }
  return negative(name, "orders {" + list + "}", "all residuals above tolerance",
                  [excl](int o) { return excl.count(o) > 0; });
}

}  // namespace detail

// Gated pipeline: validation, degeneracy, oracle, determinant criteria, rank tests, elliptic routes,
// then a consolidated order when at least two independent routes agree and none contradicts it.
inline Verdict classify(const WalkSpec& w, const Config& cfg = Config{}) {
  using namespace detail;
  check_walk(w);
  Verdict v;
  v.walk = w;
  v.digest = walk_digest(w);
  v.config = cfg;
  v.degeneracy = degeneracy(w);
  const DegeneracyReport& dr = v.degeneracy;
  if (dr.is_singular || dr.reducible) {
    v.consolidated.status = "degenerate";
    v.consolidated.message = dr.is_singular ? "singular walk: the criteria do not apply"
                                            : "reducible kernel: the group is not defined";
    return v;
  }
  if (dr.genus == 0) v.notes.push_back("genus 0: outside the scope of the elliptic routes and rank tests");
  if (dr.zero_drift) v.notes.push_back("zero drift");

  std::vector<Claim> claims;
  const int n_max = cfg.n_max();
  const int max_order = 2 * n_max;

  // exact oracle
  v.oracle.n_max = n_max;
  try {
    OracleResult o = group_order(w, n_max, cfg.degree_cap,
                                 cfg.oracle_mode == "exact" ? OracleMode::exact : OracleMode::filtered);
    if (o.finite) {
      v.oracle.status = "finite";
      v.oracle.order = o.order();
      claims.push_back(positive("oracle", o.order(), "delta^" + std::to_string(o.n) + "(x) = x exactly"));
    } else {
      v.oracle.status = "exceeds";
      claims.push_back(negative("oracle", "orders <= " + std::to_string(max_order),
                                "delta^n(x) != x for n <= " + std::to_string(n_max),
                                [max_order](int o) { return o <= max_order; }));
    }
  } catch (const ResourceLimit& e) {
    v.oracle.status = "resource_limit";
    v.oracle.message = e.what();
    claims.push_back(skipped("oracle", e.what(), true));
  } catch (const InconsistencyError& e) {
    v.oracle.status = "error";
    v.oracle.message = e.what();
    claims.push_back(skipped("oracle", e.what(), true));
    v.inconsistencies.push_back({{"oracle"}, e.what(), {}});
  }

  // determinant criteria; order 6 and 8 only when det(P) != 0
  KernelData k = kernel_data(w);
  CriterionValue c4 = order4_criterion(k.P);
  v.criteria.push_back(exact_entry(c4));
  auto det_claim = [&](const std::string& name, const CriterionValue& c, int order) {
    std::string ev = "det = " + to_string(*c.exact);
    return c.is_zero ? positive(name, order, ev)
                     : negative(name, "order " + std::to_string(order), ev, [order](int o) { return o == order; });
  };
  claims.push_back(det_claim("det4", c4, 4));
  for (int target : {6, 8}) {
    std::string name = target == 6 ? "order6" : "order8";
    std::string route = target == 6 ? "det6" : "det8";
    if (c4.is_zero) {
      v.criteria.push_back({name, false, std::nullopt, std::nullopt, false, "not consulted: det(P) = 0"});
      continue;
    }
    if (target == 6 && is_zero(order6_side_determinant(k.cof))) {
      v.criteria.push_back({name, false, std::nullopt, std::nullopt, false,
                            "not consulted: Delta13 Delta33 - Delta23^2 = 0"});
      v.notes.push_back("degenerate case Delta13 Delta33 - Delta23^2 = 0 for the order-6 determinant");
      claims.push_back(skipped(route, "excluded degenerate case"));
      continue;
    }
    try {
      CriterionValue c = target == 6 ? order6_criterion(k.cof) : order8_criterion(k.cof);
      v.criteria.push_back(exact_entry(c));
      claims.push_back(det_claim(route, c, target));
    } catch (const InconsistencyError& e) {
      v.criteria.push_back({name, true, std::nullopt, std::nullopt, false, e.what()});
      v.inconsistencies.push_back({{route}, e.what(), {}});
      claims.push_back(skipped(route, e.what(), true));
    }
  }

  const bool numeric_routes = dr.genus == 1 && !c4.is_zero;

  // rank tests for the 4m (m = 2k) and 4k+2 families
  if (numeric_routes) {
    WalkGroup g(w, cfg.degree_cap);
    std::vector<CriterionEntry> e4m, e4m2;
    std::vector<int> k4m, k4m2;
    for (int kk = 1; kk <= cfg.rank_k_max; ++kk) {
      for (bool two : {false, true}) {
        int order = two ? 4 * kk + 2 : 8 * kk;
        if (order > max_order) continue;
        CriterionEntry e;
        e.name = two ? "rank4m2(" + std::to_string(kk) + ")" : "rank4m(" + std::to_string(kk) + ")";
        e.consulted = true;
        try {
          CriterionValue c = two ? rank_test_4m2(g, kk, cfg.samples, cfg.rank_tol, cfg.seed)
                                 : rank_test_4m(g, kk, cfg.samples, cfg.rank_tol, cfg.seed);
          e.residual = c.residual;
          e.is_zero = c.is_zero;
        } catch (const Error& ex) {
          e.note = ex.what();
        }
        v.criteria.push_back(e);
        (two ? e4m2 : e4m).push_back(e);
        (two ? k4m2 : k4m).push_back(kk);
      }
    }
    claims.push_back(rank_claim("rank4m", e4m, k4m, [](int kk) { return 8 * kk; }));
    claims.push_back(rank_claim("rank4m2", e4m2, k4m2, [](int kk) { return 4 * kk + 2; }));
  }

  // elliptic routes
  if (dr.genus == 1) {
    try {
      EllipticOptions eo;
      eo.period_tol = cfg.period_tol;
      EllipticData E = elliptic_data(w, eo);
      EllipticSummary& S = v.elliptic;
      S.status = "ok";
      S.x.assign(E.x.begin(), E.x.end());
      S.d4_zero = E.d4_zero;
      S.ordering_ok = E.ordering_ok;
      S.X_y1 = E.X_y1;
      S.omega1 = E.omega1;
      S.omega2 = E.omega2;
      S.omega3 = E.omega3;
      S.rho = E.rho();
      S.e1 = E.inv.e1;
      S.e2 = E.inv.e2;
      S.e3 = E.inv.e3;
      S.g2 = E.inv.g2;
      S.g3 = E.inv.g3;
      S.period_rel_diff = E.period_rel_diff;
      if (!E.ordering_ok) v.notes.push_back("branch points violate x1 <= x2, [x1,x2] in [-1,1], 0 <= x2 <= x3");
      auto hit = finiteness_scan(E, cfg.q_max, cfg.scan_tol);
      const long q_max = cfg.q_max;
      if (hit) {
        S.scan_n = hit->n;
        S.scan_distance = hit->distance;
        claims.push_back(positive("elliptic_scan", static_cast<int>(2 * hit->n),
                                  "|n omega3/omega2 - k| = " + fmt_double(hit->distance)));
      } else {
        claims.push_back(negative("elliptic_scan", "orders <= " + std::to_string(2 * q_max),
                                  "omega3/omega2 = " + fmt_double(E.rho()),
                                  [q_max](int o) { return o <= 2 * q_max; }));
      }
      if (numeric_routes) {
        int m_fire = 0;
        for (int m = 1; m <= cfg.m_max; ++m) {
          Criterion4m c = criterion_4m(E, m);
          bool fires = c.rel_residual < cfg.criterion_tol;
          S.criterion_4m.push_back({m, c.residual, c.rel_residual, c.residual_half, c.rel_residual_half, fires});
          if (fires && !m_fire) m_fire = m;
        }
        const int m_max = cfg.m_max;
        if (m_fire)
          claims.push_back(positive("wp_4m", 4 * m_fire,
                                    "|wp(m omega3) - e1|/|e1| = " +
                                        fmt_double(S.criterion_4m[m_fire - 1].rel_residual)));
        else
          claims.push_back(negative("wp_4m", "orders 4m, m <= " + std::to_string(m_max), "no m fires",
                                    [m_max](int o) { return o % 4 == 0 && o / 4 <= m_max; }));
      }
    } catch (const NumericHealth& e) {
      v.elliptic.status = "error";
      v.elliptic.message = e.what();
      claims.push_back(skipped("elliptic_scan", e.what(), true));
    } catch (const Error& e) {
      v.elliptic.status = "error";
      v.elliptic.message = e.what();
      claims.push_back(skipped("elliptic_scan", e.what()));
    }
  }

  for (const Claim& c : claims) v.routes.push_back(c.r);

  // consolidation
  std::set<int> positives;
  for (const Claim& c : claims)
    if (c.r.status == "positive") positives.insert(c.r.order);
  for (std::size_t i = 0; i < claims.size(); ++i) {
    if (claims[i].r.status != "positive") continue;
    for (std::size_t j = 0; j < claims.size(); ++j) {
      if (i == j || claims[j].allows(claims[i].r.order)) continue;
      if (claims[j].r.status == "positive" && j < i) continue;  // reported once per pair
      const RouteResult &a = claims[i].r, &b = claims[j].r;
      std::string msg = a.name + " claims order " + std::to_string(a.order) + " but " + b.name +
                        (b.status == "positive" ? " claims order " + std::to_string(b.order)
                                                : " excludes " + b.excludes);
      v.inconsistencies.push_back({{a.name, b.name}, msg, {a.evidence, b.evidence}});
    }
  }
  Consolidated& C = v.consolidated;
  for (int order : positives) {
    std::vector<std::string> who;
    bool all_allow = true;
    for (const Claim& c : claims) {
      if (c.r.status == "positive" && c.r.order == order) who.push_back(c.r.name);
      all_allow = all_allow && c.allows(order);
    }
    if (who.size() >= 2 && all_allow) {
      C.order = order;
      C.agreeing_routes = who;
      break;
    }
  }
  if (!v.inconsistencies.empty()) {
    C.status = "inconsistent";
    C.order = 0;
    C.agreeing_routes.clear();
    C.message = "routes disagree; no order asserted";
  } else if (C.order) {
    C.status = "finite";
    std::string list;
    for (const auto& s : C.agreeing_routes) list += (list.empty() ? "" : ", ") + s;
    C.message = "finite group of order " + std::to_string(C.order) + " (" + list + ")";
  } else if (v.oracle.status == "resource_limit") {
    C.status = "undecided";
    C.message = "undecided: oracle resource cap reached (" + v.oracle.message + ")";
  } else if (!positives.empty()) {
    C.status = "unconfirmed";
    C.order = *positives.begin();
    C.message = "candidate order " + std::to_string(C.order) + " from a single route, not confirmed";
  } else {
    C.status = "none";
    C.message = "no finite order detected (n_max=" + std::to_string(n_max) +
                (dr.genus == 1 ? ", q_max=" + std::to_string(cfg.q_max) : "") + ")";
  }
  return v;
}

}  // namespace qwalk
