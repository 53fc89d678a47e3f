#pragma once

#include <algorithm>
#include <atomic>
#include <optional>
#include <regex>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "criteria.hpp"
#include "walk.hpp"

namespace qwalk {

// "3/4", "-2", "0.125" or "1e-3" as an exact rational
inline Rat parse_exact_number(const std::string& s) {
  static const std::regex dec(R"(^([+-]?)(\d*)(?:\.(\d*))?(?:[eE]([+-]?\d+))?$)");
  if (s.find('/') != std::string::npos || s.find_first_of(".eE") == std::string::npos) return parse_rational(s);
  std::smatch m;
  if (!std::regex_match(s, m, dec) || (m[2].length() == 0 && m[3].length() == 0))
    throw ParseError("malformed number \"" + s + "\"");
  std::string digits = m[2].str() + m[3].str();
  long exp = (m[4].matched ? std::stol(m[4].str()) : 0) - static_cast<long>(m[3].length());
  Rat r(mpz_class(digits.empty() ? "0" : digits, 10));
  mpz_class p;
  mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(exp)));
  if (exp >= 0) r *= p; else r /= p;
  r.canonicalize();
  return m[1].str() == "-" ? Rat(-r) : r;
}

// The rational with the smallest denominator in [lo, hi].
inline Rat simplest_rational(Rat lo, Rat hi) {
  if (lo > hi) std::swap(lo, hi);
  if (sgn(lo) <= 0 && sgn(hi) >= 0) return 0;
  if (sgn(hi) < 0) return -simplest_rational(-hi, -lo);
  mpz_class c;
  mpz_cdiv_q(c.get_mpz_t(), lo.get_num_mpz_t(), lo.get_den_mpz_t());
  if (Rat(c) <= hi) return Rat(c);
  mpz_class f;
  mpz_fdiv_q(f.get_mpz_t(), lo.get_num_mpz_t(), lo.get_den_mpz_t());
  Rat fl(f);
  Rat r = fl + 1 / simplest_rational(1 / (hi - fl), 1 / (lo - fl));
  r.canonicalize();
  return r;
}

struct VarySpec {
  int i = 1, j = 0;
  Rat lo, hi;
  int n = 2;  // grid points, endpoints included
  std::string key() const { return key_of(i, j); }
  Rat at(int k) const { return n == 1 ? lo : Rat(lo + (hi - lo) * k / (n - 1)); }
  bool operator==(const VarySpec&) const = default;
};

// "p10=0..1:50", "p10=1/8..3/8:11"
inline VarySpec parse_vary(const std::string& s) {
  static const std::regex re(R"(^p(-1|0|1)(-1|0|1)=([^.:][^:]*?)\.\.([^:]+):(\d+)$)");
  std::smatch m;
  if (!std::regex_match(s, m, re)) throw ParseError("malformed --vary \"" + s + "\" (expected pij=lo..hi:n)");
  VarySpec v;
  v.i = std::stoi(m[1].str());
  v.j = std::stoi(m[2].str());
  v.lo = parse_exact_number(m[3].str());
  v.hi = parse_exact_number(m[4].str());
  v.n = std::stoi(m[5].str());
  if (v.n < 1 || v.n > 100000) throw ParseError("grid size out of range in \"" + s + "\"");
  return v;
}

inline std::pair<int, int> parse_key(const std::string& k) {
  static const std::regex re("^p(-1|0|1)(-1|0|1)$");
  std::smatch m;
  if (!std::regex_match(k, m, re)) throw ParseError("malformed probability key \"" + k + "\"");
  return {std::stoi(m[1].str()), std::stoi(m[2].str())};
}

struct Family {
  WalkSpec base;
  std::vector<VarySpec> vary;  // one or two parameters
  int slack_i = 0, slack_j = 0;
  std::vector<CriterionKind> criteria{CriterionKind::order4, CriterionKind::order6, CriterionKind::order8};

  std::string slack_key() const { return key_of(slack_i, slack_j); }

  // The walk at the given parameter values, or the reason it leaves the simplex.
  std::pair<std::optional<WalkSpec>, std::string> walk_at(const std::vector<Rat>& params) const {
    WalkSpec w = base;
    for (std::size_t k = 0; k < vary.size(); ++k) w(vary[k].i, vary[k].j) = params[k];
    w(slack_i, slack_j) = 0;
    w(slack_i, slack_j) = 1 - w.total();
    for (int i = -1; i <= 1; ++i)
      for (int j = -1; j <= 1; ++j)
        if (sgn(w(i, j)) < 0) return {std::nullopt, "negative " + key_of(i, j)};
    return {w, ""};
  }
};

inline std::vector<CriterionKind> parse_criterion_list(const std::string& s) {
  if (s == "all") return {CriterionKind::order4, CriterionKind::order6, CriterionKind::order8};
  if (s == "order4") return {CriterionKind::order4};
  if (s == "order6") return {CriterionKind::order6};
  if (s == "order8") return {CriterionKind::order8};
  throw ParseError("criterion must be order4, order6, order8 or all");
}

inline Rat criterion_exact(CriterionKind k, const WalkSpec& w) {
  Mat3 P = build_matrix(w);
  switch (k) {
    case CriterionKind::order4: return det3(P);
    case CriterionKind::order6: return det_q(order6_matrix(cofactors(P)));
    case CriterionKind::order8: return det_q(order8_polys(cofactors(P)).M);
    default: throw UnsupportedConfiguration("scan supports the exact criteria only");
  }
}

struct ScanPoint {
  std::vector<Rat> params;
  std::string digest;
  std::string skip_reason;         // empty when the point is valid
  std::vector<Rat> values;         // one per family criterion
  bool operator==(const ScanPoint&) const = default;
};

struct Crossing {
  std::string criterion;
  std::optional<Rat> fixed;        // value of the second parameter, if any
  Rat lo, hi;                      // final bracket on the first parameter
  bool exact_grid_zero = false;    // the criterion vanishes at a grid point (lo == hi)
  std::optional<Rat> snapped;      // simplest rational in the bracket
  bool snapped_zero = false;       // criterion is exactly 0 at the snapped value
  double parameter() const { return Rat((lo + hi) / 2).get_d(); }
};

struct ScanResult {
  Family family;
  std::vector<ScanPoint> points;   // row-major: first parameter outer, second inner
  std::vector<bool> identically_zero;
  std::vector<Crossing> crossings;
};

struct ScanOptions {
  Rat bisect_width = Rat(1, 1000000000000L);
  unsigned threads = 0;  // 0: hardware concurrency
};

namespace detail {
template <class F>
void parallel_for(std::size_t n, unsigned threads, F f) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(n, 1)));
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) f(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t)
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) f(i);
    });
  for (auto& th : pool) th.join();
}
}  // namespace detail

// Bisection of criterion k along the first parameter between a and b (values of opposite sign).
inline Crossing bisect_crossing(const Family& fam, CriterionKind k, const std::vector<Rat>& at_a, Rat a, Rat b,
                                const ScanOptions& opt) {
  auto value = [&](const Rat& t) {
    std::vector<Rat> p = at_a;
    p[0] = t;
    auto [w, why] = fam.walk_at(p);
    if (!w) throw UnsupportedConfiguration("bisection left the simplex: " + why);
    return criterion_exact(k, *w);
  };
  Crossing c;
  c.criterion = kind_name(k);
  if (fam.vary.size() > 1) c.fixed = at_a[1];
  int sa = sgn(value(a));
  while (abs(Rat(b - a)) > opt.bisect_width) {
    Rat m = (a + b) / 2;
    int sm = sgn(value(m));
    if (sm == 0) {
      a = b = m;
      break;
    }
    if (sm == sa) a = m; else b = m;
  }
  c.lo = std::min(a, b);
  c.hi = std::max(a, b);
  c.snapped = simplest_rational(c.lo, c.hi);
  c.snapped_zero = is_zero(value(*c.snapped));
  return c;
}

inline ScanResult scan(const Family& fam, const ScanOptions& opt = {}) {
  if (fam.vary.empty() || fam.vary.size() > 2) throw ParseError("a family varies one or two parameters");
  for (const auto& v : fam.vary)
    if (v.i == fam.slack_i && v.j == fam.slack_j) throw ParseError("the slack entry cannot be varied");
  ScanResult R;
  R.family = fam;
  const int n1 = fam.vary[0].n, n2 = fam.vary.size() > 1 ? fam.vary[1].n : 1;
  R.points.resize(static_cast<std::size_t>(n1) * n2);
  detail::parallel_for(R.points.size(), opt.threads, [&](std::size_t idx) {
    int a = static_cast<int>(idx / n2), b = static_cast<int>(idx % n2);
    ScanPoint& p = R.points[idx];
    p.params.push_back(fam.vary[0].at(a));
    if (fam.vary.size() > 1) p.params.push_back(fam.vary[1].at(b));
    auto [w, why] = fam.walk_at(p.params);
    if (!w) {
      p.skip_reason = why;
      return;
    }
    p.digest = walk_digest(*w);
    for (CriterionKind k : fam.criteria) p.values.push_back(criterion_exact(k, *w));
  });

  const std::size_t nc = fam.criteria.size();
  R.identically_zero.assign(nc, false);
  for (std::size_t c = 0; c < nc; ++c) {
    bool any = false, all_zero = true;
    for (const auto& p : R.points)
      if (p.skip_reason.empty()) {
        any = true;
        all_zero = all_zero && is_zero(p.values[c]);
      }
    R.identically_zero[c] = any && all_zero;
  }

  // sign changes along the first parameter, for each value of the second
  struct Job {
    std::size_t c;
    std::size_t i0, i1;
  };
  std::vector<Job> jobs;
  for (std::size_t c = 0; c < nc; ++c) {
    if (R.identically_zero[c]) continue;
    for (int b = 0; b < n2; ++b)
      for (int a = 0; a + 1 < n1; ++a) {
        std::size_t i0 = static_cast<std::size_t>(a) * n2 + b, i1 = static_cast<std::size_t>(a + 1) * n2 + b;
        const ScanPoint &p0 = R.points[i0], &p1 = R.points[i1];
        if (!p0.skip_reason.empty()) continue;
        if (is_zero(p0.values[c])) {
          jobs.push_back({c, i0, i0});
          continue;
        }
        if (!p1.skip_reason.empty()) continue;
        if (sgn(p0.values[c]) * sgn(p1.values[c]) < 0) jobs.push_back({c, i0, i1});
      }
    // a zero at the last grid point of a row
    for (int b = 0; b < n2; ++b) {
      std::size_t i = static_cast<std::size_t>(n1 - 1) * n2 + b;
      if (R.points[i].skip_reason.empty() && is_zero(R.points[i].values[c])) jobs.push_back({c, i, i});
    }
  }
  R.crossings.resize(jobs.size());
  detail::parallel_for(jobs.size(), opt.threads, [&](std::size_t t) {
    const Job& j = jobs[t];
    const ScanPoint &p0 = R.points[j.i0], &p1 = R.points[j.i1];
    if (j.i0 == j.i1) {
      Crossing c;
      c.criterion = kind_name(fam.criteria[j.c]);
      if (fam.vary.size() > 1) c.fixed = p0.params[1];
      c.lo = c.hi = p0.params[0];
      c.exact_grid_zero = true;
      c.snapped = p0.params[0];
      c.snapped_zero = true;
      R.crossings[t] = c;
    } else {
      R.crossings[t] = bisect_crossing(fam, fam.criteria[j.c], p0.params, p0.params[0], p1.params[0], opt);
    }
  });
  return R;
}

inline std::string scan_csv(const ScanResult& R) {
  std::ostringstream o;
  for (const auto& v : R.family.vary) o << v.key() << ",";
  o << "status";
  for (CriterionKind k : R.family.criteria) o << "," << kind_name(k);
  o << "\n";
  for (const auto& p : R.points) {
    for (const auto& x : p.params) o << to_string(x) << ",";
    o << (p.skip_reason.empty() ? "ok" : "skip: " + p.skip_reason);
    for (std::size_t c = 0; c < R.family.criteria.size(); ++c)
      o << "," << (p.skip_reason.empty() ? to_string(p.values[c]) : "");
    o << "\n";
  }
  return o.str();
}

inline nlohmann::ordered_json scan_json(const ScanResult& R) {
  using oj = nlohmann::ordered_json;
  oj j;
  oj fam;
  fam["base"] = walk_to_json(R.family.base);
  oj vs = oj::array();
  for (const auto& v : R.family.vary)
    vs.push_back({{"key", v.key()}, {"lo", to_string(v.lo)}, {"hi", to_string(v.hi)}, {"n", v.n}});
  fam["vary"] = vs;
  fam["slack"] = R.family.slack_key();
  oj cs = oj::array();
  for (CriterionKind k : R.family.criteria) cs.push_back(kind_name(k));
  fam["criteria"] = cs;
  j["family"] = fam;
  oj cols = oj::object();
  for (std::size_t c = 0; c < R.family.criteria.size(); ++c)
    cols[kind_name(R.family.criteria[c])] = {{"identically_zero", static_cast<bool>(R.identically_zero[c])}};
  j["columns"] = cols;
  oj pts = oj::array();
  for (const auto& p : R.points) {
    oj e;
    oj ps = oj::array();
    for (const auto& x : p.params) ps.push_back(to_string(x));
    e["params"] = ps;
    if (!p.skip_reason.empty()) {
      e["skip"] = p.skip_reason;
    } else {
      e["digest"] = p.digest;
      oj vals = oj::object();
      for (std::size_t c = 0; c < R.family.criteria.size(); ++c)
        vals[kind_name(R.family.criteria[c])] = to_string(p.values[c]);
      e["values"] = vals;
    }
    pts.push_back(e);
  }
  j["points"] = pts;
  oj xs = oj::array();
  for (const auto& c : R.crossings) {
    oj e;
    e["criterion"] = c.criterion;
    e["fixed"] = c.fixed ? oj(to_string(*c.fixed)) : oj(nullptr);
    e["parameter"] = fmt_double(c.parameter());
    e["bracket"] = {to_string(c.lo), to_string(c.hi)};
    e["exact_grid_zero"] = c.exact_grid_zero;
    e["snapped"] = c.snapped ? oj(to_string(*c.snapped)) : oj(nullptr);
    e["snapped_zero"] = c.snapped_zero;
    xs.push_back(e);
  }
  j["crossings"] = xs;
  return j;
}

}  // namespace qwalk
