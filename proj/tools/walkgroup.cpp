#include <cmath>
#include <fstream>
#include <iostream>
#include <iterator>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include <qwalk/classify.hpp>
#include <qwalk/scan.hpp>

using namespace qwalk;

namespace {

std::string read_input(const std::string& path) {
  if (path == "-") return {std::istreambuf_iterator<char>(std::cin), {}};
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read " + path);
  return {std::istreambuf_iterator<char>(in), {}};
}

ojson num(double v) { return fmt_double(v); }

std::pair<int, int> parse_m_range(const std::string& s) {
  auto dots = s.find("..");
  int lo = std::stoi(s.substr(0, dots));
  int hi = dots == std::string::npos ? lo : std::stoi(s.substr(dots + 2));
  if (lo < 1 || hi > 8 || lo > hi) throw ParseError("--m must lie in 1..8");
  return {lo, hi};
}

ojson elliptic_report(const WalkSpec& w, const Config& cfg, int m_lo, int m_hi) {
  EllipticOptions eo;
  eo.period_tol = cfg.period_tol;
  EllipticData E = elliptic_data(w, eo);
  ojson j;
  j["walk"] = walk_digest(w);
  ojson xs = ojson::array();
  for (double x : E.x) xs.push_back(num(x));
  j["branch_points"] = xs;
  j["d4_zero"] = E.d4_zero;
  j["ordering_ok"] = E.ordering_ok;
  j["y1"] = num(E.y1);
  j["X_y1"] = num(E.X_y1);
  j["e"] = {num(E.inv.e1), num(E.inv.e2), num(E.inv.e3)};
  j["g2"] = to_string(E.g2_exact);
  j["g3"] = to_string(E.g3_exact);
  j["omega1"] = num(E.omega1);
  j["omega2"] = num(E.omega2);
  j["omega3"] = num(E.omega3);
  j["omega_carlson"] = {num(E.omega_carlson[0]), num(E.omega_carlson[1]), num(E.omega_carlson[2])};
  j["omega_quadrature"] = {num(E.omega_quadrature[0]), num(E.omega_quadrature[1]), num(E.omega_quadrature[2])};
  j["period_rel_diff"] = num(E.period_rel_diff);
  j["rho"] = num(E.rho());
  j["homography"] = {{"p", num(E.p)}, {"q", num(E.q)}, {"r", num(E.r)}, {"Q", num(E.Q)}, {"R", num(E.R)},
                     {"alpha", num(E.alpha)}, {"beta", num(E.beta)}};
  j["t_star"] = num(E.t_star);
  auto hit = finiteness_scan(E, cfg.q_max, cfg.scan_tol);
  j["scan"] = hit ? ojson{{"n", hit->n}, {"k", hit->k}, {"order", 2 * hit->n}, {"distance", num(hit->distance)}}
                  : ojson{{"n", nullptr}, {"q_max", cfg.q_max}};
  ojson cm = ojson::array();
  for (int m = m_lo; m <= m_hi; ++m) {
    Criterion4m c = criterion_4m(E, m);
    cm.push_back({{"m", m},
                  {"residual", num(c.residual)},
                  {"rel_residual", num(c.rel_residual)},
                  {"residual_half", num(c.residual_half)},
                  {"rel_residual_half", num(c.rel_residual_half)},
                  {"fires", std::abs(c.rel_residual) < cfg.criterion_tol}});
  }
  j["criterion_4m"] = cm;
  return j;
}

ojson criteria_report(const WalkSpec& w, int which) {
  Mat3 P = build_matrix(w);
  CriterionKind k = which == 4 ? CriterionKind::order4 : which == 6 ? CriterionKind::order6 : CriterionKind::order8;
  ojson j;
  j["walk"] = walk_digest(w);
  j["criterion"] = kind_name(k);
  DegeneracyReport d = degeneracy(w);
  if (which != 4 && is_zero(det3(P))) j["note"] = "det(P) = 0: the walk already has order 4";
  if (d.is_singular) j["note"] = "singular walk: the criteria do not apply";
  Rat v = criterion_exact(k, w);
  j["value"] = to_string(v);
  j["zero"] = is_zero(v);
  return j;
}

int exit_for(const std::exception& e) {
  if (dynamic_cast<const InconsistencyError*>(&e)) return 3;
  if (dynamic_cast<const ResourceLimit*>(&e)) return 4;
  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Group of a small-step quarter-plane walk: exact and elliptic classification"};
  app.require_subcommand(1);
  std::string config_path;
  app.add_option("--config", config_path, std::string("JSON config file (default: $") + kConfigEnv + ")");

  std::string input;
  int max_order = -1;
  double tol = -1;
  std::uint64_t seed = 0;
  bool seed_set = false;
  std::string format;

  auto* c_cls = app.add_subcommand("classify", "gated classification with a consolidated verdict");
  c_cls->add_option("--input", input, "walk file (- for stdin)")->required();
  c_cls->add_option("--max-order", max_order, "oracle cap on the group order");
  c_cls->add_option("--tol", tol, "rank and period-scan tolerance");
  c_cls->add_option("--seed", seed, "seed for the rank-test sample points")->each([&](const std::string&) { seed_set = true; });
  c_cls->add_option("--format", format, "json or text")->check(CLI::IsMember({"json", "text"}))->default_val("json");

  std::string vary1, vary2, slack = "p00", crit = "all", sformat;
  auto* c_scan = app.add_subcommand("scan", "exact criterion values over a parameter grid");
  c_scan->add_option("--input", input, "base walk file")->required();
  c_scan->add_option("--vary", vary1, "pij=lo..hi:n")->required();
  c_scan->add_option("--vary2", vary2, "second parameter, pij=lo..hi:n");
  c_scan->add_option("--slack", slack, "entry rescaled to restore unit sum")->default_val("p00");
  c_scan->add_option("--criterion", crit, "order4|order6|order8|all")->default_val("all");
  c_scan->add_option("--format", sformat, "csv or json")->check(CLI::IsMember({"csv", "json"}))->default_val("csv");

  int which = 4;
  auto* c_crit = app.add_subcommand("criteria", "one exact determinant criterion");
  c_crit->add_option("--which", which, "4, 6 or 8")->required()->check(CLI::IsMember({4, 6, 8}));
  c_crit->add_option("--input", input, "walk file")->required();

  std::string mrange;
  auto* c_ell = app.add_subcommand("elliptic", "periods, scan and wp(m omega3) residuals");
  c_ell->add_option("--input", input, "walk file")->required();
  c_ell->add_option("--m", mrange, "m or a range a..b within 1..8");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;  // usage errors share the invalid-input exit code
  }

  try {
    Config cfg = config_path.empty() ? default_config() : load_config_file(config_path);
    if (max_order > 0) cfg.max_order = max_order;
    if (tol > 0) cfg.rank_tol = cfg.scan_tol = tol;
    if (seed_set) cfg.seed = seed;

    if (c_cls->parsed()) {
      WalkSpec w = parse_walk(read_input(input));
      Verdict v = classify(w, cfg);
      std::cout << (format == "text" ? report_text(v) : report_json(v));
      return v.exit_code();
    }
    if (c_scan->parsed()) {
      Family f;
      {
        // the base may leave mass for the slack entry, so validate only signs here
        auto doc = nlohmann::json::parse(read_input(input));
        WalkSpec base;
        for (auto it = doc.begin(); it != doc.end(); ++it) {
          if (it.key() == "name") continue;
          auto [i, j] = parse_key(it.key());
          base(i, j) = it.value().is_string() ? parse_exact_number(it.value().get<std::string>())
                                              : Rat(it.value().get<long>());
          if (sgn(base(i, j)) < 0) throw ParseError("negative probability " + it.key());
        }
        f.base = base;
      }
      f.vary.push_back(parse_vary(vary1));
      if (!vary2.empty()) f.vary.push_back(parse_vary(vary2));
      std::tie(f.slack_i, f.slack_j) = parse_key(slack);
      f.criteria = parse_criterion_list(crit);
      ScanResult R = scan(f);
      std::cout << (sformat == "json" ? scan_json(R).dump(2) + "\n" : scan_csv(R));
      return 0;
    }
    if (c_crit->parsed()) {
      std::cout << criteria_report(parse_walk(read_input(input)), which).dump(2) << "\n";
      return 0;
    }
    if (c_ell->parsed()) {
      auto [lo, hi] = mrange.empty() ? std::pair<int, int>{1, cfg.m_max} : parse_m_range(mrange);
      std::cout << elliptic_report(parse_walk(read_input(input)), cfg, lo, hi).dump(2) << "\n";
      return 0;
    }
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: invalid JSON input: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: bad number: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_for(e);
  }
  return 0;
}
