#pragma once

#include <algorithm>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "orlicz/calculus.hpp"
#include "orlicz/conditions.hpp"
#include "orlicz/config.hpp"
#include "orlicz/grid.hpp"
#include "orlicz/modular.hpp"
#include "orlicz/morrey.hpp"
#include "orlicz/serialize.hpp"

namespace orlicz {

inline const std::vector<std::string>& all_checks() {
  static const std::vector<std::string> names{"Delta2", "Delta2-near-infinity", "P3",
                                             "P5",     "P5-tilde",             "P5-star",
                                             "Prop2.3"};
  return names;
}

// Runs the requested certifications and emits one JSON document; the return
// value is the process exit code (0 all passed, 1 otherwise).  P3 evaluates
// at every x in the x list; the Sobolev-conjugate scan only runs when the
// whole list clears P3, since its inverter refuses non-integrable slopes.
inline int cmd_check(const run_config& cfg, std::ostream& os) {
  n_function A = build_family(cfg);
  const auto& requested = cfg.checks.empty() ? all_checks() : cfg.checks;
  for (const auto& name : requested)
    if (std::find(all_checks().begin(), all_checks().end(), name) == all_checks().end())
      throw domain_error("unknown check: " + name);
  auto want = [&](const char* name) {
    return std::find(requested.begin(), requested.end(), name) != requested.end();
  };
  auto xs = cfg.x_list;
  if (xs.empty()) xs.push_back(A.dom().center());

  std::vector<condition_report> reports;
  if (want("Delta2")) reports.push_back(check_delta2(A));
  if (want("Delta2-near-infinity")) reports.push_back(check_delta2(A, true));
  bool p3_all = true;
  if (want("P3") || want("P5-star")) {
    for (const auto& x : xs) {
      auto r = check_P3(A, x);
      p3_all = p3_all && r.passed;
      if (want("P3")) reports.push_back(std::move(r));
    }
  }
  if (want("P5")) reports.push_back(check_P5(A));
  if (want("P5-tilde")) reports.push_back(check_P5_tilde(A));
  if (want("P5-star")) {
    if (p3_all) {
      reports.push_back(check_P5_star(A));
    } else {
      condition_report skip;
      skip.condition = "P5-star";
      skip.grid = "skipped: inverse integrability fails on the x list";
      reports.push_back(std::move(skip));
    }
  }
  if (want("Prop2.3")) reports.push_back(verify_prop_Aa(A, cfg.samples, cfg.seed));

  bool all_passed = std::all_of(reports.begin(), reports.end(),
                                [](const condition_report& r) { return r.passed; });
  os << "{\n  \"family\": " << json_string(A.family_name()) << ",\n";
  os << "  \"passed\": " << (all_passed ? "true" : "false") << ",\n";
  os << "  \"reports\": [\n";
  for (std::size_t i = 0; i < reports.size(); ++i)
    os << to_json(reports[i], "    ") << (i + 1 < reports.size() ? ",\n" : "\n");
  os << "  ]\n}\n";
  return all_passed ? 0 : 1;
}

namespace detail {

inline std::string coord_header(std::size_t n) {
  std::string h;
  for (std::size_t i = 1; i <= n; ++i) h += "x" + std::to_string(i) + ",";
  return h;
}

} // namespace detail

// Pointwise family table on the configured grid: value and slope of A, the
// conjugate pair, and the inverse Sobolev conjugate where the inverse
// integrability test admits it.
inline void cmd_conjugate(const run_config& cfg, std::ostream& os) {
  n_function A = build_family(cfg);
  double tol = cfg.tol > 0.0 ? cfg.tol : 1e-10;
  auto xs = cfg.x_list;
  if (xs.empty()) xs.push_back(A.dom().center());
  const auto& grid = cfg.t_grid.empty() ? cfg.s_grid : cfg.t_grid;

  os << detail::coord_header(A.dom().dim())
     << "t,A,a,conjugate,conjugate_slope,sobolev_inverse\n";
  for (const auto& x : xs) {
    bool admits = check_P3(A, x).passed;
    std::optional<sobolev_inverter> inv;
    if (admits) inv.emplace(A, x, tol);
    for (double t : grid) {
      os << csv_row(x) << "," << g17(t) << "," << g17(A(x, t)) << "," << g17(A.derivative(x, t))
         << "," << g17(A.conjugate(x, t)) << "," << g17(A.conjugate_derivative(x, t)) << ",";
      if (!admits)
        os << "n/a (P3 fails)";
      else
        os << g17(t == 0.0 ? 0.0 : inv->value(t));
      os << "\n";
    }
  }
}

// Continuity modulus table with the quadrature error estimate alongside.
inline void cmd_modulus(const run_config& cfg, std::ostream& os) {
  n_function A = build_family(cfg);
  double tol = cfg.tol > 0.0 ? cfg.tol : 1e-10;
  auto xs = cfg.x_list;
  if (xs.empty()) xs.push_back(A.dom().center());

  os << detail::coord_header(A.dom().dim()) << "s,mu,err\n";
  for (const auto& x : xs)
    for (double s : cfg.s_grid) {
      auto q = morrey_modulus(A, x, s, tol);
      os << csv_row(x) << "," << g17(s) << "," << g17(q.value) << ","
         << g17(q.abs_error_estimate) << "\n";
    }
}

// Luxemburg norms of u and its gradient magnitude, and their sum.
inline void cmd_norm(const run_config& cfg, std::ostream& os) {
  if (cfg.u_expr.empty()) throw domain_error("norm needs a u expression in the config");
  n_function A = build_family(cfg);
  auto u = grid_function::sample(expr::parse(cfg.u_expr), A.dom(), cfg.resolution);
  double tol = cfg.tol > 0.0 ? cfg.tol : 1e-9;
  double nu = luxemburg_norm(A, u, tol);
  double ng = gradient_norm(A, u, tol);
  os << "{\n  \"norm_u\": " << json_number(nu) << ",\n  \"norm_grad_u\": " << json_number(ng)
     << ",\n  \"norm_W1A\": " << json_number(nu + ng) << "\n}\n";
}

// Seeded oscillation-ratio report around the configured center.
inline void cmd_verify(const run_config& cfg, std::ostream& os) {
  if (cfg.u_expr.empty()) throw domain_error("verify needs a u expression in the config");
  n_function A = build_family(cfg);
  auto u = grid_function::sample(expr::parse(cfg.u_expr), A.dom(), cfg.resolution);
  auto x = cfg.point_or_center(cfg.center);
  modulus_cache mc;
  auto rep = empirical_morrey_check(A, u, x, cfg.pairs, cfg.seed, cfg.sigma0, &mc, nullptr,
                                    cfg.tol > 0.0 ? cfg.tol : 1e-8);
  os << to_json(rep) << "\n";
}

} // namespace orlicz
