#pragma once

#include <cstdint>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "orlicz/domain.hpp"
#include "orlicz/errors.hpp"
#include "orlicz/expr.hpp"
#include "orlicz/format.hpp"
#include "orlicz/nfunction.hpp"

namespace orlicz {

// One JSON document drives every subcommand; fields irrelevant to a task are
// ignored by it.  Expressions stay strings here and parse on family or grid
// construction, so a syntax error surfaces as a config error.
struct run_config {
  std::vector<double> lower, upper;

  std::string family_kind;  // variable_exponent | log_type | double_phase | custom
  std::string p_expr;       // variable_exponent, log_type
  std::string alpha_expr;   // double_phase
  double p = 0.0, q = 0.0;  // double_phase exponents
  std::string a_expr;       // custom A(x, t)

  std::vector<std::vector<double>> x_list; // empty: domain center
  std::vector<double> s_grid, t_grid;
  std::string u_expr;
  std::vector<double> center; // empty: domain center
  std::size_t resolution = 64;
  std::uint64_t seed = 1;
  double tol = 0.0; // 0: per-task default
  std::size_t samples = 1000;
  std::size_t pairs = 2000;
  double sigma0 = 0.0;
  std::vector<std::string> checks; // empty: the full battery

  domain make_domain() const { return domain(lower, upper); }

  std::vector<double> point_or_center(const std::vector<double>& pt) const {
    return pt.empty() ? make_domain().center() : pt;
  }
};

namespace detail {

inline std::vector<double> doubles_at(const nlohmann::json& j, const char* key) {
  if (!j.contains(key)) return {};
  if (!j.at(key).is_array()) throw domain_error(std::string(key) + " must be an array");
  std::vector<double> out;
  for (const auto& v : j.at(key)) out.push_back(v.get<double>());
  return out;
}

} // namespace detail

inline run_config config_from_json(const nlohmann::json& j) {
  run_config c;
  if (!j.contains("domain") || !j.at("domain").contains("lower") ||
      !j.at("domain").contains("upper"))
    throw domain_error("config needs domain.lower and domain.upper");
  c.lower = detail::doubles_at(j.at("domain"), "lower");
  c.upper = detail::doubles_at(j.at("domain"), "upper");
  c.make_domain(); // validates dimension and ordering now

  if (!j.contains("family") || !j.at("family").contains("kind"))
    throw domain_error("config needs family.kind");
  const auto& f = j.at("family");
  c.family_kind = f.at("kind").get<std::string>();
  if (f.contains("p") && f.at("p").is_string()) c.p_expr = f.at("p").get<std::string>();
  if (f.contains("p") && f.at("p").is_number()) c.p = f.at("p").get<double>();
  if (f.contains("q")) c.q = f.at("q").get<double>();
  if (f.contains("alpha")) c.alpha_expr = f.at("alpha").get<std::string>();
  if (f.contains("a")) c.a_expr = f.at("a").get<std::string>();

  if (j.contains("x_list")) {
    for (const auto& row : j.at("x_list")) {
      std::vector<double> x;
      for (const auto& v : row) x.push_back(v.get<double>());
      if (x.size() != c.lower.size())
        throw domain_error("x_list entry dimension does not match the domain");
      c.x_list.push_back(std::move(x));
    }
  }
  c.s_grid = detail::doubles_at(j, "s_grid");
  c.t_grid = detail::doubles_at(j, "t_grid");
  c.center = detail::doubles_at(j, "center");
  if (!c.center.empty() && c.center.size() != c.lower.size())
    throw domain_error("center dimension does not match the domain");
  if (j.contains("u")) c.u_expr = j.at("u").get<std::string>();
  if (j.contains("resolution")) c.resolution = j.at("resolution").get<std::size_t>();
  if (j.contains("seed")) c.seed = j.at("seed").get<std::uint64_t>();
  if (j.contains("tol")) {
    c.tol = j.at("tol").get<double>();
    if (!(c.tol > 0.0)) throw domain_error("tol must be positive");
  }
  if (j.contains("samples")) c.samples = j.at("samples").get<std::size_t>();
  if (j.contains("pairs")) c.pairs = j.at("pairs").get<std::size_t>();
  if (j.contains("sigma0")) c.sigma0 = j.at("sigma0").get<double>();
  if (j.contains("checks"))
    for (const auto& s : j.at("checks")) c.checks.push_back(s.get<std::string>());
  return c;
}

inline run_config load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw domain_error("cannot open config file: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw domain_error("config is not valid JSON: " + std::string(e.what()));
  }
  try {
    return config_from_json(j);
  } catch (const nlohmann::json::exception& e) {
    throw domain_error("config field has the wrong type: " + std::string(e.what()));
  }
}

// Family construction defers to the factories, which enforce the parameter
// bounds (p > 1, q > p, inf alpha > 0, N-function shape for custom).
inline n_function build_family(const run_config& c) {
  domain d = c.make_domain();
  if (c.family_kind == "variable_exponent") {
    if (c.p_expr.empty() && c.p > 0.0)
      return n_function::variable_exponent(std::move(d), expr::parse(g17(c.p)));
    if (c.p_expr.empty()) throw domain_error("variable_exponent family needs p");
    return n_function::variable_exponent(std::move(d), expr::parse(c.p_expr));
  }
  if (c.family_kind == "log_type") {
    if (c.p_expr.empty() && c.p > 0.0)
      return n_function::log_type(std::move(d), expr::parse(g17(c.p)));
    if (c.p_expr.empty()) throw domain_error("log_type family needs p");
    return n_function::log_type(std::move(d), expr::parse(c.p_expr));
  }
  if (c.family_kind == "double_phase") {
    if (c.alpha_expr.empty()) throw domain_error("double_phase family needs alpha");
    return n_function::double_phase(std::move(d), expr::parse(c.alpha_expr), c.p, c.q);
  }
  if (c.family_kind == "custom") {
    if (c.a_expr.empty()) throw domain_error("custom family needs a");
    return n_function::custom(std::move(d), expr::parse(c.a_expr));
  }
  throw domain_error("unknown family kind: " + c.family_kind);
}

} // namespace orlicz
