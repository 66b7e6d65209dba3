#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "orlicz/conditions.hpp"

using namespace orlicz;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

domain unit_square() { return domain({0.0, 0.0}, {1.0, 1.0}); }
domain sym_square() { return domain({-1.0, -1.0}, {1.0, 1.0}); }
domain unit_cube() { return domain({0.0, 0.0, 0.0}, {1.0, 1.0, 1.0}); }

n_function ve(domain d, const char* p) {
  return n_function::variable_exponent(std::move(d), expr::parse(p));
}

n_function dp_family() {
  return n_function::double_phase(unit_square(), expr::parse("1+x1^2"), 1.5, 1.8);
}

} // namespace

TEST_CASE("doubling constants match the family structure") {
  // variable exponent: A(x, 2t)/A(x, t) = 2^{p(x)} exactly, so K is
  // 2^{max p} and the max sits on the lattice corner x1 = 1
  auto A = ve(sym_square(), "4+0.5*sin(x1)");
  auto r = check_delta2(A);
  CHECK(r.passed);
  CHECK_THAT(r.constant("K"), WithinRel(std::pow(2.0, 4.0 + 0.5 * std::sin(1.0)), 1e-10));
  CHECK_THAT(r.witnesses.at(0).lhs, WithinRel(r.witnesses.at(0).rhs, 1e-10));

  // double phase: the ratio climbs toward 2^q as the q-term takes over
  auto rdp = check_delta2(dp_family());
  CHECK(rdp.passed);
  CHECK_THAT(rdp.constant("K"), WithinRel(std::pow(2.0, 1.8), 0.05));

  // log factor contributes its own doubling near zero: K ~ 2^{p+1}
  auto L = n_function::log_type(unit_square(), expr::parse("2.5"));
  auto rl = check_delta2(L);
  CHECK(rl.passed);
  CHECK_THAT(rl.constant("K"), WithinRel(std::pow(2.0, 3.5), 1e-3));

  // genuinely exponential growth has no doubling constant at any threshold
  auto E = n_function::custom(unit_square(), expr::parse("exp(t)-t-1"));
  auto re = check_delta2(E);
  CHECK_FALSE(re.passed);
  CHECK(std::isinf(re.constant("K")));
  auto ren = check_delta2(E, true);
  CHECK_FALSE(ren.passed);
  CHECK(ren.condition == "Delta2-near-infinity");

  // near-infinity variant fits the smallest threshold; a family that
  // doubles everywhere passes already at t0 = 1
  auto rln = check_delta2(L, true);
  CHECK(rln.passed);
  CHECK(rln.constant("t0") == 1.0);
}

TEST_CASE("integrability gate at zero sorts exponents by dimension") {
  auto c = unit_square().center();

  // t^p/p: the integrand slope is 1/p - (n+1)/n, integrable iff p < n
  auto good = check_P3(ve(unit_square(), "1.5"), c);
  CHECK(good.passed);
  CHECK_THAT(good.constant("beta"), WithinAbs(-5.0 / 6.0, 1e-3));
  CHECK_THAT(good.constant("ratio_deep"), WithinAbs(std::pow(10.0, -1.0 / 6.0), 5e-3));

  auto bad = check_P3(ve(unit_square(), "4"), c);
  CHECK_FALSE(bad.passed);
  CHECK_THAT(bad.constant("beta"), WithinAbs(-1.25, 1e-3));
  CHECK(bad.constant("ratio_deep") > 0.9);

  // p = n is the borderline and the scan must refuse it
  auto edge = check_P3(ve(unit_square(), "2"), c);
  CHECK_FALSE(edge.passed);

  // double phase inherits the small-t exponent p
  CHECK(check_P3(dp_family(), c).passed);

  // the log factor raises the effective small-t power to p+1, which kills
  // integrability in dimension two for every admissible p
  auto L2 = n_function::log_type(unit_square(), expr::parse("1.5"));
  CHECK_FALSE(check_P3(L2, c).passed);
  auto L3 = n_function::log_type(unit_cube(), expr::parse("1.5"));
  CHECK(check_P3(L3, unit_cube().center()).passed);
}

TEST_CASE("coefficient growth bound fits its smallest constant") {
  // constant exponent: no x dependence, the bound is free with C0 = 0
  auto flat = check_P5(ve(unit_square(), "2"));
  CHECK(flat.passed);
  CHECK(flat.constant("C0") == 0.0);
  CHECK(flat.constant("delta0") == 0.01);

  auto A = ve(unit_square(), "3+x1");
  auto r = check_P5(A);
  CHECK(r.passed);
  CHECK(r.constant("C0") > 0.0);
  CHECK(std::isfinite(r.constant("C0")));
  CHECK(r.constant("delta0") < 0.5);
  // the witness is the binding sample: both sides re-evaluate on the nose
  const auto& w = r.witnesses.at(0);
  CHECK(w.lhs == detail::euclid(A.grad_x(w.x, w.t)));
  CHECK_THAT(w.lhs, WithinRel(w.rhs, 1e-9));

  CHECK(check_P5(dp_family()).passed);
  CHECK(check_P5(n_function::log_type(unit_square(), expr::parse("1.5+0.25*x1"))).passed);
}

TEST_CASE("conjugate growth bound follows the same sweep") {
  auto flat = check_P5_tilde(ve(unit_square(), "2"));
  CHECK(flat.passed);
  CHECK(flat.constant("C_tilde") == 0.0);

  // closed-form conjugate path
  auto r = check_P5_tilde(ve(unit_square(), "3+x1"));
  CHECK(r.passed);
  CHECK(r.constant("C_tilde") > 0.0);

  // numeric conjugate path with the envelope-identity gradient
  CHECK(check_P5_tilde(dp_family()).passed);
}

TEST_CASE("Sobolev conjugate growth bound prices its scan by quadrature") {
  // constant exponent below the dimension: T is infinite and the scan sees
  // bitwise-identical inverters at every stencil arm
  auto flat = check_P5_star(ve(unit_square(), "1.5"), 1e-6, 3, 7);
  CHECK(flat.passed);
  CHECK(flat.constant("C_star") == 0.0);
  CHECK(flat.grid.find("T infinite") != std::string::npos);

  auto r = check_P5_star(ve(unit_square(), "1.5+0.3*x1"), 1e-6, 3, 9);
  CHECK(r.passed);
  CHECK(r.constant("C_star") > 0.0);
  CHECK(std::isfinite(r.constant("C_star")));
  CHECK(r.constant("delta_star") < 0.5);

  // the integrability gate is a precondition, not a scan outcome
  CHECK_THROWS_AS(check_P5_star(ve(unit_square(), "4"), 1e-8, 2, 5), domain_error);
}

TEST_CASE("Sobolev conjugate scan records the doubling hypothesis") {
  // exponential growth: integrable at zero in dimension three, finite T,
  // and the doubling hypothesis near infinity fails on its side scan
  auto E = n_function::custom(unit_cube(), expr::parse("exp(t)-t-1"));
  auto r = check_P5_star(E, 1e-4, 2, 5);
  CHECK(r.passed);
  CHECK(r.constant("C_star") == 0.0);
  CHECK(r.constant("delta2_near_infinity") == 0.0);
  CHECK(r.grid.find("capped below 0.95 min T") != std::string::npos);
  CHECK(r.grid.find("doubling near infinity fails") != std::string::npos);
}

TEST_CASE("growth domination orders power families") {
  auto t3 = n_function::custom(unit_square(), expr::parse("t^3"));
  auto t4 = n_function::custom(unit_square(), expr::parse("t^4"));
  std::vector<double> ks{1.0, 10.0};

  auto r = check_much_less_than(t3, t4, ks);
  CHECK(r.passed);
  // k = 10 is the binding factor: (10 t)^3 / t^4 = 1e-3 at t = 1e6
  CHECK_THAT(r.constant("ratio_top"), WithinRel(1e-3, 1e-12));
  CHECK(r.constant("k_worst") == 10.0);

  std::vector<double> one{1.0};
  auto same = check_much_less_than(t3, t3, one);
  CHECK_FALSE(same.passed);
  CHECK_THAT(same.constant("ratio_top"), WithinRel(1.0, 1e-12));

  CHECK_FALSE(check_much_less_than(t4, t3, one).passed);

  auto other = n_function::custom(sym_square(), expr::parse("t^4"));
  CHECK_THROWS_AS(check_much_less_than(t3, other, one), domain_error);
  CHECK_THROWS_AS(check_much_less_than(t3, t4, std::vector<double>{}), domain_error);
}

TEST_CASE("pointwise identities hold on seeded samples") {
  auto families = {ve(unit_square(), "2+0.5*x1"),
                   n_function::log_type(unit_square(), expr::parse("1.5")), dp_family()};
  for (const auto& A : families) {
    auto r = verify_prop_Aa(A, 400, 7);
    INFO(A.family_name());
    CHECK(r.passed);
    CHECK(r.constant("sandwich_margin") >= -1e-8);
    CHECK(r.constant("product_margin") >= -1e-8);
    CHECK(r.constant("young_margin") >= -1e-8);
    CHECK(r.constant("young_equality_rel") <= 1e-7);
    CHECK(r.constant("samples") == 400.0);
    CHECK(r.constant("seed") == 7.0);
  }

  // p = 2: the inverse product lands exactly on the upper bound 2y, so the
  // product margin sits at zero up to rounding
  auto tight = verify_prop_Aa(ve(unit_square(), "2"), 300, 3);
  CHECK(tight.passed);
  CHECK(std::abs(tight.constant("product_margin")) < 1e-10);

  // same seed, same stream, bitwise-equal report
  auto A = ve(unit_square(), "2+0.5*x1");
  auto r1 = verify_prop_Aa(A, 200, 11);
  auto r2 = verify_prop_Aa(A, 200, 11);
  REQUIRE(r1.constants.size() == r2.constants.size());
  for (std::size_t i = 0; i < r1.constants.size(); ++i) {
    CHECK(r1.constants[i].first == r2.constants[i].first);
    CHECK(r1.constants[i].second == r2.constants[i].second);
  }
  REQUIRE(r1.witnesses.size() == 3);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(r1.witnesses[i].x == r2.witnesses[i].x);
    CHECK(r1.witnesses[i].lhs == r2.witnesses[i].lhs);
  }

  // the stored sandwich witness re-evaluates from its own coordinates
  const auto& w = r1.witnesses[0];
  bool lhs_is_value = w.lhs == A(w.x, w.t);
  bool lhs_is_slope = w.lhs == A.derivative(w.x, w.t) * w.t;
  CHECK((lhs_is_value || lhs_is_slope));
}
