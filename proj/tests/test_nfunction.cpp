#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "orlicz/nfunction.hpp"

using namespace orlicz;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

domain unit_square() { return domain({0.0, 0.0}, {1.0, 1.0}); }
domain square2() { return domain({0.0, 0.0}, {2.0, 2.0}); }

const std::vector<double> mid{0.5, 0.5};

} // namespace

TEST_CASE("variable exponent family, constant exponent") {
  auto A = n_function::variable_exponent(unit_square(), expr::parse("4"));
  CHECK(A.tag() == family_tag::variable_exponent);
  CHECK(A.has_analytic_conjugate());
  CHECK(A.exponent_lower_bound().value() == 4.0);

  CHECK_THAT(A(mid, 2.0), WithinRel(4.0, 1e-15));          // 2^4/4
  CHECK(A(mid, -2.0) == A(mid, 2.0));                      // even
  CHECK(A(mid, 0.0) == 0.0);
  CHECK_THAT(A.derivative(mid, 2.0), WithinRel(8.0, 1e-15)); // t^3
  CHECK(A.derivative(mid, -2.0) == -8.0);                  // odd
  CHECK(A.derivative(mid, 0.0) == 0.0);
  CHECK_THAT(A.inverse(mid, 4.0), WithinRel(2.0, 1e-15));

  // conjugate of t^4/4 is (3/4) s^{4/3}; at s = 8 that is 12
  CHECK_THAT(A.conjugate(mid, 8.0), WithinRel(12.0, 1e-15));
  CHECK_THAT(A.conjugate_numeric(mid, 8.0), WithinRel(12.0, 1e-10));
  CHECK_THAT(A.conjugate_derivative(mid, 8.0), WithinRel(2.0, 1e-12)); // s^{1/3}
  CHECK_THAT(A.conjugate_inverse(mid, 12.0), WithinRel(8.0, 1e-12));

  // constant exponent: no x dependence at all
  auto g = A.grad_x(mid, 3.0);
  CHECK(g.size() == 2);
  CHECK_THAT(g[0], WithinAbs(0.0, 1e-12));
  CHECK_THAT(g[1], WithinAbs(0.0, 1e-12));

  auto C = A.conjugate_model();
  CHECK(C.tag() == family_tag::variable_exponent);
  CHECK_THAT(C(mid, 8.0), WithinRel(12.0, 1e-14));
  CHECK_THAT(C.exponent_lower_bound().value(), WithinRel(4.0 / 3.0, 1e-12));
}

TEST_CASE("variable exponent family, x-dependent exponent") {
  auto A = n_function::variable_exponent(square2(), expr::parse("3+x1"));
  std::vector<double> x{1.0, 1.0}; // p = 4 here
  double e1 = std::exp(1.0);
  CHECK_THAT(A(x, 2.0), WithinRel(4.0, 1e-14));

  // d/dx1 [t^{p}/p] = t^p (p log t - 1)/p^2 * dp/dx1; at t = e, p = 4:
  // e^4 (4 - 1)/16 = 3 e^4 / 16
  auto g = A.grad_x(x, e1);
  CHECK_THAT(g[0], WithinRel(3.0 * std::pow(e1, 4.0) / 16.0, 1e-8));
  CHECK_THAT(g[1], WithinAbs(0.0, 1e-10));

  // the closed-form gradient agrees with brute finite differences of the
  // same function built as a custom model
  auto B = n_function::custom(square2(), expr::parse("t^(3+x1)/(3+x1)"));
  auto gn = B.grad_x(x, e1);
  CHECK_THAT(g[0], WithinRel(gn[0], 1e-6));

  CHECK_THAT(A.exponent_lower_bound().value(), WithinRel(3.0, 1e-15));

  // analytic conjugate model carries exponent q = p/(p-1)
  auto C = A.conjugate_model();
  std::vector<double> y{0.0, 0.0}; // p = 3, q = 1.5
  CHECK_THAT(C(y, 2.0), WithinRel(std::pow(2.0, 1.5) / 1.5, 1e-14));

  // Young equality at s = a(x, t)
  double t = 1.7;
  double s = A.derivative(x, t);
  CHECK_THAT(s * t, WithinRel(A(x, t) + A.conjugate(x, s), 1e-13));
}

TEST_CASE("variable exponent rejects exponents reaching 1") {
  CHECK_THROWS_AS(n_function::variable_exponent(unit_square(), expr::parse("1+x1")),
                  domain_error);
  CHECK_THROWS_AS(n_function::variable_exponent(unit_square(), expr::parse("t+2")),
                  domain_error);
}

TEST_CASE("log type family") {
  auto A = n_function::log_type(unit_square(), expr::parse("2+x1"));
  std::vector<double> x{0.25, 0.5}; // p = 2.25
  double t = 1.8;
  CHECK_THAT(A(x, t), WithinRel(std::pow(t, 2.25) * std::log1p(t), 1e-15));

  // analytic derivative against a central difference
  double h = 1e-6 * t;
  double fd = (A(x, t + h) - A(x, t - h)) / (2.0 * h);
  CHECK_THAT(A.derivative(x, t), WithinRel(fd, 1e-8));

  // numeric inverse round-trips through eval at the advertised tolerance
  double y = A(x, t);
  CHECK_THAT(A(x, A.inverse(x, y)), WithinRel(y, 1e-11));
  CHECK_THAT(A.inverse(x, y), WithinRel(t, 1e-9));

  // Young equality along the numeric conjugate
  double s = A.derivative(x, t);
  CHECK_THAT(s * t, WithinRel(A(x, t) + A.conjugate(x, s), 1e-9));

  // conjugate inverse round-trips
  double v = A.conjugate(x, s);
  CHECK_THAT(A.conjugate(x, A.conjugate_inverse(x, v)), WithinRel(v, 1e-10));
}

TEST_CASE("double phase family") {
  auto A = n_function::double_phase(unit_square(), expr::parse("1"), 3.0, 4.0);
  CHECK_THAT(A(mid, 2.0), WithinRel(24.0, 1e-15)); // 8 + 16
  CHECK_THAT(A.derivative(mid, 2.0), WithinRel(44.0, 1e-15)); // 12 + 32
  CHECK(A.exponent_lower_bound().value() == 3.0);

  auto B = n_function::double_phase(unit_square(), expr::parse("1+x1^2"), 3.0, 4.0);
  std::vector<double> x{0.5, 0.3};
  auto g = B.grad_x(x, 1.0); // t^q * dalpha = 1 * (2 x1, 0)
  CHECK_THAT(g[0], WithinRel(1.0, 1e-9));
  CHECK_THAT(g[1], WithinAbs(0.0, 1e-12));

  // numeric inverse matches a hand bisection through eval
  double y = 100.0;
  double t = B.inverse(x, y);
  CHECK_THAT(B(x, t), WithinRel(y, 1e-12));

  CHECK_THROWS_AS(n_function::double_phase(unit_square(), expr::parse("x1"), 3.0, 4.0),
                  domain_error); // inf alpha = 0
  CHECK_THROWS_AS(n_function::double_phase(unit_square(), expr::parse("1"), 4.0, 3.0),
                  domain_error); // q <= p
}

TEST_CASE("custom family from an expression in x and t") {
  auto A = n_function::custom(unit_square(), expr::parse("exp(t)-t-1"));
  CHECK(A.tag() == family_tag::custom);
  CHECK_FALSE(A.has_analytic_derivative());
  CHECK_FALSE(A.exponent_lower_bound().has_value());

  double t = 1.3;
  CHECK_THAT(A(mid, t), WithinRel(std::exp(t) - t - 1.0, 1e-15));
  CHECK_THAT(A.derivative(mid, t), WithinRel(std::exp(t) - 1.0, 1e-7));

  // closed form of the conjugate: (1+s) log(1+s) - s
  double s = 2.5;
  CHECK_THAT(A.conjugate(mid, s),
             WithinRel((1.0 + s) * std::log1p(s) - s, 1e-9));
  CHECK_THAT(A.conjugate_derivative(mid, s), WithinRel(std::log1p(s), 1e-9));

  double y = A(mid, t);
  CHECK_THAT(A.inverse(mid, y), WithinRel(t, 1e-8));
}

TEST_CASE("construction rejects non N-functions") {
  CHECK_THROWS_AS(n_function::custom(unit_square(), expr::parse("t")), domain_error);
  CHECK_THROWS_AS(n_function::custom(unit_square(), expr::parse("t+1")), domain_error);
  CHECK_THROWS_AS(n_function::custom(unit_square(), expr::parse("abs(t)^0.5")), domain_error);
  CHECK_THROWS_AS(n_function::custom(unit_square(), expr::parse("t^2-1")), domain_error);
  CHECK_THROWS_AS(n_function::custom(unit_square(), expr::parse("sin(t)")), domain_error);
}

TEST_CASE("arguments are validated") {
  auto A = n_function::variable_exponent(unit_square(), expr::parse("4"));
  std::vector<double> outside{2.0, 0.5};
  CHECK_THROWS_AS(A(outside, 1.0), domain_error);
  CHECK_THROWS_AS(A(mid, std::numeric_limits<double>::infinity()), domain_error);
  CHECK_THROWS_AS(A.inverse(mid, -1.0), domain_error);
  std::vector<double> wrong_dim{0.5};
  CHECK_THROWS_AS(A(wrong_dim, 1.0), domain_error);
}

TEST_CASE("numeric double conjugation returns to the original") {
  auto A = n_function::log_type(unit_square(), expr::parse("2.5"));
  auto conj = A.conjugate_model();
  CHECK(conj.tag() == family_tag::derived);

  // tilde A is itself an N-function; its conjugate must reproduce A
  auto back = conj.conjugate_model();
  for (double t : {0.5, 1.0, 3.0}) {
    CHECK_THAT(back(mid, t), WithinRel(A(mid, t), 1e-6));
  }

  // the identity nabla_x tilde A = -(nabla_x A)(x, tilde a) against direct
  // finite differences of the numeric conjugate
  auto B = n_function::log_type(unit_square(), expr::parse("2+x1"));
  auto Bc = B.conjugate_model();
  std::vector<double> x{0.4, 0.6};
  double s = 3.0;
  auto gi = Bc.grad_x(x, s);
  double h = 1e-5;
  std::vector<double> xp{x[0] + h, x[1]}, xm{x[0] - h, x[1]};
  double fd = (B.conjugate(xp, s) - B.conjugate(xm, s)) / (2.0 * h);
  CHECK_THAT(gi[0], WithinRel(fd, 1e-4));
}
