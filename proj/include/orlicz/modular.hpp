#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "orlicz/conditions.hpp"
#include "orlicz/errors.hpp"
#include "orlicz/grid.hpp"
#include "orlicz/nfunction.hpp"

namespace orlicz {

// Midpoint-rule modular rho_A(u / lambda) = sum_i A(x_i, |u_i| / lambda) vol.
// Compensated accumulation in cell order keeps the sum reproducible across
// runs to well below the quadrature error.  An overflowing summand returns
// +inf rather than throwing: the modular is an extended real, and the norm
// bisection below needs the honest "too large" answer to steer its bracket.
template <class Family>
double modular_integral(const Family& A, const grid_function& u, double lambda) {
  if (!(lambda > 0.0) || !std::isfinite(lambda))
    throw domain_error("modular needs a positive finite scaling");
  if (!(A.dom() == u.dom()))
    throw domain_error("modular needs the family and the grid on one domain");
  double vol = u.cell_volume();
  double sum = 0.0, comp = 0.0;
  std::vector<double> x(u.dim());
  for (std::size_t i = 0; i < u.size(); ++i) {
    double r = std::abs(u[i]) / lambda;
    if (!std::isfinite(r)) return std::numeric_limits<double>::infinity();
    u.center(i, x);
    double a;
    try {
      a = A(x, r);
    } catch (const domain_error& e) {
      throw convergence_error(std::string(e.what()) + " in cell " + std::to_string(i));
    }
    if (!std::isfinite(a)) return std::numeric_limits<double>::infinity();
    double y = a * vol - comp;
    double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
  return sum;
}

// Luxemburg norm inf{lambda > 0 : rho_A(u / lambda) <= 1} by bisection on
// the modular-equals-one criterion.  That criterion characterizes the norm
// when the modular is continuous in lambda, which doubling guarantees; the
// built-in families double by construction, custom expressions get scanned
// before the first bisection step.
template <class Family>
double luxemburg_norm(const Family& A, const grid_function& u, double tol = 1e-9) {
  if (!(tol > 0.0) || tol >= 1.0) throw domain_error("norm tolerance must sit in (0, 1)");
  if (!(A.dom() == u.dom()))
    throw domain_error("norm needs the family and the grid on one domain");
  double peak = 0.0;
  for (double v : u.values()) peak = std::max(peak, std::abs(v));
  if (peak == 0.0) return 0.0;
  if (A.tag() == family_tag::custom && !check_delta2(A).passed)
    throw domain_error("family fails the doubling scan; the norm bisection is not "
                       "justified without it");

  double lo = peak, hi = peak;
  double mid_val = modular_integral(A, u, peak);
  if (mid_val > 1.0) {
    for (int i = 0;; ++i) {
      if (i > 1100) throw convergence_error("Luxemburg bracket expansion did not close");
      lo = hi;
      hi *= 2.0;
      if (modular_integral(A, u, hi) <= 1.0) break;
    }
  } else if (mid_val < 1.0) {
    for (int i = 0;; ++i) {
      if (i > 1100) throw convergence_error("Luxemburg bracket shrank to nothing");
      hi = lo;
      lo *= 0.5;
      if (modular_integral(A, u, lo) >= 1.0) break;
    }
  } else {
    return peak;
  }

  for (int it = 0; it < 200; ++it) {
    double mid = 0.5 * (lo + hi);
    if (!(mid > lo && mid < hi)) break; // bracket at machine resolution
    double m = modular_integral(A, u, mid);
    if (m >= 1.0 - tol && m <= 1.0 + tol) return mid;
    (m > 1.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

// Norm of the finite-difference gradient magnitude.
template <class Family>
double gradient_norm(const Family& A, const grid_function& u, double tol = 1e-9) {
  return luxemburg_norm(A, gradient(u).magnitude, tol);
}

// Discrete Hoelder pairing: |sum u v vol| against 2 ||u||_A ||v||_conj.
// Both sides ride the same lattice, so the bound is the pointwise Young
// inequality summed cell by cell and holds up to the norm tolerance alone.
template <class Family>
std::pair<double, double> holder_pairing(const Family& A, const grid_function& u,
                                         const grid_function& v, double tol = 1e-9) {
  if (!(u.dom() == v.dom()) || u.resolution() != v.resolution())
    throw domain_error("pairing needs both grids on one lattice");
  if (!(A.dom() == u.dom()))
    throw domain_error("pairing needs the family on the grids' domain");
  auto conj = A.conjugate_model();
  if (A.tag() == family_tag::custom &&
      (!check_delta2(A).passed || !check_delta2(conj).passed))
    throw domain_error("pairing needs doubling on both the family and its conjugate");

  double vol = u.cell_volume();
  double sum = 0.0, comp = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    double y = u[i] * v[i] * vol - comp;
    double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
  double nu = luxemburg_norm(A, u, tol);
  double nv = luxemburg_norm(conj, v, tol);
  return {std::abs(sum), 2.0 * nu * nv};
}

} // namespace orlicz
