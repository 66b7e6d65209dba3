#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "orlicz/format.hpp"
#include "orlicz/nfunction.hpp"
#include "orlicz/quadrature.hpp"
#include "orlicz/roots.hpp"

namespace orlicz {

struct modulus_row {
  std::vector<double> x;
  double s = 0.0;
  double mu = 0.0;
  double err = 0.0;
};

// Tabulated continuity modulus, one row per (x, s); serializes to CSV with
// the header x1,...,xn,s,mu,err.
class modulus_table {
public:
  explicit modulus_table(std::size_t dim) : dim_(dim) {}

  void add(std::vector<double> x, double s, double mu, double err) {
    if (x.size() != dim_) throw domain_error("modulus row has wrong dimension");
    rows_.push_back({std::move(x), s, mu, err});
  }

  std::size_t dim() const noexcept { return dim_; }
  const std::vector<modulus_row>& rows() const noexcept { return rows_; }

  void write_csv(std::ostream& os) const {
    for (std::size_t i = 1; i <= dim_; ++i) os << 'x' << i << ',';
    os << "s,mu,err\n";
    for (const auto& r : rows_) {
      os << csv_row(r.x) << ',' << g17(r.s) << ',' << g17(r.mu) << ',' << g17(r.err) << '\n';
    }
  }

private:
  std::size_t dim_;
  std::vector<modulus_row> rows_;
};

struct tail_limit {
  double value = 0.0; // +inf when the limit does not stabilize
  double gap = 0.0;   // last relative increment observed
  bool finite = false;
};

namespace detail {

// log-log slope of g(tau) = A^{-1}(x, tau) tau^{-(n+1)/n} between two taus.
inline double integrand_exponent(const n_function& A, std::span<const double> x, double tau0,
                                 double tau1) {
  double n = double(A.dom().dim());
  auto g = [&](double tau) {
    return A.inverse(x, tau) * std::pow(tau, -(n + 1.0) / n);
  };
  return std::log(g(tau1) / g(tau0)) / std::log(tau1 / tau0);
}

} // namespace detail

// Evaluates the inverse Sobolev conjugate
//
//   A_*^{-1}(x, s) = integral_0^s A^{-1}(x, tau) tau^{-(n+1)/n} dtau
//
// at a fixed x, its limit T(x) as s -> inf, and the functional inverse
// A_*(x, t).  One instance caches the base integral and the limit probes, so
// sweeps in s or t at the same x pay for one singular quadrature only.
//
// Construction refuses integrands that are not integrable at 0 (the local
// exponent there must exceed -1): that is exactly the displayed convergence
// condition on A, and without it nothing here is defined.
class sobolev_inverter {
public:
  sobolev_inverter(n_function A, std::vector<double> x, double tol = 1e-10)
      : A_(std::move(A)), x_(std::move(x)), tol_(tol), n_(double(A_.dom().dim())) {
    A_.dom().require_inside(x_);
    if (!(tol_ > 0.0)) throw domain_error("tolerance must be positive");
    double lo = detail::integrand_exponent(A_, x_, 1e-12, 1e-10);
    double hi = detail::integrand_exponent(A_, x_, 1e-10, 1e-8);
    double slope = std::min(lo, hi);
    if (!(slope > -1.0 + 1e-9))
      throw domain_error("inverse Sobolev conjugate diverges at 0: local exponent " +
                         std::to_string(slope) + " <= -1 at x = " + csv_row(x_));
  }

  const n_function& model() const noexcept { return A_; }
  std::span<const double> point() const noexcept { return x_; }

  // A_*^{-1}(x, s); increasing in s, 0 at 0.
  double value(double s) {
    if (!(s >= 0.0)) throw domain_error("inverse Sobolev conjugate needs s >= 0");
    if (s == 0.0) return 0.0;
    if (s >= 1.0) {
      ensure_base();
      return base1_ + increment(1.0, s);
    }
    auto g = [this](double tau) { return integrand(tau); };
    auto r = integrate_graded_left(g, 0.0, s, 1e-300, tol_);
    if (!r.converged)
      throw convergence_error("inverse Sobolev conjugate quadrature did not converge at s = " +
                              g17(s));
    return r.value;
  }

  // T(x): probes s = 1e2, 1e4, ..., 1e12.  A convergent tail makes the probe
  // increments decay geometrically, so the remainder past the last probe is
  // priced by the same three-term geometric model the graded rule uses and
  // folded into the value; increments that stop decaying mean no finite limit.
  tail_limit limit(double rel_gap = 1e-4) {
    if (!cached_limit_) {
      tail_limit out;
      double cur = value(1e2);
      double d0 = 0.0, d1 = 0.0, d2 = 0.0;
      for (double s = 1e4; s <= 1e12 + 1.0; s *= 100.0) {
        d0 = d1;
        d1 = d2;
        d2 = increment(s / 100.0, s);
        cur += d2;
      }
      out.gap = std::numeric_limits<double>::infinity();
      if (d2 <= 0.0) {
        // tail already dead at the probe scale
        out.value = cur;
        out.gap = tol_;
        out.finite = true;
      } else if (d1 > 0.0 && d0 > 0.0 && d2 / d1 < 0.9) {
        double rho = d2 / d1, drift = std::abs(rho - d1 / d0);
        double rest = d2 * rho / (1.0 - rho);
        double unc = rest * std::min(1.0, 3.0 * drift / (1.0 - rho));
        out.value = cur + rest;
        out.gap = std::max(unc / out.value, tol_);
        out.finite = out.gap <= rel_gap;
      } else {
        out.gap = d2 / cur;
      }
      if (!out.finite) out.value = std::numeric_limits<double>::infinity();
      cached_limit_ = out;
    }
    return *cached_limit_;
  }

  // A_*(x, t) = the s with A_*^{-1}(x, s) = |t|; +inf at and beyond T(x).
  // A positive s_hint seeds the bracket search; callers sweeping an ascending
  // t grid pass the previous root and skip most of the doubling walk.
  double invert(double t, double s_hint = 0.0) {
    double at = std::abs(t);
    if (at == 0.0) return 0.0;
    if (!std::isfinite(at)) throw domain_error("Sobolev conjugate needs finite t");
    tail_limit T = limit();
    if (T.finite && at >= T.value * (1.0 - 1e-3))
      return std::numeric_limits<double>::infinity();
    auto F = [this](double s) { return s == 0.0 ? 0.0 : value(s); };
    auto dF = [this](double s) { return integrand(s); };
    double start = (std::isfinite(s_hint) && s_hint > 0.0) ? s_hint : 1.0;
    auto [lo, hi] = bracket_monotone(F, at, start);
    return solve_monotone(F, dF, at, lo, hi, tol_ * std::max(1.0, at)).t;
  }

private:
  double integrand(double tau) const {
    double p = std::pow(tau, -(n_ + 1.0) / n_);
    if (!std::isfinite(p)) return std::numeric_limits<double>::infinity();
    return A_.inverse(x_, tau) * p;
  }

  void ensure_base() {
    if (!std::isnan(base1_)) return;
    auto g = [this](double tau) { return integrand(tau); };
    auto r = integrate_graded_left(g, 0.0, 1.0, 1e-300, tol_);
    if (!r.converged)
      throw convergence_error("inverse Sobolev conjugate quadrature did not converge on (0, 1]");
    base1_ = r.value;
  }

  // integral over [a, b] with 1 <= a < b, done in log coordinates so wide
  // ranges stay well-conditioned
  double increment(double a, double b) {
    ensure_base();
    auto h = [this](double u) {
      double tau = std::exp(u);
      return integrand(tau) * tau;
    };
    auto r = integrate(h, std::log(a), std::log(b), 1e-13 * base1_, tol_);
    if (!r.converged)
      throw convergence_error("inverse Sobolev conjugate increment did not converge on [" +
                              g17(a) + ", " + g17(b) + "]");
    return r.value;
  }

  n_function A_;
  std::vector<double> x_;
  double tol_;
  double n_;
  double base1_ = std::numeric_limits<double>::quiet_NaN();
  std::optional<tail_limit> cached_limit_;
};

inline quadrature_result sobolev_conjugate_inverse(const n_function& A,
                                                   std::span<const double> x, double s,
                                                   double tol = 1e-10) {
  A.dom().require_inside(x);
  if (!(s >= 0.0) || !std::isfinite(s))
    throw domain_error("inverse Sobolev conjugate needs finite s >= 0");
  quadrature_result out;
  if (s == 0.0) {
    out.converged = true;
    return out;
  }
  sobolev_inverter inv(A, std::vector<double>(x.begin(), x.end()), tol);
  double n = double(A.dom().dim());
  auto g = [&](double tau) {
    double p = std::pow(tau, -(n + 1.0) / n);
    if (!std::isfinite(p)) return std::numeric_limits<double>::infinity();
    return A.inverse(x, tau) * p;
  };
  auto r = integrate_graded_left(g, 0.0, s, 1e-300, tol);
  return r;
}

inline tail_limit limit_T(const n_function& A, std::span<const double> x, double rel_gap = 1e-4,
                          double tol = 1e-9) {
  sobolev_inverter inv(A, std::vector<double>(x.begin(), x.end()), tol);
  return inv.limit(rel_gap);
}

inline double sobolev_conjugate(const n_function& A, std::span<const double> x, double t,
                                double tol = 1e-10) {
  sobolev_inverter inv(A, std::vector<double>(x.begin(), x.end()), tol);
  return inv.invert(t);
}

// Continuity modulus
//
//   mu(x, s) = integral_{s^{-n}}^{inf} A^{-1}(x, tau) tau^{-(n+1)/n} dtau
//            = n * integral_0^s A^{-1}(x, r^{-n}) dr,
//
// computed through the substituted form (bounded interval, graded toward 0)
// and cross-checked against the direct tail integral at the same tolerance.
// Throws domain_error when the tail diverges (A growing too slowly in t) and
// convergence_error when the two routes disagree beyond 10x tolerance.
inline quadrature_result morrey_modulus(const n_function& A, std::span<const double> x, double s,
                                        double tol = 1e-10, bool cross_check = true) {
  A.dom().require_inside(x);
  if (!(s >= 0.0) || !std::isfinite(s)) throw domain_error("modulus needs finite s >= 0");
  quadrature_result out;
  if (s == 0.0) {
    out.converged = true;
    return out;
  }
  double n = double(A.dom().dim());
  // tail convergence: local exponent of the direct integrand at large tau
  {
    double e1 = detail::integrand_exponent(A, x, 1e8, 1e10);
    double e2 = detail::integrand_exponent(A, x, 1e10, 1e12);
    double slope = std::max(e1, e2);
    if (!(slope < -1.0 - 1e-9))
      throw domain_error("modulus tail diverges: integrand exponent " + std::to_string(slope) +
                         " >= -1 at x = " + csv_row(x));
  }
  auto h = [&](double r) {
    double tau = std::pow(r, -n);
    if (!std::isfinite(tau)) return std::numeric_limits<double>::infinity();
    return A.inverse(x, tau);
  };
  auto prim = integrate_graded_left(h, 0.0, s, 1e-300, tol);
  out = prim;
  out.value = n * prim.value;
  out.abs_error_estimate = n * prim.abs_error_estimate;

  if (cross_check && prim.converged) {
    double lower = std::pow(s, -n);
    if (std::isfinite(lower)) {
      auto g = [&](double tau) {
        double p = std::pow(tau, -(n + 1.0) / n);
        if (!std::isfinite(p)) return std::numeric_limits<double>::infinity();
        return A.inverse(x, tau) * p;
      };
      auto direct = integrate_to_infinity(g, lower, 1e-300, tol);
      if (direct.converged) {
        double diff = std::abs(direct.value - out.value);
        if (diff > 10.0 * tol * std::max(1.0, std::abs(out.value)))
          throw convergence_error("modulus routes disagree: substituted " + g17(out.value) +
                                  " vs direct " + g17(direct.value));
      }
    }
  }
  return out;
}

} // namespace orlicz
