#pragma once

#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include "orlicz/errors.hpp"

namespace orlicz {

struct solve_result {
  double t = 0.0;
  double f = 0.0;
  int iterations = 0;
};

// Expand a bracket for f(t) = y on (0, inf) with f nondecreasing.  The lower
// edge halves until f <= y, the upper doubles until f >= y; +inf on the upper
// side is an acceptable bracket value.  Throws when no bracket exists within
// [floor_, cap].
template <class F>
std::pair<double, double> bracket_monotone(F&& f, double y, double start = 1.0,
                                           double floor_ = 1e-300, double cap = 1e300) {
  double lo = start, hi = start;
  double flo = f(lo);
  if (flo <= y) {
    while (true) {
      double fhi = f(hi);
      if (fhi >= y) return {lo, hi};
      lo = hi;
      hi *= 2.0;
      if (hi > cap)
        throw convergence_error("bracket expansion exceeded " + std::to_string(cap) +
                                " without reaching the target");
    }
  }
  hi = lo;
  while (true) {
    lo *= 0.5;
    if (lo < floor_)
      throw convergence_error("bracket contraction passed " + std::to_string(floor_) +
                              " without falling below the target");
    double g = f(lo);
    if (g <= y) return {lo, hi};
    hi = lo;
  }
}

namespace detail {

[[noreturn]] inline void solver_give_up(double lo, double hi, double resid, double ftol) {
  throw convergence_error("root solver stalled on bracket [" + std::to_string(lo) + ", " +
                          std::to_string(hi) + "], residual " + std::to_string(resid) +
                          " > tolerance " + std::to_string(ftol));
}

} // namespace detail

// Solve f(t) = y on [lo, hi] for nondecreasing f with f(lo) <= y <= f(hi).
// Bisection alternating with a clamped secant step; success means
// |f(t) - y| <= ftol, or the bracket collapsing to machine width.  In the
// collapsed case the returned point is the lower edge, i.e. the largest t seen
// with f(t) <= y; for a monotone f whose computed values jump across y (a
// discontinuity, or rounding granularity coarser than ftol) that edge is the
// generalized inverse and the residual is recorded in .f for the caller.
template <class F>
solve_result solve_monotone(F&& f, double y, double lo, double hi, double ftol,
                            int max_iter = 200) {
  double flo = f(lo), fhi = f(hi);
  if (!(flo <= y)) throw domain_error("solve_monotone: f(lo) > y, not a bracket");
  if (!(fhi >= y)) throw domain_error("solve_monotone: f(hi) < y, not a bracket");
  if (std::abs(flo - y) <= ftol) return {lo, flo, 0};
  if (std::isfinite(fhi) && std::abs(fhi - y) <= ftol) return {hi, fhi, 0};

  double best_r = std::abs(flo - y);
  for (int it = 1; it <= max_iter; ++it) {
    double mid;
    if (it % 2 == 0 && std::isfinite(fhi) && fhi > flo) {
      double w = hi - lo;
      mid = lo + (y - flo) / (fhi - flo) * w;
      mid = std::min(std::max(mid, lo + 0.01 * w), hi - 0.01 * w);
    } else {
      mid = 0.5 * (lo + hi);
    }
    if (!(mid > lo && mid < hi)) mid = 0.5 * (lo + hi);
    double fm = f(mid);
    if (std::isfinite(fm) && std::abs(fm - y) <= ftol) return {mid, fm, it};
    if (std::isfinite(fm) && std::abs(fm - y) < best_r) best_r = std::abs(fm - y);
    if (fm <= y) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
      fhi = fm;
    }
    if (hi - lo <= std::numeric_limits<double>::epsilon() * (std::abs(lo) + std::abs(hi)))
      return {lo, flo, it};
  }
  detail::solver_give_up(lo, hi, best_r, ftol);
}

// Same contract (including the collapsed-bracket exit), with a derivative for
// Newton steps.  Every step stays inside the current bracket; out-of-bracket
// or degenerate steps fall back to bisection, so convergence is never worse
// than halving.
template <class F, class DF>
solve_result solve_monotone(F&& f, DF&& df, double y, double lo, double hi, double ftol,
                            int max_iter = 200) {
  double flo = f(lo), fhi = f(hi);
  if (!(flo <= y)) throw domain_error("solve_monotone: f(lo) > y, not a bracket");
  if (!(fhi >= y)) throw domain_error("solve_monotone: f(hi) < y, not a bracket");
  if (std::abs(flo - y) <= ftol) return {lo, flo, 0};
  if (std::isfinite(fhi) && std::abs(fhi - y) <= ftol) return {hi, fhi, 0};

  double t = 0.5 * (lo + hi);
  double best_r = std::abs(flo - y);
  double w_prev = hi - lo;
  double r_prev = best_r;
  int slow = 0;
  for (int it = 1; it <= max_iter; ++it) {
    double ft = f(t);
    if (std::isfinite(ft) && std::abs(ft - y) <= ftol) return {t, ft, it};
    double r_cur = std::isfinite(ft) ? std::abs(ft - y) : r_prev;
    if (r_cur < best_r) best_r = r_cur;
    if (ft <= y) {
      lo = t;
      flo = ft;
    } else {
      hi = t;
      fhi = ft;
    }
    // a wrong derivative (finite differences fighting eval granularity, say)
    // can creep one-sidedly; when neither the bracket nor the residual is
    // contracting geometrically, two such steps force a bisection.  One-sided
    // but quadratically converging Newton runs stay untouched.
    double w = hi - lo;
    if (w > 0.6 * w_prev && r_cur > 0.25 * r_prev)
      ++slow;
    else
      slow = 0;
    w_prev = w;
    r_prev = r_cur;
    double tn = std::numeric_limits<double>::quiet_NaN();
    if (slow < 2 && std::isfinite(ft)) {
      double d = df(t);
      if (std::isfinite(d) && d > 0.0) tn = t - (ft - y) / d;
    }
    if (!(tn > lo && tn < hi)) {
      tn = 0.5 * (lo + hi);
      slow = 0;
    }
    t = tn;
    if (hi - lo <= std::numeric_limits<double>::epsilon() * (std::abs(lo) + std::abs(hi)))
      return {lo, flo, it};
  }
  detail::solver_give_up(lo, hi, best_r, ftol);
}

} // namespace orlicz
