#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

#include "orlicz/errors.hpp"

namespace orlicz {

struct quadrature_result {
  double value = 0.0;
  double abs_error_estimate = 0.0;
  int subdivisions = 0;
  bool converged = false;
};

namespace detail {

// Gauss 7 / Kronrod 15 nodes and weights (positive half).
inline constexpr double gk15_x[8] = {
    0.9914553711208126392068546975263285, 0.9491079123427585245261896840478513,
    0.8648644233597690727897127886409262, 0.7415311855993944398638647732807884,
    0.5860872354676911302941448382587296, 0.4058451513773971669066064120769615,
    0.2077849550078984676006894037732449, 0.0};
inline constexpr double gk15_wk[8] = {
    0.0229353220105292249637320080589695, 0.0630920926299785532907006631892042,
    0.1047900103222501838398763225415180, 0.1406532597155259187451895905102379,
    0.1690047266392679028265834265985503, 0.1903505780647854099132564024210137,
    0.2044329400752988924141619992346491, 0.2094821410847278280129991748917143};
inline constexpr double gk15_wg[4] = {
    0.1294849661688696932706114326790820, 0.2797053914892766679014677714237796,
    0.3818300505051189449503697754889751, 0.4179591836734693877551020408163265};

struct panel {
  double a = 0.0, b = 0.0;
  double value = 0.0;
  double err = 0.0;
  int band = -1; // dyadic grading level, -1 for ordinary panels
};

// One Gauss-Kronrod pass over [a, b]; the error term is the raw |K15 - G7|
// difference, a deliberate overestimate.  Endpoints are never evaluated.
template <class F>
panel gk15(F&& f, double a, double b) {
  double c = 0.5 * (a + b), h = 0.5 * (b - a);
  double fc = f(c);
  double resk = gk15_wk[7] * fc;
  double resg = gk15_wg[3] * fc;
  for (int j = 0; j < 7; ++j) {
    double dx = h * gk15_x[j];
    double f1 = f(c - dx), f2 = f(c + dx);
    resk += gk15_wk[j] * (f1 + f2);
    if (j % 2 == 1) resg += gk15_wg[j / 2] * (f1 + f2);
  }
  panel p;
  p.a = a;
  p.b = b;
  p.value = resk * h;
  p.err = std::abs((resk - resg) * h);
  if (!std::isfinite(p.value)) p.err = std::numeric_limits<double>::infinity();
  return p;
}

inline double sum_values(const std::vector<panel>& ps) {
  // Kahan over creation order keeps the sum independent of refinement order.
  double s = 0.0, comp = 0.0;
  for (const panel& p : ps) {
    double y = p.value - comp;
    double t = s + y;
    comp = (t - s) - y;
    s = t;
  }
  return s;
}

inline double sum_errors(const std::vector<panel>& ps) {
  double s = 0.0;
  for (const panel& p : ps) s += p.err;
  return s;
}

inline std::size_t worst_panel(const std::vector<panel>& ps) {
  std::size_t w = 0;
  for (std::size_t i = 1; i < ps.size(); ++i)
    if (ps[i].err > ps[w].err) w = i;
  return w;
}

} // namespace detail

// Adaptive quadrature over a finite interval with no endpoint trouble.
template <class F>
quadrature_result integrate(F&& f, double a, double b, double abs_tol = 1e-12,
                            double rel_tol = 1e-10, int max_panels = 2000) {
  using namespace detail;
  quadrature_result r;
  if (a == b) {
    r.converged = true;
    return r;
  }
  std::vector<panel> ps;
  ps.push_back(gk15(f, a, b));
  while (true) {
    double total = sum_values(ps);
    double err = sum_errors(ps);
    double tol = std::max(abs_tol, rel_tol * std::abs(total));
    if (err <= tol) {
      r.value = total;
      r.abs_error_estimate = err;
      r.subdivisions = int(ps.size());
      r.converged = true;
      return r;
    }
    if (int(ps.size()) >= max_panels) {
      r.value = total;
      r.abs_error_estimate = err;
      r.subdivisions = int(ps.size());
      r.converged = false;
      return r;
    }
    std::size_t w = worst_panel(ps);
    double wa = ps[w].a, wb = ps[w].b, wm = 0.5 * (wa + wb);
    if (!(wm > wa && wm < wb)) {
      // panel is at floating point resolution; freeze it
      ps[w].err = 0.0;
      continue;
    }
    ps[w] = gk15(f, wa, wm);
    ps.push_back(gk15(f, wm, wb));
  }
}

// Quadrature over [a, b] for an integrand with an integrable blow-up at the
// left endpoint.  Panels are graded geometrically toward a; the unresolved
// remainder below the deepest panel is extrapolated from the geometric decay
// of consecutive panel sums and both added to the value and charged to the
// error bar in proportion to how unsteady the decay ratio is.
template <class F>
quadrature_result integrate_graded_left(F&& f, double a, double b, double abs_tol = 1e-12,
                                        double rel_tol = 1e-10, int max_panels = 4000) {
  using namespace detail;
  quadrature_result res;
  if (a == b) {
    res.converged = true;
    return res;
  }
  double h = b - a;
  std::vector<panel> ps;      // all live panels, creation order
  std::vector<double> ladder; // band integrals; band k covers [a+h/2^{k+1}, a+h/2^k]
  int depth = 0;
  const int depth_cap = 340;
  bool hit_overflow = false;
  bool tail_stalled = false;

  // Six consecutive band ratios at or above 0.98 with the newest at or above
  // one: the tail has stopped decaying and no amount of extra grading will
  // let the geometric model price it.  Happens for true divergence and for
  // eval noise floors alike; both end at the truncation pricing below.
  auto stalled_tail = [&ladder]() {
    std::size_t m = ladder.size();
    if (m < 7) return false;
    if (!(std::abs(ladder[m - 1]) >= std::abs(ladder[m - 2]))) return false;
    for (std::size_t i = m - 6; i < m; ++i) {
      double r = std::abs(ladder[i]) / std::abs(ladder[i - 1]);
      if (!(r >= 0.98)) return false;
    }
    return true;
  };

  // Below width_floor the panel edges a + h/2^k lose relative resolution
  // against |a| and band values turn into rounding noise; the extrapolated
  // stub has to carry everything underneath.  For a == 0 the floor is only
  // bounded by the double exponent range and grading runs very deep.
  const double width_floor = std::max(std::abs(a) * 1e-8, 1e-290);

  auto deepen = [&](int levels) {
    bool grew = false;
    for (int i = 0; i < levels && depth < depth_cap && !hit_overflow && !tail_stalled; ++i) {
      double hi_edge = h * std::ldexp(1.0, -depth);
      if (0.5 * hi_edge <= width_floor) {
        hit_overflow = true;
        break;
      }
      panel p = gk15(f, a + 0.5 * hi_edge, a + hi_edge);
      if (!std::isfinite(p.value)) {
        hit_overflow = true; // values blew past double range; stop grading here
        break;
      }
      p.band = depth;
      ps.push_back(p);
      ladder.push_back(p.value);
      ++depth;
      grew = true;
      if (stalled_tail()) {
        tail_stalled = true;
        break;
      }
    }
    return grew;
  };

  deepen(48);

  // Geometric model for everything below band k-1.  For a pure power
  // integrand the band ratios are exactly constant and the extrapolation is
  // exact; the drift between consecutive ratios prices the model error.
  auto stub_at = [&](std::size_t k, double& stub, double& unc) {
    stub = 0.0;
    unc = 0.0;
    if (k < 3) {
      unc = std::numeric_limits<double>::infinity();
      return;
    }
    double v2 = ladder[k - 1], v1 = ladder[k - 2], v0 = ladder[k - 3];
    if (v2 == 0.0) return; // integrand dead below resolution
    double sign = 1.0;
    if (v2 < 0.0 && v1 < 0.0 && v0 < 0.0) {
      sign = -1.0;
      v2 = -v2;
      v1 = -v1;
      v0 = -v0;
    }
    if (!(v1 > 0.0 && v2 > 0.0 && v0 > 0.0)) {
      unc = std::abs(v2); // sign changes at depth: no model, charge a panel
      return;
    }
    double rho = v2 / v1, prev = v1 / v0;
    if (!(rho < 1.0)) {
      unc = std::numeric_limits<double>::infinity(); // not decaying: divergence suspect
      return;
    }
    stub = sign * v2 * rho / (1.0 - rho);
    double drift = std::abs(rho - prev);
    double mag = v2 * rho / (1.0 - rho);
    unc = mag * std::min(1.0, 3.0 * drift / (1.0 - rho)) + mag * 1e-12;
  };

  // Price the estimate with the grading truncated at band d: panels of bands
  // >= d are dropped and replaced by the geometric stub seeded from bands
  // d-3..d-1.  When an eval's own rounding floor turns deep bands into noise
  // (numeric inverses collapse to a granularity plateau and the tail mimics
  // divergence), the clean prefix still prices honestly.
  auto priced_at = [&](int d) {
    quadrature_result r;
    double s = 0.0, c = 0.0, perr = 0.0;
    for (const panel& p : ps) {
      if (p.band >= d) continue;
      double yv = p.value - c;
      double tv = s + yv;
      c = (tv - s) - yv;
      s = tv;
      perr += std::abs(p.err);
    }
    double stub, sunc;
    stub_at(std::size_t(d), stub, sunc);
    r.value = s + stub;
    r.abs_error_estimate = perr + sunc;
    r.subdivisions = int(ps.size());
    r.converged =
        r.abs_error_estimate <= std::max(abs_tol, rel_tol * std::abs(r.value));
    return r;
  };
  auto best_truncation = [&]() {
    quadrature_result best = priced_at(int(ladder.size()));
    for (int d = 3; d < int(ladder.size()); ++d) {
      quadrature_result r = priced_at(d);
      if (r.abs_error_estimate < best.abs_error_estimate) best = r;
    }
    return best;
  };

  while (true) {
    double stub, stub_unc;
    stub_at(ladder.size(), stub, stub_unc);
    double total = sum_values(ps) + stub;
    double perr = sum_errors(ps);
    double err = perr + stub_unc;
    double tol = std::max(abs_tol, rel_tol * std::abs(total));
    if (err <= tol) {
      res.value = total;
      res.abs_error_estimate = err;
      res.subdivisions = int(ps.size());
      res.converged = true;
      return res;
    }
    bool moved = false;
    if (stub_unc > 0.3 * tol) moved = deepen(16);
    // an unpriceable stub makes the running error infinite; once grading is
    // exhausted no sequence of panel splits can converge it
    if (!std::isfinite(stub_unc) && !moved) return best_truncation();
    if (perr > 0.5 * tol && int(ps.size()) < max_panels) {
      std::size_t w = worst_panel(ps);
      // the three deepest bands feed the extrapolation and stay whole;
      // pushing the grading deeper is the way to shrink their share
      bool protected_band = ps[w].band >= 0 && ps[w].band >= depth - 3;
      double wa = ps[w].a, wb = ps[w].b, wm = 0.5 * (wa + wb);
      if (protected_band) {
        if (deepen(16)) moved = true;
      } else if (wm > wa && wm < wb && std::isfinite(ps[w].err)) {
        panel left = gk15(f, wa, wm);
        panel right = gk15(f, wm, wb);
        left.band = ps[w].band; // fragments keep their band for truncation pricing
        right.band = ps[w].band;
        ps[w] = left;
        ps.push_back(right);
        moved = true;
      } else if (ps[w].err > 0.0 && std::isfinite(ps[w].err)) {
        ps[w].err = 0.0; // at floating point resolution; freeze
        moved = true;
      }
    }
    if (!moved) return best_truncation();
  }
}

// \int_a^\infty f, a > 0, for integrands decaying faster than 1/tau.  The
// inversion r = 1/tau turns the tail into a left-endpoint blow-up on
// (0, 1/a], which the graded rule above already handles.
template <class F>
quadrature_result integrate_to_infinity(F&& f, double a, double abs_tol = 1e-12,
                                        double rel_tol = 1e-10, int max_panels = 4000) {
  if (!(a > 0.0)) throw domain_error("tail integral needs a positive lower limit");
  auto g = [&f](double r) { return f(1.0 / r) / (r * r); };
  return integrate_graded_left(g, 0.0, 1.0 / a, abs_tol, rel_tol, max_panels);
}

} // namespace orlicz
