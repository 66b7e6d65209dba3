#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "orlicz/domain.hpp"
#include "orlicz/errors.hpp"
#include "orlicz/expr.hpp"
#include "orlicz/roots.hpp"

namespace orlicz {

enum class family_tag { variable_exponent, log_type, double_phase, custom, derived };

// Central-difference gradient of a coefficient expression; steps scale with
// the box extents and the sampled points must stay inside the closed box.
inline std::vector<double> expr_gradient(const expr& e, const domain& d,
                                         std::span<const double> x, double rel_step = 1e-6) {
  d.require_inside(x);
  std::vector<double> g(d.dim());
  std::vector<double> xp(x.begin(), x.end()), xm(x.begin(), x.end());
  for (std::size_t i = 0; i < d.dim(); ++i) {
    double h = rel_step * d.extent(i);
    if (x[i] + h > d.upper()[i] + 1e-15 * d.extent(i) ||
        x[i] - h < d.lower()[i] - 1e-15 * d.extent(i))
      throw domain_error("point too close to the boundary in axis " + std::to_string(i + 1) +
                         " for a gradient step");
    xp[i] = x[i] + h;
    xm[i] = x[i] - h;
    g[i] = (e(xp) - e(xm)) / (xp[i] - xm[i]);
    xp[i] = x[i];
    xm[i] = x[i];
  }
  return g;
}

// Generalized N-function A(x, t): even and convex in t, vanishing only at
// t = 0, superlinear at infinity and sublinear at zero, measurable in x.
// Models are immutable; copies share state and cost a pointer.
//
// Every family gets numeric derivative, inverse, Young conjugate and
// x-gradient for free; families with closed forms override them and the
// overridden slots are exact.
class n_function {
public:
  using point_view = std::span<const double>;

  // A(x, t) = t^{p(x)} / p(x), with inf p > 1 over the box.
  static n_function variable_exponent(domain d, expr p_of_x);

  // A(x, t) = t^{p(x)} log(1 + t).
  static n_function log_type(domain d, expr p_of_x);

  // A(x, t) = t^p + alpha(x) t^q, q > p > 1, inf alpha > 0.
  static n_function double_phase(domain d, expr alpha_of_x, double p, double q);

  // A(x, t) given as an expression in x1..xn and t; everything numeric.
  static n_function custom(domain d, expr a_of_x_t);

  // --- pointwise data ----------------------------------------------------

  // A(x, |t|); throws for x off the closed box or non-finite t.
  double operator()(point_view x, double t) const {
    check_args(x, t);
    double v = t == 0.0 ? 0.0 : im_->eval(x, std::abs(t));
    if (std::isnan(v)) throw domain_error(im_->name + ": evaluation produced NaN");
    return v;
  }

  // Right derivative a(x, t) extended to an odd function of t.
  double derivative(point_view x, double t) const {
    check_args(x, t);
    if (t == 0.0) return 0.0;
    double at = std::abs(t);
    double v = im_->deriv ? im_->deriv(x, at) : numeric_derivative(x, at);
    return t < 0.0 ? -v : v;
  }

  // A^{-1}(x, y) on y >= 0: the unique t >= 0 with A(x, t) = y.
  double inverse(point_view x, double y) const {
    im_->dom.require_inside(x);
    if (!(y >= 0.0) || !std::isfinite(y))
      throw domain_error(im_->name + ": inverse needs finite y >= 0");
    if (y == 0.0) return 0.0;
    if (im_->inv) return im_->inv(x, y);
    return numeric_inverse(x, y);
  }

  // nabla_x A(x, t) at interior x.
  std::vector<double> grad_x(point_view x, double t) const {
    check_args(x, t);
    if (t == 0.0) return std::vector<double>(im_->dom.dim(), 0.0); // A(., 0) == 0
    if (im_->xgrad) return im_->xgrad(x, std::abs(t));
    return numeric_grad_x(x, std::abs(t));
  }

  // --- Young conjugate ---------------------------------------------------

  // tilde A(x, |s|) = sup_t ( |s| t - A(x, t) ).
  double conjugate(point_view x, double s) const {
    check_args(x, s);
    if (im_->conj_eval) return im_->conj_eval(x, std::abs(s));
    return conjugate_numeric(x, s);
  }

  // The numeric Legendre transform path regardless of closed forms.
  double conjugate_numeric(point_view x, double s) const {
    check_args(x, s);
    double as = std::abs(s);
    if (as == 0.0) return 0.0;
    double tstar = argmax_t(x, as);
    return as * tstar - (*this)(x, tstar);
  }

  // tilde a(x, s) = sup { t >= 0 : a(x, t) <= |s| }, the right derivative of
  // the conjugate.
  double conjugate_derivative(point_view x, double s) const {
    check_args(x, s);
    double as = std::abs(s);
    if (as == 0.0) return 0.0;
    double v = im_->conj_deriv ? im_->conj_deriv(x, as) : argmax_t(x, as);
    return s < 0.0 ? -v : v;
  }

  // tilde A^{-1}(x, y) on y >= 0.
  double conjugate_inverse(point_view x, double y) const {
    im_->dom.require_inside(x);
    if (!(y >= 0.0) || !std::isfinite(y))
      throw domain_error(im_->name + ": conjugate inverse needs finite y >= 0");
    if (y == 0.0) return 0.0;
    if (im_->conj_inv) return im_->conj_inv(x, y);
    return numeric_conjugate_inverse(x, y);
  }

  // Full model of the conjugate.  Closed form for the variable exponent
  // family; otherwise a numeric model whose x-gradient uses the identity
  // nabla_x tilde A(x, s) = -(nabla_x A)(x, tilde a(x, s)).
  n_function conjugate_model() const;

  // --- metadata ----------------------------------------------------------

  const domain& dom() const noexcept { return im_->dom; }
  family_tag tag() const noexcept { return im_->tag; }
  const std::string& family_name() const noexcept { return im_->name; }

  // inf over the box of the exponent governing growth: p(x) for the first
  // two families, the low exponent p for double phase; unknown for custom.
  std::optional<double> exponent_lower_bound() const noexcept { return im_->exp_lower; }

  bool has_analytic_derivative() const noexcept { return bool(im_->deriv); }
  bool has_analytic_inverse() const noexcept { return bool(im_->inv); }
  bool has_analytic_conjugate() const noexcept { return bool(im_->conj_eval); }
  bool has_analytic_x_gradient() const noexcept { return bool(im_->xgrad); }

private:
  struct impl {
    domain dom;
    family_tag tag = family_tag::custom;
    std::string name;
    std::optional<double> exp_lower;
    std::function<double(point_view, double)> eval; // t > 0
    std::function<double(point_view, double)> deriv;
    std::function<double(point_view, double)> inv;
    std::function<std::vector<double>(point_view, double)> xgrad;
    std::function<double(point_view, double)> conj_eval;
    std::function<double(point_view, double)> conj_deriv;
    std::function<double(point_view, double)> conj_inv;
    bool conjugate_is_variable_exponent = false;
    expr conj_exponent; // q(x) when the conjugate has VE form
    explicit impl(domain d) : dom(std::move(d)) {}
  };

  explicit n_function(std::shared_ptr<const impl> im) : im_(std::move(im)) {}

  void check_args(point_view x, double t) const {
    im_->dom.require_inside(x);
    if (!std::isfinite(t)) throw domain_error(im_->name + ": argument t must be finite");
  }

  double numeric_derivative(point_view x, double t) const {
    // central difference on a relative step; convexity keeps the estimate
    // between the one-sided derivatives at t -+ h
    double h = 1e-6 * t;
    double lo = t - h;
    double ap = im_->eval(x, t + h);
    double am = lo > 0.0 ? im_->eval(x, lo) : 0.0;
    if (!std::isfinite(ap)) {
      // overflow region: fall back to a left difference
      double a0 = im_->eval(x, t);
      return (a0 - am) / h;
    }
    return (ap - am) / (2.0 * h);
  }

  double numeric_inverse(point_view x, double y) const {
    auto f = [&](double t) { return t == 0.0 ? 0.0 : im_->eval(x, t); };
    auto [lo, hi] = bracket_monotone(f, y);
    // relative residual target: an absolute floor would let every t in the
    // region where eval underflows pass for a tiny y, flattening the inverse
    // near 0; when eval granularity is coarser than this the solver exits on
    // bracket collapse instead, which is the best the eval itself supports
    double ftol = 1e-12 * std::max(y, 1e-300);
    solve_result r;
    if (im_->deriv) {
      auto df = [&](double t) { return im_->deriv(x, t); };
      r = solve_monotone(f, df, y, lo, hi, ftol);
    } else {
      auto df = [&](double t) { return numeric_derivative(x, t); };
      r = solve_monotone(f, df, y, lo, hi, ftol);
    }
    return r.t;
  }

  std::vector<double> numeric_grad_x(point_view x, double t) const {
    const domain& d = im_->dom;
    std::vector<double> g(d.dim());
    std::vector<double> xp(x.begin(), x.end()), xm(x.begin(), x.end());
    for (std::size_t i = 0; i < d.dim(); ++i) {
      double h = 1e-6 * d.extent(i);
      if (x[i] + h > d.upper()[i] + 1e-15 * d.extent(i) ||
          x[i] - h < d.lower()[i] - 1e-15 * d.extent(i))
        throw domain_error(im_->name + ": point too close to the boundary in axis " +
                           std::to_string(i + 1) + " for a gradient step");
      xp[i] = x[i] + h;
      xm[i] = x[i] - h;
      g[i] = (im_->eval(xp, t) - im_->eval(xm, t)) / (xp[i] - xm[i]);
      xp[i] = x[i];
      xm[i] = x[i];
    }
    return g;
  }

  // sup { t : a(x, t) <= s } by predicate bisection; doubles as the Legendre
  // argmax since s t - A(x, t) peaks where a crosses s, jumps included.
  double argmax_t(point_view x, double s) const {
    auto a_of = [&](double t) { return derivative(x, t); };
    double lo = 1.0, hi = 1.0;
    if (a_of(1.0) <= s) {
      while (a_of(hi) <= s) {
        lo = hi;
        hi *= 2.0;
        if (hi > 1e300)
          throw convergence_error(im_->name + ": slope never exceeds " + std::to_string(s));
      }
    } else {
      while (a_of(lo) > s) {
        hi = lo;
        lo *= 0.5;
        if (lo < 1e-300) return 0.0; // slope exceeds s arbitrarily close to 0
      }
    }
    for (int it = 0; it < 200; ++it) {
      // the Legendre value is second-order insensitive to the argmax, so a
      // relative bracket of 1e-13 is already past double precision there
      if (hi - lo <= 1e-13 * hi) break;
      double mid = 0.5 * (lo + hi);
      if (!(mid > lo && mid < hi)) break;
      if (a_of(mid) <= s)
        lo = mid;
      else
        hi = mid;
    }
    return lo;
  }

  double numeric_conjugate_inverse(point_view x, double y) const {
    auto f = [&](double s) { return s == 0.0 ? 0.0 : conjugate_numeric_abs(x, s); };
    auto df = [&](double s) { return argmax_t(x, s); };
    auto [lo, hi] = bracket_monotone(f, y);
    double ftol = 1e-12 * std::max(y, 1e-300);
    return solve_monotone(f, df, y, lo, hi, ftol).t;
  }

  double conjugate_numeric_abs(point_view x, double s) const {
    double tstar = argmax_t(x, s);
    return s * tstar - (tstar == 0.0 ? 0.0 : im_->eval(x, tstar));
  }

  static void validate(const impl& im);
  static n_function finish(std::shared_ptr<impl> im) {
    validate(*im);
    return n_function(std::shared_ptr<const impl>(std::move(im)));
  }

  std::shared_ptr<const impl> im_;
};

// --- factories -----------------------------------------------------------

namespace detail {

// inf and sup of a coefficient over a box, scanned on a per-axis lattice.
inline std::pair<double, double> coeff_range(const expr& e, const domain& d,
                                             std::size_t per_axis = 17) {
  std::vector<std::size_t> idx(d.dim(), 0);
  std::vector<double> x(d.dim());
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  while (true) {
    for (std::size_t i = 0; i < d.dim(); ++i)
      x[i] = d.lower()[i] + d.extent(i) * double(idx[i]) / double(per_axis - 1);
    double v = e(x);
    if (!std::isfinite(v)) throw domain_error("coefficient is not finite on the box");
    lo = std::min(lo, v);
    hi = std::max(hi, v);
    std::size_t k = 0;
    while (k < idx.size() && ++idx[k] == per_axis) idx[k++] = 0;
    if (k == idx.size()) break;
  }
  return {lo, hi};
}

} // namespace detail

inline n_function n_function::variable_exponent(domain d, expr p_of_x) {
  if (p_of_x.uses_t()) throw domain_error("exponent p(x) must not reference t");
  if (p_of_x.max_variable() > d.dim())
    throw domain_error("exponent p(x) references more variables than the domain has");
  auto [p_lo, p_hi] = detail::coeff_range(p_of_x, d);
  if (!(p_lo > 1.0))
    throw domain_error("variable exponent family needs inf p > 1, found " + std::to_string(p_lo));
  auto im = std::make_shared<impl>(std::move(d));
  im->tag = family_tag::variable_exponent;
  im->name = "variable-exponent";
  im->exp_lower = p_lo;
  expr p = p_of_x;
  im->eval = [p](point_view x, double t) {
    double pv = p(x);
    return std::pow(t, pv) / pv;
  };
  im->deriv = [p](point_view x, double t) { return std::pow(t, p(x) - 1.0); };
  im->inv = [p](point_view x, double y) {
    double pv = p(x);
    return std::pow(pv * y, 1.0 / pv);
  };
  domain dm = im->dom;
  im->xgrad = [p, dm](point_view x, double t) {
    double pv = p(x);
    std::vector<double> g = expr_gradient(p, dm, x);
    double factor = t == 0.0 ? 0.0 : std::pow(t, pv) * (pv * std::log(t) - 1.0) / (pv * pv);
    for (double& gi : g) gi *= factor;
    return g;
  };
  im->conj_eval = [p](point_view x, double s) {
    double pv = p(x);
    double qv = pv / (pv - 1.0);
    return std::pow(s, qv) / qv;
  };
  im->conj_deriv = [p](point_view x, double s) { return std::pow(s, 1.0 / (p(x) - 1.0)); };
  im->conj_inv = [p](point_view x, double y) {
    double qv = p(x) / (p(x) - 1.0);
    return std::pow(qv * y, 1.0 / qv);
  };
  im->conjugate_is_variable_exponent = true;
  // q(x) = p(x) / (p(x) - 1), kept as a tree so the conjugate model can take
  // its own coefficient gradients
  im->conj_exponent =
      expr::binary(expr::binary_op::div, p,
                   expr::binary(expr::binary_op::sub, p, expr::literal(1.0)));
  return finish(std::move(im));
}

inline n_function n_function::log_type(domain d, expr p_of_x) {
  if (p_of_x.uses_t()) throw domain_error("exponent p(x) must not reference t");
  if (p_of_x.max_variable() > d.dim())
    throw domain_error("exponent p(x) references more variables than the domain has");
  auto [p_lo, p_hi] = detail::coeff_range(p_of_x, d);
  if (!(p_lo > 1.0))
    throw domain_error("log-type family needs inf p > 1, found " + std::to_string(p_lo));
  auto im = std::make_shared<impl>(std::move(d));
  im->tag = family_tag::log_type;
  im->name = "log-type";
  im->exp_lower = p_lo;
  expr p = p_of_x;
  im->eval = [p](point_view x, double t) { return std::pow(t, p(x)) * std::log1p(t); };
  im->deriv = [p](point_view x, double t) {
    double pv = p(x);
    return pv * std::pow(t, pv - 1.0) * std::log1p(t) + std::pow(t, pv) / (1.0 + t);
  };
  domain dm = im->dom;
  im->xgrad = [p, dm](point_view x, double t) {
    double pv = p(x);
    std::vector<double> g = expr_gradient(p, dm, x);
    double factor = t == 0.0 ? 0.0 : std::pow(t, pv) * std::log(t) * std::log1p(t);
    for (double& gi : g) gi *= factor;
    return g;
  };
  return finish(std::move(im));
}

inline n_function n_function::double_phase(domain d, expr alpha_of_x, double p, double q) {
  if (alpha_of_x.uses_t()) throw domain_error("weight alpha(x) must not reference t");
  if (alpha_of_x.max_variable() > d.dim())
    throw domain_error("weight alpha(x) references more variables than the domain has");
  if (!(q > p && p > 1.0))
    throw domain_error("double phase family needs q > p > 1");
  auto [a_lo, a_hi] = detail::coeff_range(alpha_of_x, d);
  if (!(a_lo > 0.0))
    throw domain_error("double phase family needs inf alpha > 0, found " + std::to_string(a_lo));
  auto im = std::make_shared<impl>(std::move(d));
  im->tag = family_tag::double_phase;
  im->name = "double-phase";
  im->exp_lower = p;
  expr alpha = alpha_of_x;
  im->eval = [alpha, p, q](point_view x, double t) {
    return std::pow(t, p) + alpha(x) * std::pow(t, q);
  };
  im->deriv = [alpha, p, q](point_view x, double t) {
    return p * std::pow(t, p - 1.0) + alpha(x) * q * std::pow(t, q - 1.0);
  };
  domain dm = im->dom;
  im->xgrad = [alpha, q, dm](point_view x, double t) {
    std::vector<double> g = expr_gradient(alpha, dm, x);
    double factor = std::pow(t, q);
    for (double& gi : g) gi *= factor;
    return g;
  };
  return finish(std::move(im));
}

inline n_function n_function::custom(domain d, expr a_of_x_t) {
  if (a_of_x_t.max_variable() > d.dim())
    throw domain_error("expression references more variables than the domain has");
  auto im = std::make_shared<impl>(std::move(d));
  im->tag = family_tag::custom;
  im->name = "custom";
  expr body = a_of_x_t;
  im->eval = [body](point_view x, double t) { return body(x, t); };
  return finish(std::move(im));
}

inline n_function n_function::conjugate_model() const {
  auto im = std::make_shared<impl>(im_->dom);
  if (im_->conjugate_is_variable_exponent) {
    return variable_exponent(im_->dom, im_->conj_exponent);
  }
  im->tag = family_tag::derived;
  im->name = "conjugate(" + im_->name + ")";
  n_function base = *this;
  im->eval = [base](point_view x, double s) { return base.conjugate(x, s); };
  im->deriv = [base](point_view x, double s) { return base.conjugate_derivative(x, s); };
  im->inv = [base](point_view x, double y) { return base.conjugate_inverse(x, y); };
  // nabla_x tilde A(x, s) = -(nabla_x A)(y, tilde a(x, s)) at y = x: the
  // envelope theorem applied to the sup defining the conjugate
  im->xgrad = [base](point_view x, double s) {
    double tstar = base.conjugate_derivative(x, s);
    std::vector<double> g = base.grad_x(x, tstar);
    for (double& gi : g) gi = -gi;
    return g;
  };
  return finish(std::move(im));
}

// --- construction checks ---------------------------------------------------

inline void n_function::validate(const impl& im) {
  if (!im.eval) throw domain_error("n_function needs an evaluation map");
  const domain& d = im.dom;
  std::vector<std::vector<double>> xs;
  {
    std::vector<std::size_t> idx(d.dim(), 0);
    while (true) {
      std::vector<double> x(d.dim());
      for (std::size_t i = 0; i < d.dim(); ++i)
        x[i] = d.lower()[i] + d.extent(i) * double(idx[i]) / 2.0;
      xs.push_back(std::move(x));
      std::size_t k = 0;
      while (k < idx.size() && ++idx[k] == 3) idx[k++] = 0;
      if (k == idx.size()) break;
    }
  }
  // the grid starts at 1e-6: below that, expression bodies with leading-term
  // cancellation (exp(t)-t-1 and friends) drown in rounding noise
  std::vector<double> ts;
  for (int k = 0; k <= 28; ++k) ts.push_back(std::pow(10.0, -6.0 + 0.5 * k));

  for (const auto& x : xs) {
    std::vector<double> av(ts.size());
    for (std::size_t i = 0; i < ts.size(); ++i) {
      double v = im.eval(x, ts[i]);
      if (std::isnan(v)) throw domain_error(im.name + ": A produced NaN during validation");
      if (std::isfinite(v) && v <= 0.0)
        throw domain_error(im.name + ": A(x, t) must be positive for t > 0");
      av[i] = v;
    }
    for (std::size_t i = 0; i + 1 < ts.size(); ++i) {
      if (std::isfinite(av[i]) && std::isfinite(av[i + 1]) && av[i + 1] < av[i] * (1.0 - 1e-12))
        throw domain_error(im.name + ": A is not nondecreasing in t");
    }
    // midpoint convexity on geometric triples
    for (std::size_t i = 0; i + 2 < ts.size(); ++i) {
      if (!std::isfinite(av[i + 2])) break;
      double tm = 0.5 * (ts[i] + ts[i + 2]);
      double lhs = im.eval(x, tm);
      double rhs = 0.5 * (av[i] + av[i + 2]);
      if (lhs > rhs * (1.0 + 1e-10) + 1e-300)
        throw domain_error(im.name + ": A fails midpoint convexity near t = " +
                           std::to_string(tm));
    }
    // superlinear growth at both ends: local log-log slope of A against t
    double s0 = std::log(av[1] / av[0]) / std::log(ts[1] / ts[0]);
    if (!(s0 > 1.0 + 1e-6))
      throw domain_error(im.name + ": A(x, t)/t does not vanish as t -> 0 (slope " +
                         std::to_string(s0) + ")");
    std::size_t last = ts.size() - 1;
    while (last > 1 && !std::isfinite(av[last])) --last;
    double s1 = std::log(av[last] / av[last - 1]) / std::log(ts[last] / ts[last - 1]);
    if (!(s1 > 1.0 + 1e-6))
      throw domain_error(im.name + ": A(x, t)/t does not grow without bound (slope " +
                         std::to_string(s1) + ")");
  }
}

} // namespace orlicz
