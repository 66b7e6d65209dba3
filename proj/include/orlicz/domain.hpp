#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "orlicz/errors.hpp"

namespace orlicz {

// Axis-aligned box in R^n, n >= 2.  The closed box is the habitat of every
// x argument in the library; evaluation off the box throws.
class domain {
public:
  domain(std::vector<double> lower, std::vector<double> upper)
      : lo_(std::move(lower)), hi_(std::move(upper)) {
    if (lo_.size() != hi_.size())
      throw domain_error("domain bounds have mismatched dimensions");
    if (lo_.size() < 2) throw domain_error("domain dimension must be >= 2");
    for (std::size_t i = 0; i < lo_.size(); ++i) {
      if (!std::isfinite(lo_[i]) || !std::isfinite(hi_[i]))
        throw domain_error("domain bounds must be finite");
      if (!(lo_[i] < hi_[i]))
        throw domain_error("domain bounds must satisfy lower < upper in axis " +
                           std::to_string(i + 1));
    }
  }

  std::size_t dim() const noexcept { return lo_.size(); }
  std::span<const double> lower() const noexcept { return lo_; }
  std::span<const double> upper() const noexcept { return hi_; }
  double extent(std::size_t axis) const { return hi_[axis] - lo_[axis]; }

  double volume() const {
    double v = 1.0;
    for (std::size_t i = 0; i < dim(); ++i) v *= extent(i);
    return v;
  }

  double diameter() const {
    double s = 0.0;
    for (std::size_t i = 0; i < dim(); ++i) s += extent(i) * extent(i);
    return std::sqrt(s);
  }

  double min_extent() const {
    double m = extent(0);
    for (std::size_t i = 1; i < dim(); ++i) m = std::min(m, extent(i));
    return m;
  }

  std::vector<double> center() const {
    std::vector<double> c(dim());
    for (std::size_t i = 0; i < dim(); ++i) c[i] = 0.5 * (lo_[i] + hi_[i]);
    return c;
  }

  // Closed-box membership with an absolute slack per axis.
  bool contains(std::span<const double> x, double slack = 0.0) const {
    if (x.size() != dim()) return false;
    for (std::size_t i = 0; i < dim(); ++i) {
      if (!(x[i] >= lo_[i] - slack) || !(x[i] <= hi_[i] + slack)) return false;
    }
    return true;
  }

  // Distance to the boundary of the box; positive inside, negative outside.
  // For a box this equals the min over axes of the one-sided gaps.
  double boundary_distance(std::span<const double> x) const {
    double d = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < dim(); ++i) {
      d = std::min(d, x[i] - lo_[i]);
      d = std::min(d, hi_[i] - x[i]);
    }
    return d;
  }

  void require_inside(std::span<const double> x, double slack = 1e-12) const {
    if (x.size() != dim())
      throw domain_error("point dimension " + std::to_string(x.size()) +
                         " does not match domain dimension " + std::to_string(dim()));
    for (std::size_t i = 0; i < dim(); ++i) {
      double s = slack * std::max(1.0, extent(i));
      if (!(x[i] >= lo_[i] - s) || !(x[i] <= hi_[i] + s))
        throw domain_error("point lies outside the domain in axis " + std::to_string(i + 1));
    }
  }

  bool operator==(const domain& o) const { return lo_ == o.lo_ && hi_ == o.hi_; }

private:
  std::vector<double> lo_, hi_;
};

} // namespace orlicz
