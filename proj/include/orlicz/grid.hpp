#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <cstring>
#include <istream>
#include <limits>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "orlicz/domain.hpp"
#include "orlicz/errors.hpp"
#include "orlicz/expr.hpp"
#include "orlicz/format.hpp"

namespace orlicz {

// Scalar samples at the midpoints of a uniform m^n cell lattice over the
// box.  Row-major with the last axis fastest: cell (i_1, ..., i_n) lives at
// flat index i_1 m^{n-1} + ... + i_n.  Midpoints keep every sample strictly
// interior, where coefficient gradients exist and test functions cannot hit
// corner singularities.
class grid_function {
public:
  grid_function(domain d, std::size_t m)
      : dom_(std::move(d)), m_(m), values_(checked_size(dom_, m), 0.0) {}

  template <class F>
  static grid_function from(domain d, std::size_t m, F&& f) {
    grid_function g(std::move(d), m);
    std::vector<double> x(g.dim());
    for (std::size_t i = 0; i < g.size(); ++i) {
      g.center(i, x);
      double v;
      try {
        v = f(std::span<const double>(x));
      } catch (const domain_error& e) {
        throw domain_error(std::string(e.what()) + " in cell " + std::to_string(i));
      }
      if (!std::isfinite(v))
        throw domain_error("sample produced a non-finite value in cell " + std::to_string(i));
      g.values_[i] = v;
    }
    return g;
  }

  static grid_function sample(const expr& e, domain d, std::size_t m) {
    if (e.uses_t()) throw domain_error("grid samples take expressions in x only");
    if (e.max_variable() > d.dim())
      throw domain_error("expression references more variables than the domain has");
    return from(std::move(d), m, [&e](std::span<const double> x) { return e(x); });
  }

  std::size_t dim() const noexcept { return dom_.dim(); }
  std::size_t resolution() const noexcept { return m_; }
  std::size_t size() const noexcept { return values_.size(); }
  const domain& dom() const noexcept { return dom_; }

  std::span<const double> values() const noexcept { return values_; }
  double operator[](std::size_t flat) const { return values_.at(flat); }
  double& operator[](std::size_t flat) { return values_.at(flat); }

  double cell_width(std::size_t axis) const { return dom_.extent(axis) / double(m_); }
  double cell_volume() const {
    double v = 1.0;
    for (std::size_t i = 0; i < dim(); ++i) v *= cell_width(i);
    return v;
  }

  std::size_t flatten(std::span<const std::size_t> idx) const {
    std::size_t f = 0;
    for (std::size_t i = 0; i < dim(); ++i) f = f * m_ + idx[i];
    return f;
  }

  void unflatten(std::size_t flat, std::span<std::size_t> idx) const {
    for (std::size_t i = dim(); i-- > 0;) {
      idx[i] = flat % m_;
      flat /= m_;
    }
  }

  void center(std::size_t flat, std::span<double> out) const {
    for (std::size_t i = dim(); i-- > 0;) {
      std::size_t c = flat % m_;
      flat /= m_;
      out[i] = dom_.lower()[i] + (double(c) + 0.5) * cell_width(i);
    }
  }

  std::vector<double> center(std::size_t flat) const {
    std::vector<double> x(dim());
    center(flat, x);
    return x;
  }

  // Cell whose center is nearest to x; coordinates clamp to the box first.
  std::size_t nearest_index(std::span<const double> x) const {
    if (x.size() != dim()) throw domain_error("point dimension does not match the grid");
    std::size_t f = 0;
    for (std::size_t i = 0; i < dim(); ++i) {
      double rel = (x[i] - dom_.lower()[i]) / cell_width(i) - 0.5;
      long j = std::lround(rel);
      j = std::clamp(j, 0L, long(m_) - 1L);
      f = f * m_ + std::size_t(j);
    }
    return f;
  }

  // --- serialization -----------------------------------------------------
  // CSV: "n,m" header, lower bounds, upper bounds, then values m per line.
  // Doubles print with 17 significant digits, so a text round trip is exact.

  void write_csv(std::ostream& os) const {
    os << dim() << "," << m_ << "\n";
    for (std::size_t i = 0; i < dim(); ++i) os << (i ? "," : "") << g17(dom_.lower()[i]);
    os << "\n";
    for (std::size_t i = 0; i < dim(); ++i) os << (i ? "," : "") << g17(dom_.upper()[i]);
    os << "\n";
    for (std::size_t i = 0; i < size(); ++i) {
      os << g17(values_[i]);
      os << ((i + 1) % m_ == 0 ? "\n" : ",");
    }
  }

  static grid_function read_csv(std::istream& is) {
    auto fields = [](std::istream& s) {
      std::string line;
      if (!std::getline(s, line)) throw domain_error("grid stream ended early");
      std::vector<std::string> out;
      std::stringstream ls(line);
      std::string cell;
      while (std::getline(ls, cell, ',')) out.push_back(cell);
      return out;
    };
    auto num = [](const std::string& s) {
      char* end = nullptr;
      double v = std::strtod(s.c_str(), &end);
      if (end == s.c_str() || *end != '\0')
        throw domain_error("grid stream holds a malformed number: " + s);
      return v;
    };
    auto head = fields(is);
    if (head.size() != 2) throw domain_error("grid header must be n,m");
    std::size_t n = std::size_t(num(head[0])), m = std::size_t(num(head[1]));
    auto los = fields(is), his = fields(is);
    if (los.size() != n || his.size() != n)
      throw domain_error("grid bounds do not match the header dimension");
    std::vector<double> lo(n), hi(n);
    for (std::size_t i = 0; i < n; ++i) {
      lo[i] = num(los[i]);
      hi[i] = num(his[i]);
    }
    grid_function g(domain(lo, hi), m);
    std::size_t seen = 0;
    while (seen < g.size()) {
      auto row = fields(is);
      for (const auto& cell : row) {
        if (seen >= g.size()) throw domain_error("grid stream holds too many values");
        g.values_[seen++] = num(cell);
      }
    }
    return g;
  }

  // Flat binary: u32 n, u32 m, then lower, upper, values as IEEE doubles,
  // all little endian regardless of host.

  void write_binary(std::ostream& os) const {
    put_u32(os, std::uint32_t(dim()));
    put_u32(os, std::uint32_t(m_));
    for (std::size_t i = 0; i < dim(); ++i) put_f64(os, dom_.lower()[i]);
    for (std::size_t i = 0; i < dim(); ++i) put_f64(os, dom_.upper()[i]);
    for (double v : values_) put_f64(os, v);
  }

  static grid_function read_binary(std::istream& is) {
    std::size_t n = get_u32(is), m = get_u32(is);
    if (n < 2 || n > 16) throw domain_error("grid stream carries an implausible dimension");
    std::vector<double> lo(n), hi(n);
    for (std::size_t i = 0; i < n; ++i) lo[i] = get_f64(is);
    for (std::size_t i = 0; i < n; ++i) hi[i] = get_f64(is);
    grid_function g(domain(lo, hi), m);
    for (std::size_t i = 0; i < g.size(); ++i) g.values_[i] = get_f64(is);
    return g;
  }

private:
  static std::size_t checked_size(const domain& d, std::size_t m) {
    if (m < 2) throw domain_error("grid resolution must be at least 2 per axis");
    std::size_t t = 1;
    for (std::size_t i = 0; i < d.dim(); ++i) {
      if (t > std::numeric_limits<std::size_t>::max() / m)
        throw domain_error("grid resolution overflows the index space");
      t *= m;
    }
    return t;
  }

  static void put_u32(std::ostream& os, std::uint32_t v) {
    char b[4];
    for (int i = 0; i < 4; ++i) b[i] = char((v >> (8 * i)) & 0xff);
    os.write(b, 4);
  }
  static void put_f64(std::ostream& os, double d) {
    std::uint64_t v;
    std::memcpy(&v, &d, 8);
    char b[8];
    for (int i = 0; i < 8; ++i) b[i] = char((v >> (8 * i)) & 0xff);
    os.write(b, 8);
  }
  static std::uint32_t get_u32(std::istream& is) {
    char b[4];
    if (!is.read(b, 4)) throw domain_error("grid stream ended early");
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= std::uint32_t(std::uint8_t(b[i])) << (8 * i);
    return v;
  }
  static double get_f64(std::istream& is) {
    char b[8];
    if (!is.read(b, 8)) throw domain_error("grid stream ended early");
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= std::uint64_t(std::uint8_t(b[i])) << (8 * i);
    double d;
    std::memcpy(&d, &v, 8);
    return d;
  }

  domain dom_;
  std::size_t m_;
  std::vector<double> values_;
};

struct gradient_field {
  std::vector<grid_function> components; // one grid per axis
  grid_function magnitude;
};

// Finite-difference gradient on the midpoint lattice: central differences in
// the interior, second-order one-sided stencils on the faces.  Exact for
// quadratics cell by cell, hence exact for affine data everywhere.
inline gradient_field gradient(const grid_function& u) {
  std::size_t m = u.resolution();
  if (m < 4) throw domain_error("gradient needs at least 4 samples per axis");
  std::size_t n = u.dim();

  std::vector<std::size_t> stride(n);
  stride[n - 1] = 1;
  for (std::size_t k = n - 1; k-- > 0;) stride[k] = stride[k + 1] * m;

  gradient_field out{{}, grid_function(u.dom(), m)};
  out.components.reserve(n);
  for (std::size_t k = 0; k < n; ++k) out.components.emplace_back(u.dom(), m);

  std::vector<std::size_t> idx(n);
  for (std::size_t f = 0; f < u.size(); ++f) {
    u.unflatten(f, idx);
    double mag2 = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      double h = u.cell_width(k);
      std::size_t s = stride[k];
      double d;
      if (idx[k] == 0)
        d = (-3.0 * u[f] + 4.0 * u[f + s] - u[f + 2 * s]) / (2.0 * h);
      else if (idx[k] == m - 1)
        d = (3.0 * u[f] - 4.0 * u[f - s] + u[f - 2 * s]) / (2.0 * h);
      else
        d = (u[f + s] - u[f - s]) / (2.0 * h);
      out.components[k][f] = d;
      mag2 += d * d;
    }
    out.magnitude[f] = std::sqrt(mag2);
  }
  return out;
}

} // namespace orlicz
