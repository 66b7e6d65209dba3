#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <limits>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "orlicz/calculus.hpp"
#include "orlicz/conditions.hpp"
#include "orlicz/grid.hpp"
#include "orlicz/modular.hpp"
#include "orlicz/nfunction.hpp"
#include "orlicz/rng.hpp"

namespace orlicz {

// Explicit constant of the pointwise oscillation estimate: 16 / (4^{1/n} sqrt n).
inline double morrey_constant(std::size_t n) {
  if (n < 2) throw domain_error("dimension must be at least 2");
  double nn = double(n);
  return 16.0 / (std::pow(4.0, 1.0 / nn) * std::sqrt(nn));
}

// Middle term of the radius selection: (4^{1+delta} / (C sqrt n))^{1/(1 - n delta)}.
// A vanishing C sends the cap to infinity; there is no coefficient variation
// to protect against.
inline double sigma_growth_cap(double C, double delta, std::size_t n) {
  if (!(delta > 0.0) || !(double(n) * delta < 1.0))
    throw domain_error("growth exponent must satisfy 0 < n delta < 1");
  if (!(C >= 0.0)) throw domain_error("growth constant must be nonnegative");
  if (C == 0.0) return std::numeric_limits<double>::infinity();
  double base = std::pow(4.0, 1.0 + delta) / (C * std::sqrt(double(n)));
  return std::pow(base, 1.0 / (1.0 - double(n) * delta));
}

// Cube side length around x: the smallest of the scan radius sigma0, the
// conjugate growth cap, and the boundary clearance dist(x, boundary)/sqrt n.
// The clearance keeps the closed cube of side sigma inside the box with its
// half diagonal to spare.  sigma0 <= 0 requests the default 0.25 diam.
inline double select_sigma_from(const condition_report& conj_growth, const domain& d,
                                std::span<const double> x, double sigma0 = 0.0) {
  if (!conj_growth.passed)
    throw domain_error("conjugate growth certification failed; no radius selection without it");
  d.require_inside(x);
  double C = conj_growth.constant("C_tilde");
  double delta = conj_growth.constant("delta_tilde");
  double s0 = sigma0 > 0.0 ? sigma0 : 0.25 * d.diameter();
  double cap = sigma_growth_cap(C, delta, d.dim());
  double clear = d.boundary_distance(x) / std::sqrt(double(d.dim()));
  return std::min({s0, cap, clear});
}

inline double select_sigma(const n_function& A, std::span<const double> x, double sigma0 = 0.0) {
  return select_sigma_from(check_P5_tilde(A), A.dom(), x, sigma0);
}

// Flat indices of the lattice centers inside the closed cube of side c at x,
// emitted with the last axis fastest.  Empty when the cube misses every
// center.
inline std::vector<std::size_t> cube_lattice(const grid_function& u, std::span<const double> x,
                                             double c) {
  u.dom().require_inside(x);
  if (!(c > 0.0) || !std::isfinite(c)) throw domain_error("cube side must be positive");
  std::size_t n = u.dim(), m = u.resolution();
  std::vector<std::size_t> lo(n), count(n);
  for (std::size_t k = 0; k < n; ++k) {
    double h = u.cell_width(k);
    double a = (x[k] - c / 2.0 - u.dom().lower()[k]) / h - 0.5;
    double b = (x[k] + c / 2.0 - u.dom().lower()[k]) / h - 0.5;
    long i0 = std::max(long(std::ceil(a - 1e-9)), 0L);
    long i1 = std::min(long(std::floor(b + 1e-9)), long(m) - 1L);
    if (i1 < i0) return {};
    lo[k] = std::size_t(i0);
    count[k] = std::size_t(i1 - i0 + 1);
  }
  std::vector<std::size_t> flats;
  std::vector<std::size_t> idx(n, 0);
  for (;;) {
    std::size_t f = 0;
    for (std::size_t k = 0; k < n; ++k) f = f * m + lo[k] + idx[k];
    flats.push_back(f);
    std::size_t k = n;
    for (;;) {
      if (k == 0) return flats;
      --k;
      if (++idx[k] < count[k]) break;
      idx[k] = 0;
    }
  }
}

// Continuity modulus memoized on the bit pattern of the distance.  Lattice
// differences repeat heavily, so a pair sweep touches few distinct values.
using modulus_cache = std::unordered_map<std::uint64_t, double>;

inline double cached_modulus(const n_function& A, std::span<const double> x, double dist,
                             double tol, modulus_cache* cache) {
  std::uint64_t key = 0;
  if (cache) {
    std::memcpy(&key, &dist, 8);
    auto it = cache->find(key);
    if (it != cache->end()) return it->second;
  }
  auto q = morrey_modulus(A, x, dist, tol, false);
  if (!q.converged)
    throw convergence_error("continuity modulus did not converge at s = " + g17(dist));
  if (cache) cache->emplace(key, q.value);
  return q.value;
}

// Certification bundle the empirical check needs; compute once per family
// and share across many grid functions.
struct morrey_certificate {
  condition_report doubling;
  condition_report conj_doubling;
  condition_report conj_growth;
};

inline morrey_certificate certify_for_morrey(const n_function& A) {
  return {check_delta2(A), check_delta2(A.conjugate_model()), check_P5_tilde(A)};
}

struct morrey_report {
  std::vector<double> center;
  double sigma = 0.0;
  double constant_reference = 0.0; // 16 / (4^{1/n} sqrt n)
  double max_ratio = 0.0;
  std::vector<double> arg_y1, arg_y2; // worst pair, empty when every ratio is zero
  std::size_t samples = 0;            // distinct pairs evaluated
  double grad_norm = 0.0;
  std::string family;
  std::size_t resolution = 0;
  std::uint64_t seed = 0;
};

// Oscillation ratios |u(y1) - u(y2)| / (||grad u||_A mu(x, |y1 - y2|)) over
// seeded lattice pairs in the cube of side sigma at x, reported against the
// reference constant.  The pair stream is stable: each pair is two
// consecutive index draws below the cube point count on rng(seed), so runs
// are replayable and filters to sub-cubes can reuse the stream.
inline morrey_report empirical_morrey_check(const n_function& A, const grid_function& u,
                                            std::span<const double> x, std::size_t pairs,
                                            std::uint64_t seed, double sigma0 = 0.0,
                                            modulus_cache* cache = nullptr,
                                            const morrey_certificate* cert = nullptr,
                                            double mu_tol = 1e-8) {
  if (u.resolution() < 64)
    throw domain_error("empirical check needs at least 64 samples per axis");
  if (!(A.dom() == u.dom()))
    throw domain_error("check needs the family and the grid on one domain");
  if (pairs == 0) throw domain_error("pair budget must be positive");

  morrey_certificate local;
  if (!cert) {
    local = certify_for_morrey(A);
    cert = &local;
  }
  if (!cert->doubling.passed || !cert->conj_doubling.passed)
    throw domain_error("doubling certification failed for the family or its conjugate");
  double sigma = select_sigma_from(cert->conj_growth, A.dom(), x, sigma0);

  // geometry guard: the closed cube must sit inside the box
  for (std::size_t k = 0; k < u.dim(); ++k)
    if (x[k] - sigma / 2.0 < A.dom().lower()[k] - 1e-12 ||
        x[k] + sigma / 2.0 > A.dom().upper()[k] + 1e-12)
      throw domain_error("selected cube escapes the domain");

  auto flats = cube_lattice(u, x, sigma);
  if (flats.size() < 2) throw domain_error("cube holds fewer than two lattice points");

  morrey_report rep;
  rep.center.assign(x.begin(), x.end());
  rep.sigma = sigma;
  rep.constant_reference = morrey_constant(u.dim());
  rep.grad_norm = gradient_norm(A, u);
  rep.family = A.family_name();
  rep.resolution = u.resolution();
  rep.seed = seed;

  rng r(seed);
  std::vector<double> y1(u.dim()), y2(u.dim());
  for (std::size_t k = 0; k < pairs; ++k) {
    std::size_t f1 = flats[r.below(flats.size())];
    std::size_t f2 = flats[r.below(flats.size())];
    if (f1 == f2) continue;
    ++rep.samples;
    double num = std::abs(u[f1] - u[f2]);
    if (num == 0.0) continue;
    u.center(f1, y1);
    u.center(f2, y2);
    double d2 = 0.0;
    for (std::size_t j = 0; j < u.dim(); ++j) d2 += (y1[j] - y2[j]) * (y1[j] - y2[j]);
    double mu = cached_modulus(A, x, std::sqrt(d2), mu_tol, cache);
    double ratio = num / (rep.grad_norm * mu);
    if (ratio > rep.max_ratio) {
      rep.max_ratio = ratio;
      rep.arg_y1 = y1;
      rep.arg_y2 = y2;
    }
  }
  return rep;
}

struct seminorm_report {
  double value = 0.0;
  double r = 0.0;
  std::size_t pair_count = 0;
};

// sup |u(y1) - u(y2)| / mu(x, |y1 - y2|) over lattice pairs in the cube of
// side r at x: exhaustive when the pair count stays within max_pairs, seeded
// sampling beyond that.
inline seminorm_report holder_seminorm(const n_function& A, const grid_function& u,
                                       std::span<const double> x, double r_side,
                                       std::size_t max_pairs = 1000000, std::uint64_t seed = 1,
                                       modulus_cache* cache = nullptr, double mu_tol = 1e-8) {
  if (!(A.dom() == u.dom()))
    throw domain_error("seminorm needs the family and the grid on one domain");
  A.dom().require_inside(x);
  if (!(r_side > 0.0) || !(r_side / 2.0 < A.dom().boundary_distance(x)))
    throw domain_error("radius must satisfy 0 < r/2 < distance to the boundary");

  seminorm_report out;
  out.r = r_side;
  auto flats = cube_lattice(u, x, r_side);
  std::size_t k = flats.size();
  if (k < 2) return out;

  std::vector<double> y1(u.dim()), y2(u.dim());
  auto quotient = [&](std::size_t f1, std::size_t f2) {
    ++out.pair_count;
    double num = std::abs(u[f1] - u[f2]);
    if (num == 0.0) return;
    u.center(f1, y1);
    u.center(f2, y2);
    double d2 = 0.0;
    for (std::size_t j = 0; j < u.dim(); ++j) d2 += (y1[j] - y2[j]) * (y1[j] - y2[j]);
    double mu = cached_modulus(A, x, std::sqrt(d2), mu_tol, cache);
    out.value = std::max(out.value, num / mu);
  };

  if (k * (k - 1) / 2 <= max_pairs) {
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = i + 1; j < k; ++j) quotient(flats[i], flats[j]);
  } else {
    rng r(seed);
    for (std::size_t c = 0; c < max_pairs; ++c) {
      std::size_t f1 = flats[r.below(k)];
      std::size_t f2 = flats[r.below(k)];
      if (f1 != f2) quotient(f1, f2);
    }
  }
  return out;
}

} // namespace orlicz
