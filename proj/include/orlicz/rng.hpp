#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "orlicz/domain.hpp"

namespace orlicz {

// Seeded draws with hand-rolled mappings on top of mt19937_64.  The standard
// distributions are not pinned across library implementations, so every
// mapping from raw 64-bit words to values lives here; identical seeds give
// bit-identical streams on every platform.
class rng {
public:
  explicit rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t raw() { return gen_(); }

  // Uniform on [0, 1) with 53 significant bits.
  double uniform01() { return double(gen_() >> 11) * 0x1.0p-53; }

  double uniform(double a, double b) { return a + (b - a) * uniform01(); }

  // Log-uniform on [a, b], both positive.
  double log_uniform(double a, double b) {
    return std::exp(uniform(std::log(a), std::log(b)));
  }

  // Uniform integer in [0, n); n > 0.  Multiplicative reduction keeps the
  // mapping exact and identical everywhere.
  std::uint64_t below(std::uint64_t n) {
    return std::uint64_t((static_cast<unsigned __int128>(gen_()) * n) >> 64);
  }

  std::vector<double> point_in(const domain& d) {
    std::vector<double> x(d.dim());
    for (std::size_t i = 0; i < d.dim(); ++i)
      x[i] = uniform(d.lower()[i], d.upper()[i]);
    return x;
  }

private:
  std::mt19937_64 gen_;
};

} // namespace orlicz
