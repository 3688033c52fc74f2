#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace tonmf {

// Seeded RNG whose distributions are built from raw mt19937_64 draws only.
// std::uniform_real_distribution and friends are implementation-defined, so
// rolling the transforms by hand keeps output streams byte-reproducible.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Uniform integer in [0, n). Modulo bias is negligible for n << 2^64.
  std::int64_t uniform_int(std::int64_t n) {
    return static_cast<std::int64_t>(engine_() % static_cast<std::uint64_t>(n));
  }

  // Box-Muller standard normal.
  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u1 = uniform();
    double u2 = uniform();
    double radius = std::sqrt(-2.0 * std::log1p(-u1));
    double angle = 2.0 * 3.14159265358979323846 * u2;
    spare_ = radius * std::sin(angle);
    has_spare_ = true;
    return radius * std::cos(angle);
  }

  // Knuth's product method; exp(-mean) stays representable for mean <= ~600.
  // Larger means fall back to a rounded normal approximation.
  std::int64_t poisson(double mean) {
    if (mean <= 0.0) return 0;
    if (mean > 600.0) {
      double draw = mean + std::sqrt(mean) * normal();
      return draw < 0.0 ? 0 : static_cast<std::int64_t>(std::llround(draw));
    }
    const double limit = std::exp(-mean);
    std::int64_t k = 0;
    double product = 1.0;
    do {
      ++k;
      product *= uniform();
    } while (product > limit);
    return k - 1;
  }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::int64_t i = static_cast<std::int64_t>(v.size()) - 1; i > 0; --i) {
      std::int64_t j = uniform_int(i + 1);
      std::swap(v[static_cast<std::size_t>(i)], v[static_cast<std::size_t>(j)]);
    }
  }

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace tonmf
