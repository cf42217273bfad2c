#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace graphseg {

// Deterministic random source used for synthetic data and test fixtures.
// The engine is std::mt19937_64, whose output sequence is pinned by the
// standard; the distribution transforms in <random> are not, so the few
// we need are implemented here:
//   uniform01:  (x >> 11) * 2^-53            in [0, 1)
//   uniform:    lo + (hi - lo) * uniform01
//   normal:     Box-Muller, r = sqrt(-2 ln u1), z = r cos(2 pi u2)
//               (the sin partner is cached and returned on the next call)
// Identical seeds therefore give identical streams on every platform.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // [0, 1), 53-bit resolution
  double uniform01() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  // (0, 1], safe under log
  double uniform01_positive() {
    return static_cast<double>((engine_() >> 11) + 1) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  bool bernoulli(double p) { return uniform01() < p; }

  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const double u1 = uniform01_positive();
    const double u2 = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * kPi * u2;
    spare_ = r * std::sin(a);
    has_spare_ = true;
    return r * std::cos(a);
  }

private:
  static constexpr double kPi = 3.14159265358979323846;
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

} // namespace graphseg
