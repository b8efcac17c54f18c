#pragma once

// Seedable, portable random numbers. PCG32 (Melissa O'Neill's pcg32 with the
// standard multiplier/output function) drives everything so that a recorded
// seed reproduces the exact same pattern, noise realization and sweep on any
// platform; std:: distributions are deliberately avoided because their output
// is implementation-defined.

#include <cmath>
#include <cstdint>

namespace sgtv {

class Pcg32 {
 public:
  explicit Pcg32(std::uint64_t seed, std::uint64_t stream = 0x853c49e6748fea9bULL) {
    state_ = 0;
    inc_ = (stream << 1u) | 1u;
    next_u32();
    state_ += seed;
    next_u32();
  }

  std::uint32_t next_u32() {
    const std::uint64_t old = state_;
    state_ = old * 6364136223846793005ULL + inc_;
    const std::uint32_t xorshifted = static_cast<std::uint32_t>(((old >> 18u) ^ old) >> 27u);
    const std::uint32_t rot = static_cast<std::uint32_t>(old >> 59u);
    return (xorshifted >> rot) | (xorshifted << ((32u - rot) & 31u));
  }

  // Uniform in [0, 1), 53-bit resolution.
  double next_double() {
    const std::uint64_t hi = next_u32();
    const std::uint64_t lo = next_u32();
    return static_cast<double>(((hi << 32) | lo) >> 11) * 0x1.0p-53;
  }

  // Uniform in (0, 1]; safe to feed into log().
  double next_double_open() {
    const std::uint64_t hi = next_u32();
    const std::uint64_t lo = next_u32();
    return static_cast<double>((((hi << 32) | lo) >> 11) + 1) * 0x1.0p-53;
  }

  // Unbiased integer in [0, n), n > 0 (rejection sampling).
  std::uint32_t next_below(std::uint32_t n) {
    const std::uint32_t threshold = (-n) % n;
    for (;;) {
      const std::uint32_t r = next_u32();
      if (r >= threshold) return r % n;
    }
  }

  // Standard normal via Box-Muller; draws two uniforms per pair.
  double next_gaussian() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double u1 = next_double_open();
    const double u2 = next_double();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 6.283185307179586476925286766559 * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
  }

 private:
  std::uint64_t state_ = 0;
  std::uint64_t inc_ = 0;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace sgtv
