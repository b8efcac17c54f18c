#pragma once

// k-space sampling pattern generation: Cartesian line schemes (equidistant
// skip, random lines), radial spokes (uniform or golden-angle spacing) and
// spirals (variable density, phyllotaxis). Continuous trajectories are laid
// out in centered k-space coordinates (DC in the middle), rounded to the
// nearest grid cell, deduplicated while preserving first-visit order and
// converted to standard DFT layout. Every generated pattern contains the DC
// index and is reproducible bit-for-bit from its spec.

#include <cstdint>
#include <string>

#include "sgtv/mri.hpp"

namespace sgtv {

struct PatternSpec {
  enum class Scheme {
    CartesianSkip,
    CartesianRandom,
    RadialUniform,
    RadialGolden,
    SpiralVarDensity,
    SpiralPhyllotaxis,
  };
  enum class Axis { Row, Col };

  Scheme scheme = Scheme::CartesianSkip;
  int height = 0;
  int width = 0;

  int step = 1;                  // CartesianSkip
  Axis axis = Axis::Row;         // CartesianSkip
  double fraction = 0.5;         // CartesianRandom, in (0, 1]
  std::uint64_t seed = 0;        // CartesianRandom
  int spokes = 16;               // Radial*
  double turns = 8.0;            // SpiralVarDensity
  int points = 2048;             // Spiral*
  double density_power = 2.0;    // SpiralVarDensity

  void validate() const;
};

// Parses "scheme:key=value:key=value". Scheme names: full, cartesian-skip,
// cartesian-random, radial-uniform, radial-golden, spiral-vd,
// spiral-phyllotaxis. Keys: step, axis (row|col), fraction, seed, spokes,
// turns, points, power.
PatternSpec parse_pattern_spec(const std::string& text, int height, int width);

SamplingPattern generate(const PatternSpec& spec);

// N / M.
double undersampling_factor(const SamplingPattern& p);

}  // namespace sgtv
