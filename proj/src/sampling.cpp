#include "sgtv/sampling.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>

#include "sgtv/rng.hpp"

namespace sgtv {

namespace {

constexpr double kPi = 3.1415926535897932384626433832795;
// Angular increments of the two golden-ratio schemes: 180*(3-sqrt(5))/2 for
// radial spokes, twice that (~137.50776 degrees) for the phyllotaxis spiral.
const double kGoldenRadial = kPi * (3.0 - std::sqrt(5.0)) / 2.0;
const double kGoldenPhyllotaxis = kPi * (3.0 - std::sqrt(5.0));

// Accumulates grid cells in first-visit order, addressed in centered k-space
// coordinates.
class Raster {
 public:
  Raster(int h, int w) : h_(h), w_(w), seen_(static_cast<std::size_t>(h) * w, false) {
    lo_r_ = -(h / 2);
    hi_r_ = (h - 1) / 2;
    lo_c_ = -(w / 2);
    hi_c_ = (w - 1) / 2;
  }

  bool in_range(int kr, int kc) const {
    return kr >= lo_r_ && kr <= hi_r_ && kc >= lo_c_ && kc <= hi_c_;
  }

  void add_centered(int kr, int kc) {
    if (!in_range(kr, kc)) return;
    const int r = (kr % h_ + h_) % h_;
    const int c = (kc % w_ + w_) % w_;
    add_raw(r, c);
  }

  void add_raw(int r, int c) {
    const std::size_t flat = static_cast<std::size_t>(r) * w_ + c;
    if (seen_[flat]) return;
    seen_[flat] = true;
    indices_.push_back(static_cast<std::int64_t>(flat));
  }

  SamplingPattern finish() {
    if (!seen_[0]) add_raw(0, 0);  // DC always present
    SamplingPattern p;
    p.height = h_;
    p.width = w_;
    p.indices = std::move(indices_);
    return p;
  }

 private:
  int h_, w_;
  int lo_r_, hi_r_, lo_c_, hi_c_;
  std::vector<bool> seen_;
  std::vector<std::int64_t> indices_;
};

void add_line(Raster& raster, PatternSpec::Axis axis, int line, int other_extent) {
  for (int k = 0; k < other_extent; ++k) {
    if (axis == PatternSpec::Axis::Row)
      raster.add_raw(line, k);
    else
      raster.add_raw(k, line);
  }
}

SamplingPattern cartesian_skip(const PatternSpec& s) {
  Raster raster(s.height, s.width);
  const int lines = (s.axis == PatternSpec::Axis::Row) ? s.height : s.width;
  const int other = (s.axis == PatternSpec::Axis::Row) ? s.width : s.height;
  for (int line = 0; line < lines; line += s.step) add_line(raster, s.axis, line, other);
  return raster.finish();
}

SamplingPattern cartesian_random(const PatternSpec& s) {
  const int lines = s.height;  // random undersampling draws full rows
  const int keep = static_cast<int>(std::floor(s.fraction * lines));
  std::vector<int> order(static_cast<std::size_t>(lines));
  std::iota(order.begin(), order.end(), 0);
  Pcg32 rng(s.seed);
  for (int i = 0; i < keep; ++i) {
    const int j = i + static_cast<int>(rng.next_below(static_cast<std::uint32_t>(lines - i)));
    std::swap(order[static_cast<std::size_t>(i)], order[static_cast<std::size_t>(j)]);
  }
  std::vector<int> chosen(order.begin(), order.begin() + keep);
  if (std::find(chosen.begin(), chosen.end(), 0) == chosen.end()) chosen.push_back(0);
  std::sort(chosen.begin(), chosen.end());
  Raster raster(s.height, s.width);
  for (int line : chosen) add_line(raster, PatternSpec::Axis::Row, line, s.width);
  return raster.finish();
}

SamplingPattern radial(const PatternSpec& s, bool golden) {
  Raster raster(s.height, s.width);
  const double radius = std::max(s.height, s.width) / 2.0 + 1.0;
  for (int j = 0; j < s.spokes; ++j) {
    double theta = golden ? std::fmod(j * kGoldenRadial, kPi) : j * kPi / s.spokes;
    const double si = std::sin(theta);
    const double co = std::cos(theta);
    // Walk the full diameter in half-cell steps; rounding never skips a cell.
    for (double t = -radius; t <= radius; t += 0.5) {
      const int kr = static_cast<int>(std::lround(t * si));
      const int kc = static_cast<int>(std::lround(t * co));
      raster.add_centered(kr, kc);
    }
  }
  return raster.finish();
}

SamplingPattern spiral_var_density(const PatternSpec& s) {
  Raster raster(s.height, s.width);
  const double r_max = std::min(s.height, s.width) / 2.0;
  const int n = s.points;
  for (int k = 0; k < n; ++k) {
    const double t = (n > 1) ? static_cast<double>(k) / (n - 1) : 0.0;
    const double r = r_max * std::pow(t, s.density_power);
    const double phi = 2.0 * kPi * s.turns * t;
    raster.add_centered(static_cast<int>(std::lround(r * std::sin(phi))),
                        static_cast<int>(std::lround(r * std::cos(phi))));
  }
  return raster.finish();
}

SamplingPattern spiral_phyllotaxis(const PatternSpec& s) {
  Raster raster(s.height, s.width);
  const double r_max = std::min(s.height, s.width) / 2.0;
  const int n = s.points;
  for (int k = 1; k <= n; ++k) {
    const double r = r_max * std::sqrt(static_cast<double>(k) / n);
    const double phi = k * kGoldenPhyllotaxis;
    raster.add_centered(static_cast<int>(std::lround(r * std::sin(phi))),
                        static_cast<int>(std::lround(r * std::cos(phi))));
  }
  return raster.finish();
}

double parse_double(std::string_view v, const std::string& key) {
  double out = 0.0;
  const auto res = std::from_chars(v.data(), v.data() + v.size(), out);
  if (res.ec != std::errc() || res.ptr != v.data() + v.size())
    throw std::invalid_argument("pattern spec: bad numeric value for '" + key + "'");
  return out;
}

std::int64_t parse_int(std::string_view v, const std::string& key) {
  std::int64_t out = 0;
  const auto res = std::from_chars(v.data(), v.data() + v.size(), out);
  if (res.ec != std::errc() || res.ptr != v.data() + v.size())
    throw std::invalid_argument("pattern spec: bad integer value for '" + key + "'");
  return out;
}

}  // namespace

void PatternSpec::validate() const {
  if (height < 2 || width < 2) throw std::invalid_argument("pattern spec: grid must be at least 2x2");
  switch (scheme) {
    case Scheme::CartesianSkip:
      if (step < 1) throw std::invalid_argument("pattern spec: step must be >= 1");
      break;
    case Scheme::CartesianRandom:
      if (!(fraction > 0.0 && fraction <= 1.0))
        throw std::invalid_argument("pattern spec: fraction must be in (0,1]");
      break;
    case Scheme::RadialUniform:
    case Scheme::RadialGolden:
      if (spokes < 1) throw std::invalid_argument("pattern spec: spokes must be >= 1");
      break;
    case Scheme::SpiralVarDensity:
      if (turns <= 0.0) throw std::invalid_argument("pattern spec: turns must be > 0");
      if (density_power <= 0.0) throw std::invalid_argument("pattern spec: power must be > 0");
      [[fallthrough]];
    case Scheme::SpiralPhyllotaxis:
      if (points < 1) throw std::invalid_argument("pattern spec: points must be >= 1");
      break;
  }
}

PatternSpec parse_pattern_spec(const std::string& text, int height, int width) {
  PatternSpec spec;
  spec.height = height;
  spec.width = width;

  std::vector<std::string> parts;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t pos = text.find(':', start);
    if (pos == std::string::npos) {
      parts.push_back(text.substr(start));
      break;
    }
    parts.push_back(text.substr(start, pos - start));
    start = pos + 1;
  }
  if (parts.empty() || parts[0].empty()) throw std::invalid_argument("pattern spec: empty scheme");

  const std::string& name = parts[0];
  if (name == "full") {
    spec.scheme = PatternSpec::Scheme::CartesianSkip;
    spec.step = 1;
  } else if (name == "cartesian-skip") {
    spec.scheme = PatternSpec::Scheme::CartesianSkip;
  } else if (name == "cartesian-random") {
    spec.scheme = PatternSpec::Scheme::CartesianRandom;
  } else if (name == "radial-uniform") {
    spec.scheme = PatternSpec::Scheme::RadialUniform;
  } else if (name == "radial-golden") {
    spec.scheme = PatternSpec::Scheme::RadialGolden;
  } else if (name == "spiral-vd") {
    spec.scheme = PatternSpec::Scheme::SpiralVarDensity;
  } else if (name == "spiral-phyllotaxis") {
    spec.scheme = PatternSpec::Scheme::SpiralPhyllotaxis;
  } else {
    throw std::invalid_argument("pattern spec: unknown scheme '" + name + "'");
  }

  for (std::size_t i = 1; i < parts.size(); ++i) {
    const std::string& kv = parts[i];
    const std::size_t eq = kv.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("pattern spec: expected key=value, got '" + kv + "'");
    const std::string key = kv.substr(0, eq);
    const std::string value = kv.substr(eq + 1);
    if (key == "step") {
      spec.step = static_cast<int>(parse_int(value, key));
    } else if (key == "axis") {
      if (value == "row")
        spec.axis = PatternSpec::Axis::Row;
      else if (value == "col")
        spec.axis = PatternSpec::Axis::Col;
      else
        throw std::invalid_argument("pattern spec: axis must be row or col");
    } else if (key == "fraction") {
      spec.fraction = parse_double(value, key);
    } else if (key == "seed") {
      spec.seed = static_cast<std::uint64_t>(parse_int(value, key));
    } else if (key == "spokes") {
      spec.spokes = static_cast<int>(parse_int(value, key));
    } else if (key == "turns") {
      spec.turns = parse_double(value, key);
    } else if (key == "points") {
      spec.points = static_cast<int>(parse_int(value, key));
    } else if (key == "power") {
      spec.density_power = parse_double(value, key);
    } else {
      throw std::invalid_argument("pattern spec: unknown key '" + key + "'");
    }
  }
  spec.validate();
  return spec;
}

SamplingPattern generate(const PatternSpec& spec) {
  spec.validate();
  switch (spec.scheme) {
    case PatternSpec::Scheme::CartesianSkip:
      return cartesian_skip(spec);
    case PatternSpec::Scheme::CartesianRandom:
      return cartesian_random(spec);
    case PatternSpec::Scheme::RadialUniform:
      return radial(spec, false);
    case PatternSpec::Scheme::RadialGolden:
      return radial(spec, true);
    case PatternSpec::Scheme::SpiralVarDensity:
      return spiral_var_density(spec);
    case PatternSpec::Scheme::SpiralPhyllotaxis:
      return spiral_phyllotaxis(spec);
  }
  throw std::invalid_argument("pattern spec: unknown scheme");
}

double undersampling_factor(const SamplingPattern& p) {
  p.validate();
  return static_cast<double>(p.grid_size()) / static_cast<double>(p.samples());
}

}  // namespace sgtv
