#include "sgtv/phantom.hpp"

#include <algorithm>
#include <cmath>

namespace sgtv {

namespace {

struct Ellipse {
  double a1;   // first-contrast amplitude (modified Shepp-Logan table)
  double a2;   // second-contrast amplitude
  double sa;   // semi-axis along x
  double sb;   // semi-axis along y
  double x0;
  double y0;
  double phi_deg;
};

// Geometry is the standard modified Shepp-Logan set. The second contrast
// dims the skull (1.0 -> 0.8), flips the two large dark ellipses to +0.3 and
// halves the small bright ones. The inner ellipse subtracts 0.6 rather than
// 0.8 so the interior stays positive and both contrasts share one support.
constexpr Ellipse kEllipses[] = {
    {1.0, 0.8, 0.69, 0.92, 0.0, 0.0, 0.0},
    {-0.8, -0.6, 0.6624, 0.8740, 0.0, -0.0184, 0.0},
    {-0.2, 0.3, 0.1100, 0.3100, 0.22, 0.0, -18.0},
    {-0.2, 0.3, 0.1600, 0.4100, -0.22, 0.0, 18.0},
    {0.1, 0.05, 0.2100, 0.2500, 0.0, 0.35, 0.0},
    {0.1, 0.05, 0.0460, 0.0460, 0.0, 0.1, 0.0},
    {0.1, 0.05, 0.0460, 0.0460, 0.0, -0.1, 0.0},
    {0.1, 0.05, 0.0460, 0.0230, -0.08, -0.605, 0.0},
    {0.1, 0.05, 0.0230, 0.0230, 0.0, -0.606, 0.0},
    {0.1, 0.05, 0.0230, 0.0460, 0.06, -0.605, 0.0},
};

}  // namespace

PhantomPair shepp_logan_pair(int size) {
  if (size < 32) throw std::invalid_argument("shepp_logan_pair: size must be >= 32");
  PhantomPair pair{Image(size, size), Image(size, size)};
  constexpr double kDeg = 3.1415926535897932384626433832795 / 180.0;
  for (int i = 0; i < size; ++i) {
    const double y = 1.0 - 2.0 * (i + 0.5) / size;  // row 0 at the top
    for (int j = 0; j < size; ++j) {
      const double x = 2.0 * (j + 0.5) / size - 1.0;
      double v1 = 0.0, v2 = 0.0;
      for (const Ellipse& e : kEllipses) {
        const double c = std::cos(e.phi_deg * kDeg);
        const double s = std::sin(e.phi_deg * kDeg);
        const double dx = x - e.x0;
        const double dy = y - e.y0;
        const double ex = (dx * c + dy * s) / e.sa;
        const double ey = (-dx * s + dy * c) / e.sb;
        if (ex * ex + ey * ey <= 1.0) {
          v1 += e.a1;
          v2 += e.a2;
        }
      }
      pair.t1(i, j) = std::clamp(v1, 0.0, 1.0);
      pair.t2(i, j) = std::clamp(v2, 0.0, 1.0);
    }
  }
  return pair;
}

}  // namespace sgtv
