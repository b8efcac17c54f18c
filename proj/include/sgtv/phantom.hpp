#pragma once

// Two-contrast Shepp-Logan test pair: both images share the standard ellipse
// geometry (so every edge location coincides) while the amplitudes differ,
// with the large interior structures inverting contrast and the small ones
// keeping their sign. Values are clipped to [0,1]; rendering is a
// deterministic per-pixel-center inside test.

#include "sgtv/grid.hpp"

namespace sgtv {

struct PhantomPair {
  Image t1;
  Image t2;
};

PhantomPair shepp_logan_pair(int size);

}  // namespace sgtv
