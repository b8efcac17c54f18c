#pragma once

// Fourier-sampling forward model E = S o F o R^* for real-valued images:
// embed into the complex plane, unitary 2D DFT, then read the k-space grid
// at an ordered list of sample locations. The adjoint runs the chain
// backwards (scatter-add, inverse DFT, real part). The complex spaces carry
// the real inner product <x,y> = Re(x^H y), under which embed/real_part are
// adjoint to each other.

#include <complex>
#include <cstdint>
#include <vector>

#include "sgtv/fft.hpp"
#include "sgtv/grid.hpp"

namespace sgtv {

// Ordered sequence of flat k-space grid indices (0-based, row-major,
// standard DFT layout with DC at index 0). Repeats are allowed by the
// operator algebra; the generators in sampling.hpp emit deduplicated
// sequences.
struct SamplingPattern {
  int height = 0;
  int width = 0;
  std::vector<std::int64_t> indices;

  std::int64_t grid_size() const { return static_cast<std::int64_t>(height) * width; }
  std::int64_t samples() const { return static_cast<std::int64_t>(indices.size()); }
  void validate() const;
};

// Complex measurement vector aligned with a SamplingPattern.
struct KSpaceData {
  std::vector<std::complex<double>> values;

  std::int64_t size() const { return static_cast<std::int64_t>(values.size()); }
};

// (S x)_k = x_{s[k]}.
KSpaceData sample(const SamplingPattern& p, const ComplexImage& x);
// S^* d: scatter-add of d into the grid; repeated indices accumulate.
ComplexImage sample_adjoint(const SamplingPattern& p, const KSpaceData& d);
// Diagonal of S^*S: per-cell multiplicity of the sample sequence.
Image mask_counts(const SamplingPattern& p);

// E v = S F (v + 0i) and E^* d = Re F^{-1} S^* d. The plan-taking overloads
// avoid rebuilding twiddle tables in hot loops.
KSpaceData forward(const SamplingPattern& p, const Image& v);
KSpaceData forward(const SamplingPattern& p, const Image& v, const Fft2d& fft);
Image adjoint(const SamplingPattern& p, const KSpaceData& d);
Image adjoint(const SamplingPattern& p, const KSpaceData& d, const Fft2d& fft);

// Re(a^H b), the real inner product on complex vectors/grids.
double dot_real(const KSpaceData& a, const KSpaceData& b);
double dot_real(const ComplexImage& a, const ComplexImage& b);
double norm(const KSpaceData& a);
double norm(const ComplexImage& a);

// Measured data for a ground-truth image: E(gt) plus i.i.d. complex Gaussian
// noise whose per-component standard deviation is calibrated so that at full
// sampling the RMS noise norm is `fraction` of the noise-free data norm:
// sigma = fraction * ||F gt|| / sqrt(2 N). Deterministic for a fixed seed.
KSpaceData simulate(const Image& ground_truth, const SamplingPattern& p, double fraction,
                    std::uint64_t seed, double* sigma_out = nullptr);

}  // namespace sgtv
