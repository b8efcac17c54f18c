#pragma once

// Unitary 2D discrete Fourier transform. Power-of-two lengths use an
// iterative radix-2 kernel with precomputed twiddles; everything else goes
// through Bluestein's chirp-z reduction to a power-of-two convolution, so
// arbitrary grid sizes are supported at full double accuracy.
//
// Both directions carry the 1/sqrt(H*W) factor, making the transform
// unitary: idft2 is simultaneously the inverse and the adjoint of dft2 and
// Parseval's identity holds exactly (up to rounding).
//
// Plans are immutable after construction; scratch space lives on the stack
// of each call, so one plan may serve many threads.

#include <complex>
#include <vector>

#include "sgtv/grid.hpp"

namespace sgtv {

class Fft1d {
 public:
  explicit Fft1d(int n);

  int length() const { return n_; }
  // Room the caller must provide to transform one vector.
  int scratch_size() const;

  // In-place unscaled DFT, e^{-2*pi*i*j*k/n} convention.
  void forward(std::complex<double>* x, std::complex<double>* scratch) const;
  // In-place unscaled inverse (forward conjugated, divided by n).
  void inverse(std::complex<double>* x, std::complex<double>* scratch) const;

 private:
  void pow2_forward(std::complex<double>* x, int n, const std::complex<double>* tw) const;

  int n_ = 0;
  bool pow2_ = false;
  std::vector<std::complex<double>> tw_;        // roots for the radix-2 kernel
  // Bluestein state (only when n is not a power of two).
  int m_ = 0;                                   // convolution length, power of two
  std::vector<std::complex<double>> mtw_;       // roots for the length-m kernel
  std::vector<std::complex<double>> chirp_;     // exp(-i*pi*k^2/n), k < n
  std::vector<std::complex<double>> chirp_fft_; // DFT_m of the chirp filter
};

class Fft2d {
 public:
  Fft2d(int height, int width);

  int height() const { return h_; }
  int width() const { return w_; }

  // Unitary transforms, in place.
  void dft2(ComplexImage& x) const;
  void idft2(ComplexImage& x) const;

 private:
  void rows(ComplexImage& x, bool inverse) const;
  void cols(ComplexImage& x, bool inverse) const;

  int h_ = 0, w_ = 0;
  Fft1d row_plan_;  // length = width
  Fft1d col_plan_;  // length = height
  double scale_ = 1.0;
};

// Convenience wrappers that build a throwaway plan.
ComplexImage dft2(const ComplexImage& x);
ComplexImage idft2(const ComplexImage& x);

// Embed a real image as a complex one (zero imaginary part).
ComplexImage embed(const Image& v);
// Real part restriction, the adjoint of embed.
Image real_part(const ComplexImage& x);

}  // namespace sgtv
