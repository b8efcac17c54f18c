#include "sgtv/mri.hpp"

#include <cmath>

#include "sgtv/rng.hpp"

namespace sgtv {

void SamplingPattern::validate() const {
  if (height < 2 || width < 2) throw std::invalid_argument("SamplingPattern: grid must be at least 2x2");
  if (indices.empty()) throw std::invalid_argument("SamplingPattern: empty sample sequence");
  const std::int64_t n = grid_size();
  for (std::int64_t k : indices)
    if (k < 0 || k >= n) throw std::invalid_argument("SamplingPattern: index out of range");
}

KSpaceData sample(const SamplingPattern& p, const ComplexImage& x) {
  if (x.height() != p.height || x.width() != p.width)
    throw std::invalid_argument("sample: shape mismatch");
  p.validate();
  KSpaceData d;
  d.values.resize(p.indices.size());
  const std::complex<double>* src = x.data();
  for (std::size_t k = 0; k < p.indices.size(); ++k) d.values[k] = src[p.indices[k]];
  return d;
}

ComplexImage sample_adjoint(const SamplingPattern& p, const KSpaceData& d) {
  p.validate();
  if (d.size() != p.samples()) throw std::invalid_argument("sample_adjoint: length mismatch");
  ComplexImage x(p.height, p.width);
  std::complex<double>* dst = x.data();
  for (std::size_t k = 0; k < p.indices.size(); ++k) dst[p.indices[k]] += d.values[k];
  return x;
}

Image mask_counts(const SamplingPattern& p) {
  p.validate();
  Image counts(p.height, p.width, 0.0);
  double* c = counts.data();
  for (std::int64_t k : p.indices) c[k] += 1.0;
  return counts;
}

KSpaceData forward(const SamplingPattern& p, const Image& v, const Fft2d& fft) {
  ComplexImage x = embed(v);
  fft.dft2(x);
  return sample(p, x);
}

KSpaceData forward(const SamplingPattern& p, const Image& v) {
  Fft2d fft(v.height(), v.width());
  return forward(p, v, fft);
}

Image adjoint(const SamplingPattern& p, const KSpaceData& d, const Fft2d& fft) {
  ComplexImage x = sample_adjoint(p, d);
  fft.idft2(x);
  return real_part(x);
}

Image adjoint(const SamplingPattern& p, const KSpaceData& d) {
  Fft2d fft(p.height, p.width);
  return adjoint(p, d, fft);
}

double dot_real(const KSpaceData& a, const KSpaceData& b) {
  if (a.size() != b.size()) throw std::invalid_argument("dot_real: length mismatch");
  double s = 0.0;
  for (std::size_t k = 0; k < a.values.size(); ++k)
    s += a.values[k].real() * b.values[k].real() + a.values[k].imag() * b.values[k].imag();
  return s;
}

double dot_real(const ComplexImage& a, const ComplexImage& b) {
  if (a.height() != b.height() || a.width() != b.width())
    throw std::invalid_argument("dot_real: shape mismatch");
  double s = 0.0;
  const std::complex<double>* pa = a.data();
  const std::complex<double>* pb = b.data();
  for (std::int64_t k = 0; k < a.size(); ++k)
    s += pa[k].real() * pb[k].real() + pa[k].imag() * pb[k].imag();
  return s;
}

double norm(const KSpaceData& a) { return std::sqrt(dot_real(a, a)); }
double norm(const ComplexImage& a) { return std::sqrt(dot_real(a, a)); }

KSpaceData simulate(const Image& ground_truth, const SamplingPattern& p, double fraction,
                    std::uint64_t seed, double* sigma_out) {
  if (ground_truth.height() != p.height || ground_truth.width() != p.width)
    throw std::invalid_argument("simulate: ground truth does not match pattern grid");
  if (fraction < 0.0) throw std::invalid_argument("simulate: noise fraction must be >= 0");
  Fft2d fft(p.height, p.width);
  ComplexImage spectrum = embed(ground_truth);
  fft.dft2(spectrum);
  KSpaceData d = sample(p, spectrum);
  const double full_norm = norm(spectrum);
  const double sigma =
      fraction * full_norm / std::sqrt(2.0 * static_cast<double>(p.grid_size()));
  if (sigma_out) *sigma_out = sigma;
  if (sigma > 0.0) {
    Pcg32 rng(seed);
    for (auto& value : d.values) {
      const double re = sigma * rng.next_gaussian();
      const double im = sigma * rng.next_gaussian();
      value += std::complex<double>(re, im);
    }
  }
  return d;
}

}  // namespace sgtv
