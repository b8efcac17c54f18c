#include "sgtv/fft.hpp"

#include <cmath>

namespace sgtv {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

bool is_pow2(int n) { return n > 0 && (n & (n - 1)) == 0; }

int next_pow2(int n) {
  int m = 1;
  while (m < n) m <<= 1;
  return m;
}

std::vector<std::complex<double>> make_roots(int n) {
  // e^{-2*pi*i*k/n} for k < n/2, the only ones the radix-2 kernel touches.
  std::vector<std::complex<double>> tw(static_cast<std::size_t>(n / 2));
  for (int k = 0; k < n / 2; ++k) {
    const double a = -kTwoPi * k / n;
    tw[static_cast<std::size_t>(k)] = {std::cos(a), std::sin(a)};
  }
  return tw;
}

}  // namespace

Fft1d::Fft1d(int n) : n_(n) {
  if (n < 1) throw std::invalid_argument("Fft1d: length must be positive");
  pow2_ = is_pow2(n);
  if (pow2_) {
    tw_ = make_roots(n);
    return;
  }
  m_ = next_pow2(2 * n - 1);
  mtw_ = make_roots(m_);
  chirp_.resize(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    // k^2 mod 2n keeps the phase argument small for large lengths.
    const long long q = (static_cast<long long>(k) * k) % (2LL * n);
    const double a = -kTwoPi * 0.5 * static_cast<double>(q) / n;
    chirp_[static_cast<std::size_t>(k)] = {std::cos(a), std::sin(a)};
  }
  // Chirp filter b_j = conj(c_j), wrapped so that the circular convolution
  // of length m realizes the linear one on the first n outputs.
  std::vector<std::complex<double>> b(static_cast<std::size_t>(m_), {0.0, 0.0});
  b[0] = std::conj(chirp_[0]);
  for (int j = 1; j < n; ++j) {
    b[static_cast<std::size_t>(j)] = std::conj(chirp_[static_cast<std::size_t>(j)]);
    b[static_cast<std::size_t>(m_ - j)] = std::conj(chirp_[static_cast<std::size_t>(j)]);
  }
  pow2_forward(b.data(), m_, mtw_.data());
  chirp_fft_ = std::move(b);
}

int Fft1d::scratch_size() const { return pow2_ ? 0 : m_; }

void Fft1d::pow2_forward(std::complex<double>* x, int n, const std::complex<double>* tw) const {
  for (int i = 1, j = 0; i < n; ++i) {
    int bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j |= bit;
    if (i < j) std::swap(x[i], x[j]);
  }
  for (int len = 2; len <= n; len <<= 1) {
    const int half = len >> 1;
    const int step = n / len;
    for (int base = 0; base < n; base += len) {
      for (int k = 0; k < half; ++k) {
        const std::complex<double> u = x[base + k];
        const std::complex<double> t = x[base + k + half] * tw[k * step];
        x[base + k] = u + t;
        x[base + k + half] = u - t;
      }
    }
  }
}

void Fft1d::forward(std::complex<double>* x, std::complex<double>* scratch) const {
  if (pow2_) {
    pow2_forward(x, n_, tw_.data());
    return;
  }
  // Bluestein: X_k = c_k * (u (*) b)_k with u_j = x_j c_j.
  for (int j = 0; j < n_; ++j) scratch[j] = x[j] * chirp_[static_cast<std::size_t>(j)];
  for (int j = n_; j < m_; ++j) scratch[j] = {0.0, 0.0};
  pow2_forward(scratch, m_, mtw_.data());
  for (int j = 0; j < m_; ++j)
    scratch[j] = std::conj(scratch[j] * chirp_fft_[static_cast<std::size_t>(j)]);
  pow2_forward(scratch, m_, mtw_.data());
  const double inv_m = 1.0 / m_;
  for (int k = 0; k < n_; ++k)
    x[k] = std::conj(scratch[k]) * inv_m * chirp_[static_cast<std::size_t>(k)];
}

void Fft1d::inverse(std::complex<double>* x, std::complex<double>* scratch) const {
  for (int j = 0; j < n_; ++j) x[j] = std::conj(x[j]);
  forward(x, scratch);
  const double inv_n = 1.0 / n_;
  for (int j = 0; j < n_; ++j) x[j] = std::conj(x[j]) * inv_n;
}

Fft2d::Fft2d(int height, int width)
    : h_(height), w_(width), row_plan_(width), col_plan_(height) {
  scale_ = 1.0 / std::sqrt(static_cast<double>(height) * width);
}

void Fft2d::rows(ComplexImage& x, bool inverse) const {
  std::vector<std::complex<double>> scratch(static_cast<std::size_t>(row_plan_.scratch_size()));
  for (int i = 0; i < h_; ++i) {
    std::complex<double>* r = x.data() + static_cast<std::size_t>(i) * w_;
    if (inverse)
      row_plan_.inverse(r, scratch.data());
    else
      row_plan_.forward(r, scratch.data());
  }
}

void Fft2d::cols(ComplexImage& x, bool inverse) const {
  std::vector<std::complex<double>> scratch(static_cast<std::size_t>(col_plan_.scratch_size()));
  std::vector<std::complex<double>> column(static_cast<std::size_t>(h_));
  for (int j = 0; j < w_; ++j) {
    for (int i = 0; i < h_; ++i) column[static_cast<std::size_t>(i)] = x(i, j);
    if (inverse)
      col_plan_.inverse(column.data(), scratch.data());
    else
      col_plan_.forward(column.data(), scratch.data());
    for (int i = 0; i < h_; ++i) x(i, j) = column[static_cast<std::size_t>(i)];
  }
}

void Fft2d::dft2(ComplexImage& x) const {
  if (x.height() != h_ || x.width() != w_) throw std::invalid_argument("dft2: shape mismatch");
  rows(x, false);
  cols(x, false);
  std::complex<double>* p = x.data();
  for (std::int64_t k = 0; k < x.size(); ++k) p[k] *= scale_;
}

void Fft2d::idft2(ComplexImage& x) const {
  if (x.height() != h_ || x.width() != w_) throw std::invalid_argument("idft2: shape mismatch");
  rows(x, true);
  cols(x, true);
  // inverse() already divided by h*w; rescale to the unitary convention.
  const double s = 1.0 / scale_;
  std::complex<double>* p = x.data();
  for (std::int64_t k = 0; k < x.size(); ++k) p[k] *= s;
}

ComplexImage dft2(const ComplexImage& x) {
  Fft2d plan(x.height(), x.width());
  ComplexImage out = x;
  plan.dft2(out);
  return out;
}

ComplexImage idft2(const ComplexImage& x) {
  Fft2d plan(x.height(), x.width());
  ComplexImage out = x;
  plan.idft2(out);
  return out;
}

ComplexImage embed(const Image& v) {
  ComplexImage out(v.height(), v.width());
  const double* p = v.data();
  std::complex<double>* q = out.data();
  for (std::int64_t k = 0; k < v.size(); ++k) q[k] = {p[k], 0.0};
  return out;
}

Image real_part(const ComplexImage& x) {
  Image out(x.height(), x.width());
  const std::complex<double>* p = x.data();
  double* q = out.data();
  for (std::int64_t k = 0; k < x.size(); ++k) q[k] = p[k].real();
  return out;
}

}  // namespace sgtv
