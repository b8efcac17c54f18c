#pragma once

// Dense 2D fields and the discrete differential calculus shared by the
// reconstruction code: forward-difference gradient, its negative adjoint
// (backward-difference divergence), pointwise anisotropy maps and the
// projections used by the dual solver. All operations are pure; a field is
// plain data with no hidden state, so concurrent read access is safe.

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace sgtv {

// Thrown when a file cannot be read/written or its contents are malformed.
class io_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Thrown when an iteration produces non-finite values.
class numeric_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Real scalar field on an H x W grid, row-major. Grids are at least 2x2 so
// that every pixel has a forward-difference neighbour in each direction.
class Image {
 public:
  Image() = default;
  Image(int height, int width, double fill = 0.0);

  int height() const { return h_; }
  int width() const { return w_; }
  std::int64_t size() const { return static_cast<std::int64_t>(h_) * w_; }

  double& operator()(int i, int j) { return v_[static_cast<std::size_t>(i) * w_ + j]; }
  double operator()(int i, int j) const { return v_[static_cast<std::size_t>(i) * w_ + j]; }
  double* data() { return v_.data(); }
  const double* data() const { return v_.data(); }

  bool same_shape(const Image& o) const { return h_ == o.h_ && w_ == o.w_; }
  bool all_finite() const;

 private:
  int h_ = 0, w_ = 0;
  std::vector<double> v_;
};

// Complex scalar field, same layout as Image.
class ComplexImage {
 public:
  using value_type = std::complex<double>;

  ComplexImage() = default;
  ComplexImage(int height, int width, value_type fill = {});

  int height() const { return h_; }
  int width() const { return w_; }
  std::int64_t size() const { return static_cast<std::int64_t>(h_) * w_; }

  value_type& operator()(int i, int j) { return v_[static_cast<std::size_t>(i) * w_ + j]; }
  value_type operator()(int i, int j) const { return v_[static_cast<std::size_t>(i) * w_ + j]; }
  value_type* data() { return v_.data(); }
  const value_type* data() const { return v_.data(); }

 private:
  int h_ = 0, w_ = 0;
  std::vector<value_type> v_;
};

// Per-pixel 2-vector field (d_row, d_col), stored as two planes.
class GradientField {
 public:
  GradientField() = default;
  GradientField(int height, int width);

  int height() const { return h_; }
  int width() const { return w_; }
  std::int64_t size() const { return static_cast<std::int64_t>(h_) * w_; }

  double* row() { return dr_.data(); }
  double* col() { return dc_.data(); }
  const double* row() const { return dr_.data(); }
  const double* col() const { return dc_.data(); }

  double& row(int i, int j) { return dr_[static_cast<std::size_t>(i) * w_ + j]; }
  double& col(int i, int j) { return dc_[static_cast<std::size_t>(i) * w_ + j]; }
  double row(int i, int j) const { return dr_[static_cast<std::size_t>(i) * w_ + j]; }
  double col(int i, int j) const { return dc_[static_cast<std::size_t>(i) * w_ + j]; }

  bool same_shape(const GradientField& o) const { return h_ == o.h_ && w_ == o.w_; }
  void fill(double value);

 private:
  int h_ = 0, w_ = 0;
  std::vector<double> dr_, dc_;
};

// Pointwise linear map applied to gradient fields. Identity gives plain TV,
// an isotropic weight field in [0,1] gives weighted TV, and a direction
// field xi with |xi_i| <= 1 gives the projector Id - xi xi^* of directional
// TV. Every variant is symmetric and pointwise non-expansive, so the field
// is its own adjoint and its operator norm is at most one.
class AnisotropyField {
 public:
  enum class Kind { Identity, Isotropic, Directional };

  static AnisotropyField identity(int height, int width);
  static AnisotropyField isotropic(Image weights);
  static AnisotropyField directional(GradientField xi);

  Kind kind() const { return kind_; }
  int height() const { return h_; }
  int width() const { return w_; }

  const Image& weights() const { return weights_; }
  const GradientField& xi() const { return xi_; }

 private:
  AnisotropyField() = default;
  Kind kind_ = Kind::Identity;
  int h_ = 0, w_ = 0;
  Image weights_;    // Isotropic only
  GradientField xi_; // Directional only
};

// (grad v)_{ij} = (v_{i+1,j} - v_{ij}, v_{i,j+1} - v_{ij}), zero on the last
// row/column. Under this convention ||grad||^2 <= 8.
void gradient(const Image& v, GradientField& out);
GradientField gradient(const Image& v);

// Negative adjoint of gradient: <div g, v> = <g, -grad v> for all v, g.
void divergence(const GradientField& g, Image& out);
Image divergence(const GradientField& g);

void apply_anisotropy(const AnisotropyField& m, const GradientField& g, GradientField& out);
GradientField apply_anisotropy(const AnisotropyField& m, const GradientField& g);

// sqrt(d_row^2 + d_col^2) per pixel.
Image pointwise_norm(const GradientField& g);

// y / max(1, |y|) per pixel.
void project_unit_ball(GradientField& y);

// max(v, 0) per pixel.
void project_nonneg(Image& v);

double dot(const Image& a, const Image& b);
double dot(const GradientField& a, const GradientField& b);
double norm(const Image& a);
double norm(const GradientField& a);

}  // namespace sgtv
