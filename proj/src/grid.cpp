#include "sgtv/grid.hpp"

#include <algorithm>
#include <cmath>

namespace sgtv {

Image::Image(int height, int width, double fill) : h_(height), w_(width) {
  if (height < 2 || width < 2) throw std::invalid_argument("Image: grid must be at least 2x2");
  v_.assign(static_cast<std::size_t>(height) * width, fill);
}

bool Image::all_finite() const {
  for (double x : v_)
    if (!std::isfinite(x)) return false;
  return true;
}

ComplexImage::ComplexImage(int height, int width, value_type fill) : h_(height), w_(width) {
  if (height < 2 || width < 2) throw std::invalid_argument("ComplexImage: grid must be at least 2x2");
  v_.assign(static_cast<std::size_t>(height) * width, fill);
}

GradientField::GradientField(int height, int width) : h_(height), w_(width) {
  if (height < 2 || width < 2) throw std::invalid_argument("GradientField: grid must be at least 2x2");
  dr_.assign(static_cast<std::size_t>(height) * width, 0.0);
  dc_.assign(static_cast<std::size_t>(height) * width, 0.0);
}

void GradientField::fill(double value) {
  std::fill(dr_.begin(), dr_.end(), value);
  std::fill(dc_.begin(), dc_.end(), value);
}

AnisotropyField AnisotropyField::identity(int height, int width) {
  if (height < 2 || width < 2) throw std::invalid_argument("AnisotropyField: grid must be at least 2x2");
  AnisotropyField m;
  m.kind_ = Kind::Identity;
  m.h_ = height;
  m.w_ = width;
  return m;
}

AnisotropyField AnisotropyField::isotropic(Image weights) {
  AnisotropyField m;
  m.kind_ = Kind::Isotropic;
  m.h_ = weights.height();
  m.w_ = weights.width();
  double* w = weights.data();
  for (std::int64_t k = 0; k < weights.size(); ++k) {
    if (!(w[k] >= 0.0 && w[k] <= 1.0 + 1e-12))
      throw std::invalid_argument("AnisotropyField: isotropic weights must lie in [0,1]");
    w[k] = std::min(w[k], 1.0);
  }
  m.weights_ = std::move(weights);
  return m;
}

AnisotropyField AnisotropyField::directional(GradientField xi) {
  AnisotropyField m;
  m.kind_ = Kind::Directional;
  m.h_ = xi.height();
  m.w_ = xi.width();
  double* xr = xi.row();
  double* xc = xi.col();
  for (std::int64_t k = 0; k < xi.size(); ++k) {
    const double n2 = xr[k] * xr[k] + xc[k] * xc[k];
    if (!(n2 <= 1.0 + 1e-9))
      throw std::invalid_argument("AnisotropyField: direction field must satisfy |xi| <= 1");
    if (n2 > 1.0) {
      const double s = 1.0 / std::sqrt(n2);
      xr[k] *= s;
      xc[k] *= s;
    }
  }
  m.xi_ = std::move(xi);
  return m;
}

void gradient(const Image& v, GradientField& out) {
  const int h = v.height(), w = v.width();
  if (out.height() != h || out.width() != w) out = GradientField(h, w);
  const double* p = v.data();
  double* dr = out.row();
  double* dc = out.col();
  for (int i = 0; i < h; ++i) {
    const std::size_t r = static_cast<std::size_t>(i) * w;
    const bool last_row = (i == h - 1);
    for (int j = 0; j < w; ++j) {
      dr[r + j] = last_row ? 0.0 : p[r + w + j] - p[r + j];
      dc[r + j] = (j == w - 1) ? 0.0 : p[r + j + 1] - p[r + j];
    }
  }
}

GradientField gradient(const Image& v) {
  GradientField g(v.height(), v.width());
  gradient(v, g);
  return g;
}

void divergence(const GradientField& g, Image& out) {
  const int h = g.height(), w = g.width();
  if (out.height() != h || out.width() != w) out = Image(h, w);
  const double* dr = g.row();
  const double* dc = g.col();
  double* p = out.data();
  // Exact negative adjoint of the forward-difference gradient: interior
  // cells get backward differences, the first row/column keeps its own
  // value and the last row/column only subtracts the neighbour (the
  // gradient never reads the last-line components).
  for (int i = 0; i < h; ++i) {
    const std::size_t r = static_cast<std::size_t>(i) * w;
    for (int j = 0; j < w; ++j) {
      double s = 0.0;
      if (i < h - 1) s += dr[r + j];
      if (i > 0) s -= dr[r - w + j];
      if (j < w - 1) s += dc[r + j];
      if (j > 0) s -= dc[r + j - 1];
      p[r + j] = s;
    }
  }
}

Image divergence(const GradientField& g) {
  Image v(g.height(), g.width());
  divergence(g, v);
  return v;
}

void apply_anisotropy(const AnisotropyField& m, const GradientField& g, GradientField& out) {
  if (m.height() != g.height() || m.width() != g.width())
    throw std::invalid_argument("apply_anisotropy: shape mismatch");
  if (out.height() != g.height() || out.width() != g.width())
    out = GradientField(g.height(), g.width());
  const std::int64_t n = g.size();
  const double* gr = g.row();
  const double* gc = g.col();
  double* or_ = out.row();
  double* oc = out.col();
  switch (m.kind()) {
    case AnisotropyField::Kind::Identity:
      std::copy(gr, gr + n, or_);
      std::copy(gc, gc + n, oc);
      break;
    case AnisotropyField::Kind::Isotropic: {
      const double* w = m.weights().data();
      for (std::int64_t k = 0; k < n; ++k) {
        or_[k] = w[k] * gr[k];
        oc[k] = w[k] * gc[k];
      }
      break;
    }
    case AnisotropyField::Kind::Directional: {
      const double* xr = m.xi().row();
      const double* xc = m.xi().col();
      for (std::int64_t k = 0; k < n; ++k) {
        const double d = xr[k] * gr[k] + xc[k] * gc[k];
        or_[k] = gr[k] - d * xr[k];
        oc[k] = gc[k] - d * xc[k];
      }
      break;
    }
  }
}

GradientField apply_anisotropy(const AnisotropyField& m, const GradientField& g) {
  GradientField out(g.height(), g.width());
  apply_anisotropy(m, g, out);
  return out;
}

Image pointwise_norm(const GradientField& g) {
  Image out(g.height(), g.width());
  const double* gr = g.row();
  const double* gc = g.col();
  double* p = out.data();
  for (std::int64_t k = 0; k < g.size(); ++k) p[k] = std::sqrt(gr[k] * gr[k] + gc[k] * gc[k]);
  return out;
}

void project_unit_ball(GradientField& y) {
  double* yr = y.row();
  double* yc = y.col();
  for (std::int64_t k = 0; k < y.size(); ++k) {
    const double n = std::sqrt(yr[k] * yr[k] + yc[k] * yc[k]);
    if (n > 1.0) {
      yr[k] /= n;
      yc[k] /= n;
    }
  }
}

void project_nonneg(Image& v) {
  double* p = v.data();
  for (std::int64_t k = 0; k < v.size(); ++k) p[k] = std::max(p[k], 0.0);
}

double dot(const Image& a, const Image& b) {
  if (!a.same_shape(b)) throw std::invalid_argument("dot: shape mismatch");
  double s = 0.0;
  const double* pa = a.data();
  const double* pb = b.data();
  for (std::int64_t k = 0; k < a.size(); ++k) s += pa[k] * pb[k];
  return s;
}

double dot(const GradientField& a, const GradientField& b) {
  if (!a.same_shape(b)) throw std::invalid_argument("dot: shape mismatch");
  double s = 0.0;
  const double* ar = a.row();
  const double* ac = a.col();
  const double* br = b.row();
  const double* bc = b.col();
  for (std::int64_t k = 0; k < a.size(); ++k) s += ar[k] * br[k] + ac[k] * bc[k];
  return s;
}

double norm(const Image& a) { return std::sqrt(dot(a, a)); }
double norm(const GradientField& a) { return std::sqrt(dot(a, a)); }

}  // namespace sgtv
