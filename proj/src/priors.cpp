#include "sgtv/priors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace sgtv {

namespace {

void check_eta(double eta) {
  if (!(eta > 0.0)) throw std::invalid_argument("edge parameter eta must be > 0");
}

// Rescale g so that max_i |g_i| = 1; a zero field stays zero.
void normalize_max_magnitude(GradientField& g) {
  double max2 = 0.0;
  const double* gr = g.row();
  const double* gc = g.col();
  for (std::int64_t k = 0; k < g.size(); ++k)
    max2 = std::max(max2, gr[k] * gr[k] + gc[k] * gc[k]);
  if (max2 <= 0.0) return;
  const double s = 1.0 / std::sqrt(max2);
  double* mr = g.row();
  double* mc = g.col();
  for (std::int64_t k = 0; k < g.size(); ++k) {
    mr[k] *= s;
    mc[k] *= s;
  }
}

}  // namespace

Image smoothed_magnitude(const GradientField& g, double eta) {
  check_eta(eta);
  Image out(g.height(), g.width());
  const double* gr = g.row();
  const double* gc = g.col();
  double* p = out.data();
  const double eta2 = eta * eta;
  for (std::int64_t k = 0; k < g.size(); ++k)
    p[k] = std::sqrt(gr[k] * gr[k] + gc[k] * gc[k] + eta2);
  return out;
}

Image weights_from_gradient(const GradientField& g, double eta) {
  check_eta(eta);
  Image out(g.height(), g.width());
  const double* gr = g.row();
  const double* gc = g.col();
  double* p = out.data();
  const double eta2 = eta * eta;
  for (std::int64_t k = 0; k < g.size(); ++k) {
    const double m2 = gr[k] * gr[k] + gc[k] * gc[k];
    // Exactly 1 where the side image is flat, so the prior reduces to TV.
    p[k] = (m2 == 0.0) ? 1.0 : std::min(eta / std::sqrt(m2 + eta2), 1.0);
  }
  return out;
}

GradientField direction_from_gradient(const GradientField& g, double eta) {
  check_eta(eta);
  GradientField xi(g.height(), g.width());
  const double* gr = g.row();
  const double* gc = g.col();
  double* xr = xi.row();
  double* xc = xi.col();
  const double eta2 = eta * eta;
  for (std::int64_t k = 0; k < g.size(); ++k) {
    const double m2 = gr[k] * gr[k] + gc[k] * gc[k];
    if (m2 == 0.0) {
      xr[k] = 0.0;
      xc[k] = 0.0;
    } else {
      const double s = 1.0 / std::sqrt(m2 + eta2);
      xr[k] = gr[k] * s;
      xc[k] = gc[k] * s;
    }
  }
  return xi;
}

AnisotropyField weights_from_side_info(const Image& side, double eta) {
  GradientField g = gradient(side);
  normalize_max_magnitude(g);
  return AnisotropyField::isotropic(weights_from_gradient(g, eta));
}

AnisotropyField direction_from_side_info(const Image& side, double eta) {
  GradientField g = gradient(side);
  normalize_max_magnitude(g);
  return AnisotropyField::directional(direction_from_gradient(g, eta));
}

AnisotropyField make_anisotropy(PriorKind kind, const std::optional<Image>& side, double eta,
                                int height, int width) {
  switch (kind) {
    case PriorKind::TV:
      return AnisotropyField::identity(height, width);
    case PriorKind::WTV:
      if (!side) throw std::invalid_argument("weighted TV requires side information");
      if (side->height() != height || side->width() != width)
        throw std::invalid_argument("side information shape mismatch");
      return weights_from_side_info(*side, eta);
    case PriorKind::DTV:
      if (!side) throw std::invalid_argument("directional TV requires side information");
      if (side->height() != height || side->width() != width)
        throw std::invalid_argument("side information shape mismatch");
      return direction_from_side_info(*side, eta);
  }
  throw std::invalid_argument("unknown prior kind");
}

double eval_regularizer(const AnisotropyField& m, const Image& v) {
  if (m.height() != v.height() || m.width() != v.width())
    throw std::invalid_argument("eval_regularizer: shape mismatch");
  const GradientField g = gradient(v);
  const GradientField mg = apply_anisotropy(m, g);
  const double* r = mg.row();
  const double* c = mg.col();
  double sum = 0.0;
  for (std::int64_t k = 0; k < mg.size(); ++k) sum += std::sqrt(r[k] * r[k] + c[k] * c[k]);
  return sum;
}

PriorKind parse_prior(const std::string& name) {
  if (name == "tv") return PriorKind::TV;
  if (name == "wtv") return PriorKind::WTV;
  if (name == "dtv") return PriorKind::DTV;
  throw std::invalid_argument("unknown prior '" + name + "' (expected tv, wtv or dtv)");
}

const char* prior_name(PriorKind kind) {
  switch (kind) {
    case PriorKind::TV: return "tv";
    case PriorKind::WTV: return "wtv";
    case PriorKind::DTV: return "dtv";
  }
  return "?";
}

}  // namespace sgtv
