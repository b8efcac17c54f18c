#pragma once

// The three regularizers expressed through a common anisotropy field M:
// R(v) = sum_i |M_i (grad v)_i| with M = Id for total variation, a scalar
// weight field for weighted TV and the projector Id - xi xi^* for
// directional TV. The weight and direction fields come from a side image:
//   w_i  = eta / |grad s_i|_eta,      xi_i = grad s_i / |grad s_i|_eta,
// where |x|_eta = sqrt(|x|^2 + eta^2). Before either rule is applied, the
// side gradient is rescaled so its largest magnitude is 1; eta then reads as
// a fraction of the strongest edge. With constant side information both
// rules degenerate exactly to plain TV (weights 1, xi = 0).

#include <optional>
#include <string>

#include "sgtv/grid.hpp"

namespace sgtv {

enum class PriorKind { TV, WTV, DTV };

// sqrt(|g_i|^2 + eta^2) per pixel, always >= eta.
Image smoothed_magnitude(const GradientField& g, double eta);

// The two rules at the gradient-field level (no normalization applied);
// the *_from_side_info builders below normalize and delegate here.
Image weights_from_gradient(const GradientField& g, double eta);
GradientField direction_from_gradient(const GradientField& g, double eta);

AnisotropyField weights_from_side_info(const Image& side, double eta);
AnisotropyField direction_from_side_info(const Image& side, double eta);

// TV -> identity; WTV/DTV require side information.
AnisotropyField make_anisotropy(PriorKind kind, const std::optional<Image>& side, double eta,
                                int height, int width);

// sum_i |M_i (grad v)_i|.
double eval_regularizer(const AnisotropyField& m, const Image& v);

PriorKind parse_prior(const std::string& name);
const char* prior_name(PriorKind kind);

}  // namespace sgtv
