#pragma once

// Double-split ADMM for 1/2 ||E v - d||^2 + alpha R(v) over nonnegative
// images, with E the Fourier-sampling operator and R a structured TV prior.
// The splits x = F z (k-space consensus) and v = z (image consensus) give
// three updates per iteration:
//
//   v <- prox_{(alpha/rho) R + indicator(>=0)}(z - u)       [fast gradient projection]
//   x <- (S^*S + rho I)^{-1} [S^* d + rho (F z - b)]         [per-cell scaling]
//   z <- 1/2 [Re F^{-1}(x + b) + v + u]
//
// followed by the scaled multiplier updates b += x - F z, u += v - z. S^*S
// is diagonal (sample multiplicities), so the x-update is a pointwise
// formula. rho is optionally rebalanced from the primal/dual residuals
// (factor tau when they drift apart by more than mu), with the scaled
// multipliers rescaled accordingly. The prox dual variable is warm-started
// across outer iterations.

#include <cstdint>
#include <utility>
#include <vector>

#include "sgtv/grid.hpp"
#include "sgtv/mri.hpp"
#include "sgtv/priors.hpp"
#include "sgtv/prox.hpp"

namespace sgtv {

struct AdmmConfig {
  double alpha = 5e-3;             // regularization weight
  double rho0 = 1.0;               // initial penalty
  int outer_iterations = 200;
  int inner_prox_iterations = 20;
  double rho_mu = 10.0;            // residual-balance threshold
  double rho_tau = 2.0;            // rho scale factor
  bool adapt_rho = true;
  bool warm_start_dual = true;
  double tolerance = 1e-6;         // early stop on relative residuals; 0 disables
  bool track_objective = true;     // per-iteration 1/2|Ev-d|^2 + alpha R(v)

  void validate() const;
};

struct AdmmState {
  Image v;          // primal reconstruction (nonnegative after each prox)
  ComplexImage x;   // split k-space variable
  Image z, z_prev;  // consensus variable and its previous value
  ComplexImage b;   // scaled multiplier for x = F z
  Image u;          // scaled multiplier for v = z
  ComplexImage fz;  // cached F z for the current z
  GradientField y;  // warm-started prox dual variable
  double rho = 1.0;
  int iteration = 0;
  double primal_residual = 0.0;
  double dual_residual = 0.0;
};

struct AdmmDiagnostics {
  struct Row {
    int iteration;
    double objective;  // NaN when objective tracking is off
    double primal_residual;
    double dual_residual;
    double rho;
  };
  std::vector<Row> rows;
  int iterations_run = 0;
  bool converged = false;  // stopped early on the residual tolerance
};

// One x-update from scratch (builds its own transform); the reconstruction
// loop uses a fused in-place equivalent.
ComplexImage x_update(const KSpaceData& d, const SamplingPattern& p, const Image& z,
                      const ComplexImage& b, double rho);

// (primal, dual) residual norms: || (x - Fz, v - z) || and
// rho * || (F(z - z_prev), z - z_prev) || = rho * sqrt(2) * ||z - z_prev||
// (the transform is unitary). Stores them in the state and returns them.
std::pair<double, double> update_residuals(AdmmState& s);

// Boyd-style rebalancing: primal > mu * dual scales rho up by tau and divides
// the (scaled) multipliers by tau; the dual-dominant case does the inverse.
void rho_adapt(AdmmState& s, double mu, double tau);

Image reconstruct(const KSpaceData& d, const SamplingPattern& p, const AnisotropyField& m,
                  const AdmmConfig& cfg, AdmmDiagnostics* diag = nullptr);

}  // namespace sgtv
