#pragma once

// Proximal map of alpha * R + indicator(C) for the structured TV functional
// R(v) = sum_i |M_i (grad v)_i|, evaluated by fast gradient projection on the
// dual problem. One dual ascent step reads
//
//   y^k    = P_B( ytil^{k-1} + tau * alpha * M grad P_C(f + alpha div M y^{k-1,~}) ),
//   tau    = 1 / (8 alpha^2),
//
// followed by the Nesterov t-sequence t_k = (1 + sqrt(1 + 4 t_{k-1}^2)) / 2
// and the two-step extrapolation ytil^k = y^k + ((t_{k-1}-1)/t_k)(y^k - y^{k-1}).
// P_B is the pointwise projection onto unit 2-balls, y/max(1,|y|). The fixed
// step is valid because ||M|| <= 1 pointwise and ||grad||^2 <= 8 on the 2D
// grid, which bounds the dual gradient's Lipschitz constant by 8 alpha^2.
// The primal solution is recovered as v = P_C(f + alpha div M y).
//
// The dual variable can be warm-started (y0), which the outer ADMM loop uses
// across iterations.

#include <vector>

#include "sgtv/grid.hpp"

namespace sgtv {

enum class Constraint { None, NonNegative };

struct ProxResult {
  Image v;          // primal minimizer approximation, v in C
  GradientField y;  // final dual variable, |y_i| <= 1
  std::vector<double> dual_objective_trace;  // per-iteration, only if requested
};

// Preallocated temporaries so repeated prox evaluations on one grid do not
// allocate; each solver instance serves one thread.
class ProxWorkspace {
 public:
  ProxWorkspace(int height, int width);
  GradientField ytil, my, grad_p;
  Image div_img, p_img;
};

// Core entry point: y carries the initial dual variable in and the final one
// out. alpha == 0 degenerates to v = P_C(f) with y untouched.
void prox_structured_tv(double alpha, const Image& f, const AnisotropyField& m, Constraint c,
                        int iterations, GradientField& y, Image& v_out, ProxWorkspace& ws,
                        std::vector<double>* dual_trace = nullptr);

ProxResult prox_structured_tv(double alpha, const Image& f, const AnisotropyField& m,
                              Constraint c, int iterations, const GradientField* y0 = nullptr,
                              bool track_dual_objective = false);

// 1/2 ||v - f||^2 + alpha R(v), the primal objective the prox minimizes
// (without the constraint indicator).
double prox_objective(double alpha, const Image& f, const AnisotropyField& m, const Image& v);

}  // namespace sgtv
