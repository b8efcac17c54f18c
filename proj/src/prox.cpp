#include "sgtv/prox.hpp"

#include <cmath>

#include "sgtv/priors.hpp"

namespace sgtv {

namespace {

void apply_constraint(Constraint c, Image& v) {
  if (c == Constraint::NonNegative) project_nonneg(v);
}

}  // namespace

ProxWorkspace::ProxWorkspace(int height, int width)
    : ytil(height, width),
      my(height, width),
      grad_p(height, width),
      div_img(height, width),
      p_img(height, width) {}

void prox_structured_tv(double alpha, const Image& f, const AnisotropyField& m, Constraint c,
                        int iterations, GradientField& y, Image& v_out, ProxWorkspace& ws,
                        std::vector<double>* dual_trace) {
  if (alpha < 0.0) throw std::invalid_argument("prox: alpha must be >= 0");
  if (iterations < 1) throw std::invalid_argument("prox: iterations must be >= 1");
  if (m.height() != f.height() || m.width() != f.width())
    throw std::invalid_argument("prox: anisotropy shape mismatch");
  if (y.height() != f.height() || y.width() != f.width())
    throw std::invalid_argument("prox: dual variable shape mismatch");

  const int h = f.height(), w = f.width();
  const std::int64_t n = f.size();

  if (alpha == 0.0) {
    v_out = f;
    apply_constraint(c, v_out);
    return;
  }

  {
    // Dual feasibility of the warm start.
    const double* yr = y.row();
    const double* yc = y.col();
    for (std::int64_t k = 0; k < n; ++k)
      if (yr[k] * yr[k] + yc[k] * yc[k] > 1.0 + 1e-9)
        throw std::invalid_argument("prox: initial dual variable must satisfy |y_i| <= 1");
  }

  GradientField& ytil = ws.ytil;
  GradientField& my = ws.my;
  GradientField& grad_p = ws.grad_p;
  Image& div_img = ws.div_img;
  Image& p = ws.p_img;

  ytil = y;
  const double step = 1.0 / (8.0 * alpha);  // tau * alpha with tau = (8 alpha^2)^{-1}
  double t_prev = 1.0;
  double norm_f2 = 0.0;
  if (dual_trace) {
    dual_trace->clear();
    for (std::int64_t k = 0; k < n; ++k) norm_f2 += f.data()[k] * f.data()[k];
  }

  for (int iter = 1; iter <= iterations; ++iter) {
    // h = f + alpha div(M ytil); p = P_C(h)
    apply_anisotropy(m, ytil, my);
    divergence(my, div_img);
    {
      const double* fp = f.data();
      const double* dv = div_img.data();
      double* pp = p.data();
      if (dual_trace) {
        double resid2 = 0.0, h2 = 0.0;
        for (std::int64_t k = 0; k < n; ++k) {
          const double hk = fp[k] + alpha * dv[k];
          const double pk = (c == Constraint::NonNegative) ? std::max(hk, 0.0) : hk;
          pp[k] = pk;
          const double r = hk - pk;
          resid2 += r * r;
          h2 += hk * hk;
        }
        dual_trace->push_back(0.5 * resid2 - 0.5 * h2 + 0.5 * norm_f2);
      } else if (c == Constraint::NonNegative) {
        for (std::int64_t k = 0; k < n; ++k) pp[k] = std::max(fp[k] + alpha * dv[k], 0.0);
      } else {
        for (std::int64_t k = 0; k < n; ++k) pp[k] = fp[k] + alpha * dv[k];
      }
    }

    gradient(p, grad_p);
    apply_anisotropy(m, grad_p, my);  // my now holds M grad p

    const double t = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t_prev * t_prev));
    const double beta = (t_prev - 1.0) / t;
    t_prev = t;

    // Dual ascent + ball projection + extrapolation in one pass.
    {
      double* yr = y.row();
      double* yc = y.col();
      double* tr = ytil.row();
      double* tc = ytil.col();
      const double* gr = my.row();
      const double* gc = my.col();
      for (std::int64_t k = 0; k < n; ++k) {
        double cr = tr[k] + step * gr[k];
        double cc = tc[k] + step * gc[k];
        const double nn = std::sqrt(cr * cr + cc * cc);
        if (nn > 1.0) {
          cr /= nn;
          cc /= nn;
        }
        tr[k] = cr + beta * (cr - yr[k]);
        tc[k] = cc + beta * (cc - yc[k]);
        yr[k] = cr;
        yc[k] = cc;
      }
    }
  }

  // Final primal variable from the last (non-extrapolated) dual iterate.
  apply_anisotropy(m, y, my);
  divergence(my, div_img);
  if (v_out.height() != h || v_out.width() != w) v_out = Image(h, w);
  {
    const double* fp = f.data();
    const double* dv = div_img.data();
    double* vp = v_out.data();
    if (c == Constraint::NonNegative)
      for (std::int64_t k = 0; k < n; ++k) vp[k] = std::max(fp[k] + alpha * dv[k], 0.0);
    else
      for (std::int64_t k = 0; k < n; ++k) vp[k] = fp[k] + alpha * dv[k];
  }
}

ProxResult prox_structured_tv(double alpha, const Image& f, const AnisotropyField& m,
                              Constraint c, int iterations, const GradientField* y0,
                              bool track_dual_objective) {
  ProxResult res;
  res.y = y0 ? *y0 : GradientField(f.height(), f.width());
  ProxWorkspace ws(f.height(), f.width());
  prox_structured_tv(alpha, f, m, c, iterations, res.y, res.v, ws,
                     track_dual_objective ? &res.dual_objective_trace : nullptr);
  return res;
}

double prox_objective(double alpha, const Image& f, const AnisotropyField& m, const Image& v) {
  if (!v.same_shape(f)) throw std::invalid_argument("prox_objective: shape mismatch");
  double quad = 0.0;
  const double* vp = v.data();
  const double* fp = f.data();
  for (std::int64_t k = 0; k < v.size(); ++k) {
    const double d = vp[k] - fp[k];
    quad += d * d;
  }
  return 0.5 * quad + alpha * eval_regularizer(m, v);
}

}  // namespace sgtv
