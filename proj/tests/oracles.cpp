#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace oracles {

sgtv::Image divergence_from_adjoint_identity(const sgtv::GradientField& g) {
  const int h = g.height(), w = g.width();
  sgtv::Image out(h, w);
  sgtv::Image basis(h, w, 0.0);
  for (int i = 0; i < h; ++i)
    for (int j = 0; j < w; ++j) {
      basis(i, j) = 1.0;
      out(i, j) = -sgtv::dot(g, sgtv::gradient(basis));
      basis(i, j) = 0.0;
    }
  return out;
}

double prox_primal_descent(double alpha, const sgtv::Image& f, const sgtv::AnisotropyField& m,
                           sgtv::Constraint c, long iterations) {
  const int h = f.height(), w = f.width();
  const std::int64_t n = f.size();
  const bool nonneg = (c == sgtv::Constraint::NonNegative);

  sgtv::Image v = f;
  if (nonneg) sgtv::project_nonneg(v);

  sgtv::GradientField grad_v(h, w), mg(h, w), q(h, w), mq(h, w);
  sgtv::Image div_mq(h, w);

  double best = std::numeric_limits<double>::infinity();
  for (long k = 1; k <= iterations; ++k) {
    sgtv::gradient(v, grad_v);
    sgtv::apply_anisotropy(m, grad_v, mg);

    double reg = 0.0;
    {
      const double* gr = mg.row();
      const double* gc = mg.col();
      double* qr = q.row();
      double* qc = q.col();
      for (std::int64_t t = 0; t < n; ++t) {
        const double nrm = std::sqrt(gr[t] * gr[t] + gc[t] * gc[t]);
        reg += nrm;
        if (nrm > 1e-300) {
          qr[t] = gr[t] / nrm;
          qc[t] = gc[t] / nrm;
        } else {
          qr[t] = 0.0;
          qc[t] = 0.0;
        }
      }
    }

    double quad = 0.0;
    {
      const double* pv = v.data();
      const double* pf = f.data();
      for (std::int64_t t = 0; t < n; ++t) {
        const double d = pv[t] - pf[t];
        quad += d * d;
      }
    }
    best = std::min(best, 0.5 * quad + alpha * reg);

    sgtv::apply_anisotropy(m, q, mq);
    sgtv::divergence(mq, div_mq);

    const double step = 2.0 / (k + 1);  // strongly convex schedule, mu = 1
    {
      double* pv = v.data();
      const double* pf = f.data();
      const double* pd = div_mq.data();
      for (std::int64_t t = 0; t < n; ++t) {
        const double sub = (pv[t] - pf[t]) - alpha * pd[t];
        double next = pv[t] - step * sub;
        if (nonneg && next < 0.0) next = 0.0;
        pv[t] = next;
      }
    }
  }
  return best;
}

sgtv::SsimResult ssim_direct(const sgtv::Image& reference, const sgtv::Image& test) {
  constexpr int radius = 5;
  constexpr double sigma = 1.5;
  constexpr double c1 = 0.01 * 0.01;
  constexpr double c2 = 0.03 * 0.03;
  const int h = reference.height(), w = reference.width();

  double kernel[2 * radius + 1][2 * radius + 1];
  double total = 0.0;
  for (int a = -radius; a <= radius; ++a)
    for (int b = -radius; b <= radius; ++b) {
      kernel[a + radius][b + radius] = std::exp(-0.5 * (a * a + b * b) / (sigma * sigma));
      total += kernel[a + radius][b + radius];
    }
  for (auto& row : kernel)
    for (double& v : row) v /= total;

  sgtv::SsimResult res{0.0, sgtv::Image(h, w)};
  double sum = 0.0;
  for (int i = 0; i < h; ++i)
    for (int j = 0; j < w; ++j) {
      double mx = 0.0, my = 0.0, xx = 0.0, yy = 0.0, xy = 0.0;
      for (int a = -radius; a <= radius; ++a)
        for (int b = -radius; b <= radius; ++b) {
          const int ii = std::clamp(i + a, 0, h - 1);
          const int jj = std::clamp(j + b, 0, w - 1);
          const double kw = kernel[a + radius][b + radius];
          const double x = reference(ii, jj);
          const double y = test(ii, jj);
          mx += kw * x;
          my += kw * y;
          xx += kw * x * x;
          yy += kw * y * y;
          xy += kw * x * y;
        }
      const double var_x = xx - mx * mx;
      const double var_y = yy - my * my;
      const double cov = xy - mx * my;
      const double val = ((2.0 * mx * my + c1) * (2.0 * cov + c2)) /
                         ((mx * mx + my * my + c1) * (var_x + var_y + c2));
      res.map(i, j) = val;
      sum += val;
    }
  res.mean = sum / static_cast<double>(res.map.size());
  return res;
}

}  // namespace oracles
