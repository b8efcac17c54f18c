#include "sgtv/admm.hpp"

#include <cmath>
#include <limits>

namespace sgtv {

namespace {

double norm2_diff(const ComplexImage& a, const ComplexImage& b) {
  double s = 0.0;
  const std::complex<double>* pa = a.data();
  const std::complex<double>* pb = b.data();
  for (std::int64_t k = 0; k < a.size(); ++k) {
    const double re = pa[k].real() - pb[k].real();
    const double im = pa[k].imag() - pb[k].imag();
    s += re * re + im * im;
  }
  return s;
}

double norm2_diff(const Image& a, const Image& b) {
  double s = 0.0;
  const double* pa = a.data();
  const double* pb = b.data();
  for (std::int64_t k = 0; k < a.size(); ++k) {
    const double d = pa[k] - pb[k];
    s += d * d;
  }
  return s;
}

double norm2(const Image& a) {
  double s = 0.0;
  const double* p = a.data();
  for (std::int64_t k = 0; k < a.size(); ++k) s += p[k] * p[k];
  return s;
}

double norm2(const ComplexImage& a) {
  double s = 0.0;
  const std::complex<double>* p = a.data();
  for (std::int64_t k = 0; k < a.size(); ++k)
    s += p[k].real() * p[k].real() + p[k].imag() * p[k].imag();
  return s;
}

void x_update_cells(const Image& counts, const ComplexImage& sdata, const ComplexImage& fz,
                    const ComplexImage& b, double rho, ComplexImage& x) {
  const double* cnt = counts.data();
  const std::complex<double>* sd = sdata.data();
  const std::complex<double>* pf = fz.data();
  const std::complex<double>* pb = b.data();
  std::complex<double>* px = x.data();
  for (std::int64_t k = 0; k < x.size(); ++k)
    px[k] = (sd[k] + rho * (pf[k] - pb[k])) / (cnt[k] + rho);
}

}  // namespace

void AdmmConfig::validate() const {
  if (alpha < 0.0) throw std::invalid_argument("admm: alpha must be >= 0");
  if (!(rho0 > 0.0)) throw std::invalid_argument("admm: rho0 must be > 0");
  if (outer_iterations < 1) throw std::invalid_argument("admm: outer_iterations must be >= 1");
  if (inner_prox_iterations < 1)
    throw std::invalid_argument("admm: inner_prox_iterations must be >= 1");
  if (!(rho_mu > 1.0)) throw std::invalid_argument("admm: rho_mu must be > 1");
  if (!(rho_tau > 1.0)) throw std::invalid_argument("admm: rho_tau must be > 1");
  if (tolerance < 0.0) throw std::invalid_argument("admm: tolerance must be >= 0");
}

ComplexImage x_update(const KSpaceData& d, const SamplingPattern& p, const Image& z,
                      const ComplexImage& b, double rho) {
  if (z.height() != p.height || z.width() != p.width)
    throw std::invalid_argument("x_update: shape mismatch");
  const Image counts = mask_counts(p);
  const ComplexImage sdata = sample_adjoint(p, d);
  Fft2d fft(p.height, p.width);
  ComplexImage fz = embed(z);
  fft.dft2(fz);
  ComplexImage x(p.height, p.width);
  x_update_cells(counts, sdata, fz, b, rho, x);
  return x;
}

std::pair<double, double> update_residuals(AdmmState& s) {
  const double primal = std::sqrt(norm2_diff(s.x, s.fz) + norm2_diff(s.v, s.z));
  const double dual = s.rho * std::sqrt(2.0 * norm2_diff(s.z, s.z_prev));
  s.primal_residual = primal;
  s.dual_residual = dual;
  return {primal, dual};
}

void rho_adapt(AdmmState& s, double mu, double tau) {
  double scale = 1.0;
  if (s.primal_residual > mu * s.dual_residual)
    scale = tau;
  else if (s.dual_residual > mu * s.primal_residual)
    scale = 1.0 / tau;
  if (scale == 1.0) return;
  s.rho *= scale;
  const double inv = 1.0 / scale;
  std::complex<double>* pb = s.b.data();
  for (std::int64_t k = 0; k < s.b.size(); ++k) pb[k] *= inv;
  double* pu = s.u.data();
  for (std::int64_t k = 0; k < s.u.size(); ++k) pu[k] *= inv;
}

Image reconstruct(const KSpaceData& d, const SamplingPattern& p, const AnisotropyField& m,
                  const AdmmConfig& cfg, AdmmDiagnostics* diag) {
  cfg.validate();
  p.validate();
  if (d.size() != p.samples()) throw std::invalid_argument("reconstruct: data/pattern length mismatch");
  if (m.height() != p.height || m.width() != p.width)
    throw std::invalid_argument("reconstruct: anisotropy/pattern shape mismatch");

  const int h = p.height, w = p.width;
  const Fft2d fft(h, w);
  const Image counts = mask_counts(p);
  const ComplexImage sdata = sample_adjoint(p, d);
  const double data_scale = std::sqrt(norm2(sdata)) + 1.0;  // guards relative checks

  AdmmState s;
  s.v = Image(h, w);
  s.x = ComplexImage(h, w);
  s.z = Image(h, w);
  s.z_prev = Image(h, w);
  s.b = ComplexImage(h, w);
  s.u = Image(h, w);
  s.fz = ComplexImage(h, w);  // F of z = 0
  s.y = GradientField(h, w);
  s.rho = cfg.rho0;

  ProxWorkspace prox_ws(h, w);
  Image prox_point(h, w);
  ComplexImage scratch(h, w);

  if (diag) {
    diag->rows.clear();
    diag->rows.reserve(static_cast<std::size_t>(cfg.outer_iterations));
    diag->converged = false;
  }

  for (int iter = 1; iter <= cfg.outer_iterations; ++iter) {
    s.iteration = iter;

    // First block, v part: prox at z - u with weight alpha/rho.
    {
      const double* pz = s.z.data();
      const double* pu = s.u.data();
      double* pf = prox_point.data();
      for (std::int64_t k = 0; k < prox_point.size(); ++k) pf[k] = pz[k] - pu[k];
    }
    if (!cfg.warm_start_dual) s.y.fill(0.0);
    prox_structured_tv(cfg.alpha / s.rho, prox_point, m, Constraint::NonNegative,
                       cfg.inner_prox_iterations, s.y, s.v, prox_ws);

    // First block, x part: per-cell solve against the sampled data.
    x_update_cells(counts, sdata, s.fz, s.b, s.rho, s.x);

    // Second block: z averages the two consensus views.
    s.z_prev = s.z;
    {
      std::complex<double>* sc = scratch.data();
      const std::complex<double>* px = s.x.data();
      const std::complex<double>* pb = s.b.data();
      for (std::int64_t k = 0; k < scratch.size(); ++k) sc[k] = px[k] + pb[k];
    }
    fft.idft2(scratch);
    {
      double* pz = s.z.data();
      const std::complex<double>* sc = scratch.data();
      const double* pv = s.v.data();
      const double* pu = s.u.data();
      for (std::int64_t k = 0; k < s.z.size(); ++k)
        pz[k] = 0.5 * (sc[k].real() + pv[k] + pu[k]);
    }

    // Refresh F z, then the scaled multipliers.
    {
      std::complex<double>* pf = s.fz.data();
      const double* pz = s.z.data();
      for (std::int64_t k = 0; k < s.fz.size(); ++k) pf[k] = {pz[k], 0.0};
    }
    fft.dft2(s.fz);
    {
      std::complex<double>* pb = s.b.data();
      const std::complex<double>* px = s.x.data();
      const std::complex<double>* pf = s.fz.data();
      for (std::int64_t k = 0; k < s.b.size(); ++k) pb[k] += px[k] - pf[k];
      double* pu = s.u.data();
      const double* pv = s.v.data();
      const double* pz = s.z.data();
      for (std::int64_t k = 0; k < s.u.size(); ++k) pu[k] += pv[k] - pz[k];
    }

    const auto [primal, dual] = update_residuals(s);
    if (!std::isfinite(primal) || !std::isfinite(dual))
      throw numeric_error("reconstruct: non-finite residual at iteration " +
                          std::to_string(iter));

    double objective = std::numeric_limits<double>::quiet_NaN();
    if (cfg.track_objective) {
      {
        std::complex<double>* sc = scratch.data();
        const double* pv = s.v.data();
        for (std::int64_t k = 0; k < scratch.size(); ++k) sc[k] = {pv[k], 0.0};
      }
      fft.dft2(scratch);
      double fid = 0.0;
      for (std::size_t k = 0; k < p.indices.size(); ++k) {
        const std::complex<double> r = scratch.data()[p.indices[k]] - d.values[k];
        fid += r.real() * r.real() + r.imag() * r.imag();
      }
      objective = 0.5 * fid + cfg.alpha * eval_regularizer(m, s.v);
      if (!std::isfinite(objective))
        throw numeric_error("reconstruct: non-finite objective at iteration " +
                            std::to_string(iter));
    }

    if (diag) diag->rows.push_back({iter, objective, primal, dual, s.rho});

    if (cfg.tolerance > 0.0) {
      const double pri_scale =
          std::max({std::sqrt(norm2(s.x) + norm2(s.v)), std::sqrt(norm2(s.fz) + norm2(s.z)),
                    data_scale * 1e-12});
      // The dual scale floors at the iterate scale so that vanishing
      // multipliers (e.g. noiseless full sampling) cannot stall the test.
      const double dual_scale =
          std::max(s.rho * std::sqrt(norm2(s.b) + norm2(s.u)), pri_scale);
      if (primal / pri_scale < cfg.tolerance && dual / dual_scale < cfg.tolerance) {
        if (diag) {
          diag->converged = true;
          diag->iterations_run = iter;
        }
        return s.v;
      }
    }

    if (cfg.adapt_rho) rho_adapt(s, cfg.rho_mu, cfg.rho_tau);
  }

  if (diag) diag->iterations_run = cfg.outer_iterations;
  return s.v;
}

}  // namespace sgtv
