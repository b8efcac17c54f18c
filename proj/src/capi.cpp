#include "sgtv.h"

#include <cstring>
#include <exception>
#include <string>

#include "sgtv/admm.hpp"
#include "sgtv/grid.hpp"
#include "sgtv/io.hpp"
#include "sgtv/metrics.hpp"
#include "sgtv/mri.hpp"
#include "sgtv/phantom.hpp"
#include "sgtv/priors.hpp"
#include "sgtv/sampling.hpp"

struct sgtv_image {
  sgtv::Image im;
};
struct sgtv_pattern {
  sgtv::SamplingPattern p;
};
struct sgtv_kspace {
  sgtv::KSpaceData d;
};
struct sgtv_anisotropy {
  sgtv::AnisotropyField m;
  explicit sgtv_anisotropy(sgtv::AnisotropyField f) : m(std::move(f)) {}
};
struct sgtv_diagnostics {
  sgtv::AdmmDiagnostics diag;
};

namespace {

thread_local std::string g_last_error = "ok";

sgtv_status fail(sgtv_status code, const char* what) {
  g_last_error = what ? what : "unknown error";
  return code;
}

// Runs the body, translating exceptions into status codes.
template <typename Fn>
sgtv_status guarded(Fn&& fn) {
  try {
    fn();
    return SGTV_OK;
  } catch (const sgtv::io_error& e) {
    return fail(SGTV_ERR_IO, e.what());
  } catch (const sgtv::numeric_error& e) {
    return fail(SGTV_ERR_NUMERIC, e.what());
  } catch (const std::invalid_argument& e) {
    return fail(SGTV_ERR_ARGUMENT, e.what());
  } catch (const std::exception& e) {
    return fail(SGTV_ERR_ARGUMENT, e.what());
  }
}

}  // namespace

extern "C" {

const char* sgtv_version(void) { return "1.0.0"; }

const char* sgtv_last_error(void) { return g_last_error.c_str(); }

sgtv_status sgtv_image_create(int32_t height, int32_t width, sgtv_image** out) {
  if (!(out != nullptr)) return fail(SGTV_ERR_ARGUMENT, "null output handle");
  return guarded([&] { *out = new sgtv_image{sgtv::Image(height, width)}; });
}

sgtv_status sgtv_image_clone(const sgtv_image* src, sgtv_image** out) {
  if (!(src && out)) return fail(SGTV_ERR_ARGUMENT, "null handle");
  return guarded([&] { *out = new sgtv_image{src->im}; });
}

void sgtv_image_free(sgtv_image* im) { delete im; }

int32_t sgtv_image_height(const sgtv_image* im) { return im ? im->im.height() : 0; }
int32_t sgtv_image_width(const sgtv_image* im) { return im ? im->im.width() : 0; }
double* sgtv_image_pixels(sgtv_image* im) { return im ? im->im.data() : nullptr; }
const double* sgtv_image_pixels_const(const sgtv_image* im) {
  return im ? im->im.data() : nullptr;
}

sgtv_status sgtv_image_read(const char* path, sgtv_image** out) {
  if (!(path && out)) return fail(SGTV_ERR_ARGUMENT, "null argument");
  return guarded([&] { *out = new sgtv_image{sgtv::read_image(path)}; });
}

sgtv_status sgtv_image_write(const sgtv_image* im, const char* path) {
  if (!(im && path)) return fail(SGTV_ERR_ARGUMENT, "null argument");
  return guarded([&] { sgtv::write_image(im->im, path); });
}

sgtv_status sgtv_image_write_pgm(const sgtv_image* im, const char* path) {
  if (!(im && path)) return fail(SGTV_ERR_ARGUMENT, "null argument");
  return guarded([&] { sgtv::write_pgm(im->im, path); });
}

sgtv_status sgtv_phantom_pair(int32_t size, sgtv_image** t1, sgtv_image** t2) {
  if (!(t1 && t2)) return fail(SGTV_ERR_ARGUMENT, "null output handle");
  return guarded([&] {
    sgtv::PhantomPair pair = sgtv::shepp_logan_pair(size);
    *t1 = new sgtv_image{std::move(pair.t1)};
    *t2 = new sgtv_image{std::move(pair.t2)};
  });
}

sgtv_status sgtv_pattern_generate(const char* spec, int32_t height, int32_t width,
                                  sgtv_pattern** out) {
  if (!(spec && out)) return fail(SGTV_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    const sgtv::PatternSpec parsed = sgtv::parse_pattern_spec(spec, height, width);
    *out = new sgtv_pattern{sgtv::generate(parsed)};
  });
}

sgtv_status sgtv_pattern_read(const char* path, sgtv_pattern** out) {
  if (!(path && out)) return fail(SGTV_ERR_ARGUMENT, "null argument");
  return guarded([&] { *out = new sgtv_pattern{sgtv::read_pattern(path)}; });
}

sgtv_status sgtv_pattern_write(const sgtv_pattern* p, const char* path) {
  if (!(p && path)) return fail(SGTV_ERR_ARGUMENT, "null argument");
  return guarded([&] { sgtv::write_pattern(p->p, path); });
}

void sgtv_pattern_free(sgtv_pattern* p) { delete p; }

int32_t sgtv_pattern_height(const sgtv_pattern* p) { return p ? p->p.height : 0; }
int32_t sgtv_pattern_width(const sgtv_pattern* p) { return p ? p->p.width : 0; }
int64_t sgtv_pattern_samples(const sgtv_pattern* p) { return p ? p->p.samples() : 0; }

double sgtv_pattern_undersampling(const sgtv_pattern* p) {
  if (!p || p->p.indices.empty()) return 0.0;
  return sgtv::undersampling_factor(p->p);
}

sgtv_status sgtv_kspace_read(const char* path, sgtv_kspace** out) {
  if (!(path && out)) return fail(SGTV_ERR_ARGUMENT, "null argument");
  return guarded([&] { *out = new sgtv_kspace{sgtv::read_kspace(path)}; });
}

sgtv_status sgtv_kspace_write(const sgtv_kspace* d, const char* path) {
  if (!(d && path)) return fail(SGTV_ERR_ARGUMENT, "null argument");
  return guarded([&] { sgtv::write_kspace(d->d, path); });
}

void sgtv_kspace_free(sgtv_kspace* d) { delete d; }

int64_t sgtv_kspace_samples(const sgtv_kspace* d) { return d ? d->d.size() : 0; }

sgtv_status sgtv_simulate(const sgtv_image* truth, const sgtv_pattern* p, double fraction,
                          uint64_t seed, sgtv_kspace** out, double* sigma_out) {
  if (!(truth && p && out)) return fail(SGTV_ERR_ARGUMENT, "null argument");
  return guarded(
      [&] { *out = new sgtv_kspace{sgtv::simulate(truth->im, p->p, fraction, seed, sigma_out)}; });
}

sgtv_status sgtv_anisotropy_create(sgtv_prior kind, const sgtv_image* side, double eta,
                                   int32_t height, int32_t width, sgtv_anisotropy** out) {
  if (!(out != nullptr)) return fail(SGTV_ERR_ARGUMENT, "null output handle");
  return guarded([&] {
    sgtv::PriorKind pk;
    switch (kind) {
      case SGTV_PRIOR_TV: pk = sgtv::PriorKind::TV; break;
      case SGTV_PRIOR_WTV: pk = sgtv::PriorKind::WTV; break;
      case SGTV_PRIOR_DTV: pk = sgtv::PriorKind::DTV; break;
      default: throw std::invalid_argument("unknown prior kind");
    }
    std::optional<sgtv::Image> side_img;
    if (side) side_img = side->im;
    *out = new sgtv_anisotropy(sgtv::make_anisotropy(pk, side_img, eta, height, width));
  });
}

void sgtv_anisotropy_free(sgtv_anisotropy* m) { delete m; }

sgtv_status sgtv_regularizer_value(const sgtv_anisotropy* m, const sgtv_image* v, double* out) {
  if (!(m && v && out)) return fail(SGTV_ERR_ARGUMENT, "null argument");
  return guarded([&] { *out = sgtv::eval_regularizer(m->m, v->im); });
}

void sgtv_admm_options_defaults(sgtv_admm_options* opts) {
  if (!opts) return;
  const sgtv::AdmmConfig cfg;
  opts->alpha = cfg.alpha;
  opts->rho0 = cfg.rho0;
  opts->outer_iterations = cfg.outer_iterations;
  opts->inner_iterations = cfg.inner_prox_iterations;
  opts->rho_mu = cfg.rho_mu;
  opts->rho_tau = cfg.rho_tau;
  opts->adapt_rho = cfg.adapt_rho ? 1 : 0;
  opts->warm_start_dual = cfg.warm_start_dual ? 1 : 0;
  opts->tolerance = cfg.tolerance;
  opts->track_objective = cfg.track_objective ? 1 : 0;
}

sgtv_status sgtv_reconstruct(const sgtv_kspace* data, const sgtv_pattern* p,
                             const sgtv_anisotropy* m, const sgtv_admm_options* opts,
                             sgtv_image** out, sgtv_diagnostics** diag_out) {
  if (!(data && p && m && opts && out)) return fail(SGTV_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    sgtv::AdmmConfig cfg;
    cfg.alpha = opts->alpha;
    cfg.rho0 = opts->rho0;
    cfg.outer_iterations = opts->outer_iterations;
    cfg.inner_prox_iterations = opts->inner_iterations;
    cfg.rho_mu = opts->rho_mu;
    cfg.rho_tau = opts->rho_tau;
    cfg.adapt_rho = opts->adapt_rho != 0;
    cfg.warm_start_dual = opts->warm_start_dual != 0;
    cfg.tolerance = opts->tolerance;
    cfg.track_objective = opts->track_objective != 0;
    sgtv::AdmmDiagnostics diag;
    sgtv::Image v = sgtv::reconstruct(data->d, p->p, m->m, cfg, diag_out ? &diag : nullptr);
    *out = new sgtv_image{std::move(v)};
    if (diag_out) *diag_out = new sgtv_diagnostics{std::move(diag)};
  });
}

void sgtv_diagnostics_free(sgtv_diagnostics* diag) { delete diag; }

int32_t sgtv_diagnostics_rows(const sgtv_diagnostics* diag) {
  return diag ? static_cast<int32_t>(diag->diag.rows.size()) : 0;
}

sgtv_status sgtv_diagnostics_row(const sgtv_diagnostics* diag, int32_t index, double out[5]) {
  if (!(diag && out)) return fail(SGTV_ERR_ARGUMENT, "null argument");
  if (index < 0 || index >= static_cast<int32_t>(diag->diag.rows.size()))
    return fail(SGTV_ERR_ARGUMENT, "diagnostics row index out of range");
  const auto& row = diag->diag.rows[static_cast<std::size_t>(index)];
  out[0] = row.iteration;
  out[1] = row.objective;
  out[2] = row.primal_residual;
  out[3] = row.dual_residual;
  out[4] = row.rho;
  return SGTV_OK;
}

sgtv_status sgtv_diagnostics_write_csv(const sgtv_diagnostics* diag, const char* path) {
  if (!(diag && path)) return fail(SGTV_ERR_ARGUMENT, "null argument");
  return guarded([&] { sgtv::write_diagnostics_csv(diag->diag, path); });
}

sgtv_status sgtv_psnr(const sgtv_image* reference, const sgtv_image* test, double peak,
                      double* out_db) {
  if (!(reference && test && out_db)) return fail(SGTV_ERR_ARGUMENT, "null argument");
  return guarded([&] { *out_db = sgtv::psnr(reference->im, test->im, peak); });
}

sgtv_status sgtv_ssim(const sgtv_image* reference, const sgtv_image* test, double* out_mean,
                      sgtv_image** map_out) {
  if (!(reference && test && out_mean)) return fail(SGTV_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    sgtv::SsimResult res = sgtv::ssim(reference->im, test->im);
    *out_mean = res.mean;
    if (map_out) *map_out = new sgtv_image{std::move(res.map)};
  });
}

}  // extern "C"
