/* sgtv - structure-guided total variation MRI reconstruction.
 *
 * C interface to the shared library. All heap objects are opaque handles
 * created and destroyed through these functions; every fallible call returns
 * a status code and leaves a thread-local message retrievable with
 * sgtv_last_error(). Handles are immutable once filled unless noted, so they
 * may be shared across threads for reading.
 *
 * File formats:
 *   image    "rimg v1 H W\n"      followed by H*W little-endian float64
 *   k-space  "kdat v1 M\n"        followed by M (re, im) float64 pairs
 *   pattern  "pattern v1 H W M\n" followed by M text lines "row col"
 */

#ifndef SGTV_H
#define SGTV_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum sgtv_status {
  SGTV_OK = 0,
  SGTV_ERR_ARGUMENT = 1, /* invalid argument, shape mismatch, bad spec */
  SGTV_ERR_IO = 2,       /* unreadable, unwritable or malformed file */
  SGTV_ERR_NUMERIC = 3   /* iteration produced non-finite values */
} sgtv_status;

typedef struct sgtv_image sgtv_image;
typedef struct sgtv_pattern sgtv_pattern;
typedef struct sgtv_kspace sgtv_kspace;
typedef struct sgtv_anisotropy sgtv_anisotropy;
typedef struct sgtv_diagnostics sgtv_diagnostics;

const char* sgtv_version(void);
/* Message for the most recent failure on this thread; never NULL. */
const char* sgtv_last_error(void);

/* ---- images (real, row-major, height/width >= 2) ---- */
sgtv_status sgtv_image_create(int32_t height, int32_t width, sgtv_image** out);
sgtv_status sgtv_image_clone(const sgtv_image* src, sgtv_image** out);
void sgtv_image_free(sgtv_image* im);
int32_t sgtv_image_height(const sgtv_image* im);
int32_t sgtv_image_width(const sgtv_image* im);
double* sgtv_image_pixels(sgtv_image* im);
const double* sgtv_image_pixels_const(const sgtv_image* im);
sgtv_status sgtv_image_read(const char* path, sgtv_image** out);
sgtv_status sgtv_image_write(const sgtv_image* im, const char* path);
/* 8-bit PGM, linear [0,1] -> [0,255] with clipping. */
sgtv_status sgtv_image_write_pgm(const sgtv_image* im, const char* path);

/* Two-contrast Shepp-Logan pair sharing edge geometry; size >= 32. */
sgtv_status sgtv_phantom_pair(int32_t size, sgtv_image** t1, sgtv_image** t2);

/* ---- sampling patterns ---- */
/* spec syntax: "scheme:key=value:key=value", schemes full, cartesian-skip,
 * cartesian-random, radial-uniform, radial-golden, spiral-vd,
 * spiral-phyllotaxis; keys step, axis, fraction, seed, spokes, turns,
 * points, power. */
sgtv_status sgtv_pattern_generate(const char* spec, int32_t height, int32_t width,
                                  sgtv_pattern** out);
sgtv_status sgtv_pattern_read(const char* path, sgtv_pattern** out);
sgtv_status sgtv_pattern_write(const sgtv_pattern* p, const char* path);
void sgtv_pattern_free(sgtv_pattern* p);
int32_t sgtv_pattern_height(const sgtv_pattern* p);
int32_t sgtv_pattern_width(const sgtv_pattern* p);
int64_t sgtv_pattern_samples(const sgtv_pattern* p);
double sgtv_pattern_undersampling(const sgtv_pattern* p);

/* ---- k-space data ---- */
sgtv_status sgtv_kspace_read(const char* path, sgtv_kspace** out);
sgtv_status sgtv_kspace_write(const sgtv_kspace* d, const char* path);
void sgtv_kspace_free(sgtv_kspace* d);
int64_t sgtv_kspace_samples(const sgtv_kspace* d);

/* Sampled Fourier data of a ground-truth image plus calibrated complex
 * Gaussian noise: at full sampling the RMS noise norm is `fraction` times
 * the noise-free data norm. Deterministic per seed (pcg32). The per-
 * component standard deviation is reported through sigma_out when non-NULL. */
sgtv_status sgtv_simulate(const sgtv_image* truth, const sgtv_pattern* p, double fraction,
                          uint64_t seed, sgtv_kspace** out, double* sigma_out);

/* ---- priors ---- */
typedef enum sgtv_prior {
  SGTV_PRIOR_TV = 0,
  SGTV_PRIOR_WTV = 1,
  SGTV_PRIOR_DTV = 2
} sgtv_prior;

/* side may be NULL for TV; WTV/DTV require it. eta > 0 is the edge scale
 * relative to the strongest side-information gradient. */
sgtv_status sgtv_anisotropy_create(sgtv_prior kind, const sgtv_image* side, double eta,
                                   int32_t height, int32_t width, sgtv_anisotropy** out);
void sgtv_anisotropy_free(sgtv_anisotropy* m);
/* sum_i |M_i (grad v)_i| */
sgtv_status sgtv_regularizer_value(const sgtv_anisotropy* m, const sgtv_image* v, double* out);

/* ---- reconstruction ---- */
typedef struct sgtv_admm_options {
  double alpha;
  double rho0;
  int32_t outer_iterations;
  int32_t inner_iterations;
  double rho_mu;
  double rho_tau;
  int32_t adapt_rho;        /* boolean */
  int32_t warm_start_dual;  /* boolean */
  double tolerance;         /* early stop on relative residuals; 0 disables */
  int32_t track_objective;  /* boolean; per-iteration objective in diagnostics */
} sgtv_admm_options;

void sgtv_admm_options_defaults(sgtv_admm_options* opts);

/* diag_out may be NULL. */
sgtv_status sgtv_reconstruct(const sgtv_kspace* data, const sgtv_pattern* p,
                             const sgtv_anisotropy* m, const sgtv_admm_options* opts,
                             sgtv_image** out, sgtv_diagnostics** diag_out);

void sgtv_diagnostics_free(sgtv_diagnostics* diag);
int32_t sgtv_diagnostics_rows(const sgtv_diagnostics* diag);
/* row = {iteration, objective, primal_residual, dual_residual, rho} */
sgtv_status sgtv_diagnostics_row(const sgtv_diagnostics* diag, int32_t index, double out[5]);
sgtv_status sgtv_diagnostics_write_csv(const sgtv_diagnostics* diag, const char* path);

/* ---- quality metrics ---- */
/* 10 log10(peak^2/MSE) in dB; +infinity for identical inputs. */
sgtv_status sgtv_psnr(const sgtv_image* reference, const sgtv_image* test, double peak,
                      double* out_db);
/* Mean SSIM (11x11 Gaussian window, sigma 1.5, k1 = 0.01, k2 = 0.03, L = 1);
 * map_out may be NULL. */
sgtv_status sgtv_ssim(const sgtv_image* reference, const sgtv_image* test, double* out_mean,
                      sgtv_image** map_out);

#ifdef __cplusplus
}
#endif

#endif /* SGTV_H */
