// Command-line harness for the sgtv shared library: simulate undersampled
// k-space data, reconstruct with TV / weighted TV / directional TV, sweep
// regularization parameter grids with best-SSIM selection, evaluate metrics
// and render images. Exit codes: 0 success, 1 usage error, 2 data error,
// 3 numerical failure.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "sgtv.h"
#include "cli_config.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitNumeric = 3;

struct api_error {
  int exit_code;
  std::string message;
};

void check(sgtv_status st) {
  if (st == SGTV_OK) return;
  const int code = (st == SGTV_ERR_NUMERIC) ? kExitNumeric : kExitData;
  throw api_error{code, sgtv_last_error()};
}

struct ImageDel { void operator()(sgtv_image* p) const { sgtv_image_free(p); } };
struct PatternDel { void operator()(sgtv_pattern* p) const { sgtv_pattern_free(p); } };
struct KspaceDel { void operator()(sgtv_kspace* p) const { sgtv_kspace_free(p); } };
struct AnisoDel { void operator()(sgtv_anisotropy* p) const { sgtv_anisotropy_free(p); } };
struct DiagDel { void operator()(sgtv_diagnostics* p) const { sgtv_diagnostics_free(p); } };

using ImagePtr = std::unique_ptr<sgtv_image, ImageDel>;
using PatternPtr = std::unique_ptr<sgtv_pattern, PatternDel>;
using KspacePtr = std::unique_ptr<sgtv_kspace, KspaceDel>;
using AnisoPtr = std::unique_ptr<sgtv_anisotropy, AnisoDel>;
using DiagPtr = std::unique_ptr<sgtv_diagnostics, DiagDel>;

// 12 significant digits, locale independent; infinities as "inf".
std::string fmt(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (std::isnan(x)) return "nan";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 12);
  return std::string(buf, res.ptr);
}

// "phantom-t1:N" / "phantom-t2:N" are built-in pseudo-paths; anything else
// is read as an image file.
ImagePtr load_image(const std::string& path) {
  for (int which = 1; which <= 2; ++which) {
    const std::string prefix = "phantom-t" + std::to_string(which) + ":";
    if (path.rfind(prefix, 0) == 0) {
      const long long size = cli::Config::parse_int(path.substr(prefix.size()), "phantom size");
      sgtv_image* t1 = nullptr;
      sgtv_image* t2 = nullptr;
      check(sgtv_phantom_pair(static_cast<int32_t>(size), &t1, &t2));
      ImagePtr a(t1), b(t2);
      return which == 1 ? std::move(a) : std::move(b);
    }
  }
  sgtv_image* im = nullptr;
  check(sgtv_image_read(path.c_str(), &im));
  return ImagePtr(im);
}

std::string dataset_label(const cli::Config& cfg) { return cfg.get_string("name", "dataset"); }

std::string contrast_label(const std::string& path) {
  std::string stem = std::filesystem::path(path).stem().string();
  std::replace(stem.begin(), stem.end(), ':', '-');
  return stem;
}

sgtv_admm_options admm_from_config(const cli::Config& cfg, double alpha) {
  sgtv_admm_options o;
  sgtv_admm_options_defaults(&o);
  o.alpha = alpha;
  o.rho0 = cfg.get_double("rho0", o.rho0);
  o.outer_iterations = static_cast<int32_t>(cfg.get_int("outer_iterations", o.outer_iterations));
  o.inner_iterations = static_cast<int32_t>(cfg.get_int("inner_iterations", o.inner_iterations));
  o.rho_mu = cfg.get_double("rho_mu", o.rho_mu);
  o.rho_tau = cfg.get_double("rho_tau", o.rho_tau);
  o.adapt_rho = cfg.get_bool("adapt_rho", o.adapt_rho != 0) ? 1 : 0;
  o.warm_start_dual = cfg.get_bool("warm_start_dual", o.warm_start_dual != 0) ? 1 : 0;
  o.tolerance = cfg.get_double("tolerance", o.tolerance);
  o.track_objective = cfg.get_bool("track_objective", o.track_objective != 0) ? 1 : 0;
  return o;
}

sgtv_prior prior_from_name(const std::string& name) {
  if (name == "tv") return SGTV_PRIOR_TV;
  if (name == "wtv") return SGTV_PRIOR_WTV;
  if (name == "dtv") return SGTV_PRIOR_DTV;
  throw cli::usage_error("unknown prior '" + name + "' (expected tv, wtv or dtv)");
}

std::vector<double> alpha_grid(const cli::Config& cfg) {
  std::vector<double> grid = cfg.get_double_list("alpha_grid");
  if (grid.empty())
    for (int i = 0; i < 7; ++i) grid.push_back(5e-4 * std::pow(100.0, i / 6.0));
  return grid;
}

std::vector<double> eta_grid(const cli::Config& cfg) {
  std::vector<double> grid = cfg.get_double_list("eta_grid");
  if (grid.empty()) grid = {1e-4, 1e-3, 1e-2, 1e-1, 1.0};
  return grid;
}

std::filesystem::path ensure_out_dir(const cli::Config& cfg) {
  const std::filesystem::path dir = cfg.get_string("out", ".");
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec && !std::filesystem::is_directory(dir))
    throw api_error{kExitData, "cannot create output directory: " + dir.string()};
  return dir;
}

// ---------------------------------------------------------------- simulate

int run_simulate(const cli::Config& cfg) {
  const ImagePtr truth = load_image(cfg.require_string("ground_truth"));
  const auto out_dir = ensure_out_dir(cfg);

  sgtv_pattern* pat = nullptr;
  check(sgtv_pattern_generate(cfg.require_string("pattern").c_str(),
                              sgtv_image_height(truth.get()), sgtv_image_width(truth.get()),
                              &pat));
  const PatternPtr pattern(pat);

  const double fraction = cfg.get_double("noise_fraction", 0.05);
  const auto seed = static_cast<uint64_t>(cfg.get_int("seed", 0));
  double sigma = 0.0;
  sgtv_kspace* data = nullptr;
  check(sgtv_simulate(truth.get(), pattern.get(), fraction, seed, &data, &sigma));
  const KspacePtr kdata(data);

  const auto data_path = out_dir / "data.kdat";
  const auto pattern_path = out_dir / "pattern.pat";
  check(sgtv_kspace_write(kdata.get(), data_path.string().c_str()));
  check(sgtv_pattern_write(pattern.get(), pattern_path.string().c_str()));

  std::printf("rng=pcg32 seed=%llu sigma=%s samples=%lld undersampling=%s\n",
              static_cast<unsigned long long>(seed), fmt(sigma).c_str(),
              static_cast<long long>(sgtv_pattern_samples(pattern.get())),
              fmt(sgtv_pattern_undersampling(pattern.get())).c_str());
  std::printf("wrote %s\nwrote %s\n", data_path.string().c_str(), pattern_path.string().c_str());
  return kExitOk;
}

// -------------------------------------------------------------- reconstruct

AnisoPtr build_anisotropy(const std::string& prior, const sgtv_image* side, double eta, int32_t h,
                          int32_t w) {
  sgtv_anisotropy* m = nullptr;
  check(sgtv_anisotropy_create(prior_from_name(prior), side, eta, h, w, &m));
  return AnisoPtr(m);
}

int run_reconstruct(const cli::Config& cfg) {
  sgtv_kspace* data_raw = nullptr;
  check(sgtv_kspace_read(cfg.require_string("data").c_str(), &data_raw));
  const KspacePtr data(data_raw);

  sgtv_pattern* pat_raw = nullptr;
  check(sgtv_pattern_read(cfg.require_string("pattern_file").c_str(), &pat_raw));
  const PatternPtr pattern(pat_raw);
  const int32_t h = sgtv_pattern_height(pattern.get());
  const int32_t w = sgtv_pattern_width(pattern.get());

  const std::string prior = cfg.get_string("prior", "tv");
  const std::string side_path = cfg.get_string("side_info", "none");
  ImagePtr side;
  if (side_path != "none" && !side_path.empty()) {
    if (prior == "tv")
      std::fprintf(stderr, "warning: prior=tv ignores side_info\n");
    else
      side = load_image(side_path);
  }
  if (prior != "tv" && !side)
    throw cli::usage_error("prior=" + prior + " requires side_info");

  const double eta = cfg.get_double("eta", 1e-2);
  const AnisoPtr m = build_anisotropy(prior, side.get(), eta, h, w);

  const sgtv_admm_options opts = admm_from_config(cfg, cfg.get_double("alpha", 5e-3));
  sgtv_image* recon_raw = nullptr;
  sgtv_diagnostics* diag_raw = nullptr;
  check(sgtv_reconstruct(data.get(), pattern.get(), m.get(), &opts, &recon_raw, &diag_raw));
  const ImagePtr recon(recon_raw);
  const DiagPtr diag(diag_raw);

  const auto out_dir = ensure_out_dir(cfg);
  const auto recon_path = out_dir / "recon.rimg";
  const auto diag_path = out_dir / "diagnostics.csv";
  check(sgtv_image_write(recon.get(), recon_path.string().c_str()));
  check(sgtv_diagnostics_write_csv(diag.get(), diag_path.string().c_str()));
  std::printf("wrote %s\nwrote %s\n", recon_path.string().c_str(), diag_path.string().c_str());

  if (cfg.has("ground_truth")) {
    const ImagePtr truth = load_image(cfg.require_string("ground_truth"));
    double psnr_db = 0.0, ssim_mean = 0.0;
    check(sgtv_psnr(truth.get(), recon.get(), cfg.get_double("peak", 1.0), &psnr_db));
    check(sgtv_ssim(truth.get(), recon.get(), &ssim_mean, nullptr));
    std::printf("psnr_db=%s ssim=%s\n", fmt(psnr_db).c_str(), fmt(ssim_mean).c_str());
  }
  return kExitOk;
}

// -------------------------------------------------------------------- sweep

struct StatsRow {
  std::string dataset, contrast, prior, pattern;
  double alpha = 0.0, eta = 0.0;
  double psnr_db = 0.0, ssim = 0.0, wall_time_s = 0.0;
  unsigned long long seed = 0;
};

struct SweepTask {
  int pattern_idx = 0;
  int contrast_idx = 0;
  std::string prior;
  double alpha = 0.0;
  std::optional<double> eta;    // empty for TV: metrics replicated per eta row
  std::size_t first_row = 0;    // offset into the row table
  std::size_t row_count = 1;
};

bool row_less(const StatsRow& a, const StatsRow& b) {
  if (a.dataset != b.dataset) return a.dataset < b.dataset;
  if (a.contrast != b.contrast) return a.contrast < b.contrast;
  if (a.prior != b.prior) return a.prior < b.prior;
  if (a.pattern != b.pattern) return a.pattern < b.pattern;
  if (a.alpha != b.alpha) return a.alpha < b.alpha;
  return a.eta < b.eta;
}

int run_sweep(const cli::Config& cfg, int jobs) {
  const std::vector<std::string> truth_paths = cfg.get_list("ground_truth");
  if (truth_paths.empty() || truth_paths.size() > 2)
    throw cli::usage_error("sweep: ground_truth expects one or two paths");

  std::vector<ImagePtr> truths;
  std::vector<std::string> contrasts;
  const std::vector<std::string> contrast_names = cfg.get_list("contrasts");
  for (std::size_t i = 0; i < truth_paths.size(); ++i) {
    truths.push_back(load_image(truth_paths[i]));
    contrasts.push_back(i < contrast_names.size() ? contrast_names[i]
                                                  : contrast_label(truth_paths[i]));
  }
  const int32_t h = sgtv_image_height(truths[0].get());
  const int32_t w = sgtv_image_width(truths[0].get());
  for (const auto& t : truths)
    if (sgtv_image_height(t.get()) != h || sgtv_image_width(t.get()) != w)
      throw api_error{kExitData, "sweep: ground truth images must share one grid"};

  // Side information per contrast: the other contrast when a pair is given,
  // otherwise the configured side_info path.
  std::vector<const sgtv_image*> side_for;
  ImagePtr side_single;
  if (truths.size() == 2) {
    side_for = {truths[1].get(), truths[0].get()};
  } else {
    const std::string side_path = cfg.get_string("side_info", "none");
    if (side_path != "none" && !side_path.empty()) side_single = load_image(side_path);
    side_for = {side_single.get()};
  }

  std::vector<std::string> priors = cfg.get_list("priors");
  if (priors.empty()) priors = {"tv", "wtv", "dtv"};
  for (const std::string& p : priors) {
    prior_from_name(p);
    if (p != "tv")
      for (std::size_t c = 0; c < truths.size(); ++c)
        if (!side_for[c])
          throw cli::usage_error("sweep: prior=" + p + " requires side information");
  }

  std::vector<std::string> patterns = cfg.get_list("patterns");
  if (patterns.empty()) patterns = {cfg.require_string("pattern")};

  const std::vector<double> alphas = alpha_grid(cfg);
  const std::vector<double> etas = eta_grid(cfg);
  if (alphas.empty() || etas.empty()) throw cli::usage_error("sweep: empty parameter grid");

  const double fraction = cfg.get_double("noise_fraction", 0.05);
  const auto base_seed = static_cast<uint64_t>(cfg.get_int("seed", 0));
  const std::string dataset = dataset_label(cfg);

  // Generate each pattern once and simulate each (pattern, contrast) pair
  // once, so that all priors see identical data.
  std::vector<PatternPtr> pattern_handles;
  for (const std::string& spec : patterns) {
    sgtv_pattern* p = nullptr;
    check(sgtv_pattern_generate(spec.c_str(), h, w, &p));
    pattern_handles.emplace_back(p);
  }
  std::vector<std::vector<KspacePtr>> data(patterns.size());
  for (std::size_t pi = 0; pi < patterns.size(); ++pi)
    for (std::size_t c = 0; c < truths.size(); ++c) {
      sgtv_kspace* d = nullptr;
      check(sgtv_simulate(truths[c].get(), pattern_handles[pi].get(), fraction,
                          base_seed + c, &d, nullptr));
      data[pi].emplace_back(d);
    }

  // Row table and task list. TV does not depend on eta, so it is computed
  // once per alpha and its metrics replicated across the eta rows.
  std::vector<StatsRow> rows;
  std::vector<SweepTask> tasks;
  for (std::size_t pi = 0; pi < patterns.size(); ++pi)
    for (std::size_t c = 0; c < truths.size(); ++c)
      for (const std::string& prior : priors)
        for (double alpha : alphas) {
          SweepTask task;
          task.pattern_idx = static_cast<int>(pi);
          task.contrast_idx = static_cast<int>(c);
          task.prior = prior;
          task.alpha = alpha;
          task.first_row = rows.size();
          if (prior == "tv") {
            task.row_count = etas.size();
          } else {
            task.row_count = 1;
          }
          for (double eta : etas) {
            StatsRow row;
            row.dataset = dataset;
            row.contrast = contrasts[c];
            row.prior = prior;
            row.pattern = patterns[pi];
            row.alpha = alpha;
            row.eta = eta;
            row.seed = base_seed + c;
            rows.push_back(row);
            if (prior == "tv") continue;
            SweepTask t = task;
            t.eta = eta;
            t.first_row = rows.size() - 1;
            tasks.push_back(t);
          }
          if (prior == "tv") tasks.push_back(task);
        }

  sgtv_admm_options opts_template = admm_from_config(cfg, 0.0);
  if (!cfg.has("track_objective")) opts_template.track_objective = 0;

  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::mutex fail_mutex;
  std::string fail_message;
  int fail_code = kExitData;

  auto worker = [&] {
    for (;;) {
      const std::size_t t = next.fetch_add(1);
      if (t >= tasks.size() || failed.load()) return;
      const SweepTask& task = tasks[t];
      try {
        const sgtv_pattern* pattern = pattern_handles[task.pattern_idx].get();
        const sgtv_kspace* d = data[task.pattern_idx][task.contrast_idx].get();
        const sgtv_image* truth = truths[task.contrast_idx].get();
        const sgtv_image* side = side_for[task.contrast_idx];
        const double eta = task.eta.value_or(etas[0]);
        const AnisoPtr m = build_anisotropy(task.prior, task.prior == "tv" ? nullptr : side,
                                            eta, h, w);
        sgtv_admm_options opts = opts_template;
        opts.alpha = task.alpha;

        const auto t0 = std::chrono::steady_clock::now();
        sgtv_image* recon_raw = nullptr;
        check(sgtv_reconstruct(d, pattern, m.get(), &opts, &recon_raw, nullptr));
        const ImagePtr recon(recon_raw);
        const double wall =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

        double psnr_db = 0.0, ssim_mean = 0.0;
        check(sgtv_psnr(truth, recon.get(), 1.0, &psnr_db));
        check(sgtv_ssim(truth, recon.get(), &ssim_mean, nullptr));
        for (std::size_t r = task.first_row; r < task.first_row + task.row_count; ++r) {
          rows[r].psnr_db = psnr_db;
          rows[r].ssim = ssim_mean;
          rows[r].wall_time_s = wall;
        }
      } catch (const api_error& e) {
        std::lock_guard<std::mutex> lock(fail_mutex);
        failed = true;
        fail_message = e.message;
        fail_code = e.exit_code;
        return;
      }
    }
  };

  const int n_threads = std::max(1, jobs);
  std::vector<std::thread> pool;
  for (int i = 1; i < n_threads; ++i) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  if (failed) throw api_error{fail_code, fail_message};

  std::sort(rows.begin(), rows.end(), row_less);

  const auto out_dir = ensure_out_dir(cfg);
  const auto stats_path = out_dir / "stats.csv";
  {
    std::ofstream out(stats_path);
    out << "dataset,contrast,prior,pattern,alpha,eta,psnr_db,ssim,seed\n";
    for (const StatsRow& r : rows)
      out << r.dataset << ',' << r.contrast << ',' << r.prior << ',' << r.pattern << ','
          << fmt(r.alpha) << ',' << fmt(r.eta) << ',' << fmt(r.psnr_db) << ',' << fmt(r.ssim)
          << ',' << r.seed << '\n';
    if (!out) throw api_error{kExitData, "write failed: " + stats_path.string()};
  }
  // Wall times go to a sibling file: they vary run to run, while stats.csv
  // must be byte-identical for identical configs and seeds.
  {
    std::ofstream out(out_dir / "timing.csv");
    out << "dataset,contrast,prior,pattern,alpha,eta,wall_time_s\n";
    for (const StatsRow& r : rows)
      out << r.dataset << ',' << r.contrast << ',' << r.prior << ',' << r.pattern << ','
          << fmt(r.alpha) << ',' << fmt(r.eta) << ',' << fmt(r.wall_time_s) << '\n';
  }

  // Best-SSIM selection per (contrast, prior, pattern).
  const auto best_path = out_dir / "best.csv";
  {
    std::vector<const StatsRow*> best;
    for (const StatsRow& r : rows) {
      const StatsRow** slot = nullptr;
      for (auto& b : best)
        if (b->contrast == r.contrast && b->prior == r.prior && b->pattern == r.pattern)
          slot = &b;
      if (!slot) {
        best.push_back(&r);
      } else if (r.ssim > (*slot)->ssim) {
        *slot = &r;
      }
    }
    std::ofstream out(best_path);
    out << "dataset,contrast,prior,pattern,alpha,eta,psnr_db,ssim,seed\n";
    for (const StatsRow* r : best)
      out << r->dataset << ',' << r->contrast << ',' << r->prior << ',' << r->pattern << ','
          << fmt(r->alpha) << ',' << fmt(r->eta) << ',' << fmt(r->psnr_db) << ',' << fmt(r->ssim)
          << ',' << r->seed << '\n';
    if (!out) throw api_error{kExitData, "write failed: " + best_path.string()};
  }

  std::printf("wrote %s\nwrote %s\nwrote %s\n", stats_path.string().c_str(),
              best_path.string().c_str(), (out_dir / "timing.csv").string().c_str());
  return kExitOk;
}

// ------------------------------------------------------------ metrics/render

int run_metrics(const std::string& ref_path, const std::string& test_path, double peak) {
  const ImagePtr ref = load_image(ref_path);
  const ImagePtr test = load_image(test_path);
  double psnr_db = 0.0, ssim_mean = 0.0;
  check(sgtv_psnr(ref.get(), test.get(), peak, &psnr_db));
  check(sgtv_ssim(ref.get(), test.get(), &ssim_mean, nullptr));
  std::printf("psnr_db=%s ssim=%s\n", fmt(psnr_db).c_str(), fmt(ssim_mean).c_str());
  return kExitOk;
}

int run_render(const std::string& input, const std::string& output) {
  const ImagePtr im = load_image(input);
  check(sgtv_image_write_pgm(im.get(), output.c_str()));
  std::printf("wrote %s\n", output.c_str());
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"structure-guided total variation reconstruction of undersampled MRI"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path;
  long long seed_override = -1;
  int jobs = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  std::string out_override;
  app.add_option("--config", config_path, "experiment configuration file (key = value lines)");
  app.add_option("--seed", seed_override, "override the config seed");
  app.add_option("--jobs", jobs, "parallel sweep jobs");
  app.add_option("--out", out_override, "output directory");

  CLI::App* sim = app.add_subcommand("simulate", "sample k-space data from a ground truth image");
  CLI::App* rec = app.add_subcommand("reconstruct", "reconstruct an image from k-space data");
  CLI::App* swp = app.add_subcommand("sweep", "grid sweep over alpha/eta with best-SSIM report");

  std::string ref_path, test_path;
  double peak = 1.0;
  CLI::App* met = app.add_subcommand("metrics", "PSNR/SSIM between two images");
  met->add_option("reference", ref_path, "reference image")->required();
  met->add_option("test", test_path, "test image")->required();
  met->add_option("--peak", peak, "PSNR peak value (default 1)");

  std::string render_in, render_out;
  CLI::App* ren = app.add_subcommand("render", "write an 8-bit grayscale PGM");
  ren->add_option("input", render_in, "input image")->required();
  ren->add_option("output", render_out, "output PGM file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitUsage;
  }

  try {
    cli::Config cfg;
    if (!config_path.empty()) cfg = cli::Config::load(config_path);
    if (seed_override >= 0) cfg.set("seed", std::to_string(seed_override));
    if (!out_override.empty()) cfg.set("out", out_override);
    if (cfg.has("jobs") && !app.count("--jobs"))
      jobs = static_cast<int>(cfg.get_int("jobs", jobs));

    if (sim->parsed()) return run_simulate(cfg);
    if (rec->parsed()) return run_reconstruct(cfg);
    if (swp->parsed()) return run_sweep(cfg, jobs);
    if (met->parsed()) return run_metrics(ref_path, test_path, peak);
    if (ren->parsed()) return run_render(render_in, render_out);
    std::fprintf(stderr, "error: no subcommand\n");
    return kExitUsage;
  } catch (const cli::usage_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  } catch (const api_error& e) {
    std::fprintf(stderr, "error: %s\n", e.message.c_str());
    return e.exit_code;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitData;
  }
}
