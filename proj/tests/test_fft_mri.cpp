#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "sgtv/fft.hpp"
#include "sgtv/mri.hpp"
#include "test_util.hpp"

using namespace sgtv;
using testutil::random_image;

namespace {

ComplexImage random_complex(int h, int w, std::uint64_t seed) {
  Pcg32 rng(seed);
  ComplexImage x(h, w);
  for (std::int64_t k = 0; k < x.size(); ++k)
    x.data()[k] = {2.0 * rng.next_double() - 1.0, 2.0 * rng.next_double() - 1.0};
  return x;
}

KSpaceData random_kspace(std::int64_t m, std::uint64_t seed) {
  Pcg32 rng(seed);
  KSpaceData d;
  d.values.resize(static_cast<std::size_t>(m));
  for (auto& v : d.values) v = {2.0 * rng.next_double() - 1.0, 2.0 * rng.next_double() - 1.0};
  return d;
}

SamplingPattern full_pattern(int h, int w) {
  SamplingPattern p;
  p.height = h;
  p.width = w;
  p.indices.resize(static_cast<std::size_t>(h) * w);
  for (std::int64_t k = 0; k < p.grid_size(); ++k) p.indices[static_cast<std::size_t>(k)] = k;
  return p;
}

SamplingPattern random_pattern(int h, int w, std::int64_t m, std::uint64_t seed) {
  Pcg32 rng(seed);
  SamplingPattern p;
  p.height = h;
  p.width = w;
  for (std::int64_t k = 0; k < m; ++k)
    p.indices.push_back(rng.next_below(static_cast<std::uint32_t>(h * w)));
  return p;
}

constexpr int kShapes[][2] = {{32, 32}, {64, 64}, {33, 47}};

}  // namespace

TEST_CASE("DFT of a delta at the origin is the constant 1/sqrt(N)") {
  const int h = 8, w = 8;
  ComplexImage x(h, w);
  x(0, 0) = 1.0;
  const ComplexImage y = dft2(x);
  const double expect = 1.0 / std::sqrt(static_cast<double>(h * w));
  for (std::int64_t k = 0; k < y.size(); ++k) {
    CHECK(y.data()[k].real() == doctest::Approx(expect).epsilon(1e-14));
    CHECK(std::abs(y.data()[k].imag()) < 1e-14);
  }
}

TEST_CASE("dft2 is unitary: Parseval and inversion, including odd shapes") {
  for (const auto& s : kShapes) {
    for (int trial = 0; trial < 20; ++trial) {
      const ComplexImage x = random_complex(s[0], s[1], 7000 + 13 * s[0] + trial);
      const ComplexImage y = dft2(x);
      CHECK(std::abs(norm(y) - norm(x)) <= 1e-12 * (norm(x) + 1.0));
      const ComplexImage back = idft2(y);
      double max_err = 0.0;
      for (std::int64_t k = 0; k < x.size(); ++k)
        max_err = std::max(max_err, std::abs(back.data()[k] - x.data()[k]));
      CHECK(max_err <= 1e-12);
    }
  }
}

TEST_CASE("dft2 against the direct O(N^2) transform on an odd shape") {
  const int h = 5, w = 6;
  const ComplexImage x = random_complex(h, w, 99);
  const ComplexImage y = dft2(x);
  constexpr double two_pi = 6.283185307179586476925286766559;
  for (int a = 0; a < h; ++a)
    for (int b = 0; b < w; ++b) {
      std::complex<double> sum = 0.0;
      for (int i = 0; i < h; ++i)
        for (int j = 0; j < w; ++j) {
          const double phase = -two_pi * (static_cast<double>(a) * i / h +
                                          static_cast<double>(b) * j / w);
          sum += x(i, j) * std::complex<double>(std::cos(phase), std::sin(phase));
        }
      sum /= std::sqrt(static_cast<double>(h * w));
      CHECK(std::abs(y(a, b) - sum) <= 1e-12);
    }
}

TEST_CASE("sample reads components in pattern order") {
  ComplexImage x(2, 3);
  for (std::int64_t k = 0; k < x.size(); ++k) x.data()[k] = {10.0 * (k + 1), 0.0};
  SamplingPattern p;
  p.height = 2;
  p.width = 3;
  p.indices = {3, 1};
  const KSpaceData d = sample(p, x);
  CHECK(d.values[0] == std::complex<double>(40.0, 0.0));
  CHECK(d.values[1] == std::complex<double>(20.0, 0.0));

  SUBCASE("a full pattern is a permutation") {
    SamplingPattern full = full_pattern(2, 3);
    std::swap(full.indices[0], full.indices[5]);
    const KSpaceData all = sample(full, x);
    CHECK(all.values[0] == std::complex<double>(60.0, 0.0));
    CHECK(all.values[5] == std::complex<double>(10.0, 0.0));
  }
  SUBCASE("repeated indices duplicate the sample") {
    SamplingPattern rep;
    rep.height = 2;
    rep.width = 3;
    rep.indices = {2, 2};
    const KSpaceData dd = sample(rep, x);
    CHECK(dd.values[0] == dd.values[1]);
    CHECK(dd.values[0] == std::complex<double>(30.0, 0.0));
  }
  SUBCASE("out-of-range index throws") {
    SamplingPattern bad;
    bad.height = 2;
    bad.width = 3;
    bad.indices = {6};
    CHECK_THROWS_AS(sample(bad, x), std::invalid_argument);
  }
}

TEST_CASE("sample_adjoint accumulates repeated indices") {
  SamplingPattern p;
  p.height = 2;
  p.width = 3;
  p.indices = {2, 2};
  KSpaceData d;
  d.values = {{1.0, 0.0}, {1.0, 0.0}};
  const ComplexImage x = sample_adjoint(p, d);
  CHECK(x.data()[2] == std::complex<double>(2.0, 0.0));
  for (std::int64_t k = 0; k < x.size(); ++k)
    if (k != 2) CHECK(x.data()[k] == std::complex<double>(0.0, 0.0));
}

TEST_CASE("sampling operators pass the real-inner-product dot test") {
  for (int trial = 0; trial < 50; ++trial) {
    const SamplingPattern p = random_pattern(6, 7, 15, 3000 + trial);
    const ComplexImage x = random_complex(6, 7, 4000 + trial);
    const KSpaceData d = random_kspace(15, 5000 + trial);
    const double lhs = dot_real(sample(p, x), d);
    const double rhs = dot_real(x, sample_adjoint(p, d));
    CHECK(std::abs(lhs - rhs) <= 1e-12 * (std::abs(lhs) + 1.0));
  }
}

TEST_CASE("forward/adjoint dot test at spec shapes") {
  for (const auto& s : kShapes) {
    const std::int64_t m = s[0] * s[1] / 3;
    for (int trial = 0; trial < 10; ++trial) {
      const SamplingPattern p = random_pattern(s[0], s[1], m, 8100 + trial);
      const Image v = random_image(s[0], s[1], 8200 + trial, -1.0, 1.0);
      const KSpaceData d = random_kspace(m, 8300 + trial);
      const double lhs = dot_real(forward(p, v), d);
      const double rhs = dot(v, adjoint(p, d));
      CHECK(std::abs(lhs - rhs) <= 1e-12 * (std::abs(lhs) + 1.0));
    }
  }
}

TEST_CASE("forward model basics") {
  const SamplingPattern p = full_pattern(16, 16);
  SUBCASE("zero image gives zero data") {
    const KSpaceData d = forward(p, Image(16, 16, 0.0));
    for (const auto& v : d.values) CHECK(std::abs(v) == 0.0);
  }
  SUBCASE("full sampling preserves the norm") {
    const Image v = random_image(16, 16, 1);
    CHECK(norm(forward(p, v)) == doctest::Approx(norm(v)).epsilon(1e-12));
  }
  SUBCASE("adjoint of forward is the identity under full sampling") {
    const Image v = random_image(16, 16, 2);
    const Image back = adjoint(p, forward(p, v));
    CHECK(testutil::max_abs_diff(back, v) <= 1e-12);
  }
  SUBCASE("zero data gives a zero image") {
    KSpaceData d;
    d.values.assign(p.indices.size(), {0.0, 0.0});
    const Image back = adjoint(p, d);
    for (std::int64_t k = 0; k < back.size(); ++k) CHECK(back.data()[k] == 0.0);
  }
}

TEST_CASE("mask_counts is the diagonal of S*S") {
  SamplingPattern p;
  p.height = 2;
  p.width = 3;
  p.indices = {0, 2, 2, 5};
  const Image counts = mask_counts(p);
  CHECK(counts.data()[0] == 1.0);
  CHECK(counts.data()[2] == 2.0);
  CHECK(counts.data()[5] == 1.0);
  CHECK(counts.data()[1] == 0.0);
  double total = 0.0;
  for (std::int64_t k = 0; k < counts.size(); ++k) total += counts.data()[k];
  CHECK(total == doctest::Approx(static_cast<double>(p.samples())));

  SUBCASE("sample_adjoint(sample(x)) is pointwise multiplication by the counts") {
    const ComplexImage x = random_complex(2, 3, 66);
    const ComplexImage ssx = sample_adjoint(p, sample(p, x));
    for (std::int64_t k = 0; k < x.size(); ++k)
      CHECK(std::abs(ssx.data()[k] - counts.data()[k] * x.data()[k]) <= 1e-12);
  }
  SUBCASE("unique indices give a 0/1 mask") {
    const SamplingPattern q = full_pattern(4, 4);
    const Image c = mask_counts(q);
    for (std::int64_t k = 0; k < c.size(); ++k) CHECK(c.data()[k] == 1.0);
  }
}

TEST_CASE("simulate") {
  const Image gt = random_image(16, 16, 12);
  const SamplingPattern p = full_pattern(16, 16);

  SUBCASE("zero fraction reproduces the forward data exactly") {
    const KSpaceData clean = forward(p, gt);
    const KSpaceData sim = simulate(gt, p, 0.0, 123);
    for (std::size_t k = 0; k < clean.values.size(); ++k)
      CHECK(sim.values[k] == clean.values[k]);
  }
  SUBCASE("deterministic per seed, different across seeds") {
    const KSpaceData a = simulate(gt, p, 0.05, 7);
    const KSpaceData b = simulate(gt, p, 0.05, 7);
    const KSpaceData c = simulate(gt, p, 0.05, 8);
    bool identical_ab = true, identical_ac = true;
    for (std::size_t k = 0; k < a.values.size(); ++k) {
      identical_ab = identical_ab && a.values[k] == b.values[k];
      identical_ac = identical_ac && a.values[k] == c.values[k];
    }
    CHECK(identical_ab);
    CHECK(!identical_ac);
  }
  SUBCASE("sigma matches the closed form") {
    double sigma = 0.0;
    simulate(gt, p, 0.05, 7, &sigma);
    const double expect = 0.05 * norm(gt) / std::sqrt(2.0 * 16 * 16);
    CHECK(sigma == doctest::Approx(expect).epsilon(1e-12));
  }
  SUBCASE("noise is zero-mean in both components") {
    const KSpaceData clean = forward(p, gt);
    double mean_re = 0.0, mean_im = 0.0;
    double sigma = 0.0;
    int count = 0;
    for (int seed = 0; seed < 20; ++seed) {
      const KSpaceData noisy = simulate(gt, p, 0.05, 500 + seed, &sigma);
      for (std::size_t k = 0; k < noisy.values.size(); ++k) {
        const std::complex<double> diff = noisy.values[k] - clean.values[k];
        mean_re += diff.real();
        mean_im += diff.imag();
        ++count;
      }
    }
    mean_re /= count;
    mean_im /= count;
    const double bound = 5.0 * sigma / std::sqrt(static_cast<double>(count));
    CHECK(std::abs(mean_re) <= bound);
    CHECK(std::abs(mean_im) <= bound);
  }
  SUBCASE("noise level calibration over seeds") {
    const KSpaceData clean = forward(p, gt);
    const double clean2 = dot_real(clean, clean);
    double ratio_sum = 0.0;
    const int n_seeds = 40;
    for (int seed = 0; seed < n_seeds; ++seed) {
      const KSpaceData noisy = simulate(gt, p, 0.05, 1000 + seed);
      double noise2 = 0.0;
      for (std::size_t k = 0; k < noisy.values.size(); ++k) {
        const std::complex<double> diff = noisy.values[k] - clean.values[k];
        noise2 += diff.real() * diff.real() + diff.imag() * diff.imag();
      }
      ratio_sum += noise2 / clean2;
    }
    const double mean_ratio = ratio_sum / n_seeds;
    CHECK(mean_ratio == doctest::Approx(0.0025).epsilon(0.15));
  }
}
