#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "sgtv/priors.hpp"
#include "sgtv/prox.hpp"
#include "test_util.hpp"

using namespace sgtv;
using testutil::random_image;

namespace {

AnisotropyField anisotropy_for(int which, int h, int w, std::uint64_t seed) {
  switch (which) {
    case 1: return weights_from_side_info(random_image(h, w, seed), 1e-2);
    case 2: return direction_from_side_info(random_image(h, w, seed), 1e-2);
    default: return AnisotropyField::identity(h, w);
  }
}

}  // namespace

TEST_CASE("alpha -> 0 degenerates to the constraint projection") {
  const Image f = random_image(8, 8, 1, -0.5, 1.0);
  const AnisotropyField m = AnisotropyField::identity(8, 8);
  for (Constraint c : {Constraint::None, Constraint::NonNegative}) {
    const ProxResult res = prox_structured_tv(1e-12, f, m, c, 50);
    Image expect = f;
    if (c == Constraint::NonNegative) project_nonneg(expect);
    CHECK(testutil::max_abs_diff(res.v, expect) <= 1e-8);
  }
  SUBCASE("alpha == 0 exactly") {
    const ProxResult res = prox_structured_tv(0.0, f, m, Constraint::NonNegative, 1);
    Image expect = f;
    project_nonneg(expect);
    CHECK(testutil::max_abs_diff(res.v, expect) == 0.0);
  }
}

TEST_CASE("a constant nonnegative proximal point is a fixed point") {
  const Image f(8, 8, 0.8);
  for (int which = 0; which < 3; ++which) {
    const AnisotropyField m = anisotropy_for(which, 8, 8, 55);
    const ProxResult res = prox_structured_tv(0.7, f, m, Constraint::NonNegative, 100);
    CHECK(testutil::max_abs_diff(res.v, f) <= 1e-14);
  }
}

TEST_CASE("prox matches the projected-subgradient oracle on 8x8 problems") {
  // The acceptance suite runs the full 20-problem grid; this is a spot check.
  int case_id = 0;
  for (int which = 0; which < 3; ++which) {
    for (Constraint c : {Constraint::None, Constraint::NonNegative}) {
      ++case_id;
      const Image f = random_image(8, 8, 9000 + case_id, -0.2, 1.2);
      const AnisotropyField m = anisotropy_for(which, 8, 8, 9100 + case_id);
      const double alpha = 0.08;
      const ProxResult res = prox_structured_tv(alpha, f, m, c, 2000);
      const double obj = prox_objective(alpha, f, m, res.v);
      const double oracle = oracles::prox_primal_descent(alpha, f, m, c, 400000);
      CHECK(obj == doctest::Approx(oracle).epsilon(1e-5));
    }
  }
}

TEST_CASE("prox objective helper") {
  const Image f = random_image(6, 6, 3);
  const AnisotropyField m = AnisotropyField::identity(6, 6);
  SUBCASE("value at the proximal point is alpha R(f)") {
    const Image flat(6, 6, 0.4);
    CHECK(prox_objective(0.5, flat, m, flat) == 0.0);
  }
  SUBCASE("constant shift contributes the quadratic only") {
    Image shifted = f;
    for (std::int64_t k = 0; k < shifted.size(); ++k) shifted.data()[k] += 0.25;
    const double expect = 0.5 * 36 * 0.25 * 0.25 + 0.3 * eval_regularizer(m, f);
    CHECK(prox_objective(0.3, f, m, shifted) == doctest::Approx(expect).epsilon(1e-12));
  }
  SUBCASE("recomposition from the regularizer") {
    const Image v = random_image(6, 6, 4);
    double quad = 0.0;
    for (std::int64_t k = 0; k < v.size(); ++k) {
      const double d = v.data()[k] - f.data()[k];
      quad += d * d;
    }
    CHECK(prox_objective(0.2, f, m, v) ==
          doctest::Approx(0.5 * quad + 0.2 * eval_regularizer(m, v)).epsilon(1e-12));
  }
}

TEST_CASE("dual and primal feasibility") {
  const Image f = random_image(10, 10, 77, -1.0, 2.0);
  const AnisotropyField m = anisotropy_for(2, 10, 10, 78);
  const ProxResult res = prox_structured_tv(0.3, f, m, Constraint::NonNegative, 150);
  for (std::int64_t k = 0; k < res.y.size(); ++k)
    CHECK(std::hypot(res.y.row()[k], res.y.col()[k]) <= 1.0 + 1e-12);
  for (std::int64_t k = 0; k < res.v.size(); ++k) CHECK(res.v.data()[k] >= 0.0);
}

TEST_CASE("coarse rate sanity: the k=100 gap is below the k=10 gap") {
  const Image f = random_image(8, 8, 31, -0.5, 1.5);
  const AnisotropyField m = AnisotropyField::identity(8, 8);
  const double alpha = 0.15;
  const double ref =
      prox_objective(alpha, f, m, prox_structured_tv(alpha, f, m, Constraint::NonNegative, 2000).v);
  const double gap10 =
      prox_objective(alpha, f, m, prox_structured_tv(alpha, f, m, Constraint::NonNegative, 10).v) -
      ref;
  const double gap100 =
      prox_objective(alpha, f, m, prox_structured_tv(alpha, f, m, Constraint::NonNegative, 100).v) -
      ref;
  CHECK(gap10 > 0.0);
  CHECK(gap100 < gap10);
}

TEST_CASE("constant side information reproduces the TV prox") {
  const Image f = random_image(9, 9, 101, -0.3, 1.3);
  const Image side(9, 9, 5.0);
  const double alpha = 0.2;
  const Image tv = prox_structured_tv(alpha, f, AnisotropyField::identity(9, 9),
                                      Constraint::NonNegative, 300)
                       .v;
  const Image wtv = prox_structured_tv(alpha, f, weights_from_side_info(side, 1e-2),
                                       Constraint::NonNegative, 300)
                        .v;
  const Image dtv = prox_structured_tv(alpha, f, direction_from_side_info(side, 1e-2),
                                       Constraint::NonNegative, 300)
                        .v;
  CHECK(testutil::max_abs_diff(wtv, tv) <= 1e-8);
  CHECK(testutil::max_abs_diff(dtv, tv) <= 1e-8);
}

TEST_CASE("dual objective trace is recorded on request and rises overall") {
  const Image f = random_image(8, 8, 61, -0.5, 1.5);
  const AnisotropyField m = AnisotropyField::identity(8, 8);
  const ProxResult res =
      prox_structured_tv(0.2, f, m, Constraint::NonNegative, 50, nullptr, true);
  REQUIRE(res.dual_objective_trace.size() == 50);
  CHECK(res.dual_objective_trace.back() > res.dual_objective_trace.front());
  const ProxResult quiet = prox_structured_tv(0.2, f, m, Constraint::NonNegative, 50);
  CHECK(quiet.dual_objective_trace.empty());
}

TEST_CASE("warm start validation and argument checks") {
  const Image f = random_image(4, 4, 1);
  const AnisotropyField m = AnisotropyField::identity(4, 4);
  GradientField bad(4, 4);
  bad.row(0, 0) = 2.0;
  CHECK_THROWS_AS(prox_structured_tv(0.1, f, m, Constraint::None, 10, &bad),
                  std::invalid_argument);
  CHECK_THROWS_AS(prox_structured_tv(-0.1, f, m, Constraint::None, 10), std::invalid_argument);
  CHECK_THROWS_AS(prox_structured_tv(0.1, f, m, Constraint::None, 0), std::invalid_argument);
}

TEST_CASE("warm-started prox continues from the prior dual variable") {
  const Image f = random_image(8, 8, 202, -0.5, 1.5);
  const AnisotropyField m = AnisotropyField::identity(8, 8);
  const double alpha = 0.25;
  const ProxResult cold = prox_structured_tv(alpha, f, m, Constraint::NonNegative, 40);
  const ProxResult warm =
      prox_structured_tv(alpha, f, m, Constraint::NonNegative, 40, &cold.y);
  const ProxResult ref = prox_structured_tv(alpha, f, m, Constraint::NonNegative, 2000);
  const double obj_cold = prox_objective(alpha, f, m, cold.v);
  const double obj_warm = prox_objective(alpha, f, m, warm.v);
  const double obj_ref = prox_objective(alpha, f, m, ref.v);
  CHECK(obj_warm <= obj_cold + 1e-12);
  CHECK(obj_warm - obj_ref >= -1e-10);
}
