#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <set>

#include "sgtv/io.hpp"
#include "sgtv/sampling.hpp"

using namespace sgtv;

namespace {

PatternSpec spec_from(const std::string& text, int h, int w) {
  return parse_pattern_spec(text, h, w);
}

void check_wellformed(const SamplingPattern& p) {
  std::set<std::int64_t> seen;
  for (std::int64_t idx : p.indices) {
    CHECK(idx >= 0);
    CHECK(idx < p.grid_size());
    CHECK(seen.insert(idx).second);  // unique
  }
  CHECK(seen.count(0) == 1);  // DC present
}

}  // namespace

TEST_CASE("cartesian skip") {
  SUBCASE("step 1 is full sampling") {
    const SamplingPattern p = generate(spec_from("cartesian-skip:step=1", 12, 10));
    CHECK(p.samples() == 120);
    check_wellformed(p);
    CHECK(undersampling_factor(p) == doctest::Approx(1.0));
  }
  SUBCASE("step 7 over 70 rows keeps 10 full lines") {
    const SamplingPattern p = generate(spec_from("cartesian-skip:step=7:axis=row", 70, 64));
    CHECK(p.samples() == 10 * 64);
    check_wellformed(p);
  }
  SUBCASE("column axis") {
    const SamplingPattern p = generate(spec_from("cartesian-skip:step=2:axis=col", 8, 8));
    CHECK(p.samples() == 4 * 8);
    check_wellformed(p);
  }
  SUBCASE("full alias") {
    const SamplingPattern p = generate(spec_from("full", 8, 8));
    CHECK(p.samples() == 64);
  }
}

TEST_CASE("cartesian random lines") {
  SUBCASE("floor(f*L) lines plus the DC line") {
    const SamplingPattern p = generate(spec_from("cartesian-random:fraction=0.25:seed=3", 64, 64));
    std::set<std::int64_t> rows;
    for (std::int64_t idx : p.indices) rows.insert(idx / 64);
    CHECK(static_cast<int>(rows.size()) >= 16);
    CHECK(static_cast<int>(rows.size()) <= 17);  // +1 when DC line was not drawn
    CHECK(rows.count(0) == 1);
    CHECK(p.samples() == static_cast<std::int64_t>(rows.size()) * 64);
    check_wellformed(p);
    CHECK(undersampling_factor(p) == doctest::Approx(4.0).epsilon(0.1));
  }
  SUBCASE("deterministic per seed") {
    const SamplingPattern a = generate(spec_from("cartesian-random:fraction=0.5:seed=9", 32, 32));
    const SamplingPattern b = generate(spec_from("cartesian-random:fraction=0.5:seed=9", 32, 32));
    const SamplingPattern c = generate(spec_from("cartesian-random:fraction=0.5:seed=10", 32, 32));
    CHECK(a.indices == b.indices);
    CHECK(a.indices != c.indices);
  }
}

TEST_CASE("two uniform radial spokes are orthogonal diameters through DC") {
  const SamplingPattern p = generate(spec_from("radial-uniform:spokes=2", 64, 64));
  check_wellformed(p);
  CHECK(p.samples() <= 2 * 64);
  // Everything lies on the axes of the centered grid.
  int on_row_axis = 0, on_col_axis = 0;
  for (std::int64_t idx : p.indices) {
    const int r = static_cast<int>(idx / 64);
    const int c = static_cast<int>(idx % 64);
    const int kr = r >= 32 ? r - 64 : r;
    const int kc = c >= 32 ? c - 64 : c;
    CHECK((kr == 0 || kc == 0));
    if (kr == 0) ++on_row_axis;
    if (kc == 0) ++on_col_axis;
  }
  CHECK(on_row_axis == 64);
  CHECK(on_col_axis == 64);
  // Symmetric about the center wherever the mirrored cell exists on the grid.
  std::set<std::int64_t> seen(p.indices.begin(), p.indices.end());
  for (std::int64_t idx : p.indices) {
    const int r = static_cast<int>(idx / 64);
    const int c = static_cast<int>(idx % 64);
    const int kr = r >= 32 ? r - 64 : r;
    const int kc = c >= 32 ? c - 64 : c;
    if (-kr >= -32 && -kr <= 31 && -kc >= -32 && -kc <= 31) {
      const int mr = (-kr + 64) % 64;
      const int mc = (-kc + 64) % 64;
      CHECK(seen.count(static_cast<std::int64_t>(mr) * 64 + mc) == 1);
    }
  }
}

TEST_CASE("golden-angle radial spokes accumulate coverage") {
  const SamplingPattern p16 = generate(spec_from("radial-golden:spokes=16", 64, 64));
  const SamplingPattern p32 = generate(spec_from("radial-golden:spokes=32", 64, 64));
  check_wellformed(p16);
  check_wellformed(p32);
  CHECK(p16.samples() > 64 * 8);  // 16 spokes cover far more than one diameter
  CHECK(p32.samples() > p16.samples());
  CHECK(undersampling_factor(p16) > 2.0);
}

TEST_CASE("spirals") {
  SUBCASE("variable density") {
    const SamplingPattern p = generate(spec_from("spiral-vd:turns=8:points=2048:power=2", 64, 64));
    check_wellformed(p);
    CHECK(p.samples() > 200);
    CHECK(p.samples() <= 2049);
  }
  SUBCASE("phyllotaxis") {
    const SamplingPattern p = generate(spec_from("spiral-phyllotaxis:points=512", 64, 64));
    check_wellformed(p);
    CHECK(p.samples() > 256);
    CHECK(p.samples() <= 513);
  }
  SUBCASE("determinism") {
    const SamplingPattern a = generate(spec_from("spiral-phyllotaxis:points=512", 64, 64));
    const SamplingPattern b = generate(spec_from("spiral-phyllotaxis:points=512", 64, 64));
    CHECK(a.indices == b.indices);
  }
}

TEST_CASE("degenerate specs are rejected") {
  CHECK_THROWS_AS(generate(spec_from("radial-uniform:spokes=0", 64, 64)), std::invalid_argument);
  CHECK_THROWS_AS(generate(spec_from("cartesian-random:fraction=0", 64, 64)),
                  std::invalid_argument);
  CHECK_THROWS_AS(generate(spec_from("cartesian-random:fraction=1.5", 64, 64)),
                  std::invalid_argument);
  CHECK_THROWS_AS(generate(spec_from("cartesian-skip:step=0", 64, 64)), std::invalid_argument);
  CHECK_THROWS_AS(spec_from("nosuch", 64, 64), std::invalid_argument);
  CHECK_THROWS_AS(spec_from("radial-golden:bogus=1", 64, 64), std::invalid_argument);
}

TEST_CASE("undersampling factor") {
  const SamplingPattern full = generate(spec_from("full", 16, 16));
  CHECK(undersampling_factor(full) == 1.0);
  SamplingPattern half = full;
  half.indices.resize(128);
  CHECK(undersampling_factor(half) == 2.0);
}

TEST_CASE("pattern files round-trip bit-exactly") {
  const SamplingPattern p = generate(spec_from("radial-golden:spokes=7", 33, 47));
  const auto path = std::filesystem::temp_directory_path() / "sgtv_test_pattern.pat";
  write_pattern(p, path.string());
  const SamplingPattern q = read_pattern(path.string());
  CHECK(q.height == p.height);
  CHECK(q.width == p.width);
  CHECK(q.indices == p.indices);
  std::filesystem::remove(path);
}
