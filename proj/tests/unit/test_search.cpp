#include <doctest.h>

#include <cmath>

#include "curvgauge/checks.hpp"
#include "curvgauge/search.hpp"

using namespace curvgauge;

TEST_CASE("warped sample points") {
  const auto eq = warped_point(WarpedParams{1, 1, {0, 0, 0, 0}, 0, 0, 4});
  const auto r = claim_margin(eq.ambient, eq.spectrum);
  CHECK(r.margin == doctest::Approx(0.0));

  const auto p = warped_point(WarpedParams{0, 1, {0, 0, 0, 0}, 0.4, 0.2, 2});
  CHECK(p.ambient.sigma == doctest::Approx(12.0));
  CHECK(p.ambient.aRingNormSq == doctest::Approx(0.0));
  for (int i = 0; i < 4; ++i) CHECK(p.ambient.a(i, i) == doctest::Approx(3.0));
}

TEST_CASE("samples are deterministic in (seed, index)") {
  for (Family f : {Family::Warped, Family::General}) {
    const auto a = sample_point(f, 5, 17);
    const auto b = sample_point(f, 5, 17);
    const auto c = sample_point(f, 5, 18);
    CHECK(a.spectrum.H == b.spectrum.H);
    CHECK(a.ambient.sigma == b.ambient.sigma);
    CHECK(a.spectrum.H != c.spectrum.H);
  }
}

TEST_CASE("general family admissibility") {
  const auto s = sample_point(Family::General, 1, 0);
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) {
      CHECK(s.drawn.comp.coordinate_sectional(i, j) >= -1e-12);
      CHECK(s.drawn.comp.coordinate_sectional(i, j) <= 1 + 1e-12);
    }
  CHECK(s.drawn.admissible());
  CHECK(s.admissible == s.ambient.admissible());
  int admissible = 0;
  for (std::uint64_t i = 0; i < 500; ++i) {
    const auto p = sample_point(Family::General, 3, i);
    if (!p.admissible) continue;
    ++admissible;
    const auto r = evaluate_margin(p.ambient, p.spectrum);
    CHECK(r.principalWeylNormSq <= 1e-8);
  }
  CHECK(admissible > 50);
}

TEST_CASE("random ambient tensors are admissible") {
  Sampler rng(12);
  for (int k = 0; k < 1000; ++k) CHECK(make_ambient_restriction(random_ambient_tensor(rng)).admissible());
}

TEST_CASE("projection removes the targeted Weyl components") {
  Sampler rng(2);
  const auto amb = make_ambient_restriction(random_ambient_tensor(rng));
  const auto spec = spectrum_from_mu(0.3, {0.4, -0.1, 0.2, -0.5});
  const auto soft = project_lcf(amb, spec, false);
  for (double w : principal_weyl(gauss_induced(soft, spec.shape_operator()))) CHECK(std::abs(w) < 1e-12);
  const auto hard = project_lcf(amb, spec, true);
  CHECK(invariants(gauss_induced(hard, spec.shape_operator())).weylNormSq < 1e-20);
}

TEST_CASE("simplex ascent finds the maximum of a concave quadratic") {
  const auto f = [](const std::vector<double>& x) { return -(x[0] - 1) * (x[0] - 1) - 2 * (x[1] + 0.5) * (x[1] + 0.5); };
  const auto r = nelder_mead_maximize(f, {0, 0}, {0.3, 0.3}, 500);
  CHECK(r.x[0] == doctest::Approx(1.0).epsilon(1e-5));
  CHECK(r.x[1] == doctest::Approx(-0.5).epsilon(1e-5));
  CHECK(r.value <= 0.0);
  CHECK(r.iterations <= 500);
}

TEST_CASE("warped search finds no violation") {
  SearchConfig cfg;
  cfg.samples = 20000;
  cfg.restarts = 4;
  cfg.seed = 7;
  const auto rep = maximize_margin(cfg);
  CHECK(rep.maxMargin <= 1e-8);
  REQUIRE(rep.argmax);
  CHECK(rep.argmax->margin == rep.maxMargin);
  std::uint64_t total = rep.rejected;
  for (auto c : rep.caseHistogram) total += c;
  CHECK(total == cfg.samples);
  CHECK(std::sqrt(rep.maxWeylNormSq) <= 1e-10);
  for (const auto& c : search_checks(cfg, rep)) CHECK_MESSAGE(c.pass, c.name);
}

TEST_CASE("umbilic-only warped search attains the equality case") {
  SearchConfig cfg;
  cfg.samples = 2000;
  cfg.restarts = 3;
  cfg.hMin = cfg.hMax = 0.0;
  cfg.mMin = cfg.mMax = 0.0;
  const auto rep = maximize_margin(cfg);
  CHECK(rep.maxMargin <= 1e-8);
  CHECK(rep.maxMargin >= -1e-6);
}

TEST_CASE("general search in the small-|H| regime against the bare bound") {
  const double eps0 = epsilon0_threshold().root;
  SearchConfig cfg;
  cfg.family = Family::General;
  cfg.samples = 10000;
  cfg.restarts = 3;
  cfg.hMin = -eps0;
  cfg.hMax = eps0;
  cfg.bound = BoundMode::Bare;
  const auto rep = maximize_margin(cfg);
  CHECK(rep.maxMargin <= 1e-8);
}

TEST_CASE("search reports do not depend on the worker count") {
  SearchConfig cfg;
  cfg.family = Family::General;
  cfg.samples = 3000;
  cfg.restarts = 4;
  cfg.workers = 1;
  const auto a = maximize_margin(cfg);
  cfg.workers = 3;
  const auto b = maximize_margin(cfg);
  CHECK(a.maxMargin == b.maxMargin);
  CHECK(a.argmaxIndex == b.argmaxIndex);
  CHECK(a.caseHistogram == b.caseHistogram);
  CHECK(a.rejected == b.rejected);
}

TEST_CASE("small-|H| threshold") {
  const auto e = epsilon0_threshold();
  CHECK(e.root == doctest::Approx(0.13644607634926368).epsilon(1e-12));
  CHECK(std::abs(e.root - e.closedForm) <= 1e-10);
  CHECK(e.publishedValue == doctest::Approx(0.92542231470341061).epsilon(1e-12));
  CHECK(e.gAtZero == doctest::Approx(std::sqrt(12.0) - std::sqrt(6.0)));
  CHECK(epsilon0_gap(e.root - 1e-6) > 0);
  CHECK(epsilon0_gap(e.root + 1e-6) < 0);
  for (const auto& c : epsilon0_checks(e)) CHECK_MESSAGE(c.pass, c.name);
}
