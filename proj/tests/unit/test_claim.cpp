#include <doctest.h>

#include <cmath>
#include <numbers>

#include "curvgauge/checks.hpp"
#include "curvgauge/claim.hpp"
#include "curvgauge/errors.hpp"

using namespace curvgauge;

namespace {

const double kS3 = std::numbers::sqrt3;

AmbientRestriction unit_ambient() { return make_ambient_restriction(constant_curvature(4, 1.0)); }

}  // namespace

TEST_CASE("shape spectrum of umbilic and pattern shapes") {
  const auto u = shape_spectrum(std::array<double, 4>{0.6, 0.6, 0.6, 0.6});
  CHECK(u.H == doctest::Approx(0.6));
  CHECK(u.aNormSq == doctest::Approx(0.0));
  CHECK(u.gk == doctest::Approx(0.0));

  const double m = 0.7;
  const auto p = shape_spectrum(std::array<double, 4>{3 * m, -m, -m, -m});
  CHECK(p.H == doctest::Approx(0.0));
  CHECK(p.aNormSq == doctest::Approx(12 * m * m));
  CHECK(p.p3 == doctest::Approx(24 * m * m * m));
  CHECK(p.p4 == doctest::Approx(84 * std::pow(m, 4)));
  CHECK(p.gk == doctest::Approx(-3 * std::pow(m, 4)));
  CHECK(p.p4 == doctest::Approx(0.5 * p.aNormSq * p.aNormSq - 4 * p.gk));
  CHECK(p.p3 == doctest::Approx(std::pow(p.aNormSq, 1.5) / kS3));
  CHECK(p.mu[0] >= p.mu[1]);
  CHECK(p.mu[2] >= p.mu[3]);
}

TEST_CASE("Q from the induced tensor") {
  for (double H : {0.0, 0.5, -1.3}) {
    const auto r = constant_curvature(4, 1 + H * H);
    CHECK(q_direct(r) == doctest::Approx(3 * (1 + H * H) * (1 + H * H)));
  }
  CHECK(q_direct(CurvatureTensor(4)) == 0.0);
  CHECK(q_direct(constant_curvature(4, 0.3)) == doctest::Approx(3 * 0.09));
  CHECK_THROWS_AS(q_direct(constant_curvature(3, 1.0)), DimensionError);
  CHECK_THROWS_AS(q_direct(constant_curvature(5, 1.0)), DimensionError);
}

TEST_CASE("decomposed Q agrees with the direct evaluation") {
  const double H = 0.45;
  const auto s = spectrum_from_mu(H, {0, 0, 0, 0});
  CHECK(q_decomposed(unit_ambient(), s) == doctest::Approx(3 * (1 + H * H) * (1 + H * H)));
  CHECK(q_decomposed(make_ambient_restriction(CurvatureTensor(4)), spectrum_from_mu(0, {0, 0, 0, 0})) == 0.0);

  Sampler rng(42);
  const auto amb = make_ambient_restriction(random_ambient_tensor(rng));
  REQUIRE(amb.admissible());
  const auto spec = shape_spectrum(random_lambda(rng));
  CHECK(std::abs(q_decomposed(amb, spec) - q_direct(gauss_induced(amb, spec.shape_operator()))) <= 1e-9);
}

TEST_CASE("claim bound reference values") {
  const auto b0 = claim_bound(0.0);
  CHECK(b0.x0 == doctest::Approx(kS3));
  CHECK(b0.branch == 1);
  CHECK(b0.fBranch == doctest::Approx(24.0));
  CHECK(b0.bound == doctest::Approx(3.0));
  CHECK(bare_bound(0.0) == 3.0);

  // mpmath evaluations of the piecewise definition.
  const auto b1 = claim_bound(1.0);
  CHECK(b1.branch == 2);
  CHECK(b1.x0 == doctest::Approx(10.095131908272988).epsilon(1e-14));
  CHECK(b1.xCase == doctest::Approx(6.0));
  CHECK(b1.fBranch == doctest::Approx(543.02900397563425).epsilon(1e-13));
  CHECK(b1.bound == doctest::Approx(555.02900397563425).epsilon(1e-13));
  CHECK(claim_bound(0.1).bound == doctest::Approx(5.4714588089110368).epsilon(1e-13));
  CHECK(claim_bound(0.1).branch == 1);
  CHECK(claim_bound(0.5).bound == doctest::Approx(48.202850186707312).epsilon(1e-13));
  CHECK(claim_bound(2.0).bound == doctest::Approx(8151.873605350878).epsilon(1e-13));
  CHECK(claim_bound(-1.0).bound == b1.bound);
}

TEST_CASE("x0 is the maximizer of the profile") {
  for (double H : {0.0, 0.2, 0.7, 1.5}) {
    const double x0 = claim_bound(H).x0;
    const double h = 1e-5;
    const double d = (f_profile(x0 + h, H).F - f_profile(x0 - h, H).F) / (2 * h);
    CHECK(std::abs(d) < 1e-6 * std::max(1.0, std::abs(f_profile(x0, H).F)));
    CHECK(f_profile(x0, H).F >= f_profile(x0 * 0.9, H).F);
    CHECK(f_profile(x0, H).F >= f_profile(x0 * 1.1, H).F);
  }
}

TEST_CASE("branches of f meet continuously") {
  const double cross = 0.29882530500024729507;  // root of x0(h) = sqrt(12 + 24 h^2)
  const double lo = claim_bound(cross - 1e-9).fOfH;
  const double hi = claim_bound(cross + 1e-9).fOfH;
  CHECK(claim_bound(cross - 1e-9).branch == 1);
  CHECK(claim_bound(cross + 1e-9).branch == 2);
  CHECK(std::abs(lo - hi) < 1e-6);
  for (double H = 0.0; H <= 3.0; H += 0.01) CHECK(claim_bound(H).fOfH >= 0.0);
}

TEST_CASE("profile factorization") {
  const auto p = f_profile(std::sqrt(12.0), 0.0);
  CHECK(p.F == doctest::Approx(-3.0));
  CHECK(p.eta1 == doctest::Approx(-std::sqrt(6.0)));
  CHECK(p.eta2 == doctest::Approx(std::sqrt(6.0)));
  CHECK(p.factored == doctest::Approx(-3.0));
  CHECK(f_profile(0.0, 1.7).F == 0.0);
  const double eta2 = f_profile(0.0, 0.3).eta2;
  CHECK(std::abs(f_profile(eta2, 0.3).F) < 1e-10);
  Sampler rng(4);
  for (int k = 0; k < 1000; ++k) {
    const auto q = f_profile(rng.uniform(0, 20), rng.uniform(-3, 3));
    CHECK(std::abs(q.F - q.factored) <= 1e-10 * std::max(1.0, std::abs(q.F)));
  }
}

TEST_CASE("case classification") {
  const auto amb = unit_ambient();
  CHECK(classify_case(amb, spectrum_from_mu(0.9, {0, 0, 0, 0})) == CaseLabel::I);
  const double m = 1.2;
  const auto c = shape_spectrum(std::array<double, 4>{3 * m, -m, -m, -m});
  CHECK(c.aNormSq == doctest::Approx(17.28));
  CHECK(classify_case(amb, c) == CaseLabel::IIc);
  CHECK(classify_case(amb, shape_spectrum(std::array<double, 4>{m, m, m, -3 * m})) == CaseLabel::IIb);
  CHECK(classify_case(amb, spectrum_from_mu(0.0, {3, 3, -3, -3})) == CaseLabel::IIa);
  // Boundary |Å|^2 = 12 + 24 H^2 goes to case I.
  CHECK(classify_case(amb, spectrum_from_mu(0.0, {3, -1, -1, -1})) == CaseLabel::I);
  // Negative H: classification after the joint flip.
  CHECK(classify_case(amb, spectrum_from_mu(-0.1, {-3 * m, m, m, m})) ==
        classify_case(amb, spectrum_from_mu(0.1, {3 * m, -m, -m, -m})));
}

TEST_CASE("claim margin") {
  const auto eq = claim_margin(unit_ambient(), spectrum_from_mu(0.0, {0, 0, 0, 0}));
  CHECK(eq.q == doctest::Approx(3.0));
  CHECK(eq.bound == doctest::Approx(3.0));
  CHECK(eq.margin == doctest::Approx(0.0));
  CHECK(eq.label == CaseLabel::I);

  const auto deep = claim_margin(unit_ambient(), spectrum_from_mu(0.0, {2, 2, 2, -6}));
  CHECK(deep.margin < 0.0);
  CHECK(deep.spectrum.aNormSq == doctest::Approx(48.0));

  const auto flat = claim_margin(make_ambient_restriction(CurvatureTensor(4)), spectrum_from_mu(0.0, {0, 0, 0, 0}));
  CHECK(flat.q == 0.0);
  CHECK(flat.margin == doctest::Approx(-3.0));
  CHECK(flat.margin == flat.q - flat.bound);

  CHECK_THROWS_AS(claim_margin(make_ambient_restriction(constant_curvature(4, 1.2)), spectrum_from_mu(0, {0, 0, 0, 0})),
                  NotAdmissible);
  CHECK_THROWS_AS(claim_margin(unit_ambient(), spectrum_from_mu(0.0, {2, -2, 1, -1})), NotLcf);
  // The principal gate only looks at W(i,j,i,j); for a diagonal shape over a
  // constant-curvature ambient that is the whole Weyl tensor.
  CHECK_THROWS_AS(claim_margin(unit_ambient(), spectrum_from_mu(0.0, {2, -2, 1, -1}), 1e-8, LcfGate::Principal),
                  NotLcf);
}

TEST_CASE("principal Weyl components") {
  const auto w = principal_weyl(gauss_induced(unit_ambient(), ShapeOperator{{1, 1, 1, -3}}));
  for (double x : w) CHECK(std::abs(x) < 1e-12);
  const auto r = gauss_induced(unit_ambient(), ShapeOperator{{2, -2, 1, -1}});
  const auto inv = invariants(r);
  const auto p = principal_weyl(r);
  for (int q = 0, n = 0; q < 4; ++q)
    for (int s = q + 1; s < 4; ++s, ++n) CHECK(p[n] == doctest::Approx(inv.weyl(q, s, q, s)));
}

TEST_CASE("orientation flip leaves Q and the bound unchanged") {
  Sampler rng(10);
  for (int k = 0; k < 200; ++k) {
    const auto amb = make_ambient_restriction(random_ambient_tensor(rng));
    const auto l = random_lambda(rng);
    const auto a = evaluate_margin(amb, shape_spectrum(l));
    const auto b = evaluate_margin(amb, shape_spectrum(std::array<double, 4>{-l[0], -l[1], -l[2], -l[3]}));
    CHECK(a.q == doctest::Approx(b.q));
    CHECK(a.bound == b.bound);
    CHECK(a.label == b.label);
  }
}

TEST_CASE("identity suites pass at small budgets") {
  for (const auto& c : decomposition_checks(2000, 1)) CHECK_MESSAGE(c.pass, c.name);
  for (const auto& c : power_sum_checks(2000, 1)) CHECK_MESSAGE(c.pass, c.name);
  for (const auto& c : weyl_trace_checks(2000, 1)) CHECK_MESSAGE(c.pass, c.name);
  for (const auto& c : proof_step_checks(2000, 1)) CHECK_MESSAGE(c.pass, c.name);
  for (const auto& c : orientation_checks(2000, 1)) CHECK_MESSAGE(c.pass, c.name);
}
