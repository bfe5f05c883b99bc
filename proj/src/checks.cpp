#include "curvgauge/checks.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace curvgauge {

using nlohmann::json;

namespace {

constexpr double kSqrt3 = std::numbers::sqrt3;

double scale1(double x) { return std::max(1.0, std::abs(x)); }

json array_json(std::span<const double> v) { return json(std::vector<double>(v.begin(), v.end())); }

std::array<double, 4> unit_ball_point(Sampler& rng) {
  const auto dir = rng.normal_vector<4>();
  double n = 0.0;
  for (double x : dir) n += x * x;
  n = std::sqrt(n);
  const double r = std::pow(rng.uniform(), 0.25);
  std::array<double, 4> T{};
  if (n > 0.0)
    for (int i = 0; i < 4; ++i) T[i] = dir[i] / n * r;
  return T;
}

KappaPair sorted_kappa(Sampler& rng) {
  KappaPair k{rng.uniform(), rng.uniform()};
  if (k.kappa1 > k.kappa2) std::swap(k.kappa1, k.kappa2);
  return k;
}

json spectrum_json(const ShapeSpectrum& s) {
  return json{{"H", s.H}, {"lambda", array_json(s.frameLambda)}, {"mu", array_json(s.frameMu)}};
}

json ambient_sectionals(const AmbientRestriction& a) {
  std::vector<double> sec;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) sec.push_back(a.comp.coordinate_sectional(i, j));
  return sec;
}

}  // namespace

CurvatureTensor random_curvature_tensor(Sampler& rng, int dim) {
  CurvatureTensor r = constant_curvature(dim, rng.normal());
  std::vector<double> u(static_cast<std::size_t>(dim)), v(u.size());
  for (int k = 0; k < 6; ++k) {
    for (int i = 0; i < dim; ++i) {
      u[i] = rng.normal();
      v[i] = rng.normal();
    }
    r = r + rng.normal() * decomposable_square(u, v);
  }
  return r;
}

std::array<double, 4> random_lambda(Sampler& rng) {
  const double s = rng.uniform(0.0, 2.0);
  auto l = rng.normal_vector<4>();
  const double shift = rng.uniform(-2.0, 2.0);
  for (double& x : l) x = s * x + shift;
  return l;
}

std::array<double, 4> random_traceless(Sampler& rng) {
  auto v = rng.normal_vector<4>();
  const double mean = (v[0] + v[1] + v[2] + v[3]) / 4.0;
  const double s = rng.uniform(0.0, 3.0);
  for (double& x : v) x = s * (x - mean);
  return v;
}

std::vector<CheckResult> decomposition_checks(std::uint64_t samples, std::uint64_t seed) {
  CheckAccumulator acc("decomposition", 1e-9);
  for (std::uint64_t i = 0; i < samples; ++i) {
    Sampler rng(seed, i);
    const AmbientRestriction amb = make_ambient_restriction(random_curvature_tensor(rng));
    const ShapeSpectrum spec = shape_spectrum(random_lambda(rng));
    const double qd = q_direct(gauss_induced(amb, spec.shape_operator()));
    const double qs = q_decomposed(amb, spec);
    acc.record(std::abs(qd - qs), [&] {
      return json{{"index", i}, {"qDirect", qd}, {"qDecomposed", qs}, {"spectrum", spectrum_json(spec)}};
    });
  }
  return {acc.result()};
}

std::vector<CheckResult> power_sum_checks(std::uint64_t samples, std::uint64_t seed) {
  CheckAccumulator trace("power-sum-trace", 1e-12);
  CheckAccumulator quartic("power-sum-quartic", 1e-10);
  CheckAccumulator subst("power-sum-substitution", 1e-10);
  CheckAccumulator cubic("cubic-bound", 1e-10);
  CheckAccumulator equality("cubic-bound-equality", 1e-10);
  for (std::uint64_t i = 0; i < samples; ++i) {
    Sampler rng(seed, i);
    const auto mu = random_traceless(rng);
    const double H = rng.uniform(-3.0, 3.0);
    const ShapeSpectrum s = spectrum_from_mu(H, mu);
    const auto w = [&] { return json{{"index", i}, {"spectrum", spectrum_json(s)}}; };
    const double a2 = s.aNormSq;
    trace.record(std::abs(s.mu[0] + s.mu[1] + s.mu[2] + s.mu[3]) / scale1(s.lambda[0]) /
                     scale1(s.lambda[3]),
                 w);
    quartic.record(std::abs(s.p4 - (0.5 * a2 * a2 - 4.0 * s.gk)) / std::max(1.0, a2 * a2), w);

    double l3 = 0.0, l4 = 0.0;
    for (double l : s.lambda) {
      l3 += l * l * l;
      l4 += l * l * l * l;
    }
    const double H2 = H * H;
    const double r3 = l3 - (s.p3 + 4.0 * H2 * s.H + 3.0 * s.H * a2);
    const double r4 = l4 - (s.p4 - 12.0 * H2 * H2 - 6.0 * H2 * a2 + 4.0 * s.H * l3);
    subst.record(std::max(std::abs(r3) / std::max(1.0, std::abs(l3)), std::abs(r4) / std::max(1.0, l4)), w);

    const double bound = a2 * std::sqrt(a2) / kSqrt3;
    cubic.record((s.p3 - bound) / std::max(1.0, bound), w);

    const double m = rng.uniform(-3.0, 3.0);
    const ShapeSpectrum e = spectrum_from_mu(0.0, {3.0 * m, -m, -m, -m});
    const double eb = e.aNormSq * std::sqrt(e.aNormSq) / kSqrt3;
    const double target = m >= 0.0 ? eb : -eb;
    equality.record(std::abs(e.p3 - target) / std::max(1.0, eb), [&] { return json{{"m", m}, {"p3", e.p3}}; });
  }
  return {trace.result(), quartic.result(), subst.result(), cubic.result(), equality.result()};
}

std::vector<CheckResult> weyl_trace_checks(std::uint64_t samples, std::uint64_t seed) {
  CheckAccumulator einstein("einstein-trace", 1e-10);
  CheckAccumulator weyl("weyl-trace", 1e-10);
  CheckAccumulator split("ricci-split", 1e-9);
  for (std::uint64_t i = 0; i < samples; ++i) {
    Sampler rng(seed, i);
    const int dim = 3 + static_cast<int>(i % 3);
    const CurvatureTensor r = random_curvature_tensor(rng, dim);
    const CurvatureInvariants inv = invariants(r);
    const auto w = [&] { return json{{"index", i}, {"dim", dim}, {"scalar", inv.scalar}}; };
    einstein.record(std::abs(inv.einstein.trace()), w);
    double worst = 0.0;
    for (int a = 0; a < dim; ++a)
      for (int b = 0; b < dim; ++b) {
        double t = 0.0;
        for (int k = 0; k < dim; ++k) t += inv.weyl(a, k, b, k);
        worst = std::max(worst, std::abs(t));
      }
    weyl.record(worst, w);
    const double rhs = inv.einsteinNormSq + inv.scalar * inv.scalar / dim;
    split.record(std::abs(inv.ricNormSq - rhs) / std::max(1.0, inv.ricNormSq), w);
  }
  return {einstein.result(), weyl.result(), split.result()};
}

std::vector<CheckResult> proof_step_checks(std::uint64_t samples, std::uint64_t seed) {
  CheckAccumulator stepR("step-sectional-average", 1e-10);
  CheckAccumulator stepHA("step-mean-curvature-cross-term", 1e-10);
  CheckAccumulator stepR1("step-weighted-average-IIc", 1e-10);
  for (std::uint64_t i = 0; i < samples; ++i) {
    Sampler rng(seed, i);
    const AmbientRestriction amb = make_ambient_restriction(random_ambient_tensor(rng));
    const double H = rng.uniform(-3.0, 3.0);
    const ShapeSpectrum s = spectrum_from_mu(H, random_traceless(rng));
    const auto w = [&] {
      return json{{"index", i}, {"spectrum", spectrum_json(s)}, {"ambientSectionals", ambient_sectionals(amb)}};
    };

    double worst = -std::numeric_limits<double>::infinity();
    for (int k = 0; k < 4; ++k) worst = std::max(worst, amb.a(k, k) - amb.sigma / 3.0 - 1.0);
    stepR.record(worst, w);

    double muA = 0.0;
    for (int k = 0; k < 4; ++k) muA += s.frameMu[k] * amb.a(k, k);
    const double lhs = -12.0 * H * muA - 3.0 * amb.aRingNormSq;
    const double rhs = 12.0 * H * H * s.aNormSq;
    stepHA.record((lhs - rhs) / std::max(1.0, std::abs(rhs)), w);

    // mu_1 > 0 > mu_2 >= mu_3 >= mu_4 in the working frame.
    std::array<double, 4> neg{0.0, -rng.uniform(0.01, 3.0), -rng.uniform(0.01, 3.0), -rng.uniform(0.01, 3.0)};
    std::sort(neg.begin() + 1, neg.end(), std::greater<>());
    neg[0] = -(neg[1] + neg[2] + neg[3]);
    double weighted = 0.0, a2 = 0.0;
    for (int k = 0; k < 4; ++k) {
      weighted += neg[k] * neg[k] * (amb.a(k, k) - amb.sigma / 3.0);
      a2 += neg[k] * neg[k];
    }
    stepR1.record((3.0 * weighted - 1.5 * a2) / std::max(1.0, a2), [&] {
      return json{{"index", i}, {"mu", array_json(neg)}, {"ambientSectionals", ambient_sectionals(amb)}};
    });
  }
  return {stepR.result(), stepHA.result(), stepR1.result()};
}

std::vector<CheckResult> orientation_checks(std::uint64_t samples, std::uint64_t seed) {
  CheckAccumulator margin("orientation-margin", 1e-12);
  CheckAccumulator label("orientation-case", 0.0);
  for (std::uint64_t i = 0; i < samples; ++i) {
    Sampler rng(seed, i);
    const AmbientRestriction amb = make_ambient_restriction(random_ambient_tensor(rng));
    const auto lam = random_lambda(rng);
    std::array<double, 4> flipped{};
    for (int k = 0; k < 4; ++k) flipped[k] = -lam[k];
    const ShapeSpectrum s = shape_spectrum(lam);
    const ShapeSpectrum f = shape_spectrum(flipped);
    const MarginReport a = evaluate_margin(amb, s);
    const MarginReport b = evaluate_margin(amb, f);
    const auto w = [&] {
      return json{{"index", i}, {"spectrum", spectrum_json(s)}, {"margin", a.margin}, {"flippedMargin", b.margin},
                  {"case", to_string(a.label)}, {"flippedCase", to_string(b.label)}};
    };
    const double r = std::max({std::abs(a.q - b.q), std::abs(a.bound - b.bound), std::abs(a.margin - b.margin),
                               std::abs(s.aNormSq - f.aNormSq), std::abs(s.gk - f.gk)}) /
                     std::max(1.0, std::abs(a.bound));
    margin.record(r, w);
    label.record(a.label == b.label ? 0.0 : 1.0, w);
  }
  return {margin.result(), label.result()};
}

std::vector<CheckResult> rotsym_checks(std::uint64_t samples, std::uint64_t seed, double hMax) {
  constexpr double tol = 1e-9;
  CheckAccumulator exact("rotsym-corrected-identity", tol);
  CheckAccumulator displayed("rotsym-displayed-identity", tol);
  CheckAccumulator qDropped("rotsym-q-le-chain1", tol);
  CheckAccumulator displayedDropped("rotsym-displayed-le-chain1", tol);
  CheckAccumulator droppedCubic("rotsym-chain1-le-chain2", tol);
  CheckAccumulator cubicKappa("rotsym-chain2-le-kappa-bound", tol);
  CheckAccumulator kappaUnit("rotsym-kappa-bound-le-unit-bound", tol);
  CheckAccumulator qKappa("rotsym-q-le-kappa-bound", tol);
  CheckAccumulator mu4("rotsym-quartic-pattern", 1e-12);
  for (std::uint64_t i = 0; i < samples; ++i) {
    Sampler rng(seed, i);
    const KappaPair k = sorted_kappa(rng);
    const TangentProjection tp = make_tangent_projection(unit_ball_point(rng));
    const double m = rng.uniform(-hMax, hMax);
    const double H = rng.uniform(-hMax, hMax);
    const int position = 1 + static_cast<int>(rng.below(4));
    const RotsymChain c = rotsym_margin(k, tp, m, H, position);
    const auto w = [&] {
      return json{{"index", i},           {"kappa1", k.kappa1},     {"kappa2", k.kappa2},
                  {"T", array_json(tp.T)}, {"m", m},                 {"H", H},
                  {"position", position},  {"q", c.q},               {"qCorrected", c.qExact},
                  {"displayed", c.displayed}, {"chain1", c.dropped}, {"chain2", c.cubic},
                  {"kappaBound", c.kappaBound}, {"unitBound", c.unitBound}};
    };
    const double s = std::max({1.0, std::abs(c.q), std::abs(c.kappaBound)});
    exact.record(std::abs(c.q - c.qExact) / s, w);
    displayed.record(std::abs(c.q - c.displayed) / s, w);
    qDropped.record((c.q - c.dropped) / s, w);
    displayedDropped.record((c.displayed - c.dropped) / s, w);
    droppedCubic.record((c.dropped - c.cubic) / s, w);
    cubicKappa.record((c.cubic - c.kappaBound) / s, w);
    kappaUnit.record((c.kappaBound - c.unitBound) / s, w);
    qKappa.record((c.q - c.kappaBound) / s, w);
    const double a2 = 12.0 * m * m;
    mu4.record(std::abs(c.mu4Residual) / std::max(1.0, a2 * a2), w);
  }
  return {exact.result(),      displayed.result(), qDropped.result(), displayedDropped.result(),
          droppedCubic.result(), cubicKappa.result(), kappaUnit.result(), qKappa.result(), mu4.result()};
}

std::vector<CheckResult> lemma_checks(std::uint64_t samples, std::uint64_t seed) {
  CheckAccumulator patternWeyl("lemma-pattern-full-weyl", 1e-10);
  CheckAccumulator nonPattern("lemma-nonpattern-weyl", 0.0);
  CheckAccumulator reduced("lemma-reduced-formula", 1e-10);
  CheckAccumulator onlyIf("lemma-off-principal-weyl", 1e-10);
  CheckAccumulator classify("lemma-classify-agreement", 0.0);
  CheckAccumulator closed("warped-closed-forms", 1e-12);
  CheckAccumulator gaussSec("warped-induced-sectionals", 1e-12);

  for (std::uint64_t i = 0; i < samples; ++i) {
    Sampler rng(seed, i);
    const KappaPair k = sorted_kappa(rng);
    const TangentProjection tp = make_tangent_projection(unit_ball_point(rng));
    const AmbientRestriction amb = warped_ambient(k, tp);
    const double H = rng.uniform(-2.0, 2.0);

    // Pattern spectrum: full Weyl tensor of the induced metric vanishes.
    const double m = rng.uniform(-2.0, 2.0);
    const int position = 1 + static_cast<int>(rng.below(4));
    const ShapeSpectrum ps = spectrum_from_mu(H, pattern_mu(m, position));
    const CurvatureInvariants pinv = invariants(gauss_induced(amb, ps.shape_operator()));
    patternWeyl.record(std::sqrt(pinv.weylNormSq), [&] {
      return json{{"index", i}, {"m", m}, {"position", position}, {"H", H}, {"kappa1", k.kappa1},
                  {"kappa2", k.kappa2}, {"T", array_json(tp.T)}};
    });

    // Spectrum at distance >= 0.1 from the pattern set.
    std::array<double, 4> mu{};
    do {
      mu = random_traceless(rng);
    } while (distance_to_lcf_patterns(mu) < 0.1);
    const ShapeSpectrum ns = spectrum_from_mu(H, mu);
    const CurvatureTensor induced = gauss_induced(amb, ns.shape_operator());
    const auto pw = principal_weyl(induced);
    const auto lw = lcf_weyl(ns.frameMu, 4);
    double maxW = 0.0, diff = 0.0, pwSq = 0.0;
    for (int q = 0; q < 6; ++q) {
      maxW = std::max(maxW, std::abs(pw[q]));
      diff = std::max(diff, std::abs(pw[q] - lw[q]));
      pwSq += 4.0 * pw[q] * pw[q];
    }
    const auto nw = [&] {
      return json{{"index", i}, {"mu", array_json(ns.frameMu)}, {"distance", distance_to_lcf_patterns(mu)},
                  {"maxPrincipalWeyl", maxW}};
    };
    nonPattern.record(1e-3 - maxW, nw);
    reduced.record(diff / std::max(1.0, ns.aNormSq), nw);
    const CurvatureInvariants ninv = invariants(induced);
    onlyIf.record(std::abs(ninv.weylNormSq - pwSq) / std::max(1.0, ninv.weylNormSq), nw);

    // Classification agrees with the reduced Weyl test.
    std::array<double, 4> cmu{};
    if (i % 2 == 0) {
      cmu = pattern_mu(rng.uniform(-3.0, 3.0), 1 + static_cast<int>(rng.below(4)));
    } else {
      cmu = random_traceless(rng);
    }
    double cscale = std::numeric_limits<double>::min();
    for (double x : cmu) cscale = std::max(cscale, std::abs(x));
    const bool byPattern = lcf_classify(cmu, 1e-9 * cscale).pattern;
    double wmax = 0.0;
    for (double x : lcf_weyl(cmu, 4)) wmax = std::max(wmax, std::abs(x));
    const bool byWeyl = wmax <= 1e-9 * cscale * cscale;
    classify.record(byPattern == byWeyl ? 0.0 : 1.0, [&] {
      return json{{"index", i}, {"mu", array_json(cmu)}, {"pattern", byPattern}, {"maxReducedWeyl", wmax}};
    });

    // Closed forms of the warped ambient and the induced sectionals.
    const WarpedClosedForms cf = warped_closed_forms(k, tp);
    double cerr = std::max(std::abs(cf.sigma - amb.sigma), std::abs(cf.aRingNormSq - amb.aRingNormSq));
    for (int q = 0; q < 4; ++q) cerr = std::max(cerr, std::abs(cf.aDiag[q] - amb.a(q, q)));
    closed.record(cerr, [&] { return json{{"index", i}, {"kappa1", k.kappa1}, {"kappa2", k.kappa2}}; });

    const CurvatureTensor pind = gauss_induced(amb, ps.shape_operator());
    double serr = 0.0;
    for (int a = 0; a < 4; ++a)
      for (int b = a + 1; b < 4; ++b) {
        const double expect = k.kappa2 + (k.kappa1 - k.kappa2) * (tp.T[a] * tp.T[a] + tp.T[b] * tp.T[b]) +
                              ps.frameLambda[a] * ps.frameLambda[b];
        serr = std::max(serr, std::abs(pind(a, b, a, b) - expect) / scale1(expect));
      }
    gaussSec.record(serr, [&] { return json{{"index", i}}; });
  }
  auto np = nonPattern.result();
  // Report the smallest max|W(i,j,i,j)| seen instead of the shifted residual.
  np.worstResidual = 1e-3 - np.worstResidual;
  np.tolerance = 1e-3;
  return {patternWeyl.result(), np, reduced.result(), onlyIf.result(), classify.result(), closed.result(),
          gaussSec.result()};
}

std::vector<CheckResult> slice_checks(const SliceGeometry& slice, const IntegralReport& rep) {
  const double pi2 = std::numbers::pi * std::numbers::pi;
  std::vector<CheckResult> out;
  const auto base = [&] {
    return json{{"phi", slice.preset.name()}, {"t", slice.t}, {"H", slice.H}, {"kappa2", slice.kappa.kappa2}};
  };

  CheckAccumulator gauss("slice-gauss-equation", 1e-9);
  gauss.record(std::abs(slice.intrinsicSec - (slice.kappa.kappa2 + slice.H * slice.H)) / scale1(slice.intrinsicSec),
               base);
  out.push_back(gauss.result());

  CheckAccumulator gbc("slice-gbc-integral", 1e-9);
  gbc.record(std::abs(rep.gbcIntegral - 8.0 * pi2) / (8.0 * pi2), [&] {
    auto w = base();
    w["gbcIntegral"] = rep.gbcIntegral;
    return w;
  });
  out.push_back(gbc.result());

  CheckAccumulator euler("slice-euler-number", 1e-9);
  euler.record(std::abs(rep.eulerNumber - 2.0), [&] {
    auto w = base();
    w["eulerNumber"] = rep.eulerNumber;
    return w;
  });
  out.push_back(euler.result());

  CheckAccumulator vol("slice-volume-functional", 1e-9);
  const double h2 = 1.0 + slice.H * slice.H;
  const double direct = h2 * h2 * slice.volume;
  vol.record(std::abs(rep.volumeFunctional - direct) / scale1(direct), [&] {
    auto w = base();
    w["volumeFunctional"] = rep.volumeFunctional;
    w["integrandTimesVolume"] = direct;
    return w;
  });
  out.push_back(vol.result());

  // The inequality is only asserted when the ambient satisfies kappa2 <= 1.
  CheckAccumulator ineq("slice-volume-inequality", 1e-9);
  const bool applicable = slice.kappa.kappa2 <= 1.0 + 1e-12;
  ineq.record(applicable ? -rep.slack / scale1(rep.rhs) : 0.0, [&] {
    auto w = base();
    w["slack"] = rep.slack;
    w["rhs"] = rep.rhs;
    w["applicable"] = applicable;
    return w;
  });
  out.push_back(ineq.result());

  if (rep.monteCarlo) {
    CheckAccumulator mc("slice-monte-carlo", 0.0);
    const double allowed = std::max(3.0 * rep.mc.stdError, 1e-9 * std::abs(rep.gbcIntegral));
    mc.record(std::abs(rep.mc.estimate - rep.gbcIntegral) - allowed, [&] {
      auto w = base();
      w["estimate"] = rep.mc.estimate;
      w["stdError"] = rep.mc.stdError;
      w["samples"] = rep.mc.samples;
      w["seed"] = rep.mc.seed;
      return w;
    });
    out.push_back(mc.result());
  }
  return out;
}

std::vector<CheckResult> epsilon0_checks(const Epsilon0& e) {
  CheckAccumulator closed("epsilon0-closed-form", 1e-10);
  closed.record(std::abs(e.root - e.closedForm), [&] {
    return json{{"root", e.root},
                {"closedForm", e.closedForm},
                {"publishedValue", e.publishedValue},
                {"iterations", e.iterations},
                {"note", "published value sqrt((368 sqrt3 - 598)/46) equals sqrt(46) times the root: "
                         "368 = 46*8 and 598 = 46*13, so the radical lacks a second division by 46"}};
  });
  CheckAccumulator bracket("epsilon0-bracket", 0.0);
  const double below = epsilon0_gap(e.root - 1e-6);
  const double above = epsilon0_gap(e.root + 1e-6);
  bracket.record(std::max(-below, above), [&] { return json{{"gBelow", below}, {"gAbove", above}}; });
  CheckAccumulator endpoint("epsilon0-endpoint", 1e-12);
  endpoint.record(std::abs(e.gAtZero - (std::sqrt(12.0) - std::sqrt(6.0))) + (e.gAtZero > 0.0 ? 0.0 : 1.0),
                  [&] { return json{{"gAtZero", e.gAtZero}}; });
  return {closed.result(), bracket.result(), endpoint.result()};
}

std::vector<CheckResult> search_checks(const SearchConfig& config, const SearchReport& rep) {
  std::vector<CheckResult> out;

  CheckResult margin{"search-max-margin", rep.maxMargin <= 1e-8, rep.maxMargin, 1e-8, rep.samples, json::object()};
  if (rep.argmax) {
    margin.witness = to_json(*rep.argmax);
    margin.witness["index"] = rep.argmaxIndex;
    margin.witness["fromAscent"] = rep.argmaxFromAscent;
  } else {
    margin.worstResidual = 0.0;
    margin.witness["note"] = "no sample passed the admissibility and conformal-flatness gates";
  }
  out.push_back(margin);

  const auto& eps = rep.epsilonRegime;
  const double epsMax = eps.samples ? eps.maxBareMargin : 0.0;
  out.push_back(CheckResult{"search-small-h-bare-margin", epsMax <= 1e-8, epsMax, 1e-8, eps.samples,
                            json{{"threshold", eps.threshold}, {"samples", eps.samples}}});

  std::uint64_t counted = rep.rejected;
  for (auto c : rep.caseHistogram) counted += c;
  out.push_back(CheckResult{"search-sample-accounting", counted == rep.samples,
                            std::abs(static_cast<double>(counted) - static_cast<double>(rep.samples)), 0.0,
                            rep.samples, json{{"counted", counted}}});

  if (config.family == Family::Warped) {
    const double w = std::sqrt(rep.maxWeylNormSq);
    out.push_back(CheckResult{"search-warped-lcf-exact", w <= 1e-10, w, 1e-10, rep.samples, json::object()});
  }
  return out;
}

json to_json(const CheckResult& c) {
  return json{{"name", c.name},       {"pass", c.pass},       {"worstResidual", c.worstResidual},
              {"tolerance", c.tolerance}, {"samples", c.samples}, {"witness", c.witness}};
}

json to_json(const MarginReport& m) {
  std::vector<double> aDiag;
  for (int i = 0; i < 4; ++i) aDiag.push_back(m.ambient.a(i, i));
  const auto comp = m.ambient.comp.components();
  return json{{"q", m.q},
              {"bound", m.bound},
              {"margin", m.margin},
              {"case", to_string(m.label)},
              {"weylNormSq", m.weylNormSq},
              {"principalWeylNormSq", m.principalWeylNormSq},
              {"H", m.H},
              {"lambda", array_json(m.spectrum.frameLambda)},
              {"mu", array_json(m.spectrum.frameMu)},
              {"aNormSq", m.spectrum.aNormSq},
              {"sigma", m.ambient.sigma},
              {"aDiag", aDiag},
              {"aRingNormSq", m.ambient.aRingNormSq},
              {"ambientSectionals", ambient_sectionals(m.ambient)},
              {"ambientComponents", std::vector<double>(comp.begin(), comp.end())}};
}

}  // namespace curvgauge
