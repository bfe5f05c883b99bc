#include "curvgauge/claim.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>

#include "curvgauge/errors.hpp"

namespace curvgauge {
namespace {

constexpr double kSqrt3 = std::numbers::sqrt3;

std::array<double, 4> sorted_desc(std::array<double, 4> v) {
  std::sort(v.begin(), v.end(), std::greater<>());
  return v;
}

}  // namespace

ShapeSpectrum shape_spectrum(std::span<const double, 4> lambda) {
  ShapeSpectrum s;
  std::copy(lambda.begin(), lambda.end(), s.frameLambda.begin());
  s.H = (lambda[0] + lambda[1] + lambda[2] + lambda[3]) / 4.0;
  for (int i = 0; i < 4; ++i) s.frameMu[i] = s.frameLambda[i] - s.H;
  s.lambda = sorted_desc(s.frameLambda);
  s.mu = sorted_desc(s.frameMu);
  s.gk = 1.0;
  for (double m : s.mu) {
    s.aNormSq += m * m;
    s.p3 += m * m * m;
    s.p4 += m * m * m * m;
    s.gk *= m;
  }
  return s;
}

ShapeSpectrum shape_spectrum(const std::array<double, 4>& lambda) {
  return shape_spectrum(std::span<const double, 4>(lambda));
}

ShapeSpectrum spectrum_from_mu(double H, const std::array<double, 4>& mu) {
  std::array<double, 4> lambda{};
  for (int i = 0; i < 4; ++i) lambda[i] = mu[i] + H;
  return shape_spectrum(lambda);
}

double q_direct(const CurvatureTensor& induced) {
  if (induced.dim() != 4) throw DimensionError("Q is defined for 4-dimensional hypersurfaces");
  double ric[4][4] = {};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      for (int k = 0; k < 4; ++k) ric[i][j] += induced(i, k, j, k);
  double s = 0.0, ricSq = 0.0;
  for (int i = 0; i < 4; ++i) {
    s += ric[i][i];
    for (int j = 0; j < 4; ++j) ricSq += ric[i][j] * ric[i][j];
  }
  return s * s / 12.0 - ricSq / 4.0;
}

double q_decomposed(const AmbientRestriction& amb, const ShapeSpectrum& spec) {
  if (amb.comp.dim() != 4) throw FrameMismatch("ambient restriction and spectrum must share a 4-frame");
  const double H = spec.H;
  const double sigma = amb.sigma;
  const double a2 = spec.aNormSq;
  double p3 = 0.0, p4 = 0.0, muSqA = 0.0, muA = 0.0;
  for (int i = 0; i < 4; ++i) {
    const double m = spec.frameMu[i];
    const double aii = amb.a(i, i);
    p3 += m * m * m;
    p4 += m * m * m * m;
    muSqA += m * m * (aii - sigma / 3.0);
    muA += m * aii;
  }
  const double H2 = H * H;
  const double total = sigma * sigma / 4.0 + 6.0 * sigma * H2 + 36.0 * H2 * H2 + a2 * a2 - 3.0 * p4 +
                       6.0 * muSqA - 12.0 * H * muA - 18.0 * H2 * a2 + 12.0 * H * p3 - 3.0 * amb.aRingNormSq;
  return total / 12.0;
}

double bare_bound(double H) {
  const double t = 1.0 + H * H;
  return 3.0 * t * t;
}

ClaimBound claim_bound(double H) {
  const double h = std::abs(H);
  ClaimBound b;
  b.x0 = 3.0 * kSqrt3 * h + std::sqrt(3.0 + 21.0 * h * h);
  b.xCase = std::sqrt(12.0 + 24.0 * h * h);
  b.branch = b.x0 <= b.xCase ? 1 : 2;
  const double x = b.branch == 1 ? b.xCase : b.x0;
  b.fBranch = kSqrt3 / 3.0 * x * x * x - 0.5 * h * x * x;
  b.fOfH = b.fBranch / 3.0;
  b.bound = bare_bound(H) + 3.0 * h * b.fOfH;
  return b;
}

FProfile f_profile(double aNorm, double H) {
  const double h = std::abs(H);
  const double a = aNorm;
  FProfile p;
  p.F = (-0.5 * a * a * a * a + 4.0 * kSqrt3 * h * a * a * a + 3.0 * (1.0 - 2.0 * h * h) * a * a) / 12.0;
  const double root = std::sqrt(6.0 + 36.0 * h * h);
  p.eta1 = 4.0 * kSqrt3 * h - root;
  p.eta2 = 4.0 * kSqrt3 * h + root;
  p.factored = -(a * a / 24.0) * (a - p.eta1) * (a - p.eta2);
  return p;
}

std::string_view to_string(CaseLabel c) {
  switch (c) {
    case CaseLabel::I: return "I";
    case CaseLabel::IIa: return "IIa";
    case CaseLabel::IIb: return "IIb";
    case CaseLabel::IIc: return "IIc";
  }
  return "?";
}

CaseLabel classify_case(const AmbientRestriction& /*amb*/, const ShapeSpectrum& spec) {
  double H = spec.H;
  std::array<double, 4> mu = spec.mu;
  // H below rounding level of the principal curvatures counts as zero.
  double scale = 1.0;
  for (double l : spec.lambda) scale = std::max(scale, std::abs(l));
  if (H < -1e-14 * scale) {
    H = -H;
    for (double& m : mu) m = -m;
    mu = sorted_desc(mu);
  }
  if (spec.aNormSq <= 12.0 + 24.0 * H * H) return CaseLabel::I;
  const double gk = mu[0] * mu[1] * mu[2] * mu[3];
  if (gk >= 0.0) return CaseLabel::IIa;
  // gk < 0 forces every mu nonzero with an odd number of negatives.
  if (mu[2] > 0.0 && mu[3] < 0.0) return CaseLabel::IIb;
  if (mu[0] > 0.0 && mu[1] < 0.0) return CaseLabel::IIc;
  throw UnclassifiableError("spectrum fits no case of the proof");
}

std::array<double, 6> principal_weyl(const CurvatureTensor& induced) {
  double ricDiag[4] = {};
  double s = 0.0;
  for (int i = 0; i < 4; ++i) {
    for (int k = 0; k < 4; ++k) ricDiag[i] += induced(i, k, i, k);
    s += ricDiag[i];
  }
  std::array<double, 6> w{};
  int n = 0;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) w[n++] = induced(i, j, i, j) - 0.5 * (ricDiag[i] + ricDiag[j]) + s / 6.0;
  return w;
}

MarginReport evaluate_margin(const AmbientRestriction& amb, const ShapeSpectrum& spec) {
  const CurvatureTensor induced = gauss_induced(amb, spec.shape_operator());
  const CurvatureInvariants inv = invariants(induced);
  MarginReport r;
  r.q = inv.scalar * inv.scalar / 12.0 - inv.ricNormSq / 4.0;
  r.bound = claim_bound(spec.H).bound;
  r.margin = r.q - r.bound;
  r.label = classify_case(amb, spec);
  r.weylNormSq = inv.weylNormSq;
  // Each W(i,j,i,j) appears four times in the full table.
  for (double w : principal_weyl(induced)) r.principalWeylNormSq += 4.0 * w * w;
  r.spectrum = spec;
  r.ambient = amb;
  r.H = spec.H;
  return r;
}

MarginReport claim_margin(const AmbientRestriction& amb, const ShapeSpectrum& spec, double lcfTol, LcfGate gate) {
  if (!amb.admissible()) throw NotAdmissible("ambient coordinate sectional outside [0,1]");
  MarginReport r = evaluate_margin(amb, spec);
  const double gated = gate == LcfGate::Full ? r.weylNormSq : r.principalWeylNormSq;
  if (gated > lcfTol) throw NotLcf("induced metric is not locally conformally flat at this point");
  return r;
}

}  // namespace curvgauge
