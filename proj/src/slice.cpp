#include "curvgauge/slice.hpp"

#include <cmath>

#include "curvgauge/errors.hpp"
#include "curvgauge/rng.hpp"

namespace curvgauge {

SliceGeometry slice_hypersurface(const WarpedPreset& preset, double t) {
  if (!preset.in_domain(t)) throw DomainError("slice parameter outside the warping function's domain");
  SliceGeometry s;
  s.preset = preset;
  s.t = t;
  s.phiVal = preset.phi(t);
  s.phiDotVal = preset.phi_dot(t);
  s.H = s.phiDotVal / s.phiVal;
  s.intrinsicSec = 1.0 / (s.phiVal * s.phiVal);
  const double p2 = s.phiVal * s.phiVal;
  s.volume = kUnitS4Volume * p2 * p2;
  s.kappa = kappa(preset, t);
  return s;
}

CurvatureTensor slice_curvature(const SliceGeometry& slice) {
  const AmbientRestriction amb = warped_ambient(slice.kappa, make_tangent_projection({0.0, 0.0, 0.0, 0.0}));
  return gauss_induced(amb, ShapeOperator{{slice.H, slice.H, slice.H, slice.H}});
}

double gbc_integrand(const CurvatureTensor& r) {
  if (r.dim() != 4) throw DimensionError("Gauss-Bonnet-Chern integrand is for 4-manifolds");
  const CurvatureInvariants inv = invariants(r);
  return inv.scalar * inv.scalar / 12.0 - inv.ricNormSq / 4.0 + inv.weylNormSq / 8.0;
}

MonteCarloEstimate monte_carlo_sphere(const std::function<double(std::span<const double, 5>)>& f, double radius,
                                      std::uint64_t samples, std::uint64_t seed) {
  MonteCarloEstimate out;
  out.samples = samples;
  out.seed = seed;
  if (samples == 0) return out;
  Sampler rng(seed);
  // Welford accumulation.
  double mean = 0.0, m2 = 0.0;
  for (std::uint64_t n = 1; n <= samples; ++n) {
    std::array<double, 5> x{};
    double norm = 0.0;
    do {
      x = rng.normal_vector<5>();
      norm = 0.0;
      for (double v : x) norm += v * v;
    } while (norm == 0.0);
    norm = std::sqrt(norm);
    for (double& v : x) v /= norm;
    const double y = f(x);
    const double d = y - mean;
    mean += d / static_cast<double>(n);
    m2 += d * (y - mean);
  }
  const double r2 = radius * radius;
  const double vol = kUnitS4Volume * r2 * r2;
  const double var = samples > 1 ? m2 / static_cast<double>(samples - 1) : 0.0;
  out.estimate = vol * mean;
  out.stdError = vol * std::sqrt(var / static_cast<double>(samples));
  return out;
}

namespace {

// Point-dependent rotation of the slice's 4-frame: the Householder reflection
// of R^4 taking e_0 to the direction of (x_1, ..., x_4).
std::array<std::array<double, 4>, 4> point_frame(std::span<const double, 5> x) {
  std::array<double, 4> v{x[1], x[2], x[3], x[4]};
  double n = 0.0;
  for (double c : v) n += c * c;
  std::array<std::array<double, 4>, 4> q{};
  for (int i = 0; i < 4; ++i) q[i][i] = 1.0;
  if (n < 1e-30) return q;
  n = std::sqrt(n);
  for (double& c : v) c /= n;
  v[0] -= 1.0;
  double vn = 0.0;
  for (double c : v) vn += c * c;
  if (vn < 1e-30) return q;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) q[i][j] -= 2.0 * v[i] * v[j] / vn;
  return q;
}

// Components of r in the rotated frame, one index contracted at a time.
std::vector<double> rotate(const CurvatureTensor& r, const std::array<std::array<double, 4>, 4>& q) {
  std::vector<double> cur(r.components().begin(), r.components().end());
  std::vector<double> next(256);
  for (int slot = 0; slot < 4; ++slot) {
    int stride = 1;
    for (int s = slot; s < 3; ++s) stride *= 4;
    for (int idx = 0; idx < 256; ++idx) {
      const int a = (idx / stride) % 4;
      const int base = idx - a * stride;
      double acc = 0.0;
      for (int i = 0; i < 4; ++i) acc += q[a][i] * cur[base + i * stride];
      next[idx] = acc;
    }
    cur.swap(next);
  }
  return cur;
}

}  // namespace

IntegralReport integrate_slice(const SliceGeometry& slice, std::uint64_t mcSamples, std::uint64_t seed) {
  IntegralReport rep;
  const CurvatureTensor r = slice_curvature(slice);
  rep.gbcIntegral = gbc_integrand(r) * slice.volume;
  rep.eulerNumber = rep.gbcIntegral / (4.0 * std::numbers::pi * std::numbers::pi);
  const double p2 = slice.phiVal * slice.phiVal;
  const double pd2 = slice.phiDotVal * slice.phiDotVal;
  rep.volumeFunctional = kUnitS4Volume * (p2 + pd2) * (p2 + pd2);
  const double chi = std::round(rep.eulerNumber);
  rep.rhs = 4.0 * std::numbers::pi * std::numbers::pi / 3.0 * chi;
  rep.slack = rep.volumeFunctional - rep.rhs;

  if (mcSamples > 0) {
    rep.monteCarlo = true;
    // The integrand is evaluated in a frame that turns with the sample point.
    const auto integrand = [&](std::span<const double, 5> x) {
      return gbc_integrand(make_curvature_tensor(4, rotate(r, point_frame(x))));
    };
    rep.mc = monte_carlo_sphere(integrand, slice.phiVal, mcSamples, seed);
  }
  return rep;
}

}  // namespace curvgauge
