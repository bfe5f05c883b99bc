#pragma once

// Level sets {t = c} of a warped product R x_phi S^4 and the Gauss-Bonnet-Chern
// integral over them.

#include <array>
#include <cstdint>
#include <functional>
#include <numbers>
#include <span>

#include "curvgauge/warped.hpp"

namespace curvgauge {

/// Volume of the unit round 4-sphere.
inline constexpr double kUnitS4Volume = 8.0 * std::numbers::pi * std::numbers::pi / 3.0;

struct SliceGeometry {
  WarpedPreset preset = WarpedPreset::sin();
  double t = 0.0;
  double phiVal = 0.0;
  double phiDotVal = 0.0;
  double H = 0.0;             ///< phi'/phi, slices are umbilic
  double intrinsicSec = 0.0;  ///< 1/phi^2
  double volume = 0.0;        ///< kUnitS4Volume * phi^4
  KappaPair kappa;
};

/// Throws DomainError outside the preset's domain.
SliceGeometry slice_hypersurface(const WarpedPreset& preset, double t);

/// Intrinsic curvature tensor of the slice, obtained from the warped ambient
/// (d/dt is normal, so T = 0) through the Gauss equation.
CurvatureTensor slice_curvature(const SliceGeometry& slice);

/// S^2/12 - |Ric|^2/4 + |W|^2/8. Throws DimensionError unless dim == 4.
double gbc_integrand(const CurvatureTensor& r);

struct MonteCarloEstimate {
  double estimate = 0.0;
  double stdError = 0.0;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
};

/// Uniform sampling on the round 4-sphere of the given radius (normalized
/// 5-dimensional Gaussians); returns Vol * mean(f) and its standard error.
/// `f` receives the unit-sphere point.
MonteCarloEstimate monte_carlo_sphere(const std::function<double(std::span<const double, 5>)>& f, double radius,
                                      std::uint64_t samples, std::uint64_t seed);

struct IntegralReport {
  double gbcIntegral = 0.0;
  double eulerNumber = 0.0;       ///< gbcIntegral / (4 pi^2)
  double volumeFunctional = 0.0;  ///< integral of (1 + H^2)^2
  double rhs = 0.0;               ///< (4 pi^2 / 3) chi
  double slack = 0.0;             ///< volumeFunctional - rhs
  bool monteCarlo = false;
  MonteCarloEstimate mc;          ///< Monte Carlo gbcIntegral, when requested
};

/// Closed-form integrals over a slice. With mcSamples > 0 the
/// Gauss-Bonnet-Chern integral is also estimated by sampling the integrand at
/// random points, each evaluated in a frame adapted to that point.
IntegralReport integrate_slice(const SliceGeometry& slice, std::uint64_t mcSamples = 0, std::uint64_t seed = 1);

}  // namespace curvgauge
