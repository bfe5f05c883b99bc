#pragma once

// Randomized and optimization-driven falsification of the pointwise bound over
// admissible, locally conformally flat data.

#include <array>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "curvgauge/claim.hpp"
#include "curvgauge/rng.hpp"
#include "curvgauge/warped.hpp"

namespace curvgauge {

enum class Family { Warped, General };
enum class BoundMode {
  Claim,  ///< 3(1+H^2)^2 + 3|H| f(|H|)
  Bare,   ///< 3(1+H^2)^2
};

std::string to_string(Family f);
std::string to_string(BoundMode b);
Family parse_family(const std::string& s);

struct SearchConfig {
  Family family = Family::Warped;
  std::uint64_t samples = 10000;
  int restarts = 10;
  std::uint64_t seed = 42;
  double lcfTol = 1e-8;
  double penaltyWeight = 100.0;
  double hMin = -2.0;
  double hMax = 2.0;
  /// Range of the pattern parameter m (warped family) and of the traceless
  /// spectrum scale (general family); defaults to [hMin, hMax].
  std::optional<double> mMin;
  std::optional<double> mMax;
  BoundMode bound = BoundMode::Claim;
  bool strict = false;       ///< general family: project the full Weyl tensor, gate on |W|^2
  int ascentIterations = 200;
  int workers = 1;
  bool keepRows = false;     ///< collect one SampleRow per sample
};

/// Parameters of a warped-family point.
struct WarpedParams {
  double kappa1 = 0.0;
  double kappa2 = 0.0;
  std::array<double, 4> T{};
  double m = 0.0;
  double H = 0.0;
  int position = 4;
};

struct SamplePoint {
  AmbientRestriction ambient;
  AmbientRestriction drawn;  ///< ambient before the conformal-flatness projection
  ShapeSpectrum spectrum;
  bool admissible = false;  ///< coordinate sectionals in [0,1] after any projection
  WarpedParams warped;      ///< warped family only
};

/// Deterministic in (config.seed, index); uses config.family, hMin/hMax and strict.
SamplePoint sample_point(const SearchConfig& config, std::uint64_t index);

/// Random 4-dimensional curvature tensor built from a constant-curvature part
/// and three weighted decomposable squares, shifted and scaled so that every
/// coordinate sectional lies in a random subinterval of [0,1].
CurvatureTensor random_ambient_tensor(Sampler& rng);

/// Default sampling ranges (H and m in [-2,2]).
SamplePoint sample_point(Family family, std::uint64_t seed, std::uint64_t index);

/// Builds the warped-family point for explicit parameters.
SamplePoint warped_point(const WarpedParams& p);

/// Adjusts the ambient so the induced metric's Weyl components vanish. With
/// strict = false only the six principal-frame W(i,j,i,j) are targeted, by a
/// minimum-norm change of the six coordinate sectionals; with strict = true the
/// full Weyl tensor of the induced metric is subtracted from the ambient.
AmbientRestriction project_lcf(const AmbientRestriction& ambient, const ShapeSpectrum& spec, bool strict);

/// Nelder-Mead maximization; returns the best point found.
struct SimplexResult {
  std::vector<double> x;
  double value = 0.0;
  int iterations = 0;
};
SimplexResult nelder_mead_maximize(const std::function<double(const std::vector<double>&)>& f,
                                   const std::vector<double>& x0, const std::vector<double>& step, int maxIterations);

struct SampleRow {
  std::uint64_t index = 0;
  bool accepted = false;
  double H = 0.0;
  std::array<double, 4> mu{};
  double sigma = 0.0;
  CaseLabel label = CaseLabel::I;
  double q = 0.0;
  double bound = 0.0;
  double margin = 0.0;
  double weylNormSq = 0.0;
};

struct EpsilonRegime {
  double threshold = 0.0;
  std::uint64_t samples = 0;
  double maxBareMargin = -std::numeric_limits<double>::infinity();
};

struct SearchReport {
  double maxMargin = -std::numeric_limits<double>::infinity();
  std::optional<MarginReport> argmax;
  std::uint64_t argmaxIndex = 0;  ///< sample index, or samples + restart for ascent results
  bool argmaxFromAscent = false;
  std::array<std::uint64_t, 4> caseHistogram{};  ///< indexed by CaseLabel
  std::uint64_t rejected = 0;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  int restartsRun = 0;
  double maxSampleMargin = -std::numeric_limits<double>::infinity();
  double maxWeylNormSq = 0.0;  ///< over admissible samples, before the LCF gate
  EpsilonRegime epsilonRegime;
  std::vector<SampleRow> rows;
  double wallTime = 0.0;
};

/// Evaluates every sample, then runs simplex ascent from the `restarts` best.
/// The result does not depend on config.workers.
SearchReport maximize_margin(const SearchConfig& config);

struct Epsilon0 {
  double root = 0.0;        ///< bisection root of sqrt(12+24h^2) - eta2(h)
  double closedForm = 0.0;  ///< sqrt((8 sqrt3 - 13)/46)
  double publishedValue = 0.0;  ///< sqrt((368 sqrt3 - 598)/46)
  double gAtZero = 0.0;
  int iterations = 0;
};

/// Largest |H| for which the case (ii) threshold dominates the larger root of F.
Epsilon0 epsilon0_threshold();

/// sqrt(12 + 24 h^2) - eta2(h).
double epsilon0_gap(double h);

}  // namespace curvgauge
