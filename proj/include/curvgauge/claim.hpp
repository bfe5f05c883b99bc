#pragma once

// The pointwise quantity Q = S^2/12 - |Ric|^2/4 of a locally conformally flat
// hypersurface in a 5-manifold with Sec in [0,1], its term-by-term
// decomposition, the claimed upper bound and the case split of its proof.

#include <array>
#include <span>
#include <string_view>

#include "curvgauge/curvature.hpp"

namespace curvgauge {

/// Spectrum of the shape operator at a point (hypersurface dimension 4).
struct ShapeSpectrum {
  double H = 0.0;                     ///< mean curvature, average of lambda
  std::array<double, 4> lambda{};     ///< principal curvatures, descending
  std::array<double, 4> mu{};         ///< lambda - H, descending
  std::array<double, 4> frameLambda{};  ///< principal curvatures in working-frame order
  std::array<double, 4> frameMu{};      ///< frameLambda - H
  double aNormSq = 0.0;               ///< |Å|^2 = sum mu^2
  double p3 = 0.0;                    ///< sum mu^3
  double p4 = 0.0;                    ///< sum mu^4
  double gk = 0.0;                    ///< Gauss-Kronecker value of Å, prod mu

  ShapeOperator shape_operator() const { return ShapeOperator{{frameLambda.begin(), frameLambda.end()}}; }
};

/// Principal curvatures in working-frame order. The frame order is kept for
/// pairing with ambient data; lambda and mu are also stored sorted.
ShapeSpectrum shape_spectrum(std::span<const double, 4> lambda);
ShapeSpectrum shape_spectrum(const std::array<double, 4>& lambda);

/// Spectrum from mean curvature and traceless eigenvalues (frame order).
ShapeSpectrum spectrum_from_mu(double H, const std::array<double, 4>& mu);

/// Q from the induced tensor. Authoritative. Throws DimensionError if dim != 4.
double q_direct(const CurvatureTensor& induced);

/// Q assembled from sigma, a_ii, |å|^2 and the power sums of mu. Must agree with
/// q_direct(gauss_induced(amb, A)); exists to certify the decomposition.
double q_decomposed(const AmbientRestriction& amb, const ShapeSpectrum& spec);

struct ClaimBound {
  double x0 = 0.0;      ///< maximizer of F, 3 sqrt3 |H| + sqrt(3 + 21 H^2)
  double xCase = 0.0;   ///< sqrt(12 + 24 H^2), the case (ii) threshold for |Å|
  int branch = 1;       ///< 1 when x0 <= xCase, else 2
  double fBranch = 0.0; ///< f1 or f2, = 3 f(|H|)
  double fOfH = 0.0;    ///< f(|H|) >= 0
  double bound = 0.0;   ///< 3 (1+H^2)^2 + 3 |H| f(|H|)
};

ClaimBound claim_bound(double H);

/// The bare bound 3 (1+H^2)^2 used in the small-|H| regime.
double bare_bound(double H);

struct FProfile {
  double F = 0.0;
  double eta1 = 0.0;
  double eta2 = 0.0;
  double factored = 0.0;  ///< -(a^2/24)(a - eta1)(a - eta2)
};

/// F(|Å|) of the case (ii)(c) estimate and its root factorization.
FProfile f_profile(double aNorm, double H);

enum class CaseLabel { I, IIa, IIb, IIc };

std::string_view to_string(CaseLabel c);

/// Proof case of a point. Inputs with H < 0 are classified after the joint flip
/// (H, mu) -> (-H, -mu); |H| at rounding level (1e-14 relative to the largest
/// |lambda|) counts as zero. |Å|^2 = 12 + 24 H^2 goes to case I.
CaseLabel classify_case(const AmbientRestriction& amb, const ShapeSpectrum& spec);

/// Which Weyl components the locally-conformally-flat gate looks at.
enum class LcfGate {
  Full,       ///< |W|^2 over every component
  Principal,  ///< only W(i,j,i,j) in the principal frame
};

struct MarginReport {
  double q = 0.0;
  double bound = 0.0;
  double margin = 0.0;  ///< q - bound
  CaseLabel label = CaseLabel::I;
  double weylNormSq = 0.0;           ///< full |W|^2 of the induced metric
  double principalWeylNormSq = 0.0;  ///< sum of W(i,j,i,j)^2
  ShapeSpectrum spectrum;
  AmbientRestriction ambient;
  double H = 0.0;
};

/// Margin against the claimed bound. Throws NotAdmissible when a coordinate
/// sectional of the ambient leaves [0,1], NotLcf when the gated Weyl norm
/// exceeds lcfTol.
MarginReport claim_margin(const AmbientRestriction& amb, const ShapeSpectrum& spec, double lcfTol = 1e-8,
                          LcfGate gate = LcfGate::Full);

/// Same evaluation without the hypothesis gates (for search bookkeeping).
MarginReport evaluate_margin(const AmbientRestriction& amb, const ShapeSpectrum& spec);

/// W(i,j,i,j) of the induced metric for the six coordinate planes, pair order
/// (01, 02, 03, 12, 13, 23).
std::array<double, 6> principal_weyl(const CurvatureTensor& induced);

}  // namespace curvgauge
