#pragma once

// Rotationally symmetric ambients R x_phi S^4: curvature of the warped product,
// its restriction to a hypersurface, the two-eigenvalue characterization of
// conformal flatness and the pointwise inequality chain for such ambients.

#include <array>
#include <span>
#include <string>
#include <vector>

#include "curvgauge/claim.hpp"

namespace curvgauge {

/// Warping function with closed-form first and second derivatives.
class WarpedPreset {
 public:
  enum class Id { Sin, Const1, Cosh, Polynomial };

  static WarpedPreset sin();
  static WarpedPreset const1();
  static WarpedPreset cosh();
  /// phi(t) = sum_k coeffs[k] t^k, differentiated exactly.
  static WarpedPreset polynomial(std::vector<double> coeffs);
  /// "sin", "const1", "cosh" or "poly:c0,c1,...". Throws DomainError.
  static WarpedPreset parse(const std::string& spec);

  Id id() const { return id_; }
  std::string name() const;
  const std::vector<double>& coefficients() const { return coeffs_; }

  double phi(double t) const;
  double phi_dot(double t) const;
  double phi_ddot(double t) const;

  /// t in the declared domain and phi(t) > 0.
  bool in_domain(double t) const;

  /// Largest disagreement between the closed-form derivatives and central
  /// finite differences of phi at t.
  double derivative_self_test(double t, double h = 1e-4) const;

 private:
  WarpedPreset(Id id, std::vector<double> coeffs) : id_(id), coeffs_(std::move(coeffs)) {}
  Id id_;
  std::vector<double> coeffs_;
};

struct KappaPair {
  double kappa1 = 0.0;  ///< -phi''/phi, planes containing d/dt
  double kappa2 = 0.0;  ///< (1 - phi'^2)/phi^2, fiber planes

  bool admissible_for_rotsym() const { return 0.0 <= kappa1 && kappa1 <= kappa2 && kappa2 <= 1.0; }
};

/// Throws DomainError outside the preset's domain or where phi <= 0.
KappaPair kappa(const WarpedPreset& preset, double t);

/// Tangential part of d/dt in the principal frame; |T| <= 1.
struct TangentProjection {
  std::array<double, 4> T{};
  double normSq = 0.0;
};

/// Throws DomainError if |T|^2 > 1 (beyond rounding).
TangentProjection make_tangent_projection(const std::array<double, 4>& T);

/// Tangential ambient components of the warped product at a point of a
/// hypersurface.
AmbientRestriction warped_ambient(const KappaPair& k, const TangentProjection& T);

/// Closed forms for sigma, a_ii and |å|^2 of warped_ambient.
struct WarpedClosedForms {
  double sigma = 0.0;
  std::array<double, 4> aDiag{};
  double aRingNormSq = 0.0;
};
WarpedClosedForms warped_closed_forms(const KappaPair& k, const TangentProjection& T);

/// W(i,j,i,j), i<j, of a hypersurface of dimension n in a warped product with
/// traceless principal curvatures mu:
///   [(mu_i+mu_j)^2 + (n-4) mu_i mu_j]/(n-2) - |Å|^2/((n-1)(n-2)).
/// Throws ConstraintError if sum mu != 0, DimensionError if n < 4 or size != n.
std::vector<double> lcf_weyl(std::span<const double> mu, int n);

struct LcfPattern {
  bool pattern = false;
  double m = 0.0;
  int position = 0;  ///< 1-based index of the exceptional value -3m
};

/// Whether mu is {m, m, m, -3m} up to permutation, within tol.
LcfPattern lcf_classify(std::span<const double, 4> mu, double tol);

/// Distance from mu to the union of the four pattern lines.
double distance_to_lcf_patterns(std::span<const double, 4> mu);

/// Pattern spectrum: mu = m everywhere except -3m at `position` (1-based).
std::array<double, 4> pattern_mu(double m, int position);

/// Every term of the pointwise inequality chain for a pattern spectrum over a
/// warped ambient.
struct RotsymChain {
  double q = 0.0;            ///< q_direct of the induced tensor
  double qExact = 0.0;       ///< corrected closed form, equals q
  double displayed = 0.0;    ///< closed form as printed with the (6 + |Å|^2 + 4H^2) bracket
  double dropped = 0.0;      ///< kappa-difference term removed
  double cubic = 0.0;        ///< sum mu^3 replaced by its |Å|^3 bound
  double kappaBound = 0.0;   ///< 3 (kappa2 + H^2)^2
  double unitBound = 0.0;    ///< 3 (1 + H^2)^2
  double mu4Residual = 0.0;  ///< sum mu^4 - (7/12)|Å|^4

  bool exact_identity(double tol) const;
  bool displayed_identity(double tol) const;
  bool q_le_dropped(double tol) const { return q <= dropped + tol; }
  bool displayed_le_dropped(double tol) const { return displayed <= dropped + tol; }
  bool dropped_le_cubic(double tol) const { return dropped <= cubic + tol; }
  bool cubic_le_kappa(double tol) const { return cubic <= kappaBound + tol; }
  bool kappa_le_unit(double tol) const { return kappaBound <= unitBound + tol; }
  bool q_le_kappa(double tol) const { return q <= kappaBound + tol; }
};

/// Throws NotAdmissibleForRotsym unless 0 <= kappa1 <= kappa2 <= 1.
RotsymChain rotsym_margin(const KappaPair& k, const TangentProjection& T, double m, double H, int position = 4);

}  // namespace curvgauge
