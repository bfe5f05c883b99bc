#pragma once

// Algebraic curvature tensors in orthonormal frames, their invariants, and the
// Gauss equation for a hypersurface with diagonal shape operator.

#include <array>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace curvgauge {

inline constexpr double kConstructionTol = 1e-9;
inline constexpr double kInvariantTol = 1e-10;
inline constexpr double kFrameTol = 1e-12;

struct AmbientRestriction;
struct ShapeOperator;

/// Rank-4 component table R(i,j,k,l) in an orthonormal frame, 3 <= dim <= 5.
/// Pair antisymmetry, pair exchange and the first Bianchi identity hold for
/// every instance.
class CurvatureTensor {
 public:
  /// Zero tensor.
  explicit CurvatureTensor(int dim);

  int dim() const { return dim_; }

  double operator()(int i, int j, int k, int l) const { return comp_[index(i, j, k, l)]; }

  /// Flat row-major view, size dim^4.
  std::span<const double> components() const { return comp_; }

  CurvatureTensor operator+(const CurvatureTensor& other) const;
  CurvatureTensor operator-(const CurvatureTensor& other) const;
  CurvatureTensor operator*(double s) const;
  friend CurvatureTensor operator*(double s, const CurvatureTensor& r) { return r * s; }

  /// max |R(i,j,k,l) + R(j,k,i,l) + R(k,i,j,l)|.
  double bianchi_residual() const;

  /// R(i,j,i,j), the sectional curvature of the coordinate plane e_i ^ e_j.
  double coordinate_sectional(int i, int j) const { return (*this)(i, j, i, j); }

  /// Adds s * (e_i ^ e_j) (x) (e_i ^ e_j): shifts the (i,j) coordinate sectional
  /// by s and leaves every other coordinate sectional unchanged.
  void add_plane_term(int i, int j, double s);

  std::size_t index(int i, int j, int k, int l) const {
    return ((static_cast<std::size_t>(i) * dim_ + j) * dim_ + k) * dim_ + l;
  }

 private:
  CurvatureTensor(int dim, std::vector<double> comp) : dim_(dim), comp_(std::move(comp)) {}

  friend CurvatureTensor make_curvature_tensor(int, std::span<const double>);
  friend CurvatureTensor constant_curvature(int, double);
  friend CurvatureTensor decomposable_square(std::span<const double>, std::span<const double>);
  friend CurvatureTensor weyl_tensor(const CurvatureTensor&);
  friend CurvatureTensor gauss_induced(const AmbientRestriction&, const ShapeOperator&);

  int dim_;
  std::vector<double> comp_;
};

/// Validated construction: pairs are antisymmetrized, then pair exchange is
/// symmetrized, then Bianchi is tested (never projected).
/// Throws ShapeError (size != dim^4 or non-finite entry), DimensionError
/// (dim outside [3,5]) or BianchiViolation (residual > 1e-9 * max(1, max|R|)).
CurvatureTensor make_curvature_tensor(int dim, std::span<const double> comp);

/// R(i,j,k,l) = c (d_ik d_jl - d_il d_jk).
CurvatureTensor constant_curvature(int dim, double c);

/// (u ^ v) (x) (u ^ v): nonnegative on every plane, satisfies Bianchi.
CurvatureTensor decomposable_square(std::span<const double> u, std::span<const double> v);

struct CurvatureInvariants {
  Eigen::MatrixXd ric;
  double scalar = 0.0;
  Eigen::MatrixXd einstein;
  CurvatureTensor weyl{4};
  double weylNormSq = 0.0;
  double ricNormSq = 0.0;
  double einsteinNormSq = 0.0;
};

/// Ricci, scalar, traceless Ricci and Weyl tensor with the dimension-n
/// coefficients 1/(n-2) and S/((n-1)(n-2)).
CurvatureInvariants invariants(const CurvatureTensor& r);

/// Weyl part only.
CurvatureTensor weyl_tensor(const CurvatureTensor& r);

/// R(u, v, u, v) for an orthonormal pair. Throws FrameError otherwise.
double sectional(const CurvatureTensor& r, std::span<const double> u, std::span<const double> v);

/// Estimated extremes of the sectional curvature. Not a certificate.
struct SectionalRange {
  double minEstimate = 0.0;
  double maxEstimate = 0.0;
  int budget = 0;
  std::uint64_t seed = 0;
};

/// `budget` random planes followed by projected gradient refinement from the
/// best few. Deterministic in `seed`.
SectionalRange sectional_range(const CurvatureTensor& r, int budget, std::uint64_t seed);

/// Principal curvatures of a hypersurface in its principal frame.
struct ShapeOperator {
  std::vector<double> diag;
  int dim() const { return static_cast<int>(diag.size()); }
};

/// Tangential ambient curvature data at a point of a 4-dimensional hypersurface.
/// Normal-index components are not represented.
struct AmbientRestriction {
  CurvatureTensor comp{4};
  double sigma = 0.0;           ///< sum_{i,j} Rbar(i,j,i,j)
  Eigen::Matrix4d a;            ///< a_ij = sum_k Rbar(i,k,j,k)
  Eigen::Matrix4d aRing;        ///< a - (sigma/4) I
  double aRingNormSq = 0.0;

  /// Largest distance of a coordinate sectional from [0, 1]; zero when admissible.
  double sectional_violation() const;

  /// Every coordinate sectional Rbar(i,j,i,j) in [0, 1] (within `tol`).
  bool admissible(double tol = 1e-12) const { return sectional_violation() <= tol; }
};

/// Derives sigma, a, aRing from a dimension-4 tensor. Throws DimensionMismatch.
AmbientRestriction make_ambient_restriction(const CurvatureTensor& comp);

/// Gauss equation R = Rbar + h_ik h_jl - h_il h_jk with h = diag(lambda).
/// Throws DimensionMismatch unless both sides are 4-dimensional.
CurvatureTensor gauss_induced(const AmbientRestriction& ambient, const ShapeOperator& shape);

}  // namespace curvgauge
