#include "curvgauge/curvature.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "curvgauge/errors.hpp"
#include "curvgauge/rng.hpp"

namespace curvgauge {
namespace {

void check_dim(int dim) {
  if (dim < 3 || dim > 5) {
    throw DimensionError("curvature tensor dimension must be in [3,5], got " + std::to_string(dim));
  }
}

std::size_t table_size(int dim) {
  const auto d = static_cast<std::size_t>(dim);
  return d * d * d * d;
}

double delta(int i, int j) { return i == j ? 1.0 : 0.0; }

}  // namespace

CurvatureTensor::CurvatureTensor(int dim) : dim_(dim), comp_() {
  check_dim(dim);
  comp_.assign(table_size(dim), 0.0);
}

CurvatureTensor CurvatureTensor::operator+(const CurvatureTensor& other) const {
  if (other.dim_ != dim_) throw DimensionMismatch("tensor sum of different dimensions");
  std::vector<double> out(comp_);
  for (std::size_t n = 0; n < out.size(); ++n) out[n] += other.comp_[n];
  return CurvatureTensor(dim_, std::move(out));
}

CurvatureTensor CurvatureTensor::operator-(const CurvatureTensor& other) const {
  if (other.dim_ != dim_) throw DimensionMismatch("tensor difference of different dimensions");
  std::vector<double> out(comp_);
  for (std::size_t n = 0; n < out.size(); ++n) out[n] -= other.comp_[n];
  return CurvatureTensor(dim_, std::move(out));
}

CurvatureTensor CurvatureTensor::operator*(double s) const {
  std::vector<double> out(comp_);
  for (double& x : out) x *= s;
  return CurvatureTensor(dim_, std::move(out));
}

double CurvatureTensor::bianchi_residual() const {
  double worst = 0.0;
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j)
      for (int k = 0; k < dim_; ++k)
        for (int l = 0; l < dim_; ++l) {
          const double r = (*this)(i, j, k, l) + (*this)(j, k, i, l) + (*this)(k, i, j, l);
          worst = std::max(worst, std::abs(r));
        }
  return worst;
}

void CurvatureTensor::add_plane_term(int i, int j, double s) {
  if (i == j) return;
  comp_[index(i, j, i, j)] += s;
  comp_[index(j, i, j, i)] += s;
  comp_[index(i, j, j, i)] -= s;
  comp_[index(j, i, i, j)] -= s;
}

CurvatureTensor make_curvature_tensor(int dim, std::span<const double> comp) {
  check_dim(dim);
  if (comp.size() != table_size(dim)) {
    throw ShapeError("component table has " + std::to_string(comp.size()) + " entries, expected " +
                     std::to_string(table_size(dim)));
  }
  double scale = 1.0;
  for (double x : comp) {
    if (!std::isfinite(x)) throw ShapeError("component table contains a non-finite entry");
    scale = std::max(scale, std::abs(x));
  }

  const auto at = [&](int i, int j, int k, int l) {
    return comp[((static_cast<std::size_t>(i) * dim + j) * dim + k) * dim + l];
  };

  // Pair antisymmetrization. Grouped as (a - b) + (d - c) so an already
  // antisymmetric input round-trips exactly.
  std::vector<double> anti(table_size(dim));
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j)
      for (int k = 0; k < dim; ++k)
        for (int l = 0; l < dim; ++l) {
          const double v = (at(i, j, k, l) - at(j, i, k, l)) + (at(j, i, l, k) - at(i, j, l, k));
          anti[((static_cast<std::size_t>(i) * dim + j) * dim + k) * dim + l] = 0.25 * v;
        }

  std::vector<double> sym(table_size(dim));
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j)
      for (int k = 0; k < dim; ++k)
        for (int l = 0; l < dim; ++l) {
          const auto ijkl = ((static_cast<std::size_t>(i) * dim + j) * dim + k) * dim + l;
          const auto klij = ((static_cast<std::size_t>(k) * dim + l) * dim + i) * dim + j;
          sym[ijkl] = 0.5 * (anti[ijkl] + anti[klij]);
        }

  CurvatureTensor out(dim, std::move(sym));
  const double residual = out.bianchi_residual();
  if (residual > kConstructionTol * scale) {
    throw BianchiViolation("first Bianchi identity violated, residual " + std::to_string(residual));
  }
  return out;
}

CurvatureTensor constant_curvature(int dim, double c) {
  CurvatureTensor out(dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j)
      for (int k = 0; k < dim; ++k)
        for (int l = 0; l < dim; ++l)
          out.comp_[out.index(i, j, k, l)] = c * (delta(i, k) * delta(j, l) - delta(i, l) * delta(j, k));
  return out;
}

CurvatureTensor decomposable_square(std::span<const double> u, std::span<const double> v) {
  if (u.size() != v.size()) throw DimensionMismatch("2-form factors of different length");
  const int dim = static_cast<int>(u.size());
  CurvatureTensor out(dim);
  std::vector<double> w(static_cast<std::size_t>(dim) * dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) w[i * dim + j] = u[i] * v[j] - u[j] * v[i];
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j)
      for (int k = 0; k < dim; ++k)
        for (int l = 0; l < dim; ++l) out.comp_[out.index(i, j, k, l)] = w[i * dim + j] * w[k * dim + l];
  return out;
}

CurvatureTensor weyl_tensor(const CurvatureTensor& r) {
  const int n = r.dim();
  Eigen::MatrixXd ric = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) ric(i, j) += r(i, k, j, k);
  const double s = ric.trace();
  const double c1 = 1.0 / (n - 2);
  const double c2 = s / ((n - 1.0) * (n - 2.0));

  std::vector<double> w(table_size(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          const double ricTerm = ric(i, k) * delta(j, l) - ric(i, l) * delta(j, k) + ric(j, l) * delta(i, k) -
                                 ric(j, k) * delta(i, l);
          const double metricTerm = delta(i, k) * delta(j, l) - delta(i, l) * delta(j, k);
          w[r.index(i, j, k, l)] = r(i, j, k, l) - c1 * ricTerm + c2 * metricTerm;
        }
  return CurvatureTensor(n, std::move(w));
}

CurvatureInvariants invariants(const CurvatureTensor& r) {
  const int n = r.dim();
  if (n < 3) throw DimensionError("Weyl coefficients undefined for dim < 3");
  CurvatureInvariants inv;
  inv.ric = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) inv.ric(i, j) += r(i, k, j, k);
  inv.scalar = inv.ric.trace();
  inv.einstein = inv.ric - (inv.scalar / n) * Eigen::MatrixXd::Identity(n, n);
  inv.ricNormSq = inv.ric.squaredNorm();
  inv.einsteinNormSq = inv.einstein.squaredNorm();
  inv.weyl = weyl_tensor(r);
  inv.weylNormSq = 0.0;
  for (double x : inv.weyl.components()) inv.weylNormSq += x * x;
  return inv;
}

double sectional(const CurvatureTensor& r, std::span<const double> u, std::span<const double> v) {
  const int n = r.dim();
  if (static_cast<int>(u.size()) != n || static_cast<int>(v.size()) != n) {
    throw FrameError("plane vectors must have the tensor's dimension");
  }
  double uu = 0, vv = 0, uv = 0;
  for (int i = 0; i < n; ++i) {
    uu += u[i] * u[i];
    vv += v[i] * v[i];
    uv += u[i] * v[i];
  }
  if (std::abs(uu - 1.0) > kFrameTol || std::abs(vv - 1.0) > kFrameTol || std::abs(uv) > kFrameTol) {
    throw FrameError("sectional curvature needs an orthonormal pair");
  }
  double acc = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const double uivj = u[i] * v[j];
      if (uivj == 0.0) continue;
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) acc += r(i, j, k, l) * uivj * u[k] * v[l];
    }
  return acc;
}

namespace {

struct Plane {
  Eigen::VectorXd u, v;
  double value = 0.0;
};

void orthonormalize(Eigen::VectorXd& u, Eigen::VectorXd& v) {
  u.normalize();
  v -= v.dot(u) * u;
  v.normalize();
}

double plane_value(const CurvatureTensor& r, const Eigen::VectorXd& u, const Eigen::VectorXd& v) {
  return sectional(r, std::span<const double>(u.data(), u.size()), std::span<const double>(v.data(), v.size()));
}

// Gradient of R(u,v,u,v) with respect to u and v (pair symmetry gives the 2).
void plane_gradient(const CurvatureTensor& r, const Eigen::VectorXd& u, const Eigen::VectorXd& v,
                    Eigen::VectorXd& gu, Eigen::VectorXd& gv) {
  const int n = r.dim();
  gu.setZero(n);
  gv.setZero(n);
  for (int a = 0; a < n; ++a)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          gu(a) += 2.0 * r(a, j, k, l) * v(j) * u(k) * v(l);
          gv(a) += 2.0 * r(j, a, k, l) * u(j) * u(k) * v(l);
        }
}

// direction = +1 ascends, -1 descends.
double refine(const CurvatureTensor& r, Plane p, double direction) {
  double step = 0.1;
  Eigen::VectorXd gu, gv;
  for (int it = 0; it < 200 && step > 1e-14; ++it) {
    plane_gradient(r, p.u, p.v, gu, gv);
    Eigen::VectorXd u = p.u + direction * step * gu;
    Eigen::VectorXd v = p.v + direction * step * gv;
    orthonormalize(u, v);
    const double val = plane_value(r, u, v);
    if (direction * (val - p.value) > 0.0) {
      p.u = u;
      p.v = v;
      p.value = val;
      step *= 1.5;
    } else {
      step *= 0.5;
    }
  }
  return p.value;
}

}  // namespace

SectionalRange sectional_range(const CurvatureTensor& r, int budget, std::uint64_t seed) {
  const int n = r.dim();
  budget = std::max(budget, 1);
  Sampler rng(seed);
  constexpr std::size_t kKeep = 4;
  std::vector<Plane> lows, highs;
  const auto keep = [&](std::vector<Plane>& best, const Plane& p, bool lower) {
    best.push_back(p);
    std::stable_sort(best.begin(), best.end(), [&](const Plane& a, const Plane& b) {
      return lower ? a.value < b.value : a.value > b.value;
    });
    if (best.size() > kKeep) best.pop_back();
  };

  // Coordinate planes are always tried first.
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      Plane p{Eigen::VectorXd::Unit(n, i), Eigen::VectorXd::Unit(n, j), r(i, j, i, j)};
      keep(lows, p, true);
      keep(highs, p, false);
    }
  for (int s = 0; s < budget; ++s) {
    Plane p{Eigen::VectorXd(n), Eigen::VectorXd(n), 0.0};
    for (int i = 0; i < n; ++i) p.u(i) = rng.normal();
    for (int i = 0; i < n; ++i) p.v(i) = rng.normal();
    orthonormalize(p.u, p.v);
    p.value = plane_value(r, p.u, p.v);
    keep(lows, p, true);
    keep(highs, p, false);
  }

  SectionalRange out;
  out.budget = budget;
  out.seed = seed;
  out.minEstimate = lows.front().value;
  out.maxEstimate = highs.front().value;
  for (const Plane& p : lows) out.minEstimate = std::min(out.minEstimate, refine(r, p, -1.0));
  for (const Plane& p : highs) out.maxEstimate = std::max(out.maxEstimate, refine(r, p, +1.0));
  return out;
}

double AmbientRestriction::sectional_violation() const {
  double worst = 0.0;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) {
      const double s = comp(i, j, i, j);
      worst = std::max({worst, -s, s - 1.0});
    }
  return worst;
}

AmbientRestriction make_ambient_restriction(const CurvatureTensor& comp) {
  if (comp.dim() != 4) throw DimensionMismatch("ambient restriction must be 4-dimensional");
  AmbientRestriction out;
  out.comp = comp;
  out.a.setZero();
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      for (int k = 0; k < 4; ++k) out.a(i, j) += comp(i, k, j, k);
  out.sigma = out.a.trace();
  out.aRing = out.a - (out.sigma / 4.0) * Eigen::Matrix4d::Identity();
  out.aRingNormSq = out.aRing.squaredNorm();
  return out;
}

CurvatureTensor gauss_induced(const AmbientRestriction& ambient, const ShapeOperator& shape) {
  if (ambient.comp.dim() != 4 || shape.dim() != 4) {
    throw DimensionMismatch("Gauss equation needs 4-dimensional ambient restriction and shape operator");
  }
  const auto& h = shape.diag;
  std::vector<double> out(ambient.comp.components().begin(), ambient.comp.components().end());
  // Only R(i,j,i,j)-type entries receive a correction for diagonal h.
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      if (i == j) continue;
      const double hh = h[i] * h[j];
      out[ambient.comp.index(i, j, i, j)] += hh;
      out[ambient.comp.index(i, j, j, i)] -= hh;
    }
  return CurvatureTensor(4, std::move(out));
}

}  // namespace curvgauge
