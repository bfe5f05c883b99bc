#include "curvgauge/warped.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "curvgauge/errors.hpp"

namespace curvgauge {

WarpedPreset WarpedPreset::sin() { return WarpedPreset(Id::Sin, {}); }
WarpedPreset WarpedPreset::const1() { return WarpedPreset(Id::Const1, {}); }
WarpedPreset WarpedPreset::cosh() { return WarpedPreset(Id::Cosh, {}); }

WarpedPreset WarpedPreset::polynomial(std::vector<double> coeffs) {
  if (coeffs.empty()) throw DomainError("polynomial warping function needs at least one coefficient");
  for (double c : coeffs)
    if (!std::isfinite(c)) throw DomainError("polynomial coefficient is not finite");
  return WarpedPreset(Id::Polynomial, std::move(coeffs));
}

WarpedPreset WarpedPreset::parse(const std::string& spec) {
  if (spec == "sin") return sin();
  if (spec == "const1") return const1();
  if (spec == "cosh") return cosh();
  if (spec.rfind("poly:", 0) == 0) {
    std::vector<double> coeffs;
    std::stringstream ss(spec.substr(5));
    std::string item;
    while (std::getline(ss, item, ',')) {
      try {
        std::size_t used = 0;
        coeffs.push_back(std::stod(item, &used));
        if (used != item.size()) throw DomainError("bad coefficient '" + item + "'");
      } catch (const std::logic_error&) {
        throw DomainError("bad coefficient '" + item + "'");
      }
    }
    return polynomial(std::move(coeffs));
  }
  throw DomainError("unknown warping preset '" + spec + "'");
}

std::string WarpedPreset::name() const {
  switch (id_) {
    case Id::Sin: return "sin";
    case Id::Const1: return "const1";
    case Id::Cosh: return "cosh";
    case Id::Polynomial: {
      std::ostringstream os;
      os.precision(17);
      os << "poly:";
      for (std::size_t k = 0; k < coeffs_.size(); ++k) os << (k ? "," : "") << coeffs_[k];
      return os.str();
    }
  }
  return "?";
}

namespace {

// Horner evaluation of the d-th derivative.
double poly_derivative(const std::vector<double>& c, double t, int d) {
  double acc = 0.0;
  for (int k = static_cast<int>(c.size()) - 1; k >= d; --k) {
    double falling = 1.0;
    for (int r = 0; r < d; ++r) falling *= (k - r);
    acc = acc * t + falling * c[k];
  }
  return acc;
}

}  // namespace

double WarpedPreset::phi(double t) const {
  switch (id_) {
    case Id::Sin: return std::sin(t);
    case Id::Const1: return 1.0;
    case Id::Cosh: return std::cosh(t);
    case Id::Polynomial: return poly_derivative(coeffs_, t, 0);
  }
  return 0.0;
}

double WarpedPreset::phi_dot(double t) const {
  switch (id_) {
    case Id::Sin: return std::cos(t);
    case Id::Const1: return 0.0;
    case Id::Cosh: return std::sinh(t);
    case Id::Polynomial: return poly_derivative(coeffs_, t, 1);
  }
  return 0.0;
}

double WarpedPreset::phi_ddot(double t) const {
  switch (id_) {
    case Id::Sin: return -std::sin(t);
    case Id::Const1: return 0.0;
    case Id::Cosh: return std::cosh(t);
    case Id::Polynomial: return poly_derivative(coeffs_, t, 2);
  }
  return 0.0;
}

bool WarpedPreset::in_domain(double t) const {
  if (!std::isfinite(t)) return false;
  if (id_ == Id::Sin && (t <= 0.0 || t >= std::numbers::pi)) return false;
  return phi(t) > 0.0;
}

double WarpedPreset::derivative_self_test(double t, double h) const {
  const double d1 = (phi(t + h) - phi(t - h)) / (2.0 * h);
  const double d2 = (phi(t + h) - 2.0 * phi(t) + phi(t - h)) / (h * h);
  return std::max(std::abs(d1 - phi_dot(t)), std::abs(d2 - phi_ddot(t)));
}

KappaPair kappa(const WarpedPreset& preset, double t) {
  if (!preset.in_domain(t)) throw DomainError("t outside the warping function's domain");
  const double p = preset.phi(t);
  const double pd = preset.phi_dot(t);
  return KappaPair{-preset.phi_ddot(t) / p, (1.0 - pd * pd) / (p * p)};
}

TangentProjection make_tangent_projection(const std::array<double, 4>& T) {
  TangentProjection out{T, 0.0};
  for (double x : T) out.normSq += x * x;
  if (!(out.normSq <= 1.0 + 1e-12)) throw DomainError("tangential part of a unit vector must have |T| <= 1");
  return out;
}

AmbientRestriction warped_ambient(const KappaPair& k, const TangentProjection& tp) {
  const auto& T = tp.T;
  const double d = k.kappa1 - k.kappa2;
  const auto delta = [](int i, int j) { return i == j ? 1.0 : 0.0; };
  std::vector<double> comp(256);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      for (int kk = 0; kk < 4; ++kk)
        for (int l = 0; l < 4; ++l) {
          const double base = delta(i, kk) * delta(j, l) - delta(i, l) * delta(j, kk);
          const double mixed = T[i] * T[kk] * delta(j, l) + T[j] * T[l] * delta(i, kk) - T[i] * T[l] * delta(j, kk) -
                               T[j] * T[kk] * delta(i, l);
          comp[((i * 4 + j) * 4 + kk) * 4 + l] = k.kappa2 * base + d * mixed;
        }
  return make_ambient_restriction(make_curvature_tensor(4, comp));
}

WarpedClosedForms warped_closed_forms(const KappaPair& k, const TangentProjection& tp) {
  const double d = k.kappa1 - k.kappa2;
  WarpedClosedForms out;
  out.sigma = 12.0 * k.kappa2 + 6.0 * d * tp.normSq;
  for (int i = 0; i < 4; ++i) out.aDiag[i] = 3.0 * k.kappa2 + d * (2.0 * tp.T[i] * tp.T[i] + tp.normSq);
  out.aRingNormSq = 3.0 * d * d * tp.normSq * tp.normSq;
  return out;
}

std::vector<double> lcf_weyl(std::span<const double> mu, int n) {
  if (n < 4) throw DimensionError("the warped-product Weyl formula needs n >= 4");
  if (static_cast<int>(mu.size()) != n) throw DimensionError("mu must have n entries");
  double sum = 0.0, normSq = 0.0, scale = 1.0;
  for (double m : mu) {
    sum += m;
    normSq += m * m;
    scale = std::max(scale, std::abs(m));
  }
  if (std::abs(sum) > 1e-12 * scale) throw ConstraintError("traceless eigenvalues must sum to zero");
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(n * (n - 1) / 2));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const double s = mu[i] + mu[j];
      out.push_back((s * s + (n - 4) * mu[i] * mu[j]) / (n - 2) - normSq / ((n - 1.0) * (n - 2.0)));
    }
  return out;
}

LcfPattern lcf_classify(std::span<const double, 4> mu, double tol) {
  LcfPattern best;
  double bestResidual = std::numeric_limits<double>::infinity();
  for (int p = 0; p < 4; ++p) {
    double m = 0.0;
    for (int i = 0; i < 4; ++i)
      if (i != p) m += mu[i];
    m /= 3.0;
    double residual = std::abs(mu[p] + 3.0 * m);
    for (int i = 0; i < 4; ++i)
      if (i != p) residual = std::max(residual, std::abs(mu[i] - m));
    if (residual < bestResidual) {
      bestResidual = residual;
      best = LcfPattern{residual <= tol, m, p + 1};
    }
  }
  return best;
}

double distance_to_lcf_patterns(std::span<const double, 4> mu) {
  double best = std::numeric_limits<double>::infinity();
  const double norm = std::sqrt(12.0);
  for (int p = 0; p < 4; ++p) {
    std::array<double, 4> u{};
    for (int i = 0; i < 4; ++i) u[i] = (i == p ? -3.0 : 1.0) / norm;
    double dot = 0.0;
    for (int i = 0; i < 4; ++i) dot += mu[i] * u[i];
    double d2 = 0.0;
    for (int i = 0; i < 4; ++i) {
      const double r = mu[i] - dot * u[i];
      d2 += r * r;
    }
    best = std::min(best, std::sqrt(d2));
  }
  return best;
}

std::array<double, 4> pattern_mu(double m, int position) {
  if (position < 1 || position > 4) throw DomainError("pattern position must be 1..4");
  std::array<double, 4> mu{m, m, m, m};
  mu[position - 1] = -3.0 * m;
  return mu;
}

bool RotsymChain::exact_identity(double tol) const { return std::abs(q - qExact) <= tol * std::max(1.0, std::abs(q)); }

bool RotsymChain::displayed_identity(double tol) const {
  return std::abs(q - displayed) <= tol * std::max(1.0, std::abs(q));
}

RotsymChain rotsym_margin(const KappaPair& k, const TangentProjection& tp, double m, double H, int position) {
  if (!k.admissible_for_rotsym()) throw NotAdmissibleForRotsym("requires 0 <= kappa1 <= kappa2 <= 1");
  const auto mu = pattern_mu(m, position);
  const ShapeSpectrum spec = spectrum_from_mu(H, mu);
  const AmbientRestriction amb = warped_ambient(k, tp);

  RotsymChain c;
  c.q = q_direct(gauss_induced(amb, spec.shape_operator()));

  const double a2 = spec.aNormSq;
  const double H2 = H * H;
  const double d = k.kappa1 - k.kappa2;
  const double tau = tp.normSq;
  double weighted = 0.0;  // sum T_i^2 (mu_i - H)^2
  for (int i = 0; i < 4; ++i) weighted += tp.T[i] * tp.T[i] * (spec.frameMu[i] - H) * (spec.frameMu[i] - H);

  c.kappaBound = 3.0 * (k.kappa2 + H2) * (k.kappa2 + H2);
  c.unitBound = bare_bound(H);
  c.dropped = c.kappaBound + (-0.75 * a2 * a2 + 12.0 * H * spec.p3 - 6.0 * (k.kappa2 + 3.0 * H2) * a2) / 12.0;
  c.cubic = c.kappaBound +
            (-0.75 * a2 * a2 + 4.0 * std::numbers::sqrt3 * std::abs(H) * a2 * std::sqrt(a2) -
             6.0 * (k.kappa2 + 3.0 * H2) * a2) /
                12.0;
  c.displayed = c.dropped + 0.5 * d * ((6.0 + a2 + 4.0 * H2) * tau + 2.0 * weighted);
  c.qExact = c.dropped + 0.5 * d * ((6.0 * k.kappa2 - a2 + 4.0 * H2) * tau + 2.0 * weighted);
  c.mu4Residual = spec.p4 - 7.0 / 12.0 * a2 * a2;
  return c;
}

}  // namespace curvgauge
