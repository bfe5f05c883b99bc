#include "curvgauge/search.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>
#include <thread>

#include "curvgauge/errors.hpp"
#include "curvgauge/rng.hpp"

namespace curvgauge {

std::string to_string(Family f) { return f == Family::Warped ? "warped" : "general"; }
std::string to_string(BoundMode b) { return b == BoundMode::Claim ? "claim" : "bare"; }

Family parse_family(const std::string& s) {
  if (s == "warped") return Family::Warped;
  if (s == "general") return Family::General;
  throw DomainError("unknown search family '" + s + "'");
}

namespace {

constexpr std::array<std::array<int, 2>, 6> kPlanes{{{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};

double bound_for(BoundMode mode, double H) { return mode == BoundMode::Claim ? claim_bound(H).bound : bare_bound(H); }

double m_lo(const SearchConfig& c) { return c.mMin.value_or(c.hMin); }
double m_hi(const SearchConfig& c) { return c.mMax.value_or(c.hMax); }

// d W(p,q,p,q) / d(sectional shift on plane (i,j)) for the induced metric.
const Eigen::Matrix<double, 6, 6>& principal_weyl_pinv() {
  static const Eigen::Matrix<double, 6, 6> pinv = [] {
    Eigen::Matrix<double, 6, 6> J;
    for (int r = 0; r < 6; ++r)
      for (int c = 0; c < 6; ++c) {
        const auto [p, q] = kPlanes[r];
        const auto [i, j] = kPlanes[c];
        const double same = (r == c) ? 1.0 : 0.0;
        const double pIn = (p == i || p == j) ? 1.0 : 0.0;
        const double qIn = (q == i || q == j) ? 1.0 : 0.0;
        J(r, c) = same - 0.5 * (pIn + qIn) + 2.0 / 6.0;
      }
    return Eigen::Matrix<double, 6, 6>(J.completeOrthogonalDecomposition().pseudoInverse());
  }();
  return pinv;
}

CurvatureTensor clamp_sectionals(CurvatureTensor r) {
  for (const auto& [i, j] : kPlanes) {
    const double s = r.coordinate_sectional(i, j);
    const double c = std::clamp(s, 0.0, 1.0);
    if (c != s) r.add_plane_term(i, j, c - s);
  }
  return r;
}

std::array<double, 4> random_traceless_direction(Sampler& rng) {
  std::array<double, 4> v{};
  double n = 0.0;
  do {
    v = rng.normal_vector<4>();
    const double mean = (v[0] + v[1] + v[2] + v[3]) / 4.0;
    n = 0.0;
    for (double& x : v) {
      x -= mean;
      n += x * x;
    }
  } while (n < 1e-24);
  n = std::sqrt(n);
  for (double& x : v) x /= n;
  return v;
}

std::array<double, 4> make_traceless(std::array<double, 4> mu) {
  const double mean = (mu[0] + mu[1] + mu[2] + mu[3]) / 4.0;
  for (double& x : mu) x -= mean;
  return mu;
}

SamplePoint sample_warped(const SearchConfig& cfg, Sampler& rng) {
  WarpedParams p;
  p.kappa1 = rng.uniform();
  p.kappa2 = rng.uniform();
  if (p.kappa1 > p.kappa2) std::swap(p.kappa1, p.kappa2);
  const auto dir = rng.normal_vector<4>();
  double n = 0.0;
  for (double x : dir) n += x * x;
  n = std::sqrt(n);
  // Uniform in the unit 4-ball.
  const double radius = std::pow(rng.uniform(), 0.25);
  for (int i = 0; i < 4; ++i) p.T[i] = n > 0.0 ? dir[i] / n * radius : 0.0;
  p.m = rng.uniform(m_lo(cfg), m_hi(cfg));
  p.H = rng.uniform(cfg.hMin, cfg.hMax);
  p.position = 1 + static_cast<int>(rng.below(4));
  return warped_point(p);
}

}  // namespace

CurvatureTensor random_ambient_tensor(Sampler& rng) {
  CurvatureTensor r = constant_curvature(4, rng.uniform());
  for (int k = 0; k < 3; ++k) {
    const auto u = rng.normal_vector<4>();
    const auto v = rng.normal_vector<4>();
    r = r + rng.uniform() * decomposable_square(u, v);
  }
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  for (const auto& [i, j] : kPlanes) {
    lo = std::min(lo, r.coordinate_sectional(i, j));
    hi = std::max(hi, r.coordinate_sectional(i, j));
  }
  const double targetLo = rng.uniform();
  const double targetHi = rng.uniform(targetLo, 1.0);
  if (hi - lo < 1e-12) return constant_curvature(4, targetLo);
  const double scale = (targetHi - targetLo) / (hi - lo);
  return (r - constant_curvature(4, lo)) * scale + constant_curvature(4, targetLo);
}

namespace {

SamplePoint sample_general(const SearchConfig& cfg, Sampler& rng) {
  const CurvatureTensor base = random_ambient_tensor(rng);
  const double H = rng.uniform(cfg.hMin, cfg.hMax);
  std::array<double, 4> mu{};
  if (rng.uniform() < 0.5) {
    // Free traceless spectrum.
    const double reach = 2.0 * std::sqrt(12.0 + 24.0 * H * H);
    const auto dir = random_traceless_direction(rng);
    const double r = rng.uniform(0.0, reach);
    for (int i = 0; i < 4; ++i) mu[i] = r * dir[i];
  } else {
    // Near a two-eigenvalue pattern, where the ambient can absorb the induced Weyl part.
    const double m = rng.uniform(m_lo(cfg), m_hi(cfg));
    mu = pattern_mu(m, 1 + static_cast<int>(rng.below(4)));
    const auto dir = random_traceless_direction(rng);
    const double eps = rng.uniform(0.0, 1.0 / (1.0 + std::abs(m)));
    for (int i = 0; i < 4; ++i) mu[i] += eps * dir[i];
  }
  mu = make_traceless(mu);
  SamplePoint s;
  s.spectrum = spectrum_from_mu(H, mu);
  s.drawn = make_ambient_restriction(base);
  s.ambient = project_lcf(s.drawn, s.spectrum, cfg.strict);
  s.admissible = s.ambient.admissible();
  return s;
}

}  // namespace

SamplePoint warped_point(const WarpedParams& p) {
  SamplePoint s;
  s.warped = p;
  s.spectrum = spectrum_from_mu(p.H, pattern_mu(p.m, p.position));
  s.ambient = warped_ambient(KappaPair{p.kappa1, p.kappa2}, make_tangent_projection(p.T));
  s.drawn = s.ambient;
  s.admissible = s.ambient.admissible();
  return s;
}

AmbientRestriction project_lcf(const AmbientRestriction& ambient, const ShapeSpectrum& spec, bool strict) {
  const ShapeOperator shape = spec.shape_operator();
  CurvatureTensor r = ambient.comp;
  if (strict) {
    // Weyl is a linear projection, so one subtraction is exact up to rounding.
    for (int pass = 0; pass < 2; ++pass) r = r - weyl_tensor(gauss_induced(make_ambient_restriction(r), shape));
    return make_ambient_restriction(r);
  }
  const auto& pinv = principal_weyl_pinv();
  for (int pass = 0; pass < 2; ++pass) {
    const auto w = principal_weyl(gauss_induced(make_ambient_restriction(r), shape));
    Eigen::Matrix<double, 6, 1> wv;
    for (int k = 0; k < 6; ++k) wv(k) = w[k];
    const Eigen::Matrix<double, 6, 1> delta = -pinv * wv;
    for (int k = 0; k < 6; ++k) r.add_plane_term(kPlanes[k][0], kPlanes[k][1], delta(k));
  }
  return make_ambient_restriction(r);
}

SamplePoint sample_point(const SearchConfig& config, std::uint64_t index) {
  Sampler rng(config.seed, index);
  return config.family == Family::Warped ? sample_warped(config, rng) : sample_general(config, rng);
}

SamplePoint sample_point(Family family, std::uint64_t seed, std::uint64_t index) {
  SearchConfig cfg;
  cfg.family = family;
  cfg.seed = seed;
  return sample_point(cfg, index);
}

SimplexResult nelder_mead_maximize(const std::function<double(const std::vector<double>&)>& f,
                                   const std::vector<double>& x0, const std::vector<double>& step, int maxIterations) {
  const std::size_t n = x0.size();
  std::vector<std::vector<double>> pts(n + 1, x0);
  for (std::size_t i = 0; i < n; ++i) pts[i + 1][i] += step[i];
  std::vector<double> vals(n + 1);
  for (std::size_t i = 0; i <= n; ++i) vals[i] = f(pts[i]);

  std::vector<std::size_t> order(n + 1);
  const auto lerp = [&](const std::vector<double>& c, const std::vector<double>& w, double t) {
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = c[i] + t * (w[i] - c[i]);
    return out;
  };

  int it = 0;
  for (; it < maxIterations; ++it) {
    for (std::size_t i = 0; i <= n; ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return vals[a] > vals[b]; });
    const std::size_t best = order.front(), worst = order.back(), second = order[n - 1];
    if (std::abs(vals[best] - vals[worst]) <= 1e-15 * (1.0 + std::abs(vals[best]))) break;

    std::vector<double> centroid(n, 0.0);
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t i = 0; i < n; ++i) centroid[i] += pts[order[k]][i] / static_cast<double>(n);

    const auto reflected = lerp(centroid, pts[worst], -1.0);
    const double fr = f(reflected);
    if (fr > vals[best]) {
      const auto expanded = lerp(centroid, pts[worst], -2.0);
      const double fe = f(expanded);
      if (fe > fr) {
        pts[worst] = expanded;
        vals[worst] = fe;
      } else {
        pts[worst] = reflected;
        vals[worst] = fr;
      }
      continue;
    }
    if (fr > vals[second]) {
      pts[worst] = reflected;
      vals[worst] = fr;
      continue;
    }
    const bool outside = fr > vals[worst];
    const auto contracted = lerp(centroid, outside ? reflected : pts[worst], 0.5);
    const double fc = f(contracted);
    if (fc > std::max(fr, vals[worst])) {
      pts[worst] = contracted;
      vals[worst] = fc;
      continue;
    }
    for (std::size_t k = 1; k <= n; ++k) {
      const std::size_t idx = order[k];
      pts[idx] = lerp(pts[best], pts[idx], 0.5);
      vals[idx] = f(pts[idx]);
    }
  }
  const auto bestIt = std::max_element(vals.begin(), vals.end());
  const auto bi = static_cast<std::size_t>(bestIt - vals.begin());
  return SimplexResult{pts[bi], vals[bi], it};
}

namespace {

struct Candidate {
  double margin;
  std::uint64_t index;
};

bool better(const Candidate& a, const Candidate& b) {
  return a.margin > b.margin || (a.margin == b.margin && a.index < b.index);
}

struct Partial {
  std::array<std::uint64_t, 4> hist{};
  std::uint64_t rejected = 0;
  std::vector<Candidate> candidates;
  double maxWeyl = 0.0;
  std::uint64_t epsSamples = 0;
  double epsMax = -std::numeric_limits<double>::infinity();
  std::vector<SampleRow> rows;
};

double gate_value(const SearchConfig& cfg, const MarginReport& r) {
  const bool full = cfg.family == Family::Warped || cfg.strict;
  return full ? r.weylNormSq : r.principalWeylNormSq;
}

void evaluate_shard(const SearchConfig& cfg, std::uint64_t begin, std::uint64_t end, double eps0, Partial& out) {
  for (std::uint64_t idx = begin; idx < end; ++idx) {
    const SamplePoint s = sample_point(cfg, idx);
    SampleRow row;
    row.index = idx;
    if (!s.admissible) {
      ++out.rejected;
      if (cfg.keepRows) {
        row.H = s.spectrum.H;
        row.mu = s.spectrum.mu;
        row.sigma = s.ambient.sigma;
        out.rows.push_back(row);
      }
      continue;
    }
    MarginReport r = evaluate_margin(s.ambient, s.spectrum);
    r.bound = bound_for(cfg.bound, r.H);
    r.margin = r.q - r.bound;
    out.maxWeyl = std::max(out.maxWeyl, r.weylNormSq);
    const bool lcf = gate_value(cfg, r) <= cfg.lcfTol;
    if (cfg.keepRows) {
      row.accepted = lcf;
      row.H = r.H;
      row.mu = s.spectrum.mu;
      row.sigma = s.ambient.sigma;
      row.label = r.label;
      row.q = r.q;
      row.bound = r.bound;
      row.margin = r.margin;
      row.weylNormSq = r.weylNormSq;
      out.rows.push_back(row);
    }
    if (!lcf) {
      ++out.rejected;
      continue;
    }
    ++out.hist[static_cast<int>(r.label)];
    out.candidates.push_back({r.margin, idx});
    if (std::abs(r.H) <= eps0) {
      ++out.epsSamples;
      out.epsMax = std::max(out.epsMax, r.q - bare_bound(r.H));
    }
  }
}

struct AscentOutcome {
  bool found = false;
  double margin = -std::numeric_limits<double>::infinity();
  MarginReport report;
};

// Feasible evaluation of one ascent point, or nullopt with a violation measure.
struct Evaluated {
  std::optional<MarginReport> report;
  double violation = 0.0;
  double rawMargin = 0.0;
};

AscentOutcome ascend(const SearchConfig& cfg, const SamplePoint& start) {
  AscentOutcome best;
  std::function<Evaluated(const std::vector<double>&)> evaluate;
  std::vector<double> x0, step;

  if (cfg.family == Family::Warped) {
    const WarpedParams p0 = start.warped;
    x0 = {p0.kappa1, p0.kappa2, p0.T[0], p0.T[1], p0.T[2], p0.T[3], p0.m, p0.H};
    step = {0.05, 0.05, 0.05, 0.05, 0.05, 0.05, 0.05 * (1.0 + std::abs(p0.m)), 0.05 * (1.0 + std::abs(p0.H))};
    evaluate = [&cfg, p0](const std::vector<double>& x) {
      WarpedParams p = p0;
      p.kappa1 = std::clamp(x[0], 0.0, 1.0);
      p.kappa2 = std::clamp(x[1], 0.0, 1.0);
      if (p.kappa1 > p.kappa2) std::swap(p.kappa1, p.kappa2);
      double n = 0.0;
      for (int i = 0; i < 4; ++i) n += x[2 + i] * x[2 + i];
      n = std::sqrt(n);
      for (int i = 0; i < 4; ++i) p.T[i] = n > 1.0 ? x[2 + i] / n : x[2 + i];
      p.m = std::clamp(x[6], m_lo(cfg), m_hi(cfg));
      p.H = std::clamp(x[7], cfg.hMin, cfg.hMax);
      const SamplePoint s = warped_point(p);
      Evaluated e;
      MarginReport r = evaluate_margin(s.ambient, s.spectrum);
      r.bound = bound_for(cfg.bound, r.H);
      r.margin = r.q - r.bound;
      e.rawMargin = r.margin;
      e.violation = s.ambient.sectional_violation();
      if (e.violation <= 1e-12 && r.weylNormSq <= cfg.lcfTol) e.report = r;
      return e;
    };
  } else {
    const CurvatureTensor base = start.ambient.comp;
    const auto& mu = start.spectrum.frameMu;
    x0 = {0, 0, 0, 0, 0, 0, mu[0], mu[1], mu[2], start.spectrum.H};
    const double ms = 0.05 * (1.0 + std::sqrt(start.spectrum.aNormSq));
    step = {0.05, 0.05, 0.05, 0.05, 0.05, 0.05, ms, ms, ms, 0.05 * (1.0 + std::abs(start.spectrum.H))};
    evaluate = [&cfg, base](const std::vector<double>& x) {
      CurvatureTensor r = base;
      for (int k = 0; k < 6; ++k) r.add_plane_term(kPlanes[k][0], kPlanes[k][1], x[k]);
      r = clamp_sectionals(r);
      const double H = std::clamp(x[9], cfg.hMin, cfg.hMax);
      const ShapeSpectrum spec = spectrum_from_mu(H, {x[6], x[7], x[8], -(x[6] + x[7] + x[8])});
      const AmbientRestriction amb = project_lcf(make_ambient_restriction(r), spec, cfg.strict);
      Evaluated e;
      MarginReport rep = evaluate_margin(amb, spec);
      rep.bound = bound_for(cfg.bound, rep.H);
      rep.margin = rep.q - rep.bound;
      e.rawMargin = rep.margin;
      e.violation = amb.sectional_violation();
      if (e.violation <= 1e-12 && gate_value(cfg, rep) <= cfg.lcfTol) e.report = rep;
      return e;
    };
  }

  const auto objective = [&](const std::vector<double>& x) {
    const Evaluated e = evaluate(x);
    if (e.report) {
      if (!best.found || e.report->margin > best.margin) {
        best.found = true;
        best.margin = e.report->margin;
        best.report = *e.report;
      }
      return e.report->margin;
    }
    return e.rawMargin - cfg.penaltyWeight * std::max(e.violation, 1e-6);
  };
  nelder_mead_maximize(objective, x0, step, cfg.ascentIterations);
  return best;
}

}  // namespace

SearchReport maximize_margin(const SearchConfig& config) {
  const auto t0 = std::chrono::steady_clock::now();
  SearchReport rep;
  rep.samples = config.samples;
  rep.seed = config.seed;
  rep.epsilonRegime.threshold = epsilon0_threshold().root;

  const int workers = std::max(1, config.workers);
  std::vector<Partial> parts(static_cast<std::size_t>(workers));
  {
    std::vector<std::jthread> pool;
    for (int w = 0; w < workers; ++w) {
      const std::uint64_t begin = config.samples * static_cast<std::uint64_t>(w) / workers;
      const std::uint64_t end = config.samples * static_cast<std::uint64_t>(w + 1) / workers;
      pool.emplace_back([&, w, begin, end] { evaluate_shard(config, begin, end, rep.epsilonRegime.threshold, parts[w]); });
    }
  }

  std::vector<Candidate> candidates;
  for (auto& p : parts) {
    for (int c = 0; c < 4; ++c) rep.caseHistogram[c] += p.hist[c];
    rep.rejected += p.rejected;
    rep.maxWeylNormSq = std::max(rep.maxWeylNormSq, p.maxWeyl);
    rep.epsilonRegime.samples += p.epsSamples;
    rep.epsilonRegime.maxBareMargin = std::max(rep.epsilonRegime.maxBareMargin, p.epsMax);
    candidates.insert(candidates.end(), p.candidates.begin(), p.candidates.end());
    if (config.keepRows) rep.rows.insert(rep.rows.end(), p.rows.begin(), p.rows.end());
  }

  const std::size_t k = std::min<std::size_t>(candidates.size(), static_cast<std::size_t>(std::max(config.restarts, 0)));
  const std::size_t top = std::max<std::size_t>(k, candidates.empty() ? 0 : 1);
  std::partial_sort(candidates.begin(), candidates.begin() + static_cast<std::ptrdiff_t>(top), candidates.end(), better);

  if (!candidates.empty()) {
    const Candidate& c = candidates.front();
    const SamplePoint s = sample_point(config, c.index);
    MarginReport r = evaluate_margin(s.ambient, s.spectrum);
    r.bound = bound_for(config.bound, r.H);
    r.margin = r.q - r.bound;
    rep.maxMargin = r.margin;
    rep.maxSampleMargin = r.margin;
    rep.argmax = r;
    rep.argmaxIndex = c.index;
  }

  std::vector<AscentOutcome> outcomes(k);
  {
    std::vector<std::jthread> pool;
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (std::size_t r = static_cast<std::size_t>(w); r < k; r += static_cast<std::size_t>(workers)) {
          outcomes[r] = ascend(config, sample_point(config, candidates[r].index));
        }
      });
    }
  }
  rep.restartsRun = static_cast<int>(k);
  for (std::size_t r = 0; r < k; ++r) {
    if (outcomes[r].found && outcomes[r].margin > rep.maxMargin) {
      rep.maxMargin = outcomes[r].margin;
      rep.argmax = outcomes[r].report;
      rep.argmaxIndex = config.samples + r;
      rep.argmaxFromAscent = true;
    }
  }

  rep.wallTime = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

double epsilon0_gap(double h) { return std::sqrt(12.0 + 24.0 * h * h) - f_profile(0.0, h).eta2; }

Epsilon0 epsilon0_threshold() {
  Epsilon0 e;
  e.gAtZero = epsilon0_gap(0.0);
  double lo = 0.0, hi = 1.0;
  while (hi - lo > 1e-15 && e.iterations < 200) {
    const double mid = 0.5 * (lo + hi);
    (epsilon0_gap(mid) > 0.0 ? lo : hi) = mid;
    ++e.iterations;
  }
  e.root = 0.5 * (lo + hi);
  const double s3 = std::numbers::sqrt3;
  e.closedForm = std::sqrt((8.0 * s3 - 13.0) / 46.0);
  e.publishedValue = std::sqrt((368.0 * s3 - 598.0) / 46.0);
  return e;
}

}  // namespace curvgauge
