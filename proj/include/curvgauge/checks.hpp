#pragma once

// Seeded numerical check suites. Each check records the worst residual seen
// and, on failure, the first offending sample.

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include <json.hpp>

#include "curvgauge/search.hpp"
#include "curvgauge/slice.hpp"

namespace curvgauge {

struct CheckResult {
  std::string name;
  bool pass = true;
  double worstResidual = 0.0;  ///< largest violation (or |error|) observed
  double tolerance = 0.0;
  std::uint64_t samples = 0;
  nlohmann::json witness = nlohmann::json::object();
};

/// Accumulates a check over many samples.
class CheckAccumulator {
 public:
  CheckAccumulator(std::string name, double tolerance)
      : result_{std::move(name), true, -std::numeric_limits<double>::infinity(), tolerance, 0,
                nlohmann::json::object()} {}

  /// Records a residual; the sample fails when residual > tolerance. `witness`
  /// is only built for the first failure (and for the worst sample).
  template <class WitnessFn>
  void record(double residual, WitnessFn&& witness) {
    ++result_.samples;
    const bool failed = !(residual <= result_.tolerance);
    if (failed && result_.pass) {
      result_.pass = false;
      result_.witness = witness();
    }
    if (!(residual <= result_.worstResidual)) {
      result_.worstResidual = residual;
      if (result_.pass) result_.witness = witness();
    }
  }

  void record(double residual) {
    record(residual, [] { return nlohmann::json::object(); });
  }

  CheckResult result() const {
    CheckResult r = result_;
    if (r.samples == 0) r.worstResidual = 0.0;
    return r;
  }

 private:
  CheckResult result_;
};

/// Random algebraic curvature tensor of any sign pattern (not admissible in general).
CurvatureTensor random_curvature_tensor(Sampler& rng, int dim = 4);

/// Random principal curvatures with a random overall scale.
std::array<double, 4> random_lambda(Sampler& rng);

/// Random traceless quadruple.
std::array<double, 4> random_traceless(Sampler& rng);

/// q_decomposed against q_direct of the Gauss-induced tensor.
std::vector<CheckResult> decomposition_checks(std::uint64_t samples, std::uint64_t seed);

/// Power-sum identities, the cubic bound and its equality pattern.
std::vector<CheckResult> power_sum_checks(std::uint64_t samples, std::uint64_t seed);

/// trace E = 0, total trace-freeness of W, |Ric|^2 = |E|^2 + S^2/dim.
std::vector<CheckResult> weyl_trace_checks(std::uint64_t samples, std::uint64_t seed);

/// Inequalities used in the proof, on admissible ambients.
std::vector<CheckResult> proof_step_checks(std::uint64_t samples, std::uint64_t seed);

/// Margin invariance and case equivariance under (H, mu) -> (-H, -mu).
std::vector<CheckResult> orientation_checks(std::uint64_t samples, std::uint64_t seed);

/// Chain of estimates for rotationally symmetric ambients, one check per link.
std::vector<CheckResult> rotsym_checks(std::uint64_t samples, std::uint64_t seed, double hMax = 3.0);

/// Two-eigenvalue characterization of locally conformally flat hypersurfaces.
std::vector<CheckResult> lemma_checks(std::uint64_t samples, std::uint64_t seed);

/// Slice integrals; Monte Carlo when mcSamples > 0.
std::vector<CheckResult> slice_checks(const SliceGeometry& slice, const IntegralReport& report);

/// Root of the small-|H| threshold and its closed form.
std::vector<CheckResult> epsilon0_checks(const Epsilon0& e);

/// Margin checks of a finished search.
std::vector<CheckResult> search_checks(const SearchConfig& config, const SearchReport& report);

nlohmann::json to_json(const CheckResult& c);
nlohmann::json to_json(const MarginReport& m);

}  // namespace curvgauge
