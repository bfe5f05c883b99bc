#include "curvgauge/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <numbers>
#include <sstream>
#include <thread>

#include "curvgauge/checks.hpp"
#include "curvgauge/errors.hpp"

namespace curvgauge::cli {

using nlohmann::json;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::uint64_t default_seed() {
  const char* env = std::getenv(kSeedEnv);
  if (!env || !*env) return 42;
  try {
    std::size_t used = 0;
    const std::string s(env);
    if (s.front() == '-') throw std::invalid_argument("negative");
    const auto v = std::stoull(s, &used);
    if (used != s.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw UsageError(std::string(kSeedEnv) + " must be a non-negative integer");
  }
}

std::string fmt(double x) {
  std::ostringstream os;
  os << std::setprecision(6) << x;
  return os.str();
}

std::string summary_line(const CheckResult& c) {
  return std::string(c.pass ? "PASS " : "FAIL ") + c.name + " worst=" + fmt(c.worstResidual) +
         " tol=" + fmt(c.tolerance) + " n=" + std::to_string(c.samples);
}

json case_histogram(const SearchReport& r) {
  json h = json::object();
  for (int c = 0; c < 4; ++c) h[std::string(to_string(static_cast<CaseLabel>(c)))] = r.caseHistogram[c];
  return h;
}

void write_rows_csv(std::ostream& os, const std::vector<SampleRow>& rows) {
  os << "index,accepted,H,mu1,mu2,mu3,mu4,sigma,case,Q,bound,margin,weylNormSq\n";
  os << std::setprecision(17);
  for (const auto& r : rows) {
    os << r.index << ',' << (r.accepted ? 1 : 0) << ',' << r.H;
    for (double m : r.mu) os << ',' << m;
    os << ',' << r.sigma << ',' << (r.accepted ? to_string(r.label) : "") << ',' << r.q << ',' << r.bound << ','
       << r.margin << ',' << r.weylNormSq << '\n';
  }
}

void write_checks_csv(std::ostream& os, const json& checks) {
  os << "name,pass,worstResidual,tolerance,samples\n";
  os << std::setprecision(17);
  for (const auto& c : checks) {
    os << c.value("name", "") << ',' << (c.value("pass", false) ? 1 : 0) << ',';
    if (c.contains("worstResidual") && c["worstResidual"].is_number()) os << c["worstResidual"].get<double>();
    os << ',';
    if (c.contains("tolerance") && c["tolerance"].is_number()) os << c["tolerance"].get<double>();
    os << ',' << c.value("samples", std::uint64_t{0}) << '\n';
  }
}

/// Collected output of one command.
struct Outcome {
  json config = json::object();
  json results = json::object();
  std::vector<CheckResult> checks;
  std::vector<std::string> notes;
  std::vector<SampleRow> rows;
  bool csvRows = false;
};

struct Common {
  std::uint64_t seed = 42;
  std::string out;
  std::string format = "json";
};

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--seed", c.seed, "Random seed (default from " + std::string(kSeedEnv) + ", else 42)");
  sub->add_option("--out", c.out, "Write the report to this path instead of stdout");
  sub->add_option("--format", c.format, "Report format")->check(CLI::IsMember({"json", "csv"}));
}

Outcome run_identities(std::uint64_t samples, std::uint64_t seed) {
  Outcome o;
  o.config = {{"samples", samples}, {"seed", seed}};
  for (auto* suite : {&decomposition_checks, &power_sum_checks, &weyl_trace_checks, &proof_step_checks,
                      &orientation_checks}) {
    auto part = suite(samples, seed);
    o.checks.insert(o.checks.end(), part.begin(), part.end());
  }
  return o;
}

Outcome run_search(const SearchConfig& cfg) {
  Outcome o;
  o.config = {{"family", to_string(cfg.family)},
              {"samples", cfg.samples},
              {"restarts", cfg.restarts},
              {"seed", cfg.seed},
              {"lcfTol", cfg.lcfTol},
              {"penaltyWeight", cfg.penaltyWeight},
              {"hRange", {cfg.hMin, cfg.hMax}},
              {"bound", to_string(cfg.bound)},
              {"strict", cfg.strict},
              {"ascentIterations", cfg.ascentIterations},
              {"workers", cfg.workers}};
  json shards = json::array();
  for (int w = 0; w < cfg.workers; ++w)
    shards.push_back({cfg.samples * static_cast<std::uint64_t>(w) / cfg.workers,
                      cfg.samples * static_cast<std::uint64_t>(w + 1) / cfg.workers});
  o.config["shards"] = shards;

  const SearchReport rep = maximize_margin(cfg);
  o.results = {{"maxMargin", rep.argmax ? json(rep.maxMargin) : json(nullptr)},
               {"maxSampleMargin", rep.argmax ? json(rep.maxSampleMargin) : json(nullptr)},
               {"argmaxIndex", rep.argmaxIndex},
               {"argmaxFromAscent", rep.argmaxFromAscent},
               {"caseHistogram", case_histogram(rep)},
               {"rejected", rep.rejected},
               {"samples", rep.samples},
               {"restartsRun", rep.restartsRun},
               {"maxWeylNormSq", rep.maxWeylNormSq},
               {"epsilonRegime",
                {{"threshold", rep.epsilonRegime.threshold},
                 {"samples", rep.epsilonRegime.samples},
                 {"maxBareMargin",
                  rep.epsilonRegime.samples ? json(rep.epsilonRegime.maxBareMargin) : json(nullptr)}}}};
  o.checks = search_checks(cfg, rep);
  o.rows = rep.rows;
  if (rep.argmax && rep.maxMargin > 1e-8) o.notes.push_back("positive margin found; witness in search-max-margin");
  else o.notes.push_back("no violation found at this budget");
  return o;
}

Outcome run_epsilon0() {
  Outcome o;
  const Epsilon0 e = epsilon0_threshold();
  o.results = {{"root", e.root},
               {"closedForm", e.closedForm},
               {"publishedValue", e.publishedValue},
               {"publishedToDerivedRatio", e.publishedValue / e.root},
               {"iterations", e.iterations}};
  o.checks = epsilon0_checks(e);
  std::ostringstream line;
  line << std::setprecision(10) << "epsilon0 derived=" << e.root << " published=" << e.publishedValue
       << " (published value is sqrt(46) times the derived root)";
  o.notes.push_back(line.str());
  return o;
}

Outcome run_slice(const std::string& phi, double t, std::uint64_t mcSamples, std::uint64_t seed) {
  Outcome o;
  const WarpedPreset preset = WarpedPreset::parse(phi);
  const SliceGeometry s = slice_hypersurface(preset, t);
  const IntegralReport r = integrate_slice(s, mcSamples, seed);
  o.config = {{"phi", preset.name()}, {"t", t}, {"mcSamples", mcSamples}, {"seed", seed}};
  o.results = {{"phi", s.phiVal},
               {"phiDot", s.phiDotVal},
               {"H", s.H},
               {"intrinsicSec", s.intrinsicSec},
               {"volume", s.volume},
               {"kappa1", s.kappa.kappa1},
               {"kappa2", s.kappa.kappa2},
               {"gbcIntegral", r.gbcIntegral},
               {"eulerNumber", r.eulerNumber},
               {"volumeFunctional", r.volumeFunctional},
               {"rhs", r.rhs},
               {"slack", r.slack}};
  if (r.monteCarlo)
    o.results["monteCarlo"] = {
        {"estimate", r.mc.estimate}, {"stdError", r.mc.stdError}, {"samples", r.mc.samples}, {"seed", r.mc.seed}};
  o.checks = slice_checks(s, r);
  std::ostringstream line;
  line << std::setprecision(8) << "slice volumeFunctional=" << r.volumeFunctional << " slack=" << r.slack
       << " chi=" << r.eulerNumber;
  o.notes.push_back(line.str());
  return o;
}

int emit(const std::string& command, const Outcome& o, const Common& common, double wallTime, std::ostream& out,
         std::ostream& log) {
  std::size_t passed = 0;
  for (const auto& c : o.checks) passed += c.pass ? 1 : 0;
  const bool allPass = passed == o.checks.size();

  std::ofstream file;
  if (!common.out.empty()) {
    file.open(common.out, std::ios::binary);
    if (!file) {
      log << "error: cannot open '" << common.out << "' for writing\n";
      return kIo;
    }
  }
  std::ostream& dest = common.out.empty() ? out : static_cast<std::ostream&>(file);
  std::ostream& lines = common.out.empty() ? log : out;

  json checks = json::array();
  for (const auto& c : o.checks) checks.push_back(to_json(c));

  if (common.format == "csv") {
    if (o.csvRows) write_rows_csv(dest, o.rows);
    else write_checks_csv(dest, checks);
  } else {
    json report = {{"tool", "curvgauge"},
                   {"toolVersion", kToolVersion},
                   {"command", command},
                   {"config", o.config},
                   {"rng", kRngName},
                   {"checks", checks},
                   {"results", o.results},
                   {"summary", {{"checks", o.checks.size()}, {"passed", passed}, {"failed", o.checks.size() - passed}}},
                   {"wallTime", wallTime}};
    dest << report.dump(2) << '\n';
  }
  dest.flush();
  if (!dest) {
    log << "error: failed writing the report\n";
    return kIo;
  }

  for (const auto& c : o.checks) lines << summary_line(c) << '\n';
  for (const auto& n : o.notes) lines << n << '\n';
  return allPass ? kOk : kCheckFailed;
}

int run_report(const std::string& in, const Common& common, std::ostream& out, std::ostream& log) {
  std::ifstream f(in, std::ios::binary);
  if (!f) {
    log << "error: cannot read '" << in << "'\n";
    return kIo;
  }
  json report;
  try {
    f >> report;
  } catch (const json::exception& e) {
    log << "error: '" << in << "' is not a JSON report: " << e.what() << '\n';
    return kIo;
  }
  if (!report.is_object() || !report.contains("checks") || !report["checks"].is_array()) {
    log << "error: '" << in << "' has no checks array\n";
    return kIo;
  }
  std::ofstream file;
  if (!common.out.empty()) {
    file.open(common.out, std::ios::binary);
    if (!file) {
      log << "error: cannot open '" << common.out << "' for writing\n";
      return kIo;
    }
  }
  std::ostream& dest = common.out.empty() ? out : static_cast<std::ostream&>(file);
  if (common.format == "csv") write_checks_csv(dest, report["checks"]);
  else dest << report.dump(2) << '\n';
  return dest ? kOk : kIo;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& log) {
  CLI::App app{"Curvature identity checks and bound-falsification searches", "curvgauge"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);

  Common common;
  try {
    common.seed = default_seed();
  } catch (const UsageError& e) {
    log << "error: " << e.what() << '\n';
    return kUsage;
  }

  std::uint64_t samples = 10000;
  const auto samplesOpt = [&](CLI::App* sub) {
    sub->add_option("--samples", samples, "Number of samples")->check(CLI::PositiveNumber);
  };

  auto* identities = app.add_subcommand("identities", "Decomposition, power-sum, Weyl-trace and proof-step suites");
  samplesOpt(identities);
  add_common(identities, common);

  SearchConfig search;
  std::string family = "warped";
  std::string bound = "claim";
  double hMax = 2.0;
  std::optional<double> hMin;
  auto* claimSearch = app.add_subcommand("claim-search", "Search admissible data for a positive margin");
  claimSearch->add_option("--family", family, "Sample family")->check(CLI::IsMember({"warped", "general"}));
  samplesOpt(claimSearch);
  claimSearch->add_option("--h-max", hMax, "Upper end of the H range")->check(CLI::NonNegativeNumber);
  claimSearch->add_option("--h-min", hMin, "Lower end of the H range (default -h-max)");
  claimSearch->add_option("--restarts", search.restarts, "Local ascent restarts")->check(CLI::NonNegativeNumber);
  claimSearch->add_option("--lcf-tol", search.lcfTol, "Weyl norm gate")->check(CLI::PositiveNumber);
  claimSearch->add_option("--penalty", search.penaltyWeight, "Penalty weight for infeasible ascent points");
  claimSearch->add_option("--ascent-iterations", search.ascentIterations, "Simplex iterations per restart")
      ->check(CLI::NonNegativeNumber);
  claimSearch->add_flag("--strict", search.strict, "General family: enforce the full Weyl tensor");
  claimSearch->add_option("--bound", bound, "Bound under test")->check(CLI::IsMember({"claim", "bare"}));
  claimSearch->add_option("--workers", search.workers, "Worker threads (0 = hardware concurrency)")
      ->check(CLI::NonNegativeNumber);
  add_common(claimSearch, common);

  auto* eps = app.add_subcommand("epsilon0", "Small-|H| threshold by bisection");
  add_common(eps, common);

  double rotsymHMax = 3.0;
  auto* rotsym = app.add_subcommand("rotsym", "Estimate chain for rotationally symmetric ambients");
  samplesOpt(rotsym);
  rotsym->add_option("--h-max", rotsymHMax, "Range for H and m")->check(CLI::PositiveNumber);
  add_common(rotsym, common);

  auto* lemma = app.add_subcommand("lemma", "Two-eigenvalue characterization of conformal flatness");
  samplesOpt(lemma);
  add_common(lemma, common);

  std::string phi;
  double t = 0.0;
  std::uint64_t mcSamples = 0;
  auto* slice = app.add_subcommand("slice", "Integrals over a slice {t = const}");
  slice->add_option("--phi", phi, "sin | const1 | cosh | poly:c0,c1,...")->required();
  slice->add_option("--t", t, "Slice parameter")->required();
  slice->add_option("--mc-samples", mcSamples, "Monte Carlo samples (0 = off)");
  add_common(slice, common);

  std::string in;
  auto* report = app.add_subcommand("report", "Re-emit a saved report");
  report->add_option("--in", in, "Report path")->required();
  report->add_option("--out", common.out, "Output path");
  report->add_option("--format", common.format, "Output format")->check(CLI::IsMember({"json", "csv"}));

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::Success& e) {
    app.exit(e, out, log);
    return kOk;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, log);
    return kUsage;
  }

  const auto t0 = std::chrono::steady_clock::now();
  const auto elapsed = [&] { return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count(); };

  try {
    if (*report) return run_report(in, common, out, log);
    if (*identities) return emit("identities", run_identities(samples, common.seed), common, elapsed(), out, log);
    if (*claimSearch) {
      search.family = parse_family(family);
      search.samples = samples;
      search.seed = common.seed;
      search.hMax = hMax;
      search.hMin = hMin.value_or(-hMax);
      if (search.hMin > search.hMax) throw UsageError("--h-min exceeds --h-max");
      search.bound = bound == "bare" ? BoundMode::Bare : BoundMode::Claim;
      if (search.workers == 0) search.workers = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
      search.keepRows = common.format == "csv";
      Outcome o = run_search(search);
      o.csvRows = true;
      return emit("claim-search", o, common, elapsed(), out, log);
    }
    if (*eps) return emit("epsilon0", run_epsilon0(), common, elapsed(), out, log);
    if (*rotsym) {
      Outcome o;
      o.config = {{"samples", samples}, {"seed", common.seed}, {"hMax", rotsymHMax}};
      o.checks = rotsym_checks(samples, common.seed, rotsymHMax);
      return emit("rotsym", o, common, elapsed(), out, log);
    }
    if (*lemma) {
      Outcome o;
      o.config = {{"samples", samples}, {"seed", common.seed}};
      o.checks = lemma_checks(samples, common.seed);
      return emit("lemma", o, common, elapsed(), out, log);
    }
    if (*slice) return emit("slice", run_slice(phi, t, mcSamples, common.seed), common, elapsed(), out, log);
  } catch (const UsageError& e) {
    log << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const DomainError& e) {
    log << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

}  // namespace curvgauge::cli
