#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "slemma/errors.h"
#include "slemma/image_analysis.h"
#include "slemma/problem_file.h"
#include "slemma/report_json.h"
#include "slemma/s_lemma.h"
#include "slemma/svg_plot.h"
#include "slemma/switched_systems.h"

namespace slemma {
namespace {

enum ExitCode { kSuccess = 0, kNegative = 1, kUsage = 2, kVerification = 3 };

struct Flags {
  std::string command;
  std::string problem;
  int samples{0};
  uint64_t seed{kDefaultSeed};
  double threshold{1e-8};
  double grid_step{0.01};
  std::string out_dir;
  std::string format{"json"};
  std::string f;
  std::string g;
  std::string system;
  std::string lyapunov;
  std::string z1;
  std::string z2;
  int steps{256};
  int trials{256};
  std::string x0;
  double dt{1e-3};
  double t_end{10.0};
  double dwell{0.0};
  std::string lambda;
  bool strict{false};
};

struct Output {
  int code{kSuccess};
  Json result;
  std::optional<std::string> csv;
  std::optional<std::string> svg;
  std::string summary;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::vector<double> ParseList(const std::string& text, const std::string& flag) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument("");
    } catch (const std::exception&) {
      throw UsageError(flag + ": cannot parse \"" + item + "\" as a number");
    }
  }
  if (out.empty()) throw UsageError(flag + ": expected comma-separated numbers");
  return out;
}

Eigen::VectorXd PointFlag(const std::string& text, const std::optional<Eigen::VectorXd>& fallback,
                          int n, const std::string& flag) {
  if (text.empty()) {
    if (!fallback) throw UsageError(flag + " is required for this problem");
    return *fallback;
  }
  const std::vector<double> v = ParseList(text, flag);
  if (static_cast<int>(v.size()) != n) {
    throw UsageError(flag + ": expected " + std::to_string(n) + " coordinates");
  }
  return Eigen::Map<const Eigen::VectorXd>(v.data(), n);
}

GeneralizedPolynomial FunctionFlag(const ProblemFile& p, const std::string& text) {
  if (!text.empty() && text.front() == '[') return ParsePolynomialLiteral(text, p.dim());
  return p.function(text);
}

struct Pair {
  std::string f_name;
  std::string g_name;
  GeneralizedPolynomial f;
  GeneralizedPolynomial g;
};

Pair SelectPair(const ProblemFile& p, const Flags& flags) {
  Pair out;
  out.f_name = flags.f;
  out.g_name = flags.g;
  if (p.defaults.pair) {
    if (out.f_name.empty()) out.f_name = p.defaults.pair->first;
    if (out.g_name.empty()) out.g_name = p.defaults.pair->second;
  }
  if (out.f_name.empty() || out.g_name.empty()) {
    throw UsageError("no function pair: pass --f and --g or set defaults.pair");
  }
  out.f = FunctionFlag(p, out.f_name);
  out.g = FunctionFlag(p, out.g_name);
  return out;
}

std::string SystemName(const ProblemFile& p, const Flags& flags) {
  if (!flags.system.empty()) return flags.system;
  if (p.defaults.system) return *p.defaults.system;
  if (p.systems.size() == 1) return p.systems.begin()->first;
  throw UsageError("no system: pass --system or set defaults.system");
}

std::string LyapunovName(const ProblemFile& p, const Flags& flags) {
  if (!flags.lyapunov.empty()) return flags.lyapunov;
  if (p.defaults.lyapunov) return *p.defaults.lyapunov;
  if (p.lyapunov.size() == 1) return p.lyapunov.begin()->first;
  throw UsageError("no Lyapunov candidate: pass --lyapunov or set defaults.lyapunov");
}

SamplingOptions Sampling(const Flags& flags) {
  SamplingOptions s;
  s.count = flags.samples;
  s.seed = flags.seed;
  return s;
}

SLemmaOptions SLemma(const Flags& flags) {
  SLemmaOptions o;
  o.sampling = Sampling(flags);
  o.positivity_rel = flags.threshold;
  return o;
}

LfhdOptions Lfhd(const Flags& flags) {
  LfhdOptions o;
  o.sampling = Sampling(flags);
  o.threshold_rel = flags.threshold;
  return o;
}

std::string ThetaOrIndex(const SpherePoint& p) {
  return p.theta ? fmt::format("{}", *p.theta) : fmt::format("{}", p.index);
}

int OutcomeCode(const MultiplierOutcome& o) {
  if (Succeeded(o)) return kSuccess;
  return std::get<MultiplierFailure>(o).reason == FailureReason::kVerificationFailed
             ? kVerification
             : kNegative;
}

std::string OutcomeSummary(const MultiplierOutcome& o) {
  if (const auto* c = std::get_if<MultiplierCertificate>(&o)) {
    return fmt::format("certificate xi = {} margin = {}", c->xi, c->margin);
  }
  const auto& f = std::get<MultiplierFailure>(o);
  return fmt::format("no multiplier ({}): {}", ReasonCode(f.reason), f.message);
}

Output RunImage(const ProblemFile& p, const Flags& flags, Json* config) {
  const Pair pr = SelectPair(p, flags);
  (*config)["f"] = pr.f_name;
  (*config)["g"] = pr.g_name;
  (*config)["trials"] = flags.trials;
  const ImageSummary s = SampleImage(pr.f, pr.g, p.dilation, Sampling(flags));
  ConvexityProbeOptions po;
  po.sampling = Sampling(flags);
  const auto violations = ConvexityProbe(pr.f, pr.g, p.dilation, flags.trials, po);
  Output out;
  out.result = ToJson(s);
  Json vs = Json::array();
  for (const auto& v : violations) vs.push_back(ToJson(v));
  out.result["convexity_violations"] = vs;
  std::string csv = "theta_or_index,f,g\n";
  SvgSeries series;
  for (const auto& x : s.samples) {
    csv += fmt::format("{},{},{}\n", ThetaOrIndex(x.point), x.f, x.g);
    series.points.emplace_back(x.f, x.g);
  }
  out.csv = csv;
  out.svg = RenderSvg({series}, fmt::format("image of ({}, {})", pr.f_name, pr.g_name));
  out.summary = fmt::format("{} phi = {} ({} convexity violations)", ToString(s.classification),
                            s.phi, violations.size());
  return out;
}

Output RunZeros(const ProblemFile& p, const Flags& flags, Json* config) {
  const Pair pr = SelectPair(p, flags);
  (*config)["f"] = pr.f_name;
  (*config)["g"] = pr.g_name;
  double scale = 0.0;
  for (const auto& x : SphereSamples(p.dilation, Sampling(flags))) {
    scale = std::max({scale, std::abs(pr.f.Evaluate(x.coords)), std::abs(pr.g.Evaluate(x.coords))});
  }
  const double threshold = flags.threshold * scale;
  const ZeroMargin z = ComputeZeroMargin(pr.f, pr.g, p.dilation, threshold, Sampling(flags));
  Output out;
  out.result = ToJson(z);
  out.code = z.margin > threshold ? kSuccess : kNegative;
  out.summary = fmt::format("zero margin = {} (refined: {})", z.margin, z.refined);
  return out;
}

Output RunCurve(const ProblemFile& p, const Flags& flags, Json* config) {
  const Pair pr = SelectPair(p, flags);
  const Eigen::VectorXd z1 = PointFlag(flags.z1, p.defaults.z1, p.dim(), "--z1");
  const Eigen::VectorXd z2 = PointFlag(flags.z2, p.defaults.z2, p.dim(), "--z2");
  if (flags.steps < 4) throw UsageError("--steps must be at least 4");
  (*config)["f"] = pr.f_name;
  (*config)["g"] = pr.g_name;
  (*config)["z1"] = ToJson(z1);
  (*config)["z2"] = ToJson(z2);
  (*config)["steps"] = flags.steps;
  const auto curve = MixingCurve(pr.f, pr.g, p.dilation, z1, z2, flags.steps);
  Output out;
  out.result = Json{{"points", curve.size()}};
  std::string csv = "theta,f,g\n";
  SvgSeries series;
  series.polyline = true;
  for (const auto& c : curve) {
    csv += fmt::format("{},{},{}\n", c.theta, c.f, c.g);
    series.points.emplace_back(c.f, c.g);
  }
  out.csv = csv;
  out.svg = RenderSvg({series}, fmt::format("mixing curve of ({}, {})", pr.f_name, pr.g_name));
  out.summary = fmt::format("{} curve points", curve.size());
  return out;
}

Output RunCopositive(const ProblemFile& p, const Flags& flags, Json* config) {
  const Pair pr = SelectPair(p, flags);
  (*config)["f"] = pr.f_name;
  (*config)["g"] = pr.g_name;
  (*config)["strict"] = flags.strict;
  const CopositivityResult c = IsCopositive(pr.f, pr.g, p.dilation, flags.strict, SLemma(flags));
  Output out;
  out.result = ToJson(c);
  out.code = c.holds ? kSuccess : kNegative;
  out.summary = fmt::format("{}copositive: {} (min f = {})", flags.strict ? "strictly " : "",
                            c.holds, c.min_value);
  return out;
}

Output RunShsCheck(const ProblemFile& p, const Flags& flags, Json* config) {
  const Pair pr = SelectPair(p, flags);
  (*config)["f"] = pr.f_name;
  (*config)["g"] = pr.g_name;
  const ShsConditionReport r = ShsCondition(pr.f, pr.g, p.dilation, SLemma(flags));
  Output out;
  out.result = ToJson(r);
  out.code = r.holds ? kSuccess : kNegative;
  out.summary = fmt::format("solvability-gap condition holds: {}", r.holds);
  return out;
}

Output RunMultiplier(const ProblemFile& p, const Flags& flags, Json* config) {
  const Pair pr = SelectPair(p, flags);
  (*config)["f"] = pr.f_name;
  (*config)["g"] = pr.g_name;
  const SLemmaOptions o = SLemma(flags);
  (*config)["box_radius"] = o.box_radius;
  (*config)["collision_tol"] = o.collision_tol;
  MultiplierOutcome res = MultiplierFailure{};
  if (flags.command == "shs-xi") {
    res = FindStrictMultiplier(pr.f, pr.g, p.dilation, o);
  } else if (flags.command == "hs-xi") {
    res = FindNonstrictMultiplier(pr.f, pr.g, p.dilation, o);
  } else {
    const auto fc = p.coeff_functions.find(pr.f_name);
    const auto gc = p.coeff_functions.find(pr.g_name);
    if (fc != p.coeff_functions.end() && gc != p.coeff_functions.end()) {
      res = FindNhsMultiplier(fc->second, gc->second, o);
    } else {
      res = FindNhsMultiplier(pr.f, pr.g, o);
    }
  }
  Output out;
  out.result = ToJson(res);
  out.code = OutcomeCode(res);
  out.summary = OutcomeSummary(res);
  return out;
}

struct SystemSetup {
  std::string system_name;
  std::string lyapunov_name;
  const SwitchedSystem* sys;
  LfhdCandidate cand;
};

SystemSetup Setup(const ProblemFile& p, const Flags& flags, Json* config) {
  const std::string sn = SystemName(p, flags);
  const std::string ln = LyapunovName(p, flags);
  (*config)["system"] = sn;
  (*config)["lyapunov"] = ln;
  const SwitchedSystem& sys = p.system(sn);
  return SystemSetup{sn, ln, &sys,
                     LfhdCandidate::Create(sys, p.lyapunov_candidate(ln), p.dilation)};
}

Output RunLfhd(const ProblemFile& p, const Flags& flags, Json* config) {
  const SystemSetup s = Setup(p, flags, config);
  const LfhdReport r = CheckLfhd(*s.sys, s.cand, Lfhd(flags));
  Output out;
  out.result = ToJson(r);
  out.result["common_degree"] = s.cand.common_degree();
  out.code = r.positive_definite && r.covered ? kSuccess : kNegative;
  std::string csv = "theta_or_index,argmin_subsystem,min_derivative\n";
  SvgSeries series;
  for (std::size_t i = 0; i < r.regions.size(); ++i) {
    const auto& reg = r.regions[i];
    csv += fmt::format("{},{},{}\n", ThetaOrIndex(reg.point), reg.argmin + 1, reg.min_derivative);
    if (reg.point.coords.size() >= 2) {
      series.points.emplace_back(reg.point.coords[0], reg.point.coords[1]);
      series.labels.push_back(reg.min_derivative < -r.threshold ? reg.argmin : 7);
    }
  }
  if (!r.regions.empty()) {
    out.csv = csv;
    out.svg = RenderSvg({series}, "stable regions of " + s.system_name);
  }
  out.summary = r.positive_definite
                    ? fmt::format("covered: {} ({} uncovered samples)", r.covered,
                                  r.uncovered.size())
                    : fmt::format("V is not positive definite (min on sphere {})", r.v_min);
  return out;
}

Output RunComboSynth(const ProblemFile& p, const Flags& flags, Json* config) {
  const SystemSetup s = Setup(p, flags, config);
  const SynthesisOutcome o = SynthesizeCombinationN2(*s.sys, s.cand, Lfhd(flags));
  Output out;
  out.result = ToJson(o);
  if (const auto* c = std::get_if<CombinationSynthesis>(&o)) {
    out.summary = fmt::format("lambda = ({}, {}), max V' = {}", c->combination[0],
                              c->combination[1], c->verified_max_derivative);
  } else {
    const auto& f = std::get<SynthesisFailure>(o);
    out.code = f.reason == FailureReason::kVerificationFailed ? kVerification : kNegative;
    out.summary = fmt::format("no combination ({}): {}", ReasonCode(f.reason), f.message);
  }
  return out;
}

Output RunComboScan(const ProblemFile& p, const Flags& flags, Json* config) {
  const SystemSetup s = Setup(p, flags, config);
  (*config)["grid_step"] = flags.grid_step;
  const ScanResult r = ScanCombinations(*s.sys, s.cand, flags.grid_step, Lfhd(flags));
  Output out;
  out.result = ToJson(r);
  out.code = r.feasible.empty() ? kNegative : kSuccess;
  std::string csv;
  for (int i = 0; i < s.sys->num_subsystems(); ++i) csv += fmt::format("lambda_{},", i + 1);
  csv += "max_derivative,feasible\n";
  for (const auto& g : r.grid) {
    for (double l : g.lambdas) csv += fmt::format("{},", l);
    csv += fmt::format("{},{}\n", g.max_derivative, g.feasible ? 1 : 0);
  }
  out.csv = csv;
  out.summary = r.interval ? fmt::format("{} feasible points, lambda_1 in [{}, {}]",
                                         r.feasible.size(), r.interval->first, r.interval->second)
                           : fmt::format("{} feasible points", r.feasible.size());
  return out;
}

Output RunSimulate(const ProblemFile& p, const Flags& flags, Json* config) {
  const SystemSetup s = Setup(p, flags, config);
  const Eigen::VectorXd x0 = PointFlag(flags.x0, p.defaults.x0, p.dim(), "--x0");
  SimulationOptions so;
  so.dt = flags.dt;
  so.t_end = flags.t_end;
  so.dwell = flags.dwell;
  (*config)["x0"] = ToJson(x0);
  (*config)["dt"] = so.dt;
  (*config)["t_end"] = so.t_end;
  (*config)["dwell"] = so.dwell > 0.0 ? so.dwell : 10.0 * so.dt;
  (*config)["divergence_radius"] = so.divergence_radius;
  Output out;
  Trajectory traj;
  try {
    traj = SimulateMinSwitching(*s.sys, s.cand, x0, so);
  } catch (const DivergenceError& e) {
    out.code = kNegative;
    out.result = Json{{"status", "diverged"}, {"message", e.what()}};
    out.summary = std::string("diverged: ") + e.what();
    return out;
  }
  const auto& last = traj.points.back();
  out.result = Json{{"status", "completed"},
                    {"steps", traj.points.size() - 1},
                    {"switches", traj.switches},
                    {"V_initial", traj.points.front().V},
                    {"V_final", last.V},
                    {"x_final", ToJson(last.x)}};
  std::string csv = "t";
  for (int i = 0; i < p.dim(); ++i) csv += fmt::format(",x_{}", i + 1);
  csv += ",sigma,V\n";
  SvgSeries series;
  series.polyline = true;
  for (const auto& pt : traj.points) {
    csv += fmt::format("{}", pt.t);
    for (Eigen::Index i = 0; i < pt.x.size(); ++i) csv += fmt::format(",{}", pt.x[i]);
    csv += fmt::format(",{},{}\n", pt.sigma + 1, pt.V);
    if (pt.x.size() >= 2) series.points.emplace_back(pt.x[0], pt.x[1]);
  }
  out.csv = csv;
  if (p.dim() >= 2) out.svg = RenderSvg({series}, "trajectory of " + s.system_name);
  out.summary = fmt::format("V: {} -> {}, {} switches", traj.points.front().V, last.V,
                            traj.switches);
  return out;
}

Output RunEigencheck(const ProblemFile& p, const Flags& flags, Json* config) {
  const std::string sn = SystemName(p, flags);
  const std::string ln = LyapunovName(p, flags);
  (*config)["system"] = sn;
  (*config)["lyapunov"] = ln;
  const SwitchedSystem& sys = p.system(sn);
  std::vector<double> lam;
  if (!flags.lambda.empty()) {
    lam = ParseList(flags.lambda, "--lambda");
  } else if (p.defaults.lambda) {
    lam = *p.defaults.lambda;
  } else {
    throw UsageError("--lambda is required for this problem");
  }
  (*config)["lambda"] = lam;
  const ConvexCombination c(lam);
  const auto mats = LinearMatrices(sys);
  const Eigen::MatrixXd P = QuadraticFormMatrix(p.lyapunov_candidate(ln));
  const double eig = LinearCombinationEigencheck(mats, c, P);
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(P.rows(), P.cols());
  for (int i = 0; i < c.size(); ++i) A += c[i] * mats[i];
  Output out;
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < A.rows(); ++r) rows.push_back(ToJson(Eigen::VectorXd(A.row(r))));
  Json prow = Json::array();
  for (Eigen::Index r = 0; r < P.rows(); ++r) prow.push_back(ToJson(Eigen::VectorXd(P.row(r))));
  out.result = Json{{"max_eigenvalue", eig}, {"combined_matrix", rows}, {"P", prow}};
  out.code = eig < 0.0 ? kSuccess : kNegative;
  out.summary = fmt::format("max eigenvalue of sym(P A(lambda)) = {}", eig);
  return out;
}

void WriteFile(const std::filesystem::path& path, const std::string& text) {
  std::ofstream o(path, std::ios::binary);
  if (!o) throw UsageError("cannot write " + path.string());
  o << text;
}

int Run(const Flags& flags) {
  ProblemFile p;
  try {
    p = LoadProblem(flags.problem);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  Json config{{"command", flags.command},
              {"problem", flags.problem},
              {"sampling", ToJson(Sampling(flags), p.dim())},
              {"threshold_rel", flags.threshold},
              {"tolerance_rel", SLemmaOptions{}.tolerance_rel},
              {"dilation", ToJson(p.dilation)}};
  Output out;
  try {
    const std::string& c = flags.command;
    if (c == "image") {
      out = RunImage(p, flags, &config);
    } else if (c == "zeros") {
      out = RunZeros(p, flags, &config);
    } else if (c == "curve") {
      out = RunCurve(p, flags, &config);
    } else if (c == "copositive") {
      out = RunCopositive(p, flags, &config);
    } else if (c == "shs-check") {
      out = RunShsCheck(p, flags, &config);
    } else if (c == "shs-xi" || c == "hs-xi" || c == "nhs-xi") {
      out = RunMultiplier(p, flags, &config);
    } else if (c == "lfhd") {
      out = RunLfhd(p, flags, &config);
    } else if (c == "combo-synth") {
      out = RunComboSynth(p, flags, &config);
    } else if (c == "combo-scan") {
      out = RunComboScan(p, flags, &config);
    } else if (c == "simulate") {
      out = RunSimulate(p, flags, &config);
    } else {
      out = RunEigencheck(p, flags, &config);
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }

  Json doc{{"config", config}, {"result", out.result}, {"exit_code", out.code}};
  const std::string json_text = Dump(doc);
  const std::string stem = flags.command;
  if (!flags.out_dir.empty()) {
    std::error_code ec;
    std::filesystem::create_directories(flags.out_dir, ec);
    if (ec) {
      std::cerr << "error: cannot create " << flags.out_dir << ": " << ec.message() << "\n";
      return kUsage;
    }
    const std::filesystem::path dir(flags.out_dir);
    WriteFile(dir / (stem + ".json"), json_text);
    if (out.csv) WriteFile(dir / (stem + ".csv"), *out.csv);
    if (out.svg) WriteFile(dir / (stem + ".svg"), *out.svg);
  }
  if (flags.format == "json") {
    std::cout << json_text;
  } else if (flags.format == "csv") {
    if (!out.csv) {
      std::cerr << "error: " << stem << " has no CSV output\n";
      return kUsage;
    }
    std::cout << *out.csv;
  } else {
    if (!out.svg) {
      std::cerr << "error: " << stem << " has no SVG output\n";
      return kUsage;
    }
    std::cout << *out.svg;
  }
  std::cerr << stem << ": " << out.summary << "\n";
  return out.code;
}

}  // namespace
}  // namespace slemma

int main(int argc, char** argv) {
  using slemma::Flags;
  CLI::App app{"Homogeneous S-Lemma multipliers and switched-system stabilization"};
  app.require_subcommand(1);
  Flags flags;
  const std::vector<std::pair<std::string, std::string>> commands = {
      {"image", "classify the image set {(f(x), g(x))}"},
      {"zeros", "distance of (f, g) from a common nonzero zero"},
      {"curve", "mixing curve through z1 and z2"},
      {"copositive", "is f copositive with g"},
      {"shs-check", "solvability-gap condition for an even pair"},
      {"shs-xi", "strict multiplier for a homogeneous pair"},
      {"hs-xi", "non-strict multiplier for a homogeneous pair"},
      {"nhs-xi", "non-strict multiplier for a non-homogeneous pair"},
      {"lfhd", "coverage check of a Lyapunov function with homogeneous derivative"},
      {"combo-synth", "stabilizing convex combination for two subsystems"},
      {"combo-scan", "grid search of stabilizing convex combinations"},
      {"simulate", "min-derivative switching simulation"},
      {"eigencheck", "largest eigenvalue of sym(P A(lambda)) for linear subsystems"}};
  for (const auto& [name, help] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("problem", flags.problem, "problem file")->required();
    sub->add_option("--samples", flags.samples, "sphere samples (0 = default)")
        ->check(CLI::NonNegativeNumber);
    sub->add_option("--seed", flags.seed, "sampling seed");
    sub->add_option("--threshold", flags.threshold, "relative positivity threshold")
        ->check(CLI::PositiveNumber);
    sub->add_option("--out-dir", flags.out_dir, "write every artifact into this directory");
    sub->add_option("--format", flags.format, "stdout format")
        ->check(CLI::IsMember({"json", "csv", "svg"}));
    if (name == "image" || name == "zeros" || name == "curve" || name == "copositive" ||
        name == "shs-check" || name.ends_with("-xi")) {
      sub->add_option("--f", flags.f, "function name or inline term list");
      sub->add_option("--g", flags.g, "function name or inline term list");
    }
    if (name == "image") sub->add_option("--trials", flags.trials, "convexity probe pairs");
    if (name == "curve") {
      sub->add_option("--z1", flags.z1, "comma-separated point");
      sub->add_option("--z2", flags.z2, "comma-separated point");
      sub->add_option("--steps", flags.steps, "curve steps");
    }
    if (name == "copositive") sub->add_flag("--strict", flags.strict, "strict copositivity");
    if (name == "lfhd" || name.starts_with("combo") || name == "simulate" ||
        name == "eigencheck") {
      sub->add_option("--system", flags.system, "system name");
      sub->add_option("--lyapunov", flags.lyapunov, "Lyapunov candidate name");
    }
    if (name == "combo-scan") {
      sub->add_option("--grid-step", flags.grid_step, "simplex grid step")
          ->check(CLI::Range(1e-4, 1.0));
    }
    if (name == "simulate") {
      sub->add_option("--x0", flags.x0, "comma-separated initial state");
      sub->add_option("--dt", flags.dt, "step size")->check(CLI::PositiveNumber);
      sub->add_option("--t-end", flags.t_end, "final time")->check(CLI::PositiveNumber);
      sub->add_option("--dwell", flags.dwell, "dwell time (0 = 10 dt)")
          ->check(CLI::NonNegativeNumber);
    }
    if (name == "eigencheck") {
      sub->add_option("--lambda", flags.lambda, "comma-separated convex weights");
    }
    sub->callback([&flags, name = name] { flags.command = name; });
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return slemma::kUsage;
  }
  return slemma::Run(flags);
}
