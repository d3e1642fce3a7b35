#include "slemma/switched_systems.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "slemma/errors.h"
#include "slemma/parallel.h"

namespace slemma {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Row i holds V'_i at every sample.
Eigen::MatrixXd DerivativeTable(const LfhdCandidate& cand,
                                const std::vector<SpherePoint>& pts) {
  const int N = static_cast<int>(cand.derivatives().size());
  Eigen::MatrixXd D(N, static_cast<Eigen::Index>(pts.size()));
  ParallelFor(pts.size(), [&](std::size_t s) {
    for (int i = 0; i < N; ++i) D(i, s) = cand.derivative(i).Evaluate(pts[s].coords);
  });
  return D;
}

void Compositions(int parts, int total, std::vector<int>* cur,
                  std::vector<std::vector<int>>* out) {
  if (parts == 1) {
    cur->push_back(total);
    out->push_back(*cur);
    cur->pop_back();
    return;
  }
  for (int i = 0; i <= total; ++i) {
    cur->push_back(i);
    Compositions(parts - 1, total - i, cur, out);
    cur->pop_back();
  }
}

int ArgMinDerivative(const LfhdCandidate& cand, const Eigen::VectorXd& x) {
  int best = 0;
  double m = kInf;
  for (int i = 0; i < static_cast<int>(cand.derivatives().size()); ++i) {
    const double v = cand.derivative(i).Evaluate(x);
    if (v < m) {
      m = v;
      best = i;
    }
  }
  return best;
}

}  // namespace

SwitchedSystem::SwitchedSystem(int n, std::vector<VectorField> fields)
    : n_(n), fields_(std::move(fields)) {
  if (n < 1) throw ArgumentError("state dimension must be >= 1");
  if (fields_.size() < 2) throw ArgumentError("a switched system needs N >= 2 subsystems");
  for (const auto& f : fields_) {
    if (static_cast<int>(f.size()) != n) {
      throw ArgumentError("every vector field needs n components");
    }
    for (const auto& c : f) {
      if (c.dim() != n) throw ArgumentError("vector field component has the wrong dimension");
    }
  }
}

Eigen::VectorXd SwitchedSystem::EvaluateField(int i,
                                              const Eigen::Ref<const Eigen::VectorXd>& x) const {
  const VectorField& f = fields_.at(i);
  Eigen::VectorXd out(n_);
  for (int k = 0; k < n_; ++k) out[k] = f[k].Evaluate(x);
  return out;
}

std::vector<GeneralizedPolynomial> Gradient(const GeneralizedPolynomial& V) {
  std::vector<GeneralizedPolynomial> grad;
  grad.reserve(V.dim());
  for (int i = 0; i < V.dim(); ++i) grad.push_back(V.Differentiate(i));
  return grad;
}

GeneralizedPolynomial DerivativeAlong(const GeneralizedPolynomial& V, const VectorField& field) {
  if (static_cast<int>(field.size()) != V.dim()) {
    throw ArgumentError("vector field size does not match the dimension of V");
  }
  GeneralizedPolynomial out(V.dim());
  for (int i = 0; i < V.dim(); ++i) {
    if (field[i].dim() != V.dim()) throw ArgumentError("vector field dimension mismatch");
    out = out + V.Differentiate(i) * field[i];
  }
  return out;
}

ConvexCombination::ConvexCombination(std::vector<double> lambdas)
    : lambdas_(std::move(lambdas)) {
  if (lambdas_.empty()) throw ArgumentError("empty convex combination");
  double sum = 0.0;
  for (double l : lambdas_) {
    if (!(l >= 0.0)) throw ArgumentError("convex weights must be nonnegative");
    sum += l;
  }
  if (std::abs(sum - 1.0) > 1e-12) throw ArgumentError("convex weights must sum to 1");
}

VectorField CombinedField(const SwitchedSystem& sys, const ConvexCombination& lambda) {
  if (lambda.size() != sys.num_subsystems()) {
    throw ArgumentError("one weight per subsystem is required");
  }
  VectorField out(sys.dim(), GeneralizedPolynomial(sys.dim()));
  for (int i = 0; i < sys.num_subsystems(); ++i) {
    for (int k = 0; k < sys.dim(); ++k) out[k] = out[k] + lambda[i] * sys.field(i)[k];
  }
  return out;
}

LfhdCandidate::LfhdCandidate(GeneralizedPolynomial V, std::vector<GeneralizedPolynomial> grad,
                             std::vector<GeneralizedPolynomial> derivatives, double degree,
                             Dilation d)
    : V_(std::move(V)),
      grad_(std::move(grad)),
      derivatives_(std::move(derivatives)),
      degree_(degree),
      dilation_(std::move(d)) {}

LfhdCandidate LfhdCandidate::Create(const SwitchedSystem& sys, GeneralizedPolynomial V,
                                    const Dilation& d) {
  if (V.dim() != sys.dim() || d.dim() != sys.dim()) {
    throw ArgumentError("V, the system and the dilation must share the dimension");
  }
  std::vector<GeneralizedPolynomial> grad = Gradient(V);
  std::vector<GeneralizedPolynomial> ders;
  std::optional<double> degree;
  for (int i = 0; i < sys.num_subsystems(); ++i) {
    GeneralizedPolynomial di(sys.dim());
    for (int k = 0; k < sys.dim(); ++k) di = di + grad[k] * sys.field(i)[k];
    if (!di.is_zero()) {
      const std::optional<double> k = HomogeneityDegree(di, d);
      if (!k) {
        throw ArgumentError("derivative along subsystem " + std::to_string(i + 1) +
                            " is not homogeneous under the dilation");
      }
      if (degree && std::abs(*degree - *k) > 1e-12 * std::max(1.0, std::abs(*k))) {
        throw ArgumentError("derivatives along the subsystems have different degrees");
      }
      degree = k;
      if (ClassifyParity(di) != Parity::kEven) {
        throw ArgumentError("derivative along subsystem " + std::to_string(i + 1) +
                            " is not even");
      }
    }
    ders.push_back(std::move(di));
  }
  if (!degree) throw DegenerateError("V is constant along every subsystem");
  return LfhdCandidate(std::move(V), std::move(grad), std::move(ders), *degree, d);
}

LfhdReport CheckLfhd(const SwitchedSystem& sys, const LfhdCandidate& cand,
                     const LfhdOptions& options) {
  if (static_cast<int>(cand.derivatives().size()) != sys.num_subsystems()) {
    throw ArgumentError("candidate does not belong to this system");
  }
  const std::vector<SpherePoint> pts = SphereSamples(cand.dilation(), options.sampling);
  LfhdReport r;
  r.sample_count = static_cast<int>(pts.size());
  r.seed = options.sampling.seed;
  double vmax = 0.0;
  r.v_min = kInf;
  for (const auto& p : pts) {
    const double v = cand.V().Evaluate(p.coords);
    r.v_min = std::min(r.v_min, v);
    vmax = std::max(vmax, std::abs(v));
  }
  r.positive_definite = r.v_min > options.threshold_rel * vmax;
  if (!r.positive_definite) return r;

  const Eigen::MatrixXd D = DerivativeTable(cand, pts);
  const int N = static_cast<int>(D.rows());
  r.threshold = options.threshold_rel * D.cwiseAbs().maxCoeff();
  r.positive_direction.assign(N, std::nullopt);
  r.stable_fraction.assign(N, 0.0);
  r.regions.reserve(pts.size());
  for (Eigen::Index s = 0; s < D.cols(); ++s) {
    Eigen::Index arg;
    const double m = D.col(s).minCoeff(&arg);
    r.regions.push_back(RegionSample{pts[s], static_cast<int>(arg), m});
    if (!(m < -r.threshold)) r.uncovered.push_back(static_cast<int>(s));
    for (int i = 0; i < N; ++i) {
      if (D(i, s) < -r.threshold) r.stable_fraction[i] += 1.0;
      if (D(i, s) > r.threshold && !r.positive_direction[i]) r.positive_direction[i] = pts[s];
    }
  }
  for (auto& f : r.stable_fraction) f /= static_cast<double>(std::max<Eigen::Index>(1, D.cols()));
  r.covered = r.uncovered.empty();
  return r;
}

bool CombinationFeasible(const SwitchedSystem& sys, const LfhdCandidate& cand,
                         const ConvexCombination& lambda, const LfhdOptions& options,
                         double* max_derivative) {
  const GeneralizedPolynomial W = DerivativeAlong(cand.V(), CombinedField(sys, lambda));
  const std::vector<SpherePoint> pts = SphereSamples(cand.dilation(), options.sampling);
  const Eigen::MatrixXd D = DerivativeTable(cand, pts);
  const double threshold = options.threshold_rel * D.cwiseAbs().maxCoeff();
  double worst = -kInf;
  for (const auto& p : pts) worst = std::max(worst, W.Evaluate(p.coords));
  if (max_derivative) *max_derivative = worst;
  return worst < -threshold;
}

SynthesisOutcome SynthesizeCombinationN2(const SwitchedSystem& sys, const LfhdCandidate& cand,
                                         const LfhdOptions& options) {
  if (sys.num_subsystems() != 2) {
    throw ArgumentError("combination synthesis needs exactly two subsystems");
  }
  SLemmaOptions so;
  so.sampling = options.sampling;
  const MultiplierOutcome o =
      FindStrictMultiplier(-cand.derivative(0), cand.derivative(1), cand.dilation(), so);
  if (const auto* fail = std::get_if<MultiplierFailure>(&o)) {
    return SynthesisFailure{fail->reason,
                            "no certificate for the pair (-V'_1, V'_2): " + fail->message,
                            fail->checks};
  }
  const MultiplierCertificate& cert = std::get<MultiplierCertificate>(o);
  const double xi = cert.xi;
  const double l1 = 1.0 / (1.0 + xi);
  CombinationSynthesis out;
  out.combination = ConvexCombination({l1, 1.0 - l1});
  out.certificate = cert;
  LfhdOptions fresh = options;
  fresh.sampling = VerificationSampling(options.sampling, sys.dim());
  const bool ok = CombinationFeasible(sys, cand, out.combination, fresh,
                                      &out.verified_max_derivative);
  const std::vector<SpherePoint> pts = SphereSamples(cand.dilation(), fresh.sampling);
  out.threshold = fresh.threshold_rel * DerivativeTable(cand, pts).cwiseAbs().maxCoeff();
  if (!ok) {
    std::vector<CheckRecord> checks = cert.checks;
    checks.push_back({"combined_field_derivative", false, out.verified_max_derivative, ""});
    return SynthesisFailure{FailureReason::kVerificationFailed,
                            "V' along the synthesized combination is not negative", checks};
  }
  return out;
}

ScanResult ScanCombinations(const SwitchedSystem& sys, const LfhdCandidate& cand,
                            double grid_step, const LfhdOptions& options) {
  if (!(grid_step > 0.0) || grid_step > 1.0) throw ArgumentError("grid step must be in (0, 1]");
  const int M = static_cast<int>(std::lround(1.0 / grid_step));
  const int N = sys.num_subsystems();
  std::vector<std::vector<int>> comps;
  std::vector<int> cur;
  Compositions(N, M, &cur, &comps);
  const std::vector<SpherePoint> pts = SphereSamples(cand.dilation(), options.sampling);
  const Eigen::MatrixXd D = DerivativeTable(cand, pts);
  ScanResult r;
  r.grid_step = 1.0 / M;
  r.sample_count = static_cast<int>(pts.size());
  r.threshold = options.threshold_rel * D.cwiseAbs().maxCoeff();
  r.grid.resize(comps.size());
  ParallelFor(comps.size(), [&](std::size_t k) {
    Eigen::VectorXd lam(N);
    for (int i = 0; i < N; ++i) lam[i] = static_cast<double>(comps[k][i]) / M;
    const double worst = (lam.transpose() * D).maxCoeff();
    r.grid[k].lambdas.assign(lam.data(), lam.data() + N);
    r.grid[k].max_derivative = worst;
    r.grid[k].feasible = worst < -r.threshold;
  });
  for (const auto& p : r.grid) {
    if (!p.feasible) continue;
    std::vector<double> l = p.lambdas;
    // Rebalance the rounding residue onto the last weight.
    double head = 0.0;
    for (int i = 0; i + 1 < N; ++i) head += l[i];
    l[N - 1] = std::max(0.0, 1.0 - head);
    r.feasible.emplace_back(std::move(l));
    if (N == 2) {
      const double l1 = p.lambdas[0];
      if (!r.interval) {
        r.interval = std::make_pair(l1, l1);
      } else {
        r.interval->first = std::min(r.interval->first, l1);
        r.interval->second = std::max(r.interval->second, l1);
      }
    }
  }
  return r;
}

double LinearCombinationEigencheck(const std::vector<Eigen::MatrixXd>& matrices,
                                   const ConvexCombination& lambda, const Eigen::MatrixXd& P) {
  if (matrices.empty()) throw ArgumentError("no matrices");
  if (static_cast<int>(matrices.size()) != lambda.size()) {
    throw ArgumentError("one weight per matrix is required");
  }
  const Eigen::Index n = matrices.front().rows();
  for (const auto& A : matrices) {
    if (A.rows() != n || A.cols() != n) throw ArgumentError("matrices must be square and equal size");
  }
  if (P.rows() != n || P.cols() != n) throw ArgumentError("P has the wrong size");
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < lambda.size(); ++i) A += lambda[i] * matrices[i];
  const Eigen::MatrixXd PA = P * A;
  const Eigen::MatrixXd S = 0.5 * (PA + PA.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(S, Eigen::EigenvaluesOnly);
  return es.eigenvalues().maxCoeff();
}

std::vector<Eigen::MatrixXd> LinearMatrices(const SwitchedSystem& sys) {
  const int n = sys.dim();
  std::vector<Eigen::MatrixXd> out;
  for (const auto& field : sys.fields()) {
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n, n);
    for (int r = 0; r < n; ++r) {
      for (const auto& t : field[r].terms()) {
        int col = -1;
        for (int j = 0; j < n; ++j) {
          if (t.powers[j].is_zero()) continue;
          if (col >= 0 || !(t.powers[j] == Exponent(1)) || !t.sign_flags[j]) {
            throw ArgumentError("vector field is not linear");
          }
          col = j;
        }
        if (col < 0) throw ArgumentError("vector field has a constant term");
        A(r, col) += t.coeff;
      }
    }
    out.push_back(std::move(A));
  }
  return out;
}

Eigen::MatrixXd QuadraticFormMatrix(const GeneralizedPolynomial& V) {
  const int n = V.dim();
  Eigen::MatrixXd P = Eigen::MatrixXd::Zero(n, n);
  if (!V.HasIntegerPowers()) throw ArgumentError("V is not a quadratic form");
  for (const auto& t : V.terms()) {
    std::vector<int> vars;
    for (int j = 0; j < n; ++j) {
      for (int64_t e = 0; e < t.powers[j].num(); ++e) vars.push_back(j);
    }
    if (vars.size() != 2) throw ArgumentError("V is not a quadratic form");
    if (vars[0] == vars[1]) {
      P(vars[0], vars[0]) += 2.0 * t.coeff;
    } else {
      P(vars[0], vars[1]) += t.coeff;
      P(vars[1], vars[0]) += t.coeff;
    }
  }
  return P;
}

Trajectory SimulateMinSwitching(const SwitchedSystem& sys, const LfhdCandidate& cand,
                                const Eigen::VectorXd& x0, const SimulationOptions& options) {
  if (x0.size() != sys.dim()) throw ArgumentError("initial state has the wrong dimension");
  if (!(options.dt > 0.0) || !(options.t_end > 0.0) || options.dwell < 0.0) {
    throw ArgumentError("dt and t_end must be positive and dwell nonnegative");
  }
  const double dwell = options.dwell > 0.0 ? options.dwell : 10.0 * options.dt;
  const long steps = std::lround(options.t_end / options.dt);
  Trajectory traj;
  traj.points.reserve(steps + 1);
  Eigen::VectorXd x = x0;
  int sigma = ArgMinDerivative(cand, x);
  double chosen_at = 0.0;
  traj.points.push_back({0.0, x, sigma, cand.V().Evaluate(x)});
  for (long k = 0; k < steps; ++k) {
    const double t = k * options.dt;
    if (t - chosen_at >= dwell - 1e-12 * options.dt) {
      const int next = ArgMinDerivative(cand, x);
      if (next != sigma) ++traj.switches;
      sigma = next;
      chosen_at = t;
    }
    const double h = options.dt;
    const Eigen::VectorXd k1 = sys.EvaluateField(sigma, x);
    const Eigen::VectorXd k2 = sys.EvaluateField(sigma, x + 0.5 * h * k1);
    const Eigen::VectorXd k3 = sys.EvaluateField(sigma, x + 0.5 * h * k2);
    const Eigen::VectorXd k4 = sys.EvaluateField(sigma, x + h * k3);
    x += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if (!x.allFinite() || x.norm() > options.divergence_radius) {
      throw DivergenceError("state norm exceeded " + std::to_string(options.divergence_radius) +
                            " at t = " + std::to_string((k + 1) * h));
    }
    traj.points.push_back({(k + 1) * h, x, sigma, cand.V().Evaluate(x)});
  }
  return traj;
}

}  // namespace slemma
