#pragma once

#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "slemma/homog_core.h"
#include "slemma/s_lemma.h"

namespace slemma {

using VectorField = std::vector<GeneralizedPolynomial>;

/// x' = f_sigma(x) with N >= 2 polynomial vector fields on R^n.
class SwitchedSystem {
 public:
  SwitchedSystem(int n, std::vector<VectorField> fields);

  int dim() const { return n_; }
  int num_subsystems() const { return static_cast<int>(fields_.size()); }
  const std::vector<VectorField>& fields() const { return fields_; }
  const VectorField& field(int i) const { return fields_.at(i); }

  Eigen::VectorXd EvaluateField(int i, const Eigen::Ref<const Eigen::VectorXd>& x) const;

 private:
  int n_;
  std::vector<VectorField> fields_;
};

/// <grad V, field> as a canonical polynomial.
GeneralizedPolynomial DerivativeAlong(const GeneralizedPolynomial& V, const VectorField& field);

/// Gradient of V, one partial derivative per coordinate.
std::vector<GeneralizedPolynomial> Gradient(const GeneralizedPolynomial& V);

/// Weights on the probability simplex.
class ConvexCombination {
 public:
  /// Throws ArgumentError unless every weight is >= 0 and they sum to 1
  /// within 1e-12.
  explicit ConvexCombination(std::vector<double> lambdas);

  const std::vector<double>& lambdas() const { return lambdas_; }
  int size() const { return static_cast<int>(lambdas_.size()); }
  double operator[](int i) const { return lambdas_.at(i); }

 private:
  std::vector<double> lambdas_;
};

/// sum_i lambda_i f_i
VectorField CombinedField(const SwitchedSystem& sys, const ConvexCombination& lambda);

class LfhdCandidate {
 public:
  /// Differentiates V along every subsystem and checks that the derivatives
  /// are even and homogeneous of one common degree under d.
  static LfhdCandidate Create(const SwitchedSystem& sys, GeneralizedPolynomial V,
                              const Dilation& d);

  const GeneralizedPolynomial& V() const { return V_; }
  const std::vector<GeneralizedPolynomial>& grad() const { return grad_; }
  const std::vector<GeneralizedPolynomial>& derivatives() const { return derivatives_; }
  const GeneralizedPolynomial& derivative(int i) const { return derivatives_.at(i); }
  double common_degree() const { return degree_; }
  const Dilation& dilation() const { return dilation_; }

 private:
  LfhdCandidate(GeneralizedPolynomial V, std::vector<GeneralizedPolynomial> grad,
                std::vector<GeneralizedPolynomial> derivatives, double degree, Dilation d);

  GeneralizedPolynomial V_;
  std::vector<GeneralizedPolynomial> grad_;
  std::vector<GeneralizedPolynomial> derivatives_;
  double degree_;
  Dilation dilation_;
};

struct LfhdOptions {
  SamplingOptions sampling;
  /// Negativity floor relative to the largest |V'_i| seen.
  double threshold_rel{1e-8};
};

struct RegionSample {
  SpherePoint point;
  /// 0-based index of the subsystem with the smallest derivative.
  int argmin{0};
  double min_derivative{0.0};
};

struct LfhdReport {
  bool positive_definite{false};
  double v_min{0.0};
  /// min_i V'_i < -threshold at every sample.
  bool covered{false};
  double threshold{0.0};
  int sample_count{0};
  uint64_t seed{kDefaultSeed};
  std::vector<int> uncovered;
  std::vector<RegionSample> regions;
  /// Per subsystem: a sample where V'_i > 0, if any (instability direction).
  std::vector<std::optional<SpherePoint>> positive_direction;
  /// Per subsystem: fraction of samples with V'_i < -threshold.
  std::vector<double> stable_fraction;
};

LfhdReport CheckLfhd(const SwitchedSystem& sys, const LfhdCandidate& cand,
                     const LfhdOptions& options = {});

struct CombinationSynthesis {
  ConvexCombination combination{{0.5, 0.5}};
  MultiplierCertificate certificate;
  /// max of V' along the combined field over fresh samples (negative).
  double verified_max_derivative{0.0};
  double threshold{0.0};
};

struct SynthesisFailure {
  FailureReason reason{FailureReason::kSectorGePi};
  std::string message;
  std::vector<CheckRecord> checks;
};

using SynthesisOutcome = std::variant<CombinationSynthesis, SynthesisFailure>;

/// Two subsystems: multiplier for (-V'_1, V'_2), then
/// lambda = (1/(1+xi), xi/(1+xi)) checked along the combined field.
SynthesisOutcome SynthesizeCombinationN2(const SwitchedSystem& sys, const LfhdCandidate& cand,
                                         const LfhdOptions& options = {});

struct ScanPoint {
  std::vector<double> lambdas;
  /// max over samples of sum_i lambda_i V'_i
  double max_derivative{0.0};
  bool feasible{false};
};

struct ScanResult {
  std::vector<ScanPoint> grid;
  std::vector<ConvexCombination> feasible;
  /// N = 2: outermost feasible lambda_1 values.
  std::optional<std::pair<double, double>> interval;
  double threshold{0.0};
  double grid_step{0.0};
  int sample_count{0};
};

ScanResult ScanCombinations(const SwitchedSystem& sys, const LfhdCandidate& cand,
                            double grid_step, const LfhdOptions& options = {});

/// True iff V' along sum_i lambda_i f_i is below -threshold on the samples.
bool CombinationFeasible(const SwitchedSystem& sys, const LfhdCandidate& cand,
                         const ConvexCombination& lambda, const LfhdOptions& options,
                         double* max_derivative = nullptr);

/// Largest eigenvalue of the symmetric part of P * sum_i lambda_i A_i.
double LinearCombinationEigencheck(const std::vector<Eigen::MatrixXd>& matrices,
                                   const ConvexCombination& lambda, const Eigen::MatrixXd& P);

/// Matrices A_i of linear subsystems x' = A_i x. Throws ArgumentError when a
/// field is not linear.
std::vector<Eigen::MatrixXd> LinearMatrices(const SwitchedSystem& sys);

/// Symmetric P with V = x' P x / 2 for a quadratic form V.
Eigen::MatrixXd QuadraticFormMatrix(const GeneralizedPolynomial& V);

struct SimulationOptions {
  double dt{1e-3};
  double t_end{10.0};
  /// 0 selects 10 dt.
  double dwell{0.0};
  double divergence_radius{1e6};
};

struct TrajectoryPoint {
  double t{0.0};
  Eigen::VectorXd x;
  /// 0-based active subsystem.
  int sigma{0};
  double V{0.0};
};

struct Trajectory {
  std::vector<TrajectoryPoint> points;
  int switches{0};
};

/// RK4 with sigma = argmin_i V'_i(x), re-chosen once the dwell time has
/// elapsed. Throws DivergenceError when |x| exceeds the divergence radius.
Trajectory SimulateMinSwitching(const SwitchedSystem& sys, const LfhdCandidate& cand,
                                const Eigen::VectorXd& x0,
                                const SimulationOptions& options = {});

}  // namespace slemma
