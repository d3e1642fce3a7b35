#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "slemma/homog_core.h"
#include "slemma/image_analysis.h"
#include "slemma/stp_poly.h"

namespace slemma {

enum class FailureReason {
  kNotCopositive,
  kSectorGePi,
  kCommonZero,
  kNhsItem1,
  kNhsItem2,
  kNhsItem3,
  kNhsItem4,
  /// The derived multiplier did not survive the fresh-sample check.
  kVerificationFailed,
};

/// Machine-readable code, e.g. "NOT_COPOSITIVE".
std::string ReasonCode(FailureReason reason);

struct CheckRecord {
  std::string name;
  bool passed{false};
  double value{0.0};
  std::string detail;
};

struct SLemmaOptions {
  SamplingOptions sampling;
  /// Strict positivity floor relative to max|f| + xi max|g|.
  double positivity_rel{1e-8};
  /// Non-strict tolerance relative to the same scale.
  double tolerance_rel{1e-9};
  double xi_min{1e-6};
  double xi_max{1e6};
  int xi_grid{121};
  /// Half-width of the box used to re-check f - xi g on t = 1.
  double box_radius{10.0};
  /// Angular tolerance for the direction-collision checks.
  double collision_tol{1e-6};
  AffineCoverOptions affine;
};

struct MultiplierCertificate {
  double xi{0.0};
  bool strict{false};
  /// min of f - xi g over the verification samples.
  double margin{0.0};
  /// The same minimum over the derivation samples.
  double derive_margin{0.0};
  double initial_xi{0.0};
  double initial_margin{0.0};
  double threshold{0.0};
  int sample_count{0};
  int verify_sample_count{0};
  uint64_t seed{kDefaultSeed};
  uint64_t verify_seed{kDefaultSeed};
  Dilation dilation{Dilation::Trivial(1)};
  std::vector<CheckRecord> checks;
};

struct MultiplierFailure {
  FailureReason reason{FailureReason::kNotCopositive};
  std::string message;
  std::optional<Eigen::VectorXd> witness;
  std::vector<CheckRecord> checks;
};

using MultiplierOutcome = std::variant<MultiplierCertificate, MultiplierFailure>;

inline bool Succeeded(const MultiplierOutcome& o) {
  return std::holds_alternative<MultiplierCertificate>(o);
}

struct CopositivityResult {
  bool holds{false};
  bool strict{false};
  /// No sample satisfied the constraint on g.
  bool vacuous{false};
  /// Smallest f over the admissible samples.
  double min_value{0.0};
  SpherePoint witness;
  double threshold{0.0};
  int admissible{0};
  int sample_count{0};
};

/// strict: min f over samples with g >= -tol exceeds the positivity floor.
/// non-strict: min f over samples with g >= tol is >= -tol.
CopositivityResult IsCopositive(const GeneralizedPolynomial& f,
                                const GeneralizedPolynomial& g, const Dilation& d,
                                bool strict, const SLemmaOptions& options = {});

struct ShsConditionReport {
  bool holds{false};
  double symmetrized_gap{0.0};
  /// Unit vector (a, b) in the middle of the uncovered symmetrized arc.
  std::optional<Eigen::Vector2d> witness_direction;
  double resolution{0.0};
};

/// Throws ArgumentError unless f and g are even.
ShsConditionReport ShsCondition(const GeneralizedPolynomial& f,
                                const GeneralizedPolynomial& g, const Dilation& d,
                                const SLemmaOptions& options = {});

struct MarginResult {
  double margin{0.0};
  SpherePoint witness;
  double max_abs_f{0.0};
  double max_abs_g{0.0};
  int sample_count{0};
};

/// min of f - xi g over the sphere samples.
MarginResult MultiplierMargin(const GeneralizedPolynomial& f, const GeneralizedPolynomial& g,
                              const Dilation& d, double xi,
                              const SamplingOptions& sampling = {});

/// Sample set disjoint from `sampling`: a finer half-step-shifted theta grid
/// for n = 2 grids, the next seed with twice the points otherwise.
SamplingOptions VerificationSampling(const SamplingOptions& sampling, int n);

/// Searches xi > 0 with f - xi g > 0 on the sphere.
MultiplierOutcome FindStrictMultiplier(const GeneralizedPolynomial& f,
                                       const GeneralizedPolynomial& g, const Dilation& d,
                                       const SLemmaOptions& options = {});

/// Searches xi >= 0 with f - xi g >= 0 for a homogeneous pair.
MultiplierOutcome FindNonstrictMultiplier(const GeneralizedPolynomial& f,
                                          const GeneralizedPolynomial& g,
                                          const Dilation& d,
                                          const SLemmaOptions& options = {});

/// Non-homogeneous polynomials: checks the top-form and direction-collision
/// hypotheses, then runs the non-strict search on the homogenized pair and
/// re-checks t = 1 on the box [-R, R]^n.
MultiplierOutcome FindNhsMultiplier(const GeneralizedPolynomial& f,
                                    const GeneralizedPolynomial& g,
                                    const SLemmaOptions& options = {});
MultiplierOutcome FindNhsMultiplier(const CoeffVecPolynomial& f,
                                    const CoeffVecPolynomial& g,
                                    const SLemmaOptions& options = {});

/// Terms of p whose plain total degree equals k.
GeneralizedPolynomial TopForm(const GeneralizedPolynomial& p, int k);

struct BoxMargin {
  double margin{0.0};
  double tolerance{0.0};
  Eigen::VectorXd witness;
  int points{0};
};

/// min of f - xi g over a uniform grid on [-R, R]^n.
BoxMargin BoxCheck(const GeneralizedPolynomial& f, const GeneralizedPolynomial& g, double xi,
                   double radius, double tolerance_rel);

}  // namespace slemma
