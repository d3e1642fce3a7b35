#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace slemma {

/// Nonnegative rational exponent num/den, always stored in lowest terms.
class Exponent {
 public:
  Exponent() = default;
  Exponent(int64_t num, int64_t den = 1);  // NOLINT(runtime/explicit)

  int64_t num() const { return num_; }
  int64_t den() const { return den_; }
  double value() const { return static_cast<double>(num_) / den_; }
  bool is_zero() const { return num_ == 0; }
  bool is_integer() const { return den_ == 1; }

  Exponent operator+(const Exponent& other) const;
  /// Throws ArgumentError if the result would be negative.
  Exponent operator-(const Exponent& other) const;
  Exponent operator*(const Exponent& other) const;

  bool operator==(const Exponent& other) const = default;
  std::strong_ordering operator<=>(const Exponent& other) const;

  std::string ToString() const;

 private:
  int64_t num_{0};
  int64_t den_{1};
};

/// Anisotropic scaling x -> (eps^{r_1} x_1, ..., eps^{r_n} x_n) together with
/// the exponent l of the generalized unit sphere sum_i |x_i|^{l/r_i} = 1.
class Dilation {
 public:
  explicit Dilation(std::vector<double> weights, double norm_param = 2.0);

  static Dilation Trivial(int n, double norm_param = 2.0);

  int dim() const { return static_cast<int>(weights_.size()); }
  const std::vector<double>& weights() const { return weights_; }
  double weight(int i) const { return weights_.at(i); }
  double norm_param() const { return norm_param_; }
  bool is_trivial() const;

  /// Applies the scaling by eps to x.
  Eigen::VectorXd Scale(double eps, const Eigen::Ref<const Eigen::VectorXd>& x) const;

  /// sum_i |x_i|^{l/r_i}
  double SphereFunction(const Eigen::Ref<const Eigen::VectorXd>& x) const;

 private:
  std::vector<double> weights_;
  double norm_param_;
};

/// coeff * prod_i |x_i|^{p_i} * sgn(x_i)^{s_i}
struct SignedMonomial {
  double coeff{0.0};
  std::vector<Exponent> powers;
  std::vector<bool> sign_flags;

  int dim() const { return static_cast<int>(powers.size()); }
  double Evaluate(const Eigen::Ref<const Eigen::VectorXd>& x) const;
  double WeightedDegree(const Dilation& d) const;
  /// Total number of sign factors, i.e. the term is odd iff this is odd.
  int SignCount() const;
};

/// Returns the sign flag a rational power num/den gets when written as x^{num/den}
/// with odd den: x^{a/b} is odd exactly when a is odd.
bool DefaultSignFlag(const Exponent& p);

/// Builds the monomial coeff * prod x_i^{powers_i} with the default sign
/// convention for each rational power.
SignedMonomial MakeMonomial(double coeff, std::vector<Exponent> powers);

/// A finite sum of signed monomials in n variables. Terms are kept canonical:
/// equal (powers, sign_flags) keys are merged and |coeff| < 1e-15 is dropped.
class GeneralizedPolynomial {
 public:
  /// The zero polynomial in n variables.
  explicit GeneralizedPolynomial(int n = 0);
  GeneralizedPolynomial(int n, std::vector<SignedMonomial> terms);

  static GeneralizedPolynomial Constant(int n, double c);
  /// The coordinate x_i (0-based).
  static GeneralizedPolynomial Variable(int n, int i);

  int dim() const { return n_; }
  const std::vector<SignedMonomial>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  double Evaluate(const Eigen::Ref<const Eigen::VectorXd>& x) const;
  double operator()(const Eigen::Ref<const Eigen::VectorXd>& x) const {
    return Evaluate(x);
  }

  /// Partial derivative in x_i by the power rule on |x|^p sgn(x)^s.
  /// Throws DifferentiationError for powers in (0,1) and for |x_i|.
  GeneralizedPolynomial Differentiate(int i) const;

  bool HasIntegerPowers() const;
  /// Largest plain total degree sum_i p_i over the terms (0 for zero).
  double TotalDegree() const;

  GeneralizedPolynomial operator+(const GeneralizedPolynomial& other) const;
  GeneralizedPolynomial operator-(const GeneralizedPolynomial& other) const;
  GeneralizedPolynomial operator*(const GeneralizedPolynomial& other) const;
  GeneralizedPolynomial operator*(double c) const;
  GeneralizedPolynomial operator-() const;

  std::string ToString(const std::vector<std::string>& names = {}) const;

 private:
  struct Factor {
    int var;
    double power;
    int int_power;  // -1 when the power is not an integer
    bool sign;
  };
  struct CompiledTerm {
    double coeff;
    std::vector<Factor> factors;
  };

  void Canonicalize();
  void Compile();
  void CheckDim(const Eigen::Ref<const Eigen::VectorXd>& x) const;

  int n_{0};
  std::vector<SignedMonomial> terms_;
  std::vector<CompiledTerm> compiled_;
};

GeneralizedPolynomial operator*(double c, const GeneralizedPolynomial& p);

double Evaluate(const GeneralizedPolynomial& p,
                const Eigen::Ref<const Eigen::VectorXd>& x);

/// Returns k if every term has weighted degree k (within 1e-12), else nullopt.
/// Throws DegenerateError for the zero polynomial.
std::optional<double> HomogeneityDegree(const GeneralizedPolynomial& p,
                                        const Dilation& d);

enum class Parity { kEven, kOdd, kNeither };

Parity ClassifyParity(const GeneralizedPolynomial& p);
std::string ToString(Parity parity);

/// A point on the generalized unit sphere of a dilation.
struct SpherePoint {
  Eigen::VectorXd coords;
  /// Curve parameter for theta-grid samples.
  std::optional<double> theta;
  int index{0};
};

/// Maps nonzero x along its dilation ray onto the generalized unit sphere.
SpherePoint ProjectToSphere(const Eigen::Ref<const Eigen::VectorXd>& x,
                            const Dilation& d);

/// The point (|cos t|^{r_1} sgn cos t, |sin t|^{r_2} sgn sin t).
Eigen::Vector2d ThetaCurvePoint(double theta, const Dilation& d);

inline constexpr uint64_t kDefaultSeed = 1729;

enum class SamplingScheme { kAuto, kThetaGrid, kHalton };

struct SamplingOptions {
  /// 0 selects the default count for the dimension.
  int count{0};
  uint64_t seed{kDefaultSeed};
  SamplingScheme scheme{SamplingScheme::kAuto};
  /// Shift of the theta grid, as a fraction of one grid step.
  double theta_offset{0.0};
};

int DefaultSampleCount(int n);
int ResolvedSampleCount(int n, const SamplingOptions& options);

/// Deterministic sample of the generalized unit sphere. n = 1 yields {1, -1};
/// n = 2 defaults to the uniform theta grid; otherwise a seeded, rotated
/// Halton sequence pushed through Box-Muller and projected.
std::vector<SpherePoint> SphereSamples(const Dilation& d,
                                       const SamplingOptions& options = {});

/// Deterministic uniform double in [0, 1) from a 64-bit generator output.
double UnitDouble(uint64_t bits);

}  // namespace slemma
