#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include <Eigen/Dense>

#include "slemma/homog_core.h"

namespace slemma {

/// Semi-tensor product of two column vectors: (u_1 v, u_2 v, ..., u_m v).
Eigen::VectorXd Stp(const Eigen::VectorXd& u, const Eigen::VectorXd& v);

/// x^0 = 1 and x^m = x ⋉ x^{m-1}.
Eigen::VectorXd StpPower(const Eigen::VectorXd& x, int m);

/// Position of x_{i_1} x_{i_2} ... x_{i_m} inside x^m (0-based variable
/// indices, first factor most significant).
int64_t StpIndex(const std::vector<int>& multi_index, int n);
std::vector<int> StpMultiIndex(int64_t index, int n, int m);

/// f(x) = f_0 + f_1 x^1 + ... + f_k x^k with sparse row vectors f_i.
class CoeffVecPolynomial {
 public:
  CoeffVecPolynomial(int n, int degree);

  /// Builds the representative whose nonzero entries sit at nondecreasing
  /// multi-indices. Requires integer powers without |.| factors.
  static CoeffVecPolynomial FromGeneralized(const GeneralizedPolynomial& p);

  int dim() const { return n_; }
  int degree() const { return k_; }

  void SetCoefficient(int i, int64_t index, double value);
  void AddCoefficient(int i, int64_t index, double value);
  double coefficient(int i, int64_t index) const;
  const std::map<int64_t, double>& coefficients(int i) const { return coeffs_.at(i); }

  double Evaluate(const Eigen::Ref<const Eigen::VectorXd>& x) const;

 private:
  void CheckSlot(int i, int64_t index) const;

  int n_;
  int k_;
  std::vector<std::map<int64_t, double>> coeffs_;
};

GeneralizedPolynomial ToGeneralized(const CoeffVecPolynomial& p);

/// f~(x, t) = f_0 t^k + f_1 x t^{k-1} + ... + f_k x^k, the extra variable
/// appended last. Throws ArgumentError if the degree exceeds k or a power is
/// not a nonnegative integer.
GeneralizedPolynomial Homogenize(const GeneralizedPolynomial& p, int k);
GeneralizedPolynomial Homogenize(const CoeffVecPolynomial& p, int k);

}  // namespace slemma
