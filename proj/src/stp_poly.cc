#include "slemma/stp_poly.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "slemma/errors.h"

namespace slemma {

Eigen::VectorXd Stp(const Eigen::VectorXd& u, const Eigen::VectorXd& v) {
  Eigen::VectorXd out(u.size() * v.size());
  for (Eigen::Index i = 0; i < u.size(); ++i) {
    out.segment(i * v.size(), v.size()) = u[i] * v;
  }
  return out;
}

Eigen::VectorXd StpPower(const Eigen::VectorXd& x, int m) {
  if (m < 0) throw ArgumentError("stp power needs m >= 0");
  if (m == 0) return Eigen::VectorXd::Ones(1);
  return Stp(x, StpPower(x, m - 1));
}

int64_t StpIndex(const std::vector<int>& multi_index, int n) {
  int64_t idx = 0;
  for (int v : multi_index) {
    if (v < 0 || v >= n) throw ArgumentError("variable index out of range");
    idx = idx * n + v;
  }
  return idx;
}

std::vector<int> StpMultiIndex(int64_t index, int n, int m) {
  std::vector<int> out(m);
  for (int t = m - 1; t >= 0; --t) {
    out[t] = static_cast<int>(index % n);
    index /= n;
  }
  return out;
}

CoeffVecPolynomial::CoeffVecPolynomial(int n, int degree)
    : n_(n), k_(degree), coeffs_(degree + 1) {
  if (n < 1) throw ArgumentError("coefficient-vector polynomial needs n >= 1");
  if (degree < 0) throw ArgumentError("degree must be >= 0");
  const double entries = std::pow(static_cast<double>(n), degree);
  if (entries > static_cast<double>(std::numeric_limits<int64_t>::max() / 2)) {
    throw ArgumentError("n^k overflows the coefficient index");
  }
}

void CoeffVecPolynomial::CheckSlot(int i, int64_t index) const {
  if (i < 0 || i > k_) throw ArgumentError("coefficient degree out of range");
  int64_t size = 1;
  for (int t = 0; t < i; ++t) size *= n_;
  if (index < 0 || index >= size) {
    throw ArgumentError("coefficient index " + std::to_string(index) +
                        " out of range for degree " + std::to_string(i));
  }
}

void CoeffVecPolynomial::SetCoefficient(int i, int64_t index, double value) {
  CheckSlot(i, index);
  if (value == 0.0) {
    coeffs_[i].erase(index);
  } else {
    coeffs_[i][index] = value;
  }
}

void CoeffVecPolynomial::AddCoefficient(int i, int64_t index, double value) {
  CheckSlot(i, index);
  SetCoefficient(i, index, coefficient(i, index) + value);
}

double CoeffVecPolynomial::coefficient(int i, int64_t index) const {
  CheckSlot(i, index);
  auto it = coeffs_[i].find(index);
  return it == coeffs_[i].end() ? 0.0 : it->second;
}

double CoeffVecPolynomial::Evaluate(const Eigen::Ref<const Eigen::VectorXd>& x) const {
  if (x.size() != n_) throw ArgumentError("dimension mismatch");
  double total = 0.0;
  for (int i = 0; i <= k_; ++i) {
    for (const auto& [index, c] : coeffs_[i]) {
      double v = c;
      for (int var : StpMultiIndex(index, n_, i)) v *= x[var];
      total += v;
    }
  }
  return total;
}

CoeffVecPolynomial CoeffVecPolynomial::FromGeneralized(const GeneralizedPolynomial& p) {
  if (!p.HasIntegerPowers()) {
    throw ArgumentError("coefficient vectors need integer powers without |.|");
  }
  const int n = std::max(p.dim(), 1);
  CoeffVecPolynomial out(n, static_cast<int>(std::lround(p.TotalDegree())));
  for (const auto& t : p.terms()) {
    std::vector<int> mi;
    for (int v = 0; v < p.dim(); ++v) {
      for (int64_t e = 0; e < t.powers[v].num(); ++e) mi.push_back(v);
    }
    out.AddCoefficient(static_cast<int>(mi.size()), StpIndex(mi, n), t.coeff);
  }
  return out;
}

GeneralizedPolynomial ToGeneralized(const CoeffVecPolynomial& p) {
  const int n = p.dim();
  std::vector<SignedMonomial> terms;
  for (int i = 0; i <= p.degree(); ++i) {
    for (const auto& [index, c] : p.coefficients(i)) {
      std::vector<int64_t> counts(n, 0);
      for (int var : StpMultiIndex(index, n, i)) ++counts[var];
      std::vector<Exponent> powers(n);
      for (int v = 0; v < n; ++v) powers[v] = Exponent(counts[v]);
      terms.push_back(MakeMonomial(c, std::move(powers)));
    }
  }
  return GeneralizedPolynomial(n, std::move(terms));
}

GeneralizedPolynomial Homogenize(const GeneralizedPolynomial& p, int k) {
  if (k < 0) throw ArgumentError("target degree must be >= 0");
  if (!p.HasIntegerPowers()) {
    throw ArgumentError("homogenization needs integer powers without |.|");
  }
  const int n = p.dim();
  std::vector<SignedMonomial> terms;
  for (const auto& t : p.terms()) {
    int64_t deg = 0;
    for (const auto& e : t.powers) deg += e.num();
    if (deg > k) {
      throw ArgumentError("polynomial degree " + std::to_string(deg) +
                          " exceeds target degree " + std::to_string(k));
    }
    std::vector<Exponent> powers = t.powers;
    powers.push_back(Exponent(k - deg));
    terms.push_back(MakeMonomial(t.coeff, std::move(powers)));
  }
  return GeneralizedPolynomial(n + 1, std::move(terms));
}

GeneralizedPolynomial Homogenize(const CoeffVecPolynomial& p, int k) {
  if (p.degree() > k) {
    // Trailing zero blocks do not raise the degree.
    for (int i = k + 1; i <= p.degree(); ++i) {
      if (!p.coefficients(i).empty()) {
        throw ArgumentError("polynomial degree exceeds target degree " +
                            std::to_string(k));
      }
    }
  }
  return Homogenize(ToGeneralized(p), k);
}

}  // namespace slemma
