#include "slemma/homog_core.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <sstream>

#include "slemma/errors.h"

namespace slemma {

Exponent::Exponent(int64_t num, int64_t den) {
  if (den <= 0) throw ArgumentError("exponent denominator must be positive");
  if (num < 0) throw ArgumentError("exponent must be nonnegative");
  const int64_t g = std::gcd(num, den);
  num_ = num / (g == 0 ? 1 : g);
  den_ = den / (g == 0 ? 1 : g);
  if (num_ == 0) den_ = 1;
}

Exponent Exponent::operator+(const Exponent& other) const {
  return Exponent(num_ * other.den_ + other.num_ * den_, den_ * other.den_);
}

Exponent Exponent::operator-(const Exponent& other) const {
  const int64_t num = num_ * other.den_ - other.num_ * den_;
  if (num < 0) throw ArgumentError("negative exponent");
  return Exponent(num, den_ * other.den_);
}

Exponent Exponent::operator*(const Exponent& other) const {
  return Exponent(num_ * other.num_, den_ * other.den_);
}

std::strong_ordering Exponent::operator<=>(const Exponent& other) const {
  return (num_ * other.den_) <=> (other.num_ * den_);
}

std::string Exponent::ToString() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

Dilation::Dilation(std::vector<double> weights, double norm_param)
    : weights_(std::move(weights)), norm_param_(norm_param) {
  if (weights_.empty()) throw ArgumentError("dilation needs n >= 1");
  for (double r : weights_) {
    if (!(r >= 1.0) || !std::isfinite(r)) {
      throw ArgumentError("dilation weights must be >= 1");
    }
  }
  if (!(norm_param_ > 0.0) || !std::isfinite(norm_param_)) {
    throw ArgumentError("sphere norm parameter l must be > 0");
  }
}

Dilation Dilation::Trivial(int n, double norm_param) {
  return Dilation(std::vector<double>(std::max(n, 0), 1.0), norm_param);
}

bool Dilation::is_trivial() const {
  return std::all_of(weights_.begin(), weights_.end(),
                     [](double r) { return r == 1.0; });
}

Eigen::VectorXd Dilation::Scale(double eps,
                                const Eigen::Ref<const Eigen::VectorXd>& x) const {
  if (x.size() != dim()) throw ArgumentError("dimension mismatch");
  Eigen::VectorXd y(x.size());
  for (int i = 0; i < dim(); ++i) y[i] = std::pow(eps, weights_[i]) * x[i];
  return y;
}

double Dilation::SphereFunction(const Eigen::Ref<const Eigen::VectorXd>& x) const {
  if (x.size() != dim()) throw ArgumentError("dimension mismatch");
  double s = 0.0;
  for (int i = 0; i < dim(); ++i) {
    s += std::pow(std::abs(x[i]), norm_param_ / weights_[i]);
  }
  return s;
}

double SignedMonomial::Evaluate(const Eigen::Ref<const Eigen::VectorXd>& x) const {
  if (x.size() != dim()) throw ArgumentError("dimension mismatch");
  double v = coeff;
  for (int i = 0; i < dim(); ++i) {
    if (powers[i].is_zero()) continue;
    const double xi = x[i];
    if (xi == 0.0) return 0.0;
    v *= std::pow(std::abs(xi), powers[i].value());
    if (sign_flags[i] && xi < 0) v = -v;
  }
  return v;
}

double SignedMonomial::WeightedDegree(const Dilation& d) const {
  if (d.dim() != dim()) throw ArgumentError("dimension mismatch");
  double k = 0.0;
  for (int i = 0; i < dim(); ++i) k += d.weight(i) * powers[i].value();
  return k;
}

int SignedMonomial::SignCount() const {
  return static_cast<int>(std::count(sign_flags.begin(), sign_flags.end(), true));
}

bool DefaultSignFlag(const Exponent& p) {
  return !p.is_zero() && p.num() % 2 != 0;
}

SignedMonomial MakeMonomial(double coeff, std::vector<Exponent> powers) {
  SignedMonomial m;
  m.coeff = coeff;
  m.sign_flags.resize(powers.size());
  for (size_t i = 0; i < powers.size(); ++i) {
    m.sign_flags[i] = DefaultSignFlag(powers[i]);
  }
  m.powers = std::move(powers);
  return m;
}

namespace {

using TermKey = std::pair<std::vector<Exponent>, std::vector<bool>>;

struct TermKeyLess {
  // Higher powers first so that printed output starts with leading terms.
  bool operator()(const TermKey& a, const TermKey& b) const {
    if (a.first != b.first) return a.first > b.first;
    return a.second < b.second;
  }
};

}  // namespace

GeneralizedPolynomial::GeneralizedPolynomial(int n) : n_(n) {
  if (n < 0) throw ArgumentError("negative dimension");
}

GeneralizedPolynomial::GeneralizedPolynomial(int n, std::vector<SignedMonomial> terms)
    : n_(n), terms_(std::move(terms)) {
  if (n < 0) throw ArgumentError("negative dimension");
  Canonicalize();
}

GeneralizedPolynomial GeneralizedPolynomial::Constant(int n, double c) {
  return GeneralizedPolynomial(n, {MakeMonomial(c, std::vector<Exponent>(n))});
}

GeneralizedPolynomial GeneralizedPolynomial::Variable(int n, int i) {
  if (i < 0 || i >= n) throw ArgumentError("variable index out of range");
  std::vector<Exponent> powers(n);
  powers[i] = Exponent(1);
  return GeneralizedPolynomial(n, {MakeMonomial(1.0, std::move(powers))});
}

void GeneralizedPolynomial::Canonicalize() {
  std::map<TermKey, double, TermKeyLess> merged;
  for (auto& t : terms_) {
    if (t.dim() != n_ || static_cast<int>(t.sign_flags.size()) != n_) {
      throw ArgumentError("monomial dimension does not match polynomial");
    }
    if (!std::isfinite(t.coeff)) throw ArgumentError("non-finite coefficient");
    for (int i = 0; i < n_; ++i) {
      if (t.powers[i].is_zero() && t.sign_flags[i]) {
        throw ArgumentError("sign flag requires a positive power");
      }
    }
    merged[{t.powers, t.sign_flags}] += t.coeff;
  }
  terms_.clear();
  for (auto& [key, c] : merged) {
    if (std::abs(c) < 1e-15) continue;
    terms_.push_back(SignedMonomial{c, key.first, key.second});
  }
  Compile();
}

void GeneralizedPolynomial::Compile() {
  compiled_.clear();
  compiled_.reserve(terms_.size());
  for (const auto& t : terms_) {
    CompiledTerm ct{t.coeff, {}};
    for (int i = 0; i < n_; ++i) {
      if (t.powers[i].is_zero()) continue;
      const bool integral = t.powers[i].is_integer() && t.powers[i].num() <= 64;
      ct.factors.push_back(Factor{i, t.powers[i].value(),
                                  integral ? static_cast<int>(t.powers[i].num()) : -1,
                                  t.sign_flags[i]});
    }
    compiled_.push_back(std::move(ct));
  }
}

void GeneralizedPolynomial::CheckDim(const Eigen::Ref<const Eigen::VectorXd>& x) const {
  if (x.size() != n_) {
    throw ArgumentError("point dimension " + std::to_string(x.size()) +
                        " does not match polynomial dimension " + std::to_string(n_));
  }
}

double GeneralizedPolynomial::Evaluate(const Eigen::Ref<const Eigen::VectorXd>& x) const {
  CheckDim(x);
  double total = 0.0;
  for (const auto& t : compiled_) {
    double v = t.coeff;
    for (const auto& f : t.factors) {
      const double xi = x[f.var];
      if (xi == 0.0) {
        v = 0.0;
        break;
      }
      double a = std::abs(xi);
      double m;
      if (f.int_power >= 0) {
        m = 1.0;
        for (int e = f.int_power; e > 0; e >>= 1) {
          if (e & 1) m *= a;
          a *= a;
        }
      } else {
        m = std::pow(a, f.power);
      }
      v *= m;
      if (f.sign && xi < 0) v = -v;
    }
    total += v;
  }
  return total;
}

GeneralizedPolynomial GeneralizedPolynomial::Differentiate(int i) const {
  if (i < 0 || i >= n_) throw ArgumentError("variable index out of range");
  std::vector<SignedMonomial> out;
  for (const auto& t : terms_) {
    const Exponent& p = t.powers[i];
    if (p.is_zero()) continue;
    if (p < Exponent(1) || (p == Exponent(1) && !t.sign_flags[i])) {
      throw DifferentiationError("term with power " + p.ToString() + " in x" +
                                 std::to_string(i + 1) +
                                 " is not continuously differentiable at 0");
    }
    SignedMonomial d = t;
    d.coeff *= p.value();
    d.powers[i] = p - Exponent(1);
    d.sign_flags[i] = !t.sign_flags[i];
    if (d.powers[i].is_zero()) d.sign_flags[i] = false;
    out.push_back(std::move(d));
  }
  return GeneralizedPolynomial(n_, std::move(out));
}

bool GeneralizedPolynomial::HasIntegerPowers() const {
  for (const auto& t : terms_) {
    for (int i = 0; i < n_; ++i) {
      if (!t.powers[i].is_integer()) return false;
      // |x|^p with odd p, or sgn(x) x^p with even p, is not a polynomial.
      if (t.sign_flags[i] != DefaultSignFlag(t.powers[i])) return false;
    }
  }
  return true;
}

double GeneralizedPolynomial::TotalDegree() const {
  double k = 0.0;
  for (const auto& t : terms_) {
    double s = 0.0;
    for (const auto& p : t.powers) s += p.value();
    k = std::max(k, s);
  }
  return k;
}

GeneralizedPolynomial GeneralizedPolynomial::operator+(
    const GeneralizedPolynomial& other) const {
  if (other.n_ != n_) throw ArgumentError("dimension mismatch");
  std::vector<SignedMonomial> all = terms_;
  all.insert(all.end(), other.terms_.begin(), other.terms_.end());
  return GeneralizedPolynomial(n_, std::move(all));
}

GeneralizedPolynomial GeneralizedPolynomial::operator-(
    const GeneralizedPolynomial& other) const {
  return *this + (-other);
}

GeneralizedPolynomial GeneralizedPolynomial::operator*(
    const GeneralizedPolynomial& other) const {
  if (other.n_ != n_) throw ArgumentError("dimension mismatch");
  std::vector<SignedMonomial> out;
  out.reserve(terms_.size() * other.terms_.size());
  for (const auto& a : terms_) {
    for (const auto& b : other.terms_) {
      SignedMonomial m;
      m.coeff = a.coeff * b.coeff;
      m.powers.resize(n_);
      m.sign_flags.resize(n_);
      for (int i = 0; i < n_; ++i) {
        m.powers[i] = a.powers[i] + b.powers[i];
        m.sign_flags[i] = (a.sign_flags[i] != b.sign_flags[i]);
        if (m.powers[i].is_zero()) m.sign_flags[i] = false;
      }
      out.push_back(std::move(m));
    }
  }
  return GeneralizedPolynomial(n_, std::move(out));
}

GeneralizedPolynomial GeneralizedPolynomial::operator*(double c) const {
  std::vector<SignedMonomial> out = terms_;
  for (auto& t : out) t.coeff *= c;
  return GeneralizedPolynomial(n_, std::move(out));
}

GeneralizedPolynomial GeneralizedPolynomial::operator-() const { return *this * -1.0; }

GeneralizedPolynomial operator*(double c, const GeneralizedPolynomial& p) { return p * c; }

std::string GeneralizedPolynomial::ToString(const std::vector<std::string>& names) const {
  if (terms_.empty()) return "0";
  auto name = [&](int i) {
    return i < static_cast<int>(names.size()) ? names[i] : "x" + std::to_string(i + 1);
  };
  std::ostringstream os;
  os.precision(12);
  bool first = true;
  for (const auto& t : terms_) {
    double c = t.coeff;
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    c = std::abs(c);
    std::vector<std::string> factors;
    for (int i = 0; i < n_; ++i) {
      const Exponent& p = t.powers[i];
      if (p.is_zero()) continue;
      const bool plain = p.is_integer() && t.sign_flags[i] == DefaultSignFlag(p);
      std::string f;
      if (plain) {
        f = name(i);
        if (p.num() != 1) f += "^" + p.ToString();
      } else {
        f = "|" + name(i) + "|";
        if (!(p == Exponent(1))) f += "^(" + p.ToString() + ")";
        if (t.sign_flags[i]) f += "*sgn(" + name(i) + ")";
      }
      factors.push_back(f);
    }
    if (factors.empty() || c != 1.0) {
      os << c;
      if (!factors.empty()) os << "*";
    }
    for (size_t j = 0; j < factors.size(); ++j) {
      if (j) os << "*";
      os << factors[j];
    }
    first = false;
  }
  return os.str();
}

double Evaluate(const GeneralizedPolynomial& p,
                const Eigen::Ref<const Eigen::VectorXd>& x) {
  return p.Evaluate(x);
}

std::optional<double> HomogeneityDegree(const GeneralizedPolynomial& p,
                                        const Dilation& d) {
  if (p.is_zero()) {
    throw DegenerateError("the zero polynomial is homogeneous of every degree");
  }
  if (d.dim() != p.dim()) throw ArgumentError("dilation dimension mismatch");
  const double k = p.terms().front().WeightedDegree(d);
  for (const auto& t : p.terms()) {
    if (std::abs(t.WeightedDegree(d) - k) > 1e-12 * std::max(1.0, std::abs(k))) {
      return std::nullopt;
    }
  }
  return k;
}

Parity ClassifyParity(const GeneralizedPolynomial& p) {
  bool any_even = false;
  bool any_odd = false;
  for (const auto& t : p.terms()) {
    if (t.SignCount() % 2 == 0) {
      any_even = true;
    } else {
      any_odd = true;
    }
  }
  if (any_even && any_odd) return Parity::kNeither;
  return any_odd ? Parity::kOdd : Parity::kEven;
}

std::string ToString(Parity parity) {
  switch (parity) {
    case Parity::kEven:
      return "even";
    case Parity::kOdd:
      return "odd";
    case Parity::kNeither:
      return "neither";
  }
  return "neither";
}

SpherePoint ProjectToSphere(const Eigen::Ref<const Eigen::VectorXd>& x,
                            const Dilation& d) {
  if (x.size() != d.dim()) throw ArgumentError("dimension mismatch");
  const double s = d.SphereFunction(x);
  if (!(s > 0.0)) throw ArgumentError("cannot project the origin onto the sphere");
  const double eps = std::pow(s, -1.0 / d.norm_param());
  SpherePoint out;
  out.coords = d.Scale(eps, x);
  return out;
}

Eigen::Vector2d ThetaCurvePoint(double theta, const Dilation& d) {
  if (d.dim() != 2) throw ArgumentError("theta curve needs n = 2");
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  return {std::copysign(std::pow(std::abs(c), d.weight(0)), c),
          std::copysign(std::pow(std::abs(s), d.weight(1)), s)};
}

double UnitDouble(uint64_t bits) { return static_cast<double>(bits >> 11) * 0x1.0p-53; }

}  // namespace slemma
