#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "slemma/homog_core.h"
#include "slemma/stp_poly.h"
#include "slemma/switched_systems.h"

namespace slemma {

inline constexpr int kProblemSchemaVersion = 1;

/// Optional per-file choices used when a command-line flag is absent.
struct ProblemDefaults {
  std::optional<std::pair<std::string, std::string>> pair;
  std::optional<std::string> system;
  std::optional<std::string> lyapunov;
  std::optional<Eigen::VectorXd> z1;
  std::optional<Eigen::VectorXd> z2;
  std::optional<Eigen::VectorXd> x0;
  std::optional<std::vector<double>> lambda;
};

struct ProblemFile {
  int version{kProblemSchemaVersion};
  Dilation dilation{Dilation::Trivial(1)};
  std::vector<std::string> variables;
  /// Every function, coefficient-vector literals included, as a generalized
  /// polynomial.
  std::map<std::string, GeneralizedPolynomial> functions;
  /// Functions given as coefficient vectors, in their original form.
  std::map<std::string, CoeffVecPolynomial> coeff_functions;
  std::map<std::string, SwitchedSystem> systems;
  std::map<std::string, GeneralizedPolynomial> lyapunov;
  ProblemDefaults defaults;

  int dim() const { return static_cast<int>(variables.size()); }
  const GeneralizedPolynomial& function(const std::string& name) const;
  const SwitchedSystem& system(const std::string& name) const;
  const GeneralizedPolynomial& lyapunov_candidate(const std::string& name) const;
};

/// Throws ParseError with a message naming the offending entry.
ProblemFile ParseProblem(const std::string& json_text);
ProblemFile LoadProblem(const std::string& path);

/// Parses one polynomial literal (term list) in n variables.
GeneralizedPolynomial ParsePolynomialLiteral(const std::string& json_text, int n);

}  // namespace slemma
