#include "slemma/problem_file.h"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "slemma/errors.h"

namespace slemma {
namespace {

using nlohmann::json;

[[noreturn]] void Fail(const std::string& where, const std::string& what) {
  throw ParseError(where + ": " + what);
}

int64_t ReadInt(const json& j, const std::string& where) {
  if (!j.is_number_integer()) Fail(where, "expected an integer");
  return j.get<int64_t>();
}

double ReadNumber(const json& j, const std::string& where) {
  if (!j.is_number()) Fail(where, "expected a number");
  return j.get<double>();
}

Exponent ReadPower(const json& j, const std::string& where) {
  int64_t num = 0;
  int64_t den = 1;
  if (j.is_number_integer()) {
    num = j.get<int64_t>();
  } else if (j.is_object()) {
    if (!j.contains("num")) Fail(where, "power needs \"num\"");
    num = ReadInt(j.at("num"), where + ".num");
    if (j.contains("den")) den = ReadInt(j.at("den"), where + ".den");
  } else {
    Fail(where, "power must be an integer or {\"num\", \"den\"}");
  }
  if (num < 0) Fail(where, "powers must be nonnegative");
  if (den <= 0 || den % 2 == 0) Fail(where, "denominator must be a positive odd integer");
  return Exponent(num, den);
}

GeneralizedPolynomial ReadTermList(const json& j, int n, const std::string& where) {
  if (!j.is_array()) Fail(where, "expected a list of terms");
  std::vector<SignedMonomial> terms;
  for (std::size_t t = 0; t < j.size(); ++t) {
    const std::string tw = where + "[" + std::to_string(t) + "]";
    const json& term = j[t];
    if (!term.is_object()) Fail(tw, "term must be an object");
    for (const auto& [key, _] : term.items()) {
      if (key != "coeff" && key != "powers" && key != "abs") Fail(tw, "unknown key \"" + key + "\"");
    }
    if (!term.contains("coeff") || !term.contains("powers")) {
      Fail(tw, "term needs \"coeff\" and \"powers\"");
    }
    const double c = ReadNumber(term.at("coeff"), tw + ".coeff");
    const json& pw = term.at("powers");
    if (!pw.is_array() || static_cast<int>(pw.size()) != n) {
      Fail(tw + ".powers", "expected " + std::to_string(n) + " powers");
    }
    std::vector<Exponent> powers;
    for (std::size_t i = 0; i < pw.size(); ++i) {
      powers.push_back(ReadPower(pw[i], tw + ".powers[" + std::to_string(i) + "]"));
    }
    SignedMonomial m = MakeMonomial(c, powers);
    if (term.contains("abs")) {
      const json& ab = term.at("abs");
      if (!ab.is_array() || static_cast<int>(ab.size()) != n) {
        Fail(tw + ".abs", "expected " + std::to_string(n) + " booleans");
      }
      for (int i = 0; i < n; ++i) {
        if (!ab[i].is_boolean()) Fail(tw + ".abs", "expected booleans");
        if (ab[i].get<bool>()) m.sign_flags[i] = false;
      }
    }
    terms.push_back(std::move(m));
  }
  return GeneralizedPolynomial(n, std::move(terms));
}

CoeffVecPolynomial ReadCoeffVec(const json& j, int n, const std::string& where) {
  for (const auto& [key, _] : j.items()) {
    if (key != "degree" && key != "coeffs") Fail(where, "unknown key \"" + key + "\"");
  }
  if (!j.contains("degree") || !j.contains("coeffs")) {
    Fail(where, "coefficient vector needs \"degree\" and \"coeffs\"");
  }
  const int64_t k = ReadInt(j.at("degree"), where + ".degree");
  if (k < 0 || k > 32) Fail(where + ".degree", "degree out of range");
  CoeffVecPolynomial p(n, static_cast<int>(k));
  const json& cs = j.at("coeffs");
  if (!cs.is_object()) Fail(where + ".coeffs", "expected an object");
  for (const auto& [key, value] : cs.items()) {
    const std::string kw = where + ".coeffs[\"" + key + "\"]";
    const auto colon = key.find(':');
    if (colon == std::string::npos) Fail(kw, "key must look like \"i:index\"");
    int64_t i = 0;
    int64_t index = 0;
    try {
      std::size_t used = 0;
      i = std::stoll(key.substr(0, colon), &used);
      if (used != colon) throw std::invalid_argument("");
      const std::string rest = key.substr(colon + 1);
      index = std::stoll(rest, &used);
      if (used != rest.size()) throw std::invalid_argument("");
    } catch (const std::exception&) {
      Fail(kw, "key must look like \"i:index\"");
    }
    try {
      p.AddCoefficient(static_cast<int>(i), index, ReadNumber(value, kw));
    } catch (const ArgumentError& e) {
      Fail(kw, e.what());
    }
  }
  return p;
}

Eigen::VectorXd ReadVector(const json& j, int n, const std::string& where) {
  if (!j.is_array() || static_cast<int>(j.size()) != n) {
    Fail(where, "expected " + std::to_string(n) + " numbers");
  }
  Eigen::VectorXd v(n);
  for (int i = 0; i < n; ++i) v[i] = ReadNumber(j[i], where);
  return v;
}

std::string ReadString(const json& j, const std::string& where) {
  if (!j.is_string()) Fail(where, "expected a string");
  return j.get<std::string>();
}

// A function reference by name or an inline term list.
GeneralizedPolynomial ResolveFunction(const json& j, const ProblemFile& p,
                                      const std::string& where) {
  if (j.is_string()) {
    const auto it = p.functions.find(j.get<std::string>());
    if (it == p.functions.end()) Fail(where, "unknown function \"" + j.get<std::string>() + "\"");
    return it->second;
  }
  return ReadTermList(j, p.dim(), where);
}

void CheckKeys(const json& j, const std::vector<std::string>& allowed, const std::string& where) {
  for (const auto& [key, _] : j.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      Fail(where, "unknown key \"" + key + "\"");
    }
  }
}

}  // namespace

const GeneralizedPolynomial& ProblemFile::function(const std::string& name) const {
  const auto it = functions.find(name);
  if (it == functions.end()) throw ParseError("unknown function \"" + name + "\"");
  return it->second;
}

const SwitchedSystem& ProblemFile::system(const std::string& name) const {
  const auto it = systems.find(name);
  if (it == systems.end()) throw ParseError("unknown system \"" + name + "\"");
  return it->second;
}

const GeneralizedPolynomial& ProblemFile::lyapunov_candidate(const std::string& name) const {
  const auto it = lyapunov.find(name);
  if (it == lyapunov.end()) throw ParseError("unknown Lyapunov candidate \"" + name + "\"");
  return it->second;
}

ProblemFile ParseProblem(const std::string& json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  if (!root.is_object()) Fail("problem", "top level must be an object");
  CheckKeys(root,
            {"version", "dilation", "variables", "functions", "systems", "lyapunov", "defaults"},
            "problem");
  ProblemFile p;
  if (!root.contains("version")) Fail("problem", "missing \"version\"");
  p.version = static_cast<int>(ReadInt(root.at("version"), "version"));
  if (p.version != kProblemSchemaVersion) {
    Fail("version", "unsupported schema version " + std::to_string(p.version));
  }
  if (!root.contains("variables")) Fail("problem", "missing \"variables\"");
  const json& vars = root.at("variables");
  if (!vars.is_array() || vars.empty()) Fail("variables", "expected a nonempty list of names");
  for (const auto& v : vars) p.variables.push_back(ReadString(v, "variables"));
  const int n = p.dim();

  p.dilation = Dilation::Trivial(n);
  if (root.contains("dilation")) {
    const json& d = root.at("dilation");
    if (!d.is_object()) Fail("dilation", "expected an object");
    CheckKeys(d, {"weights", "l"}, "dilation");
    std::vector<double> w(n, 1.0);
    if (d.contains("weights")) {
      const Eigen::VectorXd wv = ReadVector(d.at("weights"), n, "dilation.weights");
      w.assign(wv.data(), wv.data() + n);
    }
    const double l = d.contains("l") ? ReadNumber(d.at("l"), "dilation.l") : 2.0;
    try {
      p.dilation = Dilation(w, l);
    } catch (const ArgumentError& e) {
      Fail("dilation", e.what());
    }
  }

  if (root.contains("functions")) {
    const json& fs = root.at("functions");
    if (!fs.is_object()) Fail("functions", "expected an object");
    for (const auto& [name, lit] : fs.items()) {
      const std::string where = "functions." + name;
      if (lit.is_object()) {
        CoeffVecPolynomial cv = ReadCoeffVec(lit, n, where);
        p.functions.emplace(name, ToGeneralized(cv));
        p.coeff_functions.emplace(name, std::move(cv));
      } else {
        p.functions.emplace(name, ReadTermList(lit, n, where));
      }
    }
  }

  if (root.contains("systems")) {
    const json& ss = root.at("systems");
    if (!ss.is_object()) Fail("systems", "expected an object");
    for (const auto& [name, sys] : ss.items()) {
      const std::string where = "systems." + name;
      if (!sys.is_object() || !sys.contains("fields")) Fail(where, "system needs \"fields\"");
      CheckKeys(sys, {"fields"}, where);
      const json& fields = sys.at("fields");
      if (!fields.is_array()) Fail(where + ".fields", "expected a list of vector fields");
      std::vector<VectorField> vfs;
      for (std::size_t i = 0; i < fields.size(); ++i) {
        const std::string fw = where + ".fields[" + std::to_string(i) + "]";
        if (!fields[i].is_array() || static_cast<int>(fields[i].size()) != n) {
          Fail(fw, "expected " + std::to_string(n) + " components");
        }
        VectorField vf;
        for (int k = 0; k < n; ++k) {
          vf.push_back(ResolveFunction(fields[i][k], p, fw + "[" + std::to_string(k) + "]"));
        }
        vfs.push_back(std::move(vf));
      }
      try {
        p.systems.emplace(name, SwitchedSystem(n, std::move(vfs)));
      } catch (const ArgumentError& e) {
        Fail(where, e.what());
      }
    }
  }

  if (root.contains("lyapunov")) {
    const json& ls = root.at("lyapunov");
    if (!ls.is_object()) Fail("lyapunov", "expected an object");
    for (const auto& [name, v] : ls.items()) {
      p.lyapunov.emplace(name, ResolveFunction(v, p, "lyapunov." + name));
    }
  }

  if (root.contains("defaults")) {
    const json& d = root.at("defaults");
    if (!d.is_object()) Fail("defaults", "expected an object");
    CheckKeys(d, {"pair", "system", "lyapunov", "z1", "z2", "x0", "lambda"}, "defaults");
    if (d.contains("pair")) {
      const json& pr = d.at("pair");
      if (!pr.is_array() || pr.size() != 2) Fail("defaults.pair", "expected two function names");
      p.defaults.pair = {ReadString(pr[0], "defaults.pair"), ReadString(pr[1], "defaults.pair")};
      p.function(p.defaults.pair->first);
      p.function(p.defaults.pair->second);
    }
    if (d.contains("system")) {
      p.defaults.system = ReadString(d.at("system"), "defaults.system");
      p.system(*p.defaults.system);
    }
    if (d.contains("lyapunov")) {
      p.defaults.lyapunov = ReadString(d.at("lyapunov"), "defaults.lyapunov");
      p.lyapunov_candidate(*p.defaults.lyapunov);
    }
    if (d.contains("z1")) p.defaults.z1 = ReadVector(d.at("z1"), n, "defaults.z1");
    if (d.contains("z2")) p.defaults.z2 = ReadVector(d.at("z2"), n, "defaults.z2");
    if (d.contains("x0")) p.defaults.x0 = ReadVector(d.at("x0"), n, "defaults.x0");
    if (d.contains("lambda")) {
      const json& l = d.at("lambda");
      if (!l.is_array() || l.empty()) Fail("defaults.lambda", "expected a list of weights");
      std::vector<double> lam;
      for (const auto& x : l) lam.push_back(ReadNumber(x, "defaults.lambda"));
      p.defaults.lambda = std::move(lam);
    }
  }
  return p;
}

ProblemFile LoadProblem(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open problem file \"" + path + "\"");
  std::stringstream ss;
  ss << in.rdbuf();
  return ParseProblem(ss.str());
}

GeneralizedPolynomial ParsePolynomialLiteral(const std::string& json_text, int n) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  return ReadTermList(j, n, "literal");
}

}  // namespace slemma
