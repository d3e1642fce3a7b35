#include "slemma/report_json.h"

#include <limits>

namespace slemma {
namespace {

const char* SchemeName(SamplingScheme s) {
  switch (s) {
    case SamplingScheme::kThetaGrid:
      return "theta_grid";
    case SamplingScheme::kHalton:
      return "halton";
    case SamplingScheme::kAuto:
      break;
  }
  return "auto";
}

Json Checks(const std::vector<CheckRecord>& checks) {
  Json a = Json::array();
  for (const auto& c : checks) a.push_back(ToJson(c));
  return a;
}

Json ArcsJson(const std::vector<Arc>& arcs) {
  Json a = Json::array();
  for (const auto& arc : arcs) {
    a.push_back(Json{{"start", arc.start}, {"end", arc.end()}, {"length", arc.length}});
  }
  return a;
}

}  // namespace

Json ToJson(const Eigen::VectorXd& v) {
  Json a = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

Json ToJson(const Dilation& d) {
  return Json{{"weights", d.weights()}, {"l", d.norm_param()}};
}

Json ToJson(const SamplingOptions& s, int n) {
  return Json{{"samples", ResolvedSampleCount(n, s)},
              {"seed", s.seed},
              {"scheme", SchemeName(s.scheme)},
              {"theta_offset", s.theta_offset}};
}

Json ToJson(const SpherePoint& p) {
  Json j{{"x", ToJson(p.coords)}, {"index", p.index}};
  if (p.theta) j["theta"] = *p.theta;
  return j;
}

Json ToJson(const CheckRecord& c) {
  Json j{{"name", c.name}, {"passed", c.passed}, {"value", c.value}};
  if (!c.detail.empty()) j["detail"] = c.detail;
  return j;
}

Json ToJson(const ImageSummary& s) {
  return Json{{"classification", ToString(s.classification)},
              {"phi", s.phi},
              {"largest_gap", s.largest_gap},
              {"gap_start", s.gap_start},
              {"arcs", ArcsJson(s.arcs)},
              {"boundary_closure", "numeric, closure untested"},
              {"resolution", s.resolution},
              {"degree", s.degree},
              {"sample_count", s.sample_count},
              {"seed", s.seed}};
}

Json ToJson(const ZeroMargin& z) {
  return Json{{"margin", z.margin},
              {"refined", z.refined},
              {"lower_bound", z.lower_bound},
              {"cells", z.cells},
              {"threshold", z.threshold},
              {"witness", ToJson(z.witness)}};
}

Json ToJson(const ConvexityViolation& v) {
  return Json{{"u", {v.u[0], v.u[1]}},
              {"v", {v.v[0], v.v[1]}},
              {"midpoint", {v.midpoint[0], v.midpoint[1]}},
              {"midpoint_angle", v.midpoint_angle},
              {"clearance", v.clearance}};
}

Json ToJson(const CopositivityResult& c) {
  return Json{{"holds", c.holds},
              {"strict", c.strict},
              {"vacuous", c.vacuous},
              {"min_value", c.min_value},
              {"threshold", c.threshold},
              {"admissible", c.admissible},
              {"sample_count", c.sample_count},
              {"witness", ToJson(c.witness)}};
}

Json ToJson(const ShsConditionReport& r) {
  Json j{{"holds", r.holds},
         {"symmetrized_gap", r.symmetrized_gap},
         {"resolution", r.resolution}};
  if (r.witness_direction) {
    j["witness_direction"] = {(*r.witness_direction)[0], (*r.witness_direction)[1]};
  }
  return j;
}

Json ToJson(const MultiplierCertificate& c) {
  return Json{{"status", "certificate"},
              {"xi", c.xi},
              {"strict", c.strict},
              {"margin", c.margin},
              {"derive_margin", c.derive_margin},
              {"initial_xi", c.initial_xi},
              {"initial_margin", c.initial_margin},
              {"threshold", c.threshold},
              {"sample_count", c.sample_count},
              {"seed", c.seed},
              {"verify_sample_count", c.verify_sample_count},
              {"verify_seed", c.verify_seed},
              {"dilation", ToJson(c.dilation)},
              {"checks", Checks(c.checks)}};
}

Json ToJson(const MultiplierFailure& f) {
  Json j{{"status", "failure"}, {"reason", ReasonCode(f.reason)}, {"message", f.message}};
  if (f.witness) j["witness"] = ToJson(*f.witness);
  j["checks"] = Checks(f.checks);
  return j;
}

Json ToJson(const MultiplierOutcome& o) {
  return std::visit([](const auto& v) { return ToJson(v); }, o);
}

Json ToJson(const ConvexCombination& c) { return Json(c.lambdas()); }

Json ToJson(const LfhdReport& r) {
  Json j{{"positive_definite", r.positive_definite},
         {"v_min", r.v_min},
         {"covered", r.covered},
         {"threshold", r.threshold},
         {"sample_count", r.sample_count},
         {"seed", r.seed},
         {"uncovered_count", r.uncovered.size()}};
  Json first = Json::array();
  for (std::size_t i = 0; i < r.uncovered.size() && i < 16; ++i) {
    first.push_back(ToJson(r.regions.at(r.uncovered[i]).point));
  }
  j["uncovered_examples"] = first;
  Json subs = Json::array();
  for (std::size_t i = 0; i < r.stable_fraction.size(); ++i) {
    Json s{{"subsystem", i + 1}, {"stable_fraction", r.stable_fraction[i]}};
    s["positive_direction"] =
        r.positive_direction[i] ? ToJson(*r.positive_direction[i]) : Json(nullptr);
    subs.push_back(s);
  }
  j["subsystems"] = subs;
  return j;
}

Json ToJson(const SynthesisOutcome& o) {
  if (const auto* f = std::get_if<SynthesisFailure>(&o)) {
    return Json{{"status", "failure"},
                {"reason", ReasonCode(f->reason)},
                {"message", f->message},
                {"checks", Checks(f->checks)}};
  }
  const auto& s = std::get<CombinationSynthesis>(o);
  return Json{{"status", "combination"},
              {"lambda", ToJson(s.combination)},
              {"verified_max_derivative", s.verified_max_derivative},
              {"threshold", s.threshold},
              {"certificate", ToJson(s.certificate)}};
}

Json ToJson(const ScanResult& r) {
  Json j{{"grid_step", r.grid_step},
         {"grid_points", r.grid.size()},
         {"feasible_count", r.feasible.size()},
         {"threshold", r.threshold},
         {"sample_count", r.sample_count}};
  j["interval"] = r.interval ? Json{r.interval->first, r.interval->second} : Json(nullptr);
  double best = std::numeric_limits<double>::infinity();
  const ScanPoint* arg = nullptr;
  for (const auto& p : r.grid) {
    if (p.max_derivative < best) {
      best = p.max_derivative;
      arg = &p;
    }
  }
  if (arg) j["best"] = Json{{"lambda", arg->lambdas}, {"max_derivative", arg->max_derivative}};
  return j;
}

std::string Dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace slemma
