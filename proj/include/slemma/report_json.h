#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "slemma/homog_core.h"
#include "slemma/image_analysis.h"
#include "slemma/s_lemma.h"
#include "slemma/switched_systems.h"

namespace slemma {

using Json = nlohmann::ordered_json;

Json ToJson(const Eigen::VectorXd& v);
Json ToJson(const Dilation& d);
Json ToJson(const SamplingOptions& s, int n);
Json ToJson(const SpherePoint& p);
Json ToJson(const CheckRecord& c);
Json ToJson(const ImageSummary& s);
Json ToJson(const ZeroMargin& z);
Json ToJson(const ConvexityViolation& v);
Json ToJson(const CopositivityResult& c);
Json ToJson(const ShsConditionReport& r);
Json ToJson(const MultiplierCertificate& c);
Json ToJson(const MultiplierFailure& f);
Json ToJson(const MultiplierOutcome& o);
Json ToJson(const ConvexCombination& c);
/// Summary only; per-sample regions go to CSV.
Json ToJson(const LfhdReport& r);
Json ToJson(const SynthesisOutcome& o);
Json ToJson(const ScanResult& r);

/// Deterministic two-space-indented text with a trailing newline.
std::string Dump(const Json& j);

}  // namespace slemma
