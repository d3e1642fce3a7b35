#include "slemma/s_lemma.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "slemma/errors.h"
#include "slemma/parallel.h"

namespace slemma {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<ImageSample> Evaluate(const GeneralizedPolynomial& f,
                                  const GeneralizedPolynomial& g, const Dilation& d,
                                  const SamplingOptions& sampling) {
  std::vector<SpherePoint> pts = SphereSamples(d, sampling);
  std::vector<ImageSample> out(pts.size());
  ParallelFor(pts.size(), [&](std::size_t i) {
    out[i].f = f.Evaluate(pts[i].coords);
    out[i].g = g.Evaluate(pts[i].coords);
    out[i].point = std::move(pts[i]);
  });
  return out;
}

struct Scales {
  double f{0.0};
  double g{0.0};
};

Scales MaxAbs(const std::vector<ImageSample>& s) {
  Scales out;
  for (const auto& p : s) {
    out.f = std::max(out.f, std::abs(p.f));
    out.g = std::max(out.g, std::abs(p.g));
  }
  return out;
}

double MinMargin(const std::vector<ImageSample>& s, double xi, int* arg = nullptr) {
  double m = kInf;
  int best = -1;
  for (size_t i = 0; i < s.size(); ++i) {
    const double v = s[i].f - xi * s[i].g;
    if (v < m) {
      m = v;
      best = static_cast<int>(i);
    }
  }
  if (arg) *arg = best;
  return m;
}

struct XiChoice {
  double xi;
  double margin;
};

// Maximizes the concave function xi -> min_j (f_j - xi g_j): grid scan, then
// golden section around the best grid point. The initial estimate competes
// with the result so the returned margin never drops below it.
XiChoice SearchXi(const std::vector<ImageSample>& s, std::optional<double> xi0,
                  bool include_zero, const SLemmaOptions& o) {
  std::vector<double> xs;
  if (include_zero) xs.push_back(0.0);
  // With g <= 0 everywhere the margin never decreases in xi; take the first
  // power of ten from 1 on that already works instead of running to xi_max.
  const bool monotone = std::all_of(s.begin(), s.end(),
                                    [](const ImageSample& p) { return p.g <= 0.0; });
  if (monotone) {
    double fmax = 0.0;
    for (const auto& p : s) fmax = std::max(fmax, std::abs(p.f));
    // The initial estimate stays a lower bound since the margin is monotone.
    const double floor_xi = xi0 && std::isfinite(*xi0) ? std::max(0.0, *xi0) : 0.0;
    auto pick = [&](double x) -> XiChoice {
      x = std::clamp(std::max(x, floor_xi), include_zero ? 0.0 : o.xi_min, o.xi_max);
      return {x, MinMargin(s, x)};
    };
    if (include_zero && MinMargin(s, 0.0) >= 0.0) return pick(0.0);
    for (double x = std::max(1.0, o.xi_min); x <= o.xi_max; x *= 10.0) {
      if (MinMargin(s, x) > o.positivity_rel * fmax) return pick(x);
    }
  }
  const int m = std::max(2, o.xi_grid);
  for (int i = 0; i < m; ++i) {
    xs.push_back(o.xi_min * std::pow(o.xi_max / o.xi_min, static_cast<double>(i) / (m - 1)));
  }
  std::vector<double> ms(xs.size());
  ParallelFor(xs.size(), [&](std::size_t i) { ms[i] = MinMargin(s, xs[i]); });
  size_t b = 0;
  for (size_t i = 1; i < xs.size(); ++i) {
    if (ms[i] > ms[b]) b = i;
  }
  double lo = xs[b == 0 ? 0 : b - 1];
  double hi = xs[std::min(b + 1, xs.size() - 1)];
  const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = hi - phi * (hi - lo);
  double x2 = lo + phi * (hi - lo);
  double m1 = MinMargin(s, x1);
  double m2 = MinMargin(s, x2);
  for (int it = 0; it < 200 && hi - lo > 1e-13 * std::max(1.0, hi); ++it) {
    if (m1 < m2) {
      lo = x1;
      x1 = x2;
      m1 = m2;
      x2 = lo + phi * (hi - lo);
      m2 = MinMargin(s, x2);
    } else {
      hi = x2;
      x2 = x1;
      m2 = m1;
      x1 = hi - phi * (hi - lo);
      m1 = MinMargin(s, x1);
    }
  }
  XiChoice best{0.5 * (lo + hi), MinMargin(s, 0.5 * (lo + hi))};
  if (ms[b] >= best.margin) best = {xs[b], ms[b]};
  if (xi0 && std::isfinite(*xi0)) {
    const double x = std::clamp(*xi0, include_zero ? 0.0 : o.xi_min, o.xi_max);
    const double mx = MinMargin(s, x);
    if (mx > best.margin) best = {x, mx};
  }
  return best;
}

struct Geometry {
  bool ok{false};
  double xi0{1.0};
  double xi_lo{0.0};
  double xi_hi{kInf};
};

// Multipliers read off a sector [alpha, alpha + span]: normals psi with
// cos(psi - phi) <= 0 over the sector that lie in the second quadrant give
// xi = -tan(psi).
Geometry GeometricXi(const DirectionCover& cover) {
  Geometry geo;
  if (cover.empty() || cover.full()) return geo;
  const Arc gap = cover.LargestGap();
  const double alpha = gap.start + gap.length;
  const double span = kTwoPi - gap.length;
  double lo = alpha + span + kPi / 2;
  double hi = alpha + 3 * kPi / 2;
  const double shift = kTwoPi * std::floor(lo / kTwoPi);
  lo -= shift;
  hi -= shift;
  double best_a = 0.0;
  double best_b = -1.0;
  for (double q : {kPi / 2, kPi / 2 + kTwoPi}) {
    const double a = std::max(lo, q);
    const double b = std::min(hi, q + kPi / 2);
    if (b - a > best_b - best_a) {
      best_a = a;
      best_b = b;
    }
  }
  if (best_b < best_a) return geo;
  geo.ok = true;
  const double psi = 0.5 * (best_a + best_b);
  geo.xi0 = -std::tan(psi);
  geo.xi_lo = std::max(0.0, -std::tan(best_b));
  const double a_mod = best_a >= kTwoPi ? best_a - kTwoPi : best_a;
  geo.xi_hi = a_mod <= kPi / 2 + 1e-12 ? kInf : -std::tan(best_a);
  return geo;
}

std::string Fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

MultiplierFailure Fail(FailureReason r, std::string msg, std::vector<CheckRecord> checks,
                       std::optional<Eigen::VectorXd> witness = std::nullopt) {
  MultiplierFailure f;
  f.reason = r;
  f.message = std::move(msg);
  f.witness = std::move(witness);
  f.checks = std::move(checks);
  return f;
}

double PositiveDegree(const GeneralizedPolynomial& f, const GeneralizedPolynomial& g,
                      const Dilation& d) {
  const double k = CommonDegree(f, g, d);
  if (!(k > 0.0)) throw ArgumentError("multiplier search needs degree k > 0");
  return k;
}

}  // namespace

std::string ReasonCode(FailureReason reason) {
  switch (reason) {
    case FailureReason::kNotCopositive:
      return "NOT_COPOSITIVE";
    case FailureReason::kSectorGePi:
      return "SECTOR_GE_PI";
    case FailureReason::kCommonZero:
      return "COMMON_ZERO";
    case FailureReason::kNhsItem1:
      return "NHS_ITEM_1";
    case FailureReason::kNhsItem2:
      return "NHS_ITEM_2";
    case FailureReason::kNhsItem3:
      return "NHS_ITEM_3";
    case FailureReason::kNhsItem4:
      return "NHS_ITEM_4";
    case FailureReason::kVerificationFailed:
      return "VERIFICATION_FAILED";
  }
  return "VERIFICATION_FAILED";
}

CopositivityResult IsCopositive(const GeneralizedPolynomial& f,
                                const GeneralizedPolynomial& g, const Dilation& d,
                                bool strict, const SLemmaOptions& options) {
  PositiveDegree(f, g, d);
  const std::vector<ImageSample> s = Evaluate(f, g, d, options.sampling);
  const Scales sc = MaxAbs(s);
  CopositivityResult r;
  r.strict = strict;
  r.sample_count = static_cast<int>(s.size());
  const double tol_g = options.tolerance_rel * sc.g;
  const double floor_g = strict ? -tol_g : tol_g;
  r.min_value = kInf;
  for (const auto& p : s) {
    if (p.g < floor_g) continue;
    ++r.admissible;
    if (p.f < r.min_value) {
      r.min_value = p.f;
      r.witness = p.point;
    }
  }
  if (r.admissible == 0) {
    r.vacuous = true;
    r.holds = true;
    r.min_value = 0.0;
    return r;
  }
  if (strict) {
    r.threshold = options.positivity_rel * sc.f;
    r.holds = r.min_value > r.threshold;
  } else {
    r.threshold = -options.tolerance_rel * sc.f;
    r.holds = r.min_value >= r.threshold;
  }
  return r;
}

ShsConditionReport ShsCondition(const GeneralizedPolynomial& f,
                                const GeneralizedPolynomial& g, const Dilation& d,
                                const SLemmaOptions& options) {
  PositiveDegree(f, g, d);
  if (ClassifyParity(f) != Parity::kEven || ClassifyParity(g) != Parity::kEven) {
    throw ArgumentError("the strict homogeneous condition needs even f and g");
  }
  const ImageCover ic = BuildImageCover(f, g, d, options.sampling);
  ShsConditionReport r;
  r.resolution = ic.resolution;
  const double tol = d.dim() == 1 ? 1e-9 : 3.0 * ic.resolution;
  const DirectionCover sym = Symmetrized(ic.cover, tol);
  const Arc gap = sym.LargestGap();
  r.symmetrized_gap = gap.length;
  r.holds = gap.length > tol;
  if (r.holds) {
    const double mid = gap.start + 0.5 * gap.length;
    r.witness_direction = Eigen::Vector2d(std::cos(mid), std::sin(mid));
  }
  return r;
}

MarginResult MultiplierMargin(const GeneralizedPolynomial& f, const GeneralizedPolynomial& g,
                              const Dilation& d, double xi, const SamplingOptions& sampling) {
  const std::vector<ImageSample> s = Evaluate(f, g, d, sampling);
  MarginResult r;
  int arg = -1;
  r.margin = MinMargin(s, xi, &arg);
  if (arg >= 0) r.witness = s[arg].point;
  const Scales sc = MaxAbs(s);
  r.max_abs_f = sc.f;
  r.max_abs_g = sc.g;
  r.sample_count = static_cast<int>(s.size());
  return r;
}

SamplingOptions VerificationSampling(const SamplingOptions& sampling, int n) {
  SamplingOptions v = sampling;
  const int count = ResolvedSampleCount(n, sampling);
  const bool grid = sampling.scheme == SamplingScheme::kThetaGrid ||
                    (sampling.scheme == SamplingScheme::kAuto && n == 2);
  if (n == 1) return v;
  if (grid) {
    v.count = 4 * count;
    v.theta_offset = 0.5;
  } else {
    v.count = 2 * count;
    v.seed = sampling.seed + 1;
  }
  return v;
}

MultiplierOutcome FindStrictMultiplier(const GeneralizedPolynomial& f,
                                       const GeneralizedPolynomial& g, const Dilation& d,
                                       const SLemmaOptions& options) {
  PositiveDegree(f, g, d);
  std::vector<CheckRecord> checks;
  const ImageCover ic = BuildImageCover(f, g, d, options.sampling);
  const Scales sc = MaxAbs(ic.samples);
  const double res_tol = d.dim() == 1 ? 1e-9 : 3.0 * ic.resolution;

  const ZeroMargin zm = ComputeZeroMargin(f, g, d, options.positivity_rel * std::max(sc.f, sc.g),
                                          options.sampling);
  const bool zero_ok = zm.margin > zm.threshold;
  checks.push_back({"common_zero_margin", zero_ok, zm.margin,
                    zm.refined ? "refined" : "sampled"});
  if (!zero_ok) {
    return Fail(FailureReason::kCommonZero,
                "f and g share a nonzero zero, so f is not strictly copositive with g "
                "(sampled margin " + Fmt(zm.margin) + ")",
                std::move(checks), zm.witness.coords);
  }

  const CopositivityResult cop = IsCopositive(f, g, d, true, options);
  checks.push_back({"strict_copositivity", cop.holds, cop.min_value,
                    cop.vacuous ? "vacuous" : ""});
  if (!cop.holds) {
    return Fail(FailureReason::kNotCopositive,
                "f is not strictly copositive with g (min f on g >= 0 is " +
                    Fmt(cop.min_value) + ")",
                std::move(checks), cop.witness.coords);
  }

  const Arc gap = ic.cover.LargestGap();
  const double span = ic.cover.full() ? kTwoPi : kTwoPi - gap.length;
  const double sym_gap = Symmetrized(ic.cover, res_tol).LargestGap().length;
  const bool sector_ok = !ic.cover.full() && span < kPi - res_tol;
  checks.push_back({"sector_angle", sector_ok, span,
                    "symmetrized gap " + Fmt(sym_gap)});
  if (!sector_ok) {
    return Fail(FailureReason::kSectorGePi,
                "the image of (f, g) spans an angle >= pi (" + Fmt(span) + ")",
                std::move(checks));
  }

  const Geometry geo = GeometricXi(ic.cover);
  if (!geo.ok) {
    return Fail(FailureReason::kNotCopositive,
                "no separating direction in the second quadrant", std::move(checks));
  }
  checks.push_back({"geometric_xi_interval", true, geo.xi0,
                    "(" + Fmt(geo.xi_lo) + ", " + Fmt(geo.xi_hi) + ")"});
  const double xi0 = std::clamp(geo.xi0, options.xi_min, options.xi_max);
  const double initial_margin = MinMargin(ic.samples, xi0);
  const XiChoice best = SearchXi(ic.samples, xi0, false, options);

  const SamplingOptions vs = VerificationSampling(options.sampling, d.dim());
  const MarginResult ver = MultiplierMargin(f, g, d, best.xi, vs);
  const double threshold = options.positivity_rel * (ver.max_abs_f + best.xi * ver.max_abs_g);
  const bool verified = ver.margin > threshold;
  checks.push_back({"fresh_sample_margin", verified, ver.margin,
                    "threshold " + Fmt(threshold)});
  if (!verified) {
    return Fail(FailureReason::kVerificationFailed,
                "f - xi g is not positive on the verification samples at xi = " +
                    Fmt(best.xi),
                std::move(checks), ver.witness.coords);
  }
  MultiplierCertificate c;
  c.xi = best.xi;
  c.strict = true;
  c.margin = ver.margin;
  c.derive_margin = best.margin;
  c.initial_xi = xi0;
  c.initial_margin = initial_margin;
  c.threshold = threshold;
  c.sample_count = static_cast<int>(ic.samples.size());
  c.verify_sample_count = ver.sample_count;
  c.seed = options.sampling.seed;
  c.verify_seed = vs.seed;
  c.dilation = d;
  c.checks = std::move(checks);
  return c;
}

MultiplierOutcome FindNonstrictMultiplier(const GeneralizedPolynomial& f,
                                          const GeneralizedPolynomial& g,
                                          const Dilation& d, const SLemmaOptions& options) {
  PositiveDegree(f, g, d);
  std::vector<CheckRecord> checks;
  const ImageCover ic = BuildImageCover(f, g, d, options.sampling);
  const Scales sc = MaxAbs(ic.samples);
  const double res_tol = d.dim() == 1 ? 1e-9 : 3.0 * ic.resolution;

  const ZeroMargin zm = ComputeZeroMargin(f, g, d, options.positivity_rel * std::max(sc.f, sc.g),
                                          options.sampling);
  const bool zero_ok = zm.margin > zm.threshold && (zm.refined || d.dim() > 2);
  checks.push_back({"common_zero_margin", zero_ok, zm.margin,
                    zm.refined ? "refined" : "sampled"});
  if (!zero_ok) {
    return Fail(FailureReason::kCommonZero,
                "f and g are not certified free of a common nonzero zero (margin " +
                    Fmt(zm.margin) + ")",
                std::move(checks), zm.witness.coords);
  }

  const CopositivityResult cop = IsCopositive(f, g, d, false, options);
  checks.push_back({"copositivity", cop.holds, cop.min_value, cop.vacuous ? "vacuous" : ""});
  if (!cop.holds) {
    return Fail(FailureReason::kNotCopositive,
                "f is not copositive with g (min f on g > 0 is " + Fmt(cop.min_value) + ")",
                std::move(checks), cop.witness.coords);
  }

  // Lines through the origin inside U show up as directions shared by U and -U.
  DirectionCover overlap;
  for (const Arc& a : Intersect(ic.cover, ic.cover.Rotated(kPi, 1e-12), 0.0)) {
    overlap.AddArc(a.start, a.length);
  }
  overlap.Finalize(res_tol);
  double widest = 0.0;
  for (const Arc& a : overlap.arcs()) widest = std::max(widest, a.length);
  const int lines = static_cast<int>(overlap.arcs().size()) / 2;
  const bool lines_ok = !overlap.full() && overlap.arcs().size() <= 2 && widest <= 2 * res_tol;
  checks.push_back({"lines_in_image", lines_ok, static_cast<double>(lines),
                    "widest shared arc " + Fmt(widest)});
  if (!lines_ok) {
    return Fail(FailureReason::kSectorGePi,
                "the image of (f, g) contains more than one line through the origin",
                std::move(checks));
  }

  const Geometry geo = GeometricXi(ic.cover);
  const double xi0 = geo.ok ? std::clamp(geo.xi0, 0.0, options.xi_max) : 1.0;
  const double initial_margin = MinMargin(ic.samples, xi0);
  const XiChoice best = SearchXi(ic.samples, xi0, true, options);

  const SamplingOptions vs = VerificationSampling(options.sampling, d.dim());
  const MarginResult ver = MultiplierMargin(f, g, d, best.xi, vs);
  const double tol = options.tolerance_rel * (ver.max_abs_f + best.xi * ver.max_abs_g);
  const bool verified = ver.margin >= -tol;
  checks.push_back({"fresh_sample_margin", verified, ver.margin, "tolerance " + Fmt(tol)});
  if (!verified) {
    return Fail(FailureReason::kVerificationFailed,
                "f - xi g is negative on the verification samples at xi = " + Fmt(best.xi),
                std::move(checks), ver.witness.coords);
  }
  MultiplierCertificate c;
  c.xi = best.xi;
  c.strict = false;
  c.margin = ver.margin;
  c.derive_margin = best.margin;
  c.initial_xi = xi0;
  c.initial_margin = initial_margin;
  c.threshold = -tol;
  c.sample_count = static_cast<int>(ic.samples.size());
  c.verify_sample_count = ver.sample_count;
  c.seed = options.sampling.seed;
  c.verify_seed = vs.seed;
  c.dilation = d;
  c.checks = std::move(checks);
  return c;
}

GeneralizedPolynomial TopForm(const GeneralizedPolynomial& p, int k) {
  std::vector<SignedMonomial> top;
  for (const auto& t : p.terms()) {
    double deg = 0.0;
    for (const auto& e : t.powers) deg += e.value();
    if (std::abs(deg - k) < 1e-12) top.push_back(t);
  }
  return GeneralizedPolynomial(p.dim(), std::move(top));
}

BoxMargin BoxCheck(const GeneralizedPolynomial& f, const GeneralizedPolynomial& g, double xi,
                   double radius, double tolerance_rel) {
  if (f.dim() != g.dim()) throw ArgumentError("f and g must share the dimension");
  const int n = f.dim();
  int per_axis = std::max(3, static_cast<int>(std::pow(40000.0, 1.0 / std::max(n, 1))));
  if (per_axis % 2 == 0) ++per_axis;
  int64_t total = 1;
  for (int i = 0; i < n; ++i) total *= per_axis;
  std::vector<double> vals(total);
  std::vector<double> mags(total);
  ParallelFor(static_cast<std::size_t>(total), [&](std::size_t idx) {
    Eigen::VectorXd x(n);
    std::size_t rem = idx;
    for (int i = 0; i < n; ++i) {
      x[i] = -radius + 2.0 * radius * static_cast<double>(rem % per_axis) / (per_axis - 1);
      rem /= per_axis;
    }
    const double fv = f.Evaluate(x);
    const double gv = g.Evaluate(x);
    vals[idx] = fv - xi * gv;
    mags[idx] = std::abs(fv) + xi * std::abs(gv);
  });
  BoxMargin b;
  b.points = static_cast<int>(total);
  b.margin = kInf;
  int64_t arg = 0;
  double mag = 0.0;
  for (int64_t i = 0; i < total; ++i) {
    if (vals[i] < b.margin) {
      b.margin = vals[i];
      arg = i;
    }
    mag = std::max(mag, mags[i]);
  }
  b.tolerance = tolerance_rel * mag;
  b.witness.resize(n);
  for (int i = 0; i < n; ++i) {
    b.witness[i] = -radius + 2.0 * radius * static_cast<double>(arg % per_axis) / (per_axis - 1);
    arg /= per_axis;
  }
  return b;
}

MultiplierOutcome FindNhsMultiplier(const GeneralizedPolynomial& f,
                                    const GeneralizedPolynomial& g,
                                    const SLemmaOptions& options) {
  if (f.dim() != g.dim()) throw ArgumentError("f and g must share the dimension");
  if (!f.HasIntegerPowers() || !g.HasIntegerPowers()) {
    throw ArgumentError("the non-homogeneous search needs ordinary polynomials");
  }
  const int n = f.dim();
  const int k = static_cast<int>(std::lround(std::max(f.TotalDegree(), g.TotalDegree())));
  if (k < 1) throw ArgumentError("the non-homogeneous search needs degree k >= 1");
  const Dilation d = Dilation::Trivial(n);
  const GeneralizedPolynomial fk = TopForm(f, k);
  const GeneralizedPolynomial gk = TopForm(g, k);
  std::vector<CheckRecord> checks;
  checks.push_back({"even_degree", k % 2 == 0, static_cast<double>(k), ""});

  const ImageCover top = BuildImageCover(fk, gk, d, options.sampling);
  const Scales sc = MaxAbs(top.samples);
  const ZeroMargin zm = ComputeZeroMargin(fk, gk, d, options.positivity_rel * std::max(sc.f, sc.g),
                                          options.sampling);
  const bool zero_ok = zm.margin > zm.threshold;
  checks.push_back({"top_form_common_zero_margin", zero_ok, zm.margin,
                    zm.refined ? "refined" : "sampled"});
  if (!zero_ok) {
    return Fail(FailureReason::kCommonZero,
                "the top-degree forms share a nonzero zero (margin " + Fmt(zm.margin) + ")",
                std::move(checks), zm.witness.coords);
  }
  const CopositivityResult cop = IsCopositive(fk, gk, d, false, options);
  checks.push_back({"top_form_copositivity", cop.holds, cop.min_value, ""});
  if (!cop.holds) {
    return Fail(FailureReason::kNotCopositive,
                "the top-degree form of f is not copositive with that of g",
                std::move(checks), cop.witness.coords);
  }

  const DirectionCover& T = top.cover;
  const DirectionCover A = AffineImageCover(f, g, options.affine);
  struct Item {
    FailureReason reason;
    const DirectionCover* p;
    const DirectionCover* q;
    const char* what;
  };
  const Item items[] = {
      {FailureReason::kNhsItem1, &T, &T, "top-form image meets its own opposite"},
      {FailureReason::kNhsItem2, &A, &A, "image of (f, g) meets its own opposite"},
      {FailureReason::kNhsItem3, &A, &T, "image of (f, g) meets the opposite top-form image"},
      {FailureReason::kNhsItem4, &T, &A, "top-form image meets the opposite image of (f, g)"},
  };
  int number = 1;
  for (const Item& item : items) {
    const std::vector<Arc> hit =
        Intersect(*item.p, item.q->Rotated(kPi, 1e-12), options.collision_tol);
    const std::string name = "nhs_item_" + std::to_string(number++);
    checks.push_back({name, hit.empty(), static_cast<double>(hit.size()), ""});
    if (!hit.empty()) {
      const double a = hit.front().start + 0.5 * hit.front().length;
      return Fail(item.reason, std::string(item.what) + " near direction " + Fmt(a),
                  std::move(checks), Eigen::Vector2d(std::cos(a), std::sin(a)));
    }
  }

  const GeneralizedPolynomial ft = Homogenize(f, k);
  const GeneralizedPolynomial gt = Homogenize(g, k);
  MultiplierOutcome hs = FindNonstrictMultiplier(ft, gt, Dilation::Trivial(n + 1), options);
  if (auto* fail = std::get_if<MultiplierFailure>(&hs)) {
    checks.insert(checks.end(), fail->checks.begin(), fail->checks.end());
    fail->checks = std::move(checks);
    return hs;
  }
  auto& cert = std::get<MultiplierCertificate>(hs);
  const BoxMargin box = BoxCheck(f, g, cert.xi, options.box_radius, options.tolerance_rel);
  const bool box_ok = box.margin >= -box.tolerance;
  checks.insert(checks.end(), cert.checks.begin(), cert.checks.end());
  checks.push_back({"box_margin", box_ok, box.margin,
                    "radius " + Fmt(options.box_radius) + ", " + std::to_string(box.points) +
                        " points"});
  if (!box_ok) {
    return Fail(FailureReason::kVerificationFailed,
                "f - xi g is negative on the box at xi = " + Fmt(cert.xi), std::move(checks),
                box.witness);
  }
  cert.checks = std::move(checks);
  return hs;
}

MultiplierOutcome FindNhsMultiplier(const CoeffVecPolynomial& f, const CoeffVecPolynomial& g,
                                    const SLemmaOptions& options) {
  return FindNhsMultiplier(ToGeneralized(f), ToGeneralized(g), options);
}

}  // namespace slemma
