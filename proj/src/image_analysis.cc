#include "slemma/image_analysis.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "slemma/errors.h"
#include "slemma/parallel.h"

namespace slemma {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

void CheckPairDims(const GeneralizedPolynomial& f, const GeneralizedPolynomial& g,
                   const Dilation& d) {
  if (f.dim() != d.dim() || g.dim() != d.dim()) {
    throw ArgumentError("f, g and the dilation must share the dimension");
  }
}

double Angle(const Eigen::Vector2d& v) { return std::atan2(v.y(), v.x()); }

// cos and sin of 2 pi j / steps, exact on quarter turns.
std::pair<double, double> CosSin(int j, int steps) {
  if ((4L * j) % steps == 0) {
    switch ((4L * j / steps) % 4) {
      case 0:
        return {1.0, 0.0};
      case 1:
        return {0.0, 1.0};
      case 2:
        return {-1.0, 0.0};
      default:
        return {0.0, -1.0};
    }
  }
  const double t = kTwoPi * j / steps;
  return {std::cos(t), std::sin(t)};
}

Eigen::VectorXd MixingPointCS(const Dilation& d, const Eigen::VectorXd& z1,
                              const Eigen::VectorXd& z2, double c, double s) {
  Eigen::VectorXd x(d.dim());
  for (int i = 0; i < d.dim(); ++i) {
    const double r = d.weight(i);
    x[i] = z1[i] * std::copysign(std::pow(std::abs(c), r), c) +
           z2[i] * std::copysign(std::pow(std::abs(s), r), s);
  }
  return x;
}

class Tracer {
 public:
  Tracer(const std::function<Eigen::Vector2d(double)>& curve, double zero_tol,
         const TraceOptions& options, DirectionCover* cover)
      : curve_(curve), zero_tol_(zero_tol), options_(options), cover_(cover) {}

  void Segment(double ta, const Eigen::Vector2d& va, double tb, const Eigen::Vector2d& vb,
               int depth) {
    const bool za = va.norm() <= zero_tol_;
    const bool zb = vb.norm() <= zero_tol_;
    if (za && zb) return;
    const double tm = 0.5 * (ta + tb);
    const Eigen::Vector2d vm = curve_(tm);
    const bool zm = vm.norm() <= zero_tol_;
    if (!za && !zb && !zm) {
      const double aa = Angle(va);
      const double am = Angle(vm);
      const double d1 = WrapAngle(am - aa);
      const double d2 = WrapAngle(Angle(vb) - am);
      if (std::abs(d1) <= options_.max_jump && std::abs(d2) <= options_.max_jump) {
        cover_->AddArc(aa, d1);
        cover_->AddArc(am, d2);
        return;
      }
    }
    if (depth >= options_.max_depth) {
      for (const auto* v : {&va, &vm, &vb}) {
        if (v->norm() > zero_tol_) cover_->AddDirection(Angle(*v));
      }
      return;
    }
    Segment(ta, va, tm, vm, depth + 1);
    Segment(tm, vm, tb, vb, depth + 1);
  }

 private:
  const std::function<Eigen::Vector2d(double)>& curve_;
  double zero_tol_;
  TraceOptions options_;
  DirectionCover* cover_;
};

double TraceCurveImpl(const std::function<Eigen::Vector2d(double)>& curve, double t0,
                      double t1, int steps, const TraceOptions& options,
                      DirectionCover* cover) {
  if (steps < 1) throw ArgumentError("curve tracing needs at least one step");
  std::vector<double> ts(steps + 1);
  std::vector<Eigen::Vector2d> vs(steps + 1);
  double scale = 0.0;
  for (int j = 0; j <= steps; ++j) {
    ts[j] = t0 + (t1 - t0) * j / steps;
    vs[j] = curve(ts[j]);
    scale = std::max(scale, vs[j].norm());
  }
  if (scale == 0.0) return 0.0;
  Tracer tracer(curve, 1e-12 * scale, options, cover);
  for (int j = 0; j < steps; ++j) tracer.Segment(ts[j], vs[j], ts[j + 1], vs[j + 1], 0);
  return scale;
}

std::vector<ImageSample> EvaluateSamples(const GeneralizedPolynomial& f,
                                         const GeneralizedPolynomial& g,
                                         std::vector<SpherePoint> points) {
  std::vector<ImageSample> out(points.size());
  ParallelFor(points.size(), [&](std::size_t i) {
    out[i].f = f.Evaluate(points[i].coords);
    out[i].g = g.Evaluate(points[i].coords);
    out[i].point = std::move(points[i]);
  });
  return out;
}

struct Range {
  double lo;
  double hi;
};

// Bounds of a polynomial over theta in [a, b], a cell inside one closed
// quadrant, where every |x_i(theta)| is monotone and every sign is constant.
Range CellRange(const GeneralizedPolynomial& p, const Eigen::Vector2d& pa,
                const Eigen::Vector2d& pb, const Eigen::Vector2d& pm) {
  Range r{0.0, 0.0};
  double mass = 0.0;
  for (const auto& t : p.terms()) {
    double lo = std::abs(t.coeff);
    double hi = lo;
    double sign = t.coeff < 0 ? -1.0 : 1.0;
    for (int i = 0; i < 2; ++i) {
      if (t.powers[i].is_zero()) continue;
      const double e = t.powers[i].value();
      const double a = std::pow(std::abs(pa[i]), e);
      const double b = std::pow(std::abs(pb[i]), e);
      lo *= std::min(a, b);
      hi *= std::max(a, b);
      if (t.sign_flags[i] && pm[i] < 0) sign = -sign;
    }
    if (sign > 0) {
      r.lo += lo;
      r.hi += hi;
    } else {
      r.lo -= hi;
      r.hi -= lo;
    }
    mass += hi;
  }
  const double slack = 1e-13 * mass;
  return {r.lo - slack, r.hi + slack};
}

double AbsLowerBound(const Range& r) {
  if (r.lo > 0) return r.lo;
  if (r.hi < 0) return -r.hi;
  return 0.0;
}

struct RefineResult {
  bool ok;
  double lower_bound;
  int cells;
};

RefineResult RefineThetaCells(const GeneralizedPolynomial& f, const GeneralizedPolynomial& g,
                              const Dilation& d, int count) {
  const int per_quadrant = std::max(1, (count + 3) / 4);
  constexpr int kMaxDepth = 40;
  constexpr int kBudget = 2'000'000;
  struct Cell {
    double a, b;
    int depth;
  };
  RefineResult res{true, std::numeric_limits<double>::infinity(), 0};
  std::vector<Cell> stack;
  for (int q = 3; q >= 0; --q) {
    for (int j = per_quadrant - 1; j >= 0; --j) {
      const double a = q * kPi / 2 + j * (kPi / 2) / per_quadrant;
      const double b = q * kPi / 2 + (j + 1) * (kPi / 2) / per_quadrant;
      stack.push_back({a, b, 0});
    }
  }
  while (!stack.empty()) {
    const Cell c = stack.back();
    stack.pop_back();
    if (++res.cells > kBudget) return {false, 0.0, res.cells};
    const Eigen::Vector2d pa = ThetaCurvePoint(c.a, d);
    const Eigen::Vector2d pb = ThetaCurvePoint(c.b, d);
    const Eigen::Vector2d pm = ThetaCurvePoint(0.5 * (c.a + c.b), d);
    const double lb = std::max(AbsLowerBound(CellRange(f, pa, pb, pm)),
                               AbsLowerBound(CellRange(g, pa, pb, pm)));
    if (lb > 0.0) {
      res.lower_bound = std::min(res.lower_bound, lb);
      continue;
    }
    if (c.depth >= kMaxDepth) return {false, 0.0, res.cells};
    const double m = 0.5 * (c.a + c.b);
    stack.push_back({m, c.b, c.depth + 1});
    stack.push_back({c.a, m, c.depth + 1});
  }
  return res;
}

// Pattern search for a point whose image direction is within tol of target.
bool DirectionReachable(const GeneralizedPolynomial& f, const GeneralizedPolynomial& g,
                        const Dilation& d, const std::vector<ImageSample>& samples,
                        double target, double tol) {
  auto miss = [&](const Eigen::VectorXd& x) {
    const Eigen::Vector2d v(f.Evaluate(x), g.Evaluate(x));
    if (v.norm() == 0.0) return kPi;
    return std::abs(WrapAngle(Angle(v) - target));
  };
  std::vector<std::pair<double, int>> order;
  order.reserve(samples.size());
  for (size_t i = 0; i < samples.size(); ++i) {
    const Eigen::Vector2d v(samples[i].f, samples[i].g);
    if (v.norm() == 0.0) continue;
    order.emplace_back(std::abs(WrapAngle(Angle(v) - target)), static_cast<int>(i));
  }
  const size_t starts = std::min<size_t>(8, order.size());
  std::partial_sort(order.begin(), order.begin() + starts, order.end());
  const int n = d.dim();
  for (size_t s = 0; s < starts; ++s) {
    Eigen::VectorXd x = samples[order[s].second].point.coords;
    double best = miss(x);
    double step = 0.1;
    for (int it = 0; it < 400 && best > tol && step > 1e-10; ++it) {
      bool improved = false;
      for (int k = 0; k < n && !improved; ++k) {
        for (double sgn : {1.0, -1.0}) {
          Eigen::VectorXd y = x;
          y[k] += sgn * step;
          if (y.norm() == 0.0) continue;
          y = ProjectToSphere(y, d).coords;
          const double m = miss(y);
          if (m < best) {
            best = m;
            x = y;
            improved = true;
            break;
          }
        }
      }
      if (!improved) step *= 0.5;
    }
    if (best <= tol) return true;
  }
  return false;
}

}  // namespace

double CommonDegree(const GeneralizedPolynomial& f, const GeneralizedPolynomial& g,
                    const Dilation& d) {
  CheckPairDims(f, g, d);
  if (f.is_zero() && g.is_zero()) throw DegenerateError("f and g are both zero");
  std::optional<double> kf = f.is_zero() ? std::nullopt : HomogeneityDegree(f, d);
  std::optional<double> kg = g.is_zero() ? std::nullopt : HomogeneityDegree(g, d);
  if (!f.is_zero() && !kf) throw ArgumentError("f is not homogeneous under the dilation");
  if (!g.is_zero() && !kg) throw ArgumentError("g is not homogeneous under the dilation");
  if (kf && kg && std::abs(*kf - *kg) > 1e-12 * std::max(1.0, std::abs(*kf))) {
    throw ArgumentError("f and g have different homogeneity degrees");
  }
  return kf ? *kf : kg.value();
}

double TraceCurve(const std::function<Eigen::Vector2d(double)>& curve, double t0, double t1,
                  int steps, const TraceOptions& options, DirectionCover* cover) {
  return TraceCurveImpl(curve, t0, t1, steps, options, cover);
}

ImageCover BuildImageCover(const GeneralizedPolynomial& f, const GeneralizedPolynomial& g,
                           const Dilation& d, const SamplingOptions& sampling,
                           const TraceOptions& trace) {
  CheckPairDims(f, g, d);
  const int n = d.dim();
  ImageCover out;
  out.samples = EvaluateSamples(f, g, SphereSamples(d, sampling));
  for (const auto& s : out.samples) {
    out.scale = std::max(out.scale, std::hypot(s.f, s.g));
  }
  const int count = static_cast<int>(out.samples.size());
  out.resolution = n == 1 ? 0.0 : kTwoPi / count;
  const double merge_tol = n == 1 ? 1e-12 : 3.0 * out.resolution;
  if (out.scale == 0.0) {
    out.cover.Finalize(merge_tol);
    return out;
  }
  const double zero_tol = 1e-12 * out.scale;
  for (const auto& s : out.samples) {
    if (std::hypot(s.f, s.g) > zero_tol) out.cover.AddDirection(std::atan2(s.g, s.f));
  }
  if (n == 2) {
    const bool grid = sampling.scheme != SamplingScheme::kHalton;
    const double t0 = grid ? kTwoPi * sampling.theta_offset / count : 0.0;
    auto curve = [&](double t) -> Eigen::Vector2d {
      const Eigen::Vector2d x = ThetaCurvePoint(t, d);
      return {f.Evaluate(x), g.Evaluate(x)};
    };
    const int chunks = std::min(64, count);
    std::vector<DirectionCover> parts(chunks);
    ParallelFor(chunks, [&](std::size_t c) {
      const int j0 = static_cast<int>(c * count / chunks);
      const int j1 = static_cast<int>((c + 1) * count / chunks);
      TraceCurveImpl(curve, t0 + kTwoPi * j0 / count, t0 + kTwoPi * j1 / count, j1 - j0,
                     trace, &parts[c]);
    });
    for (const auto& p : parts) out.cover.Merge(p);
  } else if (n >= 3) {
    const int curves = std::clamp(static_cast<int>(std::lround(std::sqrt(count))), 16, 1024);
    const int steps = std::max(64, count / curves);
    std::vector<DirectionCover> parts(curves);
    ParallelFor(curves, [&](std::size_t c) {
      const Eigen::VectorXd& z1 = out.samples[c * count / (curves + 1)].point.coords;
      const Eigen::VectorXd& z2 = out.samples[(c + 1) * count / (curves + 1)].point.coords;
      auto curve = [&](double t) -> Eigen::Vector2d {
        const Eigen::VectorXd x = MixingPoint(d, z1, z2, t);
        if (d.SphereFunction(x) == 0.0) return Eigen::Vector2d::Zero();
        const Eigen::VectorXd y = ProjectToSphere(x, d).coords;
        return {f.Evaluate(y), g.Evaluate(y)};
      };
      TraceCurveImpl(curve, 0.0, kTwoPi, steps, trace, &parts[c]);
    });
    for (const auto& p : parts) out.cover.Merge(p);
  }
  out.cover.Finalize(merge_tol);
  return out;
}

std::string ToString(ImageClass c) {
  switch (c) {
    case ImageClass::kSingleton:
      return "Singleton";
    case ImageClass::kLineThroughOrigin:
      return "LineThroughOrigin";
    case ImageClass::kFullPlane:
      return "FullPlane";
    case ImageClass::kAngularSector:
      return "AngularSector";
    case ImageClass::kIrregular:
      return "Irregular";
  }
  return "Irregular";
}

ImageSummary SampleImage(const GeneralizedPolynomial& f, const GeneralizedPolynomial& g,
                         const Dilation& d, const SamplingOptions& sampling) {
  ImageSummary s;
  s.degree = CommonDegree(f, g, d);
  s.seed = sampling.seed;
  ImageCover ic = BuildImageCover(f, g, d, sampling);
  s.sample_count = static_cast<int>(ic.samples.size());
  s.resolution = ic.resolution;
  const double zero_tol = 1e-12 * ic.scale;
  for (const auto& p : ic.samples) {
    if (ic.scale > 0 && std::hypot(p.f, p.g) > zero_tol) {
      s.directions.push_back(std::atan2(p.g, p.f));
    }
  }
  std::sort(s.directions.begin(), s.directions.end());
  s.samples = std::move(ic.samples);
  if (std::abs(s.degree) <= 1e-12) {
    s.classification = ImageClass::kSingleton;
    s.phi = 0.0;
    if (!s.directions.empty()) s.arcs = {Arc{s.directions.front(), 0.0}};
    const Arc gap = ic.cover.LargestGap();
    s.largest_gap = gap.length;
    s.gap_start = gap.start;
    return s;
  }
  if (s.directions.empty()) {
    throw DegenerateError("every sample of (f, g) is the origin");
  }
  const DirectionCover& cover = ic.cover;
  s.arcs = cover.arcs();
  const Arc gap = cover.LargestGap();
  s.largest_gap = gap.length;
  s.gap_start = gap.start;
  const double thr = d.dim() == 1 ? 1e-9 : 3.0 * s.resolution;
  if (cover.full() || gap.length <= thr) {
    s.classification = ImageClass::kFullPlane;
    s.phi = kTwoPi;
    s.largest_gap = cover.full() ? 0.0 : gap.length;
  } else if (s.arcs.size() == 1) {
    s.classification = ImageClass::kAngularSector;
    s.phi = kTwoPi - gap.length;
  } else {
    s.phi = cover.CoveredMeasure();
    const bool points = std::all_of(s.arcs.begin(), s.arcs.end(),
                                    [&](const Arc& a) { return a.length <= thr; });
    const double mid0 = s.arcs[0].start + 0.5 * s.arcs[0].length;
    const double mid1 =
        s.arcs.size() == 2 ? s.arcs[1].start + 0.5 * s.arcs[1].length : 0.0;
    const double tol = std::max(thr, 1e-9);
    if (s.arcs.size() == 2 && points && std::abs(WrapAngle(mid1 - mid0 - kPi)) <= tol) {
      s.classification = ImageClass::kLineThroughOrigin;
    } else {
      s.classification = ImageClass::kIrregular;
    }
  }
  return s;
}

ZeroMargin ComputeZeroMargin(const GeneralizedPolynomial& f, const GeneralizedPolynomial& g,
                             const Dilation& d, double threshold,
                             const SamplingOptions& sampling) {
  CommonDegree(f, g, d);
  std::vector<ImageSample> samples = EvaluateSamples(f, g, SphereSamples(d, sampling));
  ZeroMargin z;
  z.threshold = threshold;
  z.margin = std::numeric_limits<double>::infinity();
  for (const auto& s : samples) {
    const double m = std::max(std::abs(s.f), std::abs(s.g));
    if (m < z.margin) {
      z.margin = m;
      z.witness = s.point;
    }
  }
  if (!(z.margin > threshold)) return z;
  const int n = d.dim();
  if (n == 1) {
    z.refined = true;
    z.lower_bound = z.margin;
    z.cells = static_cast<int>(samples.size());
  } else if (n == 2) {
    const RefineResult r = RefineThetaCells(f, g, d, static_cast<int>(samples.size()));
    z.refined = r.ok;
    z.lower_bound = r.ok ? r.lower_bound : 0.0;
    z.cells = r.cells;
  }
  return z;
}

Eigen::VectorXd MixingPoint(const Dilation& d, const Eigen::VectorXd& z1,
                            const Eigen::VectorXd& z2, double theta) {
  if (z1.size() != d.dim() || z2.size() != d.dim()) {
    throw ArgumentError("curve anchors must match the dimension");
  }
  return MixingPointCS(d, z1, z2, std::cos(theta), std::sin(theta));
}

std::vector<CurvePoint> MixingCurve(const GeneralizedPolynomial& f,
                                    const GeneralizedPolynomial& g, const Dilation& d,
                                    const Eigen::VectorXd& z1, const Eigen::VectorXd& z2,
                                    int steps) {
  CheckPairDims(f, g, d);
  if (steps < 4) throw ArgumentError("mixing curve needs at least 4 steps");
  if (z1.size() != d.dim() || z2.size() != d.dim()) {
    throw ArgumentError("curve anchors must match the dimension");
  }
  std::vector<CurvePoint> out(steps + 1);
  for (int j = 0; j <= steps; ++j) {
    const auto [c, s] = CosSin(j % steps, steps);
    const Eigen::VectorXd x = MixingPointCS(d, z1, z2, c, s);
    out[j] = CurvePoint{kTwoPi * j / steps, f.Evaluate(x), g.Evaluate(x)};
  }
  return out;
}

std::vector<ConvexityViolation> ConvexityProbe(const GeneralizedPolynomial& f,
                                               const GeneralizedPolynomial& g,
                                               const Dilation& d, int trials,
                                               const ConvexityProbeOptions& options) {
  CommonDegree(f, g, d);
  const ImageCover ic = BuildImageCover(f, g, d, options.sampling);
  std::vector<ConvexityViolation> out;
  if (ic.scale == 0.0) return out;
  const double tol = d.dim() == 1 ? 1e-9 : 3.0 * ic.resolution;
  const double zero_tol = 1e-12 * ic.scale;
  std::vector<Eigen::Vector2d> pts;
  for (const auto& s : ic.samples) {
    if (std::hypot(s.f, s.g) > zero_tol) pts.emplace_back(s.f, s.g);
  }
  if (pts.empty()) return out;
  auto test = [&](const Eigen::Vector2d& u, const Eigen::Vector2d& v) {
    const Eigen::Vector2d m = 0.5 * (u + v);
    if (m.norm() <= 1e-9 * (u.norm() + v.norm())) return;
    const double a = Angle(m);
    const double clearance = ic.cover.Distance(a);
    if (clearance <= tol) return;
    if (d.dim() >= 3 && DirectionReachable(f, g, d, ic.samples, a, tol)) return;
    out.push_back(ConvexityViolation{u, v, m, a, clearance});
  };
  std::mt19937_64 rng(options.sampling.seed ^ 0x9e3779b97f4a7c15ULL);
  for (int t = 0; t < trials; ++t) {
    const Eigen::Vector2d& p = pts[rng() % pts.size()];
    const Eigen::Vector2d& q = pts[rng() % pts.size()];
    const double s1 = std::exp(std::log(0.1) + std::log(100.0) * UnitDouble(rng()));
    const double s2 = std::exp(std::log(0.1) + std::log(100.0) * UnitDouble(rng()));
    test(s1 * p, s2 * q);
  }
  for (const auto& [u, v] : options.candidate_pairs) {
    if (u.norm() == 0.0 || v.norm() == 0.0) continue;
    if (!ic.cover.Contains(Angle(u), tol) || !ic.cover.Contains(Angle(v), tol)) continue;
    test(u, v);
  }
  return out;
}

DirectionCover AffineImageCover(const GeneralizedPolynomial& f,
                                const GeneralizedPolynomial& g,
                                const AffineCoverOptions& options) {
  if (f.dim() != g.dim()) throw ArgumentError("f and g must share the dimension");
  const int n = f.dim();
  const Dilation d = Dilation::Trivial(n);
  auto image = [&](const Eigen::VectorXd& x) -> Eigen::Vector2d {
    return {f.Evaluate(x), g.Evaluate(x)};
  };
  TraceOptions trace;
  DirectionCover cover;
  const Eigen::Vector2d origin = image(Eigen::VectorXd::Zero(n));
  if (origin.norm() > 0.0) cover.AddDirection(Angle(origin));

  std::vector<SpherePoint> dirs;
  if (n == 1) {
    dirs = SphereSamples(d);
  } else {
    SamplingOptions so;
    so.count = options.rays;
    so.seed = options.seed;
    dirs = SphereSamples(d, so);
  }
  const double lr = std::log(options.r_max / options.r_min);
  // u in [-1, 0] walks linearly from 0 to r_min, u in [0, 1] geometrically on.
  auto radius = [&](double u) {
    return u <= 0.0 ? options.r_min * (u + 1.0) : options.r_min * std::exp(lr * u);
  };
  std::vector<DirectionCover> ray_parts(dirs.size());
  ParallelFor(dirs.size(), [&](std::size_t i) {
    const Eigen::VectorXd& s = dirs[i].coords;
    auto curve = [&](double u) -> Eigen::Vector2d { return image(radius(u) * s); };
    TraceCurveImpl(curve, -1.0, 1.0, options.steps, trace, &ray_parts[i]);
  });
  for (const auto& p : ray_parts) cover.Merge(p);

  if (n >= 2) {
    const int curves = n == 2 ? 1 : std::max(16, options.rays / 4);
    std::vector<DirectionCover> parts(options.radii * curves);
    ParallelFor(parts.size(), [&](std::size_t idx) {
      const int k = static_cast<int>(idx) / curves;
      const int c = static_cast<int>(idx) % curves;
      const double rho =
          options.radii == 1
              ? options.r_min
              : options.r_min * std::exp(lr * k / (options.radii - 1));
      std::function<Eigen::Vector2d(double)> curve;
      if (n == 2) {
        curve = [&, rho](double t) -> Eigen::Vector2d {
          Eigen::VectorXd x(2);
          x << rho * std::cos(t), rho * std::sin(t);
          return image(x);
        };
      } else {
        const Eigen::VectorXd z1 = dirs[c % dirs.size()].coords;
        const Eigen::VectorXd z2 = dirs[(c + 1) % dirs.size()].coords;
        curve = [&, rho, z1, z2](double t) -> Eigen::Vector2d {
          Eigen::VectorXd x = z1 * std::cos(t) + z2 * std::sin(t);
          const double nx = x.norm();
          if (nx == 0.0) return image(Eigen::VectorXd::Zero(n));
          return image(rho / nx * x);
        };
      }
      TraceCurveImpl(curve, 0.0, kTwoPi, options.steps, trace, &parts[idx]);
    });
    for (const auto& p : parts) cover.Merge(p);
  }
  cover.Finalize(1e-9);
  return cover;
}

}  // namespace slemma
