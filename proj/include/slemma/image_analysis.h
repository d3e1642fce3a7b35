#pragma once

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "slemma/direction_cover.h"
#include "slemma/homog_core.h"

namespace slemma {

/// Returns the common degree of a homogeneous pair. Throws ArgumentError if
/// either is not homogeneous or the degrees differ, and DegenerateError if
/// both are zero.
double CommonDegree(const GeneralizedPolynomial& f, const GeneralizedPolynomial& g,
                    const Dilation& d);

struct TraceOptions {
  /// Largest direction change accepted between neighbouring curve points.
  double max_jump{0.02};
  int max_depth{30};
};

/// Traces the direction of the planar curve c(t), t in [t0, t1], into the
/// cover. Segments are bisected until the direction moves by at most
/// max_jump; segments that still jump at max_depth (a zero of c) contribute
/// their endpoint directions only. Returns the largest |c| seen.
double TraceCurve(const std::function<Eigen::Vector2d(double)>& curve, double t0,
                  double t1, int steps, const TraceOptions& options,
                  DirectionCover* cover);

struct ImageSample {
  SpherePoint point;
  double f{0.0};
  double g{0.0};
};

/// Direction cover of U = {(f(x), g(x))} traced along curves on the
/// generalized sphere: the theta curve for n = 2, chained mixing curves
/// through sample points for n >= 3, the two points for n = 1.
struct ImageCover {
  DirectionCover cover;
  std::vector<ImageSample> samples;
  double scale{0.0};
  /// 2 pi / sample count; gaps up to 3 * resolution are not resolved.
  double resolution{0.0};
};

ImageCover BuildImageCover(const GeneralizedPolynomial& f, const GeneralizedPolynomial& g,
                           const Dilation& d, const SamplingOptions& sampling = {},
                           const TraceOptions& trace = {});

enum class ImageClass {
  kSingleton,
  kLineThroughOrigin,
  kFullPlane,
  kAngularSector,
  /// Several disjoint direction arcs; only possible with a common zero.
  kIrregular,
};

std::string ToString(ImageClass c);

struct ImageSummary {
  /// Sorted atan2(g, f) over samples with (f, g) != 0.
  std::vector<double> directions;
  double phi{0.0};
  ImageClass classification{ImageClass::kSingleton};
  double largest_gap{0.0};
  double gap_start{0.0};
  /// Covered direction arcs; their endpoints are the measured boundary rays.
  std::vector<Arc> arcs;
  double resolution{0.0};
  int sample_count{0};
  uint64_t seed{kDefaultSeed};
  double degree{0.0};
  std::vector<ImageSample> samples;
};

/// Throws DegenerateError if every sample maps to the origin.
ImageSummary SampleImage(const GeneralizedPolynomial& f, const GeneralizedPolynomial& g,
                         const Dilation& d, const SamplingOptions& sampling = {});

struct ZeroMargin {
  /// min over samples of max(|f|, |g|)
  double margin{0.0};
  bool refined{false};
  SpherePoint witness;
  /// Smallest certified cell bound when refined.
  double lower_bound{0.0};
  int cells{0};
  double threshold{0.0};
};

/// Sampled distance of (f, g) from a common zero. For n = 2 a margin above
/// threshold is confirmed by bisecting theta cells with term-wise range
/// bounds; n = 1 is exact; n >= 3 stays sampled.
ZeroMargin ComputeZeroMargin(const GeneralizedPolynomial& f, const GeneralizedPolynomial& g,
                             const Dilation& d, double threshold,
                             const SamplingOptions& sampling = {});

struct CurvePoint {
  double theta{0.0};
  double f{0.0};
  double g{0.0};
};

/// x(t) = z1 o |cos t|^r sgn(cos t) + z2 o |sin t|^r sgn(sin t) at
/// t_j = 2 pi j / steps, j = 0..steps.
std::vector<CurvePoint> MixingCurve(const GeneralizedPolynomial& f,
                                    const GeneralizedPolynomial& g, const Dilation& d,
                                    const Eigen::VectorXd& z1, const Eigen::VectorXd& z2,
                                    int steps);

Eigen::VectorXd MixingPoint(const Dilation& d, const Eigen::VectorXd& z1,
                            const Eigen::VectorXd& z2, double theta);

struct ConvexityViolation {
  Eigen::Vector2d u;
  Eigen::Vector2d v;
  Eigen::Vector2d midpoint;
  double midpoint_angle{0.0};
  /// Angular distance from the midpoint direction to the traced image.
  double clearance{0.0};
};

struct ConvexityProbeOptions {
  SamplingOptions sampling;
  /// Extra pairs tested after the random trials; skipped unless both lie in U.
  std::vector<std::pair<Eigen::Vector2d, Eigen::Vector2d>> candidate_pairs;
};

/// Midpoints of image pairs that fall in a confirmed gap of the direction set
/// of U. U is a union of rays, so a midpoint is in U iff its direction is.
std::vector<ConvexityViolation> ConvexityProbe(const GeneralizedPolynomial& f,
                                               const GeneralizedPolynomial& g,
                                               const Dilation& d, int trials,
                                               const ConvexityProbeOptions& options = {});

struct AffineCoverOptions {
  int rays{256};
  int radii{25};
  double r_min{1e-3};
  double r_max{1e3};
  int steps{512};
  uint64_t seed{kDefaultSeed};
};

/// Direction cover of {(f(x), g(x)) : x in R^n} for non-homogeneous f, g,
/// traced on spheres of geometric radii and along rays from the origin.
DirectionCover AffineImageCover(const GeneralizedPolynomial& f,
                                const GeneralizedPolynomial& g,
                                const AffineCoverOptions& options = {});

}  // namespace slemma
