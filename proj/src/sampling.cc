#include <cmath>
#include <numbers>
#include <random>

#include "slemma/errors.h"
#include "slemma/homog_core.h"

namespace slemma {
namespace {

constexpr int kPrimes[] = {2,  3,  5,  7,  11, 13, 17, 19, 23, 29, 31, 37, 41,
                           43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97, 101};

double RadicalInverse(uint64_t index, int base) {
  double inv = 1.0 / base;
  double f = inv;
  double r = 0.0;
  while (index > 0) {
    r += f * static_cast<double>(index % base);
    index /= base;
    f *= inv;
  }
  return r;
}

// Exact axis points on quarter turns keep zero coordinates exactly zero.
Eigen::Vector2d GridPoint(int j, int count, double offset, const Dilation& d,
                          double* theta) {
  const double t = 2.0 * std::numbers::pi * (j + offset) / count;
  *theta = t;
  if (offset == 0.0 && (4L * j) % count == 0) {
    switch ((4L * j / count) % 4) {
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
  return ThetaCurvePoint(t, d);
}

}  // namespace

int DefaultSampleCount(int n) {
  if (n <= 1) return 2;
  if (n == 2) return 4096;
  return 65536;
}

int ResolvedSampleCount(int n, const SamplingOptions& options) {
  if (n == 1) return 2;
  return options.count > 0 ? options.count : DefaultSampleCount(n);
}

std::vector<SpherePoint> SphereSamples(const Dilation& d, const SamplingOptions& options) {
  const int n = d.dim();
  if (options.count < 0) throw ArgumentError("sample count must be >= 1");
  std::vector<SpherePoint> out;
  if (n == 1) {
    for (double v : {1.0, -1.0}) {
      SpherePoint p;
      p.coords = Eigen::VectorXd::Constant(1, v);
      p.index = static_cast<int>(out.size());
      out.push_back(std::move(p));
    }
    return out;
  }
  const int count = ResolvedSampleCount(n, options);
  out.reserve(count);
  const bool grid = options.scheme == SamplingScheme::kThetaGrid ||
                    (options.scheme == SamplingScheme::kAuto && n == 2);
  if (grid) {
    if (n != 2) throw ArgumentError("theta grid sampling needs n = 2");
    for (int j = 0; j < count; ++j) {
      double theta;
      Eigen::Vector2d x = GridPoint(j, count, options.theta_offset, d, &theta);
      SpherePoint p;
      p.coords = (d.norm_param() == 2.0) ? Eigen::VectorXd(x)
                                         : ProjectToSphere(x, d).coords;
      p.theta = theta;
      p.index = j;
      out.push_back(std::move(p));
    }
    return out;
  }
  const int dims = n + (n % 2);
  if (dims > static_cast<int>(std::size(kPrimes))) {
    throw ArgumentError("Halton sampling supports at most 26 dimensions");
  }
  std::mt19937_64 rng(options.seed);
  std::vector<double> shift(dims);
  for (auto& s : shift) s = UnitDouble(rng());
  Eigen::VectorXd u(dims);
  Eigen::VectorXd gauss(n);
  for (int j = 0; j < count; ++j) {
    for (int k = 0; k < dims; ++k) {
      double h = RadicalInverse(static_cast<uint64_t>(j) + 1, kPrimes[k]) + shift[k];
      u[k] = h - std::floor(h);
    }
    for (int k = 0; k < n; k += 2) {
      const double r = std::sqrt(-2.0 * std::log(std::max(u[k], 1e-300)));
      const double a = 2.0 * std::numbers::pi * u[k + 1];
      gauss[k] = r * std::cos(a);
      if (k + 1 < n) gauss[k + 1] = r * std::sin(a);
    }
    if (gauss.norm() == 0.0) gauss[0] = 1.0;
    SpherePoint p = ProjectToSphere(gauss / gauss.norm(), d);
    p.index = j;
    out.push_back(std::move(p));
  }
  return out;
}

}  // namespace slemma
