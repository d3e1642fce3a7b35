#include "slemma/direction_cover.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace slemma {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

}  // namespace

double WrapAngle(double a) {
  double w = std::fmod(a + kPi, kTwoPi);
  if (w < 0) w += kTwoPi;
  w -= kPi;
  if (w >= kPi) w -= kTwoPi;
  return w;
}

void DirectionCover::AddArc(double from, double delta) {
  finalized_ = false;
  if (delta < 0) {
    from += delta;
    delta = -delta;
  }
  raw_.push_back(Arc{WrapAngle(from), std::min(delta, kTwoPi)});
}

void DirectionCover::Merge(const DirectionCover& other) {
  finalized_ = false;
  raw_.insert(raw_.end(), other.raw_.begin(), other.raw_.end());
}

void DirectionCover::Finalize(double merge_tol) {
  finalized_ = true;
  full_ = false;
  arcs_.clear();
  // Unroll onto [-pi, pi] by splitting arcs that cross pi.
  std::vector<std::pair<double, double>> iv;
  iv.reserve(raw_.size() + 4);
  for (const Arc& a : raw_) {
    if (a.length >= kTwoPi) {
      full_ = true;
      continue;
    }
    const double hi = a.start + a.length;
    if (hi > kPi) {
      iv.emplace_back(a.start, kPi);
      iv.emplace_back(-kPi, hi - kTwoPi);
    } else {
      iv.emplace_back(a.start, hi);
    }
  }
  if (full_) {
    arcs_.push_back(Arc{-kPi, kTwoPi});
    return;
  }
  if (iv.empty()) return;
  std::sort(iv.begin(), iv.end());
  std::vector<std::pair<double, double>> merged;
  for (const auto& p : iv) {
    if (!merged.empty() && p.first <= merged.back().second + merge_tol) {
      merged.back().second = std::max(merged.back().second, p.second);
    } else {
      merged.push_back(p);
    }
  }
  // Join across the branch cut.
  if (merged.size() > 1 &&
      merged.front().first + kTwoPi <= merged.back().second + merge_tol) {
    merged.back().second = std::max(merged.back().second, merged.front().second + kTwoPi);
    merged.erase(merged.begin());
  }
  if (merged.size() == 1 && merged[0].second - merged[0].first >= kTwoPi - merge_tol) {
    full_ = true;
    arcs_.push_back(Arc{-kPi, kTwoPi});
    return;
  }
  std::sort(merged.begin(), merged.end());
  for (const auto& p : merged) {
    arcs_.push_back(Arc{WrapAngle(p.first), std::min(p.second - p.first, kTwoPi)});
  }
  std::sort(arcs_.begin(), arcs_.end(),
            [](const Arc& a, const Arc& b) { return a.start < b.start; });
}

double DirectionCover::CoveredMeasure() const {
  if (!finalized_) throw std::logic_error("DirectionCover used before Finalize");
  double s = 0.0;
  for (const Arc& a : arcs_) s += a.length;
  return std::min(s, kTwoPi);
}

std::vector<Arc> DirectionCover::Gaps() const {
  if (!finalized_) throw std::logic_error("DirectionCover used before Finalize");
  std::vector<Arc> gaps;
  if (full_) return gaps;
  if (arcs_.empty()) {
    gaps.push_back(Arc{-kPi, kTwoPi});
    return gaps;
  }
  for (size_t i = 0; i < arcs_.size(); ++i) {
    const Arc& a = arcs_[i];
    const Arc& b = arcs_[(i + 1) % arcs_.size()];
    double len = b.start - a.end();
    while (len < 0) len += kTwoPi;
    if (arcs_.size() == 1) len = kTwoPi - a.length;
    gaps.push_back(Arc{WrapAngle(a.end()), std::max(0.0, len)});
  }
  return gaps;
}

Arc DirectionCover::LargestGap() const {
  Arc best{0.0, 0.0};
  for (const Arc& g : Gaps()) {
    if (g.length > best.length) best = g;
  }
  return best;
}

double DirectionCover::Distance(double angle) const {
  if (!finalized_) throw std::logic_error("DirectionCover used before Finalize");
  if (full_) return 0.0;
  double best = std::numeric_limits<double>::infinity();
  for (const Arc& a : arcs_) {
    double rel = WrapAngle(angle - a.start);
    if (rel < 0) rel += kTwoPi;
    if (rel <= a.length) return 0.0;
    best = std::min(best, std::min(rel - a.length, kTwoPi - rel));
  }
  return best;
}

DirectionCover DirectionCover::Rotated(double by, double merge_tol) const {
  DirectionCover out;
  for (const Arc& a : arcs_) out.AddArc(a.start + by, a.length);
  if (full_) out.AddArc(-kPi, kTwoPi);
  out.Finalize(merge_tol);
  return out;
}

std::vector<Arc> Intersect(const DirectionCover& a, const DirectionCover& b, double tol) {
  std::vector<Arc> out;
  for (const Arc& x : a.arcs()) {
    for (const Arc& y : b.arcs()) {
      const double xs = x.start - tol;
      const double xe = x.end() + tol;
      for (int shift = -1; shift <= 1; ++shift) {
        const double ys = y.start - tol + shift * kTwoPi;
        const double ye = y.end() + tol + shift * kTwoPi;
        const double lo = std::max(xs, ys);
        const double hi = std::min(xe, ye);
        if (lo <= hi) out.push_back(Arc{WrapAngle(lo), std::min(hi - lo, kTwoPi)});
      }
    }
  }
  return out;
}

DirectionCover Symmetrized(const DirectionCover& c, double merge_tol) {
  DirectionCover out;
  for (const Arc& a : c.arcs()) {
    out.AddArc(a.start, a.length);
    out.AddArc(a.start + kPi, a.length);
  }
  out.Finalize(merge_tol);
  return out;
}

}  // namespace slemma
