#pragma once

#include <vector>

namespace slemma {

/// Wraps an angle into [-pi, pi).
double WrapAngle(double a);

/// Counterclockwise arc [start, start + length] on the unit circle, with
/// start in [-pi, pi) and 0 <= length <= 2 pi.
struct Arc {
  double start{0.0};
  double length{0.0};
  double end() const { return start + length; }
};

/// Union of closed arcs of directions in the plane.
class DirectionCover {
 public:
  /// Adds the arc swept from `from` by the signed angle `delta`.
  void AddArc(double from, double delta);
  void AddDirection(double angle) { AddArc(angle, 0.0); }
  void Merge(const DirectionCover& other);

  /// Sorts and joins arcs whose separation is at most merge_tol. Must be
  /// called before any query.
  void Finalize(double merge_tol);

  const std::vector<Arc>& arcs() const { return arcs_; }
  bool empty() const { return arcs_.empty(); }
  bool full() const { return full_; }
  double CoveredMeasure() const;

  /// Largest uncovered arc; length 0 when the circle is covered and 2 pi when
  /// nothing is.
  Arc LargestGap() const;
  std::vector<Arc> Gaps() const;

  /// Angular distance from the angle to the cover (0 inside).
  double Distance(double angle) const;
  bool Contains(double angle, double tol) const { return Distance(angle) <= tol; }

  DirectionCover Rotated(double by, double merge_tol) const;

 private:
  std::vector<Arc> raw_;
  std::vector<Arc> arcs_;
  bool full_{false};
  bool finalized_{false};
};

/// Arcs of a that meet arcs of b, each arc grown by tol on both ends.
std::vector<Arc> Intersect(const DirectionCover& a, const DirectionCover& b, double tol);

/// Union of the cover and its rotation by pi.
DirectionCover Symmetrized(const DirectionCover& c, double merge_tol);

}  // namespace slemma
