#pragma once

#include <stdexcept>

#include "spatialdom/domination.hpp"
#include "spatialdom/geometry.hpp"

namespace spatialdom {

/// Raised when the two anchor points coincide and no bisector exists.
struct DegenerateBisector : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Position of a rectangle relative to the bisector of two points: entirely
/// on a's side, entirely on b's side, or touching/crossing the boundary.
enum class HalfspaceClass {
  FullyCloserToA,
  Intersecting,
  FullyCloserToB,
};

inline const char* to_string(HalfspaceClass c) {
  switch (c) {
    case HalfspaceClass::FullyCloserToA: return "fully-closer-to-a";
    case HalfspaceClass::Intersecting: return "intersecting";
    case HalfspaceClass::FullyCloserToB: return "fully-closer-to-b";
  }
  return "?";
}

/// Classifies rectangle r against the equidistance boundary of points a and
/// b via two degenerate domination tests. A rectangle with an equidistant
/// boundary point counts as Intersecting, so a "fully closer" answer is
/// always safe for pruning. For p != 2 the boundary is not a hyperplane but
/// the three-way split stays well-defined.
inline HalfspaceClass classify_halfspace(const Point& a, const Point& b,
                                         const Rect& r, const LpNorm& norm) {
  detail::require_same_dim(a.dim(), b.dim(), "classify_halfspace");
  detail::require_same_dim(a.dim(), r.dim(), "classify_halfspace");
  if (a == b) {
    throw DegenerateBisector("bisector anchors coincide");
  }
  const Rect ra = Rect::from_point(a);
  const Rect rb = Rect::from_point(b);
  if (dominates(ra, rb, r, norm)) return HalfspaceClass::FullyCloserToA;
  if (dominates(rb, ra, r, norm)) return HalfspaceClass::FullyCloserToB;
  return HalfspaceClass::Intersecting;
}

}  // namespace spatialdom
