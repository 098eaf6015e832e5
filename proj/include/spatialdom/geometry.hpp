#pragma once

#include <cassert>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace spatialdom {

/// Raised when an operation receives operands of different dimensionality.
struct DimensionMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Raised when a geometric value violates its own invariants
/// (inverted interval, non-finite coordinate, invalid norm order).
struct InvalidGeometry : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

namespace detail {

inline void require_same_dim(std::size_t a, std::size_t b, const char* what) {
  if (a != b) {
    throw DimensionMismatch(std::string(what) + ": dimensionality " +
                            std::to_string(a) + " vs " + std::to_string(b));
  }
}

}  // namespace detail

/// Closed 1-d range [lo, hi]. Degenerate (lo == hi) intervals represent a
/// single coordinate. Inverted or non-finite bounds are rejected on
/// construction, never repaired.
class Interval {
 public:
  Interval(double lo, double hi) : lo_(lo), hi_(hi) {
    if (!std::isfinite(lo) || !std::isfinite(hi)) {
      throw InvalidGeometry("interval bounds must be finite");
    }
    if (lo > hi) {
      throw InvalidGeometry("interval lo " + std::to_string(lo) +
                            " exceeds hi " + std::to_string(hi));
    }
  }

  double lo() const { return lo_; }
  double hi() const { return hi_; }
  double length() const { return hi_ - lo_; }
  double center() const { return 0.5 * (lo_ + hi_); }
  bool degenerate() const { return lo_ == hi_; }

  bool contains(double x) const { return lo_ <= x && x <= hi_; }
  bool contains(const Interval& other) const {
    return lo_ <= other.lo_ && other.hi_ <= hi_;
  }

  friend bool operator==(const Interval&, const Interval&) = default;

 private:
  double lo_;
  double hi_;
};

/// A location in d-dimensional space. Coordinates must be finite.
class Point {
 public:
  explicit Point(std::vector<double> coords) : coords_(std::move(coords)) {
    if (coords_.empty()) {
      throw InvalidGeometry("point needs at least one coordinate");
    }
    for (double c : coords_) {
      if (!std::isfinite(c)) {
        throw InvalidGeometry("point coordinates must be finite");
      }
    }
  }
  Point(std::initializer_list<double> coords)
      : Point(std::vector<double>(coords)) {}

  std::size_t dim() const { return coords_.size(); }
  double operator[](std::size_t i) const { return coords_[i]; }
  const std::vector<double>& coords() const { return coords_; }

  friend bool operator==(const Point&, const Point&) = default;

 private:
  std::vector<double> coords_;
};

/// Axis-parallel d-dimensional rectangle, one Interval per dimension.
/// May be degenerate in any subset of dimensions (a point when all are).
class Rect {
 public:
  explicit Rect(std::vector<Interval> dims) : dims_(std::move(dims)) {
    if (dims_.empty()) {
      throw InvalidGeometry("rectangle needs at least one dimension");
    }
  }
  Rect(std::initializer_list<Interval> dims)
      : Rect(std::vector<Interval>(dims)) {}

  static Rect from_point(const Point& p) {
    std::vector<Interval> dims;
    dims.reserve(p.dim());
    for (std::size_t i = 0; i < p.dim(); ++i) dims.emplace_back(p[i], p[i]);
    return Rect(std::move(dims));
  }

  std::size_t dim() const { return dims_.size(); }
  const Interval& operator[](std::size_t i) const { return dims_[i]; }
  const std::vector<Interval>& dims() const { return dims_; }

  bool is_point() const {
    for (const auto& iv : dims_) {
      if (!iv.degenerate()) return false;
    }
    return true;
  }

  /// The rectangle collapsed to a Point; only valid when is_point().
  Point as_point() const {
    if (!is_point()) {
      throw InvalidGeometry("rectangle is not degenerate");
    }
    std::vector<double> coords;
    coords.reserve(dims_.size());
    for (const auto& iv : dims_) coords.push_back(iv.lo());
    return Point(std::move(coords));
  }

  Point center() const {
    std::vector<double> coords;
    coords.reserve(dims_.size());
    for (const auto& iv : dims_) coords.push_back(iv.center());
    return Point(std::move(coords));
  }

  bool contains(const Rect& other) const {
    detail::require_same_dim(dim(), other.dim(), "contains");
    for (std::size_t i = 0; i < dims_.size(); ++i) {
      if (!dims_[i].contains(other.dims_[i])) return false;
    }
    return true;
  }

  bool contains(const Point& p) const {
    detail::require_same_dim(dim(), p.dim(), "contains");
    for (std::size_t i = 0; i < dims_.size(); ++i) {
      if (!dims_[i].contains(p[i])) return false;
    }
    return true;
  }

  /// Grows this rectangle to the MBR of itself and other.
  void expand(const Rect& other) {
    detail::require_same_dim(dim(), other.dim(), "expand");
    for (std::size_t i = 0; i < dims_.size(); ++i) {
      dims_[i] = Interval(std::min(dims_[i].lo(), other.dims_[i].lo()),
                          std::max(dims_[i].hi(), other.dims_[i].hi()));
    }
  }

  friend bool operator==(const Rect&, const Rect&) = default;

 private:
  std::vector<Interval> dims_;
};

/// Order of the Lp norm used for all distances. Any finite real p >= 1 is
/// accepted; the L-infinity norm is not supported.
class LpNorm {
 public:
  explicit LpNorm(double p) : p_(p) {
    if (!std::isfinite(p) || p < 1.0) {
      throw InvalidGeometry("norm order must be a finite real >= 1");
    }
  }

  double p() const { return p_; }

  /// |x|^p, the powered-space contribution of a single coordinate delta.
  double pow_abs(double x) const {
    if (p_ == 2.0) return x * x;
    if (p_ == 1.0) return std::fabs(x);
    return std::pow(std::fabs(x), p_);
  }

  /// s^(1/p), turning a powered-space sum back into a distance.
  double root(double s) const {
    if (p_ == 2.0) return std::sqrt(s);
    if (p_ == 1.0) return s;
    return std::pow(s, 1.0 / p_);
  }

  friend bool operator==(const LpNorm&, const LpNorm&) = default;

 private:
  double p_;
};

/// Minimum distance between interval X and scalar x: 0 when x lies inside,
/// otherwise the gap to the nearer endpoint.
inline double interval_min_dist(const Interval& x_iv, double x) {
  if (x < x_iv.lo()) return x_iv.lo() - x;
  if (x > x_iv.hi()) return x - x_iv.hi();
  return 0.0;
}

/// Maximum distance between interval X and scalar x: the gap to the farther
/// endpoint.
inline double interval_max_dist(const Interval& x_iv, double x) {
  return std::max(std::fabs(x - x_iv.lo()), std::fabs(x - x_iv.hi()));
}

/// Lp distance between two points.
inline double point_dist(const Point& a, const Point& b, const LpNorm& norm) {
  detail::require_same_dim(a.dim(), b.dim(), "point_dist");
  double sum = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    sum += norm.pow_abs(a[i] - b[i]);
  }
  assert(!std::isnan(sum));
  return norm.root(sum);
}

/// Powered-space minimum distance between two rectangles (no p-th root).
inline double rect_min_dist_pow(const Rect& a, const Rect& b,
                                const LpNorm& norm) {
  detail::require_same_dim(a.dim(), b.dim(), "rect_min_dist");
  double sum = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    const double gap = std::max(
        0.0, std::max(b[i].lo() - a[i].hi(), a[i].lo() - b[i].hi()));
    sum += norm.pow_abs(gap);
  }
  assert(!std::isnan(sum) && sum >= 0.0);
  return sum;
}

/// Powered-space maximum distance between two rectangles (no p-th root).
inline double rect_max_dist_pow(const Rect& a, const Rect& b,
                                const LpNorm& norm) {
  detail::require_same_dim(a.dim(), b.dim(), "rect_max_dist");
  double sum = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    const double m = std::max(std::fabs(a[i].lo() - b[i].hi()),
                              std::fabs(a[i].hi() - b[i].lo()));
    sum += norm.pow_abs(m);
  }
  assert(!std::isnan(sum) && sum >= 0.0);
  return sum;
}

/// Minimum Lp distance between two rectangles; zero iff they intersect.
inline double rect_min_dist(const Rect& a, const Rect& b, const LpNorm& norm) {
  return norm.root(rect_min_dist_pow(a, b, norm));
}

/// Maximum Lp distance between two rectangles (farthest pair of points).
inline double rect_max_dist(const Rect& a, const Rect& b, const LpNorm& norm) {
  return norm.root(rect_max_dist_pow(a, b, norm));
}

}  // namespace spatialdom
