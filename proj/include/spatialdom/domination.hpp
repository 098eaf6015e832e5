#pragma once

#include <algorithm>
#include <cassert>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "spatialdom/geometry.hpp"
#include "spatialdom/prng.hpp"

namespace spatialdom {

/// Largest dimensionality the corner-enumeration oracle accepts by default;
/// its cost doubles with every dimension.
inline constexpr std::size_t kDefaultCornerCap = 20;

/// Raised when corner enumeration is asked for more dimensions than the cap
/// allows. Never downgraded to a silent fallback.
struct CornerLimitExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Outcome of the domination decision together with its diagnostics.
///
/// margin is the criterion sum in powered distance units: negative iff a
/// dominates b w.r.t. ref, and its magnitude tells how decisively. The
/// per-dimension terms are the summands (each the larger of the two
/// endpoint evaluations in that dimension).
struct DominationVerdict {
  bool dominated = false;
  double margin = 0.0;
  std::vector<double> per_dim_terms;
};

/// A witness triple violating domination: a point of each rectangle with
/// dist(a, r) >= dist(b, r).
struct Counterexample {
  Point a;
  Point b;
  Point r;
  double dist_a = 0.0;
  double dist_b = 0.0;
};

namespace detail {

// One dimension's term of the criterion at reference coordinate rc:
// MaxDist(a_i, rc)^p - MinDist(b_i, rc)^p.
inline double dim_term(const Interval& a_iv, const Interval& b_iv, double rc,
                       const LpNorm& norm) {
  return norm.pow_abs(interval_max_dist(a_iv, rc)) -
         norm.pow_abs(interval_min_dist(b_iv, rc));
}

}  // namespace detail

/// Decides whether every point of a is strictly closer to every point of ref
/// than any point of b is, and reports the margin and per-dimension terms.
///
/// Runs in O(d): per dimension only the two endpoints of ref's interval need
/// evaluating, and the larger term is added to the sum. Domination holds iff
/// the sum is strictly negative.
inline DominationVerdict domination_margin(const Rect& a, const Rect& b,
                                           const Rect& ref,
                                           const LpNorm& norm) {
  detail::require_same_dim(a.dim(), b.dim(), "domination");
  detail::require_same_dim(a.dim(), ref.dim(), "domination");
  DominationVerdict verdict;
  verdict.per_dim_terms.reserve(a.dim());
  double sum = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    const double at_lo = detail::dim_term(a[i], b[i], ref[i].lo(), norm);
    const double at_hi = detail::dim_term(a[i], b[i], ref[i].hi(), norm);
    const double term = std::max(at_lo, at_hi);
    verdict.per_dim_terms.push_back(term);
    sum += term;
  }
  assert(!std::isnan(sum));
  verdict.margin = sum;
  verdict.dominated = sum < 0.0;
  return verdict;
}

/// Verdict-only form of domination_margin; same decision, no per-dimension
/// diagnostics and no allocation.
inline bool dominates(const Rect& a, const Rect& b, const Rect& ref,
                      const LpNorm& norm) {
  detail::require_same_dim(a.dim(), b.dim(), "domination");
  detail::require_same_dim(a.dim(), ref.dim(), "domination");
  double sum = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    sum += std::max(detail::dim_term(a[i], b[i], ref[i].lo(), norm),
                    detail::dim_term(a[i], b[i], ref[i].hi(), norm));
  }
  assert(!std::isnan(sum));
  return sum < 0.0;
}

/// The classic rectangle-level baseline: prune b when the maximum distance
/// from a to ref falls below the minimum distance from b to ref. Sufficient
/// but not complete; kept as the comparison criterion. Compares powered
/// sums, which orders the same as the rooted distances.
inline bool minmax_dominates(const Rect& a, const Rect& b, const Rect& ref,
                             const LpNorm& norm) {
  detail::require_same_dim(a.dim(), b.dim(), "domination");
  detail::require_same_dim(a.dim(), ref.dim(), "domination");
  return rect_max_dist_pow(a, ref, norm) < rect_min_dist_pow(b, ref, norm);
}

/// Exhaustive verification oracle: evaluates the criterion sum at every one
/// of ref's 2^d corners and takes the overall maximum. Same verdict as
/// dominates() on every input, at O(2^d * d) cost; refuses dimensionalities
/// above dim_cap.
inline bool corner_oracle_dominates(const Rect& a, const Rect& b,
                                    const Rect& ref, const LpNorm& norm,
                                    std::size_t dim_cap = kDefaultCornerCap) {
  detail::require_same_dim(a.dim(), b.dim(), "domination");
  detail::require_same_dim(a.dim(), ref.dim(), "domination");
  const std::size_t d = ref.dim();
  if (d > dim_cap) {
    throw CornerLimitExceeded("corner oracle limited to " +
                              std::to_string(dim_cap) + " dimensions, got " +
                              std::to_string(d));
  }
  double best = -std::numeric_limits<double>::infinity();
  const std::uint64_t corners = std::uint64_t{1} << d;
  for (std::uint64_t mask = 0; mask < corners; ++mask) {
    double sum = 0.0;
    for (std::size_t i = 0; i < d; ++i) {
      const double rc = (mask >> i) & 1 ? ref[i].hi() : ref[i].lo();
      sum += detail::dim_term(a[i], b[i], rc, norm);
    }
    best = std::max(best, sum);
  }
  return best < 0.0;
}

/// Randomized falsifier of the domination statement: draws n_samples
/// uniform triples (a, b, r) from the three rectangles and returns the
/// first with dist(a, r) >= dist(b, r), or nullopt if none turns up.
/// Deterministic for a fixed seed; degenerate intervals yield their single
/// point.
inline std::optional<Counterexample> sample_falsify(
    const Rect& a, const Rect& b, const Rect& ref, const LpNorm& norm,
    std::size_t n_samples, std::uint64_t seed) {
  detail::require_same_dim(a.dim(), b.dim(), "sample_falsify");
  detail::require_same_dim(a.dim(), ref.dim(), "sample_falsify");
  if (n_samples < 1) {
    throw std::invalid_argument("sample_falsify needs at least one sample");
  }
  const std::size_t d = a.dim();
  Xoshiro256PlusPlus rng(seed);
  std::vector<double> pa(d), pb(d), pr(d);
  for (std::size_t s = 0; s < n_samples; ++s) {
    for (std::size_t i = 0; i < d; ++i) pa[i] = rng.uniform(a[i].lo(), a[i].hi());
    for (std::size_t i = 0; i < d; ++i) pb[i] = rng.uniform(b[i].lo(), b[i].hi());
    for (std::size_t i = 0; i < d; ++i) pr[i] = rng.uniform(ref[i].lo(), ref[i].hi());
    double sum_a = 0.0;
    double sum_b = 0.0;
    for (std::size_t i = 0; i < d; ++i) {
      sum_a += norm.pow_abs(pa[i] - pr[i]);
      sum_b += norm.pow_abs(pb[i] - pr[i]);
    }
    if (sum_a >= sum_b) {
      Counterexample ce{Point(pa), Point(pb), Point(pr), 0.0, 0.0};
      ce.dist_a = norm.root(sum_a);
      ce.dist_b = norm.root(sum_b);
      return ce;
    }
  }
  return std::nullopt;
}

}  // namespace spatialdom
