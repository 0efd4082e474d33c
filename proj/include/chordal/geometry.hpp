#pragma once

#include <span>
#include <vector>

/// Dimension-agnostic Euclidean primitives: squared distances, closest-point
/// computations between points and segments, and Cayley-Menger simplex
/// volumes. All functions are pure and reentrant.
namespace chordal {

using Vec = std::vector<double>;

/// Result of minimising the half-squared distance between two segments
/// A(s1) = a0 + s1 (a1 - a0), B(s2) = b0 + s2 (b1 - b0) over [0,1]^2.
struct SegmentPairMin {
    double sq_half_distance;  // (1/2) |A(s1) - B(s2)|^2 at the minimiser
    double s1;
    double s2;
};

struct PointSegmentMin {
    double sq_distance;  // |p - (a + s (b - a))|^2 at the minimiser
    double s;
};

/// |p - q|^2. Throws std::invalid_argument on dimension mismatch.
double sq_distance(std::span<const double> p, std::span<const double> q);

/// Minimises |p - (a + s (b - a))|^2 over s in [0,1]. A degenerate segment
/// (a == b) returns s = 0. The result is invariant, bit for bit, under
/// reversing the segment orientation.
PointSegmentMin point_segment_min(std::span<const double> p,
                                  std::span<const double> a,
                                  std::span<const double> b);

/// Minimises (1/2)|A(s1) - B(s2)|^2 over the unit square. The convex
/// quadratic is positive semi-definite for parallel segments; in that case
/// the KKT candidates on the boundary cover the flat valley and the
/// lexicographically smallest (s1, s2) minimiser is returned. The value is
/// invariant, bit for bit, under swapping the segments and under reversing
/// either segment.
SegmentPairMin segment_segment_min(std::span<const double> a0,
                                   std::span<const double> a1,
                                   std::span<const double> b0,
                                   std::span<const double> b1);

/// Squared k-volume of the simplex on k+1 points via the Cayley-Menger
/// determinant. Returns 0 for affinely dependent configurations; negative
/// round-off below 1e-12 * scale^(2k) is clamped to 0. Requires
/// 1 <= k <= d where k = points.size() - 1.
double cayley_menger_sq_volume(const std::vector<Vec>& points);

}  // namespace chordal
