#pragma once

#include <functional>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "chordal/geometry.hpp"

namespace chordal {

/// Raised when input data cannot form a valid loop (n <= 3, zero-length
/// edge, non-finite coordinates, dimension mismatch).
struct LoopError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Position on the loop: the point x_i + s * (x_{i+1} - x_i). The parameter
/// (i, s = 1) denotes the same point as (i+1, s = 0).
struct LoopParam {
    int edge = 0;
    double s = 0.0;
};

/// A closed piecewise-linear loop through cyclically ordered points in R^d,
/// with derived edge vectors, edge lengths, normalised partial arc lengths
/// and unit tangents. Immutable after construction; safe to share across
/// threads.
class PolyLoop {
public:
    /// Builds the loop through the given points in cyclic order. Requires
    /// n > 3, finite coordinates of equal dimension, and no zero-length
    /// edge (a repeated consecutive point is reported as a coincident-point
    /// error, the fatal form of C1).
    static PolyLoop build(const std::vector<Vec>& points);

    int size() const { return n_; }
    int dim() const { return d_; }
    double total_length() const { return total_length_; }

    std::span<const double> point(int i) const;
    std::span<const double> edge_vector(int i) const;
    std::span<const double> unit_tangent(int i) const;
    double edge_length(int i) const { return lengths_[wrap(i)]; }
    /// Normalised arc length of vertex i, in [0, 1).
    double partial_length(int i) const { return partial_[wrap(i)]; }

    /// Point at parameter (edge i, local s in [0, 1]).
    Vec at(LoopParam w) const;
    /// Point at normalised arc length t in [0, 1).
    Vec at_arclength(double t) const;
    /// Edge index and local coordinate for normalised arc length t.
    LoopParam param_at_arclength(double t) const;

    /// Half squared distance between the two loop points named by w:
    /// (1/2)|gamma(w.first) - gamma(w.second)|^2. Symmetric in the pair.
    double eval_T(std::pair<LoopParam, LoopParam> w) const;

    double bounding_box_diameter() const;

    int wrap(int i) const {
        int r = i % n_;
        return r < 0 ? r + n_ : r;
    }

private:
    PolyLoop() = default;
    int n_ = 0;
    int d_ = 0;
    double total_length_ = 0;
    std::vector<double> coords_;    // n * d, row-major
    std::vector<double> edges_;     // u_i = x_{i+1} - x_i
    std::vector<double> tangents_;  // u_i / |u_i|
    std::vector<double> lengths_;
    std::vector<double> partial_;   // cumulative length / total, partial_[0] = 0
};

/// Violations of the non-degeneracy conditions: coincident points,
/// improperly intersecting segments, and (anti)parallel segment pairs.
/// The loop is accepted iff all three lists are empty.
struct NondegeneracyReport {
    std::vector<std::pair<int, int>> c1_violations;
    std::vector<std::pair<int, int>> c2_violations;
    std::vector<std::pair<int, int>> c3_violations;
    double tolerance = 0;

    bool pass() const {
        return c1_violations.empty() && c2_violations.empty() &&
               c3_violations.empty();
    }
    bool embedding_ok() const {  // C1 and C2 only
        return c1_violations.empty() && c2_violations.empty();
    }
};

/// Default validation tolerance: 1e-9 times the bounding-box diameter.
double default_tolerance(const PolyLoop& loop);

/// Checks C1 (pairwise point separation > tol), C2 (non-adjacent segments
/// at distance > tol, adjacent segments meeting only at the shared vertex)
/// and C3 (|<tau_i, tau_j>| < 1 - tol for i != j).
NondegeneracyReport check_nondegeneracy(const PolyLoop& loop, double tol);

/// PL sample of a parametric curve at the n parameters k/n, k = 0..n-1.
PolyLoop sample_curve(const std::function<Vec(double)>& curve, int n);

}  // namespace chordal
