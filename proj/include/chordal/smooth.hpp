#pragma once

#include <array>
#include <functional>
#include <vector>

#include "chordal/geometry.hpp"

namespace chordal {

/// A C^2 closed curve on [0, 1) given by position and derivative callbacks
/// in the curve's own parameter.
struct SmoothCurve {
    int dim = 2;
    std::function<Vec(double)> pos;
    std::function<Vec(double)> deriv;
    std::function<Vec(double)> deriv2;
};

SmoothCurve make_circle(double r);
SmoothCurve make_ellipse(double a, double b);
/// A (2,3) torus knot, the built-in space-curve example.
SmoothCurve make_trefoil();

/// Gradient of the half squared chord length (t1, t2) -> T(t1, t2) in the
/// curve parameters.
std::array<double, 2> chord_gradient(const SmoothCurve& c, double t1, double t2);
/// Hessian, row-major [h11, h12, h12, h22].
std::array<double, 4> chord_hessian(const SmoothCurve& c, double t1, double t2);

struct SmoothCriticalPoint {
    enum class Type { minimum, saddle, maximum, degenerate };

    double t1 = 0, t2 = 0;
    double value = 0;
    double kappa12 = 0, kappa21 = 0;  // <unit-speed x_i'', v_ij>
    double cos_theta12 = 0;
    Type type = Type::degenerate;
};

/// Classifies a critical chord of a smooth curve from its curvature data:
/// a saddle when (1-kappa12)(1-kappa21) < cos^2(theta12), otherwise a
/// maximum when both kappas exceed 1 and a minimum when both are below 1;
/// within tol of the saddle boundary the point is flagged degenerate.
/// Curvatures are evaluated in the unit-speed parametrisation. Throws if
/// (t1, t2) is not critical within tol.
SmoothCriticalPoint classify_smooth(const SmoothCurve& c, double t1, double t2,
                                    double tol = 1e-9);

/// Finds interior critical chords by Newton iteration on the gradient from
/// a grid of seeds, discarding near-singular Hessians, deduplicating
/// converged roots and excluding chords with parameter offset below the
/// cutoff. Newton divergence on a seed is not an error.
std::vector<SmoothCriticalPoint> find_smooth_critical(const SmoothCurve& c,
                                                      int grid_n = 24,
                                                      int newton_iters = 40,
                                                      double tol = 1e-9,
                                                      double cutoff = 0.02);

}  // namespace chordal
