#pragma once

// Test-only independent oracles: a rank-function persistence computation
// (no reduction algorithm shared with the library), brute-force matchings,
// dense grid searches and seeded random-loop generators.

#include <cstdint>
#include <random>
#include <vector>

#include "chordal/loop.hpp"
#include "chordal/persistence.hpp"

namespace oracles {

using chordal::FilteredComplex;
using chordal::PersistenceDiagram;
using chordal::PolyLoop;
using chordal::Vec;

/// Persistence diagram from the rank function of the filtration, computed
/// with plain Gaussian elimination over Z_p. Exponential-ish in complex
/// size; intended for complexes with a few hundred simplices.
PersistenceDiagram rank_function_diagram(const FilteredComplex& fc, int p);

/// Betti numbers of the sublevel complex at value a over Z_p.
std::array<int, 3> prefix_betti(const FilteredComplex& fc, double a, int p);

/// Betti numbers implied by a diagram at value a (born <= a, dead > a).
std::array<int, 3> diagram_betti(const PersistenceDiagram& d, double a);

/// Exhaustive bottleneck over all partial matchings; both diagrams need at
/// most 6 points in the chosen dimension.
double brute_force_bottleneck(const PersistenceDiagram& d1,
                              const PersistenceDiagram& d2, int dim);

/// Uniform points in [0,1]^d.
std::vector<Vec> random_points(std::mt19937_64& rng, int n, int d);

/// Rejection-samples a loop through n uniform points in [0,1]^d until C1-C3
/// hold at the default tolerance; optional clearance demands non-adjacent
/// segment separation of at least clearance (absolute).
PolyLoop random_nondegenerate_loop(uint64_t seed, int n, int d,
                                   double clearance = 0.0);

/// Applies a seeded random rotation + translation to the loop's points.
std::vector<Vec> random_rigid_motion(std::mt19937_64& rng,
                                     const std::vector<Vec>& pts);

/// Dense grid search for min_{s in [0,1]} |p - (a + s(b-a))|^2.
double grid_point_segment_min(const Vec& p, const Vec& a, const Vec& b,
                              int samples);

/// Dense grid search for min over [0,1]^2 of (1/2)|A(s1) - B(s2)|^2.
double grid_segment_segment_min(const Vec& a0, const Vec& a1, const Vec& b0,
                                const Vec& b1, int samples);

}  // namespace oracles
