#pragma once

#include <cstdint>
#include <string>

#include "chordal/loop.hpp"
#include "chordal/persistence.hpp"

namespace chordal {

/// Triangulated fundamental domain of the band of unordered parameter
/// pairs, sampled from the loop's half-squared chord length.
///
/// Coordinates: u = t2 - t1 in [0, 1] across the band, v = t1 + t2 in
/// [0, 1) along it; a grid point (a, b) is the pair {t1, t2} with
/// t1 = (v - u)/2, t2 = (v + u)/2. The row v = 1 is glued to the row v = 0
/// with u reversed (the glide reflection), and the two columns u = 0 and
/// u = 1 are the boundary circle of singleton pairs. Construction verifies
/// Euler characteristic 0 and exactly one boundary circle.
class MobiusGrid {
public:
    int m = 0;                    // resolution; (m+1) x m grid of vertices
    std::vector<double> values;   // per vertex, half squared chord length

    int32_t vertex_id(int a, int b) const {
        if (b == m) return int32_t((m - a));  // glued seam row
        return int32_t(b * (m + 1) + a);
    }
    size_t vertex_count() const { return size_t(m + 1) * size_t(m); }
    /// Parameter pair {t1, t2} of grid point (a, b).
    std::pair<double, double> params(int a, int b) const {
        const double u = double(a) / m, v = double(b) / m;
        return {0.5 * (v - u), 0.5 * (v + u)};
    }

    std::vector<std::array<int32_t, 3>> triangles() const;
    int euler_characteristic() const;
    int boundary_circle_count() const;
};

/// Samples the loop on an m x m fundamental-domain grid (m >= 8) and
/// asserts the glued topology (chi = 0, one boundary circle). Vertex
/// sampling is parallelised over rows when threads > 1.
MobiusGrid build_grid(const PolyLoop& loop, int m, int threads = 1);

/// Lower-star filtration of the grid: each simplex enters at the maximum
/// of its vertex values.
FilteredComplex lower_star_complex(const MobiusGrid& grid);

/// The lower-star filtration reduced over Z_p.
PersistenceDiagram lower_star_persistence(const MobiusGrid& grid, int p,
                                          std::vector<DiagramPoint>* zero_pairs = nullptr);

/// Estimated sup-norm gap between the true half-squared chord length and
/// its piecewise-linear grid interpolation, by sampling each triangle at a
/// refined set of interior and edge points.
double interpolation_gap(const MobiusGrid& grid, const PolyLoop& loop,
                         int refine = 3, int threads = 1);

/// Writes <base>.csv (rows = v, cols = u, chord lengths sqrt(2 T)),
/// <base>.pgm (8-bit linear) and <base>.json (min/max sidecar).
void export_heatmap(const MobiusGrid& grid, const std::string& base_path);

}  // namespace chordal
