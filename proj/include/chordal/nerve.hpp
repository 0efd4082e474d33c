#pragma once

#include <array>
#include <cstdint>
#include <unordered_map>
#include <vector>

#include "chordal/loop.hpp"

namespace chordal {

/// Vertices of the nerve are cover cells indexed by unordered segment pairs
/// {i, j}, canonicalised to 0 <= i <= j <= n-1. A simplex stores its sorted
/// cell ids, padded with -1.
struct Simplex {
    std::array<int32_t, 4> v{-1, -1, -1, -1};
    int8_t dim = 0;

    bool operator==(const Simplex&) const = default;
    bool operator<(const Simplex& o) const { return v < o.v; }
};

struct SimplexHash {
    size_t operator()(const Simplex& s) const {
        size_t h = 1469598103934665603ull;
        for (int32_t x : s.v) {
            h ^= size_t(uint32_t(x));
            h *= 1099511628211ull;
        }
        return h;
    }
};

/// Cell id of the canonical pair {i, j}, 0 <= i <= j < n.
inline int32_t cell_id(int i, int j) {
    if (i > j) std::swap(i, j);
    return int32_t(size_t(j) * (j + 1) / 2 + i);
}

/// The filtered nerve of the closed segment-pair cover of the band of
/// unordered loop-parameter pairs. Filtration values are the minima of the
/// half-squared chord length over each cover intersection; they are monotone
/// with respect to the face order, which build() verifies.
class NerveComplex {
public:
    struct Entry {
        Simplex s;
        double value = 0;
    };

    /// Simplicial collapse data for one interior corner: the 3-simplex, its
    /// anti-diagonal edge, and the two triangles between them.
    struct CollapseRecord {
        Simplex tet, anti_edge, tri_a, tri_b;
    };

    int n = 0;
    std::vector<Entry> simplices;
    std::unordered_map<Simplex, int32_t, SimplexHash> index;
    std::vector<CollapseRecord> collapse_records;

    double value_of(const Simplex& s) const;
    /// Distinct filtration values in increasing order.
    std::vector<double> critical_values() const;
    /// Verifies F(face) <= F(coface) over all face relations; throws on
    /// violation. Called by build() and collapse().
    void verify_monotone() const;
};

/// Builds the full nerve: one vertex per cell, edges where cells meet along
/// a segment of the band or at a corner, a boundary triangle per diagonal
/// cell, and a 3-simplex with all faces at every interior corner. Requires
/// the loop to satisfy C1 and C2.
NerveComplex build_nerve(const PolyLoop& loop);

/// Removes every interior 3-simplex together with its anti-diagonal edge and
/// the two triangles between them. The collapsed complex carries the same
/// persistence diagrams as the full nerve.
NerveComplex collapse_nerve(const NerveComplex& nc);

/// A connected group of simplices entering the filtration at one value,
/// with its closure and the part of the closure already present (the link).
struct MorseSet {
    double value = 0;
    std::vector<Simplex> simplices;
    std::vector<Simplex> closure;
    std::vector<Simplex> link;
};

/// Morse sets at filtration value a: connected components (under the face
/// relation) of the simplices entering exactly at a. Throws if a is not a
/// filtration value of the complex.
std::vector<MorseSet> morse_sets(const NerveComplex& nc, double a);

/// Morse sets of every positive filtration value, grouped in one pass.
std::vector<MorseSet> all_positive_morse_sets(const NerveComplex& nc);

}  // namespace chordal
