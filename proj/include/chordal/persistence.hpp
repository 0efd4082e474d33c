#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "chordal/nerve.hpp"

namespace chordal {

constexpr double kInf = std::numeric_limits<double>::infinity();

/// A simplicial complex in filtration order: simplices sorted by
/// (value, dim, lexicographic vertex list), with per-simplex boundary lists
/// referring to positions earlier in the order.
struct FilteredComplex {
    std::vector<double> value;
    std::vector<int8_t> dim;
    std::vector<std::vector<int32_t>> boundary;  // facet positions
    std::vector<Simplex> simplex;                // original vertex labels

    size_t size() const { return value.size(); }
};

/// Filtration order of a nerve, optionally with all values transformed by a
/// monotone map (used for the unsquared filtration).
FilteredComplex to_filtered_complex(const NerveComplex& nc);
FilteredComplex to_filtered_complex(const NerveComplex& nc,
                                    double (*transform)(double));

struct DiagramPoint {
    int dim = 0;
    double birth = 0;
    double death = kInf;

    bool operator==(const DiagramPoint&) const = default;
};

struct PersistenceDiagram {
    int p = 3;
    std::vector<DiagramPoint> points;  // sorted by (dim, birth, death)

    std::vector<DiagramPoint> in_dim(int d) const;
};

/// Persistent homology of the filtration over Z_p in dimensions 0..2 by
/// boundary-matrix reduction (union-find pairing in degree 0). Pairs with
/// equal birth and death are dropped; when zero_pairs is given they are
/// collected there instead.
PersistenceDiagram compute_persistence(const FilteredComplex& fc, int p,
                                       std::vector<DiagramPoint>* zero_pairs = nullptr);

/// Betti numbers (beta_0, beta_1, beta_2) of the relative homology of
/// (closure, link) of a Morse set over Z_p. An n-saddle has the indicator
/// vector e_n.
struct ConleyIndex {
    std::array<int, 3> betti{0, 0, 0};

    bool is_saddle(int k) const {
        return betti[size_t(k)] == 1 && betti[size_t((k + 1) % 3)] == 0 &&
               betti[size_t((k + 2) % 3)] == 0;
    }
    bool trivial() const { return betti == std::array<int, 3>{0, 0, 0}; }
};

ConleyIndex conley_index(const MorseSet& ms, int p);

enum class SquareDirection {
    to_squared,    // (s, t) -> (s^2/2, t^2/2)
    to_unsquared,  // (s, t) -> (sqrt(2 s), sqrt(2 t))
};

/// The bijection between the diagrams of the distance filtration and of the
/// half-squared-distance filtration, applied pointwise; infinity maps to
/// infinity. Throws on negative coordinates.
PersistenceDiagram square_map(const PersistenceDiagram& diag,
                              SquareDirection direction);

/// Expected field-dependent structure of the degree-1 diagram of a
/// filtration of the band: for p = 2 the points (0, maxval) and (l, inf),
/// otherwise (0, inf) and (l, maxval), with l <= minmax in both cases.
struct MaxminReport {
    bool pass = false;
    double l = kInf;
    bool repeated_max = false;  // several points carry the max value
    std::vector<std::string> mismatches;
};

MaxminReport verify_maxmin_structure(const PersistenceDiagram& diag,
                                     double maxval, double minmax,
                                     double rel_tol = 1e-9);

bool is_prime(int p);

}  // namespace chordal
