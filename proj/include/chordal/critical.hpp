#pragma once

#include <optional>
#include <string>
#include <vector>

#include "chordal/nerve.hpp"
#include "chordal/persistence.hpp"

namespace chordal {

enum class AngleClass { Acute, Right, Obtuse };

/// The four tangent angles of a chord: at each endpoint, the angles between
/// the chord direction and the forward/backward one-sided tangents. At a
/// point interior to a segment the two classes coincide.
struct TangentAngles {
    AngleClass plus1, minus1, plus2, minus2;
    double cos_plus1, cos_minus1, cos_plus2, cos_minus2;
    double tolerance;

    bool towards1() const {
        return plus1 == AngleClass::Acute && minus1 == AngleClass::Acute;
    }
    bool away1() const {
        return plus1 != AngleClass::Acute && minus1 != AngleClass::Acute;
    }
    bool towards2() const {
        return plus2 == AngleClass::Acute && minus2 == AngleClass::Acute;
    }
    bool away2() const {
        return plus2 != AngleClass::Acute && minus2 != AngleClass::Acute;
    }
};

/// Chord conditions: both endpoints curving away (K0), one towards and one
/// away (K1), both towards (K2). At most one holds.
enum class ChordKind { K0, K1, K2 };

struct CriticalChord {
    LoopParam z1, z2;
    double value = 0;   // half squared chord length
    int index = 0;      // 0, 1 or 2
    ChordKind kind = ChordKind::K0;
    TangentAngles angles{};
};

/// Default tolerance on cosines for classifying an angle as right.
constexpr double kRightAngleTol = 1e-8;

/// Tangent angles of the chord between the two loop points named by w.
/// Throws std::invalid_argument if the points coincide (boundary chord).
TangentAngles tangent_angles(const PolyLoop& loop,
                             std::pair<LoopParam, LoopParam> w,
                             double tol = kRightAngleTol);

/// Classifies the chord; returns nullopt for a regular (non-critical)
/// angle pattern.
std::optional<CriticalChord> classify_chord(const PolyLoop& loop,
                                            std::pair<LoopParam, LoopParam> w,
                                            double tol = kRightAngleTol);

/// Enumerates every candidate chord realising a filtration value of the
/// nerve (segment-pair minimisers, vertex-to-segment feet, vertex pairs),
/// deduplicates by location, classifies each and returns those satisfying
/// K0, K1 or K2, sorted by (value, index). Requires C1-C3; throws LoopError
/// on a C3 violation since the classification is unsound without it. A
/// negative validation_tol selects the scale-relative default.
std::vector<CriticalChord> enumerate_critical_chords(
    const PolyLoop& loop, double tol = kRightAngleTol,
    double validation_tol = -1.0);

/// Cross-check of the classification against the filtration: the multiset
/// of (value, index) over critical chords must equal the multiset of
/// (value, k) over Morse sets with Conley index e_k at positive values.
struct AgreementReport {
    bool pass = false;
    size_t chord_count = 0;
    size_t morse_count = 0;
    std::vector<std::string> mismatches;
};

AgreementReport check_agreement(const PolyLoop& loop, const NerveComplex& nc,
                                const std::vector<CriticalChord>& chords,
                                int p, double rel_tol = 1e-9);

}  // namespace chordal
