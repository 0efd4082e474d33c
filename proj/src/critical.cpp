#include "chordal/critical.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace chordal {

namespace {

AngleClass classify_cos(double c, double tol) {
    if (c > tol) return AngleClass::Acute;
    if (c < -tol) return AngleClass::Obtuse;
    return AngleClass::Right;
}

LoopParam canonical_param(const PolyLoop& loop, LoopParam w) {
    w.edge = loop.wrap(w.edge);
    if (w.s >= 1.0 - 1e-9) {
        w.edge = loop.wrap(w.edge + 1);
        w.s = 0.0;
    } else if (w.s <= 1e-9) {
        w.s = 0.0;
    }
    return w;
}

}  // namespace

TangentAngles tangent_angles(const PolyLoop& loop,
                             std::pair<LoopParam, LoopParam> w, double tol) {
    const LoopParam z1 = canonical_param(loop, w.first);
    const LoopParam z2 = canonical_param(loop, w.second);
    const Vec p1 = loop.at(z1);
    const Vec p2 = loop.at(z2);

    const int d = loop.dim();
    Vec v(d);
    double norm2 = 0;
    for (int k = 0; k < d; ++k) {
        v[k] = p2[k] - p1[k];
        norm2 += v[k] * v[k];
    }
    if (norm2 == 0.0)
        throw std::invalid_argument("boundary chord has no tangent angles");
    const double norm = std::sqrt(norm2);

    auto cos_with = [&](std::span<const double> t, double sign) {
        double c = 0;
        for (int k = 0; k < d; ++k) c += t[k] * v[k];
        return sign * c / norm;
    };
    auto tangent_pair = [&](const LoopParam& z, double sign) {
        // Forward and backward one-sided tangents at the point.
        std::span<const double> tp = loop.unit_tangent(z.edge);
        std::span<const double> tm =
            (z.s == 0.0) ? loop.unit_tangent(z.edge - 1) : tp;
        return std::pair<double, double>{cos_with(tp, sign),
                                         -cos_with(tm, sign)};
    };

    TangentAngles a{};
    a.tolerance = tol;
    std::tie(a.cos_plus1, a.cos_minus1) = tangent_pair(z1, +1.0);
    std::tie(a.cos_plus2, a.cos_minus2) = tangent_pair(z2, -1.0);
    a.plus1 = classify_cos(a.cos_plus1, tol);
    a.minus1 = classify_cos(a.cos_minus1, tol);
    a.plus2 = classify_cos(a.cos_plus2, tol);
    a.minus2 = classify_cos(a.cos_minus2, tol);
    return a;
}

std::optional<CriticalChord> classify_chord(const PolyLoop& loop,
                                            std::pair<LoopParam, LoopParam> w,
                                            double tol) {
    const TangentAngles a = tangent_angles(loop, w, tol);
    CriticalChord c;
    c.z1 = canonical_param(loop, w.first);
    c.z2 = canonical_param(loop, w.second);
    c.value = loop.eval_T(w);
    c.angles = a;
    if (a.away1() && a.away2()) {
        c.kind = ChordKind::K0;
        c.index = 0;
    } else if (a.towards1() && a.towards2()) {
        c.kind = ChordKind::K2;
        c.index = 2;
    } else if ((a.towards1() && a.away2()) || (a.away1() && a.towards2())) {
        c.kind = ChordKind::K1;
        c.index = 1;
    } else {
        return std::nullopt;
    }
    return c;
}

namespace {

struct Candidate {
    LoopParam z1, z2;
    double value;
};

// Canonical ordering key for a chord location.
std::array<double, 4> chord_key(const Candidate& c) {
    std::array<double, 4> k1{double(c.z1.edge), c.z1.s, double(c.z2.edge),
                             c.z2.s};
    std::array<double, 4> k2{double(c.z2.edge), c.z2.s, double(c.z1.edge),
                             c.z1.s};
    return std::min(k1, k2);
}

}  // namespace

std::vector<CriticalChord> enumerate_critical_chords(const PolyLoop& loop,
                                                     double tol,
                                                     double validation_tol) {
    const int n = loop.size();
    {
        NondegeneracyReport rep = check_nondegeneracy(
            loop, validation_tol >= 0.0 ? validation_tol : default_tolerance(loop));
        if (!rep.pass())
            throw LoopError(
                !rep.c3_violations.empty()
                    ? "C3 violation: classification is unsound for loops "
                      "with (anti)parallel segments"
                    : "loop fails non-degeneracy validation");
    }

    auto adjacent = [&](int i, int j) {
        return j == i || j == (i + 1) % n || i == (j + 1) % n;
    };

    std::vector<Candidate> cand;
    // Segment-pair minimisers (interior minima of cover cells).
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            if (adjacent(i, j)) continue;
            const SegmentPairMin m =
                segment_segment_min(loop.point(i), loop.point(i + 1),
                                    loop.point(j), loop.point(j + 1));
            cand.push_back({{i, m.s1}, {j, m.s2}, m.sq_half_distance});
        }
    }
    // Vertex-to-segment feet (edge intersections of the cover).
    for (int v = 0; v < n; ++v) {
        for (int k = 0; k < n; ++k) {
            if (k == v || k == loop.wrap(v - 1)) continue;
            const PointSegmentMin m = point_segment_min(
                loop.point(v), loop.point(k), loop.point(k + 1));
            cand.push_back({{v, 0.0}, {k, m.s}, 0.5 * m.sq_distance});
        }
    }
    // Vertex pairs (corner intersections).
    for (int p = 0; p < n; ++p)
        for (int q = p + 1; q < n; ++q)
            cand.push_back(
                {{p, 0.0}, {q, 0.0}, 0.5 * sq_distance(loop.point(p), loop.point(q))});

    // Canonicalise and deduplicate by location.
    for (Candidate& c : cand) {
        c.z1 = canonical_param(loop, c.z1);
        c.z2 = canonical_param(loop, c.z2);
        const std::array<double, 4> k1{double(c.z1.edge), c.z1.s,
                                       double(c.z2.edge), c.z2.s};
        const std::array<double, 4> k2{double(c.z2.edge), c.z2.s,
                                       double(c.z1.edge), c.z1.s};
        if (k2 < k1) std::swap(c.z1, c.z2);
    }
    std::sort(cand.begin(), cand.end(), [](const Candidate& a, const Candidate& b) {
        return chord_key(a) < chord_key(b);
    });
    const double merge_tol = 1e-7;
    std::vector<Candidate> uniq;
    for (const Candidate& c : cand) {
        bool dup = false;
        if (!uniq.empty()) {
            const Candidate& u = uniq.back();
            dup = u.z1.edge == c.z1.edge && u.z2.edge == c.z2.edge &&
                  std::abs(u.z1.s - c.z1.s) <= merge_tol &&
                  std::abs(u.z2.s - c.z2.s) <= merge_tol;
        }
        if (dup)
            uniq.back().value = std::min(uniq.back().value, c.value);
        else
            uniq.push_back(c);
    }

    std::vector<CriticalChord> out;
    const double boundary_tol = default_tolerance(loop);
    for (const Candidate& c : uniq) {
        if (c.value <= 0.5 * boundary_tol * boundary_tol) continue;
        std::optional<CriticalChord> cc = classify_chord(loop, {c.z1, c.z2}, tol);
        if (!cc) continue;
        cc->value = c.value;
        out.push_back(*cc);
    }
    std::sort(out.begin(), out.end(),
              [](const CriticalChord& a, const CriticalChord& b) {
                  if (a.value != b.value) return a.value < b.value;
                  if (a.index != b.index) return a.index < b.index;
                  return chord_key({a.z1, a.z2, a.value}) <
                         chord_key({b.z1, b.z2, b.value});
              });
    return out;
}

AgreementReport check_agreement(const PolyLoop& loop, const NerveComplex& nc,
                                const std::vector<CriticalChord>& chords,
                                int p, double rel_tol) {
    (void)loop;
    AgreementReport rep;

    std::vector<std::pair<double, int>> morse;
    for (const MorseSet& ms : all_positive_morse_sets(nc)) {
        const ConleyIndex ci = conley_index(ms, p);
        if (ci.trivial()) continue;
        int k = -1;
        for (int d = 0; d < 3; ++d)
            if (ci.is_saddle(d)) k = d;
        if (k < 0) {
            rep.mismatches.push_back(
                "Morse set at value " + std::to_string(ms.value) +
                " has a Conley index that is not a single saddle");
            continue;
        }
        morse.emplace_back(ms.value, k);
    }

    std::vector<std::pair<double, int>> geo;
    geo.reserve(chords.size());
    for (const CriticalChord& c : chords) geo.emplace_back(c.value, c.index);

    std::sort(morse.begin(), morse.end());
    std::sort(geo.begin(), geo.end());
    rep.morse_count = morse.size();
    rep.chord_count = geo.size();

    if (morse.size() != geo.size()) {
        rep.mismatches.push_back("counts differ: " +
                                 std::to_string(morse.size()) +
                                 " Morse sets vs " + std::to_string(geo.size()) +
                                 " chords");
    } else {
        for (size_t k = 0; k < morse.size(); ++k) {
            const double scale = std::max({1.0, std::abs(morse[k].first),
                                           std::abs(geo[k].first)});
            if (std::abs(morse[k].first - geo[k].first) > rel_tol * scale ||
                morse[k].second != geo[k].second) {
                rep.mismatches.push_back(
                    "entry " + std::to_string(k) + ": Morse (" +
                    std::to_string(morse[k].first) + ", " +
                    std::to_string(morse[k].second) + ") vs chord (" +
                    std::to_string(geo[k].first) + ", " +
                    std::to_string(geo[k].second) + ")");
            }
        }
    }
    rep.pass = rep.mismatches.empty();
    return rep;
}

}  // namespace chordal
