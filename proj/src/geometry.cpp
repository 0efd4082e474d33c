#include "chordal/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace chordal {

namespace {

void require_same_dim(std::span<const double> p, std::span<const double> q) {
    if (p.size() != q.size() || p.empty())
        throw std::invalid_argument("dimension mismatch");
}

// Lexicographic comparison of coordinate vectors, used to canonicalise
// segment orientation so that results do not depend on input order.
bool lex_less(std::span<const double> p, std::span<const double> q) {
    for (size_t k = 0; k < p.size(); ++k) {
        if (p[k] < q[k]) return true;
        if (p[k] > q[k]) return false;
    }
    return false;
}

// Half-squared distance between A(s1) and B(s2), evaluated directly.
double half_sq_at(std::span<const double> a0, std::span<const double> a1,
                  std::span<const double> b0, std::span<const double> b1,
                  double s1, double s2) {
    double s = 0;
    for (size_t k = 0; k < a0.size(); ++k) {
        const double pa = a0[k] + s1 * (a1[k] - a0[k]);
        const double pb = b0[k] + s2 * (b1[k] - b0[k]);
        const double d = pa - pb;
        s += d * d;
    }
    return 0.5 * s;
}

PointSegmentMin point_segment_min_oriented(std::span<const double> p,
                                           std::span<const double> a,
                                           std::span<const double> b) {
    double uu = 0, up = 0;
    for (size_t k = 0; k < p.size(); ++k) {
        const double u = b[k] - a[k];
        uu += u * u;
        up += u * (p[k] - a[k]);
    }
    double s = 0;
    if (uu > 0) s = std::clamp(up / uu, 0.0, 1.0);
    // Clamped feet evaluate against the endpoint exactly, so values shared
    // with pure endpoint distances agree bit for bit.
    double d2 = 0;
    if (s == 0.0 || s == 1.0) {
        std::span<const double> e = (s == 0.0) ? a : b;
        for (size_t k = 0; k < p.size(); ++k) {
            const double d = p[k] - e[k];
            d2 += d * d;
        }
    } else {
        for (size_t k = 0; k < p.size(); ++k) {
            const double d = p[k] - (a[k] + s * (b[k] - a[k]));
            d2 += d * d;
        }
    }
    return {d2, s};
}

}  // namespace

double sq_distance(std::span<const double> p, std::span<const double> q) {
    require_same_dim(p, q);
    double s = 0;
    for (size_t k = 0; k < p.size(); ++k) {
        const double d = p[k] - q[k];
        s += d * d;
    }
    return s;
}

PointSegmentMin point_segment_min(std::span<const double> p,
                                  std::span<const double> a,
                                  std::span<const double> b) {
    require_same_dim(p, a);
    require_same_dim(p, b);
    if (lex_less(b, a)) {
        PointSegmentMin r = point_segment_min_oriented(p, b, a);
        return {r.sq_distance, 1.0 - r.s};
    }
    return point_segment_min_oriented(p, a, b);
}

namespace {

// Candidate minimiser for the canonically oriented segment pair. Boundary
// candidates are produced by the same point-segment routine used elsewhere
// so that shared geometric minima agree bit for bit across call sites.
SegmentPairMin seg_seg_canonical(std::span<const double> a0,
                                 std::span<const double> a1,
                                 std::span<const double> b0,
                                 std::span<const double> b1) {
    const size_t d = a0.size();
    std::vector<SegmentPairMin> cand;
    cand.reserve(9);

    auto foot_a = [&](std::span<const double> pb, double s2) {
        PointSegmentMin r = point_segment_min_oriented(pb, a0, a1);
        cand.push_back({0.5 * r.sq_distance, r.s, s2});
    };
    auto foot_b = [&](std::span<const double> pa, double s1) {
        PointSegmentMin r = point_segment_min_oriented(pa, b0, b1);
        cand.push_back({0.5 * r.sq_distance, s1, r.s});
    };
    foot_b(a0, 0.0);
    foot_b(a1, 1.0);
    foot_a(b0, 0.0);
    foot_a(b1, 1.0);

    // Interior stationary point of the strictly convex case.
    double uu = 0, vv = 0, uv = 0, uw = 0, vw = 0;
    for (size_t k = 0; k < d; ++k) {
        const double u = a1[k] - a0[k];
        const double v = b1[k] - b0[k];
        const double w = a0[k] - b0[k];
        uu += u * u;
        vv += v * v;
        uv += u * v;
        uw += u * w;
        vw += v * w;
    }
    const double det = uu * vv - uv * uv;
    if (det > 1e-14 * uu * vv) {
        const double s1 = (uv * vw - vv * uw) / det;
        const double s2 = (uu * vw - uv * uw) / det;
        if (s1 >= 0.0 && s1 <= 1.0 && s2 >= 0.0 && s2 <= 1.0)
            cand.push_back({half_sq_at(a0, a1, b0, b1, s1, s2), s1, s2});
    }

    SegmentPairMin best = cand.front();
    for (const SegmentPairMin& c : cand) {
        if (c.sq_half_distance < best.sq_half_distance ||
            (c.sq_half_distance == best.sq_half_distance &&
             (c.s1 < best.s1 || (c.s1 == best.s1 && c.s2 < best.s2))))
            best = c;
    }
    return best;
}

}  // namespace

SegmentPairMin segment_segment_min(std::span<const double> a0,
                                   std::span<const double> a1,
                                   std::span<const double> b0,
                                   std::span<const double> b1) {
    require_same_dim(a0, a1);
    require_same_dim(a0, b0);
    require_same_dim(b0, b1);

    // Canonicalise: orient each segment lexicographically, then order the
    // two segments. Map the minimiser back through the transformations.
    const bool rev_a = lex_less(a1, a0);
    const bool rev_b = lex_less(b1, b0);
    std::span<const double> ca0 = rev_a ? a1 : a0, ca1 = rev_a ? a0 : a1;
    std::span<const double> cb0 = rev_b ? b1 : b0, cb1 = rev_b ? b0 : b1;
    bool swapped = lex_less(cb0, ca0) ||
                   (!lex_less(ca0, cb0) && lex_less(cb1, ca1));
    if (swapped) {
        std::swap(ca0, cb0);
        std::swap(ca1, cb1);
    }

    SegmentPairMin r = seg_seg_canonical(ca0, ca1, cb0, cb1);
    if (swapped) std::swap(r.s1, r.s2);
    if (rev_a) r.s1 = 1.0 - r.s1;
    if (rev_b) r.s2 = 1.0 - r.s2;
    return r;
}

namespace {

// Determinant by cofactor expansion for small matrices (exact structure for
// the k = 1 case), Gaussian elimination beyond.
double det_small(std::vector<std::vector<double>> m) {
    const size_t n = m.size();
    if (n <= 6) {
        if (n == 1) return m[0][0];
        double s = 0;
        for (size_t c = 0; c < n; ++c) {
            if (m[0][c] == 0.0) continue;
            std::vector<std::vector<double>> sub(n - 1,
                                                 std::vector<double>(n - 1));
            for (size_t r = 1; r < n; ++r) {
                size_t cc = 0;
                for (size_t c2 = 0; c2 < n; ++c2) {
                    if (c2 == c) continue;
                    sub[r - 1][cc++] = m[r][c2];
                }
            }
            const double term = m[0][c] * det_small(std::move(sub));
            s += (c % 2 == 0) ? term : -term;
        }
        return s;
    }
    double sign = 1.0;
    for (size_t i = 0; i < n; ++i) {
        size_t piv = i;
        for (size_t r = i + 1; r < n; ++r)
            if (std::abs(m[r][i]) > std::abs(m[piv][i])) piv = r;
        if (m[piv][i] == 0.0) return 0.0;
        if (piv != i) {
            std::swap(m[piv], m[i]);
            sign = -sign;
        }
        for (size_t r = i + 1; r < n; ++r) {
            const double f = m[r][i] / m[i][i];
            for (size_t c = i; c < n; ++c) m[r][c] -= f * m[i][c];
        }
    }
    double s = sign;
    for (size_t i = 0; i < n; ++i) s *= m[i][i];
    return s;
}

}  // namespace

double cayley_menger_sq_volume(const std::vector<Vec>& points) {
    if (points.empty()) throw std::invalid_argument("no points");
    const size_t k = points.size() - 1;
    const size_t d = points[0].size();
    if (k < 1 || k > d)
        throw std::invalid_argument("simplex dimension out of range");
    for (const Vec& p : points)
        if (p.size() != d) throw std::invalid_argument("dimension mismatch");

    const size_t n = k + 2;
    std::vector<std::vector<double>> m(n, std::vector<double>(n, 0.0));
    double scale2 = 0;
    for (size_t i = 0; i <= k; ++i) {
        for (size_t j = 0; j <= k; ++j) {
            const double d2 = (i == j) ? 0.0 : sq_distance(points[i], points[j]);
            m[i][j] = d2;
            scale2 = std::max(scale2, d2);
        }
        m[i][n - 1] = 1.0;
        m[n - 1][i] = 1.0;
    }

    double fact = 1.0;
    for (size_t i = 2; i <= k; ++i) fact *= double(i);
    const double coeff = ((k + 1) % 2 == 0 ? 1.0 : -1.0) /
                         (fact * fact * std::ldexp(1.0, int(k)));
    double v2 = coeff * det_small(std::move(m));

    double clamp = 1e-12;
    for (size_t i = 0; i < k; ++i) clamp *= scale2;
    if (v2 < 0.0 && v2 > -clamp) v2 = 0.0;
    return std::max(v2, 0.0);
}

}  // namespace chordal
