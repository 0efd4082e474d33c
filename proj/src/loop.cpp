#include "chordal/loop.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace chordal {

PolyLoop PolyLoop::build(const std::vector<Vec>& points) {
    const int n = int(points.size());
    if (n <= 3) throw LoopError("loop requires more than 3 points");
    const int d = int(points[0].size());
    if (d < 1) throw LoopError("points must have dimension >= 1");

    PolyLoop loop;
    loop.n_ = n;
    loop.d_ = d;
    loop.coords_.reserve(size_t(n) * d);
    for (const Vec& p : points) {
        if (int(p.size()) != d) throw LoopError("dimension mismatch");
        for (double x : p) {
            if (!std::isfinite(x)) throw LoopError("non-finite coordinate");
            loop.coords_.push_back(x);
        }
    }

    loop.edges_.resize(size_t(n) * d);
    loop.tangents_.resize(size_t(n) * d);
    loop.lengths_.resize(n);
    loop.partial_.resize(n);
    double acc = 0;
    for (int i = 0; i < n; ++i) {
        const int j = (i + 1) % n;
        double len2 = 0;
        for (int k = 0; k < d; ++k) {
            const double u = loop.coords_[size_t(j) * d + k] -
                             loop.coords_[size_t(i) * d + k];
            loop.edges_[size_t(i) * d + k] = u;
            len2 += u * u;
        }
        const double len = std::sqrt(len2);
        if (len == 0.0)
            throw LoopError("zero-length edge at index " + std::to_string(i) +
                            " (coincident consecutive points)");
        loop.lengths_[i] = len;
        for (int k = 0; k < d; ++k)
            loop.tangents_[size_t(i) * d + k] =
                loop.edges_[size_t(i) * d + k] / len;
        acc += len;
    }
    loop.total_length_ = acc;
    double run = 0;
    for (int i = 0; i < n; ++i) {
        loop.partial_[i] = run / acc;
        run += loop.lengths_[i];
    }
    return loop;
}

std::span<const double> PolyLoop::point(int i) const {
    return {coords_.data() + size_t(wrap(i)) * d_, size_t(d_)};
}

std::span<const double> PolyLoop::edge_vector(int i) const {
    return {edges_.data() + size_t(wrap(i)) * d_, size_t(d_)};
}

std::span<const double> PolyLoop::unit_tangent(int i) const {
    return {tangents_.data() + size_t(wrap(i)) * d_, size_t(d_)};
}

Vec PolyLoop::at(LoopParam w) const {
    // Edge endpoints are returned exactly, so (i, 1) and (i+1, 0) agree.
    if (w.s == 0.0 || w.s == 1.0) {
        std::span<const double> x = point(w.edge + (w.s == 1.0 ? 1 : 0));
        return Vec(x.begin(), x.end());
    }
    std::span<const double> x = point(w.edge);
    std::span<const double> u = edge_vector(w.edge);
    Vec p(d_);
    for (int k = 0; k < d_; ++k) p[k] = x[k] + w.s * u[k];
    return p;
}

LoopParam PolyLoop::param_at_arclength(double t) const {
    t -= std::floor(t);
    // partial_ is sorted increasing with partial_[0] = 0.
    int i = int(std::upper_bound(partial_.begin(), partial_.end(), t) -
                partial_.begin()) - 1;
    i = std::clamp(i, 0, n_ - 1);
    const double seg = lengths_[i] / total_length_;
    const double s = seg > 0 ? std::clamp((t - partial_[i]) / seg, 0.0, 1.0) : 0.0;
    return {i, s};
}

Vec PolyLoop::at_arclength(double t) const { return at(param_at_arclength(t)); }

double PolyLoop::eval_T(std::pair<LoopParam, LoopParam> w) const {
    const Vec p = at(w.first);
    const Vec q = at(w.second);
    return 0.5 * sq_distance(p, q);
}

double PolyLoop::bounding_box_diameter() const {
    double s = 0;
    for (int k = 0; k < d_; ++k) {
        double lo = std::numeric_limits<double>::infinity(), hi = -lo;
        for (int i = 0; i < n_; ++i) {
            const double x = coords_[size_t(i) * d_ + k];
            lo = std::min(lo, x);
            hi = std::max(hi, x);
        }
        s += (hi - lo) * (hi - lo);
    }
    return std::sqrt(s);
}

double default_tolerance(const PolyLoop& loop) {
    return 1e-9 * loop.bounding_box_diameter();
}

NondegeneracyReport check_nondegeneracy(const PolyLoop& loop, double tol) {
    NondegeneracyReport rep;
    rep.tolerance = tol;
    const int n = loop.size();

    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (sq_distance(loop.point(i), loop.point(j)) <= tol * tol)
                rep.c1_violations.emplace_back(i, j);

    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            const bool adjacent = (j == i + 1) || (i == 0 && j == n - 1);
            if (adjacent) {
                // Closed adjacent segments share exactly the common vertex
                // unless they fold back onto each other (antiparallel).
                double c = 0;
                for (int k = 0; k < loop.dim(); ++k)
                    c += loop.unit_tangent(i == 0 && j == n - 1 ? j : i)[k] *
                         loop.unit_tangent(i == 0 && j == n - 1 ? i : j)[k];
                if (c <= -1.0 + tol) rep.c2_violations.emplace_back(i, j);
            } else {
                const SegmentPairMin m = segment_segment_min(
                    loop.point(i), loop.point(i + 1), loop.point(j),
                    loop.point(j + 1));
                if (2.0 * m.sq_half_distance <= tol * tol)
                    rep.c2_violations.emplace_back(i, j);
            }
        }
    }

    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            double c = 0;
            for (int k = 0; k < loop.dim(); ++k)
                c += loop.unit_tangent(i)[k] * loop.unit_tangent(j)[k];
            if (std::abs(c) >= 1.0 - tol) rep.c3_violations.emplace_back(i, j);
        }
    }
    return rep;
}

PolyLoop sample_curve(const std::function<Vec(double)>& curve, int n) {
    if (n <= 3) throw LoopError("loop requires more than 3 points");
    std::vector<Vec> pts;
    pts.reserve(n);
    for (int k = 0; k < n; ++k) pts.push_back(curve(double(k) / n));
    return PolyLoop::build(pts);
}

}  // namespace chordal
