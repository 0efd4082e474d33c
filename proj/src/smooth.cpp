#include "chordal/smooth.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace chordal {

namespace {

constexpr double kTau = 6.283185307179586476925286766559;

double dot(const Vec& a, const Vec& b) {
    double s = 0;
    for (size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
    return s;
}

double norm(const Vec& a) { return std::sqrt(dot(a, a)); }

Vec sub(const Vec& a, const Vec& b) {
    Vec r(a.size());
    for (size_t k = 0; k < a.size(); ++k) r[k] = a[k] - b[k];
    return r;
}

// Second derivative with respect to arc length:
// x'' |c'|^{-2} - c' <c', c''> |c'|^{-4}.
Vec unit_speed_second(const SmoothCurve& c, double t) {
    const Vec d1 = c.deriv(t);
    const Vec d2 = c.deriv2(t);
    const double n2 = dot(d1, d1);
    const double mix = dot(d1, d2);
    Vec r(d1.size());
    for (size_t k = 0; k < r.size(); ++k)
        r[k] = d2[k] / n2 - d1[k] * mix / (n2 * n2);
    return r;
}

}  // namespace

SmoothCurve make_circle(double r) {
    SmoothCurve c;
    c.dim = 2;
    c.pos = [r](double t) {
        return Vec{r * std::cos(kTau * t), r * std::sin(kTau * t)};
    };
    c.deriv = [r](double t) {
        return Vec{-r * kTau * std::sin(kTau * t), r * kTau * std::cos(kTau * t)};
    };
    c.deriv2 = [r](double t) {
        return Vec{-r * kTau * kTau * std::cos(kTau * t),
                   -r * kTau * kTau * std::sin(kTau * t)};
    };
    return c;
}

SmoothCurve make_ellipse(double a, double b) {
    SmoothCurve c;
    c.dim = 2;
    c.pos = [a, b](double t) {
        return Vec{a * std::cos(kTau * t), b * std::sin(kTau * t)};
    };
    c.deriv = [a, b](double t) {
        return Vec{-a * kTau * std::sin(kTau * t), b * kTau * std::cos(kTau * t)};
    };
    c.deriv2 = [a, b](double t) {
        return Vec{-a * kTau * kTau * std::cos(kTau * t),
                   -b * kTau * kTau * std::sin(kTau * t)};
    };
    return c;
}

SmoothCurve make_trefoil() {
    SmoothCurve c;
    c.dim = 3;
    c.pos = [](double t) {
        const double u = kTau * t;
        return Vec{std::sin(u) + 2.0 * std::sin(2.0 * u),
                   std::cos(u) - 2.0 * std::cos(2.0 * u), -std::sin(3.0 * u)};
    };
    c.deriv = [](double t) {
        const double u = kTau * t;
        return Vec{kTau * (std::cos(u) + 4.0 * std::cos(2.0 * u)),
                   kTau * (-std::sin(u) + 4.0 * std::sin(2.0 * u)),
                   kTau * (-3.0 * std::cos(3.0 * u))};
    };
    c.deriv2 = [](double t) {
        const double u = kTau * t;
        return Vec{kTau * kTau * (-std::sin(u) - 8.0 * std::sin(2.0 * u)),
                   kTau * kTau * (-std::cos(u) + 8.0 * std::cos(2.0 * u)),
                   kTau * kTau * (9.0 * std::sin(3.0 * u))};
    };
    return c;
}

std::array<double, 2> chord_gradient(const SmoothCurve& c, double t1,
                                     double t2) {
    const Vec x1 = c.pos(t1), x2 = c.pos(t2);
    const Vec v = sub(x1, x2);  // x1 - x2
    return {dot(c.deriv(t1), v), -dot(c.deriv(t2), v)};
}

std::array<double, 4> chord_hessian(const SmoothCurve& c, double t1,
                                    double t2) {
    const Vec x1 = c.pos(t1), x2 = c.pos(t2);
    const Vec d1 = c.deriv(t1), d2 = c.deriv(t2);
    const Vec v = sub(x1, x2);
    const double h11 = dot(d1, d1) + dot(c.deriv2(t1), v);
    const double h22 = dot(d2, d2) - dot(c.deriv2(t2), v);
    const double h12 = -dot(d1, d2);
    return {h11, h12, h12, h22};
}

SmoothCriticalPoint classify_smooth(const SmoothCurve& c, double t1, double t2,
                                    double tol) {
    const Vec x1 = c.pos(t1), x2 = c.pos(t2);
    const Vec d1 = c.deriv(t1), d2 = c.deriv(t2);
    const Vec v12 = sub(x2, x1);
    const double vn = norm(v12);
    if (vn == 0.0) throw std::invalid_argument("boundary chord");

    const std::array<double, 2> g = chord_gradient(c, t1, t2);
    const double crit_scale1 = norm(d1) * vn, crit_scale2 = norm(d2) * vn;
    if (std::abs(g[0]) > tol * std::max(1.0, crit_scale1) ||
        std::abs(g[1]) > tol * std::max(1.0, crit_scale2))
        throw std::invalid_argument("point is not critical within tolerance");

    SmoothCriticalPoint r;
    r.t1 = t1;
    r.t2 = t2;
    r.value = 0.5 * vn * vn;
    r.kappa12 = dot(unit_speed_second(c, t1), v12);
    r.kappa21 = -dot(unit_speed_second(c, t2), v12);
    r.cos_theta12 = dot(d1, d2) / (norm(d1) * norm(d2));

    const double disc =
        (1.0 - r.kappa12) * (1.0 - r.kappa21) - r.cos_theta12 * r.cos_theta12;
    const double disc_scale =
        std::max({1.0, std::abs(1.0 - r.kappa12) * std::abs(1.0 - r.kappa21),
                  r.cos_theta12 * r.cos_theta12});
    if (std::abs(disc) <= tol * disc_scale) {
        r.type = SmoothCriticalPoint::Type::degenerate;
    } else if (disc < 0.0) {
        r.type = SmoothCriticalPoint::Type::saddle;
    } else if (r.kappa12 > 1.0 && r.kappa21 > 1.0) {
        r.type = SmoothCriticalPoint::Type::maximum;
    } else if (r.kappa12 < 1.0 && r.kappa21 < 1.0) {
        r.type = SmoothCriticalPoint::Type::minimum;
    } else {
        r.type = SmoothCriticalPoint::Type::degenerate;
    }
    return r;
}

std::vector<SmoothCriticalPoint> find_smooth_critical(const SmoothCurve& c,
                                                      int grid_n,
                                                      int newton_iters,
                                                      double tol,
                                                      double cutoff) {
    if (grid_n < 2) throw std::invalid_argument("grid_n too small");

    // Size scale for singularity and convergence thresholds.
    double scale2 = 0;
    for (int k = 0; k < 8; ++k) {
        const Vec p = c.pos(k / 8.0);
        scale2 = std::max(scale2, dot(p, p));
    }
    scale2 = std::max(scale2, 1.0);

    std::vector<SmoothCriticalPoint> out;
    auto wrap01 = [](double t) { return t - std::floor(t); };

    for (int i = 0; i < grid_n; ++i) {
        for (int j = 0; j < grid_n; ++j) {
            double t1 = (i + 0.5) / grid_n;
            double t2 = (j + 0.5) / grid_n;
            {
                const double u = wrap01(t2 - t1);
                if (u < cutoff || u > 1.0 - cutoff) continue;
            }

            // A Hessian is treated as singular relative to its own entry
            // magnitudes, so the test is scale invariant.
            auto near_singular = [](const std::array<double, 4>& h) {
                const double det = h[0] * h[3] - h[1] * h[2];
                const double mag =
                    std::abs(h[0] * h[3]) + std::abs(h[1] * h[2]) + 1e-300;
                return std::abs(det) < 1e-10 * mag;
            };

            bool converged = false;
            for (int it = 0; it < newton_iters; ++it) {
                const std::array<double, 2> g = chord_gradient(c, t1, t2);
                const double gn = std::max(std::abs(g[0]), std::abs(g[1]));
                if (gn <= 1e-13 * scale2) {
                    converged = true;
                    break;
                }
                const std::array<double, 4> h = chord_hessian(c, t1, t2);
                if (near_singular(h)) break;
                const double det = h[0] * h[3] - h[1] * h[2];
                const double s1 = (-g[0] * h[3] + g[1] * h[1]) / det;
                const double s2 = (-h[0] * g[1] + h[2] * g[0]) / det;
                if (!std::isfinite(s1) || !std::isfinite(s2)) break;
                // Damp very large steps to keep seeds in their basin.
                const double cap = 0.25;
                const double amp = std::max(std::abs(s1), std::abs(s2));
                const double f = amp > cap ? cap / amp : 1.0;
                t1 += f * s1;
                t2 += f * s2;
            }
            if (!converged) continue;
            if (near_singular(chord_hessian(c, t1, t2))) continue;

            double u = wrap01(t2 - t1);
            double base = wrap01(t1);
            if (u > 0.5) {
                base = wrap01(t2);
                u = 1.0 - u;
            }
            if (u < cutoff) continue;

            bool dup = false;
            for (const SmoothCriticalPoint& q : out) {
                double qu = wrap01(q.t2 - q.t1);
                double qb = wrap01(q.t1);
                if (qu > 0.5) {
                    qb = wrap01(q.t2);
                    qu = 1.0 - qu;
                }
                if (std::abs(qu - u) >= 1e-6) continue;
                // At offset 1/2 the chord has two canonical bases.
                const bool half = std::abs(u - 0.5) < 1e-6;
                for (double cand : {qb, half ? wrap01(qb + qu) : qb}) {
                    double db = std::abs(cand - base);
                    db = std::min(db, 1.0 - db);
                    if (db < 1e-6) dup = true;
                }
                if (dup) break;
            }
            if (dup) continue;
            out.push_back(classify_smooth(c, base, wrap01(base + u), tol));
        }
    }
    std::sort(out.begin(), out.end(),
              [](const SmoothCriticalPoint& a, const SmoothCriticalPoint& b) {
                  if (a.value != b.value) return a.value < b.value;
                  return a.t1 < b.t1;
              });
    return out;
}

}  // namespace chordal
