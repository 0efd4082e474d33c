#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace oracles {

namespace {

// Dense matrix rank over Z_p.
int rank_mod_p(std::vector<std::vector<int32_t>> m, int p) {
    if (m.empty() || m[0].empty()) return 0;
    const size_t rows = m.size(), cols = m[0].size();
    int rank = 0;
    size_t row = 0;
    for (size_t col = 0; col < cols && row < rows; ++col) {
        size_t piv = row;
        while (piv < rows && m[piv][col] == 0) ++piv;
        if (piv == rows) continue;
        std::swap(m[piv], m[row]);
        // Normalise and eliminate below.
        int32_t inv = 1;
        for (int32_t x = 1; x < p; ++x)
            if (int64_t(x) * m[row][col] % p == 1) inv = x;
        for (size_t c = col; c < cols; ++c)
            m[row][c] = int32_t(int64_t(m[row][c]) * inv % p);
        for (size_t r = row + 1; r < rows; ++r) {
            if (m[r][col] == 0) continue;
            const int32_t f = m[r][col];
            for (size_t c = col; c < cols; ++c)
                m[r][c] = int32_t(((int64_t(m[r][c]) - int64_t(f) * m[row][c]) % p +
                                   int64_t(p) * p) % p);
        }
        ++row;
        ++rank;
    }
    return rank;
}

// Boundary matrix of degree d for the prefix of simplices with position
// < cutoff_cols (columns) against rows with position < cutoff_rows.
std::vector<std::vector<int32_t>> boundary_matrix(const FilteredComplex& fc,
                                                  int d, int32_t col_cutoff,
                                                  int32_t row_lo,
                                                  int32_t row_hi, int p) {
    std::vector<int32_t> rows, cols;
    std::vector<int32_t> row_index(fc.size(), -1);
    for (int32_t i = row_lo; i < row_hi; ++i)
        if (fc.dim[size_t(i)] == d - 1) {
            row_index[size_t(i)] = int32_t(rows.size());
            rows.push_back(i);
        }
    for (int32_t i = 0; i < col_cutoff; ++i)
        if (fc.dim[size_t(i)] == d) cols.push_back(i);
    std::vector<std::vector<int32_t>> m(rows.size(),
                                        std::vector<int32_t>(cols.size(), 0));
    for (size_t c = 0; c < cols.size(); ++c) {
        const int32_t j = cols[c];
        const chordal::Simplex& s = fc.simplex[size_t(j)];
        const int k = s.dim + 1;
        for (int drop = 0; drop < k; ++drop) {
            chordal::Simplex f;
            int t = 0;
            for (int i = 0; i < k; ++i)
                if (i != drop) f.v[t++] = s.v[i];
            f.dim = int8_t(k - 2);
            for (int32_t cand : fc.boundary[size_t(j)]) {
                if (fc.simplex[size_t(cand)] == f) {
                    if (row_index[size_t(cand)] >= 0)
                        m[size_t(row_index[size_t(cand)])][c] =
                            (drop % 2 == 0) ? 1 : p - 1;
                    break;
                }
            }
        }
    }
    return m;
}

int32_t prefix_end(const FilteredComplex& fc, double a) {
    int32_t k = 0;
    while (k < int32_t(fc.size()) && fc.value[size_t(k)] <= a) ++k;
    return k;
}

}  // namespace

std::array<int, 3> prefix_betti(const FilteredComplex& fc, double a, int p) {
    const int32_t cut = prefix_end(fc, a);
    std::array<int, 3> betti{0, 0, 0};
    for (int d = 0; d < 3; ++d) {
        int nd = 0;
        for (int32_t i = 0; i < cut; ++i)
            if (fc.dim[size_t(i)] == d) ++nd;
        const int rk_d =
            d == 0 ? 0 : rank_mod_p(boundary_matrix(fc, d, cut, 0, cut, p), p);
        const int rk_d1 = rank_mod_p(boundary_matrix(fc, d + 1, cut, 0, cut, p), p);
        betti[size_t(d)] = nd - rk_d - rk_d1;
    }
    return betti;
}

std::array<int, 3> diagram_betti(const PersistenceDiagram& d, double a) {
    std::array<int, 3> betti{0, 0, 0};
    for (const chordal::DiagramPoint& pt : d.points)
        if (pt.dim < 3 && pt.birth <= a && pt.death > a) ++betti[size_t(pt.dim)];
    return betti;
}

PersistenceDiagram rank_function_diagram(const FilteredComplex& fc, int p) {
    std::vector<double> vals(fc.value.begin(), fc.value.end());
    std::sort(vals.begin(), vals.end());
    vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
    const int m = int(vals.size());

    PersistenceDiagram out;
    out.p = p;
    for (int d = 0; d < 3; ++d) {
        // r[i][j], 1-based over critical values; r[0][*] = 0.
        std::vector<std::vector<int>> r(size_t(m) + 1,
                                        std::vector<int>(size_t(m) + 1, 0));
        std::vector<int32_t> cuts(size_t(m) + 1, 0);
        for (int i = 1; i <= m; ++i)
            cuts[size_t(i)] = prefix_end(fc, vals[size_t(i - 1)]);

        for (int i = 1; i <= m; ++i) {
            const int32_t ci = cuts[size_t(i)];
            int zi = 0;
            for (int32_t k = 0; k < ci; ++k)
                if (fc.dim[size_t(k)] == d) ++zi;
            zi -= d == 0 ? 0
                         : rank_mod_p(boundary_matrix(fc, d, ci, 0, ci, p), p);
            for (int j = i; j <= m; ++j) {
                const int32_t cj = cuts[size_t(j)];
                // dim of (boundaries in K_j) meeting chains supported on K_i:
                // rank(full d+1 boundary of K_j) minus rank of its rows
                // outside K_i.
                const int full =
                    rank_mod_p(boundary_matrix(fc, d + 1, cj, 0, cj, p), p);
                const int outside =
                    rank_mod_p(boundary_matrix(fc, d + 1, cj, ci, cj, p), p);
                r[size_t(i)][size_t(j)] = zi - (full - outside);
            }
        }

        for (int i = 1; i <= m; ++i) {
            for (int j = i + 1; j <= m; ++j) {
                const int mu = r[size_t(i)][size_t(j - 1)] -
                               r[size_t(i - 1)][size_t(j - 1)] -
                               r[size_t(i)][size_t(j)] +
                               r[size_t(i - 1)][size_t(j)];
                for (int c = 0; c < mu; ++c)
                    out.points.push_back(
                        {d, vals[size_t(i - 1)], vals[size_t(j - 1)]});
            }
            const int inf_mu =
                r[size_t(i)][size_t(m)] - r[size_t(i - 1)][size_t(m)];
            for (int c = 0; c < inf_mu; ++c)
                out.points.push_back({d, vals[size_t(i - 1)], chordal::kInf});
        }
    }
    std::sort(out.points.begin(), out.points.end(),
              [](const chordal::DiagramPoint& a, const chordal::DiagramPoint& b) {
                  if (a.dim != b.dim) return a.dim < b.dim;
                  if (a.birth != b.birth) return a.birth < b.birth;
                  return a.death < b.death;
              });
    return out;
}

double brute_force_bottleneck(const PersistenceDiagram& d1,
                              const PersistenceDiagram& d2, int dim) {
    struct Pt {
        double b, d;
    };
    std::vector<Pt> p1, p2;
    for (const auto& pt : d1.points)
        if (pt.dim == dim) p1.push_back({pt.birth, pt.death});
    for (const auto& pt : d2.points)
        if (pt.dim == dim) p2.push_back({pt.birth, pt.death});

    auto diag_cost = [](const Pt& p) {
        return std::isfinite(p.d) ? 0.5 * (p.d - p.b) : chordal::kInf;
    };
    auto pair_cost = [](const Pt& p, const Pt& q) {
        if (std::isfinite(p.d) != std::isfinite(q.d)) return chordal::kInf;
        const double dd = std::isfinite(p.d) ? std::abs(p.d - q.d) : 0.0;
        return std::max(std::abs(p.b - q.b), dd);
    };

    const size_t n1 = p1.size(), n2 = p2.size();
    double best = chordal::kInf;
    // Choose matched subset of p1 by bitmask, injected into p2 in all orders.
    std::vector<int> idx2(n2);
    std::iota(idx2.begin(), idx2.end(), 0);
    for (uint32_t mask = 0; mask < (1u << n1); ++mask) {
        std::vector<int> sel;
        for (size_t i = 0; i < n1; ++i)
            if (mask & (1u << i)) sel.push_back(int(i));
        if (sel.size() > n2) continue;
        std::vector<int> choose(n2, 0);
        std::fill(choose.begin(), choose.begin() + long(sel.size()), 1);
        std::sort(choose.begin(), choose.end(), std::greater<>());
        // Iterate ordered arrangements of |sel| targets from p2.
        std::vector<int> perm = idx2;
        std::sort(perm.begin(), perm.end());
        do {
            // Use the first |sel| entries of perm as targets.
            double cost = 0;
            for (size_t i = 0; i < sel.size(); ++i)
                cost = std::max(cost,
                                pair_cost(p1[size_t(sel[i])], p2[size_t(perm[i])]));
            std::vector<char> used(n2, 0);
            for (size_t i = 0; i < sel.size(); ++i) used[size_t(perm[i])] = 1;
            for (size_t i = 0; i < n1; ++i)
                if (!(mask & (1u << i))) cost = std::max(cost, diag_cost(p1[i]));
            for (size_t j = 0; j < n2; ++j)
                if (!used[j]) cost = std::max(cost, diag_cost(p2[j]));
            best = std::min(best, cost);
        } while (std::next_permutation(perm.begin(), perm.end()));
    }
    return best;
}

std::vector<Vec> random_points(std::mt19937_64& rng, int n, int d) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<Vec> pts(static_cast<size_t>(n), Vec(static_cast<size_t>(d)));
    for (auto& p : pts)
        for (auto& x : p) x = u(rng);
    return pts;
}

PolyLoop random_nondegenerate_loop(uint64_t seed, int n, int d,
                                   double clearance) {
    std::mt19937_64 rng(seed);
    for (int attempt = 0; attempt < 100000; ++attempt) {
        std::vector<Vec> pts = random_points(rng, n, d);
        PolyLoop loop = PolyLoop::build(pts);
        const chordal::NondegeneracyReport rep =
            chordal::check_nondegeneracy(loop, chordal::default_tolerance(loop));
        if (!rep.pass()) continue;
        if (clearance > 0.0) {
            bool ok = true;
            for (int i = 0; i < n && ok; ++i) {
                for (int j = i + 1; j < n && ok; ++j) {
                    const bool adj = (j == i + 1) || (i == 0 && j == n - 1);
                    if (adj) continue;
                    const chordal::SegmentPairMin m = chordal::segment_segment_min(
                        loop.point(i), loop.point(i + 1), loop.point(j),
                        loop.point(j + 1));
                    if (std::sqrt(2.0 * m.sq_half_distance) < clearance) ok = false;
                }
            }
            if (!ok) continue;
        }
        return loop;
    }
    throw std::runtime_error("could not sample a non-degenerate loop");
}

std::vector<Vec> random_rigid_motion(std::mt19937_64& rng,
                                     const std::vector<Vec>& pts) {
    const size_t d = pts.at(0).size();
    std::normal_distribution<double> g(0.0, 1.0);
    // Gram-Schmidt of a Gaussian matrix gives a rotation (up to sign).
    std::vector<Vec> q(d, Vec(d));
    for (auto& col : q)
        for (auto& x : col) x = g(rng);
    for (size_t i = 0; i < d; ++i) {
        for (size_t j = 0; j < i; ++j) {
            double dot = 0;
            for (size_t k = 0; k < d; ++k) dot += q[i][k] * q[j][k];
            for (size_t k = 0; k < d; ++k) q[i][k] -= dot * q[j][k];
        }
        double nrm = 0;
        for (size_t k = 0; k < d; ++k) nrm += q[i][k] * q[i][k];
        nrm = std::sqrt(nrm);
        for (size_t k = 0; k < d; ++k) q[i][k] /= nrm;
    }
    Vec shift(d);
    for (auto& x : shift) x = g(rng);

    std::vector<Vec> out;
    out.reserve(pts.size());
    for (const Vec& p : pts) {
        Vec r(d);
        for (size_t i = 0; i < d; ++i) {
            double s = shift[i];
            for (size_t k = 0; k < d; ++k) s += q[i][k] * p[k];
            r[i] = s;
        }
        out.push_back(std::move(r));
    }
    return out;
}

double grid_point_segment_min(const Vec& p, const Vec& a, const Vec& b,
                              int samples) {
    double best = chordal::kInf;
    for (int k = 0; k <= samples; ++k) {
        const double s = double(k) / samples;
        double d2 = 0;
        for (size_t i = 0; i < p.size(); ++i) {
            const double x = p[i] - (a[i] + s * (b[i] - a[i]));
            d2 += x * x;
        }
        best = std::min(best, d2);
    }
    return best;
}

double grid_segment_segment_min(const Vec& a0, const Vec& a1, const Vec& b0,
                                const Vec& b1, int samples) {
    double best = chordal::kInf;
    for (int i = 0; i <= samples; ++i) {
        const double s1 = double(i) / samples;
        for (int j = 0; j <= samples; ++j) {
            const double s2 = double(j) / samples;
            double d2 = 0;
            for (size_t k = 0; k < a0.size(); ++k) {
                const double x = (a0[k] + s1 * (a1[k] - a0[k])) -
                                 (b0[k] + s2 * (b1[k] - b0[k]));
                d2 += x * x;
            }
            best = std::min(best, 0.5 * d2);
        }
    }
    return best;
}

}  // namespace oracles
