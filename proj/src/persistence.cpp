#include "chordal/persistence.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace chordal {

bool is_prime(int p) {
    if (p < 2) return false;
    for (int q = 2; q * q <= p; ++q)
        if (p % q == 0) return false;
    return true;
}

namespace {

FilteredComplex build_filtered(const NerveComplex& nc,
                               double (*transform)(double)) {
    std::vector<int32_t> order(nc.simplices.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int32_t a, int32_t b) {
        const NerveComplex::Entry& x = nc.simplices[size_t(a)];
        const NerveComplex::Entry& y = nc.simplices[size_t(b)];
        if (x.value != y.value) return x.value < y.value;
        if (x.s.dim != y.s.dim) return x.s.dim < y.s.dim;
        return x.s.v < y.s.v;
    });

    std::vector<int32_t> pos(nc.simplices.size());
    for (size_t k = 0; k < order.size(); ++k) pos[size_t(order[k])] = int32_t(k);

    FilteredComplex fc;
    fc.value.reserve(order.size());
    fc.dim.reserve(order.size());
    fc.boundary.resize(order.size());
    fc.simplex.reserve(order.size());
    for (size_t k = 0; k < order.size(); ++k) {
        const NerveComplex::Entry& e = nc.simplices[size_t(order[k])];
        fc.value.push_back(transform ? transform(e.value) : e.value);
        fc.dim.push_back(e.s.dim);
        fc.simplex.push_back(e.s);
        if (e.s.dim > 0) {
            std::vector<int32_t>& bd = fc.boundary[k];
            const int m = e.s.dim + 1;
            for (int drop = 0; drop < m; ++drop) {
                Simplex f;
                int t = 0;
                for (int i = 0; i < m; ++i)
                    if (i != drop) f.v[t++] = e.s.v[i];
                f.dim = int8_t(m - 2);
                bd.push_back(pos[size_t(nc.index.at(f))]);
            }
            std::sort(bd.begin(), bd.end());
        }
    }
    return fc;
}

}  // namespace

FilteredComplex to_filtered_complex(const NerveComplex& nc) {
    return build_filtered(nc, nullptr);
}

FilteredComplex to_filtered_complex(const NerveComplex& nc,
                                    double (*transform)(double)) {
    return build_filtered(nc, transform);
}

std::vector<DiagramPoint> PersistenceDiagram::in_dim(int d) const {
    std::vector<DiagramPoint> out;
    for (const DiagramPoint& pt : points)
        if (pt.dim == d) out.push_back(pt);
    return out;
}

namespace {

// Sparse column over Z_p: entries (row, coeff) sorted by row.
using Column = std::vector<std::pair<int32_t, int32_t>>;

int32_t mod_inverse(int32_t a, int32_t p) {
    int32_t r = 1;
    int32_t base = a % p;
    int e = p - 2;  // Fermat; p prime
    while (e > 0) {
        if (e & 1) r = int32_t(int64_t(r) * base % p);
        base = int32_t(int64_t(base) * base % p);
        e >>= 1;
    }
    return r;
}

// col -= c * other, both sorted by row.
void axpy(Column& col, const Column& other, int32_t c, int32_t p) {
    Column out;
    out.reserve(col.size() + other.size());
    size_t i = 0, j = 0;
    while (i < col.size() || j < other.size()) {
        if (j == other.size() ||
            (i < col.size() && col[i].first < other[j].first)) {
            out.push_back(col[i++]);
        } else if (i == col.size() || other[j].first < col[i].first) {
            const int32_t v = int32_t((int64_t(p) - c) * other[j].second % p);
            if (v) out.emplace_back(other[j].first, v);
            ++j;
        } else {
            const int32_t v = int32_t(
                ((int64_t(col[i].second) - int64_t(c) * other[j].second) % p +
                 int64_t(p) * p) % p);
            if (v) out.emplace_back(col[i].first, v);
            ++i, ++j;
        }
    }
    col = std::move(out);
}

struct UnionFind {
    std::vector<int32_t> parent;
    explicit UnionFind(size_t n) : parent(n) {
        std::iota(parent.begin(), parent.end(), 0);
    }
    int32_t find(int32_t x) {
        while (parent[size_t(x)] != x) {
            parent[size_t(x)] = parent[size_t(parent[size_t(x)])];
            x = parent[size_t(x)];
        }
        return x;
    }
};

}  // namespace

PersistenceDiagram compute_persistence(const FilteredComplex& fc, int p,
                                       std::vector<DiagramPoint>* zero_pairs) {
    if (!is_prime(p)) throw std::invalid_argument("coefficient p must be prime");
    const int32_t n = int32_t(fc.size());
    PersistenceDiagram diag;
    diag.p = p;

    auto emit = [&](int d, double birth, double death) {
        if (d > 2) return;
        if (birth == death) {
            if (zero_pairs) zero_pairs->push_back({d, birth, death});
            return;
        }
        diag.points.push_back({d, birth, death});
    };

    int8_t maxdim = 0;
    for (int32_t i = 0; i < n; ++i) maxdim = std::max(maxdim, fc.dim[size_t(i)]);

    // Degree >= 2 pairs by column reduction, top dimension first so that
    // paired birth columns can be cleared; degree-0 pairing is done by
    // union-find below and owns all degree-1 columns.
    const size_t nn = size_t(n);
    std::vector<int32_t> pivot_owner(nn, -1);
    std::vector<char> cleared(nn, 0);
    std::vector<char> paired_as_birth(nn, 0);
    std::vector<Column> reduced(nn);

    for (int8_t d = maxdim; d >= 2; --d) {
        for (int32_t j = 0; j < n; ++j) {
            if (fc.dim[size_t(j)] != d || cleared[size_t(j)]) continue;
            // Boundary column with orientation signs from the sorted vertex
            // order; facet positions come from the precomputed boundary list.
            Column col;
            {
                const Simplex& s = fc.simplex[size_t(j)];
                const int m = s.dim + 1;
                for (int drop = 0; drop < m; ++drop) {
                    Simplex f;
                    int t = 0;
                    for (int i = 0; i < m; ++i)
                        if (i != drop) f.v[t++] = s.v[i];
                    f.dim = int8_t(m - 2);
                    for (int32_t cand : fc.boundary[size_t(j)]) {
                        if (fc.simplex[size_t(cand)] == f) {
                            col.emplace_back(cand, (drop % 2 == 0) ? 1 : p - 1);
                            break;
                        }
                    }
                }
                std::sort(col.begin(), col.end());
            }

            while (!col.empty()) {
                const int32_t piv = col.back().first;
                const int32_t owner = pivot_owner[size_t(piv)];
                if (owner < 0) break;
                const int32_t c = int32_t(
                    int64_t(col.back().second) *
                    mod_inverse(reduced[size_t(owner)].back().second, p) % p);
                axpy(col, reduced[size_t(owner)], c, p);
            }
            if (!col.empty()) {
                const int32_t piv = col.back().first;
                pivot_owner[size_t(piv)] = j;
                paired_as_birth[size_t(piv)] = 1;
                cleared[size_t(piv)] = 1;  // clearing: birth columns are zero
                reduced[size_t(j)] = std::move(col);
                emit(d - 1, fc.value[size_t(piv)], fc.value[size_t(j)]);
            }
            // Empty columns of dimension d are essential in degree d unless
            // d was paired from above; record below after all reductions.
        }
    }

    // Degree-0 pairing by union-find over vertices, using edge positions in
    // filtration order (the pairing matches column reduction exactly).
    std::vector<int32_t> vertex_slot(size_t(n), -1);
    std::vector<int32_t> vertices;
    for (int32_t i = 0; i < n; ++i)
        if (fc.dim[size_t(i)] == 0) {
            vertex_slot[size_t(i)] = int32_t(vertices.size());
            vertices.push_back(i);
        }
    UnionFind uf(vertices.size());
    std::vector<int32_t> elder(vertices.size());  // position of oldest vertex
    for (size_t k = 0; k < vertices.size(); ++k) elder[k] = vertices[k];
    std::vector<char> edge_is_tree(size_t(n), 0);

    for (int32_t j = 0; j < n; ++j) {
        if (fc.dim[size_t(j)] != 1) continue;
        const int32_t a = fc.boundary[size_t(j)][0];
        const int32_t b = fc.boundary[size_t(j)][1];
        int32_t ra = uf.find(vertex_slot[size_t(a)]);
        int32_t rb = uf.find(vertex_slot[size_t(b)]);
        if (ra == rb) continue;
        if (elder[size_t(ra)] > elder[size_t(rb)]) std::swap(ra, rb);
        // rb's component dies at j.
        emit(0, fc.value[size_t(elder[size_t(rb)])], fc.value[size_t(j)]);
        uf.parent[size_t(rb)] = ra;
        edge_is_tree[size_t(j)] = 1;
    }

    // Essential classes.
    std::vector<char> root_done(vertices.size(), 0);
    for (size_t k = 0; k < vertices.size(); ++k) {
        const int32_t r = uf.find(int32_t(k));
        if (!root_done[size_t(r)]) {
            root_done[size_t(r)] = 1;
            diag.points.push_back({0, fc.value[size_t(elder[size_t(r)])], kInf});
        }
    }
    for (int32_t j = 0; j < n; ++j) {
        const int8_t d = fc.dim[size_t(j)];
        if (d == 0 || d > 2) continue;
        if (d == 1) {
            if (!edge_is_tree[size_t(j)] && !paired_as_birth[size_t(j)])
                diag.points.push_back({1, fc.value[size_t(j)], kInf});
        } else {
            // A d-simplex is essential if its column reduced to zero and it
            // was not paired from above as a birth.
            if (!paired_as_birth[size_t(j)] && !cleared[size_t(j)] &&
                reduced[size_t(j)].empty())
                diag.points.push_back({d, fc.value[size_t(j)], kInf});
        }
    }

    std::sort(diag.points.begin(), diag.points.end(),
              [](const DiagramPoint& x, const DiagramPoint& y) {
                  if (x.dim != y.dim) return x.dim < y.dim;
                  if (x.birth != y.birth) return x.birth < y.birth;
                  return x.death < y.death;
              });
    if (zero_pairs)
        std::sort(zero_pairs->begin(), zero_pairs->end(),
                  [](const DiagramPoint& x, const DiagramPoint& y) {
                      if (x.dim != y.dim) return x.dim < y.dim;
                      return x.birth < y.birth;
                  });
    return diag;
}

ConleyIndex conley_index(const MorseSet& ms, int p) {
    if (!is_prime(p)) throw std::invalid_argument("coefficient p must be prime");
    // Relative chain complex on closure \ link = the Morse set itself.
    std::vector<std::vector<Simplex>> by_dim(5);
    for (const Simplex& s : ms.simplices) by_dim[size_t(s.dim)].push_back(s);
    for (auto& v : by_dim) std::sort(v.begin(), v.end());

    auto rank_boundary = [&](int d) -> int {
        // Matrix of the boundary map C_d -> C_{d-1} with link faces dropped.
        if (d == 0 || by_dim[size_t(d)].empty() || by_dim[size_t(d) - 1].empty())
            return 0;
        const std::vector<Simplex>& rows = by_dim[size_t(d) - 1];
        const std::vector<Simplex>& cols = by_dim[size_t(d)];
        std::vector<std::vector<int32_t>> m(rows.size(),
                                            std::vector<int32_t>(cols.size(), 0));
        for (size_t c = 0; c < cols.size(); ++c) {
            const Simplex& s = cols[c];
            const int k = s.dim + 1;
            for (int drop = 0; drop < k; ++drop) {
                Simplex f;
                int t = 0;
                for (int i = 0; i < k; ++i)
                    if (i != drop) f.v[t++] = s.v[i];
                f.dim = int8_t(k - 2);
                auto it = std::lower_bound(rows.begin(), rows.end(), f);
                if (it != rows.end() && *it == f)
                    m[size_t(it - rows.begin())][c] =
                        (drop % 2 == 0) ? 1 : p - 1;
            }
        }
        // Gaussian elimination over Z_p.
        int rank = 0;
        size_t row = 0;
        for (size_t col = 0; col < cols.size() && row < rows.size(); ++col) {
            size_t piv = row;
            while (piv < rows.size() && m[piv][col] == 0) ++piv;
            if (piv == rows.size()) continue;
            std::swap(m[piv], m[row]);
            const int32_t inv = mod_inverse(m[row][col], p);
            for (size_t c2 = col; c2 < cols.size(); ++c2)
                m[row][c2] = int32_t(int64_t(m[row][c2]) * inv % p);
            for (size_t r2 = 0; r2 < rows.size(); ++r2) {
                if (r2 == row || m[r2][col] == 0) continue;
                const int32_t f = m[r2][col];
                for (size_t c2 = col; c2 < cols.size(); ++c2)
                    m[r2][c2] = int32_t(
                        ((int64_t(m[r2][c2]) - int64_t(f) * m[row][c2]) % p +
                         int64_t(p) * p) % p);
            }
            ++row;
            ++rank;
        }
        return rank;
    };

    ConleyIndex ci;
    std::array<int, 5> rk{};
    for (int d = 1; d <= 4; ++d) rk[size_t(d)] = rank_boundary(d);
    for (int d = 0; d < 3; ++d) {
        const int chains = int(by_dim[size_t(d)].size());
        ci.betti[size_t(d)] = chains - rk[size_t(d)] - rk[size_t(d) + 1];
    }
    return ci;
}

PersistenceDiagram square_map(const PersistenceDiagram& diag,
                              SquareDirection direction) {
    PersistenceDiagram out;
    out.p = diag.p;
    out.points.reserve(diag.points.size());
    for (const DiagramPoint& pt : diag.points) {
        if (pt.birth < 0 || (std::isfinite(pt.death) && pt.death < 0))
            throw std::invalid_argument("square_map requires coordinates >= 0");
        auto f = [&](double x) {
            if (!std::isfinite(x)) return x;
            return direction == SquareDirection::to_squared
                       ? 0.5 * x * x
                       : std::sqrt(2.0 * x);
        };
        out.points.push_back({pt.dim, f(pt.birth), f(pt.death)});
    }
    return out;
}

MaxminReport verify_maxmin_structure(const PersistenceDiagram& diag,
                                     double maxval, double minmax,
                                     double rel_tol) {
    MaxminReport rep;
    const double tol = rel_tol * std::max(1.0, std::abs(maxval));
    const std::vector<DiagramPoint> pts = diag.in_dim(1);

    auto near = [&](double a, double b) {
        if (!std::isfinite(a) || !std::isfinite(b)) return a == b;
        return std::abs(a - b) <= tol;
    };

    int max_deaths = 0;
    for (const DiagramPoint& pt : pts)
        if (near(pt.death, maxval)) ++max_deaths;
    rep.repeated_max = max_deaths > 1;

    const bool p2 = diag.p == 2;
    // For p = 2 expect (0, maxval) and (l, inf); otherwise (0, inf) and
    // (l, maxval).
    bool found_zero = false;
    for (const DiagramPoint& pt : pts) {
        const double want_death = p2 ? maxval : kInf;
        if (near(pt.birth, 0.0) && near(pt.death, want_death)) {
            found_zero = true;
            break;
        }
    }
    if (!found_zero)
        rep.mismatches.push_back(p2 ? "missing point (0, max)"
                                    : "missing point (0, inf)");

    bool found_l = false;
    for (const DiagramPoint& pt : pts) {
        const double want_death = p2 ? kInf : maxval;
        if (near(pt.death, want_death)) {
            if (pt.birth <= minmax + tol) {
                found_l = true;
                rep.l = std::min(rep.l, pt.birth);
            }
        }
    }
    if (!found_l)
        rep.mismatches.push_back(
            p2 ? "missing point (l, inf) with l <= min-max bound"
               : "missing point (l, max) with l <= min-max bound");

    rep.pass = rep.mismatches.empty();
    return rep;
}

}  // namespace chordal
