#include "chordal/nerve.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace chordal {

namespace {

Simplex make_simplex(std::initializer_list<int32_t> verts) {
    Simplex s;
    int k = 0;
    for (int32_t v : verts) s.v[k++] = v;
    std::sort(s.v.begin(), s.v.begin() + k);
    s.dim = int8_t(k - 1);
    // Duplicate cell ids would mean a degenerate simplex.
    for (int i = 1; i < k; ++i)
        if (s.v[i] == s.v[i - 1]) throw std::logic_error("degenerate simplex");
    return s;
}

struct Builder {
    NerveComplex nc;

    void add(const Simplex& s, double value) {
        auto it = nc.index.find(s);
        if (it == nc.index.end()) {
            nc.index.emplace(s, int32_t(nc.simplices.size()));
            nc.simplices.push_back({s, value});
        } else {
            // A simplex reachable from two corners takes the smaller value
            // (the filtration value is a minimum over the intersection).
            NerveComplex::Entry& e = nc.simplices[size_t(it->second)];
            e.value = std::min(e.value, value);
        }
    }
};

// Facets (codimension-1 faces) of a simplex.
std::vector<Simplex> facets(const Simplex& s) {
    std::vector<Simplex> out;
    const int k = s.dim + 1;
    if (k <= 1) return out;
    for (int drop = 0; drop < k; ++drop) {
        Simplex f;
        int m = 0;
        for (int i = 0; i < k; ++i)
            if (i != drop) f.v[m++] = s.v[i];
        f.dim = int8_t(k - 2);
        out.push_back(f);
    }
    return out;
}

// All proper faces, including the simplex itself when with_self is set.
void collect_faces(const Simplex& s, std::set<Simplex>& out) {
    out.insert(s);
    for (const Simplex& f : facets(s))
        if (!out.count(f)) collect_faces(f, out);
}

}  // namespace

double NerveComplex::value_of(const Simplex& s) const {
    auto it = index.find(s);
    if (it == index.end()) throw std::out_of_range("simplex not in complex");
    return simplices[size_t(it->second)].value;
}

std::vector<double> NerveComplex::critical_values() const {
    std::vector<double> vals;
    vals.reserve(simplices.size());
    for (const Entry& e : simplices) vals.push_back(e.value);
    std::sort(vals.begin(), vals.end());
    vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
    return vals;
}

void NerveComplex::verify_monotone() const {
    for (const Entry& e : simplices) {
        for (const Simplex& f : facets(e.s)) {
            auto it = index.find(f);
            if (it == index.end())
                throw std::logic_error("complex not closed under faces");
            if (simplices[size_t(it->second)].value > e.value)
                throw std::logic_error("filtration not monotone");
        }
    }
}

NerveComplex build_nerve(const PolyLoop& loop) {
    const int n = loop.size();
    {
        NondegeneracyReport rep =
            check_nondegeneracy(loop, default_tolerance(loop));
        if (!rep.embedding_ok())
            throw LoopError("nerve requires an embedded loop (C1, C2)");
    }

    Builder b;
    b.nc.n = n;
    auto seg0 = [&](int i) { return loop.point(i); };
    auto seg1 = [&](int i) { return loop.point(i + 1); };
    auto adjacent = [&](int i, int j) {
        return j == i || j == (i + 1) % n || i == (j + 1) % n;
    };

    // Vertices: one per cell {i, j}.
    for (int i = 0; i < n; ++i) {
        for (int j = i; j < n; ++j) {
            double f = 0;
            if (!adjacent(i, j))
                f = segment_segment_min(seg0(i), seg1(i), seg0(j), seg1(j))
                        .sq_half_distance;
            b.add(make_simplex({cell_id(i, j)}), f);
        }
    }

    // Edges between cells sharing segment k, with the other indices i, i+1
    // adjacent. The intersection is the shared vertex x_{i+1} against
    // segment k, so the value is half its squared distance to that segment.
    for (int k = 0; k < n; ++k) {
        for (int i = 0; i < n; ++i) {
            const int i1 = (i + 1) % n;
            const int32_t a = cell_id(std::min(k, i), std::max(k, i));
            const int32_t c = cell_id(std::min(k, i1), std::max(k, i1));
            if (a == c) continue;
            double f = 0;
            if (k != i && k != i1)
                f = 0.5 * point_segment_min(seg0(i1), seg0(k), seg1(k))
                              .sq_distance;
            b.add(make_simplex({a, c}), f);
        }
    }

    // Interior corners: for each unordered pair {i, j}, i != j, the cells
    // around the corner (x_{i+1}, x_{j+1}) span a 3-simplex entering at the
    // half-squared corner distance, along with its triangles and both
    // diagonal edges.
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            const int i1 = (i + 1) % n, j1 = (j + 1) % n;
            const double f = 0.5 * sq_distance(seg0(i1), seg0(j1));
            const int32_t A = cell_id(i, j);
            const int32_t B = cell_id(std::min(i1, j), std::max(i1, j));
            const int32_t C = cell_id(std::min(i, j1), std::max(i, j1));
            const int32_t D = cell_id(std::min(i1, j1), std::max(i1, j1));
            b.add(make_simplex({A, B, C, D}), f);
            b.add(make_simplex({A, B, C}), f);
            b.add(make_simplex({A, B, D}), f);
            b.add(make_simplex({A, C, D}), f);
            b.add(make_simplex({B, C, D}), f);
            b.add(make_simplex({A, D}), f);
            b.add(make_simplex({B, C}), f);
            b.nc.collapse_records.push_back({make_simplex({A, B, C, D}),
                                             make_simplex({B, C}),
                                             make_simplex({A, B, C}),
                                             make_simplex({B, C, D})});
        }
    }

    // Boundary triangles along the diagonal cells, all at value 0.
    for (int i = 0; i < n; ++i) {
        const int i1 = (i + 1) % n;
        const int32_t A = cell_id(i, i);
        const int32_t B = cell_id(std::min(i, i1), std::max(i, i1));
        const int32_t C = cell_id(i1, i1);
        b.add(make_simplex({A, B, C}), 0.0);
        b.add(make_simplex({A, C}), 0.0);
    }

    // Ulp-level repair: a face computed along a different code path may
    // exceed its coface by rounding; project onto exact monotonicity.
    std::vector<int32_t> order(b.nc.simplices.size());
    for (size_t k = 0; k < order.size(); ++k) order[k] = int32_t(k);
    std::sort(order.begin(), order.end(), [&](int32_t x, int32_t y) {
        return b.nc.simplices[size_t(x)].s.dim > b.nc.simplices[size_t(y)].s.dim;
    });
    for (int32_t idx : order) {
        const NerveComplex::Entry& e = b.nc.simplices[size_t(idx)];
        for (const Simplex& f : facets(e.s)) {
            auto it = b.nc.index.find(f);
            if (it == b.nc.index.end())
                throw std::logic_error("complex not closed under faces");
            NerveComplex::Entry& fe = b.nc.simplices[size_t(it->second)];
            fe.value = std::min(fe.value, e.value);
        }
    }

    b.nc.verify_monotone();
    return b.nc;
}

NerveComplex collapse_nerve(const NerveComplex& nc) {
    std::set<Simplex> removed;
    for (const NerveComplex::CollapseRecord& r : nc.collapse_records) {
        removed.insert(r.tet);
        removed.insert(r.anti_edge);
        removed.insert(r.tri_a);
        removed.insert(r.tri_b);
    }

    NerveComplex out;
    out.n = nc.n;
    for (const NerveComplex::Entry& e : nc.simplices) {
        if (removed.count(e.s)) continue;
        out.index.emplace(e.s, int32_t(out.simplices.size()));
        out.simplices.push_back(e);
    }
    out.verify_monotone();
    return out;
}

namespace {

std::vector<MorseSet> morse_sets_of_group(const NerveComplex& nc,
                                          const std::vector<int32_t>& at_a,
                                          double a) {
    // Union-find over the simplices entering at a, joined by face relations.
    std::unordered_map<int32_t, int32_t> comp;
    for (size_t k = 0; k < at_a.size(); ++k) comp[at_a[k]] = int32_t(k);
    std::vector<int32_t> parent(at_a.size());
    for (size_t k = 0; k < parent.size(); ++k) parent[k] = int32_t(k);
    auto find = [&](int32_t x) {
        while (parent[size_t(x)] != x) {
            parent[size_t(x)] = parent[size_t(parent[size_t(x)])];
            x = parent[size_t(x)];
        }
        return x;
    };
    for (int32_t idx : at_a) {
        for (const Simplex& f : facets(nc.simplices[size_t(idx)].s)) {
            auto it = nc.index.find(f);
            if (it == nc.index.end()) continue;
            auto jt = comp.find(it->second);
            if (jt == comp.end()) continue;
            const int32_t ra = find(comp[idx]), rb = find(jt->second);
            if (ra != rb) parent[size_t(ra)] = rb;
        }
    }

    std::unordered_map<int32_t, size_t> root_to_set;
    std::vector<MorseSet> out;
    for (int32_t idx : at_a) {
        const int32_t r = find(comp[idx]);
        auto [it, fresh] = root_to_set.try_emplace(r, out.size());
        if (fresh) {
            out.emplace_back();
            out.back().value = a;
        }
        out[it->second].simplices.push_back(nc.simplices[size_t(idx)].s);
    }

    for (MorseSet& ms : out) {
        std::sort(ms.simplices.begin(), ms.simplices.end());
        std::set<Simplex> cl;
        for (const Simplex& s : ms.simplices) collect_faces(s, cl);
        for (const Simplex& s : cl) {
            ms.closure.push_back(s);
            if (nc.value_of(s) < a) ms.link.push_back(s);
        }
    }
    std::sort(out.begin(), out.end(), [](const MorseSet& x, const MorseSet& y) {
        return x.simplices.front() < y.simplices.front();
    });
    return out;
}

}  // namespace

std::vector<MorseSet> morse_sets(const NerveComplex& nc, double a) {
    std::vector<int32_t> at_a;
    for (size_t k = 0; k < nc.simplices.size(); ++k)
        if (nc.simplices[k].value == a) at_a.push_back(int32_t(k));
    if (at_a.empty()) throw std::invalid_argument("not a filtration value");
    return morse_sets_of_group(nc, at_a, a);
}

std::vector<MorseSet> all_positive_morse_sets(const NerveComplex& nc) {
    std::vector<int32_t> order(nc.simplices.size());
    for (size_t k = 0; k < order.size(); ++k) order[k] = int32_t(k);
    std::sort(order.begin(), order.end(), [&](int32_t a, int32_t b) {
        return nc.simplices[size_t(a)].value < nc.simplices[size_t(b)].value;
    });

    std::vector<MorseSet> out;
    size_t k = 0;
    while (k < order.size()) {
        const double a = nc.simplices[size_t(order[k])].value;
        std::vector<int32_t> group;
        while (k < order.size() && nc.simplices[size_t(order[k])].value == a)
            group.push_back(order[k++]);
        if (a <= 0.0) continue;
        std::vector<MorseSet> sets = morse_sets_of_group(nc, group, a);
        out.insert(out.end(), std::make_move_iterator(sets.begin()),
                   std::make_move_iterator(sets.end()));
    }
    return out;
}

}  // namespace chordal
