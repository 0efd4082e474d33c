#include "chordal/mobius_grid.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <map>
#include <stdexcept>
#include <thread>
#include <unordered_map>

#include "json.hpp"

namespace chordal {

namespace {

void parallel_rows(int rows, int threads, const std::function<void(int)>& fn) {
    if (threads <= 1) {
        for (int b = 0; b < rows; ++b) fn(b);
        return;
    }
    std::vector<std::thread> pool;
    std::atomic<int> next{0};
    for (int t = 0; t < threads; ++t)
        pool.emplace_back([&] {
            for (int b = next.fetch_add(1); b < rows; b = next.fetch_add(1))
                fn(b);
        });
    for (std::thread& th : pool) th.join();
}

}  // namespace

std::vector<std::array<int32_t, 3>> MobiusGrid::triangles() const {
    std::vector<std::array<int32_t, 3>> tris;
    tris.reserve(size_t(2) * m * m);
    for (int b = 0; b < m; ++b) {
        for (int a = 0; a < m; ++a) {
            const int32_t p00 = vertex_id(a, b), p10 = vertex_id(a + 1, b);
            const int32_t p01 = vertex_id(a, b + 1), p11 = vertex_id(a + 1, b + 1);
            tris.push_back({p00, p10, p11});
            tris.push_back({p00, p11, p01});
        }
    }
    return tris;
}

namespace {

uint64_t edge_key(int32_t a, int32_t b) {
    if (a > b) std::swap(a, b);
    return (uint64_t(uint32_t(a)) << 32) | uint32_t(b);
}

std::unordered_map<uint64_t, int> edge_use_counts(const MobiusGrid& g) {
    std::unordered_map<uint64_t, int> uses;
    for (const auto& t : g.triangles()) {
        uses[edge_key(t[0], t[1])] += 1;
        uses[edge_key(t[1], t[2])] += 1;
        uses[edge_key(t[0], t[2])] += 1;
    }
    return uses;
}

}  // namespace

int MobiusGrid::euler_characteristic() const {
    const auto uses = edge_use_counts(*this);
    const long long V = (long long)(vertex_count());
    const long long E = (long long)(uses.size());
    const long long F = (long long)(2) * m * m;
    return int(V - E + F);
}

int MobiusGrid::boundary_circle_count() const {
    const auto uses = edge_use_counts(*this);
    std::unordered_map<int32_t, std::vector<int32_t>> adj;
    for (const auto& [key, count] : uses) {
        if (count != 1) continue;
        const int32_t a = int32_t(key >> 32), b = int32_t(key & 0xffffffffu);
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    for (const auto& [v, nb] : adj)
        if (nb.size() != 2) return -1;  // not a disjoint union of circles

    int circles = 0;
    std::unordered_map<int32_t, char> seen;
    for (const auto& [v, nb] : adj) {
        if (seen.count(v)) continue;
        ++circles;
        int32_t prev = -1, cur = v;
        while (!seen.count(cur)) {
            seen[cur] = 1;
            const auto& ns = adj.at(cur);
            const int32_t nxt = (ns[0] == prev) ? ns[1] : ns[0];
            prev = cur;
            cur = nxt;
        }
    }
    return circles;
}

MobiusGrid build_grid(const PolyLoop& loop, int m, int threads) {
    if (m < 8) throw std::invalid_argument("grid resolution must be >= 8");
    MobiusGrid g;
    g.m = m;
    g.values.assign(g.vertex_count(), 0.0);

    parallel_rows(m, threads, [&](int b) {
        for (int a = 0; a <= m; ++a) {
            const auto [t1, t2] = g.params(a, b);
            const Vec p = loop.at_arclength(t1);
            const Vec q = loop.at_arclength(t2);
            g.values[size_t(g.vertex_id(a, b))] = 0.5 * sq_distance(p, q);
        }
    });

    if (g.euler_characteristic() != 0)
        throw std::logic_error("grid gluing broken: Euler characteristic != 0");
    if (g.boundary_circle_count() != 1)
        throw std::logic_error("grid gluing broken: boundary is not one circle");
    return g;
}

FilteredComplex lower_star_complex(const MobiusGrid& grid) {
    const auto tris = grid.triangles();
    std::unordered_map<uint64_t, int32_t> edge_index;
    std::vector<std::array<int32_t, 2>> edges;
    for (const auto& t : tris) {
        for (const auto [x, y] : {std::pair{t[0], t[1]}, std::pair{t[1], t[2]},
                                  std::pair{t[0], t[2]}}) {
            const uint64_t k = edge_key(x, y);
            if (edge_index.emplace(k, int32_t(edges.size())).second)
                edges.push_back({std::min(x, y), std::max(x, y)});
        }
    }

    const size_t nv = grid.vertex_count(), ne = edges.size(), nt = tris.size();
    FilteredComplex fc;
    fc.value.reserve(nv + ne + nt);
    fc.dim.reserve(nv + ne + nt);
    fc.simplex.reserve(nv + ne + nt);

    struct Item {
        double value;
        int8_t dim;
        Simplex s;
        int32_t ref;
    };
    std::vector<Item> items;
    items.reserve(nv + ne + nt);
    for (size_t v = 0; v < nv; ++v) {
        Simplex s;
        s.v[0] = int32_t(v);
        s.dim = 0;
        items.push_back({grid.values[v], 0, s, int32_t(v)});
    }
    for (size_t e = 0; e < ne; ++e) {
        Simplex s;
        s.v[0] = edges[e][0];
        s.v[1] = edges[e][1];
        s.dim = 1;
        const double val = std::max(grid.values[size_t(edges[e][0])],
                                    grid.values[size_t(edges[e][1])]);
        items.push_back({val, 1, s, int32_t(e)});
    }
    for (size_t t = 0; t < nt; ++t) {
        std::array<int32_t, 3> v = tris[t];
        std::sort(v.begin(), v.end());
        Simplex s;
        s.v[0] = v[0];
        s.v[1] = v[1];
        s.v[2] = v[2];
        s.dim = 2;
        const double val = std::max({grid.values[size_t(v[0])],
                                     grid.values[size_t(v[1])],
                                     grid.values[size_t(v[2])]});
        items.push_back({val, 2, s, int32_t(t)});
    }

    std::sort(items.begin(), items.end(), [](const Item& a, const Item& b) {
        if (a.value != b.value) return a.value < b.value;
        if (a.dim != b.dim) return a.dim < b.dim;
        return a.s.v < b.s.v;
    });

    std::vector<int32_t> vertex_pos(nv), edge_pos(ne);
    for (size_t k = 0; k < items.size(); ++k) {
        if (items[k].dim == 0) vertex_pos[size_t(items[k].ref)] = int32_t(k);
        if (items[k].dim == 1) edge_pos[size_t(items[k].ref)] = int32_t(k);
    }

    fc.boundary.resize(items.size());
    for (size_t k = 0; k < items.size(); ++k) {
        const Item& it = items[k];
        fc.value.push_back(it.value);
        fc.dim.push_back(it.dim);
        fc.simplex.push_back(it.s);
        if (it.dim == 1) {
            fc.boundary[k] = {vertex_pos[size_t(it.s.v[0])],
                              vertex_pos[size_t(it.s.v[1])]};
        } else if (it.dim == 2) {
            fc.boundary[k] = {
                edge_pos[size_t(edge_index.at(edge_key(it.s.v[0], it.s.v[1])))],
                edge_pos[size_t(edge_index.at(edge_key(it.s.v[1], it.s.v[2])))],
                edge_pos[size_t(edge_index.at(edge_key(it.s.v[0], it.s.v[2])))]};
        }
        std::sort(fc.boundary[k].begin(), fc.boundary[k].end());
    }
    return fc;
}

PersistenceDiagram lower_star_persistence(const MobiusGrid& grid, int p,
                                          std::vector<DiagramPoint>* zero_pairs) {
    return compute_persistence(lower_star_complex(grid), p, zero_pairs);
}

double interpolation_gap(const MobiusGrid& grid, const PolyLoop& loop,
                         int refine, int threads) {
    const int m = grid.m;
    const double h = 1.0 / m;
    const int steps = refine + 1;
    std::vector<double> row_gap(size_t(m), 0.0);

    parallel_rows(m, threads, [&](int b) {
        double gap = 0;
        for (int a = 0; a < m; ++a) {
            const double u0 = double(a) / m, v0 = double(b) / m;
            const double f00 = grid.values[size_t(grid.vertex_id(a, b))];
            const double f10 = grid.values[size_t(grid.vertex_id(a + 1, b))];
            const double f11 = grid.values[size_t(grid.vertex_id(a + 1, b + 1))];
            const double f01 = grid.values[size_t(grid.vertex_id(a, b + 1))];
            // Full lattice over the cell, both triangles of the split.
            for (int ia = 0; ia <= steps; ++ia) {
                for (int ib = 0; ib <= steps; ++ib) {
                    if ((ia == 0 || ia == steps) && (ib == 0 || ib == steps))
                        continue;  // corners interpolate exactly
                    const double x = double(ia) / steps, y = double(ib) / steps;
                    double interp;
                    if (x >= y)
                        interp = f00 + x * (f10 - f00) + y * (f11 - f10);
                    else
                        interp = f00 + y * (f01 - f00) + x * (f11 - f01);
                    const double u = u0 + x * h, v = v0 + y * h;
                    const double truth =
                        0.5 * sq_distance(loop.at_arclength(0.5 * (v - u)),
                                          loop.at_arclength(0.5 * (v + u)));
                    gap = std::max(gap, std::abs(truth - interp));
                }
            }
        }
        row_gap[size_t(b)] = gap;
    });
    double gap = 0;
    for (double g : row_gap) gap = std::max(gap, g);

    // The sup may sit between lattice samples (the interpolant creases
    // along cell boundaries of the cover); pad by a Lipschitz bound for
    // the sampled difference over half a lattice spacing.
    const double lip = loop.total_length() * loop.bounding_box_diameter();
    return gap + 3.0 * lip * h / steps;
}

void export_heatmap(const MobiusGrid& grid, const std::string& base_path) {
    const int m = grid.m;
    {
        std::FILE* f = std::fopen((base_path + ".csv").c_str(), "w");
        if (!f) throw std::runtime_error("cannot write " + base_path + ".csv");
        for (int b = 0; b < m; ++b) {
            for (int a = 0; a <= m; ++a) {
                const double t =
                    std::sqrt(2.0 * grid.values[size_t(grid.vertex_id(a, b))]);
                std::fprintf(f, "%.17g%s", t, a == m ? "\n" : ",");
            }
        }
        std::fclose(f);
    }

    double lo = 0, hi = 0;
    for (double v : grid.values) hi = std::max(hi, std::sqrt(2.0 * v));
    {
        std::FILE* f = std::fopen((base_path + ".pgm").c_str(), "wb");
        if (!f) throw std::runtime_error("cannot write " + base_path + ".pgm");
        std::fprintf(f, "P5\n%d %d\n255\n", m + 1, m);
        for (int b = 0; b < m; ++b) {
            for (int a = 0; a <= m; ++a) {
                const double t =
                    std::sqrt(2.0 * grid.values[size_t(grid.vertex_id(a, b))]);
                const double x = hi > lo ? (t - lo) / (hi - lo) : 0.0;
                const unsigned char byte =
                    (unsigned char)(std::lround(255.0 * std::clamp(x, 0.0, 1.0)));
                std::fwrite(&byte, 1, 1, f);
            }
        }
        std::fclose(f);
    }
    {
        nlohmann::json side;
        side["min"] = lo;
        side["max"] = hi;
        side["rows"] = m;
        side["cols"] = m + 1;
        std::FILE* f = std::fopen((base_path + ".json").c_str(), "w");
        if (!f) throw std::runtime_error("cannot write " + base_path + ".json");
        const std::string text = side.dump(2);
        std::fwrite(text.data(), 1, text.size(), f);
        std::fputc('\n', f);
        std::fclose(f);
    }
}

}  // namespace chordal
