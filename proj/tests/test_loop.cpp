#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "chordal/loop.hpp"
#include "oracles.hpp"

using namespace chordal;

namespace {

std::vector<Vec> regular_ngon(int n, double radius = 1.0) {
    std::vector<Vec> pts;
    for (int k = 0; k < n; ++k) {
        const double a = 2.0 * M_PI * k / n;
        pts.push_back(Vec{radius * std::cos(a), radius * std::sin(a)});
    }
    return pts;
}

}  // namespace

TEST_CASE("build_loop validates input") {
    CHECK_THROWS_AS(PolyLoop::build(regular_ngon(3)), LoopError);
    CHECK_THROWS_AS(PolyLoop::build({}), LoopError);
    // Zero-length edge is the fatal form of a coincident-point violation.
    std::vector<Vec> dup = regular_ngon(5);
    dup[2] = dup[1];
    CHECK_THROWS_AS(PolyLoop::build(dup), LoopError);
    // n > 3 is strict: 4 points are accepted.
    CHECK_NOTHROW(PolyLoop::build(regular_ngon(4)));
    // Mixed dimensions and non-finite coordinates are rejected.
    CHECK_THROWS_AS(PolyLoop::build({Vec{0, 0}, Vec{1, 0, 0}, Vec{1, 1},
                                     Vec{0, 1}, Vec{-1, 0}}),
                    LoopError);
    CHECK_THROWS_AS(
        PolyLoop::build({Vec{0, 0}, Vec{1, std::nan("")}, Vec{1, 1}, Vec{0, 1},
                         Vec{-1, 0}}),
        LoopError);
}

TEST_CASE("derived quantities of regular polygons") {
    const double side = 2.0 * std::sin(M_PI / 5.0);
    const PolyLoop pent = PolyLoop::build(regular_ngon(5));
    CHECK(pent.total_length() == Catch::Approx(5.0 * side).epsilon(1e-12));

    const PolyLoop hex = PolyLoop::build(regular_ngon(6));
    for (int i = 0; i < 6; ++i)
        CHECK(hex.edge_length(i) == Catch::Approx(1.0).epsilon(1e-12));
    CHECK(hex.total_length() == Catch::Approx(6.0).epsilon(1e-12));
    CHECK(hex.partial_length(3) == Catch::Approx(0.5).epsilon(1e-12));
    CHECK(hex.partial_length(0) == 0.0);

    // Unit tangents have unit norm; partial lengths increase.
    for (int i = 0; i < 6; ++i) {
        double n2 = 0;
        for (double x : hex.unit_tangent(i)) n2 += x * x;
        CHECK(std::abs(std::sqrt(n2) - 1.0) < 1e-12);
        if (i > 0) CHECK(hex.partial_length(i) > hex.partial_length(i - 1));
    }
}

TEST_CASE("partial lengths match a cumulative sum on a random loop") {
    const PolyLoop loop = oracles::random_nondegenerate_loop(101, 10, 3);
    double acc = 0;
    for (int i = 0; i < 10; ++i) {
        CHECK(loop.partial_length(i) ==
              Catch::Approx(acc / loop.total_length()).margin(1e-13));
        acc += loop.edge_length(i);
    }
    CHECK(acc == Catch::Approx(loop.total_length()).epsilon(1e-13));
}

TEST_CASE("non-degeneracy checks") {
    const PolyLoop pent = PolyLoop::build(regular_ngon(5));
    CHECK(check_nondegeneracy(pent, default_tolerance(pent)).pass());

    // Opposite edges of a hexagon are antiparallel.
    const PolyLoop hex = PolyLoop::build(regular_ngon(6));
    const NondegeneracyReport rep = check_nondegeneracy(hex, default_tolerance(hex));
    CHECK(rep.embedding_ok());
    CHECK(rep.c3_violations ==
          std::vector<std::pair<int, int>>{{0, 3}, {1, 4}, {2, 5}});

    // A figure-eight-like crossing polyline violates C2 at the crossing.
    const std::vector<Vec> cross = {Vec{0, 0}, Vec{2, 2}, Vec{2, 0},
                                    Vec{0, 2}, Vec{-1, 1}};
    const PolyLoop bad = PolyLoop::build(cross);
    const NondegeneracyReport rep2 = check_nondegeneracy(bad, default_tolerance(bad));
    CHECK(!rep2.c2_violations.empty());
    // Segment (0,0)->(2,2) crosses segment (2,0)->(0,2).
    bool found = false;
    for (const auto& [i, j] : rep2.c2_violations)
        if (i == 0 && j == 2) found = true;
    CHECK(found);

    // Coincident (but non-consecutive) points violate C1.
    std::vector<Vec> pinch = regular_ngon(6);
    pinch[4] = pinch[0];
    const PolyLoop bad2 = PolyLoop::build(pinch);
    const NondegeneracyReport rep3 =
        check_nondegeneracy(bad2, default_tolerance(bad2));
    CHECK(rep3.c1_violations == std::vector<std::pair<int, int>>{{0, 4}});
}

TEST_CASE("seeded jitter repairs the hexagon's parallel edges") {
    // Antiparallel tangents deviate quadratically in the jitter angle, so
    // the magnitude must comfortably exceed sqrt(2 tol); 1e-3 on a unit
    // hexagon clears the default tolerance for most seeds.
    int passes = 0;
    for (uint64_t seed = 1; seed <= 20; ++seed) {
        std::vector<Vec> pts = regular_ngon(6);
        std::mt19937_64 rng(seed);
        std::uniform_real_distribution<double> u(-1e-3, 1e-3);
        for (Vec& p : pts)
            for (double& x : p) x += u(rng);
        const PolyLoop loop = PolyLoop::build(pts);
        if (check_nondegeneracy(loop, default_tolerance(loop)).pass()) ++passes;
    }
    CHECK(passes >= 16);
}

TEST_CASE("chord evaluation") {
    const PolyLoop pent = PolyLoop::build(regular_ngon(5));

    CHECK(pent.eval_T({{1, 0.3}, {1, 0.3}}) == 0.0);
    CHECK(pent.eval_T({{0, 0.0}, {2, 0.0}}) ==
          Catch::Approx(0.5 * sq_distance(pent.point(0), pent.point(2))));

    // Wrap-around consistency is exact.
    const PolyLoop loop = oracles::random_nondegenerate_loop(102, 8, 3);
    for (int i = 0; i < 8; ++i)
        CHECK(loop.eval_T({{i, 1.0}, {3, 0.25}}) ==
              loop.eval_T({{i + 1, 0.0}, {3, 0.25}}));

    // Direct interpolation oracle.
    std::mt19937_64 rng(55);
    std::uniform_real_distribution<double> u(0, 1);
    for (int t = 0; t < 30; ++t) {
        const LoopParam w1{int(rng() % 8), u(rng)};
        const LoopParam w2{int(rng() % 8), u(rng)};
        Vec p(3), q(3);
        for (int k = 0; k < 3; ++k) {
            p[size_t(k)] = loop.point(w1.edge)[size_t(k)] +
                           w1.s * loop.edge_vector(w1.edge)[size_t(k)];
            q[size_t(k)] = loop.point(w2.edge)[size_t(k)] +
                           w2.s * loop.edge_vector(w2.edge)[size_t(k)];
        }
        CHECK(loop.eval_T({w1, w2}) ==
              Catch::Approx(0.5 * sq_distance(p, q)).epsilon(1e-14));
        CHECK(loop.eval_T({w1, w2}) == loop.eval_T({w2, w1}));
    }

    // Midpoint convexity on each cover cell.
    for (int t = 0; t < 200; ++t) {
        const int i = int(rng() % 8), j = int(rng() % 8);
        const double a1 = u(rng), a2 = u(rng), b1 = u(rng), b2 = u(rng);
        const double mid = loop.eval_T(
            {{i, 0.5 * (a1 + b1)}, {j, 0.5 * (a2 + b2)}});
        const double ends = 0.5 * (loop.eval_T({{i, a1}, {j, a2}}) +
                                   loop.eval_T({{i, b1}, {j, b2}}));
        CHECK(mid <= ends + 1e-12);
    }
}

TEST_CASE("eval_T is invariant under re-indexing, reversal and rigid motion") {
    const PolyLoop loop = oracles::random_nondegenerate_loop(103, 9, 3);
    std::vector<Vec> pts;
    for (int i = 0; i < 9; ++i)
        pts.emplace_back(loop.point(i).begin(), loop.point(i).end());

    // Cyclic shift by 4: edge i of the shifted loop is edge i+4.
    std::vector<Vec> shifted(pts.begin() + 4, pts.end());
    shifted.insert(shifted.end(), pts.begin(), pts.begin() + 4);
    const PolyLoop sl = PolyLoop::build(shifted);
    CHECK(sl.eval_T({{0, 0.25}, {3, 0.5}}) ==
          loop.eval_T({{4, 0.25}, {7, 0.5}}));

    // Reversal: point k of the reversed loop is point -k; edge i covers the
    // original edge -(i+1) backwards. Values agree up to interpolation
    // round-off (vertex chords are bitwise equal).
    std::vector<Vec> rev(pts.rbegin(), pts.rend());
    rev.insert(rev.begin(), pts[0]);
    rev.pop_back();
    const PolyLoop rl = PolyLoop::build(rev);
    CHECK(rl.eval_T({{0, 0.25}, {3, 0.5}}) ==
          Catch::Approx(loop.eval_T({{8, 0.75}, {5, 0.5}})).epsilon(1e-14));
    CHECK(rl.eval_T({{0, 0.0}, {3, 0.0}}) == loop.eval_T({{0, 0.0}, {6, 0.0}}));

    std::mt19937_64 rng(66);
    const PolyLoop ml = PolyLoop::build(oracles::random_rigid_motion(rng, pts));
    CHECK(ml.eval_T({{2, 0.3}, {6, 0.9}}) ==
          Catch::Approx(loop.eval_T({{2, 0.3}, {6, 0.9}})).epsilon(1e-9));
}

TEST_CASE("sampling parametric curves") {
    auto circle = [](double t) {
        return Vec{std::cos(2 * M_PI * t), std::sin(2 * M_PI * t)};
    };
    const PolyLoop hex = sample_curve(circle, 6);
    for (int i = 0; i < 6; ++i)
        CHECK(hex.edge_length(i) == Catch::Approx(1.0).epsilon(1e-12));

    auto ellipse = [](double t) {
        return Vec{2.0 * std::cos(2 * M_PI * t), std::sin(2 * M_PI * t)};
    };
    const PolyLoop el = sample_curve(ellipse, 200);
    double best = 0;
    for (int i = 0; i < 200; ++i)
        for (int j = i + 1; j < 200; ++j)
            best = std::max(best, el.eval_T({{i, 0.0}, {j, 0.0}}));
    CHECK(best == Catch::Approx(8.0).epsilon(1e-3));

    const PolyLoop circ = sample_curve(circle, 100);
    double bc = 0;
    for (int i = 0; i < 100; ++i)
        for (int j = i + 1; j < 100; ++j)
            bc = std::max(bc, circ.eval_T({{i, 0.0}, {j, 0.0}}));
    CHECK(bc == Catch::Approx(2.0).epsilon(1e-3));
}
