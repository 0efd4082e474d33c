#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "chordal/geometry.hpp"
#include "oracles.hpp"

using namespace chordal;

TEST_CASE("squared distance basics") {
    CHECK(sq_distance(Vec{0, 0}, Vec{3, 4}) == 25.0);
    CHECK(sq_distance(Vec{1.5, -2, 7}, Vec{1.5, -2, 7}) == 0.0);
    CHECK_THROWS(sq_distance(Vec{1, 2}, Vec{1, 2, 3}));

    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-5, 5);
    for (int t = 0; t < 50; ++t) {
        Vec p(5), q(5);
        for (auto& x : p) x = u(rng);
        for (auto& x : q) x = u(rng);
        double s = 0;
        for (int k = 0; k < 5; ++k) s += (p[size_t(k)] - q[size_t(k)]) * (p[size_t(k)] - q[size_t(k)]);
        CHECK(sq_distance(p, q) == Catch::Approx(s).epsilon(1e-14));
        CHECK(sq_distance(p, q) == sq_distance(q, p));
    }
}

TEST_CASE("point to segment minimiser") {
    const PointSegmentMin m =
        point_segment_min(Vec{0, 1}, Vec{-1, 0}, Vec{1, 0});
    CHECK(m.sq_distance == Catch::Approx(1.0));
    CHECK(m.s == Catch::Approx(0.5));

    const PointSegmentMin at_end =
        point_segment_min(Vec{-1, 0}, Vec{-1, 0}, Vec{1, 0});
    CHECK(at_end.sq_distance == 0.0);
    CHECK(at_end.s == 0.0);

    // Degenerate segment.
    const PointSegmentMin degen =
        point_segment_min(Vec{2, 2}, Vec{1, 1}, Vec{1, 1});
    CHECK(degen.s == 0.0);
    CHECK(degen.sq_distance == Catch::Approx(2.0));

    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-2, 2);
    for (int t = 0; t < 25; ++t) {
        Vec p(3), a(3), b(3);
        for (auto& x : p) x = u(rng);
        for (auto& x : a) x = u(rng);
        for (auto& x : b) x = u(rng);
        const PointSegmentMin r = point_segment_min(p, a, b);
        const double grid = oracles::grid_point_segment_min(p, a, b, 1000000);
        CHECK(r.sq_distance <= grid + 1e-9);
        CHECK(r.sq_distance == Catch::Approx(grid).margin(1e-9));
        // Bitwise invariance under segment reversal.
        const PointSegmentMin rev = point_segment_min(p, b, a);
        CHECK(rev.sq_distance == r.sq_distance);
    }
}

TEST_CASE("segment to segment minimiser") {
    SECTION("parallel unit segments at height 1") {
        const SegmentPairMin m = segment_segment_min(Vec{0, 0}, Vec{1, 0},
                                                     Vec{0, 1}, Vec{1, 1});
        CHECK(m.sq_half_distance == Catch::Approx(0.5));
        CHECK(m.s1 == 0.0);  // lexicographically smallest minimiser
        CHECK(m.s2 == 0.0);
    }
    SECTION("intersecting segments") {
        const SegmentPairMin m = segment_segment_min(Vec{-1, -1}, Vec{1, 1},
                                                     Vec{-1, 1}, Vec{1, -1});
        CHECK(m.sq_half_distance == Catch::Approx(0.0).margin(1e-15));
    }
    SECTION("random skew segments match a dense grid") {
        std::mt19937_64 rng(23);
        std::uniform_real_distribution<double> u(-2, 2);
        for (int t = 0; t < 12; ++t) {
            Vec a0(3), a1(3), b0(3), b1(3);
            for (auto* v : {&a0, &a1, &b0, &b1})
                for (auto& x : *v) x = u(rng);
            const SegmentPairMin m = segment_segment_min(a0, a1, b0, b1);
            const double grid =
                oracles::grid_segment_segment_min(a0, a1, b0, b1, 1000);
            CHECK(m.sq_half_distance <= grid + 1e-12);
            CHECK(m.sq_half_distance == Catch::Approx(grid).margin(1e-8));
        }
    }
    SECTION("swap and reversal invariance, and the endpoint upper bound") {
        std::mt19937_64 rng(29);
        std::uniform_real_distribution<double> u(-2, 2);
        for (int t = 0; t < 40; ++t) {
            Vec a0(4), a1(4), b0(4), b1(4);
            for (auto* v : {&a0, &a1, &b0, &b1})
                for (auto& x : *v) x = u(rng);
            const double base =
                segment_segment_min(a0, a1, b0, b1).sq_half_distance;
            CHECK(segment_segment_min(b0, b1, a0, a1).sq_half_distance == base);
            CHECK(segment_segment_min(a1, a0, b0, b1).sq_half_distance == base);
            CHECK(segment_segment_min(a0, a1, b1, b0).sq_half_distance == base);
            CHECK(base <= 0.5 * sq_distance(a0, b0) + 1e-15);
        }
    }
    SECTION("returned minimiser attains the value") {
        std::mt19937_64 rng(31);
        std::uniform_real_distribution<double> u(-2, 2);
        for (int t = 0; t < 40; ++t) {
            Vec a0(3), a1(3), b0(3), b1(3);
            for (auto* v : {&a0, &a1, &b0, &b1})
                for (auto& x : *v) x = u(rng);
            const SegmentPairMin m = segment_segment_min(a0, a1, b0, b1);
            double d2 = 0;
            for (int k = 0; k < 3; ++k) {
                const double pa =
                    a0[size_t(k)] + m.s1 * (a1[size_t(k)] - a0[size_t(k)]);
                const double pb =
                    b0[size_t(k)] + m.s2 * (b1[size_t(k)] - b0[size_t(k)]);
                d2 += (pa - pb) * (pa - pb);
            }
            CHECK(0.5 * d2 == Catch::Approx(m.sq_half_distance).margin(1e-12));
            CHECK(m.s1 >= 0.0);
            CHECK(m.s1 <= 1.0);
            CHECK(m.s2 >= 0.0);
            CHECK(m.s2 <= 1.0);
        }
    }
}

TEST_CASE("Cayley-Menger squared volumes") {
    CHECK(cayley_menger_sq_volume({Vec{0, 0}, Vec{3, 0}}) == 9.0);
    CHECK(cayley_menger_sq_volume({Vec{0, 0}, Vec{1, 0}, Vec{0, 1}}) ==
          Catch::Approx(0.25));

    SECTION("regular 3-simplex of side 1 against the Gram determinant") {
        // Vertices of a unit regular tetrahedron.
        const double s = 1.0 / std::sqrt(2.0);
        std::vector<Vec> pts = {Vec{1, 1, 1}, Vec{1, -1, -1}, Vec{-1, 1, -1},
                                Vec{-1, -1, 1}};
        for (auto& p : pts)
            for (auto& x : p) x *= 0.5 * s;  // side length 1
        // Gram-matrix oracle: Vol^2 = det(G) / (k!)^2 with G_ij = <v_i, v_j>.
        std::vector<Vec> edge(3, Vec(3));
        for (int i = 0; i < 3; ++i)
            for (int k = 0; k < 3; ++k)
                edge[size_t(i)][size_t(k)] =
                    pts[size_t(i) + 1][size_t(k)] - pts[0][size_t(k)];
        double g[3][3];
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                g[i][j] = 0;
                for (int k = 0; k < 3; ++k)
                    g[i][j] += edge[size_t(i)][size_t(k)] * edge[size_t(j)][size_t(k)];
            }
        const double detg = g[0][0] * (g[1][1] * g[2][2] - g[1][2] * g[2][1]) -
                            g[0][1] * (g[1][0] * g[2][2] - g[1][2] * g[2][0]) +
                            g[0][2] * (g[1][0] * g[2][1] - g[1][1] * g[2][0]);
        const double gram = detg / 36.0;
        const double cm = cayley_menger_sq_volume(pts);
        CHECK(cm == Catch::Approx(gram).epsilon(1e-12));
        CHECK(cm == Catch::Approx(1.0 / 72.0).epsilon(1e-12));
    }

    SECTION("degenerate configurations clamp to zero") {
        CHECK(cayley_menger_sq_volume({Vec{0, 0}, Vec{1, 0}, Vec{2, 0}}) == 0.0);
    }

    SECTION("errors") {
        CHECK_THROWS(cayley_menger_sq_volume({Vec{0, 0}}));
        CHECK_THROWS(cayley_menger_sq_volume(
            {Vec{0, 0}, Vec{1, 0}, Vec{0, 1}, Vec{1, 1}}));  // k = 3 > d = 2
    }

    SECTION("permutation and isometry invariance") {
        std::mt19937_64 rng(37);
        std::uniform_real_distribution<double> u(-1, 1);
        for (int t = 0; t < 20; ++t) {
            std::vector<Vec> pts(4, Vec(5));
            for (auto& p : pts)
                for (auto& x : p) x = u(rng);
            const double base = cayley_menger_sq_volume(pts);
            std::vector<Vec> perm = {pts[2], pts[0], pts[3], pts[1]};
            CHECK(cayley_menger_sq_volume(perm) ==
                  Catch::Approx(base).epsilon(1e-9).margin(1e-15));
            const std::vector<Vec> moved = oracles::random_rigid_motion(rng, pts);
            CHECK(cayley_menger_sq_volume(moved) ==
                  Catch::Approx(base).epsilon(1e-9).margin(1e-12));
        }
    }
}
