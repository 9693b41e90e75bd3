#include "doctest.h"

#include "maxlab/dyadic.hpp"

#include "helpers.hpp"

using namespace maxlab;

namespace {

ArbitraryCube interval(Rational lo, Rational len) {
    ArbitraryCube q;
    q.dim = 1;
    q.corner[0] = lo;
    q.side = len;
    return q;
}

DyadicCube cube1d(int level, std::int64_t m, bool shifted = false) {
    DyadicCube q;
    q.dim = 1;
    q.level = level;
    q.index[0] = m;
    q.shift[0] = shifted;
    return q;
}

}  // namespace

TEST_CASE("children bisect the standard unit interval and square") {
    auto kids = children(cube1d(0, 0), 5);
    REQUIRE(kids.size() == 2);
    CHECK(kids[0].corner(0) == Rational(0));
    CHECK(kids[1].corner(0) == Rational(1, 2));
    CHECK(kids[0].side() == Rational(1, 2));

    DyadicCube sq;
    sq.dim = 2;
    auto quads = children(sq, 3);
    REQUIRE(quads.size() == 4);
    std::vector<std::pair<Rational, Rational>> corners;
    for (const auto& c : quads) corners.emplace_back(c.corner(0), c.corner(1));
    CHECK(corners[0] == std::make_pair(Rational(0), Rational(0)));
    CHECK(corners[1] == std::make_pair(Rational(0), Rational(1, 2)));
    CHECK(corners[2] == std::make_pair(Rational(1, 2), Rational(0)));
    CHECK(corners[3] == std::make_pair(Rational(1, 2), Rational(1, 2)));

    CHECK_THROWS_AS(children(cube1d(5, 0), 5), std::invalid_argument);
}

TEST_CASE("children of a shifted interval recompute corners from the grid formula") {
    // level-0 shifted interval [1/3, 4/3)
    DyadicCube q = cube1d(0, 0, true);
    CHECK(q.corner(0) == Rational(1, 3));
    auto kids = children(q, 5);
    REQUIRE(kids.size() == 2);
    CHECK(kids[0].corner(0) == Rational(1, 3));
    CHECK(kids[1].corner(0) == Rational(5, 6));
    CHECK(kids[0].side() == Rational(1, 2));
    CHECK(kids[1].corner(0) == kids[0].corner(0) + kids[0].side());
    CHECK(kids[1].corner(0) + kids[1].side() == q.corner(0) + q.side());
}

TEST_CASE("parent inverts children and respects containment") {
    CHECK(parent(cube1d(1, 0)) == cube1d(0, 0));
    CHECK(parent(cube1d(1, 1)) == cube1d(0, 0));

    // shifted level-2 interval containing 0.4 has the level-1 ancestor containing it
    std::array<Rational, kMaxDim> pt{Rational(2, 5), Rational(0), Rational(0)};
    DyadicCube q;
    bool found = false;
    for_each_cube(1, Shift{true, false, false}, 2, 2, [&](const DyadicCube& c) {
        if (c.contains(pt)) {
            q = c;
            found = true;
        }
    });
    REQUIRE(found);
    DyadicCube p = parent(q);
    CHECK(p.level == 1);
    CHECK(p.contains(pt));
    CHECK(to_arbitrary(p).contains_cube(to_arbitrary(q)));
}

TEST_CASE("parent/children round trip and unique child containment") {
    testutil::TestRng rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        int n = 1 + int(rng.uniform_int(0, 2));
        DyadicCube q;
        q.dim = n;
        q.level = int(rng.uniform_int(-1, 3));
        for (int j = 0; j < n; ++j) {
            q.index[j] = rng.uniform_int(-2, 4);
            q.shift[j] = rng.uniform() < 0.5;
        }
        auto kids = children(q, 8);
        std::array<Rational, kMaxDim> pt{};
        for (int j = 0; j < n; ++j)
            pt[j] = q.corner(j) + q.side() * Rational(rng.uniform_int(0, 99), 100);
        int containing = 0;
        for (const auto& c : kids) {
            CHECK(parent(c) == q);
            if (c.contains(pt)) ++containing;
        }
        CHECK(containing == 1);
    }
}

TEST_CASE("shifted cover returns dyadic cubes unchanged") {
    auto q = interval(Rational(1, 4), Rational(1, 4));
    DyadicCube cover = shifted_cover(q);
    CHECK(cover.level == 2);
    CHECK_FALSE(cover.is_shifted());
    CHECK(cover.corner(0) == Rational(1, 4));
}

TEST_CASE("shifted cover of [3/8, 5/8) is the shifted interval [1/3, 5/6)") {
    auto q = interval(Rational(3, 8), Rational(1, 4));
    DyadicCube cover = shifted_cover(q);
    CHECK(cover.level == 1);
    CHECK(cover.shift[0]);
    CHECK(cover.corner(0) == Rational(1, 3));
    CHECK(cover.side() == Rational(1, 2));
    CHECK(cover.side() == Rational(2) * q.side);
}

TEST_CASE("random intervals are covered with side ratio at most 6, exactly") {
    testutil::TestRng rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        std::int64_t den = rng.uniform_int(8, 512);
        std::int64_t len = rng.uniform_int(1, den);
        std::int64_t lo = rng.uniform_int(0, den - len);
        auto q = interval(Rational(lo, den), Rational(len, den));
        DyadicCube cover = shifted_cover(q);
        CHECK(to_arbitrary(cover).contains_cube(q));
        CHECK(cover.side() <= Rational(6) * q.side);
    }
}

TEST_CASE("random boxes in higher dimension are covered as well") {
    testutil::TestRng rng(19);
    for (int trial = 0; trial < 100; ++trial) {
        int n = 2 + int(rng.uniform_int(0, 1));
        ArbitraryCube q;
        q.dim = n;
        std::int64_t den = rng.uniform_int(8, 128);
        std::int64_t len = rng.uniform_int(1, den);
        q.side = Rational(len, den);
        for (int j = 0; j < n; ++j)
            q.corner[j] = Rational(rng.uniform_int(0, den - len), den);
        DyadicCube cover = shifted_cover(q);
        CHECK(to_arbitrary(cover).contains_cube(q));
        CHECK(cover.side() <= Rational(6) * q.side);
    }
}

TEST_CASE("cubes reaching past the domain still get covers") {
    // side close to 2, sticking out on the left: needs a side-8 shifted cube
    auto q = interval(Rational(-2, 5), Rational(19, 10));
    DyadicCube cover = shifted_cover(q);
    CHECK(to_arbitrary(cover).contains_cube(q));
    CHECK(cover.side() <= Rational(6) * q.side);
    CHECK_THROWS_AS(shifted_cover(interval(Rational(2), Rational(1, 2))),
                    std::invalid_argument);
    CHECK_THROWS_AS(shifted_cover(interval(Rational(0), Rational(3))),
                    std::invalid_argument);
}

TEST_CASE("enumeration counts per level range") {
    CHECK(enumerate_cubes(1, kNoShift, 0, 2).size() == 7);  // 1 + 2 + 4
    CHECK(enumerate_cubes(2, kNoShift, 0, 1).size() == 5);  // 1 + 4

    auto shifted = enumerate_cubes(1, Shift{true, false, false}, 1, 1);
    REQUIRE(shifted.size() == 3);
    for (std::int64_t m = 0; m < 3; ++m)
        CHECK(shifted[std::size_t(m)].corner(0) == (Rational(m) - Rational(1, 3)) / 2);
}

TEST_CASE("level-k standard cubes partition the unit cube") {
    for (int n = 1; n <= 3; ++n) {
        int kmax = (n == 1) ? 4 : (n == 2 ? 2 : 1);
        for (int k = 0; k <= kmax; ++k) {
            auto cubes = enumerate_cubes(n, kNoShift, k, k);
            CHECK(std::int64_t(cubes.size()) == (std::int64_t(1) << (n * k)));
            Rational vol(0);
            for (const auto& q : cubes) {
                Rational v(1);
                for (int j = 0; j < n; ++j) v *= q.side();
                vol += v;
            }
            CHECK(vol == Rational(1));
            for (std::size_t a = 0; a < cubes.size(); ++a)
                for (std::size_t b = a + 1; b < cubes.size(); ++b) {
                    bool overlap = true;
                    for (int j = 0; j < n; ++j) {
                        if (cubes[a].corner(j) + cubes[a].side() <= cubes[b].corner(j) ||
                            cubes[b].corner(j) + cubes[b].side() <= cubes[a].corner(j))
                            overlap = false;
                    }
                    CHECK_FALSE(overlap);
                }
        }
    }
}

TEST_CASE("side-2 cubes meeting the domain are enumerated once per grid") {
    for (const auto& beta : all_shifts(2)) {
        auto cubes = enumerate_cubes(2, beta, -1, -1);
        CHECK(cubes.size() == 1);
        CHECK(cubes[0].side() == Rational(2));
    }
}
