#include "doctest.h"

#include "maxlab/grid.hpp"

#include <cmath>

#include "helpers.hpp"

using namespace maxlab;
using testutil::TestRng;

namespace {

DyadicCube unit_cube(int n) {
    DyadicCube q;
    q.dim = n;
    return q;
}

DyadicCube subtree_cube(int n, int level, std::initializer_list<std::int64_t> idx) {
    DyadicCube q;
    q.dim = n;
    q.level = level;
    int j = 0;
    for (auto m : idx) q.index[j++] = m;
    return q;
}

}  // namespace

TEST_CASE("mass of constants and of cubes beyond the domain") {
    for (int n = 1; n <= 3; ++n) {
        GridFunction one = GridFunction::constant(n, 2, 1.0);
        CHECK(one.mass(unit_cube(n)) == doctest::Approx(1.0).epsilon(1e-15));
        DyadicCube big;
        big.dim = n;
        big.level = -1;
        CHECK(one.mass(big) == doctest::Approx(1.0).epsilon(1e-15));  // zero extension
    }

    GridFunction f(1, 2, {4.0, 0.0, 0.0, 0.0});
    CHECK(f.mass(subtree_cube(1, 1, {0})) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("mass over shifted cubes counts exactly the fully covered cells") {
    // [1/3, 5/6) at L=2 fully contains only cell [1/2, 3/4)
    GridFunction f(1, 2, {1.0, 2.0, 4.0, 8.0});
    DyadicCube q;
    q.dim = 1;
    q.level = 1;
    q.index[0] = 1;
    q.shift[0] = true;
    CHECK(q.corner(0) == Rational(1, 3));
    CHECK(f.mass(q) == doctest::Approx(4.0 / 4.0).epsilon(1e-15));
}

TEST_CASE("tree additivity is exact and matches naive summation") {
    TestRng rng(3);
    for (int n = 1; n <= 2; ++n) {
        int L = (n == 1) ? 5 : 3;
        GridFunction f = testutil::random_function(n, L, rng);
        for_each_cube(n, kNoShift, 0, L - 1, [&](const DyadicCube& q) {
            double total = f.mass(q);
            double sum = 0.0;
            for (const auto& c : children(q, L)) sum += f.mass(c);
            CHECK(total == sum);  // bitwise: same association as the tree build
        });
        // naive row-major summation agrees to 1e-12 relative
        for_each_cube(n, kNoShift, 0, L, [&](const DyadicCube& q) {
            CellBox box = inner_cell_box(q, L);
            double naive = 0.0;
            std::int64_t side = f.cells_per_side();
            std::array<std::int64_t, kMaxDim> i{};
            for (i[0] = box.lo[0]; i[0] < box.hi[0]; ++i[0])
                for (i[1] = (n > 1 ? box.lo[1] : 0); i[1] < (n > 1 ? box.hi[1] : 1); ++i[1]) {
                    std::int64_t flat = 0;
                    for (int j = 0; j < n; ++j) flat = flat * side + i[j];
                    naive += f.value(flat) * f.cell_volume();
                }
            CHECK(f.mass(q) == doctest::Approx(naive).epsilon(1e-12));
        });
    }
}

TEST_CASE("averages, weighted averages and their exact agreement for unit weight") {
    GridFunction f(1, 1, {2.0, 6.0});
    Weight sigma(1, 1, {1.0, 3.0});
    DyadicCube root = unit_cube(1);

    CHECK(average(f, root) == doctest::Approx(4.0).epsilon(1e-15));
    CHECK(weighted_average(f, sigma, root) == doctest::Approx(5.0).epsilon(1e-15));

    TestRng rng(5);
    GridFunction g = testutil::random_function(1, 4, rng);
    Weight one = Weight::constant(1, 4, 1.0);
    for_each_cube(1, kNoShift, 0, 4, [&](const DyadicCube& q) {
        CHECK(weighted_average(g, one, q) == average(g, q));  // exact
    });

    GridFunction c = GridFunction::constant(2, 2, 3.25);
    Weight w = Weight::constant(2, 2, 1.0);
    for_each_cube(2, kNoShift, 0, 2, [&](const DyadicCube& q) {
        CHECK(average(c, q) == doctest::Approx(3.25).epsilon(1e-15));
        CHECK(weighted_average(c, w, q) == doctest::Approx(3.25).epsilon(1e-15));
    });

    DyadicCube outside;
    outside.dim = 1;
    outside.level = 1;
    outside.index[0] = 3;  // [3/2, 2): no weight mass
    CHECK_THROWS_AS(weighted_average(f, sigma, outside), std::invalid_argument);
}

TEST_CASE("exponential mean of the inverse weight") {
    Weight one = Weight::constant(1, 3, 1.0);
    Weight c = Weight::constant(1, 3, 2.5);
    Weight two(1, 1, {1.0, 4.0});
    DyadicCube root = unit_cube(1);

    CHECK(exp_mean_inverse(one, root) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(exp_mean_inverse(c, root) == doctest::Approx(1.0 / 2.5).epsilon(1e-14));
    CHECK(exp_mean_inverse(two, root) == doctest::Approx(0.5).epsilon(1e-14));

    DyadicCube big;
    big.dim = 1;
    big.level = -1;
    CHECK_THROWS_AS(exp_mean_inverse(one, big), std::invalid_argument);
}

TEST_CASE("weighted Lp norms") {
    Weight one = Weight::constant(1, 1, 1.0);
    CHECK(lp_norm(GridFunction::constant(1, 1, 1.0), one, 3.5) ==
          doctest::Approx(1.0).epsilon(1e-15));

    GridFunction half_indicator(1, 1, {1.0, 0.0});
    CHECK(lp_norm(half_indicator, one, 2.0) ==
          doctest::Approx(std::sqrt(0.5)).epsilon(1e-15));

    GridFunction f(1, 1, {2.0, 6.0});
    Weight sigma(1, 1, {1.0, 3.0});
    CHECK(lp_norm(f, sigma, 2.0) == doctest::Approx(std::sqrt(56.0)).epsilon(1e-15));
}

TEST_CASE("norm of an indicator recovers the weight mass") {
    TestRng rng(9);
    Weight sigma = testutil::random_weight(1, 4, rng);
    for_each_cube(1, kNoShift, 0, 4, [&](const DyadicCube& q) {
        GridFunction chi = GridFunction::indicator(1, 4, q);
        double p = 1.0 + 3.0 * rng.uniform();
        CHECK(std::pow(lp_norm(chi, sigma, p), p) ==
              doctest::Approx(sigma.mass(q)).epsilon(1e-12));
    });
}

TEST_CASE("weights must be strictly positive") {
    CHECK_THROWS_AS(Weight(1, 1, {1.0, 0.0}), std::invalid_argument);
    CHECK_THROWS_AS(Weight(1, 1, {1.0, -2.0}), std::invalid_argument);
    CHECK_NOTHROW(Weight(1, 1, {0.5, 2.0}));
}

TEST_CASE("exponent configurations validate their relations") {
    ExponentConfig cfg(1, 2, {2.0, 2.0}, 2.0, 0.5);
    CHECK(cfg.p() == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(cfg.conjugate(0) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK_NOTHROW(ExponentConfig(1, 2, {2.0, 2.0}, 2.0, 0.5, 1.0));
    CHECK_THROWS_AS(ExponentConfig(1, 2, {2.0, 2.0}, 2.0, 0.5, 1.5),
                    std::invalid_argument);
    CHECK_THROWS_AS(ExponentConfig(1, 1, {1.0}, 2.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(ExponentConfig(1, 1, {2.0}, 2.0, 1.5), std::invalid_argument);
    CHECK_THROWS_AS(ExponentConfig(1, 1, {2.0}, 0.0, 0.0), std::invalid_argument);
}

TEST_CASE("json round trip is bit exact") {
    TestRng rng(13);
    std::vector<double> v(16);
    for (auto& x : v) x = rng.uniform(0.0, 1000.0) * std::pow(10.0, rng.uniform(-12, 3));
    v[0] = 0.1;
    v[1] = 1.0 / 3.0;
    GridFunction f(1, 4, v);
    GridFunction g = grid_from_json(grid_to_json(f));
    REQUIRE(g.cell_count() == f.cell_count());
    for (std::int64_t i = 0; i < f.cell_count(); ++i)
        CHECK(g.value(i) == f.value(i));  // bitwise
    CHECK(grid_to_json(g) == grid_to_json(f));
}

TEST_CASE("csv round trip") {
    GridFunction f(2, 1, {0.1, 2.0, 1.0 / 3.0, 4.0});
    GridFunction g = grid_from_csv(grid_to_csv(f));
    CHECK(g.dim() == 2);
    CHECK(g.resolution() == 1);
    for (std::int64_t i = 0; i < f.cell_count(); ++i) CHECK(g.value(i) == f.value(i));
}
