#include "doctest.h"

#include "maxlab/paraproduct.hpp"

#include <cmath>

#include "helpers.hpp"

using namespace maxlab;
using testutil::TestRng;

TEST_CASE("zero symbol, single-coefficient symbol") {
    HaarSymbol zero(4);
    GridFunction b = GridFunction::constant(1, 4, 1.0);
    GridFunction out = paraproduct_apply(zero, b);
    for (std::int64_t c = 0; c < out.cell_count(); ++c) CHECK(out.value(c) == 0.0);
    CHECK(paraproduct_carleson(zero, 2.0) == 0.0);

    HaarSymbol phi(3);
    phi.set(0, 0, 1.0);
    GridFunction img = paraproduct_apply(phi, GridFunction::constant(1, 3, 1.0));
    // the image is the Haar function on [0,1): -1 left, +1 right
    for (std::int64_t c = 0; c < 4; ++c) CHECK(img.value(c) == doctest::Approx(-1.0));
    for (std::int64_t c = 4; c < 8; ++c) CHECK(img.value(c) == doctest::Approx(1.0));
    Weight one = Weight::constant(1, 3, 1.0);
    CHECK(lp_norm(img, one, 2.0) == doctest::Approx(1.0).epsilon(1e-15));

    for (double p : {1.0, 1.5, 2.0})
        CHECK(paraproduct_carleson(phi, p) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("application matches a direct expansion") {
    TestRng rng(131);
    HaarSymbol phi(4);
    for (int k = 0; k < 4; ++k)
        for (std::int64_t f = 0; f < (std::int64_t(1) << k); ++f)
            if (rng.uniform() < 0.5) phi.set(k, f, rng.uniform(-1.0, 1.0));
    GridFunction b = testutil::random_function(1, 4, rng);

    std::vector<double> direct(16, 0.0);
    for (int k = 0; k < 4; ++k)
        for (std::int64_t f = 0; f < (std::int64_t(1) << k); ++f) {
            double coeff = phi.at(k, f);
            if (coeff == 0.0) continue;
            DyadicCube q;
            q.dim = 1;
            q.level = k;
            q.index[0] = f;
            double mean = average(b, q);
            std::int64_t span = std::int64_t(1) << (4 - k);
            for (std::int64_t c = f * span; c < (f + 1) * span; ++c) {
                double h = (c < f * span + span / 2 ? -1.0 : 1.0) * std::pow(2.0, 0.5 * k);
                direct[std::size_t(c)] += coeff * mean * h;
            }
        }
    GridFunction out = paraproduct_apply(phi, b);
    for (std::int64_t c = 0; c < 16; ++c)
        CHECK(out.value(c) == doctest::Approx(direct[std::size_t(c)]).epsilon(1e-12));
}

TEST_CASE("image norm is the weighted coefficient sum by orthonormality") {
    TestRng rng(137);
    HaarSymbol phi(5);
    for (int k = 0; k < 5; ++k)
        for (std::int64_t f = 0; f < (std::int64_t(1) << k); ++f)
            if (rng.uniform() < 0.4) phi.set(k, f, rng.uniform(-2.0, 2.0));
    GridFunction b = testutil::random_function(1, 5, rng);
    Weight one = Weight::constant(1, 5, 1.0);
    double norm2 = lp_norm(paraproduct_apply(phi, b), one, 2.0);
    double parseval = 0.0;
    for (const auto& [node, coeff] : phi.entries()) {
        DyadicCube q = phi.layout().cube_of_node(node);
        double mean = average(b, q);
        parseval += coeff * coeff * mean * mean;
    }
    CHECK(norm2 == doctest::Approx(std::sqrt(parseval)).epsilon(1e-10));
}

TEST_CASE("norm estimate sits between the two-sided coefficient bounds") {
    TestRng rng(139);
    for (int trial = 0; trial < 6; ++trial) {
        HaarSymbol phi(5);
        for (int k = 0; k < 5; ++k)
            for (std::int64_t f = 0; f < (std::int64_t(1) << k); ++f)
                if (rng.uniform() < 0.5) phi.set(k, f, rng.uniform(-1.5, 1.5));
        for (double p : {1.0, 1.25, 2.0}) {
            double a = paraproduct_carleson(phi, p);
            double est = paraproduct_norm_estimate(phi, p, 40, 7).value;
            double pc = (p == 1.0) ? std::numeric_limits<double>::infinity()
                                   : conjugate_exponent(p);
            CHECK(est >= std::sqrt(a) * (1 - 1e-9));
            if (p > 1.0)
                CHECK(est <= pc * std::sqrt(2.0 * a / p) * (1 + 1e-9));
        }
    }
}

TEST_CASE("norm estimate is monotone in the number of trials") {
    TestRng rng(149);
    HaarSymbol phi(4);
    phi.set(0, 0, 0.8);
    phi.set(1, 1, -0.3);
    phi.set(3, 5, 1.1);
    double prev = 0.0;
    for (int trials : {0, 5, 20, 60}) {
        double est = paraproduct_norm_estimate(phi, 1.5, trials, 42).value;
        CHECK(est >= prev);
        prev = est;
    }
}

TEST_CASE("symbol validation and serialization") {
    HaarSymbol phi(3);
    CHECK_THROWS_AS(phi.set(3, 0, 1.0), std::invalid_argument);  // level L unresolvable
    CHECK_THROWS_AS(phi.set(-1, 0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(phi.set(1, 2, 1.0), std::invalid_argument);
    phi.set(1, 1, 0.25);
    phi.set(2, 3, -0.5);
    HaarSymbol back = haar_from_json(haar_to_json(phi), 3);
    CHECK(back.at(1, 1) == 0.25);
    CHECK(back.at(2, 3) == -0.5);

    GridFunction b2(2, 2, std::vector<double>(16, 1.0));
    CHECK_THROWS_AS(paraproduct_apply(phi, b2), std::invalid_argument);
    CHECK_THROWS_AS(paraproduct_carleson(phi, 2.5), std::invalid_argument);
    CHECK_THROWS_AS(paraproduct_norm_estimate(phi, 0.5, 1), std::invalid_argument);
}
