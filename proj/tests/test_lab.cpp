#include "doctest.h"

#include "maxlab/lab.hpp"

#include <algorithm>
#include <cmath>

#include "helpers.hpp"

using namespace maxlab;

TEST_CASE("weight generators produce the documented families") {
    WeightSpec c;
    c.family = WeightFamily::Constant;
    c.value = 1.0;
    Weight one = generate_weight(c, 0, 1, 3);
    for (std::int64_t i = 0; i < one.cell_count(); ++i) CHECK(one.value(i) == 1.0);

    Weight tc = generate_weight(parse_weight_spec("two_cell:4"), 0, 1, 3);
    for (std::int64_t i = 0; i < 4; ++i) CHECK(tc.value(i) == 1.0);
    for (std::int64_t i = 4; i < 8; ++i) CHECK(tc.value(i) == 4.0);

    // martingale factors in [1/2, 2] keep values inside [2^-L, 2^L]
    Weight mart = generate_weight(parse_weight_spec("martingale:0.5,2"), 7, 1, 5);
    for (std::int64_t i = 0; i < mart.cell_count(); ++i) {
        CHECK(mart.value(i) >= std::ldexp(1.0, -5));
        CHECK(mart.value(i) <= std::ldexp(1.0, 5));
    }

    Weight cb = generate_weight(parse_weight_spec("checkerboard:3"), 0, 1, 2);
    CHECK(cb.value(0) == 1.0);
    CHECK(cb.value(1) == 3.0);
    CHECK(cb.value(2) == 1.0);

    Weight pw = generate_weight(parse_weight_spec("power_like:-0.5"), 0, 1, 3);
    CHECK(pw.value(0) > pw.value(7));  // decays away from the origin

    CHECK_THROWS_AS(generate_weight(parse_weight_spec("power_like:-1.5"), 0, 1, 3),
                    std::invalid_argument);
    CHECK_THROWS_AS(generate_weight(parse_weight_spec("constant:0"), 0, 1, 3),
                    std::invalid_argument);
    CHECK_THROWS_AS(parse_weight_spec("mystery:1"), std::invalid_argument);
}

TEST_CASE("same seed reproduces the same weight") {
    WeightSpec spec = parse_weight_spec("martingale:0.5,2");
    Weight a = generate_weight(spec, 123, 2, 3);
    Weight b = generate_weight(spec, 123, 2, 3);
    Weight c = generate_weight(spec, 124, 2, 3);
    bool different = false;
    for (std::int64_t i = 0; i < a.cell_count(); ++i) {
        CHECK(a.value(i) == b.value(i));
        different = different || (a.value(i) != c.value(i));
    }
    CHECK(different);
}

TEST_CASE("norm estimate for the trivial configuration sits in [1, p']") {
    std::vector<Weight> sig{Weight::constant(1, 3, 1.0)};
    Weight omega = Weight::constant(1, 3, 1.0);
    ExponentConfig cfg(1, 1, {2.0}, 2.0, 0.0);
    NormEstimate est = operator_norm_estimate(sig, omega, cfg, 8, 0);
    CHECK(est.value >= 1.0 - 1e-12);  // the all-ones indicator achieves 1
    CHECK(est.value <= 2.0 + 1e-12);  // p' bound for the maximal operator
}

TEST_CASE("norm estimate dominates every indicator trial") {
    testutil::TestRng trng(171);
    std::vector<Weight> sig{testutil::random_weight(1, 3, trng)};
    Weight omega = testutil::random_weight(1, 3, trng);
    ExponentConfig cfg(1, 1, {2.0}, 2.0, 0.0);
    NormEstimate est = operator_norm_estimate(sig, omega, cfg, 4, 1);
    TreeLayout layout(1, 3);
    for (int k = 0; k <= 3; ++k)
        for (std::int64_t f = 0; f < layout.level_size(k); ++f) {
            GridFunction chi = GridFunction::indicator(1, 3, layout.cube_at(k, f));
            std::vector<GridFunction> gs{chi.cellwise_product(sig[0])};
            double num = lp_norm(multilinear_fractional_dyadic(gs, cfg, kNoShift), omega, 2.0);
            double den = lp_norm(chi, sig[0], 2.0);
            CHECK(num / den <= est.value * (1 + 1e-12));
        }
}

TEST_CASE("every verifier passes on a small smoke configuration") {
    for (TheoremId id : all_theorems()) {
        ExperimentConfig cfg = default_config(id);
        cfg.trials = 4;
        cfg.norm_trials = 6;
        cfg.L = std::min(cfg.L, 4);
        cfg.seed = 2;
        VerificationReport rep = verify_theorem(cfg);
        INFO(to_string(id), ": ", rep.argmax, " ratio ", rep.max_ratio);
        CHECK(rep.pass);
        CHECK(rep.trials.size() >= std::size_t(cfg.trials));
    }
}

TEST_CASE("reports are deterministic functions of config and seed") {
    ExperimentConfig cfg = default_config(TheoremId::CarlesonEq);
    cfg.trials = 6;
    cfg.seed = 11;
    std::string a = report_to_json(verify_theorem(cfg));
    std::string b = report_to_json(verify_theorem(cfg));
    CHECK(a == b);

    cfg.jobs = 4;  // parallel trials merge deterministically
    std::string c = report_to_json(verify_theorem(cfg));
    CHECK(a == c);

    cfg.jobs = 1;
    cfg.seed = 12;
    std::string d = report_to_json(verify_theorem(cfg));
    CHECK(a != d);
}

TEST_CASE("csv reports carry one row per sub-check") {
    ExperimentConfig cfg = default_config(TheoremId::GridCover);
    cfg.trials = 5;
    VerificationReport rep = verify_theorem(cfg);
    std::string csv = report_to_csv(rep);
    CHECK(csv.find("theorem,trial,lhs,rhs,ratio,pass") == 0);
    std::size_t rows = std::size_t(std::count(csv.begin(), csv.end(), '\n'));
    CHECK(rows == rep.trials.size() + 1);
}

TEST_CASE("incompatible configurations are rejected with a field name") {
    ExperimentConfig cfg = default_config(TheoremId::LiSun);
    cfg.q = 1.5;  // below max p_i
    CHECK_THROWS_WITH_AS(verify_theorem(cfg), doctest::Contains("config field q"),
                         std::invalid_argument);

    ExperimentConfig bad = default_config(TheoremId::SawyerLinear);
    bad.m = 2;
    bad.p_list = {2.0, 2.0};
    CHECK_THROWS_WITH_AS(verify_theorem(bad), doctest::Contains("config field m"),
                         std::invalid_argument);

    ExperimentConfig deep = default_config(TheoremId::GridCover);
    deep.L = 40;
    CHECK_THROWS_WITH_AS(verify_theorem(deep), doctest::Contains("config field L"),
                         std::invalid_argument);
}

TEST_CASE("lattice reference agrees with the independent test-side enumeration") {
    testutil::TestRng rng(173);
    ExponentConfig cfg(1, 2, {2.0, 2.0}, 2.0, 0.5);
    std::vector<GridFunction> fs{testutil::random_function(1, 4, rng),
                                 testutil::random_function(1, 4, rng)};
    GridFunction a = lattice_cube_maximal(fs, cfg);
    GridFunction b = testutil::lattice_cube_oracle(fs, cfg);
    for (std::int64_t i = 0; i < a.cell_count(); ++i) CHECK(a.value(i) == b.value(i));
}
