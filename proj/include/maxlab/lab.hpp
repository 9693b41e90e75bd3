#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "maxlab/carleson.hpp"
#include "maxlab/constants.hpp"
#include "maxlab/grid.hpp"
#include "maxlab/maximal.hpp"
#include "maxlab/paraproduct.hpp"
#include "maxlab/rng.hpp"

namespace maxlab {

enum class WeightFamily { Constant, TwoCell, PowerLike, MartingaleRandom, Checkerboard };

std::string to_string(WeightFamily f);
WeightFamily weight_family_from_string(const std::string& s);

struct WeightSpec {
    WeightFamily family = WeightFamily::Constant;
    double value = 1.0;                   // constant level / two-cell / checkerboard contrast
    double exponent = 1.0;                // power-like exponent (> -n)
    double lo = 0.5, hi = 2.0;            // martingale factor range
    std::array<double, 3> center{0, 0, 0};  // power-like center
};

// "constant:1", "two_cell:4", "power_like:-0.5", "martingale:0.5,2", "checkerboard:4"
WeightSpec parse_weight_spec(const std::string& text);

Weight generate_weight(const WeightSpec& spec, std::uint64_t seed, int n, int L);

// one of the five families with parameters drawn from the stream
Weight random_mixed_weight(Rng& rng, int n, int L, int selector);

// Reference enumeration over all cubes with corners on the 2^{-L} lattice and
// sides j*2^{-L} <= 2 meeting the unit cube; masses of lattice cubes are exact.
GridFunction lattice_cube_maximal(std::span<const GridFunction> fs, const ExponentConfig& cfg);

// max over generated tuples (indicator tuples for every unit-subtree cube,
// weight-adapted tuples sigma_i^{p_i'-1} chi_Q, random cell vectors, mixed
// indicators) of || M_{d,alpha}(sigma_1 f_1, ..., sigma_m f_m) ||_{q,omega}
// divided by prod_i ||f_i||_{p_i, sigma_i}; deterministic given the seed.
NormEstimate operator_norm_estimate(std::span<const Weight> sigmas, const Weight& omega,
                                    const ExponentConfig& cfg, int random_trials,
                                    std::uint64_t seed);

enum class TheoremId {
    SawyerLinear,
    PropSuff,
    RhExt,
    EqualWeights,
    AinfCor,
    LiSun,
    CarlesonEq,
    MultiCarleson,
    Paraproduct,
    GridCover,
    Sandwich,
    Packing,
    MainBounds,
    Chain,
    AinfPack,
    HytPerez,
    Buckley,
};

std::string to_string(TheoremId id);
TheoremId theorem_from_string(const std::string& s);
std::vector<TheoremId> all_theorems();

struct ExperimentConfig {
    TheoremId theorem = TheoremId::GridCover;
    int n = 1;
    int L = 4;
    int m = 1;
    std::vector<double> p_list{2.0};
    double q = 2.0;
    double alpha = 0.0;
    int trials = 25;
    int norm_trials = 16;  // random tuples per norm estimate
    std::uint64_t seed = 0;
    double slack = 1e-9;
    std::optional<double> base;  // stopping base; default 2^{nm-alpha+1}
    int jobs = 1;

    ExponentConfig exponents() const { return ExponentConfig(n, m, p_list, q, alpha); }
    double stopping_base() const;
};

// Per-theorem defaults for exponents, arity and trial counts.
ExperimentConfig default_config(TheoremId id);

struct TrialResult {
    int index = 0;
    std::string descriptor;
    double lhs = 0.0;
    double rhs = 0.0;
    double ratio = 0.0;  // lhs / rhs, the quantity that must stay <= 1
    bool pass = false;
};

struct VerificationReport {
    std::string theorem;
    ExperimentConfig config;
    double c_tracked = 0.0;           // 0 when not applicable
    std::string c_tracked_formula;
    std::vector<TrialResult> trials;
    double max_ratio = 0.0;
    std::string argmax;
    bool pass = false;
    double wall_ms = 0.0;  // reported on stderr, never serialized
};

VerificationReport verify_theorem(const ExperimentConfig& config);

std::string report_to_json(const VerificationReport& report);
std::string report_to_csv(const VerificationReport& report);

}  // namespace maxlab
