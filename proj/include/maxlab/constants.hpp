#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "maxlab/grid.hpp"
#include "maxlab/maximal.hpp"

namespace maxlab {

// One-weight / two-weight cube characteristics. All suprema range over the
// standard-grid cubes inside the unit cube, levels 0..L.
enum class LinearConstantKind {
    Ap,               // sup avg(w) * avg(w^{1-p'})^{p-1}
    JointAp,          // sup avg(omega) * avg(sigma)^{p-1}
    Apq,              // sup (avg w^q)^{1/q} * (avg w^{-p'})^{1/p'}
    Bp,               // sup avg(omega) * avg(sigma)^p * exp(avg log sigma^{-1})
    AinfFujiiWilson,  // sup (1/w(Q)) * int_Q M_d(w chi_Q)
    AinfHruscev,      // sup avg(w) * exp(avg log w^{-1})
};

enum class MultiConstantKind {
    APvec,  // sup (avg nu)^{1/p} * prod (avg sigma_i^{1-p_i'})^{1/p_i'}
    APq,    // sup omega(Q)^{p/q} prod sigma_i(Q)^{p/p_i'} / |Q|^{p(m-a/n)}
    BPq,    // APq-type with full sigma_i(Q)^p masses and entropy factors
    WPinf,  // sup int_Q prod M_d(sigma_i chi_Q)^{p/p_i} / nu(Q)
    RHP,    // sup prod sigma_i(Q)^{p/p_i} / nu(Q)
};

enum class SawyerKind {
    Linear,  // m = 1, normalizer sigma(Q)^{1/p}
    LiSun,   // normalizer prod sigma_i(Q)^{1/p_i}
    Nu,      // normalizer nu(Q)^{1/p}
};

struct ConstantResult {
    double value = 0.0;
    DyadicCube argmax;  // first maximizing cube in canonical order

    operator double() const { return value; }
};

std::string to_string(LinearConstantKind k);
std::string to_string(MultiConstantKind k);
std::string to_string(SawyerKind k);

ConstantResult ap_constant(const Weight& w, double p);
ConstantResult joint_ap_constant(const Weight& omega, const Weight& sigma, double p);
ConstantResult apq_constant(const Weight& w, double p, double q);
ConstantResult bp_constant(const Weight& omega, const Weight& sigma, double p);
ConstantResult ainf_fw_constant(const Weight& w);
ConstantResult ainf_hr_constant(const Weight& w);

ConstantResult linear_constant(LinearConstantKind kind, const Weight& w,
                               const std::optional<Weight>& second, double p,
                               std::optional<double> q = std::nullopt);

// nu = prod sigma_i^{p/p_i}, built cell by cell.
Weight derived_weight(std::span<const Weight> sigmas, const ExponentConfig& cfg);

ConstantResult ap_vec_constant(std::span<const Weight> sigmas, const ExponentConfig& cfg);
ConstantResult apq_vec_constant(std::span<const Weight> sigmas, const Weight& omega,
                                const ExponentConfig& cfg);
ConstantResult bpq_vec_constant(std::span<const Weight> sigmas, const Weight& omega,
                                const ExponentConfig& cfg);
ConstantResult wpinf_constant(std::span<const Weight> sigmas, const ExponentConfig& cfg);
ConstantResult rhp_constant(std::span<const Weight> sigmas, const ExponentConfig& cfg);

ConstantResult multilinear_constant(MultiConstantKind kind, std::span<const Weight> sigmas,
                                    const std::optional<Weight>& omega,
                                    const ExponentConfig& cfg);

// sup over test cubes Q of
//   ( int_Q ( M_{d,alpha}(sigma_1 chi_Q, ..., sigma_m chi_Q) )^q omega )^{1/q}
// divided by the kind's normalizer. The inner maximal function is the
// standard-grid one with the weights masked to Q.
ConstantResult sawyer_testing_constant(SawyerKind kind, std::span<const Weight> sigmas,
                                       const Weight& omega, const ExponentConfig& cfg);

}  // namespace maxlab
