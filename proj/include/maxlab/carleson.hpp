#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "maxlab/constants.hpp"
#include "maxlab/grid.hpp"
#include "maxlab/maximal.hpp"

namespace maxlab {

// Sparse nonnegative map over the unit-subtree cubes, keyed by tree node id.
class CarlesonSequence {
public:
    CarlesonSequence(int n, int L) : layout_(n, L) {}

    int dim() const { return layout_.n; }
    int resolution() const { return layout_.L; }
    const TreeLayout& layout() const { return layout_; }

    void set(const DyadicCube& q, double lambda);
    void add(const DyadicCube& q, double lambda);
    double at(const DyadicCube& q) const;
    std::size_t support_size() const { return entries_.size(); }

    // sorted by node id: deterministic iteration order
    const std::map<std::int64_t, double>& entries() const { return entries_; }

private:
    TreeLayout layout_;
    std::map<std::int64_t, double> entries_;
};

struct CarlesonConstantResult {
    double value = 0.0;
    DyadicCube argmax;
};

// sup over unit-subtree R of ( sum_{Q subseteq R} lambda_Q ) / sigma(R)^alpha,
// computed bottom-up in one tree pass. Requires alpha >= 1.
CarlesonConstantResult carleson_constant(const CarlesonSequence& lambda, const Weight& sigma,
                                         double alpha);

// sum_Q lambda_Q |m_sigma(f,Q)|^{p*alpha} over the sparse support.
double embedding_sum(const CarlesonSequence& lambda, const Weight& sigma,
                     const GridFunction& f, double p, double alpha);

// sum_Q lambda_Q prod_i |m_{sigma_i}(f_i,Q)|^{p*alpha} with p from cfg.
double multilinear_embedding_sum(const CarlesonSequence& lambda,
                                 std::span<const Weight> sigmas,
                                 std::span<const GridFunction> fs, const ExponentConfig& cfg,
                                 double alpha);

// sum_Q lambda_Q prod_j |m_sigma(f_j,Q)|^{q_j}; requires sum q_j/p_j >= 1.
double holder_embedding_sum(const CarlesonSequence& lambda, const Weight& sigma,
                            std::span<const GridFunction> fs, std::span<const double> q_list,
                            std::span<const double> p_list);

// lambda_Q = omega(E(Q)) * ( prod_i sigma_i(Q) / |Q|^{1 - alpha/(nm)} )^q on the
// stopping cubes (summed over repeated appearances), zero elsewhere.
CarlesonSequence sequence_from_cz(const CZDecomposition& cz, std::span<const Weight> sigmas,
                                  const Weight& omega, const ExponentConfig& cfg);

std::string carleson_to_json(const CarlesonSequence& seq);
CarlesonSequence carleson_from_json(const std::string& text, int n, int L);

}  // namespace maxlab
