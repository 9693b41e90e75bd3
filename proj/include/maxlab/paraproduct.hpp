#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "maxlab/grid.hpp"

namespace maxlab {

// Finite Haar expansion of a one-dimensional symbol: interval I -> <phi, h_I>,
// supported on levels 0..L-1 so that h_I = |I|^{-1/2} (chi_{I+} - chi_{I-})
// is resolvable on the grid.
class HaarSymbol {
public:
    explicit HaarSymbol(int L) : L_(L), layout_(1, L) {}

    int resolution() const { return L_; }
    const TreeLayout& layout() const { return layout_; }

    void set(int level, std::int64_t index, double coeff);
    double at(int level, std::int64_t index) const;
    const std::map<std::int64_t, double>& entries() const { return entries_; }

private:
    int L_;
    TreeLayout layout_;
    std::map<std::int64_t, double> entries_;
};

// Pi_phi b = sum_I <phi,h_I> m_I(b) h_I, evaluated cell-wise.
GridFunction paraproduct_apply(const HaarSymbol& phi, const GridFunction& b);

// sup over dyadic intervals J of |J|^{-2/p} sum_{I subseteq J} <phi,h_I>^2.
double paraproduct_carleson(const HaarSymbol& phi, double p);

struct NormEstimate {
    double value = 0.0;
    std::string argmax;
};

// max over generated b (dyadic indicators, Haar atoms, `trials` random
// positive cell vectors) of ||Pi_phi b||_{L^2} / ||b||_{L^p}; a lower bound
// for the operator norm, deterministic given the seed.
NormEstimate paraproduct_norm_estimate(const HaarSymbol& phi, double p, int trials,
                                       std::uint64_t seed = 0);

std::string haar_to_json(const HaarSymbol& phi);
HaarSymbol haar_from_json(const std::string& text, int L);

}  // namespace maxlab
