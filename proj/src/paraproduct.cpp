#include "maxlab/paraproduct.hpp"

#include <cmath>
#include <stdexcept>

#include "json.hpp"
#include "maxlab/rng.hpp"

namespace maxlab {

void HaarSymbol::set(int level, std::int64_t index, double coeff) {
    if (level < 0 || level >= L_)
        throw std::invalid_argument("HaarSymbol: level must lie in [0, L-1]");
    if (index < 0 || index >= (std::int64_t(1) << level))
        throw std::invalid_argument("HaarSymbol: index out of range");
    std::array<std::int64_t, kMaxDim> m{index, 0, 0};
    entries_[layout_.node_id(level, m)] = coeff;
}

double HaarSymbol::at(int level, std::int64_t index) const {
    std::array<std::int64_t, kMaxDim> m{index, 0, 0};
    auto it = entries_.find(layout_.node_id(level, m));
    return it == entries_.end() ? 0.0 : it->second;
}

GridFunction paraproduct_apply(const HaarSymbol& phi, const GridFunction& b) {
    if (b.dim() != 1) throw std::invalid_argument("paraproduct_apply: one-dimensional only");
    if (b.resolution() != phi.resolution())
        throw std::invalid_argument("paraproduct_apply: resolution mismatch");
    const int L = b.resolution();
    std::vector<double> out(std::size_t(b.cell_count()), 0.0);
    for (const auto& [node, coeff] : phi.entries()) {
        DyadicCube q = phi.layout().cube_of_node(node);
        double mean = b.tree().node(q.level, q.index[0]) / q.volume();
        double haar = std::pow(2.0, 0.5 * q.level);  // |I|^{-1/2}
        std::int64_t span = std::int64_t(1) << (L - q.level);
        std::int64_t lo = q.index[0] * span;
        for (std::int64_t c = lo; c < lo + span / 2; ++c)
            out[std::size_t(c)] -= coeff * mean * haar;
        for (std::int64_t c = lo + span / 2; c < lo + span; ++c)
            out[std::size_t(c)] += coeff * mean * haar;
    }
    return GridFunction(1, L, std::move(out));
}

double paraproduct_carleson(const HaarSymbol& phi, double p) {
    if (p < 1.0 || p > 2.0)
        throw std::invalid_argument("paraproduct_carleson: p must lie in [1,2]");
    const TreeLayout& layout = phi.layout();
    const int L = layout.L;
    std::vector<double> nested(std::size_t(layout.nodes()), 0.0);
    for (const auto& [node, coeff] : phi.entries())
        nested[std::size_t(node)] = coeff * coeff;
    for (int k = L - 1; k >= 0; --k)
        for (std::int64_t f = 0; f < layout.level_size(k); ++f)
            nested[std::size_t(layout.level_offset[k] + f)] +=
                nested[std::size_t(layout.level_offset[k + 1] + 2 * f)] +
                nested[std::size_t(layout.level_offset[k + 1] + 2 * f + 1)];
    double best = 0.0;
    for (int k = 0; k <= L; ++k)
        for (std::int64_t f = 0; f < layout.level_size(k); ++f) {
            double vol = std::ldexp(1.0, -k);
            best = std::max(best, nested[std::size_t(layout.level_offset[k] + f)] /
                                      std::pow(vol, 2.0 / p));
        }
    return best;
}

NormEstimate paraproduct_norm_estimate(const HaarSymbol& phi, double p, int trials,
                                       std::uint64_t seed) {
    if (p < 1.0 || p > 2.0)
        throw std::invalid_argument("paraproduct_norm_estimate: p must lie in [1,2]");
    const int L = phi.resolution();
    Weight one = Weight::constant(1, L, 1.0);
    NormEstimate best;

    auto try_candidate = [&](const GridFunction& b, const std::string& name) {
        double denom = lp_norm(b, one, p);
        if (!(denom > 0.0)) return;
        double ratio = lp_norm(paraproduct_apply(phi, b), one, 2.0) / denom;
        if (ratio > best.value) {
            best.value = ratio;
            best.argmax = name;
        }
    };

    TreeLayout layout(1, L);
    for (int k = 0; k <= L; ++k)
        for (std::int64_t f = 0; f < layout.level_size(k); ++f) {
            DyadicCube q = layout.cube_at(k, f);
            try_candidate(GridFunction::indicator(1, L, q), "indicator " + q.to_string());
        }
    for (int k = 0; k < L; ++k)
        for (std::int64_t f = 0; f < (std::int64_t(1) << k); ++f) {
            std::vector<double> v(std::size_t(1) << L, 0.0);
            double haar = std::pow(2.0, 0.5 * k);
            std::int64_t span = std::int64_t(1) << (L - k);
            for (std::int64_t c = f * span; c < f * span + span / 2; ++c) v[std::size_t(c)] = -haar;
            for (std::int64_t c = f * span + span / 2; c < (f + 1) * span; ++c)
                v[std::size_t(c)] = haar;
            try_candidate(GridFunction(1, L, std::move(v)),
                          "haar atom level " + std::to_string(k) + " index " + std::to_string(f));
        }
    Rng rng(seed);
    for (int t = 0; t < trials; ++t) {
        std::vector<double> v(std::size_t(1) << L);
        for (auto& x : v) x = rng.uniform(0.0, 1.0);
        try_candidate(GridFunction(1, L, std::move(v)), "random trial " + std::to_string(t));
    }
    return best;
}

std::string haar_to_json(const HaarSymbol& phi) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& [node, coeff] : phi.entries()) {
        DyadicCube q = phi.layout().cube_of_node(node);
        nlohmann::json item;
        item["level"] = q.level;
        item["index"] = q.index[0];
        item["coeff"] = coeff;
        arr.push_back(item);
    }
    return arr.dump();
}

HaarSymbol haar_from_json(const std::string& text, int L) {
    nlohmann::json arr = nlohmann::json::parse(text);
    HaarSymbol phi(L);
    for (const auto& item : arr)
        phi.set(item.at("level").get<int>(), item.at("index").get<std::int64_t>(),
                item.at("coeff").get<double>());
    return phi;
}

}  // namespace maxlab
