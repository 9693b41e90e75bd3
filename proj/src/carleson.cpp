#include "maxlab/carleson.hpp"

#include <cmath>
#include <stdexcept>

#include "json.hpp"

namespace maxlab {

namespace {

std::int64_t node_of(const TreeLayout& layout, const DyadicCube& q) {
    if (q.is_shifted() || q.level < 0 || q.level > layout.L)
        throw std::invalid_argument("CarlesonSequence: cube outside the unit subtree");
    std::int64_t cells = std::int64_t(1) << q.level;
    for (int j = 0; j < q.dim; ++j)
        if (q.index[j] < 0 || q.index[j] >= cells)
            throw std::invalid_argument("CarlesonSequence: cube outside the unit cube");
    return layout.node_id(q.level, q.index);
}

}  // namespace

void CarlesonSequence::set(const DyadicCube& q, double lambda) {
    if (lambda < 0.0) throw std::invalid_argument("CarlesonSequence: negative entry");
    entries_[node_of(layout_, q)] = lambda;
}

void CarlesonSequence::add(const DyadicCube& q, double lambda) {
    if (lambda < 0.0) throw std::invalid_argument("CarlesonSequence: negative entry");
    entries_[node_of(layout_, q)] += lambda;
}

double CarlesonSequence::at(const DyadicCube& q) const {
    auto it = entries_.find(node_of(layout_, q));
    return it == entries_.end() ? 0.0 : it->second;
}

CarlesonConstantResult carleson_constant(const CarlesonSequence& lambda, const Weight& sigma,
                                         double alpha) {
    if (alpha < 1.0) throw std::invalid_argument("carleson_constant: alpha must be >= 1");
    const TreeLayout& layout = lambda.layout();
    const int n = layout.n, L = layout.L;

    // nested sums S(R) = lambda_R + sum over children, bottom-up
    std::vector<double> nested(std::size_t(layout.nodes()), 0.0);
    for (const auto& [node, value] : lambda.entries()) nested[std::size_t(node)] = value;
    for (int k = L - 1; k >= 0; --k) {
        std::int64_t side = std::int64_t(1) << k;
        std::int64_t child_side = side * 2;
        for (std::int64_t f = 0; f < layout.level_size(k); ++f) {
            std::array<std::int64_t, kMaxDim> m{0, 0, 0};
            std::int64_t rem = f;
            for (int j = n - 1; j >= 0; --j) {
                m[j] = rem % side;
                rem /= side;
            }
            double acc = nested[std::size_t(layout.level_offset[k] + f)];
            for (int t = 0; t < (1 << n); ++t) {
                std::int64_t cf = 0;
                for (int j = 0; j < n; ++j)
                    cf = cf * child_side + 2 * m[j] + ((t >> (n - 1 - j)) & 1);
                acc += nested[std::size_t(layout.level_offset[k + 1] + cf)];
            }
            nested[std::size_t(layout.level_offset[k] + f)] = acc;
        }
    }

    CarlesonConstantResult best;
    bool first = true;
    for (int k = 0; k <= L; ++k) {
        for (std::int64_t f = 0; f < layout.level_size(k); ++f) {
            double ratio = nested[std::size_t(layout.level_offset[k] + f)] /
                           std::pow(sigma.tree().node(k, f), alpha);
            if (first || ratio > best.value) {
                best.value = ratio;
                best.argmax = layout.cube_at(k, f);
                first = false;
            }
        }
    }
    return best;
}

double embedding_sum(const CarlesonSequence& lambda, const Weight& sigma,
                     const GridFunction& f, double p, double alpha) {
    GridFunction fs = f.cellwise_product(sigma);
    const TreeLayout& layout = lambda.layout();
    double acc = 0.0;
    for (const auto& [node, value] : lambda.entries()) {
        DyadicCube q = layout.cube_of_node(node);
        double m = fs.tree().node(q.level, layout.flat(q.level, q.index)) /
                   sigma.tree().node(q.level, layout.flat(q.level, q.index));
        acc += value * std::pow(std::fabs(m), p * alpha);
    }
    return acc;
}

double multilinear_embedding_sum(const CarlesonSequence& lambda,
                                 std::span<const Weight> sigmas,
                                 std::span<const GridFunction> fs, const ExponentConfig& cfg,
                                 double alpha) {
    if (sigmas.size() != fs.size() || std::int64_t(fs.size()) != cfg.arity())
        throw std::invalid_argument("multilinear_embedding_sum: arity mismatch");
    std::vector<GridFunction> prods;
    for (std::size_t i = 0; i < fs.size(); ++i)
        prods.push_back(fs[i].cellwise_product(sigmas[i]));
    const TreeLayout& layout = lambda.layout();
    double acc = 0.0;
    for (const auto& [node, value] : lambda.entries()) {
        DyadicCube q = layout.cube_of_node(node);
        std::int64_t flat = layout.flat(q.level, q.index);
        double prod = 1.0;
        for (std::size_t i = 0; i < fs.size(); ++i)
            prod *= std::fabs(prods[i].tree().node(q.level, flat) /
                              sigmas[i].tree().node(q.level, flat));
        acc += value * std::pow(prod, cfg.p() * alpha);
    }
    return acc;
}

double holder_embedding_sum(const CarlesonSequence& lambda, const Weight& sigma,
                            std::span<const GridFunction> fs, std::span<const double> q_list,
                            std::span<const double> p_list) {
    if (fs.size() != q_list.size() || fs.size() != p_list.size() || fs.empty())
        throw std::invalid_argument("holder_embedding_sum: length mismatch");
    double alpha = 0.0;
    for (std::size_t j = 0; j < fs.size(); ++j) {
        if (!(q_list[j] > 0.0) || !(p_list[j] >= 1.0))
            throw std::invalid_argument("holder_embedding_sum: bad exponents");
        alpha += q_list[j] / p_list[j];
    }
    if (alpha < 1.0)
        throw std::invalid_argument("holder_embedding_sum: sum of q_j/p_j must be >= 1");

    std::vector<GridFunction> prods;
    for (const auto& f : fs) prods.push_back(f.cellwise_product(sigma));
    const TreeLayout& layout = lambda.layout();
    double acc = 0.0;
    for (const auto& [node, value] : lambda.entries()) {
        DyadicCube q = layout.cube_of_node(node);
        std::int64_t flat = layout.flat(q.level, q.index);
        double term = value;
        for (std::size_t j = 0; j < fs.size(); ++j) {
            double m = prods[j].tree().node(q.level, flat) / sigma.tree().node(q.level, flat);
            term *= std::pow(std::fabs(m), q_list[j]);
        }
        acc += term;
    }
    return acc;
}

CarlesonSequence sequence_from_cz(const CZDecomposition& cz, std::span<const Weight> sigmas,
                                  const Weight& omega, const ExponentConfig& cfg) {
    if (std::int64_t(sigmas.size()) != cfg.arity())
        throw std::invalid_argument("sequence_from_cz: arity mismatch");
    CarlesonSequence seq(cz.n, cz.L);
    double cellvol = omega.cell_volume();
    for (const auto& level : cz.levels) {
        for (const auto& sc : level.cubes) {
            double omega_e = 0.0;
            for (std::int64_t c = 0; c < omega.cell_count(); ++c)
                if (sc.e_mask.test(c)) omega_e += omega.value(c) * cellvol;
            double factor = std::pow(sc.cube.volume(), cfg.alpha() / (cfg.dim() * cfg.arity()) - 1.0);
            double prod = 1.0;
            for (const auto& s : sigmas) prod *= s.mass(sc.cube) * factor;
            seq.add(sc.cube, omega_e * std::pow(prod, cfg.q()));
        }
    }
    return seq;
}

std::string carleson_to_json(const CarlesonSequence& seq) {
    nlohmann::json arr = nlohmann::json::array();
    const TreeLayout& layout = seq.layout();
    for (const auto& [node, value] : seq.entries()) {
        DyadicCube q = layout.cube_of_node(node);
        nlohmann::json item;
        item["level"] = q.level;
        item["index"] = std::vector<std::int64_t>(q.index.begin(), q.index.begin() + q.dim);
        item["lambda"] = value;
        arr.push_back(item);
    }
    return arr.dump();
}

CarlesonSequence carleson_from_json(const std::string& text, int n, int L) {
    nlohmann::json arr = nlohmann::json::parse(text);
    CarlesonSequence seq(n, L);
    for (const auto& item : arr) {
        DyadicCube q;
        q.dim = n;
        q.level = item.at("level").get<int>();
        const auto& idx = item.at("index");
        if (idx.is_array()) {
            int j = 0;
            for (const auto& v : idx) q.index[j++] = v.get<std::int64_t>();
        } else {
            q.index[0] = idx.get<std::int64_t>();
        }
        seq.add(q, item.at("lambda").get<double>());
    }
    return seq;
}

}  // namespace maxlab
