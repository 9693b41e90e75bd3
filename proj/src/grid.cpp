#include "maxlab/grid.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace maxlab {

TreeLayout::TreeLayout(int n_in, int L_in) : n(n_in), L(L_in) {
    level_offset.resize(std::size_t(L) + 2);
    level_offset[0] = 0;
    for (int k = 0; k <= L; ++k)
        level_offset[std::size_t(k) + 1] =
            level_offset[std::size_t(k)] + (std::int64_t(1) << (n * k));
}

DyadicCube TreeLayout::cube_at(int k, std::int64_t flat_index) const {
    DyadicCube q;
    q.dim = n;
    q.level = k;
    std::int64_t s = std::int64_t(1) << k;
    for (int j = n - 1; j >= 0; --j) {
        q.index[j] = flat_index % s;
        flat_index /= s;
    }
    return q;
}

DyadicCube TreeLayout::cube_of_node(std::int64_t node) const {
    int k = 0;
    while (node >= level_offset[std::size_t(k) + 1]) ++k;
    return cube_at(k, node - level_offset[std::size_t(k)]);
}

SumTree::SumTree(int n, int L, const std::vector<double>& leaf_values)
    : layout_(n, L) {
    if (std::int64_t(leaf_values.size()) != layout_.level_size(L))
        throw std::invalid_argument("SumTree: leaf count mismatch");
    nodes_.resize(std::size_t(layout_.nodes()));
    std::copy(leaf_values.begin(), leaf_values.end(),
              nodes_.begin() + layout_.level_offset[L]);
    for (int k = L - 1; k >= 0; --k) {
        std::int64_t side = std::int64_t(1) << k;
        std::int64_t child_side = side * 2;
        std::array<std::int64_t, kMaxDim> m{0, 0, 0};
        for (std::int64_t f = 0; f < layout_.level_size(k); ++f) {
            std::int64_t rem = f;
            for (int j = n - 1; j >= 0; --j) {
                m[j] = rem % side;
                rem /= side;
            }
            double acc = 0.0;
            for (int t = 0; t < (1 << n); ++t) {
                std::array<std::int64_t, kMaxDim> c{0, 0, 0};
                for (int j = 0; j < n; ++j)
                    c[j] = 2 * m[j] + ((t >> (n - 1 - j)) & 1);
                std::int64_t cf = 0;
                for (int j = 0; j < n; ++j) cf = cf * child_side + c[j];
                acc += nodes_[std::size_t(layout_.level_offset[k + 1] + cf)];
            }
            nodes_[std::size_t(layout_.level_offset[k] + f)] = acc;
        }
    }
}

double pairwise_box_sum(const CellBox& box, int dim, int L,
                        const std::function<double(std::int64_t)>& cell_value) {
    if (box.empty(dim)) return 0.0;
    std::int64_t side = std::int64_t(1) << L;

    std::function<double(CellBox)> rec = [&](CellBox b) -> double {
        std::int64_t cnt = b.count(dim);
        if (cnt <= 16) {
            double acc = 0.0;
            std::array<std::int64_t, kMaxDim> i{b.lo[0], b.lo[1], b.lo[2]};
            for (i[0] = b.lo[0]; i[0] < (dim > 0 ? b.hi[0] : b.lo[0] + 1); ++i[0])
                for (i[1] = b.lo[1]; i[1] < (dim > 1 ? b.hi[1] : b.lo[1] + 1); ++i[1])
                    for (i[2] = b.lo[2]; i[2] < (dim > 2 ? b.hi[2] : b.lo[2] + 1); ++i[2]) {
                        std::int64_t f = 0;
                        for (int j = 0; j < dim; ++j) f = f * side + i[j];
                        acc += cell_value(f);
                    }
            return acc;
        }
        int axis = 0;
        for (int j = 1; j < dim; ++j)
            if (b.hi[j] - b.lo[j] > b.hi[axis] - b.lo[axis]) axis = j;
        CellBox left = b, right = b;
        std::int64_t mid = b.lo[axis] + (b.hi[axis] - b.lo[axis]) / 2;
        left.hi[axis] = mid;
        right.lo[axis] = mid;
        return rec(left) + rec(right);
    };
    CellBox b = box;
    for (int j = dim; j < kMaxDim; ++j) {
        b.lo[j] = 0;
        b.hi[j] = 1;
    }
    return rec(b);
}

GridFunction::GridFunction(int n, int L, std::vector<double> values)
    : n_(n), L_(L), values_(std::move(values)),
      tree_(n, L, [&] {
          if (n < 1 || n > kMaxDim) throw std::invalid_argument("GridFunction: dim must be 1..3");
          if (L < 0 || L > max_resolution(n))
              throw std::invalid_argument("GridFunction: resolution out of range");
          std::int64_t expect = std::int64_t(1) << (n * L);
          if (std::int64_t(values_.size()) != expect)
              throw std::invalid_argument("GridFunction: expected 2^(nL) cell values");
          std::vector<double> leaves(values_.size());
          double vol = std::ldexp(1.0, -n * L);
          for (std::size_t i = 0; i < values_.size(); ++i) leaves[i] = values_[i] * vol;
          return leaves;
      }()) {}

GridFunction GridFunction::constant(int n, int L, double c) {
    return GridFunction(n, L, std::vector<double>(std::size_t(1) << (n * L), c));
}

GridFunction GridFunction::indicator(int n, int L, const DyadicCube& q) {
    std::vector<double> v(std::size_t(1) << (n * L), 0.0);
    CellBox box = inner_cell_box(q, L);
    std::int64_t side = std::int64_t(1) << L;
    std::array<std::int64_t, kMaxDim> i{};
    for (i[0] = box.lo[0]; i[0] < (n > 0 ? box.hi[0] : box.lo[0] + 1); ++i[0])
        for (i[1] = (n > 1 ? box.lo[1] : 0); i[1] < (n > 1 ? box.hi[1] : 1); ++i[1])
            for (i[2] = (n > 2 ? box.lo[2] : 0); i[2] < (n > 2 ? box.hi[2] : 1); ++i[2]) {
                std::int64_t f = 0;
                for (int j = 0; j < n; ++j) f = f * side + i[j];
                v[std::size_t(f)] = 1.0;
            }
    return GridFunction(n, L, std::move(v));
}

std::int64_t GridFunction::cell_flat(const std::array<std::int64_t, kMaxDim>& idx) const {
    std::int64_t f = 0;
    for (int j = 0; j < n_; ++j) f = f * cells_per_side() + idx[j];
    return f;
}

double GridFunction::cell_center(std::int64_t cell, int axis) const {
    std::int64_t side = cells_per_side();
    std::array<std::int64_t, kMaxDim> idx{0, 0, 0};
    for (int j = n_ - 1; j >= 0; --j) {
        idx[j] = cell % side;
        cell /= side;
    }
    return (double(idx[axis]) + 0.5) * std::ldexp(1.0, -L_);
}

double GridFunction::mass(const DyadicCube& q) const {
    if (q.dim != n_) throw std::invalid_argument("mass: dimension mismatch");
    if (!q.is_shifted() && q.level >= 0 && q.level <= L_) {
        std::int64_t cells = std::int64_t(1) << q.level;
        bool inside = true;
        for (int j = 0; j < n_; ++j)
            if (q.index[j] < 0 || q.index[j] >= cells) inside = false;
        if (inside) return tree_.node(q.level, layout().flat(q.level, q.index));
        // standard-grid cube fully outside the unit cube has zero mass;
        // partially overlapping ones cannot occur on this grid
        return 0.0;
    }
    return mass_box(inner_cell_box(q, L_));
}

double GridFunction::mass_box(const CellBox& box) const {
    double vol = cell_volume();
    return pairwise_box_sum(box, n_, L_,
                            [&](std::int64_t f) { return values_[std::size_t(f)] * vol; });
}

bool GridFunction::nonnegative() const {
    return std::all_of(values_.begin(), values_.end(), [](double v) { return v >= 0.0; });
}

bool GridFunction::strictly_positive() const {
    return std::all_of(values_.begin(), values_.end(),
                       [](double v) { return v > 0.0 && std::isfinite(v); });
}

GridFunction GridFunction::cellwise_abs() const {
    std::vector<double> v(values_.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = std::fabs(values_[i]);
    return GridFunction(n_, L_, std::move(v));
}

GridFunction GridFunction::cellwise_product(const GridFunction& other) const {
    if (other.n_ != n_ || other.L_ != L_)
        throw std::invalid_argument("cellwise_product: shape mismatch");
    std::vector<double> v(values_.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = values_[i] * other.values_[i];
    return GridFunction(n_, L_, std::move(v));
}

GridFunction GridFunction::cellwise_pow(double e) const {
    std::vector<double> v(values_.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = std::pow(values_[i], e);
    return GridFunction(n_, L_, std::move(v));
}

GridFunction GridFunction::cellwise_scale(double c) const {
    std::vector<double> v(values_.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = values_[i] * c;
    return GridFunction(n_, L_, std::move(v));
}

Weight::Weight(GridFunction g) : GridFunction(std::move(g)) {
    if (!strictly_positive())
        throw std::invalid_argument("Weight: values must be strictly positive and finite");
}

Weight::Weight(int n, int L, std::vector<double> values)
    : Weight(GridFunction(n, L, std::move(values))) {}

Weight Weight::constant(int n, int L, double c) {
    return Weight(GridFunction::constant(n, L, c));
}

double mass(const GridFunction& g, const DyadicCube& q) { return g.mass(q); }

double average(const GridFunction& f, const DyadicCube& q) {
    return f.mass(q) / q.volume();
}

double weighted_average(const GridFunction& f, const Weight& sigma, const DyadicCube& q) {
    double denom = sigma.mass(q);
    if (denom <= 0.0)
        throw std::invalid_argument("weighted_average: cube carries no weight mass");
    return f.cellwise_product(sigma).mass(q) / denom;
}

double exp_mean_inverse(const Weight& sigma, const DyadicCube& q) {
    ArbitraryCube a = to_arbitrary(q);
    for (int j = 0; j < q.dim; ++j)
        if (a.corner[j] < Rational(0) || a.corner[j] + a.side > Rational(1))
            throw std::invalid_argument("exp_mean_inverse: cube must lie inside [0,1)^n");
    CellBox box = inner_cell_box(q, sigma.resolution());
    double vol = sigma.cell_volume();
    double log_int = pairwise_box_sum(box, sigma.dim(), sigma.resolution(),
                                      [&](std::int64_t f) { return std::log(sigma.value(f)) * vol; });
    return std::exp(-log_int / q.volume());
}

double lp_norm(const GridFunction& f, const Weight& sigma, double p) {
    if (!(p > 0.0)) throw std::invalid_argument("lp_norm: exponent must be positive");
    CellBox box;
    for (int j = 0; j < f.dim(); ++j) {
        box.lo[j] = 0;
        box.hi[j] = f.cells_per_side();
    }
    double vol = f.cell_volume();
    double s = pairwise_box_sum(box, f.dim(), f.resolution(), [&](std::int64_t c) {
        return std::pow(std::fabs(f.value(c)), p) * sigma.value(c) * vol;
    });
    return std::pow(s, 1.0 / p);
}

ExponentConfig::ExponentConfig(int n, int m, std::vector<double> p_list, double q,
                               double alpha, std::optional<double> p)
    : n_(n), m_(m), p_(std::move(p_list)), q_(q), alpha_(alpha) {
    if (n < 1 || n > kMaxDim) throw std::invalid_argument("ExponentConfig: dim must be 1..3");
    if (m < 1 || std::int64_t(p_.size()) != m)
        throw std::invalid_argument("ExponentConfig: need one exponent per entry");
    double inv = 0.0;
    for (double pi : p_) {
        if (!(pi > 1.0) || !std::isfinite(pi))
            throw std::invalid_argument("ExponentConfig: exponents must lie in (1, inf)");
        inv += 1.0 / pi;
    }
    p_total_ = 1.0 / inv;
    if (p) {
        if (std::fabs(1.0 / *p - inv) > 1e-12)
            throw std::invalid_argument("ExponentConfig: 1/p must equal sum of 1/p_i");
        p_total_ = *p;
    }
    if (!(q > 0.0) || !std::isfinite(q))
        throw std::invalid_argument("ExponentConfig: q must be positive");
    if (alpha < 0.0 || alpha >= double(m) * n)
        throw std::invalid_argument("ExponentConfig: alpha must lie in [0, mn)");
}

double conjugate_exponent(double p) { return p / (p - 1.0); }

// ---- serialization ---------------------------------------------------------

std::string format_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

std::string grid_to_json(const GridFunction& g) {
    nlohmann::json j;
    j["n"] = g.dim();
    j["L"] = g.resolution();
    j["values"] = g.values();
    return j.dump();
}

GridFunction grid_from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    return GridFunction(j.at("n").get<int>(), j.at("L").get<int>(),
                        j.at("values").get<std::vector<double>>());
}

std::string grid_to_csv(const GridFunction& g) {
    std::ostringstream os;
    os << g.dim() << "," << g.resolution() << "\n";
    for (double v : g.values()) os << format_double(v) << "\n";
    return os.str();
}

GridFunction grid_from_csv(const std::string& text) {
    std::istringstream is(text);
    std::string header;
    if (!std::getline(is, header)) throw std::invalid_argument("csv: missing header");
    auto comma = header.find(',');
    if (comma == std::string::npos) throw std::invalid_argument("csv: header must be n,L");
    int n = std::stoi(header.substr(0, comma));
    int L = std::stoi(header.substr(comma + 1));
    std::vector<double> values;
    std::string tok;
    while (std::getline(is, tok)) {
        std::istringstream line(tok);
        std::string field;
        while (std::getline(line, field, ',')) {
            if (field.empty()) continue;
            values.push_back(std::stod(field));
        }
    }
    return GridFunction(n, L, std::move(values));
}

}  // namespace maxlab
