#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "maxlab/dyadic.hpp"

namespace maxlab {

// Node numbering for the standard-grid tree on [0,1)^n, levels 0..L,
// row-major within each level. Node 0 is the unit cube.
struct TreeLayout {
    int n = 1;
    int L = 0;
    std::vector<std::int64_t> level_offset;  // size L+2, last = node count

    TreeLayout() = default;
    TreeLayout(int n_, int L_);

    std::int64_t nodes() const { return level_offset.back(); }
    std::int64_t level_size(int k) const { return level_offset[k + 1] - level_offset[k]; }

    std::int64_t flat(int k, const std::array<std::int64_t, kMaxDim>& m) const {
        std::int64_t s = std::int64_t(1) << k, f = 0;
        for (int j = 0; j < n; ++j) f = f * s + m[j];
        return f;
    }
    std::int64_t node_id(int k, const std::array<std::int64_t, kMaxDim>& m) const {
        return level_offset[k] + flat(k, m);
    }
    DyadicCube cube_at(int k, std::int64_t flat_index) const;
    DyadicCube cube_of_node(std::int64_t node) const;
};

// Per-cube aggregates over the unit-cube tree: each node holds the sum of
// its cells' leaf values, parents accumulated child-by-child in row-major
// order so that tree additivity is exact.
class SumTree {
public:
    SumTree() = default;
    SumTree(int n, int L, const std::vector<double>& leaf_values);

    double node(int level, std::int64_t flat) const {
        return nodes_[layout_.level_offset[level] + flat];
    }
    double root() const { return nodes_.empty() ? 0.0 : nodes_[0]; }
    const TreeLayout& layout() const { return layout_; }

private:
    TreeLayout layout_;
    std::vector<double> nodes_;
};

// Deterministic pairwise summation of fn(cell) over a cell box.
double pairwise_box_sum(const CellBox& box, int dim, int L,
                        const std::function<double(std::int64_t)>& cell_value);

// Piecewise-constant function on the 2^{nL} finest cells of [0,1)^n,
// extended by zero outside. Values may be signed; operators take the
// modulus where they need it. The per-cube mass tree is built eagerly.
class GridFunction {
public:
    GridFunction(int n, int L, std::vector<double> values);
    static GridFunction constant(int n, int L, double c);
    static GridFunction indicator(int n, int L, const DyadicCube& q);

    int dim() const { return n_; }
    int resolution() const { return L_; }
    std::int64_t cell_count() const { return std::int64_t(values_.size()); }
    std::int64_t cells_per_side() const { return std::int64_t(1) << L_; }

    double value(std::int64_t cell) const { return values_[std::size_t(cell)]; }
    const std::vector<double>& values() const { return values_; }

    std::int64_t cell_flat(const std::array<std::int64_t, kMaxDim>& idx) const;
    double cell_center(std::int64_t cell, int axis) const;
    double cell_volume() const { return std::ldexp(1.0, -n_ * L_); }

    // Integral over Q of this function: sum of value*2^{-nL} over the cells
    // fully contained in Q ∩ [0,1)^n. Standard-grid cubes inside the unit
    // cube read the tree; everything else sums its exact cell range.
    double mass(const DyadicCube& q) const;
    double mass_box(const CellBox& box) const;
    double total_mass() const { return tree_.root(); }

    const SumTree& tree() const { return tree_; }
    const TreeLayout& layout() const { return tree_.layout(); }

    bool nonnegative() const;
    bool strictly_positive() const;

    GridFunction cellwise_abs() const;
    GridFunction cellwise_product(const GridFunction& other) const;
    GridFunction cellwise_pow(double e) const;
    GridFunction cellwise_scale(double c) const;

private:
    int n_;
    int L_;
    std::vector<double> values_;
    SumTree tree_;
};

// Strictly positive grid function.
class Weight : public GridFunction {
public:
    explicit Weight(GridFunction g);
    Weight(int n, int L, std::vector<double> values);
    static Weight constant(int n, int L, double c);
};

double mass(const GridFunction& g, const DyadicCube& q);
double average(const GridFunction& f, const DyadicCube& q);
double weighted_average(const GridFunction& f, const Weight& sigma, const DyadicCube& q);
// exp( (1/|Q|) ∫_Q log sigma^{-1} ); Q must lie inside [0,1)^n.
double exp_mean_inverse(const Weight& sigma, const DyadicCube& q);
double lp_norm(const GridFunction& f, const Weight& sigma, double p);

// Exponent tuple (n, m, p_1..p_m, p, q, alpha) with 1/p = sum 1/p_i.
class ExponentConfig {
public:
    ExponentConfig(int n, int m, std::vector<double> p_list, double q, double alpha,
                   std::optional<double> p = std::nullopt);

    int dim() const { return n_; }
    int arity() const { return m_; }
    const std::vector<double>& p_list() const { return p_; }
    double p_i(int i) const { return p_[std::size_t(i)]; }
    double conjugate(int i) const { return p_[std::size_t(i)] / (p_[std::size_t(i)] - 1.0); }
    double p() const { return p_total_; }
    double q() const { return q_; }
    double alpha() const { return alpha_; }
    // exponent of |Q| in the multilinear fractional cube functional
    double prefactor_exponent() const { return alpha_ / n_ - m_; }

private:
    int n_;
    int m_;
    std::vector<double> p_;
    double p_total_;
    double q_;
    double alpha_;
};

double conjugate_exponent(double p);

// ---- serialization --------------------------------------------------------
std::string grid_to_json(const GridFunction& g);
GridFunction grid_from_json(const std::string& text);
std::string grid_to_csv(const GridFunction& g);
GridFunction grid_from_csv(const std::string& text);

std::string format_double(double v);  // shortest round-trip decimal

}  // namespace maxlab
