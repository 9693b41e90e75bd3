#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "maxlab/grid.hpp"

namespace maxlab {

// Fixed-size bitset over the finest cells; exact set algebra for the
// disjointness checks on level-set pieces.
class CellMask {
public:
    CellMask() = default;
    explicit CellMask(std::int64_t cells) : bits_((std::size_t(cells) + 63) / 64, 0), size_(cells) {}

    void set(std::int64_t i) { bits_[std::size_t(i >> 6)] |= (std::uint64_t(1) << (i & 63)); }
    bool test(std::int64_t i) const {
        return (bits_[std::size_t(i >> 6)] >> (i & 63)) & 1;
    }
    std::int64_t count() const;
    bool intersects(const CellMask& other) const;
    std::int64_t size() const { return size_; }

private:
    std::vector<std::uint64_t> bits_;
    std::int64_t size_ = 0;
};

// sup over standard-grid cubes inside the unit cube (levels 0..L) of the
// plain / sigma-weighted average of |f|; one root-to-leaf sweep.
GridFunction dyadic_maximal(const GridFunction& f);
GridFunction weighted_dyadic_maximal(const GridFunction& f, const Weight& sigma);

// |Q|^{alpha/n - m} * prod_i mass(|f_i|, Q); shared by the sweeps, the
// stopping-cube search and the test oracles so candidate values agree
// bit for bit.
double fractional_value(std::span<const GridFunction> fs_abs, const ExponentConfig& cfg,
                        const DyadicCube& q);
// Same functional on the side-2 cube [-1/2, 3/2)^n that dominates every
// cube of side >= 2.
double canonical_probe_value(std::span<const GridFunction> fs_abs, const ExponentConfig& cfg);

// Multilinear fractional maximal function over one shifted grid,
// levels -1..L plus the canonical side-2 probe.
GridFunction multilinear_fractional_dyadic(std::span<const GridFunction> fs,
                                           const ExponentConfig& cfg, const Shift& beta);

// lower = cell-wise max over the 2^n shifted grids;
// upper = 6^{nm-alpha} * sum over the shifted grids.
std::pair<GridFunction, GridFunction> multilinear_fractional_approx(
    std::span<const GridFunction> fs, const ExponentConfig& cfg);

// sup over unit-subtree cubes of prod_i m_{sigma_i}(|f_i|, Q).
GridFunction multilinear_weighted_maximal(std::span<const GridFunction> fs,
                                          std::span<const Weight> sigmas);

// gamma = 1 / (1 - (2^{nm-alpha}/a)^{1/(m-alpha/n)}); requires a > 2^{nm-alpha}.
double packing_gamma(const ExponentConfig& cfg, double a);
double default_cz_base(const ExponentConfig& cfg);  // 2^{nm-alpha+1}
double int_pow(double a, int k);                    // deterministic a^k

struct StoppingCube {
    DyadicCube cube;
    double value = 0.0;       // |Q|^{alpha/n-m} prod_i int_Q |f_i| sigma_i
    CellMask e_mask;          // cells of Q whose maximal value lies in (a^k, a^{k+1}]
    std::int64_t e_cells = 0;
    // True when the cube's parent in the full grid fails the threshold, so the
    // value bracket (a^k, 2^{nm-alpha} a^k] and the packing estimate apply.
    // False only for the unit cube at the lowest band, where the grid is
    // truncated below its side-2 parent.
    bool bracket_exact = true;
};

struct CZLevel {
    int k = 0;
    double threshold = 0.0;   // a^k
    std::vector<StoppingCube> cubes;
};

// Level-set stopping-cube decomposition of the standard-grid multilinear
// fractional maximal function of (sigma_i f_i). Levels k run over the
// nonempty bands (a^k, a^{k+1}] of the maximal function; stopping cubes are
// the maximal unit-subtree cubes with functional value above a^k.
struct CZDecomposition {
    int n = 1;
    int L = 0;
    double base = 0.0;
    double gamma = 0.0;
    GridFunction maximal;     // the banded maximal function
    std::vector<CZLevel> levels;

    bool empty() const { return levels.empty(); }
    std::int64_t cube_count() const;
};

CZDecomposition cz_decomposition(std::span<const GridFunction> fs,
                                 std::span<const Weight> sigmas,
                                 const ExponentConfig& cfg, double a);

}  // namespace maxlab
