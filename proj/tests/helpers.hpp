#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "maxlab/grid.hpp"
#include "maxlab/maximal.hpp"

namespace testutil {

using namespace maxlab;

// Deterministic RNG with hand-rolled uniform doubles so results do not
// depend on the standard library's distribution implementations.
struct TestRng {
    std::mt19937_64 eng;
    explicit TestRng(std::uint64_t seed) : eng(seed) {}

    double uniform() { return double(eng() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {  // inclusive
        return lo + std::int64_t(eng() % std::uint64_t(hi - lo + 1));
    }
};

inline std::vector<double> random_positive_cells(int n, int L, TestRng& rng,
                                                 double lo = 0.1, double hi = 4.0) {
    std::vector<double> v(std::size_t(1) << (n * L));
    for (auto& x : v) x = rng.uniform(lo, hi);
    return v;
}

inline GridFunction random_function(int n, int L, TestRng& rng) {
    std::vector<double> v(std::size_t(1) << (n * L));
    for (auto& x : v) x = rng.uniform(0.0, 4.0);
    return GridFunction(n, L, std::move(v));
}

inline Weight random_weight(int n, int L, TestRng& rng) {
    return Weight(n, L, random_positive_cells(n, L, rng));
}

// ---- enumeration oracles (independent loops over the same primitives) -----

inline void oracle_update_cells(std::vector<double>& out, const GridFunction& shape,
                                const DyadicCube& q, double v) {
    CellBox box = inner_cell_box(q, shape.resolution());
    int n = shape.dim();
    if (box.empty(n)) return;
    std::int64_t side = shape.cells_per_side();
    std::array<std::int64_t, kMaxDim> i{};
    for (i[0] = box.lo[0]; i[0] < box.hi[0]; ++i[0])
        for (i[1] = (n > 1 ? box.lo[1] : 0); i[1] < (n > 1 ? box.hi[1] : 1); ++i[1])
            for (i[2] = (n > 2 ? box.lo[2] : 0); i[2] < (n > 2 ? box.hi[2] : 1); ++i[2]) {
                std::int64_t f = 0;
                for (int j = 0; j < n; ++j) f = f * side + i[j];
                out[std::size_t(f)] = std::max(out[std::size_t(f)], v);
            }
}

inline GridFunction oracle_dyadic_maximal(const GridFunction& f) {
    GridFunction a = f.cellwise_abs();
    std::vector<double> out(std::size_t(f.cell_count()), 0.0);
    for_each_cube(f.dim(), kNoShift, 0, f.resolution(), [&](const DyadicCube& q) {
        oracle_update_cells(out, f, q, a.mass(q) / q.volume());
    });
    return GridFunction(f.dim(), f.resolution(), std::move(out));
}

inline GridFunction oracle_weighted_dyadic_maximal(const GridFunction& f, const Weight& sigma) {
    GridFunction fs = f.cellwise_abs().cellwise_product(sigma);
    std::vector<double> out(std::size_t(f.cell_count()), 0.0);
    for_each_cube(f.dim(), kNoShift, 0, f.resolution(), [&](const DyadicCube& q) {
        oracle_update_cells(out, f, q, fs.mass(q) / sigma.mass(q));
    });
    return GridFunction(f.dim(), f.resolution(), std::move(out));
}

inline GridFunction oracle_multilinear_fractional(std::span<const GridFunction> fs,
                                                  const ExponentConfig& cfg, const Shift& beta) {
    std::vector<GridFunction> abs;
    for (const auto& f : fs) abs.push_back(f.cellwise_abs());
    std::span<const GridFunction> as(abs);
    double base = canonical_probe_value(as, cfg);
    std::vector<double> out(std::size_t(fs[0].cell_count()), base);
    for_each_cube(cfg.dim(), beta, -1, fs[0].resolution(), [&](const DyadicCube& q) {
        oracle_update_cells(out, fs[0], q, fractional_value(as, cfg, q));
    });
    return GridFunction(fs[0].dim(), fs[0].resolution(), std::move(out));
}

inline GridFunction oracle_multilinear_weighted(std::span<const GridFunction> fs,
                                                std::span<const Weight> sigmas) {
    std::vector<GridFunction> prods;
    for (std::size_t i = 0; i < fs.size(); ++i)
        prods.push_back(fs[i].cellwise_abs().cellwise_product(sigmas[i]));
    std::vector<double> out(std::size_t(fs[0].cell_count()), 0.0);
    for_each_cube(fs[0].dim(), kNoShift, 0, fs[0].resolution(), [&](const DyadicCube& q) {
        double acc = 1.0;
        for (std::size_t i = 0; i < fs.size(); ++i)
            acc *= prods[i].mass(q) / sigmas[i].mass(q);
        oracle_update_cells(out, fs[0], q, acc);
    });
    return GridFunction(fs[0].dim(), fs[0].resolution(), std::move(out));
}

// All cubes with corners on the 2^{-L} lattice and sides j*2^{-L}, j <= 2^{L+1},
// meeting the unit cube; masses are exact because lattice cubes are cell-aligned.
inline GridFunction lattice_cube_oracle(std::span<const GridFunction> fs,
                                        const ExponentConfig& cfg) {
    const int n = cfg.dim(), L = fs[0].resolution();
    std::vector<GridFunction> abs;
    for (const auto& f : fs) abs.push_back(f.cellwise_abs());
    const std::int64_t side = std::int64_t(1) << L;
    std::vector<double> out(std::size_t(fs[0].cell_count()), 0.0);

    std::array<std::int64_t, kMaxDim> c{};
    for (std::int64_t j = 1; j <= 2 * side; ++j) {
        double vol = std::pow(double(j) * std::ldexp(1.0, -L), n);
        double pre = std::pow(vol, cfg.prefactor_exponent());
        auto visit = [&](std::array<std::int64_t, kMaxDim> corner) {
            CellBox box;
            for (int d = 0; d < n; ++d) {
                box.lo[d] = std::max<std::int64_t>(0, corner[d]);
                box.hi[d] = std::min<std::int64_t>(side, corner[d] + j);
                if (box.lo[d] >= box.hi[d]) return;
            }
            double v = pre;
            for (const auto& a : abs) v *= a.mass_box(box);
            // cells covered by the cube itself (not just the clipped box)
            CellBox cover;
            for (int d = 0; d < n; ++d) {
                cover.lo[d] = std::max<std::int64_t>(0, corner[d]);
                cover.hi[d] = std::min<std::int64_t>(side, corner[d] + j);
            }
            std::array<std::int64_t, kMaxDim> i{};
            for (i[0] = cover.lo[0]; i[0] < cover.hi[0]; ++i[0])
                for (i[1] = (n > 1 ? cover.lo[1] : 0); i[1] < (n > 1 ? cover.hi[1] : 1); ++i[1])
                    for (i[2] = (n > 2 ? cover.lo[2] : 0); i[2] < (n > 2 ? cover.hi[2] : 1);
                         ++i[2]) {
                        std::int64_t f = 0;
                        for (int d = 0; d < n; ++d) f = f * side + i[d];
                        out[std::size_t(f)] = std::max(out[std::size_t(f)], v);
                    }
        };
        for (c[0] = -j + 1; c[0] < side; ++c[0]) {
            if (n == 1) {
                visit(c);
                continue;
            }
            for (c[1] = -j + 1; c[1] < side; ++c[1]) {
                if (n == 2) {
                    visit(c);
                    continue;
                }
                for (c[2] = -j + 1; c[2] < side; ++c[2]) visit(c);
            }
        }
    }
    return GridFunction(n, L, std::move(out));
}

}  // namespace testutil
