#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "maxlab/rational.hpp"

namespace maxlab {

inline constexpr int kMaxDim = 3;
// Covers of cubes with side up to 2 may need side-8 grid cubes.
inline constexpr int kMinCubeLevel = -3;

inline int max_resolution(int n) {
    switch (n) {
        case 1: return 12;
        case 2: return 7;
        default: return 5;
    }
}

using Shift = std::array<bool, kMaxDim>;  // per-coordinate: offset 1/3 or 0

inline constexpr Shift kNoShift{false, false, false};

// Cube of a (possibly shifted) dyadic grid. Lower corner is
// 2^{-level} * (index + (-1)^level * shift/3) per coordinate, half-open,
// side 2^{-level}.
struct DyadicCube {
    int dim = 1;
    int level = 0;
    std::array<std::int64_t, kMaxDim> index{0, 0, 0};
    Shift shift{false, false, false};

    Rational side() const { return pow2_rational(-level); }
    double side_double() const { return std::ldexp(1.0, -level); }
    double volume() const { return std::ldexp(1.0, -level * dim); }

    // sign of the shift term: (-1)^level
    int shift_sign() const { return (level % 2 == 0) ? 1 : -1; }

    Rational corner(int j) const {
        Rational base(index[j], 1);
        if (shift[j]) base += Rational(shift_sign(), 3);
        return base * pow2_rational(-level);
    }

    bool is_shifted() const { return shift[0] || shift[1] || shift[2]; }

    bool contains(const std::array<Rational, kMaxDim>& point) const {
        for (int j = 0; j < dim; ++j) {
            Rational low = corner(j);
            if (point[j] < low || point[j] >= low + side()) return false;
        }
        return true;
    }

    // Unit-subtree cubes are the standard-grid cubes inside [0,1)^n.
    bool in_unit_subtree() const {
        if (is_shifted() || level < 0) return false;
        std::int64_t cells = std::int64_t(1) << level;
        for (int j = 0; j < dim; ++j)
            if (index[j] < 0 || index[j] >= cells) return false;
        return true;
    }

    bool operator==(const DyadicCube& other) const {
        if (dim != other.dim || level != other.level) return false;
        for (int j = 0; j < dim; ++j)
            if (index[j] != other.index[j] || shift[j] != other.shift[j]) return false;
        return true;
    }

    std::string to_string() const;
};

// Axis-aligned half-open cube with exact rational corner and side.
struct ArbitraryCube {
    int dim = 1;
    std::array<Rational, kMaxDim> corner{};
    Rational side{1, 1};

    bool contains_cube(const ArbitraryCube& q) const;
    bool intersects_unit_cube() const;
};

ArbitraryCube to_arbitrary(const DyadicCube& q);

// The 2^n cubes of the next level that tile q (same grid).
std::vector<DyadicCube> children(const DyadicCube& q, int max_level);

DyadicCube parent(const DyadicCube& q);

// Smallest shifted-grid cube containing q with side at most 6*q.side.
// Ties: lexicographically smallest shift, then smallest index.
// Requires q to meet [0,1)^n and q.side <= 2.
DyadicCube shifted_cover(const ArbitraryCube& q);

// Every cube of the beta-grid with level in [k0, k1] whose intersection
// with [0,1)^n is nonempty, exactly once, in (level, row-major index) order.
void for_each_cube(int n, const Shift& beta, int k0, int k1,
                   const std::function<void(const DyadicCube&)>& fn);

std::vector<DyadicCube> enumerate_cubes(int n, const Shift& beta, int k0, int k1);

// Cells (finest-level indices, half-open ranges) fully contained in a box.
struct CellBox {
    std::array<std::int64_t, kMaxDim> lo{0, 0, 0};
    std::array<std::int64_t, kMaxDim> hi{0, 0, 0};

    bool empty(int dim) const {
        for (int j = 0; j < dim; ++j)
            if (lo[j] >= hi[j]) return true;
        return false;
    }
    std::int64_t count(int dim) const {
        std::int64_t c = 1;
        for (int j = 0; j < dim; ++j) c *= (hi[j] - lo[j]);
        return c;
    }
};

// Cells of the 2^{-L} grid fully inside cube ∩ [0,1)^n.
CellBox inner_cell_box(const ArbitraryCube& cube, int L);
CellBox inner_cell_box(const DyadicCube& cube, int L);

// All shifts {0,1/3}^n in lexicographic order (0 before 1/3).
std::vector<Shift> all_shifts(int n);

}  // namespace maxlab
