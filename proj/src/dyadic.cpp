#include "maxlab/dyadic.hpp"

#include <sstream>
#include <stdexcept>

namespace maxlab {

std::string DyadicCube::to_string() const {
    std::ostringstream os;
    os << "cube(level=" << level << ", m=(";
    for (int j = 0; j < dim; ++j) os << (j ? "," : "") << index[j];
    os << "), beta=(";
    for (int j = 0; j < dim; ++j) os << (j ? "," : "") << (shift[j] ? "1/3" : "0");
    os << "))";
    return os.str();
}

bool ArbitraryCube::contains_cube(const ArbitraryCube& q) const {
    for (int j = 0; j < dim; ++j) {
        if (q.corner[j] < corner[j]) return false;
        if (q.corner[j] + q.side > corner[j] + side) return false;
    }
    return true;
}

bool ArbitraryCube::intersects_unit_cube() const {
    for (int j = 0; j < dim; ++j) {
        if (corner[j] >= Rational(1)) return false;
        if (corner[j] + side <= Rational(0)) return false;
    }
    return true;
}

ArbitraryCube to_arbitrary(const DyadicCube& q) {
    ArbitraryCube a;
    a.dim = q.dim;
    a.side = q.side();
    for (int j = 0; j < q.dim; ++j) a.corner[j] = q.corner(j);
    return a;
}

std::vector<DyadicCube> children(const DyadicCube& q, int max_level) {
    if (q.level >= max_level)
        throw std::invalid_argument("children: level overflow beyond resolution");
    // Corner algebra: index' = 2*index + sign*b + t, t in {0,1}^n,
    // where sign = (-1)^{q.level} and b marks shifted coordinates.
    const int sign = q.shift_sign();
    const int n = q.dim;
    std::vector<DyadicCube> out;
    out.reserve(std::size_t(1) << n);
    for (int t = 0; t < (1 << n); ++t) {
        DyadicCube c = q;
        c.level = q.level + 1;
        for (int j = 0; j < n; ++j) {
            std::int64_t b = q.shift[j] ? 1 : 0;
            std::int64_t bit = (t >> (n - 1 - j)) & 1;
            c.index[j] = 2 * q.index[j] + sign * b + bit;
        }
        out.push_back(c);
    }
    return out;
}

DyadicCube parent(const DyadicCube& q) {
    if (q.level <= kMinCubeLevel)
        throw std::invalid_argument("parent: level underflow");
    const int sign = q.shift_sign();
    DyadicCube p = q;
    p.level = q.level - 1;
    for (int j = 0; j < q.dim; ++j) {
        std::int64_t b = q.shift[j] ? 1 : 0;
        std::int64_t s = q.index[j] + sign * b;
        p.index[j] = (s >= 0) ? s / 2 : (s - 1) / 2;
    }
    return p;
}

std::vector<Shift> all_shifts(int n) {
    std::vector<Shift> out;
    for (int mask = 0; mask < (1 << n); ++mask) {
        Shift s{false, false, false};
        for (int j = 0; j < n; ++j) s[j] = ((mask >> (n - 1 - j)) & 1) != 0;
        out.push_back(s);
    }
    return out;
}

namespace {

// Grid cube of the beta-grid at `level` containing `point` along axis j.
std::int64_t grid_index_at(const Rational& point, int level, bool shifted) {
    // corner = (m + sign*b/3) * 2^{-level} <= point  =>  m = floor(point*2^level - sign*b/3)
    Rational scaled = point * pow2_rational(level);
    if (shifted) {
        int sign = (level % 2 == 0) ? 1 : -1;
        scaled -= Rational(sign, 3);
    }
    return rational_floor(scaled);
}

}  // namespace

DyadicCube shifted_cover(const ArbitraryCube& q) {
    if (!q.intersects_unit_cube())
        throw std::invalid_argument("shifted_cover: cube does not meet [0,1)^n");
    if (q.side <= Rational(0) || q.side > Rational(2))
        throw std::invalid_argument("shifted_cover: side must be in (0, 2]");

    // Candidate sides 2^{-k} run from the smallest power of two >= side
    // up to 6*side; that is at most three levels.
    int k = 0;
    while (pow2_rational(-k) < q.side) --k;
    while (pow2_rational(-(k + 1)) >= q.side) ++k;

    const auto shifts = all_shifts(q.dim);
    for (; pow2_rational(-k) <= Rational(6) * q.side; --k) {
        std::optional<DyadicCube> best;
        for (const auto& beta : shifts) {
            DyadicCube cand;
            cand.dim = q.dim;
            cand.level = k;
            cand.shift = beta;
            for (int j = 0; j < q.dim; ++j)
                cand.index[j] = grid_index_at(q.corner[j], k, beta[j]);
            if (!to_arbitrary(cand).contains_cube(q)) continue;
            if (!best) {
                best = cand;
            } else {
                for (int j = 0; j < q.dim; ++j) {
                    if (cand.index[j] != best->index[j]) {
                        if (cand.index[j] < best->index[j]) best = cand;
                        break;
                    }
                }
            }
        }
        if (best) return *best;
    }
    throw std::logic_error("shifted_cover: no cover found within side ratio 6");
}

void for_each_cube(int n, const Shift& beta, int k0, int k1,
                   const std::function<void(const DyadicCube&)>& fn) {
    if (n < 1 || n > kMaxDim) throw std::invalid_argument("for_each_cube: bad dimension");
    if (k0 < kMinCubeLevel || k0 > k1)
        throw std::invalid_argument("for_each_cube: bad level range");

    for (int k = k0; k <= k1; ++k) {
        // Range of indices whose cube meets [0,1)^n:
        // corner < 1 and corner + 2^{-k} > 0.
        std::array<std::int64_t, kMaxDim> lo{}, hi{};
        for (int j = 0; j < n; ++j) {
            Rational off = beta[j] ? Rational((k % 2 == 0) ? 1 : -1, 3) : Rational(0);
            // m > -1 - off  and  m < 2^k - off, both strict
            lo[j] = rational_floor(Rational(-1) - off) + 1;
            hi[j] = rational_ceil(pow2_rational(k) - off) - 1;
        }
        DyadicCube c;
        c.dim = n;
        c.level = k;
        c.shift = beta;
        for (std::int64_t i0 = lo[0]; i0 <= hi[0]; ++i0) {
            c.index[0] = i0;
            if (n == 1) {
                fn(c);
                continue;
            }
            for (std::int64_t i1 = lo[1]; i1 <= hi[1]; ++i1) {
                c.index[1] = i1;
                if (n == 2) {
                    fn(c);
                    continue;
                }
                for (std::int64_t i2 = lo[2]; i2 <= hi[2]; ++i2) {
                    c.index[2] = i2;
                    fn(c);
                }
            }
        }
    }
}

std::vector<DyadicCube> enumerate_cubes(int n, const Shift& beta, int k0, int k1) {
    std::vector<DyadicCube> out;
    for_each_cube(n, beta, k0, k1, [&](const DyadicCube& q) { out.push_back(q); });
    return out;
}

CellBox inner_cell_box(const ArbitraryCube& cube, int L) {
    CellBox box;
    Rational scale = pow2_rational(L);
    for (int j = 0; j < cube.dim; ++j) {
        Rational low = cube.corner[j];
        Rational high = cube.corner[j] + cube.side;
        if (low < Rational(0)) low = Rational(0);
        if (high > Rational(1)) high = Rational(1);
        box.lo[j] = rational_ceil(low * scale);
        box.hi[j] = rational_floor(high * scale);
        if (box.lo[j] > box.hi[j]) box.lo[j] = box.hi[j];
    }
    return box;
}

CellBox inner_cell_box(const DyadicCube& cube, int L) {
    if (!cube.is_shifted() && cube.level >= 0) {
        // Standard-grid cube: cells are exactly its level-L descendants.
        CellBox box;
        std::int64_t cells = std::int64_t(1) << L;
        std::int64_t span = std::int64_t(1) << (L - cube.level);
        for (int j = 0; j < cube.dim; ++j) {
            std::int64_t lo = cube.index[j] * span;
            std::int64_t hi = lo + span;
            box.lo[j] = std::max<std::int64_t>(0, std::min(lo, cells));
            box.hi[j] = std::max<std::int64_t>(0, std::min(hi, cells));
            if (box.lo[j] > box.hi[j]) box.lo[j] = box.hi[j];
        }
        return box;
    }
    return inner_cell_box(to_arbitrary(cube), L);
}

}  // namespace maxlab
