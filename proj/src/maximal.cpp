#include "maxlab/maximal.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

namespace maxlab {

std::int64_t CellMask::count() const {
    std::int64_t c = 0;
    for (std::uint64_t w : bits_) c += std::popcount(w);
    return c;
}

bool CellMask::intersects(const CellMask& other) const {
    std::size_t k = std::min(bits_.size(), other.bits_.size());
    for (std::size_t i = 0; i < k; ++i)
        if (bits_[i] & other.bits_[i]) return true;
    return false;
}

namespace {

// Root-to-leaf sweep over the unit-cube tree carrying a running maximum.
// node_value(k, flat) is the cube functional at that node.
template <typename NodeValue>
GridFunction subtree_sweep(int n, int L, NodeValue&& node_value, double base_value) {
    TreeLayout layout(n, L);
    std::vector<double> running(std::size_t(layout.nodes()), 0.0);
    for (int k = 0; k <= L; ++k) {
        std::int64_t side = std::int64_t(1) << k;
        for (std::int64_t f = 0; f < layout.level_size(k); ++f) {
            double here = node_value(k, f);
            double up = base_value;
            if (k > 0) {
                // parent flat index: halve each coordinate
                std::int64_t rem = f, acc = 0;
                std::array<std::int64_t, kMaxDim> m{0, 0, 0};
                for (int j = n - 1; j >= 0; --j) {
                    m[j] = rem % side;
                    rem /= side;
                }
                for (int j = 0; j < n; ++j) acc = acc * (side / 2) + m[j] / 2;
                up = running[std::size_t(layout.level_offset[k - 1] + acc)];
            }
            running[std::size_t(layout.level_offset[k] + f)] = std::max(here, up);
        }
    }
    std::vector<double> cells(running.begin() + layout.level_offset[L], running.end());
    return GridFunction(n, L, std::move(cells));
}

std::vector<GridFunction> abs_grids(std::span<const GridFunction> fs) {
    std::vector<GridFunction> out;
    out.reserve(fs.size());
    for (const auto& f : fs) out.push_back(f.cellwise_abs());
    return out;
}

}  // namespace

GridFunction dyadic_maximal(const GridFunction& f) {
    GridFunction a = f.cellwise_abs();
    int n = f.dim(), L = f.resolution();
    return subtree_sweep(
        n, L,
        [&](int k, std::int64_t flat) {
            return a.tree().node(k, flat) / std::ldexp(1.0, -n * k);
        },
        0.0);
}

GridFunction weighted_dyadic_maximal(const GridFunction& f, const Weight& sigma) {
    if (f.dim() != sigma.dim() || f.resolution() != sigma.resolution())
        throw std::invalid_argument("weighted_dyadic_maximal: shape mismatch");
    GridFunction fs = f.cellwise_abs().cellwise_product(sigma);
    int n = f.dim(), L = f.resolution();
    return subtree_sweep(
        n, L,
        [&](int k, std::int64_t flat) {
            return fs.tree().node(k, flat) / sigma.tree().node(k, flat);
        },
        0.0);
}

double fractional_value(std::span<const GridFunction> fs_abs, const ExponentConfig& cfg,
                        const DyadicCube& q) {
    double acc = std::pow(q.volume(), cfg.prefactor_exponent());
    for (const auto& f : fs_abs) acc *= f.mass(q);
    return acc;
}

double canonical_probe_value(std::span<const GridFunction> fs_abs, const ExponentConfig& cfg) {
    ArbitraryCube probe;
    probe.dim = cfg.dim();
    probe.side = Rational(2);
    for (int j = 0; j < cfg.dim(); ++j) probe.corner[j] = Rational(-1, 2);
    int L = fs_abs.empty() ? 0 : fs_abs[0].resolution();
    CellBox box = inner_cell_box(probe, L);
    double acc = std::pow(std::ldexp(1.0, cfg.dim()), cfg.prefactor_exponent());
    for (const auto& f : fs_abs) acc *= f.mass_box(box);
    return acc;
}

GridFunction multilinear_fractional_dyadic(std::span<const GridFunction> fs,
                                           const ExponentConfig& cfg, const Shift& beta) {
    if (std::int64_t(fs.size()) != cfg.arity())
        throw std::invalid_argument("multilinear_fractional_dyadic: arity mismatch");
    const int n = fs[0].dim(), L = fs[0].resolution();
    if (n != cfg.dim()) throw std::invalid_argument("multilinear_fractional_dyadic: dim mismatch");
    std::vector<GridFunction> a = abs_grids(fs);
    std::span<const GridFunction> as(a);

    bool shifted = false;
    for (int j = 0; j < n; ++j) shifted = shifted || beta[j];

    double base = canonical_probe_value(as, cfg);
    {
        // the level -1 cube of this grid that contains the whole domain
        DyadicCube top;
        top.dim = n;
        top.level = -1;
        top.shift = beta;
        // index 0 gives corner 0 (beta=0) or -2/3 (beta=1/3); both cover [0,1)
        base = std::max(base, fractional_value(as, cfg, top));
    }

    if (!shifted) {
        return subtree_sweep(
            n, L,
            [&](int k, std::int64_t flat) {
                DyadicCube q = a[0].layout().cube_at(k, flat);
                return fractional_value(as, cfg, q);
            },
            base);
    }

    std::vector<double> out(std::size_t(fs[0].cell_count()), base);
    std::int64_t side = fs[0].cells_per_side();
    for_each_cube(n, beta, 0, L, [&](const DyadicCube& q) {
        CellBox box = inner_cell_box(q, L);
        if (box.empty(n)) return;
        double v = fractional_value(as, cfg, q);
        std::array<std::int64_t, kMaxDim> i{box.lo[0], 0, 0};
        for (i[0] = box.lo[0]; i[0] < box.hi[0]; ++i[0])
            for (i[1] = (n > 1 ? box.lo[1] : 0); i[1] < (n > 1 ? box.hi[1] : 1); ++i[1])
                for (i[2] = (n > 2 ? box.lo[2] : 0); i[2] < (n > 2 ? box.hi[2] : 1); ++i[2]) {
                    std::int64_t f = 0;
                    for (int j = 0; j < n; ++j) f = f * side + i[j];
                    out[std::size_t(f)] = std::max(out[std::size_t(f)], v);
                }
    });
    return GridFunction(n, L, std::move(out));
}

std::pair<GridFunction, GridFunction> multilinear_fractional_approx(
    std::span<const GridFunction> fs, const ExponentConfig& cfg) {
    const int n = cfg.dim();
    const double c = std::pow(6.0, double(n) * cfg.arity() - cfg.alpha());
    std::vector<double> lower, upper;
    for (const auto& beta : all_shifts(n)) {
        GridFunction m = multilinear_fractional_dyadic(fs, cfg, beta);
        if (lower.empty()) {
            lower = m.values();
            upper = m.values();
        } else {
            for (std::size_t i = 0; i < lower.size(); ++i) {
                lower[i] = std::max(lower[i], m.value(std::int64_t(i)));
                upper[i] += m.value(std::int64_t(i));
            }
        }
    }
    for (double& u : upper) u *= c;
    int L = fs[0].resolution();
    return {GridFunction(n, L, std::move(lower)), GridFunction(n, L, std::move(upper))};
}

GridFunction multilinear_weighted_maximal(std::span<const GridFunction> fs,
                                          std::span<const Weight> sigmas) {
    if (fs.size() != sigmas.size() || fs.empty())
        throw std::invalid_argument("multilinear_weighted_maximal: arity mismatch");
    const int n = fs[0].dim(), L = fs[0].resolution();
    std::vector<GridFunction> prods;
    prods.reserve(fs.size());
    for (std::size_t i = 0; i < fs.size(); ++i)
        prods.push_back(fs[i].cellwise_abs().cellwise_product(sigmas[i]));
    return subtree_sweep(
        n, L,
        [&](int k, std::int64_t flat) {
            double acc = 1.0;
            for (std::size_t i = 0; i < fs.size(); ++i)
                acc *= prods[i].tree().node(k, flat) / sigmas[i].tree().node(k, flat);
            return acc;
        },
        0.0);
}

double int_pow(double a, int k) {
    if (k < 0) return 1.0 / int_pow(a, -k);
    double r = 1.0;
    for (int i = 0; i < k; ++i) r *= a;
    return r;
}

double default_cz_base(const ExponentConfig& cfg) {
    return std::pow(2.0, double(cfg.dim()) * cfg.arity() - cfg.alpha() + 1.0);
}

double packing_gamma(const ExponentConfig& cfg, double a) {
    double cap = std::pow(2.0, double(cfg.dim()) * cfg.arity() - cfg.alpha());
    if (!(a > cap))
        throw std::invalid_argument("packing_gamma: base must exceed 2^(nm-alpha)");
    double s = cfg.arity() - cfg.alpha() / cfg.dim();
    return 1.0 / (1.0 - std::pow(cap / a, 1.0 / s));
}

std::int64_t CZDecomposition::cube_count() const {
    std::int64_t c = 0;
    for (const auto& lev : levels) c += std::int64_t(lev.cubes.size());
    return c;
}

CZDecomposition cz_decomposition(std::span<const GridFunction> fs,
                                 std::span<const Weight> sigmas,
                                 const ExponentConfig& cfg, double a) {
    if (fs.size() != sigmas.size() || std::int64_t(fs.size()) != cfg.arity())
        throw std::invalid_argument("cz_decomposition: arity mismatch");
    double cap = std::pow(2.0, double(cfg.dim()) * cfg.arity() - cfg.alpha());
    if (!(a > cap))
        throw std::invalid_argument("cz_decomposition: base must exceed 2^(nm-alpha)");

    const int n = fs[0].dim(), L = fs[0].resolution();
    std::vector<GridFunction> g;
    g.reserve(fs.size());
    for (std::size_t i = 0; i < fs.size(); ++i)
        g.push_back(fs[i].cellwise_abs().cellwise_product(sigmas[i]));
    std::span<const GridFunction> gs(g);

    GridFunction phi = multilinear_fractional_dyadic(gs, cfg, kNoShift);

    // functional value of the side-2 grid cube above the root; the root's
    // bracket is exact only for thresholds at or above it
    double chain_parent_value;
    {
        DyadicCube top;
        top.dim = n;
        top.level = -1;
        chain_parent_value = fractional_value(gs, cfg, top);
    }

    CZDecomposition cz{n, L, a, packing_gamma(cfg, a), phi, {}};

    bool degenerate = false;
    for (const auto& gi : g)
        if (!(gi.total_mass() > 0.0)) degenerate = true;
    if (degenerate) return cz;

    // band index per cell: the k with a^k < phi <= a^{k+1}
    std::vector<int> band(std::size_t(phi.cell_count()));
    int k_min = 0, k_max = 0;
    for (std::int64_t c = 0; c < phi.cell_count(); ++c) {
        double v = phi.value(c);
        int k = int(std::floor(std::log(v) / std::log(a)));
        while (int_pow(a, k) >= v) --k;
        while (int_pow(a, k + 1) < v) ++k;
        band[std::size_t(c)] = k;
        if (c == 0 || k < k_min) k_min = k;
        if (c == 0 || k > k_max) k_max = k;
    }

    TreeLayout layout(n, L);
    for (int k = k_max; k >= k_min; --k) {
        bool nonempty = std::any_of(band.begin(), band.end(), [&](int b) { return b == k; });
        if (!nonempty) continue;
        CZLevel level;
        level.k = k;
        level.threshold = int_pow(a, k);

        // maximal unit-subtree cubes with functional value above a^k
        std::function<void(int, std::int64_t)> dfs = [&](int depth, std::int64_t flat) {
            DyadicCube q = layout.cube_at(depth, flat);
            double v = fractional_value(gs, cfg, q);
            if (v > level.threshold) {
                StoppingCube sc;
                sc.cube = q;
                sc.value = v;
                sc.bracket_exact = (depth > 0) || (chain_parent_value <= level.threshold);
                sc.e_mask = CellMask(phi.cell_count());
                CellBox box = inner_cell_box(q, L);
                std::int64_t side = phi.cells_per_side();
                std::array<std::int64_t, kMaxDim> i{};
                for (i[0] = box.lo[0]; i[0] < box.hi[0]; ++i[0])
                    for (i[1] = (n > 1 ? box.lo[1] : 0); i[1] < (n > 1 ? box.hi[1] : 1); ++i[1])
                        for (i[2] = (n > 2 ? box.lo[2] : 0); i[2] < (n > 2 ? box.hi[2] : 1);
                             ++i[2]) {
                            std::int64_t f = 0;
                            for (int j = 0; j < n; ++j) f = f * side + i[j];
                            if (band[std::size_t(f)] == k) {
                                sc.e_mask.set(f);
                                ++sc.e_cells;
                            }
                        }
                level.cubes.push_back(std::move(sc));
                return;
            }
            if (depth == L) return;
            std::int64_t child_side = std::int64_t(1) << (depth + 1);
            std::array<std::int64_t, kMaxDim> m{0, 0, 0};
            std::int64_t rem = flat, s = std::int64_t(1) << depth;
            for (int j = n - 1; j >= 0; --j) {
                m[j] = rem % s;
                rem /= s;
            }
            for (int t = 0; t < (1 << n); ++t) {
                std::int64_t cf = 0;
                for (int j = 0; j < n; ++j)
                    cf = cf * child_side + 2 * m[j] + ((t >> (n - 1 - j)) & 1);
                dfs(depth + 1, cf);
            }
        };
        dfs(0, 0);
        if (!level.cubes.empty()) cz.levels.push_back(std::move(level));
    }
    return cz;
}

}  // namespace maxlab
