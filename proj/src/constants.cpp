#include "maxlab/constants.hpp"

#include <cmath>
#include <functional>
#include <stdexcept>

namespace maxlab {

std::string to_string(LinearConstantKind k) {
    switch (k) {
        case LinearConstantKind::Ap: return "A_p";
        case LinearConstantKind::JointAp: return "JOINT_A_p";
        case LinearConstantKind::Apq: return "A_pq";
        case LinearConstantKind::Bp: return "B_p";
        case LinearConstantKind::AinfFujiiWilson: return "AINF_FW";
        case LinearConstantKind::AinfHruscev: return "AINF_HR";
    }
    return "?";
}

std::string to_string(MultiConstantKind k) {
    switch (k) {
        case MultiConstantKind::APvec: return "A_P";
        case MultiConstantKind::APq: return "A_Pq";
        case MultiConstantKind::BPq: return "B_Pq";
        case MultiConstantKind::WPinf: return "W_Pinf";
        case MultiConstantKind::RHP: return "RH_P";
    }
    return "?";
}

std::string to_string(SawyerKind k) {
    switch (k) {
        case SawyerKind::Linear: return "S_linear";
        case SawyerKind::LiSun: return "S_LiSun";
        case SawyerKind::Nu: return "S_nu";
    }
    return "?";
}

namespace {

// sup of a cube functional over the unit-subtree cubes, first maximizer in
// canonical (level, row-major) order.
template <typename Fn>
ConstantResult supremum_over_subtree(int n, int L, Fn&& functional) {
    ConstantResult best;
    bool first = true;
    TreeLayout layout(n, L);
    for (int k = 0; k <= L; ++k) {
        for (std::int64_t f = 0; f < layout.level_size(k); ++f) {
            double v = functional(k, f);
            if (first || v > best.value) {
                best.value = v;
                best.argmax = layout.cube_at(k, f);
                first = false;
            }
        }
    }
    return best;
}

// Descend from cube (k0, f0) to the leaves carrying running maxima of m
// node statistics; hand each leaf the running values.
void sweep_below(int n, int L, int k0, std::int64_t f0,
                 const std::function<void(int, std::int64_t, std::vector<double>&)>& node_stat,
                 const std::function<void(std::int64_t, const std::vector<double>&)>& leaf,
                 std::size_t stat_count) {
    std::vector<double> stack((std::size_t(L - k0) + 1) * stat_count);
    std::function<void(int, std::int64_t, std::size_t)> rec = [&](int k, std::int64_t f,
                                                                  std::size_t depth) {
        std::vector<double> here(stat_count, 0.0);
        node_stat(k, f, here);
        for (std::size_t s = 0; s < stat_count; ++s) {
            double up = (depth == 0) ? here[s]
                                     : std::max(here[s], stack[(depth - 1) * stat_count + s]);
            stack[depth * stat_count + s] = up;
        }
        if (k == L) {
            std::vector<double> vals(stack.begin() + std::ptrdiff_t(depth * stat_count),
                                     stack.begin() + std::ptrdiff_t((depth + 1) * stat_count));
            leaf(f, vals);
            return;
        }
        std::int64_t side = std::int64_t(1) << k;
        std::int64_t child_side = side * 2;
        std::array<std::int64_t, kMaxDim> m{0, 0, 0};
        std::int64_t rem = f;
        for (int j = n - 1; j >= 0; --j) {
            m[j] = rem % side;
            rem /= side;
        }
        for (int t = 0; t < (1 << n); ++t) {
            std::int64_t cf = 0;
            for (int j = 0; j < n; ++j)
                cf = cf * child_side + 2 * m[j] + ((t >> (n - 1 - j)) & 1);
            rec(k + 1, cf, depth + 1);
        }
    };
    rec(k0, f0, 0);
}

double avg_node(const GridFunction& g, int n, int k, std::int64_t f) {
    return g.tree().node(k, f) / std::ldexp(1.0, -n * k);
}

}  // namespace

ConstantResult joint_ap_constant(const Weight& omega, const Weight& sigma, double p) {
    if (!(p > 1.0)) throw std::invalid_argument("joint_ap_constant: p must exceed 1");
    int n = omega.dim(), L = omega.resolution();
    return supremum_over_subtree(n, L, [&](int k, std::int64_t f) {
        return avg_node(omega, n, k, f) * std::pow(avg_node(sigma, n, k, f), p - 1.0);
    });
}

ConstantResult ap_constant(const Weight& w, double p) {
    if (!(p > 1.0)) throw std::invalid_argument("ap_constant: p must exceed 1");
    double pc = conjugate_exponent(p);
    Weight dual(w.cellwise_pow(1.0 - pc));
    return joint_ap_constant(w, dual, p);
}

ConstantResult apq_constant(const Weight& w, double p, double q) {
    if (!(p > 1.0) || !(q > 0.0)) throw std::invalid_argument("apq_constant: bad exponents");
    double pc = conjugate_exponent(p);
    GridFunction wq = w.cellwise_pow(q);
    GridFunction wp = w.cellwise_pow(-pc);
    int n = w.dim(), L = w.resolution();
    return supremum_over_subtree(n, L, [&](int k, std::int64_t f) {
        return std::pow(avg_node(wq, n, k, f), 1.0 / q) *
               std::pow(avg_node(wp, n, k, f), 1.0 / pc);
    });
}

ConstantResult bp_constant(const Weight& omega, const Weight& sigma, double p) {
    if (!(p > 1.0)) throw std::invalid_argument("bp_constant: p must exceed 1");
    int n = omega.dim(), L = omega.resolution();
    GridFunction logs = [&] {
        std::vector<double> v(std::size_t(sigma.cell_count()));
        for (std::int64_t c = 0; c < sigma.cell_count(); ++c)
            v[std::size_t(c)] = std::log(sigma.value(c));
        return GridFunction(n, L, std::move(v));
    }();
    return supremum_over_subtree(n, L, [&](int k, std::int64_t f) {
        double entropy = std::exp(-avg_node(logs, n, k, f));
        return avg_node(omega, n, k, f) * std::pow(avg_node(sigma, n, k, f), p) * entropy;
    });
}

ConstantResult ainf_fw_constant(const Weight& w) {
    int n = w.dim(), L = w.resolution();
    TreeLayout layout(n, L);
    double cellvol = w.cell_volume();
    return supremum_over_subtree(n, L, [&](int k, std::int64_t f) {
        double integral = 0.0;
        sweep_below(
            n, L, k, f,
            [&](int kk, std::int64_t ff, std::vector<double>& s) { s[0] = avg_node(w, n, kk, ff); },
            [&](std::int64_t, const std::vector<double>& vals) { integral += vals[0] * cellvol; },
            1);
        return integral / w.tree().node(k, f);
    });
}

ConstantResult ainf_hr_constant(const Weight& w) {
    int n = w.dim(), L = w.resolution();
    GridFunction logs = [&] {
        std::vector<double> v(std::size_t(w.cell_count()));
        for (std::int64_t c = 0; c < w.cell_count(); ++c) v[std::size_t(c)] = std::log(w.value(c));
        return GridFunction(n, L, std::move(v));
    }();
    return supremum_over_subtree(n, L, [&](int k, std::int64_t f) {
        return avg_node(w, n, k, f) * std::exp(-avg_node(logs, n, k, f));
    });
}

ConstantResult linear_constant(LinearConstantKind kind, const Weight& w,
                               const std::optional<Weight>& second, double p,
                               std::optional<double> q) {
    switch (kind) {
        case LinearConstantKind::Ap:
            return ap_constant(w, p);
        case LinearConstantKind::JointAp:
            if (!second) throw std::invalid_argument("JOINT_A_p needs two weights");
            return joint_ap_constant(w, *second, p);
        case LinearConstantKind::Apq:
            if (!q) throw std::invalid_argument("A_pq needs q");
            return apq_constant(w, p, *q);
        case LinearConstantKind::Bp:
            if (!second) throw std::invalid_argument("B_p needs two weights");
            return bp_constant(w, *second, p);
        case LinearConstantKind::AinfFujiiWilson:
            return ainf_fw_constant(w);
        case LinearConstantKind::AinfHruscev:
            return ainf_hr_constant(w);
    }
    throw std::invalid_argument("linear_constant: unknown kind");
}

Weight derived_weight(std::span<const Weight> sigmas, const ExponentConfig& cfg) {
    if (std::int64_t(sigmas.size()) != cfg.arity())
        throw std::invalid_argument("derived_weight: arity mismatch");
    std::vector<double> v(std::size_t(sigmas[0].cell_count()), 1.0);
    for (int i = 0; i < cfg.arity(); ++i) {
        double e = cfg.p() / cfg.p_i(i);
        for (std::int64_t c = 0; c < sigmas[std::size_t(i)].cell_count(); ++c)
            v[std::size_t(c)] *= std::pow(sigmas[std::size_t(i)].value(c), e);
    }
    return Weight(sigmas[0].dim(), sigmas[0].resolution(), std::move(v));
}

ConstantResult ap_vec_constant(std::span<const Weight> sigmas, const ExponentConfig& cfg) {
    Weight nu = derived_weight(sigmas, cfg);
    int n = nu.dim(), L = nu.resolution();
    std::vector<GridFunction> duals;
    for (int i = 0; i < cfg.arity(); ++i)
        duals.push_back(sigmas[std::size_t(i)].cellwise_pow(1.0 - cfg.conjugate(i)));
    return supremum_over_subtree(n, L, [&](int k, std::int64_t f) {
        double acc = std::pow(avg_node(nu, n, k, f), 1.0 / cfg.p());
        for (int i = 0; i < cfg.arity(); ++i)
            acc *= std::pow(avg_node(duals[std::size_t(i)], n, k, f), 1.0 / cfg.conjugate(i));
        return acc;
    });
}

ConstantResult apq_vec_constant(std::span<const Weight> sigmas, const Weight& omega,
                                const ExponentConfig& cfg) {
    int n = omega.dim(), L = omega.resolution();
    double vol_exp = cfg.p() * (cfg.arity() - cfg.alpha() / cfg.dim());
    return supremum_over_subtree(n, L, [&](int k, std::int64_t f) {
        double acc = std::pow(omega.tree().node(k, f), cfg.p() / cfg.q());
        for (int i = 0; i < cfg.arity(); ++i)
            acc *= std::pow(sigmas[std::size_t(i)].tree().node(k, f),
                            cfg.p() / cfg.conjugate(i));
        return acc / std::pow(std::ldexp(1.0, -n * k), vol_exp);
    });
}

ConstantResult bpq_vec_constant(std::span<const Weight> sigmas, const Weight& omega,
                                const ExponentConfig& cfg) {
    int n = omega.dim(), L = omega.resolution();
    double vol_exp = cfg.p() * (cfg.arity() - cfg.alpha() / cfg.dim()) + 1.0;
    std::vector<GridFunction> logs;
    for (int i = 0; i < cfg.arity(); ++i) {
        std::vector<double> v(std::size_t(omega.cell_count()));
        for (std::int64_t c = 0; c < omega.cell_count(); ++c)
            v[std::size_t(c)] = std::log(sigmas[std::size_t(i)].value(c));
        logs.emplace_back(n, L, std::move(v));
    }
    return supremum_over_subtree(n, L, [&](int k, std::int64_t f) {
        double acc = std::pow(omega.tree().node(k, f), cfg.p() / cfg.q());
        for (int i = 0; i < cfg.arity(); ++i)
            acc *= std::pow(sigmas[std::size_t(i)].tree().node(k, f), cfg.p());
        for (int i = 0; i < cfg.arity(); ++i)
            acc *= std::pow(std::exp(-avg_node(logs[std::size_t(i)], n, k, f)),
                            cfg.p() / cfg.p_i(i));
        return acc / std::pow(std::ldexp(1.0, -n * k), vol_exp);
    });
}

ConstantResult wpinf_constant(std::span<const Weight> sigmas, const ExponentConfig& cfg) {
    Weight nu = derived_weight(sigmas, cfg);
    int n = nu.dim(), L = nu.resolution();
    double cellvol = nu.cell_volume();
    std::size_t m = std::size_t(cfg.arity());
    return supremum_over_subtree(n, L, [&](int k, std::int64_t f) {
        double integral = 0.0;
        sweep_below(
            n, L, k, f,
            [&](int kk, std::int64_t ff, std::vector<double>& s) {
                for (std::size_t i = 0; i < m; ++i) s[i] = avg_node(sigmas[i], n, kk, ff);
            },
            [&](std::int64_t, const std::vector<double>& vals) {
                double prod = 1.0;
                for (std::size_t i = 0; i < m; ++i)
                    prod *= std::pow(vals[i], cfg.p() / cfg.p_i(int(i)));
                integral += prod * cellvol;
            },
            m);
        return integral / nu.tree().node(k, f);
    });
}

ConstantResult rhp_constant(std::span<const Weight> sigmas, const ExponentConfig& cfg) {
    Weight nu = derived_weight(sigmas, cfg);
    int n = nu.dim(), L = nu.resolution();
    return supremum_over_subtree(n, L, [&](int k, std::int64_t f) {
        double acc = 1.0;
        for (int i = 0; i < cfg.arity(); ++i)
            acc *= std::pow(sigmas[std::size_t(i)].tree().node(k, f), cfg.p() / cfg.p_i(i));
        return acc / nu.tree().node(k, f);
    });
}

ConstantResult multilinear_constant(MultiConstantKind kind, std::span<const Weight> sigmas,
                                    const std::optional<Weight>& omega,
                                    const ExponentConfig& cfg) {
    switch (kind) {
        case MultiConstantKind::APvec:
            return ap_vec_constant(sigmas, cfg);
        case MultiConstantKind::APq:
            if (!omega) throw std::invalid_argument("A_Pq needs the target weight");
            return apq_vec_constant(sigmas, *omega, cfg);
        case MultiConstantKind::BPq:
            if (!omega) throw std::invalid_argument("B_Pq needs the target weight");
            return bpq_vec_constant(sigmas, *omega, cfg);
        case MultiConstantKind::WPinf:
            return wpinf_constant(sigmas, cfg);
        case MultiConstantKind::RHP:
            return rhp_constant(sigmas, cfg);
    }
    throw std::invalid_argument("multilinear_constant: unknown kind");
}

ConstantResult sawyer_testing_constant(SawyerKind kind, std::span<const Weight> sigmas,
                                       const Weight& omega, const ExponentConfig& cfg) {
    if (std::int64_t(sigmas.size()) != cfg.arity())
        throw std::invalid_argument("sawyer_testing_constant: arity mismatch");
    if (kind == SawyerKind::Linear && cfg.arity() != 1)
        throw std::invalid_argument("sawyer_testing_constant: linear kind needs m = 1");
    int n = omega.dim(), L = omega.resolution();
    double cellvol = omega.cell_volume();
    double pre_exp = cfg.prefactor_exponent();
    std::size_t m = std::size_t(cfg.arity());
    std::optional<Weight> nu;
    if (kind == SawyerKind::Nu || kind == SawyerKind::Linear) nu = derived_weight(sigmas, cfg);

    return supremum_over_subtree(n, L, [&](int k, std::int64_t f) {
        // For subcubes of Q the masked masses equal the plain ones, and
        // candidates above Q are dominated by Q itself.
        double integral = 0.0;
        sweep_below(
            n, L, k, f,
            [&](int kk, std::int64_t ff, std::vector<double>& s) {
                double v = std::pow(std::ldexp(1.0, -n * kk), pre_exp);
                for (std::size_t i = 0; i < m; ++i) v *= sigmas[i].tree().node(kk, ff);
                s[0] = v;
            },
            [&](std::int64_t cell, const std::vector<double>& vals) {
                integral += std::pow(vals[0], cfg.q()) * omega.value(cell) * cellvol;
            },
            1);
        double numerator = std::pow(integral, 1.0 / cfg.q());
        double denom = 1.0;
        switch (kind) {
            case SawyerKind::Linear:
            case SawyerKind::Nu:
                denom = std::pow(nu->tree().node(k, f), 1.0 / cfg.p());
                break;
            case SawyerKind::LiSun:
                for (std::size_t i = 0; i < m; ++i)
                    denom *= std::pow(sigmas[i].tree().node(k, f), 1.0 / cfg.p_i(int(i)));
                break;
        }
        return numerator / denom;
    });
}

}  // namespace maxlab
