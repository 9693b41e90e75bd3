// Command-line front end: generate weights, compute cube characteristics and
// testing constants, apply maximal operators, and run the verification suites.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "maxlab/carleson.hpp"
#include "maxlab/constants.hpp"
#include "maxlab/grid.hpp"
#include "maxlab/lab.hpp"
#include "maxlab/maximal.hpp"
#include "maxlab/paraproduct.hpp"

namespace {

using namespace maxlab;

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot read file: " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("cannot write file: " + path);
    out << text;
}

// "family:params" generator spec, or "@path" for a grid file (JSON or CSV)
GridFunction load_grid(const std::string& arg, std::uint64_t seed, int n, int L) {
    if (!arg.empty() && arg[0] == '@') {
        std::string text = read_file(arg.substr(1));
        auto first = text.find_first_not_of(" \t\r\n");
        if (first != std::string::npos && (text[first] == '{' || text[first] == '['))
            return grid_from_json(text);
        return grid_from_csv(text);
    }
    return generate_weight(parse_weight_spec(arg), seed, n, L);
}

Weight load_weight(const std::string& arg, std::uint64_t seed, int n, int L) {
    return Weight(load_grid(arg, seed, n, L));
}

Shift parse_shift(const std::string& text, int n) {
    Shift beta{false, false, false};
    if (text.empty()) return beta;
    std::istringstream is(text);
    std::string tok;
    int j = 0;
    while (std::getline(is, tok, ',') && j < n) beta[j++] = (tok == "1" || tok == "1/3");
    return beta;
}

void emit(const std::string& text, const std::string& output) {
    if (output.empty())
        std::cout << text;
    else
        write_file(output, text);
}

std::string format_value(double v) {
    std::string s = format_double(v);
    if (s.find_first_of(".einf") == std::string::npos) s += ".0";
    return s;
}

int run_generate(const std::string& family, std::uint64_t seed, int n, int L,
                 const std::string& format, const std::string& output) {
    Weight w = load_weight(family, seed, n, L);
    emit(format == "csv" ? grid_to_csv(w) : grid_to_json(w) + "\n", output);
    return 0;
}

int run_constants(const std::string& kind, std::vector<std::string> weights,
                  const std::string& omega_arg, double p, std::vector<double> p_list,
                  double q, double alpha, int n, int L, std::uint64_t seed,
                  const std::string& output) {
    if (weights.empty()) throw std::invalid_argument("constants: need at least one --weight");
    std::vector<Weight> sigmas;
    for (std::size_t i = 0; i < weights.size(); ++i)
        sigmas.push_back(load_weight(weights[i], seed + i, n, L));
    std::optional<Weight> omega;
    if (!omega_arg.empty()) omega = load_weight(omega_arg, seed + 101, n, L);

    ConstantResult res;
    if (kind == "A_p") {
        res = ap_constant(sigmas[0], p);
    } else if (kind == "JOINT_A_p") {
        if (!omega) throw std::invalid_argument("JOINT_A_p needs --omega (the target weight)");
        res = joint_ap_constant(*omega, sigmas[0], p);
    } else if (kind == "A_pq") {
        res = apq_constant(sigmas[0], p, q);
    } else if (kind == "B_p") {
        if (!omega) throw std::invalid_argument("B_p needs --omega (the target weight)");
        res = bp_constant(*omega, sigmas[0], p);
    } else if (kind == "AINF_FW") {
        res = ainf_fw_constant(sigmas[0]);
    } else if (kind == "AINF_HR") {
        res = ainf_hr_constant(sigmas[0]);
    } else {
        int m = int(sigmas.size());
        if (p_list.empty()) p_list.assign(std::size_t(m), p * m);
        ExponentConfig cfg(n, m, p_list, q, alpha);
        if (kind == "A_P") {
            res = ap_vec_constant(sigmas, cfg);
        } else if (kind == "A_Pq") {
            if (!omega) throw std::invalid_argument("A_Pq needs --omega");
            res = apq_vec_constant(sigmas, *omega, cfg);
        } else if (kind == "B_Pq") {
            if (!omega) throw std::invalid_argument("B_Pq needs --omega");
            res = bpq_vec_constant(sigmas, *omega, cfg);
        } else if (kind == "W_Pinf") {
            res = wpinf_constant(sigmas, cfg);
        } else if (kind == "RH_P") {
            res = rhp_constant(sigmas, cfg);
        } else if (kind == "S_linear" || kind == "S_LiSun" || kind == "S_nu") {
            if (!omega) throw std::invalid_argument(kind + " needs --omega");
            SawyerKind sk = kind == "S_linear" ? SawyerKind::Linear
                            : kind == "S_LiSun" ? SawyerKind::LiSun
                                                : SawyerKind::Nu;
            res = sawyer_testing_constant(sk, sigmas, *omega, cfg);
        } else {
            throw std::invalid_argument("unknown constant kind: " + kind);
        }
    }
    emit(format_value(res.value) + "\n", output);
    std::cerr << "supremum attained at " << res.argmax.to_string()
              << " (dyadic-restricted)\n";
    return 0;
}

int run_maximal(const std::string& op, std::vector<std::string> inputs,
                std::vector<std::string> weights, const std::string& beta_arg, double q,
                std::vector<double> p_list, double alpha, int n, int L, std::uint64_t seed,
                const std::string& format, const std::string& output) {
    if (inputs.empty()) throw std::invalid_argument("maximal: need at least one --input");
    std::vector<GridFunction> fs;
    for (std::size_t i = 0; i < inputs.size(); ++i)
        fs.push_back(load_grid(inputs[i], seed + i, n, L));
    int m = int(fs.size());
    if (p_list.empty()) p_list.assign(std::size_t(m), 2.0 * m);

    GridFunction result = fs[0];
    if (op == "dyadic") {
        result = dyadic_maximal(fs[0]);
    } else if (op == "weighted") {
        if (weights.empty()) throw std::invalid_argument("weighted maximal needs --weight");
        result = weighted_dyadic_maximal(fs[0], load_weight(weights[0], seed + 50, n, L));
    } else if (op == "fractional") {
        ExponentConfig cfg(n, m, p_list, q, alpha);
        result = multilinear_fractional_dyadic(fs, cfg, parse_shift(beta_arg, n));
    } else if (op == "approx_lower" || op == "approx_upper") {
        ExponentConfig cfg(n, m, p_list, q, alpha);
        auto [lower, upper] = multilinear_fractional_approx(fs, cfg);
        result = (op == "approx_lower") ? lower : upper;
    } else if (op == "lattice") {
        ExponentConfig cfg(n, m, p_list, q, alpha);
        result = lattice_cube_maximal(fs, cfg);
    } else if (op == "multi_weighted") {
        if (weights.size() != fs.size())
            throw std::invalid_argument("multi_weighted needs one --weight per --input");
        std::vector<Weight> sigmas;
        for (std::size_t i = 0; i < weights.size(); ++i)
            sigmas.push_back(load_weight(weights[i], seed + 50 + i, n, L));
        result = multilinear_weighted_maximal(fs, sigmas);
    } else {
        throw std::invalid_argument("unknown maximal op: " + op);
    }
    emit(format == "csv" ? grid_to_csv(result) : grid_to_json(result) + "\n", output);
    return 0;
}

int run_carleson(const std::string& sequence_path, const std::string& sigma_arg,
                 double alpha, const std::string& f_arg, double p, int n, int L,
                 std::uint64_t seed, const std::string& output) {
    CarlesonSequence seq = carleson_from_json(read_file(sequence_path), n, L);
    Weight sigma = load_weight(sigma_arg, seed, n, L);
    auto best = carleson_constant(seq, sigma, alpha);
    nlohmann::json j;
    j["constant"] = best.value;
    j["argmax"] = best.argmax.to_string();
    j["alpha"] = alpha;
    if (!f_arg.empty()) {
        GridFunction f = load_grid(f_arg, seed + 7, n, L);
        j["embedding_sum"] = embedding_sum(seq, sigma, f, p, alpha);
        j["p"] = p;
        double pc = conjugate_exponent(p);
        j["embedding_bound"] = best.value * alpha * std::pow(pc, p * alpha) *
                               std::pow(lp_norm(f, sigma, p), p * alpha);
    }
    emit(j.dump(2) + "\n", output);
    return 0;
}

int run_paraproduct(const std::string& op, const std::string& symbol_path, double p,
                    const std::string& b_arg, int trials, int L, std::uint64_t seed,
                    const std::string& output) {
    HaarSymbol phi = haar_from_json(read_file(symbol_path), L);
    if (op == "apply") {
        if (b_arg.empty()) throw std::invalid_argument("paraproduct apply needs --input");
        GridFunction b = load_grid(b_arg, seed, 1, L);
        emit(grid_to_json(paraproduct_apply(phi, b)) + "\n", output);
    } else if (op == "constant") {
        emit(format_value(paraproduct_carleson(phi, p)) + "\n", output);
    } else if (op == "norm") {
        NormEstimate est = paraproduct_norm_estimate(phi, p, trials, seed);
        nlohmann::json j;
        j["norm_estimate"] = est.value;
        j["argmax"] = est.argmax;
        j["carleson_constant"] = paraproduct_carleson(phi, p);
        emit(j.dump(2) + "\n", output);
    } else {
        throw std::invalid_argument("unknown paraproduct op: " + op);
    }
    return 0;
}

ExperimentConfig config_from_json(const nlohmann::json& j) {
    ExperimentConfig c = default_config(theorem_from_string(j.at("theorem").get<std::string>()));
    if (j.contains("n")) c.n = j["n"].get<int>();
    if (j.contains("L")) c.L = j["L"].get<int>();
    if (j.contains("m")) c.m = j["m"].get<int>();
    if (j.contains("p")) c.p_list = j["p"].get<std::vector<double>>();
    if (j.contains("q")) c.q = j["q"].get<double>();
    if (j.contains("alpha")) c.alpha = j["alpha"].get<double>();
    if (j.contains("trials")) c.trials = j["trials"].get<int>();
    if (j.contains("norm_trials")) c.norm_trials = j["norm_trials"].get<int>();
    if (j.contains("seed")) c.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("slack")) c.slack = j["slack"].get<double>();
    if (j.contains("base")) c.base = j["base"].get<double>();
    if (j.contains("jobs")) c.jobs = j["jobs"].get<int>();
    return c;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"dyadic weight laboratory"};
    app.require_subcommand(1);

    std::string output, format = "json", aux_input, f_arg, omega_arg, beta_arg, config_path;
    std::string kind, op = "dyadic", family = "constant:1", sequence_path, symbol_path, theorem;
    std::vector<std::string> weights, inputs;
    std::vector<double> p_list;
    double p = 2.0, q = 2.0, alpha = 0.0, alpha_seq = 1.0, slack = -1.0;
    int n = 1, L = 4, trials = -1, norm_trials = -1, jobs = 0;
    std::uint64_t seed = 0;

    int default_jobs = 1;
    if (const char* env = std::getenv("MAXLAB_JOBS")) default_jobs = std::atoi(env);

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--n", n, "dimension (1..3)");
        cmd->add_option("--L", L, "resolution: 2^L cells per side");
        cmd->add_option("--seed", seed, "random seed (default 0)");
        cmd->add_option("--output,-o", output, "output path (default stdout)");
        cmd->add_option("--format", format, "json or csv");
    };

    auto* gen = app.add_subcommand("generate", "generate a weight and write it out");
    gen->add_option("--family", family, "family:params, e.g. two_cell:4");
    add_common(gen);

    auto* cons = app.add_subcommand("constants", "compute a weight characteristic");
    cons->add_option("--kind", kind, "A_p, JOINT_A_p, A_pq, B_p, AINF_FW, AINF_HR, "
                                     "A_P, A_Pq, B_Pq, W_Pinf, RH_P, S_linear, S_LiSun, S_nu")
        ->required();
    cons->add_option("--weight", weights, "weight spec or @file (repeat for vectors)");
    cons->add_option("--omega", omega_arg, "target weight for two-weight kinds");
    cons->add_option("--p", p, "exponent p");
    cons->add_option("--p-list", p_list, "per-entry exponents for multilinear kinds");
    cons->add_option("--q", q, "exponent q");
    cons->add_option("--alpha", alpha, "fractional order");
    add_common(cons);

    auto* maxi = app.add_subcommand("maximal", "apply a maximal operator");
    maxi->add_option("--op", op,
                     "dyadic, weighted, fractional, approx_lower, approx_upper, "
                     "multi_weighted, lattice");
    maxi->add_option("--input", inputs, "function spec or @file (repeat for tuples)");
    maxi->add_option("--weight", weights, "weight spec or @file (repeat)");
    maxi->add_option("--beta", beta_arg, "shift flags per coordinate, e.g. 1,0");
    maxi->add_option("--p-list", p_list, "per-entry exponents");
    maxi->add_option("--q", q, "exponent q");
    maxi->add_option("--alpha", alpha, "fractional order");
    add_common(maxi);

    auto* carl = app.add_subcommand("carleson", "sequence constant and embedding sums");
    carl->add_option("--sequence", sequence_path, "sequence JSON file")->required();
    carl->add_option("--weight", aux_input, "reference weight spec or @file")->required();
    carl->add_option("--alpha-seq", alpha_seq, "sequence exponent (>= 1)");
    carl->add_option("--f", f_arg, "test function for the embedding sum");
    carl->add_option("--p", p, "embedding exponent");
    add_common(carl);

    auto* para = app.add_subcommand("paraproduct", "Haar paraproduct operations");
    para->add_option("--op", op, "apply, constant, norm")->required();
    para->add_option("--symbol", symbol_path, "symbol JSON file")->required();
    para->add_option("--input", f_arg, "input function for apply");
    para->add_option("--p", p, "source exponent in [1,2]");
    para->add_option("--trials", trials, "random trials for the norm estimate");
    add_common(para);

    auto* veri = app.add_subcommand("verify", "run a verification suite");
    veri->add_option("--theorem", theorem, "theorem id, e.g. GRID_COVER");
    veri->add_option("--config", config_path, "experiment config JSON (flags override)");
    veri->add_option("--trials", trials, "number of generated instances");
    veri->add_option("--norm-trials", norm_trials, "random tuples per norm estimate");
    veri->add_option("--q", q, "exponent q");
    veri->add_option("--alpha", alpha, "fractional order");
    veri->add_option("--p-list", p_list, "per-entry exponents");
    veri->add_option("--slack", slack, "relative tolerance (default 1e-9)");
    veri->add_option("--jobs", jobs, "parallel trial workers (env MAXLAB_JOBS)");
    add_common(veri);

    CLI11_PARSE(app, argc, argv);

    try {
        if (gen->parsed()) return run_generate(family, seed, n, L, format, output);
        if (cons->parsed())
            return run_constants(kind, weights, omega_arg, p, p_list, q, alpha, n, L, seed,
                                 output);
        if (maxi->parsed())
            return run_maximal(op, inputs, weights, beta_arg, q, p_list, alpha, n, L, seed,
                               format, output);
        if (carl->parsed())
            return run_carleson(sequence_path, aux_input, alpha_seq, f_arg, p, n, L, seed,
                                output);
        if (para->parsed())
            return run_paraproduct(op, symbol_path, p, f_arg, trials < 0 ? 32 : trials, L,
                                   seed, output);
        if (veri->parsed()) {
            ExperimentConfig cfg;
            if (!config_path.empty()) {
                cfg = config_from_json(nlohmann::json::parse(read_file(config_path)));
            } else if (!theorem.empty()) {
                cfg = default_config(theorem_from_string(theorem));
            } else {
                throw std::invalid_argument("verify: need --theorem or --config");
            }
            if (!theorem.empty()) cfg.theorem = theorem_from_string(theorem);
            if (veri->count("--n")) cfg.n = n;
            if (veri->count("--L")) cfg.L = L;
            if (veri->count("--q")) cfg.q = q;
            if (veri->count("--alpha")) cfg.alpha = alpha;
            if (veri->count("--p-list")) {
                cfg.p_list = p_list;
                cfg.m = int(p_list.size());
            }
            if (trials > 0) cfg.trials = trials;
            if (norm_trials > 0) cfg.norm_trials = norm_trials;
            if (veri->count("--seed")) cfg.seed = seed;
            if (slack >= 0.0) cfg.slack = slack;
            cfg.jobs = (jobs > 0) ? jobs : default_jobs;

            VerificationReport rep = verify_theorem(cfg);
            emit(format == "csv" ? report_to_csv(rep) : report_to_json(rep), output);
            std::cerr << rep.theorem << ": " << (rep.pass ? "pass" : "FAIL")
                      << ", max ratio " << rep.max_ratio << ", " << rep.trials.size()
                      << " checks, " << rep.wall_ms << " ms\n";
            return rep.pass ? 0 : 2;
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
