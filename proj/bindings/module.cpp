#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "maxlab/carleson.hpp"
#include "maxlab/constants.hpp"
#include "maxlab/grid.hpp"
#include "maxlab/lab.hpp"
#include "maxlab/maximal.hpp"
#include "maxlab/paraproduct.hpp"

namespace py = pybind11;
using namespace maxlab;

namespace {

Shift shift_from_list(const std::vector<bool>& flags) {
    Shift s{false, false, false};
    for (std::size_t j = 0; j < flags.size() && j < kMaxDim; ++j) s[j] = flags[j];
    return s;
}

DyadicCube make_cube(int dim, int level, const std::vector<std::int64_t>& index,
                     const std::vector<bool>& shift) {
    DyadicCube q;
    q.dim = dim;
    q.level = level;
    for (std::size_t j = 0; j < index.size() && j < kMaxDim; ++j) q.index[j] = index[j];
    q.shift = shift_from_list(shift);
    return q;
}

}  // namespace

PYBIND11_MODULE(maxlab, m) {
    m.doc() = "Dyadic maximal operators, weight characteristics and Carleson sequences "
              "on discretized weights over the unit cube";

    py::class_<DyadicCube>(m, "DyadicCube")
        .def(py::init(&make_cube), py::arg("dim") = 1, py::arg("level") = 0,
             py::arg("index") = std::vector<std::int64_t>{0},
             py::arg("shift") = std::vector<bool>{})
        .def_readonly("dim", &DyadicCube::dim)
        .def_readonly("level", &DyadicCube::level)
        .def_property_readonly("index",
                               [](const DyadicCube& q) {
                                   return std::vector<std::int64_t>(
                                       q.index.begin(), q.index.begin() + q.dim);
                               })
        .def_property_readonly("shifted", &DyadicCube::is_shifted)
        .def_property_readonly("side", &DyadicCube::side_double)
        .def("corner",
             [](const DyadicCube& q, int axis) { return to_double(q.corner(axis)); })
        .def("__repr__", &DyadicCube::to_string)
        .def("__eq__", &DyadicCube::operator==);

    m.def(
        "children",
        [](const DyadicCube& q, int max_level) { return children(q, max_level); },
        py::arg("cube"), py::arg("max_level"));
    m.def("parent", &parent, py::arg("cube"));
    m.def(
        "shifted_cover",
        [](const std::vector<double>& corner, double side, int den) {
            ArbitraryCube q;
            q.dim = int(corner.size());
            q.side = Rational(std::int64_t(std::llround(side * den)), den);
            for (std::size_t j = 0; j < corner.size(); ++j)
                q.corner[j] = Rational(std::int64_t(std::llround(corner[j] * den)), den);
            return shifted_cover(q);
        },
        py::arg("corner"), py::arg("side"), py::arg("den") = 720720,
        "Cover of the rational cube corner + [0, side)^n; coordinates are read "
        "as multiples of 1/den.");
    m.def(
        "enumerate_cubes",
        [](int n, const std::vector<bool>& beta, int k0, int k1) {
            return enumerate_cubes(n, shift_from_list(beta), k0, k1);
        },
        py::arg("n"), py::arg("beta"), py::arg("k0"), py::arg("k1"));

    py::class_<GridFunction>(m, "GridFunction")
        .def(py::init<int, int, std::vector<double>>(), py::arg("n"), py::arg("L"),
             py::arg("values"))
        .def_static("constant", &GridFunction::constant)
        .def_static("indicator", &GridFunction::indicator)
        .def_property_readonly("n", &GridFunction::dim)
        .def_property_readonly("L", &GridFunction::resolution)
        .def_property_readonly("values", &GridFunction::values)
        .def("mass", &GridFunction::mass, py::arg("cube"))
        .def("total_mass", &GridFunction::total_mass)
        .def("to_json", &grid_to_json)
        .def("to_csv", &grid_to_csv);

    py::class_<Weight, GridFunction>(m, "Weight")
        .def(py::init<int, int, std::vector<double>>(), py::arg("n"), py::arg("L"),
             py::arg("values"))
        .def_static("constant", &Weight::constant);

    m.def("grid_from_json", &grid_from_json);
    m.def("grid_from_csv", &grid_from_csv);

    m.def("average", &average, py::arg("f"), py::arg("cube"));
    m.def("weighted_average", &weighted_average, py::arg("f"), py::arg("sigma"),
          py::arg("cube"));
    m.def("exp_mean_inverse", &exp_mean_inverse, py::arg("sigma"), py::arg("cube"));
    m.def("lp_norm", &lp_norm, py::arg("f"), py::arg("sigma"), py::arg("p"));

    py::class_<ExponentConfig>(m, "ExponentConfig")
        .def(py::init<int, int, std::vector<double>, double, double, std::optional<double>>(),
             py::arg("n"), py::arg("m"), py::arg("p_list"), py::arg("q"), py::arg("alpha"),
             py::arg("p") = std::nullopt)
        .def_property_readonly("p", &ExponentConfig::p)
        .def_property_readonly("q", &ExponentConfig::q)
        .def_property_readonly("alpha", &ExponentConfig::alpha)
        .def("conjugate", &ExponentConfig::conjugate);

    m.def("dyadic_maximal", &dyadic_maximal, py::arg("f"));
    m.def("weighted_dyadic_maximal", &weighted_dyadic_maximal, py::arg("f"), py::arg("sigma"));
    m.def(
        "multilinear_fractional_dyadic",
        [](const std::vector<GridFunction>& fs, const ExponentConfig& cfg,
           const std::vector<bool>& beta) {
            return multilinear_fractional_dyadic(fs, cfg, shift_from_list(beta));
        },
        py::arg("fs"), py::arg("cfg"), py::arg("beta") = std::vector<bool>{});
    m.def(
        "multilinear_fractional_approx",
        [](const std::vector<GridFunction>& fs, const ExponentConfig& cfg) {
            return multilinear_fractional_approx(fs, cfg);
        },
        py::arg("fs"), py::arg("cfg"));
    m.def(
        "multilinear_weighted_maximal",
        [](const std::vector<GridFunction>& fs, const std::vector<Weight>& sigmas) {
            return multilinear_weighted_maximal(fs, sigmas);
        },
        py::arg("fs"), py::arg("sigmas"));
    m.def(
        "lattice_cube_maximal",
        [](const std::vector<GridFunction>& fs, const ExponentConfig& cfg) {
            return lattice_cube_maximal(fs, cfg);
        },
        py::arg("fs"), py::arg("cfg"));
    m.def("packing_gamma", &packing_gamma, py::arg("cfg"), py::arg("a"));
    m.def("default_cz_base", &default_cz_base, py::arg("cfg"));

    py::class_<StoppingCube>(m, "StoppingCube")
        .def_readonly("cube", &StoppingCube::cube)
        .def_readonly("value", &StoppingCube::value)
        .def_readonly("e_cells", &StoppingCube::e_cells)
        .def_readonly("bracket_exact", &StoppingCube::bracket_exact);
    py::class_<CZLevel>(m, "CZLevel")
        .def_readonly("k", &CZLevel::k)
        .def_readonly("threshold", &CZLevel::threshold)
        .def_readonly("cubes", &CZLevel::cubes);
    py::class_<CZDecomposition>(m, "CZDecomposition")
        .def_readonly("base", &CZDecomposition::base)
        .def_readonly("gamma", &CZDecomposition::gamma)
        .def_readonly("levels", &CZDecomposition::levels)
        .def_property_readonly("empty", &CZDecomposition::empty)
        .def("cube_count", &CZDecomposition::cube_count);
    m.def(
        "cz_decomposition",
        [](const std::vector<GridFunction>& fs, const std::vector<Weight>& sigmas,
           const ExponentConfig& cfg, double a) {
            return cz_decomposition(fs, sigmas, cfg, a);
        },
        py::arg("fs"), py::arg("sigmas"), py::arg("cfg"), py::arg("a"));

    py::class_<ConstantResult>(m, "ConstantResult")
        .def_readonly("value", &ConstantResult::value)
        .def_readonly("argmax", &ConstantResult::argmax)
        .def("__float__", [](const ConstantResult& r) { return r.value; })
        .def("__repr__", [](const ConstantResult& r) {
            return format_double(r.value) + " at " + r.argmax.to_string();
        });

    m.def("ap_constant", &ap_constant, py::arg("w"), py::arg("p"));
    m.def("joint_ap_constant", &joint_ap_constant, py::arg("omega"), py::arg("sigma"),
          py::arg("p"));
    m.def("apq_constant", &apq_constant, py::arg("w"), py::arg("p"), py::arg("q"));
    m.def("bp_constant", &bp_constant, py::arg("omega"), py::arg("sigma"), py::arg("p"));
    m.def("ainf_fw_constant", &ainf_fw_constant, py::arg("w"));
    m.def("ainf_hr_constant", &ainf_hr_constant, py::arg("w"));
    m.def(
        "derived_weight",
        [](const std::vector<Weight>& sigmas, const ExponentConfig& cfg) {
            return derived_weight(sigmas, cfg);
        },
        py::arg("sigmas"), py::arg("cfg"));
    m.def(
        "ap_vec_constant",
        [](const std::vector<Weight>& s, const ExponentConfig& c) {
            return ap_vec_constant(s, c);
        },
        py::arg("sigmas"), py::arg("cfg"));
    m.def(
        "apq_vec_constant",
        [](const std::vector<Weight>& s, const Weight& o, const ExponentConfig& c) {
            return apq_vec_constant(s, o, c);
        },
        py::arg("sigmas"), py::arg("omega"), py::arg("cfg"));
    m.def(
        "bpq_vec_constant",
        [](const std::vector<Weight>& s, const Weight& o, const ExponentConfig& c) {
            return bpq_vec_constant(s, o, c);
        },
        py::arg("sigmas"), py::arg("omega"), py::arg("cfg"));
    m.def(
        "wpinf_constant",
        [](const std::vector<Weight>& s, const ExponentConfig& c) {
            return wpinf_constant(s, c);
        },
        py::arg("sigmas"), py::arg("cfg"));
    m.def(
        "rhp_constant",
        [](const std::vector<Weight>& s, const ExponentConfig& c) {
            return rhp_constant(s, c);
        },
        py::arg("sigmas"), py::arg("cfg"));
    py::enum_<SawyerKind>(m, "SawyerKind")
        .value("Linear", SawyerKind::Linear)
        .value("LiSun", SawyerKind::LiSun)
        .value("Nu", SawyerKind::Nu);
    m.def(
        "sawyer_testing_constant",
        [](SawyerKind kind, const std::vector<Weight>& s, const Weight& o,
           const ExponentConfig& c) { return sawyer_testing_constant(kind, s, o, c); },
        py::arg("kind"), py::arg("sigmas"), py::arg("omega"), py::arg("cfg"));

    py::class_<CarlesonSequence>(m, "CarlesonSequence")
        .def(py::init<int, int>(), py::arg("n"), py::arg("L"))
        .def("set", &CarlesonSequence::set)
        .def("add", &CarlesonSequence::add)
        .def("at", &CarlesonSequence::at)
        .def_property_readonly("support_size", &CarlesonSequence::support_size)
        .def("to_json", &carleson_to_json);
    m.def("carleson_from_json", &carleson_from_json, py::arg("text"), py::arg("n"),
          py::arg("L"));
    py::class_<CarlesonConstantResult>(m, "CarlesonConstantResult")
        .def_readonly("value", &CarlesonConstantResult::value)
        .def_readonly("argmax", &CarlesonConstantResult::argmax)
        .def("__float__", [](const CarlesonConstantResult& r) { return r.value; });
    m.def("carleson_constant", &carleson_constant, py::arg("seq"), py::arg("sigma"),
          py::arg("alpha"));
    m.def("embedding_sum", &embedding_sum, py::arg("seq"), py::arg("sigma"), py::arg("f"),
          py::arg("p"), py::arg("alpha"));
    m.def(
        "multilinear_embedding_sum",
        [](const CarlesonSequence& seq, const std::vector<Weight>& s,
           const std::vector<GridFunction>& fs, const ExponentConfig& c, double alpha) {
            return multilinear_embedding_sum(seq, s, fs, c, alpha);
        },
        py::arg("seq"), py::arg("sigmas"), py::arg("fs"), py::arg("cfg"), py::arg("alpha"));
    m.def(
        "holder_embedding_sum",
        [](const CarlesonSequence& seq, const Weight& s, const std::vector<GridFunction>& fs,
           const std::vector<double>& qs, const std::vector<double>& ps) {
            return holder_embedding_sum(seq, s, fs, qs, ps);
        },
        py::arg("seq"), py::arg("sigma"), py::arg("fs"), py::arg("q_list"),
        py::arg("p_list"));
    m.def(
        "sequence_from_cz",
        [](const CZDecomposition& cz, const std::vector<Weight>& s, const Weight& o,
           const ExponentConfig& c) { return sequence_from_cz(cz, s, o, c); },
        py::arg("cz"), py::arg("sigmas"), py::arg("omega"), py::arg("cfg"));

    py::class_<HaarSymbol>(m, "HaarSymbol")
        .def(py::init<int>(), py::arg("L"))
        .def("set", &HaarSymbol::set)
        .def("at", &HaarSymbol::at)
        .def("to_json", &haar_to_json);
    m.def("haar_from_json", &haar_from_json, py::arg("text"), py::arg("L"));
    m.def("paraproduct_apply", &paraproduct_apply, py::arg("phi"), py::arg("b"));
    m.def("paraproduct_carleson", &paraproduct_carleson, py::arg("phi"), py::arg("p"));
    py::class_<NormEstimate>(m, "NormEstimate")
        .def_readonly("value", &NormEstimate::value)
        .def_readonly("argmax", &NormEstimate::argmax)
        .def("__float__", [](const NormEstimate& r) { return r.value; });
    m.def("paraproduct_norm_estimate", &paraproduct_norm_estimate, py::arg("phi"),
          py::arg("p"), py::arg("trials"), py::arg("seed") = 0);

    m.def(
        "generate_weight",
        [](const std::string& spec, std::uint64_t seed, int n, int L) {
            return generate_weight(parse_weight_spec(spec), seed, n, L);
        },
        py::arg("spec"), py::arg("seed"), py::arg("n"), py::arg("L"));
    m.def(
        "operator_norm_estimate",
        [](const std::vector<Weight>& sigmas, const Weight& omega, const ExponentConfig& cfg,
           int random_trials, std::uint64_t seed) {
            return operator_norm_estimate(sigmas, omega, cfg, random_trials, seed);
        },
        py::arg("sigmas"), py::arg("omega"), py::arg("cfg"), py::arg("random_trials") = 16,
        py::arg("seed") = 0);

    py::class_<VerificationReport>(m, "VerificationReport")
        .def_property_readonly("theorem",
                               [](const VerificationReport& r) { return r.theorem; })
        .def_property_readonly("passed", [](const VerificationReport& r) { return r.pass; })
        .def_readonly("max_ratio", &VerificationReport::max_ratio)
        .def_readonly("argmax", &VerificationReport::argmax)
        .def_readonly("c_tracked", &VerificationReport::c_tracked)
        .def("to_json", &report_to_json)
        .def("to_csv", &report_to_csv)
        .def("__bool__", [](const VerificationReport& r) { return r.pass; });
    m.def(
        "verify_theorem",
        [](const std::string& id, int trials, std::uint64_t seed, int L) {
            ExperimentConfig c = default_config(theorem_from_string(id));
            if (trials > 0) c.trials = trials;
            if (L > 0) c.L = L;
            c.seed = seed;
            return verify_theorem(c);
        },
        py::arg("theorem"), py::arg("trials") = -1, py::arg("seed") = 0, py::arg("L") = -1);
    m.def("theorem_ids", [] {
        std::vector<std::string> out;
        for (TheoremId id : all_theorems()) out.push_back(to_string(id));
        return out;
    });
}
