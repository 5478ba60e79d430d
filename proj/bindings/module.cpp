// Python bindings for the plateaulab core library.
//
// Matrices cross the boundary as square complex128 numpy arrays (anything
// numpy can forcecast, e.g. nested lists or real matrices, is accepted);
// state vectors and gradients are plain sequences. Long-running sweeps drop
// the GIL; functions that call back into Python (finite_diff_gradient,
// func_of_hermitian) keep it.

#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/numpy.h>
#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <cstring>
#include <optional>
#include <sstream>

#include "plateaulab/config.hpp"
#include "plateaulab/errors.hpp"
#include "plateaulab/experiments.hpp"
#include "plateaulab/gradients.hpp"
#include "plateaulab/models.hpp"
#include "plateaulab/runner.hpp"

namespace py = pybind11;
using namespace plateaulab;

namespace pybind11::detail {

// ComplexMatrix <-> square 2-D complex128 ndarray, by copy in both directions.
template <>
struct type_caster<ComplexMatrix> {
    PYBIND11_TYPE_CASTER(ComplexMatrix, const_name("numpy.ndarray"));

    bool load(handle src, bool) {
        auto arr = array_t<Complex, array::c_style | array::forcecast>::ensure(src);
        if (!arr || arr.ndim() != 2 || arr.shape(0) != arr.shape(1) || arr.shape(0) < 1)
            return false;
        value = ComplexMatrix(static_cast<int>(arr.shape(0)));
        std::memcpy(value.data(), arr.data(), sizeof(Complex) * value.size());
        return true;
    }

    static handle cast(const ComplexMatrix& m, return_value_policy, handle) {
        array_t<Complex> arr({static_cast<py::ssize_t>(m.dim()), static_cast<py::ssize_t>(m.dim())});
        std::memcpy(arr.mutable_data(), m.data(), sizeof(Complex) * m.size());
        return arr.release();
    }
};

}  // namespace pybind11::detail

namespace {

std::string dims_repr(const BipartiteDims& d) {
    std::ostringstream out;
    out << "BipartiteDims(n_v=" << d.n_v << ", n_h=" << d.n_h << ")";
    return out.str();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() =
        "Core routines of plateaulab: random Hamiltonian ensembles, quantum neural "
        "network models, reduced-state distance measures, gradient probes and the "
        "sweep drivers behind the command-line tool.";
    m.attr("__version__") = kVersion;

    // Exceptions. Derived classes are registered after the base so their
    // translators are tried first.
    auto& base_exc = py::register_exception<Error>(m, "Error");
    py::register_exception<DimensionError>(m, "DimensionError", base_exc);
    py::register_exception<HermiticityError>(m, "HermiticityError", base_exc);
    py::register_exception<SupportError>(m, "SupportError", base_exc);
    py::register_exception<DegeneracyError>(m, "DegeneracyError", base_exc);
    py::register_exception<NumericError>(m, "NumericError", base_exc);
    py::register_exception<ConfigError>(m, "ConfigError", base_exc);
    py::register_exception<IoError>(m, "IoError", base_exc);

    // Basic types.
    py::class_<BipartiteDims>(m, "BipartiteDims",
                              "Qubit split of a register into visible and hidden parts; the "
                              "visible qubits are the most significant index positions.")
        .def(py::init<int, int>(), py::arg("n_v"), py::arg("n_h"))
        .def_readonly("n_v", &BipartiteDims::n_v)
        .def_readonly("n_h", &BipartiteDims::n_h)
        .def("visible_dim", &BipartiteDims::visible_dim)
        .def("hidden_dim", &BipartiteDims::hidden_dim)
        .def("total_dim", &BipartiteDims::total_dim)
        .def(py::self == py::self)
        .def("__repr__", &dims_repr);

    py::class_<Rng>(m, "Rng",
                    "Deterministic random source; one seed always reproduces one draw "
                    "sequence regardless of platform.")
        .def(py::init<std::uint64_t>(), py::arg("seed"))
        .def("uniform", &Rng::uniform)
        .def("normal", &Rng::normal)
        .def("complex_normal", &Rng::complex_normal)
        .def("next_u64", &Rng::next_u64);

    m.def("derive_stream_seed", &derive_stream_seed, py::arg("base_seed"), py::arg("stream"),
          "Decorrelated per-stream seed derived from a base seed and a stream index.");

    py::class_<Spectrum>(m, "Spectrum", "Hermitian eigendecomposition, eigenvalues ascending.")
        .def_readonly("eigenvalues", &Spectrum::eigenvalues)
        .def_readonly("eigenvectors", &Spectrum::eigenvectors);

    // Linear algebra.
    m.def("hermitian_eig", &hermitian_eig, py::arg("h"));
    m.def("hermitian_eigenvalues", &hermitian_eigenvalues, py::arg("h"));
    m.def("func_of_hermitian", &func_of_hermitian, py::arg("h"), py::arg("f"),
          "Apply a scalar function to a Hermitian matrix through its spectrum.");
    m.def("partial_trace_hidden", &partial_trace_hidden, py::arg("rho"), py::arg("dims"));
    m.def("trace_distance", &trace_distance, py::arg("rho"), py::arg("sigma"));
    m.def("von_neumann_entropy", &von_neumann_entropy, py::arg("rho"));
    m.def("quantum_relative_entropy", &quantum_relative_entropy, py::arg("rho"), py::arg("sigma"));
    m.def(
        "fidelity", [](const StateVector& psi, const ComplexMatrix& rho) { return fidelity(psi, rho); },
        py::arg("psi"), py::arg("rho"));
    m.def("operator_norm", &operator_norm, py::arg("h"));
    m.def("flip_operator", &flip_operator, py::arg("d"));
    m.def("kron", &kron, py::arg("a"), py::arg("b"));
    m.def("pure_density", &pure_density, py::arg("psi"));
    m.def("state_norm", &state_norm, py::arg("psi"));
    m.def("multiply", &multiply, py::arg("a"), py::arg("b"));
    m.def("matvec", &matvec, py::arg("a"), py::arg("x"));

    // Ensembles.
    py::class_<CoeffDistribution> coeff(m, "CoeffDistribution",
                                        "Scalar coefficient law (normal or uniform).");
    py::enum_<CoeffDistribution::Kind>(coeff, "Kind")
        .value("normal", CoeffDistribution::Kind::normal)
        .value("uniform", CoeffDistribution::Kind::uniform);
    coeff.def_static("make_normal", &CoeffDistribution::make_normal, py::arg("mean"),
                     py::arg("variance"))
        .def_static("make_uniform", &CoeffDistribution::make_uniform, py::arg("lo"), py::arg("hi"))
        .def_readwrite("kind", &CoeffDistribution::kind)
        .def_readwrite("mean", &CoeffDistribution::mean)
        .def_readwrite("variance", &CoeffDistribution::variance)
        .def_readwrite("lo", &CoeffDistribution::lo)
        .def_readwrite("hi", &CoeffDistribution::hi)
        .def("sample", &CoeffDistribution::sample, py::arg("rng"))
        .def("validate", &CoeffDistribution::validate)
        .def(py::self == py::self);

    py::class_<TwoLocalHamiltonian>(m, "TwoLocalHamiltonian",
                                    "Coefficients of every onsite and offsite Pauli term on n "
                                    "qubits, flat in enumeration order.")
        .def(py::init<>())
        .def_readwrite("n", &TwoLocalHamiltonian::n)
        .def_readwrite("coefficients", &TwoLocalHamiltonian::coefficients)
        .def_static("onsite_count", &TwoLocalHamiltonian::onsite_count, py::arg("n"))
        .def_static("offsite_count", &TwoLocalHamiltonian::offsite_count, py::arg("n"))
        .def_static("term_count", &TwoLocalHamiltonian::term_count, py::arg("n"))
        .def("validate", &TwoLocalHamiltonian::validate);

    m.def("pauli", &pauli, py::arg("axis"), "Single-qubit Pauli matrix; axis 0, 1, 2 = x, y, z.");
    m.def("enumerate_two_local_terms", &enumerate_two_local_terms, py::arg("n"),
          "All two-local Pauli-string matrices on n qubits in the fixed enumeration order "
          "(onsite site-major with axes x, y, z, then offsite pairs lexicographic with axes "
          "row-major); qubit 0 is the most significant register factor.");
    m.def("sample_two_local", &sample_two_local, py::arg("n"), py::arg("onsite"), py::arg("offsite"),
          py::arg("rng"));
    m.def(
        "assemble_hamiltonian", [](const TwoLocalHamiltonian& h) { return assemble_hamiltonian(h); },
        py::arg("h"));
    m.def(
        "assemble_hamiltonian",
        [](const TwoLocalHamiltonian& h, const std::vector<ComplexMatrix>& terms) {
            return assemble_hamiltonian(h, terms);
        },
        py::arg("h"), py::arg("terms"));
    m.def("haar_unitary", &haar_unitary, py::arg("dim"), py::arg("rng"));
    m.def("haar_state", &haar_state, py::arg("dims"), py::arg("rng"));
    m.def("gue_hamiltonian", &gue_hamiltonian, py::arg("dim"), py::arg("rng"));

    // Models.
    py::class_<UnitaryAnsatz>(m, "UnitaryAnsatz",
                              "Layered unitary network: one rotation per two-local term.")
        .def(py::init<>())
        .def_readwrite("dims", &UnitaryAnsatz::dims)
        .def_readwrite("terms", &UnitaryAnsatz::terms)
        .def_readwrite("theta", &UnitaryAnsatz::theta);

    py::class_<BoltzmannModel>(m, "BoltzmannModel",
                               "Thermal state of a two-local Hamiltonian, optionally normalized "
                               "by its operator norm before exponentiation.")
        .def(py::init<>())
        .def_readwrite("dims", &BoltzmannModel::dims)
        .def_readwrite("hamiltonian", &BoltzmannModel::hamiltonian)
        .def_readwrite("normalize", &BoltzmannModel::normalize);

    m.def(
        "unitary_qnn_state",
        [](const std::vector<ComplexMatrix>& terms, const std::vector<double>& theta, int dim) {
            return unitary_qnn_state(terms, theta, dim);
        },
        py::arg("terms"), py::arg("theta"), py::arg("dim"),
        "prod_k exp(-i theta_k P_k) |0...0> with the product read right-to-left: the highest "
        "term index is applied first, index 0 last.");
    m.def(
        "unitary_qnn_state", [](const UnitaryAnsatz& a) { return unitary_qnn_state(a); },
        py::arg("ansatz"));
    m.def("thermal_state", &thermal_state, py::arg("h"), "exp(-H) / Tr exp(-H).");
    m.def(
        "boltzmann_state", [](const BoltzmannModel& model) { return boltzmann_state(model); },
        py::arg("model"));
    m.def(
        "boltzmann_state",
        [](const BoltzmannModel& model, const std::vector<ComplexMatrix>& terms) {
            return boltzmann_state(model, terms);
        },
        py::arg("model"), py::arg("terms"));
    m.def("visible_expectation", &visible_expectation, py::arg("obs"), py::arg("rho"),
          py::arg("dims"));
    m.def("mixedness_distance", &mixedness_distance, py::arg("rho"), py::arg("dims"),
          "Trace distance between the reduced visible state and I / visible_dim.");
    m.def("volume_law_gap", &volume_law_gap, py::arg("rho"), py::arg("dims"));

    // Gradients.
    py::class_<GradientRecord>(m, "GradientRecord")
        .def_readonly("model", &GradientRecord::model)
        .def_readonly("dims", &GradientRecord::dims)
        .def_readonly("instance", &GradientRecord::instance)
        .def_readonly("seed", &GradientRecord::seed)
        .def_readonly("gradient", &GradientRecord::gradient)
        .def_readonly("inf_norm", &GradientRecord::inf_norm);

    m.def("finite_diff_gradient", &finite_diff_gradient, py::arg("f"), py::arg("theta"),
          py::arg("step"), "Central-difference gradient of a scalar function.");
    m.def("exact_thermal_derivative", &exact_thermal_derivative, py::arg("h"), py::arg("hk"),
          py::arg("obs"), py::arg("dims"),
          "Exact derivative of the visible observable on the thermal state of h along the "
          "Hamiltonian direction hk.");
    m.def("first_order_eigvec_shift", &first_order_eigvec_shift, py::arg("spectrum"), py::arg("hk"),
          py::arg("n"));
    m.def("gap_statistic", &gap_statistic, py::arg("spectrum"));
    m.def(
        "inf_norm", [](const std::vector<double>& v) { return inf_norm(v); }, py::arg("v"));

    // Experiments.
    py::enum_<ExperimentKind>(m, "ExperimentKind")
        .value("trace_distance", ExperimentKind::trace_distance)
        .value("grad_unitary", ExperimentKind::grad_unitary)
        .value("grad_qbm", ExperimentKind::grad_qbm);
    py::enum_<ModelKind>(m, "ModelKind")
        .value("gue_t10", ModelKind::gue_t10)
        .value("unitary", ModelKind::unitary)
        .value("qbm_normalized", ModelKind::qbm_normalized)
        .value("haar", ModelKind::haar);

    py::class_<ExperimentConfig>(m, "ExperimentConfig",
                                 "Full description of one sweep: experiment kind, model, "
                                 "hidden-register range, ensemble laws and numerical knobs.")
        .def(py::init<>())
        .def_readwrite("kind", &ExperimentConfig::kind)
        .def_readwrite("model", &ExperimentConfig::model)
        .def_readwrite("n_v", &ExperimentConfig::n_v)
        .def_readwrite("n_h_min", &ExperimentConfig::n_h_min)
        .def_readwrite("n_h_max", &ExperimentConfig::n_h_max)
        .def_readwrite("instances", &ExperimentConfig::instances)
        .def_readwrite("seed", &ExperimentConfig::seed)
        .def_readwrite("fd_step", &ExperimentConfig::fd_step)
        .def_readwrite("evolution_time", &ExperimentConfig::evolution_time)
        .def_readwrite("bins", &ExperimentConfig::bins)
        .def_readwrite("onsite", &ExperimentConfig::onsite)
        .def_readwrite("offsite", &ExperimentConfig::offsite)
        .def_readwrite("init", &ExperimentConfig::init)
        .def("validate", &ExperimentConfig::validate)
        .def(py::self == py::self);

    m.def("default_config", &default_config, py::arg("kind"), py::arg("model"),
          "Config with the customary distribution defaults for a kind/model pair.");
    m.attr("MAX_REGISTER_QUBITS") = kMaxRegisterQubits;

    py::class_<TraceRecord>(m, "TraceRecord")
        .def_readonly("n_h", &TraceRecord::n_h)
        .def_readonly("instance", &TraceRecord::instance)
        .def_readonly("seed", &TraceRecord::seed)
        .def_readonly("value", &TraceRecord::value);

    py::class_<SummaryRow>(m, "SummaryRow")
        .def_readonly("model", &SummaryRow::model)
        .def_readonly("n_h", &SummaryRow::n_h)
        .def_readonly("count", &SummaryRow::count)
        .def_readonly("mean", &SummaryRow::mean)
        .def_readonly("variance", &SummaryRow::variance)
        .def_readonly("hist_peak", &SummaryRow::hist_peak)
        .def_readonly("bound", &SummaryRow::bound);

    py::class_<FitResult>(m, "FitResult", "Least-squares line through (x, ln y).")
        .def_readonly("slope", &FitResult::slope)
        .def_readonly("intercept", &FitResult::intercept)
        .def_readonly("r_squared", &FitResult::r_squared)
        .def_readonly("x", &FitResult::x);

    py::class_<TraceSweepResult>(m, "TraceSweepResult")
        .def_readonly("records", &TraceSweepResult::records)
        .def_readonly("summaries", &TraceSweepResult::summaries);

    py::class_<GradientSweepResult>(m, "GradientSweepResult")
        .def_readonly("records", &GradientSweepResult::records)
        .def_readonly("summaries", &GradientSweepResult::summaries)
        .def_readonly("fit", &GradientSweepResult::fit);

    py::class_<Histogram>(m, "Histogram")
        .def_readonly("edges", &Histogram::edges)
        .def_readonly("counts", &Histogram::counts)
        .def_readonly("peak", &Histogram::peak);

    m.def("run_trace_distance_sweep", &run_trace_distance_sweep, py::arg("cfg"),
          py::arg("threads") = 1, py::call_guard<py::gil_scoped_release>(),
          "Distance-to-maximally-mixed sweep; records are ordered by (n_h, instance) "
          "independent of thread count.");
    m.def("run_gradient_decay_sweep", &run_gradient_decay_sweep, py::arg("cfg"),
          py::arg("threads") = 1, py::call_guard<py::gil_scoped_release>(),
          "Gradient-magnitude sweep; the fit regresses ln(cell variance of the gradient sup "
          "norm) on n_h.");
    m.def(
        "histogram_peak",
        [](const std::vector<double>& data, int bins) { return histogram_peak(data, bins); },
        py::arg("data"), py::arg("bins"),
        "Uniform histogram over [min, max]; peak is the center of the fullest bin, ties "
        "toward the lowest.");
    m.def(
        "semilog_fit",
        [](const std::vector<double>& x, const std::vector<double>& y) { return semilog_fit(x, y); },
        py::arg("x"), py::arg("y"));
    m.def("bound_curve", &bound_curve, py::arg("dims"),
          "Concentration ceiling (1/2) sqrt(visible_dim / hidden_dim).");
    m.def(
        "tail_fraction",
        [](const std::vector<double>& data, double center, double epsilon) {
            return tail_fraction(data, center, epsilon);
        },
        py::arg("data"), py::arg("center"), py::arg("epsilon"));

    // Config text and files.
    m.def("parse_config_text", &parse_config_text, py::arg("text"),
          "Parse and validate flat `key = value` config text.");
    m.def("load_config", &load_config, py::arg("path"));
    m.def("config_entries", &config_entries, py::arg("cfg"));
    m.def("format_config", &format_config, py::arg("cfg"));

    // Full experiment runs.
    m.def(
        "run_experiment",
        [](const ExperimentConfig& cfg, const std::filesystem::path& out_dir,
           std::optional<std::uint64_t> seed_override, int threads) {
            RunOptions opts;
            opts.seed_override = seed_override;
            opts.threads = threads;
            py::gil_scoped_release release;
            return run_experiment(cfg, out_dir, opts);
        },
        py::arg("cfg"), py::arg("out_dir"), py::arg("seed_override") = std::nullopt,
        py::arg("threads") = 0,
        "Run the configured sweep and write records.csv, summary.csv, fit.csv (gradient "
        "experiments) and manifest.json into out_dir; returns the file names written.");
}
