// Acceptance gate: every release-blocking property in one binary. Each
// criterion prints a single PASS/FAIL line; the exit status is the number
// of failures.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "plateaulab/config.hpp"
#include "plateaulab/gradients.hpp"
#include "plateaulab/models.hpp"
#include "plateaulab/runner.hpp"
#include "test_util.hpp"

using namespace plateaulab;
using plateaulab::testutil::max_abs_diff;
using plateaulab::testutil::random_density;

namespace {

int g_failures = 0;

void report(int index, const char* title, bool pass, const std::string& detail) {
    std::printf("%s  criterion %d (%s): %s\n", pass ? "PASS" : "FAIL", index, title,
                detail.c_str());
    std::fflush(stdout);
    if (!pass) ++g_failures;
}

int worker_threads() {
    return static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
}

std::string fmt(double v) {
    std::ostringstream out;
    out.precision(4);
    out << v;
    return out.str();
}

std::string slurp(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

// 1. Mean distance to the maximally mixed visible state stays under the
//    (1/2) sqrt(D_v / D_h) ceiling (plus sampling slack) for Haar states.
void criterion_haar_bound() {
    ExperimentConfig cfg = default_config(ExperimentKind::trace_distance, ModelKind::haar);
    cfg.n_h_min = 1;
    cfg.n_h_max = 7;
    cfg.instances = 1000;
    cfg.seed = 101;

    const TraceSweepResult res = run_trace_distance_sweep(cfg, /*threads=*/1);
    bool pass = true;
    std::string detail;
    for (const auto& row : res.summaries) {
        const double se = std::sqrt(row.variance / row.count);
        if (row.mean > row.bound + 3.0 * se) {
            pass = false;
            detail += " n_h=" + std::to_string(row.n_h) + " mean " + fmt(row.mean) +
                      " > bound " + fmt(row.bound) + " + 3SE";
        }
    }
    if (pass)
        detail = "mean <= bound + 3 SE for n_h 1..7; worst margin " +
                 fmt(res.summaries.back().bound - res.summaries.back().mean);
    report(1, "haar concentration bound", pass, detail);
}

// 2. Histogram peaks of the three model families shrink monotonically with
//    the hidden register, and the Haar peak is deep in the corner by n_h=5.
//    The unitary network's trace-distance density has a broad, nearly flat
//    top, so the argmax-bin mode needs tens of thousands of samples before
//    adjacent cells separate; the other two families concentrate sharply and
//    a few thousand suffice.
void criterion_model_peaks() {
    const int threads = worker_threads();
    bool pass = true;
    std::string detail;

    for (auto model : {ModelKind::gue_t10, ModelKind::unitary, ModelKind::qbm_normalized}) {
        ExperimentConfig cfg = default_config(ExperimentKind::trace_distance, model);
        cfg.n_h_min = 1;
        cfg.n_h_max = 5;
        cfg.instances = model == ModelKind::unitary ? 30000 : 4000;
        cfg.seed = 202;
        const TraceSweepResult res = run_trace_distance_sweep(cfg, threads);
        for (std::size_t c = 1; c < res.summaries.size(); ++c)
            if (!(res.summaries[c].hist_peak < res.summaries[c - 1].hist_peak)) {
                pass = false;
                detail += std::string(" ") + to_string(model) + " peak rose at n_h=" +
                          std::to_string(res.summaries[c].n_h);
            }
    }

    ExperimentConfig haar = default_config(ExperimentKind::trace_distance, ModelKind::haar);
    haar.n_h_min = 5;
    haar.n_h_max = 5;
    haar.instances = 4000;
    haar.seed = 202;
    const double haar_peak = run_trace_distance_sweep(haar, threads).summaries[0].hist_peak;
    if (!(haar_peak < 0.15)) {
        pass = false;
        detail += " haar peak at n_h=5 is " + fmt(haar_peak);
    }
    if (pass) detail = "peaks strictly decrease for all three models; haar n_h=5 peak " + fmt(haar_peak);
    report(2, "model histogram peaks", pass, detail);
}

// 3. Gradient variance of the unitary network decays exponentially in n_h.
void criterion_unitary_decay() {
    ExperimentConfig cfg = default_config(ExperimentKind::grad_unitary, ModelKind::unitary);
    cfg.n_h_min = 1;
    cfg.n_h_max = 4;
    cfg.instances = 200;
    cfg.seed = 303;

    const GradientSweepResult res = run_gradient_decay_sweep(cfg, worker_threads());
    const bool pass = res.fit.slope < 0.0 && res.fit.r_squared >= 0.7;
    report(3, "unitary gradient decay", pass,
           "slope " + fmt(res.fit.slope) + ", r^2 " + fmt(res.fit.r_squared));
}

// 4. Same decay for the thermal-state model under coefficient perturbations.
void criterion_qbm_decay() {
    ExperimentConfig cfg = default_config(ExperimentKind::grad_qbm, ModelKind::qbm_normalized);
    cfg.n_h_min = 1;
    cfg.n_h_max = 4;
    cfg.instances = 100;
    cfg.seed = 404;

    const GradientSweepResult res = run_gradient_decay_sweep(cfg, worker_threads());
    const bool pass = res.fit.slope < 0.0;
    report(4, "qbm gradient decay", pass,
           "slope " + fmt(res.fit.slope) + ", r^2 " + fmt(res.fit.r_squared));
}

// 5. The divided-difference derivative agrees with central differences to
//    1e-5 relative, and halving the step shrinks the error about fourfold.
void criterion_gradient_oracle() {
    Rng rng(505);
    const BipartiteDims dims(1, 1);
    const auto terms = enumerate_two_local_terms(2);
    const auto onsite = CoeffDistribution::make_normal(0.0, 0.01);
    const auto offsite = CoeffDistribution::make_normal(0.0, 1.0);
    const double step = 1e-4;

    int bad_rel = 0;
    std::vector<double> ratios;
    for (int trial = 0; trial < 100; ++trial) {
        ComplexMatrix h(4), hk(4), obs(2);
        double exact = 0.0;
        // Redraw until the derivative is well away from zero so the
        // relative comparison is meaningful.
        do {
            const auto ham = sample_two_local(2, onsite, offsite, rng);
            h = assemble_hamiltonian(ham, terms);
            h *= 1.0 / operator_norm(h);
            hk = terms[static_cast<std::size_t>(rng.uniform() * terms.size())];
            obs = pauli(static_cast<int>(rng.uniform() * 3.0));
            exact = exact_thermal_derivative(h, hk, obs, dims);
        } while (std::abs(exact) < 1e-3);

        const auto f = [&](const std::vector<double>& t) {
            ComplexMatrix hp = hk;
            hp *= t[0];
            hp += h;
            return visible_expectation(obs, thermal_state(hp), dims);
        };
        const double g1 = finite_diff_gradient(f, {0.0}, step)[0];
        const double g2 = finite_diff_gradient(f, {0.0}, step / 2.0)[0];

        if (std::abs(g1 - exact) / std::abs(exact) > 1e-5) ++bad_rel;
        const double e1 = std::abs(g1 - exact);
        const double e2 = std::abs(g2 - exact);
        if (e2 > 0.0) ratios.push_back(e1 / e2);
    }

    std::sort(ratios.begin(), ratios.end());
    const double median = ratios[ratios.size() / 2];
    const bool pass = bad_rel == 0 && median >= 2.5 && median <= 6.0;
    report(5, "finite differences vs exact derivative", pass,
           std::to_string(bad_rel) + "/100 beyond 1e-5 relative; median step ratio " + fmt(median));
}

// 6. First-order eigenvector corrections leave a second-order residual:
//    the residual at 1e-3 is at most 4x the quadratic extrapolation from 5e-4.
void criterion_perturbation_scaling() {
    Rng rng(606);
    const int dim = 8;
    int violations = 0;
    int checked = 0;

    while (checked < 50) {
        const ComplexMatrix h = gue_hamiltonian(dim, rng);
        const ComplexMatrix hk = gue_hamiltonian(dim, rng);
        const Spectrum s = hermitian_eig(h);

        double min_gap = 1e300;
        for (int j = 1; j < dim; ++j)
            min_gap = std::min(min_gap, s.eigenvalues[j] - s.eigenvalues[j - 1]);
        if (min_gap < 1e-4) continue;  // nondegenerate draws only

        const int n = checked % dim;
        const StateVector shift = first_order_eigvec_shift(s, hk, n);

        const auto residual = [&](double theta) {
            ComplexMatrix hp = hk;
            hp *= theta;
            hp += h;
            const Spectrum sp = hermitian_eig(hp);
            Complex overlap = 0.0;
            for (int i = 0; i < dim; ++i)
                overlap += std::conj(sp.eigenvectors(i, n)) * s.eigenvectors(i, n);
            const Complex phase = overlap / std::abs(overlap);
            double worst = 0.0;
            for (int i = 0; i < dim; ++i) {
                const Complex predicted = s.eigenvectors(i, n) + theta * shift[i];
                worst = std::max(worst, std::abs(phase * sp.eigenvectors(i, n) - predicted));
            }
            return worst;
        };

        const double r_half = residual(5e-4);
        const double r_full = residual(1e-3);
        // Quadratic scaling predicts r(1e-3) = 4 r(5e-4).
        if (r_full > 4.0 * (4.0 * r_half)) ++violations;
        ++checked;
    }
    report(6, "eigenvector perturbation scaling", violations == 0,
           std::to_string(violations) + "/50 residuals beyond 4x the quadratic prediction");
}

// 7. Randomized invariant suites, 1000 cases each.
void criterion_invariants() {
    Rng rng(707);
    int violations = 0;
    std::string detail;
    const auto tally = [&](const char* name, int bad) {
        violations += bad;
        if (bad > 0) detail += std::string(" ") + name + ":" + std::to_string(bad);
    };

    {  // relative-entropy chain against the maximally mixed state
        int bad = 0;
        const BipartiteDims dims(1, 1);
        ComplexMatrix mixed = ComplexMatrix::identity(2);
        mixed *= 0.5;
        for (int i = 0; i < 1000; ++i) {
            const ComplexMatrix rho = random_density(4, rng);
            const ComplexMatrix rv = partial_trace_hidden(rho, dims);
            const double t = trace_distance(rv, mixed);
            const double srel = quantum_relative_entropy(rv, mixed);
            const double gap = std::log(2.0) - von_neumann_entropy(rv);
            if (t > std::sqrt(srel / 2.0) + 1e-8) ++bad;
            if (std::abs(srel - gap) > 1e-9) ++bad;
        }
        tally("pinsker", bad);
    }
    {  // flip-operator trace identity
        int bad = 0;
        for (int i = 0; i < 1000; ++i) {
            const int d = 2 + static_cast<int>(rng.uniform() * 2.0);
            ComplexMatrix a(d), b(d);
            for (int r = 0; r < d; ++r)
                for (int c = 0; c < d; ++c) {
                    a(r, c) = rng.complex_normal();
                    b(r, c) = rng.complex_normal();
                }
            const Complex lhs = multiply(flip_operator(d), kron(a, b)).trace();
            const Complex rhs = multiply(a, b).trace();
            if (std::abs(lhs - rhs) > 1e-10) ++bad;
        }
        tally("flip", bad);
    }
    {  // thermal state ignores identity shifts
        int bad = 0;
        for (int i = 0; i < 1000; ++i) {
            const ComplexMatrix h = gue_hamiltonian(4, rng);
            ComplexMatrix shifted = h;
            ComplexMatrix offset = ComplexMatrix::identity(4);
            offset *= 10.0 * (rng.uniform() - 0.5);
            shifted += offset;
            if (max_abs_diff(thermal_state(h), thermal_state(shifted)) > 1e-12) ++bad;
        }
        tally("thermal-shift", bad);
    }
    {  // partial trace preserves trace and positivity
        int bad = 0;
        const BipartiteDims dims(1, 2);
        for (int i = 0; i < 1000; ++i) {
            const ComplexMatrix rho = random_density(8, rng);
            const ComplexMatrix rv = partial_trace_hidden(rho, dims);
            if (std::abs(rv.trace() - 1.0) > 1e-12) ++bad;
            if (rv.hermiticity_deviation() > 1e-12) ++bad;
            for (double lam : hermitian_eigenvalues(rv))
                if (lam < -1e-12) ++bad;
        }
        tally("partial-trace", bad);
    }
    {  // trace distance is a bounded metric
        int bad = 0;
        for (int i = 0; i < 1000; ++i) {
            const ComplexMatrix a = random_density(4, rng);
            const ComplexMatrix b = random_density(4, rng);
            const ComplexMatrix c = random_density(4, rng);
            const double ab = trace_distance(a, b);
            if (ab < 0.0 || ab > 1.0 + 1e-12) ++bad;
            if (std::abs(ab - trace_distance(b, a)) > 1e-12) ++bad;
            if (ab > trace_distance(a, c) + trace_distance(c, b) + 1e-10) ++bad;
            if (trace_distance(a, a) != 0.0) ++bad;
        }
        tally("metric", bad);
    }
    {  // single-qubit analytic gradient -2 sin(2 theta)
        int bad = 0;
        const auto terms = enumerate_two_local_terms(1);
        const BipartiteDims dims(1, 0);
        const auto expectation = [&](const std::vector<double>& theta) {
            const StateVector psi = unitary_qnn_state(terms, theta, 2);
            return visible_expectation(pauli(2), pure_density(psi), dims);
        };
        for (int i = 0; i < 1000; ++i) {
            const double theta = (i == 0) ? M_PI / 4.0 : 2.0 * M_PI * rng.uniform();
            const auto g = finite_diff_gradient(expectation, {theta, 0.0, 0.0}, 1e-4);
            if (std::abs(g[0] - (-2.0 * std::sin(2.0 * theta))) > 1e-6) ++bad;
        }
        tally("analytic-gradient", bad);
    }

    report(7, "invariant suites", violations == 0,
           violations == 0 ? "0 violations across six 1000-case suites" : detail);
}

// 8. Identical config and seed produce byte-identical records.
void criterion_determinism() {
    namespace fs = std::filesystem;
    const fs::path root = fs::temp_directory_path() / "plateaulab_acceptance";
    fs::remove_all(root);

    bool pass = true;
    std::string detail = "byte-identical records.csv on rerun";

    const char* trace_cfg =
        "experiment = trace_distance\nmodel = haar\nn_h.min = 1\nn_h.max = 3\n"
        "instances = 50\nseed = 7\n";
    const char* grad_cfg =
        "experiment = grad_qbm\nmodel = qbm_normalized\nn_h.min = 1\nn_h.max = 2\n"
        "instances = 10\nseed = 7\n";
    int tag = 0;
    for (const char* text : {trace_cfg, grad_cfg}) {
        const ExperimentConfig cfg = parse_config_text(text);
        const fs::path a = root / ("a" + std::to_string(tag));
        const fs::path b = root / ("b" + std::to_string(tag));
        run_experiment(cfg, a, {.threads = 1});
        run_experiment(cfg, b, {.threads = worker_threads()});
        if (slurp(a / "records.csv") != slurp(b / "records.csv")) {
            pass = false;
            detail = std::string("records.csv differs for ") + to_string(cfg.kind);
        }
        ++tag;
    }
    fs::remove_all(root);
    report(8, "seeded determinism", pass, detail);
}

}  // namespace

int main() {
    const auto started = std::chrono::steady_clock::now();
    criterion_haar_bound();
    criterion_model_peaks();
    criterion_unitary_decay();
    criterion_qbm_decay();
    criterion_gradient_oracle();
    criterion_perturbation_scaling();
    criterion_invariants();
    criterion_determinism();
    const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - started;
    std::printf("%d/8 criteria passed in %.1f s\n", 8 - g_failures, elapsed.count());
    return g_failures;
}
