#include "plateaulab/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <string>
#include <thread>

#include "plateaulab/models.hpp"

namespace plateaulab {

const char* to_string(ExperimentKind kind) {
    switch (kind) {
        case ExperimentKind::trace_distance: return "trace_distance";
        case ExperimentKind::grad_unitary: return "grad_unitary";
        case ExperimentKind::grad_qbm: return "grad_qbm";
    }
    return "?";
}

const char* to_string(ModelKind model) {
    switch (model) {
        case ModelKind::gue_t10: return "gue_t10";
        case ModelKind::unitary: return "unitary";
        case ModelKind::qbm_normalized: return "qbm_normalized";
        case ModelKind::haar: return "haar";
    }
    return "?";
}

std::optional<ExperimentKind> experiment_kind_from_string(std::string_view s) {
    if (s == "trace_distance") return ExperimentKind::trace_distance;
    if (s == "grad_unitary") return ExperimentKind::grad_unitary;
    if (s == "grad_qbm") return ExperimentKind::grad_qbm;
    return std::nullopt;
}

std::optional<ModelKind> model_kind_from_string(std::string_view s) {
    if (s == "gue_t10") return ModelKind::gue_t10;
    if (s == "unitary") return ModelKind::unitary;
    if (s == "qbm_normalized") return ModelKind::qbm_normalized;
    if (s == "haar") return ModelKind::haar;
    return std::nullopt;
}

void ExperimentConfig::validate() const {
    std::vector<std::string> issues;
    if (n_v < 1) issues.push_back("n_v: must be at least 1");
    if (n_h_min < 0) issues.push_back("n_h.min: must be at least 0");
    if (n_h_max < n_h_min) issues.push_back("n_h.max: must be at least n_h.min");
    if (n_v >= 1 && n_h_max >= n_h_min && n_v + n_h_max > kMaxRegisterQubits)
        issues.push_back("n_h.max: register of " + std::to_string(n_v + n_h_max) +
                         " qubits exceeds the " + std::to_string(kMaxRegisterQubits) +
                         "-qubit resource limit");
    if (instances < 1) issues.push_back("instances: must be at least 1");
    if (bins < 1) issues.push_back("bins: must be at least 1");
    if (!(fd_step > 0.0) || !std::isfinite(fd_step)) issues.push_back("fd_step: must be positive");
    if (!std::isfinite(evolution_time)) issues.push_back("evolution_time: must be finite");

    const auto check_dist = [&issues](const CoeffDistribution& d, const char* name) {
        try {
            d.validate();
        } catch (const Error& e) {
            issues.push_back(std::string("distributions.") + name + ": " + e.what());
        }
    };
    check_dist(onsite, "onsite");
    check_dist(offsite, "offsite");
    check_dist(init, "init");

    if (kind == ExperimentKind::grad_unitary && model != ModelKind::unitary)
        issues.push_back("model: experiment grad_unitary requires model unitary");
    if (kind == ExperimentKind::grad_qbm && model != ModelKind::qbm_normalized)
        issues.push_back("model: experiment grad_qbm requires model qbm_normalized");

    if (!issues.empty()) throw ConfigError(std::move(issues));
}

ExperimentConfig default_config(ExperimentKind kind, ModelKind model) {
    ExperimentConfig cfg;
    cfg.kind = kind;
    cfg.model = model;
    if (kind == ExperimentKind::trace_distance && model == ModelKind::unitary) {
        cfg.onsite = CoeffDistribution::make_uniform(0.0, 1.0);
        cfg.offsite = CoeffDistribution::make_uniform(0.0, 1.0);
    }
    return cfg;
}

namespace {

// Stream indices keep every draw independent of thread schedule: one
// stream per (n_h, instance) plus a reserved stream per cell for shared
// data such as training targets.
std::uint64_t instance_stream(int n_h, int instance) {
    return (static_cast<std::uint64_t>(n_h) << 32) | static_cast<std::uint64_t>(instance);
}

std::uint64_t cell_stream(int n_h) {
    return (1ull << 62) | (static_cast<std::uint64_t>(n_h) << 32);
}

void parallel_for(int count, int threads, const std::function<void(int)>& body) {
    threads = std::max(1, std::min(threads, count));
    if (threads == 1) {
        for (int i = 0; i < count; ++i) body(i);
        return;
    }
    std::atomic<int> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (int t = 0; t < threads; ++t)
        pool.emplace_back([&] {
            for (;;) {
                const int i = next.fetch_add(1);
                if (i >= count) return;
                try {
                    body(i);
                } catch (...) {
                    std::lock_guard lock(error_mutex);
                    if (!error) error = std::current_exception();
                    next.store(count);
                    return;
                }
            }
        });
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

double sample_variance(std::span<const double> v, double mean) {
    if (v.size() < 2) return 0.0;
    double acc = 0.0;
    for (double x : v) acc += (x - mean) * (x - mean);
    return acc / (static_cast<double>(v.size()) - 1.0);
}

SummaryRow make_summary(const ExperimentConfig& cfg, int n_h, std::span<const double> values) {
    SummaryRow row;
    row.model = cfg.model;
    row.n_h = n_h;
    row.count = static_cast<int>(values.size());
    double acc = 0.0;
    for (double x : values) acc += x;
    row.mean = acc / static_cast<double>(values.size());
    row.variance = sample_variance(values, row.mean);
    row.hist_peak = histogram_peak(values, cfg.bins).peak;
    row.bound = bound_curve(BipartiteDims(cfg.n_v, n_h));
    return row;
}

// Distance to the maximally mixed visible state for one sampled instance.
double trace_sample(const ExperimentConfig& cfg, const BipartiteDims& dims,
                    std::span<const ComplexMatrix> terms, Rng& rng) {
    const int d = dims.total_dim();
    switch (cfg.model) {
        case ModelKind::haar:
            return mixedness_distance(pure_density(haar_state(dims, rng)), dims);
        case ModelKind::gue_t10: {
            const Spectrum s = hermitian_eig(gue_hamiltonian(d, rng));
            // exp(-i H t)|0...0> through the spectrum: the column of
            // amplitudes is U diag(e^{-i lambda t}) U^dag e_0.
            StateVector amp(d);
            for (int j = 0; j < d; ++j) {
                const double ph = -cfg.evolution_time * s.eigenvalues[j];
                amp[j] = Complex(std::cos(ph), std::sin(ph)) * std::conj(s.eigenvectors(0, j));
            }
            StateVector psi(d, Complex(0.0));
            for (int i = 0; i < d; ++i) {
                Complex acc = 0.0;
                for (int j = 0; j < d; ++j) acc += s.eigenvectors(i, j) * amp[j];
                psi[i] = acc;
            }
            return mixedness_distance(pure_density(psi), dims);
        }
        case ModelKind::unitary: {
            const TwoLocalHamiltonian h = sample_two_local(dims.n_v + dims.n_h, cfg.onsite, cfg.offsite, rng);
            const StateVector psi = unitary_qnn_state(terms, h.coefficients, d);
            return mixedness_distance(pure_density(psi), dims);
        }
        case ModelKind::qbm_normalized: {
            BoltzmannModel m;
            m.dims = dims;
            m.hamiltonian = sample_two_local(dims.n_v + dims.n_h, cfg.onsite, cfg.offsite, rng);
            m.normalize = true;
            return mixedness_distance(boltzmann_state(m, terms), dims);
        }
    }
    throw Error("trace_sample: unreachable model");
}

}  // namespace

TraceSweepResult run_trace_distance_sweep(const ExperimentConfig& cfg, int threads) {
    cfg.validate();
    if (cfg.kind != ExperimentKind::trace_distance)
        throw ConfigError({"experiment: run_trace_distance_sweep needs kind trace_distance"});

    const bool needs_terms = cfg.model == ModelKind::unitary || cfg.model == ModelKind::qbm_normalized;
    TraceSweepResult out;
    for (int n_h = cfg.n_h_min; n_h <= cfg.n_h_max; ++n_h) {
        const BipartiteDims dims(cfg.n_v, n_h);
        std::vector<ComplexMatrix> terms;
        if (needs_terms) terms = enumerate_two_local_terms(cfg.n_v + n_h);

        std::vector<TraceRecord> cell(cfg.instances);
        parallel_for(cfg.instances, threads, [&](int i) {
            const std::uint64_t seed = derive_stream_seed(cfg.seed, instance_stream(n_h, i));
            Rng rng(seed);
            cell[i] = TraceRecord{n_h, i, seed, trace_sample(cfg, dims, terms, rng)};
        });

        std::vector<double> values(cell.size());
        for (std::size_t i = 0; i < cell.size(); ++i) values[i] = cell[i].value;
        out.summaries.push_back(make_summary(cfg, n_h, values));
        out.records.insert(out.records.end(), cell.begin(), cell.end());
    }
    return out;
}

GradientSweepResult run_gradient_decay_sweep(const ExperimentConfig& cfg, int threads) {
    cfg.validate();
    if (cfg.kind != ExperimentKind::grad_unitary && cfg.kind != ExperimentKind::grad_qbm)
        throw ConfigError({"experiment: run_gradient_decay_sweep needs a gradient experiment kind"});

    GradientSweepResult out;
    std::vector<double> xs, variances;
    for (int n_h = cfg.n_h_min; n_h <= cfg.n_h_max; ++n_h) {
        const BipartiteDims dims(cfg.n_v, n_h);
        const int n = cfg.n_v + n_h;
        const int d = dims.total_dim();
        const auto terms = enumerate_two_local_terms(n);

        // Shared training target for the cell, drawn from its own stream.
        ComplexMatrix target;
        if (cfg.kind == ExperimentKind::grad_unitary) {
            Rng trng(derive_stream_seed(cfg.seed, cell_stream(n_h)));
            const TwoLocalHamiltonian th = sample_two_local(n, cfg.onsite, cfg.offsite, trng);
            target = thermal_state(assemble_hamiltonian(th, terms));
        }

        std::vector<GradientRecord> cell(cfg.instances);
        parallel_for(cfg.instances, threads, [&](int i) {
            const std::uint64_t seed = derive_stream_seed(cfg.seed, instance_stream(n_h, i));
            Rng rng(seed);
            GradientRecord rec;
            rec.model = to_string(cfg.model);
            rec.dims = dims;
            rec.instance = i;
            rec.seed = seed;
            if (cfg.kind == ExperimentKind::grad_unitary) {
                std::vector<double> theta(terms.size());
                for (auto& t : theta) t = cfg.init.sample(rng);
                const auto objective = [&](const std::vector<double>& th) {
                    return fidelity(unitary_qnn_state(terms, th, d), target);
                };
                rec.gradient = finite_diff_gradient(objective, theta, cfg.fd_step);
            } else {
                const TwoLocalHamiltonian h = sample_two_local(n, cfg.onsite, cfg.offsite, rng);
                const ComplexMatrix hraw = assemble_hamiltonian(h, terms);
                const double nrm = operator_norm(hraw);
                ComplexMatrix h0 = hraw;
                if (nrm > 0.0) h0 *= 1.0 / nrm;
                const ComplexMatrix rho0 = thermal_state(h0);
                // One-sided quotient: distance moved per unit coefficient
                // step, with the perturbed matrix reusing the base
                // normalization constant.
                const double scale = cfg.fd_step / (nrm > 0.0 ? nrm : 1.0);
                rec.gradient.resize(terms.size());
                for (std::size_t k = 0; k < terms.size(); ++k) {
                    ComplexMatrix hp = h0;
                    for (std::size_t idx = 0; idx < hp.size(); ++idx)
                        hp.data()[idx] += scale * terms[k].data()[idx];
                    rec.gradient[k] = trace_distance(rho0, thermal_state(hp)) / cfg.fd_step;
                }
            }
            rec.inf_norm = inf_norm(rec.gradient);
            cell[i] = std::move(rec);
        });

        std::vector<double> norms(cell.size());
        for (std::size_t i = 0; i < cell.size(); ++i) norms[i] = cell[i].inf_norm;
        out.summaries.push_back(make_summary(cfg, n_h, norms));
        xs.push_back(static_cast<double>(n_h));
        variances.push_back(out.summaries.back().variance);
        for (auto& rec : cell) out.records.push_back(std::move(rec));
    }
    out.fit = semilog_fit(xs, variances);
    return out;
}

Histogram histogram_peak(std::span<const double> data, int bins) {
    if (data.empty()) throw Error("histogram_peak: empty data");
    if (bins < 1) throw Error("histogram_peak: bins must be at least 1");
    const auto [mn_it, mx_it] = std::minmax_element(data.begin(), data.end());
    const double mn = *mn_it, mx = *mx_it;

    Histogram h;
    if (mn == mx) {
        h.edges = {mn, mx};
        h.counts = {static_cast<int>(data.size())};
        h.peak = mn;
        return h;
    }

    const double width = (mx - mn) / bins;
    h.edges.resize(bins + 1);
    for (int k = 0; k <= bins; ++k) h.edges[k] = mn + k * width;
    h.edges[bins] = mx;
    h.counts.assign(bins, 0);
    for (double x : data) {
        const int idx = std::min(static_cast<int>((x - mn) / width), bins - 1);
        ++h.counts[idx];
    }
    int best = 0;
    for (int k = 1; k < bins; ++k)
        if (h.counts[k] > h.counts[best]) best = k;
    h.peak = 0.5 * (h.edges[best] + h.edges[best + 1]);
    return h;
}

FitResult semilog_fit(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw DimensionError("semilog_fit: x and y sizes differ");
    if (x.size() < 2) throw Error("semilog_fit: need at least two points");
    const std::size_t n = x.size();

    std::vector<double> logs(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (!(y[i] > 0.0))
            throw Error("semilog_fit: y values must be positive, got " + std::to_string(y[i]));
        logs[i] = std::log(y[i]);
    }

    double mx = 0.0, ml = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += x[i];
        ml += logs[i];
    }
    mx /= static_cast<double>(n);
    ml /= static_cast<double>(n);

    double sxx = 0.0, sxl = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxl += (x[i] - mx) * (logs[i] - ml);
    }
    if (sxx == 0.0) throw Error("semilog_fit: x values are all equal");

    FitResult fit;
    fit.slope = sxl / sxx;
    fit.intercept = ml - fit.slope * mx;
    double ss_res = 0.0, ss_tot = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double resid = logs[i] - (fit.intercept + fit.slope * x[i]);
        ss_res += resid * resid;
        ss_tot += (logs[i] - ml) * (logs[i] - ml);
    }
    fit.r_squared = ss_tot == 0.0 ? 1.0 : std::clamp(1.0 - ss_res / ss_tot, 0.0, 1.0);
    fit.x.assign(x.begin(), x.end());
    return fit;
}

double bound_curve(const BipartiteDims& dims) {
    return 0.5 * std::sqrt(static_cast<double>(dims.visible_dim()) /
                           static_cast<double>(dims.hidden_dim()));
}

double tail_fraction(std::span<const double> data, double center, double epsilon) {
    if (data.empty()) throw Error("tail_fraction: empty data");
    if (!(epsilon > 0.0)) throw Error("tail_fraction: epsilon must be positive");
    std::size_t count = 0;
    for (double x : data)
        if (std::abs(x - center) >= epsilon) ++count;
    return static_cast<double>(count) / static_cast<double>(data.size());
}

}  // namespace plateaulab
