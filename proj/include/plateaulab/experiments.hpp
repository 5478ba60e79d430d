#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "plateaulab/ensembles.hpp"
#include "plateaulab/gradients.hpp"

namespace plateaulab {

enum class ExperimentKind { trace_distance, grad_unitary, grad_qbm };
enum class ModelKind { gue_t10, unitary, qbm_normalized, haar };

const char* to_string(ExperimentKind kind);
const char* to_string(ModelKind model);
std::optional<ExperimentKind> experiment_kind_from_string(std::string_view s);
std::optional<ModelKind> model_kind_from_string(std::string_view s);

/// Registers larger than this are refused before any allocation.
inline constexpr int kMaxRegisterQubits = 12;

/// Full description of one sweep: which experiment, which model, the
/// hidden-register range, ensemble laws and numerical knobs.
struct ExperimentConfig {
    ExperimentKind kind = ExperimentKind::trace_distance;
    ModelKind model = ModelKind::haar;
    int n_v = 1;
    int n_h_min = 1;
    int n_h_max = 1;
    int instances = 1;
    std::uint64_t seed = 0;
    double fd_step = 1e-4;
    double evolution_time = 10.0;
    int bins = 50;
    CoeffDistribution onsite = CoeffDistribution::make_normal(0.0, 0.01);
    CoeffDistribution offsite = CoeffDistribution::make_normal(0.0, 1.0);
    CoeffDistribution init = CoeffDistribution::make_normal(0.0, 1.0);

    /// Throws ConfigError listing every violated field.
    void validate() const;

    bool operator==(const ExperimentConfig&) const = default;
};

/// Config with the customary distribution defaults for a kind/model pair:
/// the unitary trace-distance model draws parameters uniform in [0, 1),
/// everything else keeps the normal-law defaults above.
ExperimentConfig default_config(ExperimentKind kind, ModelKind model);

struct TraceRecord {
    int n_h = 0;
    int instance = 0;
    std::uint64_t seed = 0;
    double value = 0.0;
};

/// Per-cell aggregate over one (model, n_h) slice of a sweep.
struct SummaryRow {
    ModelKind model = ModelKind::haar;
    int n_h = 0;
    int count = 0;
    double mean = 0.0;
    double variance = 0.0;
    double hist_peak = 0.0;
    double bound = 0.0;
};

/// Least-squares line through (x, ln y).
struct FitResult {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
    std::vector<double> x;
};

struct TraceSweepResult {
    std::vector<TraceRecord> records;
    std::vector<SummaryRow> summaries;
};

struct GradientSweepResult {
    std::vector<GradientRecord> records;
    std::vector<SummaryRow> summaries;
    FitResult fit;
};

/// Distance-to-maximally-mixed sweep over the hidden-register range.
/// Records are ordered by (n_h, instance) regardless of thread count, and
/// every record can be regenerated alone from its stored seed.
TraceSweepResult run_trace_distance_sweep(const ExperimentConfig& cfg, int threads = 1);

/// Gradient-magnitude sweep; the fit regresses ln(cell variance of the
/// gradient sup norm) on n_h.
GradientSweepResult run_gradient_decay_sweep(const ExperimentConfig& cfg, int threads = 1);

struct Histogram {
    std::vector<double> edges;
    std::vector<int> counts;
    double peak = 0.0;
};

/// Uniform-width histogram over [min, max]; peak is the center of the most
/// populated bin, ties resolving toward the lowest bin.
Histogram histogram_peak(std::span<const double> data, int bins);

/// OLS fit of ln y against x; r_squared is 1 when the log-values carry no
/// variance. Rejects nonpositive y.
FitResult semilog_fit(std::span<const double> x, std::span<const double> y);

/// Concentration ceiling (1/2) sqrt(visible_dim / hidden_dim).
double bound_curve(const BipartiteDims& dims);

/// Fraction of samples at distance >= epsilon from center.
double tail_fraction(std::span<const double> data, double center, double epsilon);

}  // namespace plateaulab
