#include "plateaulab/runner.hpp"

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "plateaulab/config.hpp"
#include "plateaulab/serialize.hpp"

namespace plateaulab {

namespace {

std::string trace_records_csv(const ExperimentConfig& cfg, const TraceSweepResult& result) {
    std::string out = "experiment,model,n_v,n_h,instance,seed,value\n";
    for (const auto& rec : result.records) {
        out += to_string(cfg.kind);
        out += ',';
        out += to_string(cfg.model);
        out += ',';
        out += std::to_string(cfg.n_v);
        out += ',';
        out += std::to_string(rec.n_h);
        out += ',';
        out += std::to_string(rec.instance);
        out += ',';
        out += std::to_string(rec.seed);
        out += ',';
        out += format_double(rec.value);
        out += '\n';
    }
    return out;
}

std::string gradient_records_csv(const ExperimentConfig& cfg, const GradientSweepResult& result) {
    std::string out = "experiment,model,n_v,n_h,instance,seed,grad_inf_norm\n";
    for (const auto& rec : result.records) {
        out += to_string(cfg.kind);
        out += ',';
        out += rec.model;
        out += ',';
        out += std::to_string(rec.dims.n_v);
        out += ',';
        out += std::to_string(rec.dims.n_h);
        out += ',';
        out += std::to_string(rec.instance);
        out += ',';
        out += std::to_string(rec.seed);
        out += ',';
        out += format_double(rec.inf_norm);
        out += '\n';
    }
    return out;
}

std::string summary_csv(const std::vector<SummaryRow>& rows) {
    std::string out = "model,n_h,count,mean,variance,hist_peak,bound\n";
    for (const auto& row : rows) {
        out += to_string(row.model);
        out += ',';
        out += std::to_string(row.n_h);
        out += ',';
        out += std::to_string(row.count);
        out += ',';
        out += format_double(row.mean);
        out += ',';
        out += format_double(row.variance);
        out += ',';
        out += format_double(row.hist_peak);
        out += ',';
        out += format_double(row.bound);
        out += '\n';
    }
    return out;
}

std::string fit_csv(const ExperimentConfig& cfg, const FitResult& fit) {
    std::string out = "model,slope,intercept,r_squared\n";
    out += to_string(cfg.model);
    out += ',';
    out += format_double(fit.slope);
    out += ',';
    out += format_double(fit.intercept);
    out += ',';
    out += format_double(fit.r_squared);
    out += '\n';
    return out;
}

void write_file(const std::filesystem::path& path, const std::string& bytes) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    out.flush();
    if (!out) throw IoError("failed while writing '" + path.string() + "'");
}

}  // namespace

std::vector<std::string> run_experiment(const ExperimentConfig& cfg,
                                        const std::filesystem::path& out_dir,
                                        const RunOptions& opts) {
    ExperimentConfig effective = cfg;
    if (opts.seed_override) effective.seed = *opts.seed_override;
    effective.validate();

    const int threads = opts.threads > 0
                            ? opts.threads
                            : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));

    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec || !std::filesystem::is_directory(out_dir))
        throw IoError("cannot create output directory '" + out_dir.string() + "'");

    const auto started = std::chrono::steady_clock::now();
    std::vector<std::pair<std::string, std::string>> files;  // name -> bytes
    if (effective.kind == ExperimentKind::trace_distance) {
        const TraceSweepResult result = run_trace_distance_sweep(effective, threads);
        files.emplace_back("records.csv", trace_records_csv(effective, result));
        files.emplace_back("summary.csv", summary_csv(result.summaries));
    } else {
        const GradientSweepResult result = run_gradient_decay_sweep(effective, threads);
        files.emplace_back("records.csv", gradient_records_csv(effective, result));
        files.emplace_back("summary.csv", summary_csv(result.summaries));
        files.emplace_back("fit.csv", fit_csv(effective, result.fit));
    }
    const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - started;

    nlohmann::json manifest;
    manifest["version"] = kVersion;
    nlohmann::json config_echo = nlohmann::json::object();
    for (const auto& [k, v] : config_entries(effective)) config_echo[k] = v;
    manifest["config"] = config_echo;
    manifest["base_seed"] = effective.seed;
    nlohmann::json checksums = nlohmann::json::object();
    for (const auto& [name, bytes] : files) checksums[name] = fnv1a64_hex(bytes);
    manifest["checksums"] = checksums;
    manifest["duration_seconds"] = elapsed.count();

    std::vector<std::string> written;
    for (const auto& [name, bytes] : files) {
        write_file(out_dir / name, bytes);
        written.push_back(name);
    }
    write_file(out_dir / "manifest.json", manifest.dump(2) + "\n");
    written.push_back("manifest.json");
    return written;
}

int cli_main(int argc, const char* const* argv) {
    CLI::App app{"Concentration and gradient-decay experiments for quantum neural network models"};
    app.set_version_flag("--version", std::string("plateaulab ") + kVersion);
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir;
    std::uint64_t seed_value = 0;
    int threads = 0;

    CLI::App* validate = app.add_subcommand("validate", "Check a config file and echo the resolved settings");
    validate->add_option("--config", config_path, "Config file")->required();

    CLI::App* run = app.add_subcommand("run", "Run the configured experiment and write CSV artifacts");
    run->add_option("--config", config_path, "Config file")->required();
    run->add_option("--out", out_dir, "Output directory")->required();
    CLI::Option* seed_opt = run->add_option("--seed", seed_value, "Override the config seed");
    run->add_option("--threads", threads, "Worker threads (default: all hardware threads)")
        ->check(CLI::NonNegativeNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        const ExperimentConfig cfg = load_config(config_path);
        if (validate->parsed()) {
            std::cout << "configuration OK\n" << format_config(cfg);
            return 0;
        }

        RunOptions opts;
        opts.threads = threads;
        if (seed_opt->count() > 0) {
            opts.seed_override = seed_value;
        } else if (const char* env = std::getenv("PLATEAULAB_SEED")) {
            try {
                std::size_t pos = 0;
                opts.seed_override = std::stoull(env, &pos);
                if (pos != std::string(env).size()) throw std::invalid_argument(env);
            } catch (const std::exception&) {
                throw ConfigError({"PLATEAULAB_SEED: not an unsigned integer (got '" +
                                   std::string(env) + "')"});
            }
        }
        const auto written = run_experiment(cfg, out_dir, opts);
        std::cout << "wrote " << written.size() << " files to " << out_dir << "\n";
        return 0;
    } catch (const ConfigError& e) {
        std::cerr << "plateaulab: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "plateaulab: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace plateaulab
