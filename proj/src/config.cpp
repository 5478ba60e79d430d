#include "plateaulab/config.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>

#include "plateaulab/serialize.hpp"

namespace plateaulab {

namespace {

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(b, e - b + 1));
}

}  // namespace

ExperimentConfig parse_config_text(const std::string& text) {
    std::vector<std::string> issues;
    std::map<std::string, std::string> kv;

    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        const auto eq = t.find('=');
        if (eq == std::string::npos) {
            issues.push_back("line " + std::to_string(lineno) + ": expected 'key = value'");
            continue;
        }
        const std::string key = trim(t.substr(0, eq));
        std::string value = trim(t.substr(eq + 1));
        if (value.size() >= 2 && value.front() == '"' && value.back() == '"')
            value = value.substr(1, value.size() - 2);
        if (key.empty()) {
            issues.push_back("line " + std::to_string(lineno) + ": empty key");
            continue;
        }
        if (!kv.emplace(key, value).second) issues.push_back("duplicate key '" + key + "'");
    }

    std::set<std::string> consumed;
    const auto take = [&](const std::string& key) -> std::optional<std::string> {
        const auto it = kv.find(key);
        if (it == kv.end()) return std::nullopt;
        consumed.insert(key);
        return it->second;
    };
    const auto take_required = [&](const std::string& key) -> std::optional<std::string> {
        auto v = take(key);
        if (!v) issues.push_back(key + ": required key is missing");
        return v;
    };
    const auto parse_i64 = [&](const std::string& key, const std::string& raw) -> std::optional<long long> {
        long long out{};
        const auto [p, ec] = std::from_chars(raw.data(), raw.data() + raw.size(), out);
        if (ec != std::errc() || p != raw.data() + raw.size()) {
            issues.push_back(key + ": not an integer (got '" + raw + "')");
            return std::nullopt;
        }
        return out;
    };
    const auto parse_u64 = [&](const std::string& key, const std::string& raw) -> std::optional<std::uint64_t> {
        std::uint64_t out{};
        const auto [p, ec] = std::from_chars(raw.data(), raw.data() + raw.size(), out);
        if (ec != std::errc() || p != raw.data() + raw.size()) {
            issues.push_back(key + ": not an unsigned integer (got '" + raw + "')");
            return std::nullopt;
        }
        return out;
    };
    const auto parse_f64 = [&](const std::string& key, const std::string& raw) -> std::optional<double> {
        double out{};
        const auto [p, ec] = std::from_chars(raw.data(), raw.data() + raw.size(), out);
        if (ec != std::errc() || p != raw.data() + raw.size()) {
            issues.push_back(key + ": not a number (got '" + raw + "')");
            return std::nullopt;
        }
        return out;
    };

    const auto kind_raw = take_required("experiment");
    const auto model_raw = take_required("model");
    std::optional<ExperimentKind> kind;
    std::optional<ModelKind> model;
    if (kind_raw && !(kind = experiment_kind_from_string(*kind_raw)))
        issues.push_back("experiment: unknown value '" + *kind_raw +
                         "' (expected trace_distance, grad_unitary or grad_qbm)");
    if (model_raw && !(model = model_kind_from_string(*model_raw)))
        issues.push_back("model: unknown value '" + *model_raw +
                         "' (expected gue_t10, unitary, qbm_normalized or haar)");

    ExperimentConfig cfg;
    if (kind && model) cfg = default_config(*kind, *model);

    if (const auto v = take("n_v"))
        if (const auto i = parse_i64("n_v", *v)) cfg.n_v = static_cast<int>(*i);
    if (const auto v = take_required("n_h.min"))
        if (const auto i = parse_i64("n_h.min", *v)) cfg.n_h_min = static_cast<int>(*i);
    if (const auto v = take_required("n_h.max"))
        if (const auto i = parse_i64("n_h.max", *v)) cfg.n_h_max = static_cast<int>(*i);
    if (const auto v = take_required("instances"))
        if (const auto i = parse_i64("instances", *v)) cfg.instances = static_cast<int>(*i);
    if (const auto v = take("seed"))
        if (const auto s = parse_u64("seed", *v)) cfg.seed = *s;
    if (const auto v = take("bins"))
        if (const auto i = parse_i64("bins", *v)) cfg.bins = static_cast<int>(*i);
    if (const auto v = take("fd_step"))
        if (const auto x = parse_f64("fd_step", *v)) cfg.fd_step = *x;
    if (const auto v = take("evolution_time"))
        if (const auto x = parse_f64("evolution_time", *v)) cfg.evolution_time = *x;

    const auto parse_dist = [&](const std::string& group, CoeffDistribution& dst) {
        const std::string base = "distributions." + group + ".";
        const auto kind_v = take(base + "kind");
        const auto mean_v = take(base + "mean");
        const auto var_v = take(base + "variance");
        const auto lo_v = take(base + "lo");
        const auto hi_v = take(base + "hi");
        if (!kind_v && !mean_v && !var_v && !lo_v && !hi_v) return;
        if (!kind_v) {
            issues.push_back(base + "kind: required when other " + group + " keys are set");
            return;
        }
        CoeffDistribution d;
        if (*kind_v == "normal") {
            if (lo_v || hi_v) issues.push_back(base + "lo/hi: not valid for a normal law");
            d.kind = CoeffDistribution::Kind::normal;
            if (mean_v)
                if (const auto x = parse_f64(base + "mean", *mean_v)) d.mean = *x;
            if (var_v)
                if (const auto x = parse_f64(base + "variance", *var_v)) d.variance = *x;
        } else if (*kind_v == "uniform") {
            if (mean_v || var_v) issues.push_back(base + "mean/variance: not valid for a uniform law");
            d.kind = CoeffDistribution::Kind::uniform;
            if (lo_v)
                if (const auto x = parse_f64(base + "lo", *lo_v)) d.lo = *x;
            if (hi_v)
                if (const auto x = parse_f64(base + "hi", *hi_v)) d.hi = *x;
        } else {
            issues.push_back(base + "kind: unknown value '" + *kind_v + "' (expected normal or uniform)");
            return;
        }
        dst = d;
    };
    parse_dist("onsite", cfg.onsite);
    parse_dist("offsite", cfg.offsite);
    parse_dist("init", cfg.init);

    for (const auto& [k, v] : kv)
        if (!consumed.contains(k)) issues.push_back("unknown key '" + k + "'");

    if (issues.empty()) {
        try {
            cfg.validate();
        } catch (const ConfigError& e) {
            issues = e.issues();
        }
    }
    if (!issues.empty()) throw ConfigError(std::move(issues));
    return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError({"config: cannot read file '" + path.string() + "'"});
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str());
}

std::vector<std::pair<std::string, std::string>> config_entries(const ExperimentConfig& cfg) {
    std::vector<std::pair<std::string, std::string>> out;
    out.emplace_back("experiment", to_string(cfg.kind));
    out.emplace_back("model", to_string(cfg.model));
    out.emplace_back("n_v", std::to_string(cfg.n_v));
    out.emplace_back("n_h.min", std::to_string(cfg.n_h_min));
    out.emplace_back("n_h.max", std::to_string(cfg.n_h_max));
    out.emplace_back("instances", std::to_string(cfg.instances));
    out.emplace_back("seed", std::to_string(cfg.seed));
    out.emplace_back("bins", std::to_string(cfg.bins));
    out.emplace_back("fd_step", format_double(cfg.fd_step));
    out.emplace_back("evolution_time", format_double(cfg.evolution_time));

    const auto emit_dist = [&out](const std::string& group, const CoeffDistribution& d) {
        const std::string base = "distributions." + group + ".";
        if (d.kind == CoeffDistribution::Kind::normal) {
            out.emplace_back(base + "kind", "normal");
            out.emplace_back(base + "mean", format_double(d.mean));
            out.emplace_back(base + "variance", format_double(d.variance));
        } else {
            out.emplace_back(base + "kind", "uniform");
            out.emplace_back(base + "lo", format_double(d.lo));
            out.emplace_back(base + "hi", format_double(d.hi));
        }
    };
    emit_dist("onsite", cfg.onsite);
    emit_dist("offsite", cfg.offsite);
    emit_dist("init", cfg.init);
    return out;
}

std::string format_config(const ExperimentConfig& cfg) {
    std::string out;
    for (const auto& [k, v] : config_entries(cfg)) {
        out += k;
        out += " = ";
        out += v;
        out += "\n";
    }
    return out;
}

}  // namespace plateaulab
