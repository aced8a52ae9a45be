// Batch experiment runner and report tool.
//
//   fracgp run --config cfg.json --out dir [--parallel N]
//   fracgp report <regret-slope|gamma|identity|saturation> <run_dir>... --out base
//
// Exit codes: 0 success, 2 configuration error, 3 numeric failure.

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "fracgp/common.hpp"
#include "fracgp/io.hpp"
#include "fracgp/lowdisc.hpp"

namespace fs = std::filesystem;
using namespace fracgp;

namespace {

int64_t seed_offset_from_env() {
    const char* env = std::getenv("FRACGP_SEED_OFFSET");
    if (!env || !*env) return 0;
    try {
        return std::stoll(env);
    } catch (const std::exception&) {
        throw ConfigError("FRACGP_SEED_OFFSET must be an integer");
    }
}

struct RunDir {
    ExperimentConfig config;
    json manifest;
    std::vector<RegretTrace> traces;
    std::vector<RKHSFunction> objectives;
    fs::path dir;
};

RunDir load_run_dir(const std::string& dir, bool with_objectives) {
    RunDir rd;
    rd.dir = dir;
    const fs::path mpath = fs::path(dir) / "manifest.json";
    if (!fs::exists(mpath)) throw ConfigError("no manifest.json in " + dir);
    rd.manifest = json::parse(read_text_file(mpath.string()));
    rd.config = config_from_json(rd.manifest.at("config"));
    for (const auto& seed_json : rd.manifest.at("seeds")) {
        const uint64_t seed = seed_json.get<uint64_t>();
        const std::string stem = "seed" + std::to_string(seed);
        RegretTrace tr = trace_from_csv_file((fs::path(dir) / ("trace_" + stem + ".csv")).string());
        tr.seed = seed;
        const json meta = json::parse(read_text_file((fs::path(dir) / ("meta_" + stem + ".json")).string()));
        tr.alpha = meta.at("alpha").get<double>();
        rd.traces.push_back(std::move(tr));
        if (with_objectives) rd.objectives.push_back(objective_from_json(meta.at("objective")));
    }
    return rd;
}

std::vector<int> pow2_checkpoints(int T) {
    std::vector<int> cps;
    for (int c = 1; c <= T; c *= 2) cps.push_back(c);
    return cps;
}

// geometric checkpoints, upper half only (transient bias)
std::vector<int> fit_window(const std::vector<int>& cps) {
    return {cps.begin() + static_cast<long>(cps.size() / 2), cps.end()};
}

int cmd_run(const std::string& config_path, const std::string& out_dir, int parallelism) {
    ExperimentConfig config = load_config_file(config_path);
    const int64_t offset = seed_offset_from_env();
    for (uint64_t& s : config.seeds) s = static_cast<uint64_t>(static_cast<int64_t>(s) + offset);
    config.validate();

    fs::create_directories(out_dir);
    const auto t0 = std::chrono::steady_clock::now();

    std::vector<RKHSFunction> objectives;
    objectives.reserve(config.seeds.size());
    for (const uint64_t seed : config.seeds) objectives.push_back(objective_for_run(config, seed));

    std::vector<RegretTrace> traces = run_many(config, parallelism);

    bool numeric_failure = false;
    json outputs = json::array();
    json checks;
    bool any_monitor = false;
    for (size_t i = 0; i < traces.size(); ++i) {
        const RegretTrace& tr = traces[i];
        const std::string stem = "seed" + std::to_string(tr.seed);
        const bool failed = !tr.error.empty();
        numeric_failure |= failed;
        any_monitor |= tr.monitor_fired;

        const std::string suffix = failed ? ".partial" : "";
        const fs::path trace_path = fs::path(out_dir) / ("trace_" + stem + ".csv" + suffix);
        write_text_file(trace_path.string(), trace_to_csv(tr));
        const fs::path meta_path = fs::path(out_dir) / ("meta_" + stem + ".json" + suffix);
        write_text_file(meta_path.string(), run_metadata(config, tr, objectives[i]).dump(2) + "\n");
        outputs.push_back(trace_path.filename().string());
        outputs.push_back(meta_path.filename().string());
    }
    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    checks["all_seeds_completed"] = !numeric_failure;
    checks["theorem1_monitor_never_fired"] = !any_monitor;
    json manifest;
    manifest["config"] = config_to_json(config);
    manifest["config_hash"] = config_hash(config);
    manifest["tool_version"] = kToolVersion;
    manifest["rng"] = kRngName;
    manifest["candidate_generator"] = generator_name(config.generator);
    manifest["seeds"] = config.seeds;
    manifest["outputs"] = outputs;
    manifest["wall_clock_seconds"] = wall;
    manifest["checks"] = checks;
    write_text_file((fs::path(out_dir) / "manifest.json").string(), manifest.dump(2) + "\n");

    return numeric_failure ? 3 : 0;
}

std::string strip_report_ext(std::string path) {
    for (const char* ext : {".json", ".csv"})
        if (path.size() > 5 && path.ends_with(ext)) return path.substr(0, path.rfind('.'));
    return path;
}

int report_regret_slope(const std::vector<RunDir>& dirs, const std::string& out_base) {
    const std::string family = dirs.front().config.kernel.family_name();
    for (const RunDir& rd : dirs)
        if (rd.config.kernel.family_name() != family)
            throw ConfigError("regret-slope: run dirs mix kernel families");

    int T = dirs.front().traces.front().completed;
    for (const RunDir& rd : dirs)
        for (const RegretTrace& tr : rd.traces) T = std::min(T, tr.completed);

    const std::vector<int> cps = pow2_checkpoints(T);
    std::vector<double> mean_reg(cps.size(), 0.0);
    int n = 0;
    for (const RunDir& rd : dirs)
        for (const RegretTrace& tr : rd.traces) {
            for (size_t i = 0; i < cps.size(); ++i) mean_reg[i] += tr.r_cum[cps[i] - 1];
            ++n;
        }
    for (double& v : mean_reg) v /= n;

    const std::vector<int> window = fit_window(cps);
    std::vector<double> xs, ys;
    for (const int cp : window) {
        xs.push_back(cp);
        ys.push_back(mean_reg[std::distance(cps.begin(), std::find(cps.begin(), cps.end(), cp))]);
    }
    const FitResult fit = fit_log_slope(xs, ys);
    const double target = dirs.front().config.rate_model().regret_target_exponent();

    std::ostringstream csv;
    csv << "T,mean_cumulative_regret\n";
    for (size_t i = 0; i < cps.size(); ++i)
        csv << cps[i] << ',' << format_g17(mean_reg[i]) << '\n';
    write_text_file(out_base + ".csv", csv.str());

    json out;
    out["mode"] = "regret-slope";
    out["kernel_family"] = family;
    out["seeds"] = n;
    out["checkpoints"] = cps;
    out["mean_cumulative_regret"] = mean_reg;
    out["fit_window"] = window;
    out["slope"] = fit.slope;
    out["r2"] = fit.r2;
    out["target_exponent"] = target;
    write_text_file(out_base + ".json", out.dump(2) + "\n");
    return 0;
}

int report_gamma(const std::vector<RunDir>& dirs, const std::string& out_base, int pool,
                 uint64_t gamma_seed) {
    const RunDir& first = dirs.front();
    for (const RunDir& rd : dirs) {
        if (config_hash(rd.config) != config_hash(first.config))
            throw ConfigError("gamma: run dirs must share one config (kernel and lambda)");
    }
    std::vector<RegretTrace> traces;
    for (const RunDir& rd : dirs)
        for (const RegretTrace& tr : rd.traces) traces.push_back(tr);

    int T = traces.front().completed;
    for (const RegretTrace& tr : traces) T = std::min(T, tr.completed);
    if (pool <= 0) pool = 4096 * first.config.dim;
    const GammaCurve curve = greedy_gamma_curve(first.config.kernel, first.config.dim,
                                                first.config.lambda, T, pool, gamma_seed);
    const CumvarReport rep = cumvar_vs_gamma(traces, curve);
    write_text_file(out_base + ".csv", gamma_report_csv(rep));

    // slope of gamma over the upper checkpoints vs the kernel's target
    const std::vector<int> window = fit_window(rep.checkpoints);
    std::vector<double> xs, ys;
    for (const int cp : window) {
        xs.push_back(cp);
        ys.push_back(curve.gamma[cp - 1]);
    }
    const FitResult fit = fit_log_slope(xs, ys);

    json out;
    out["mode"] = "gamma";
    out["kernel_family"] = first.config.kernel.family_name();
    out["lambda"] = first.config.lambda;
    out["pool_size"] = pool;
    out["checkpoints"] = rep.checkpoints;
    out["gamma"] = rep.gamma;
    out["avg_cumvar"] = rep.avg_cumvar;
    out["ratio"] = rep.ratio;
    out["max_ratio"] = rep.max_ratio;
    out["bound_flagged"] = rep.flagged;
    out["gamma_slope"] = fit.slope;
    out["gamma_slope_r2"] = fit.r2;
    out["target_exponent"] = first.config.rate_model().gamma_target_exponent();
    write_text_file(out_base + ".json", out.dump(2) + "\n");
    return 0;
}

int report_identity(const std::string& out_base) {
    const IdentityReport rep = rkhs_identity_suite(100, 1);
    json out;
    out["mode"] = "identity";
    out["instances"] = rep.instances;
    out["max_rel_error"] = rep.max_rel_error;
    out["pass"] = rep.max_rel_error <= 1e-8;
    write_text_file(out_base + ".json", out.dump(2) + "\n");
    return 0;
}

int report_saturation(const std::vector<RunDir>& dirs, const std::string& out_base, int probes) {
    std::ostringstream csv;
    csv << "seed,t,C_t,saturated_fraction,x_t_saturated,x0_cell_saturated\n";
    json summary = json::array();
    for (const RunDir& rd : dirs) {
        const std::vector<double> grid = grid_points(rd.config.dim, probes);
        for (size_t i = 0; i < rd.traces.size(); ++i) {
            const SaturationReport rep =
                saturation_trace(rd.config, rd.traces[i], rd.objectives[i], grid);
            for (const SaturationRow& row : rep.rows)
                csv << rd.traces[i].seed << ',' << row.t << ',' << format_g17(row.c_t) << ','
                    << format_g17(row.saturated_fraction) << ',' << (row.x_t_saturated ? 1 : 0)
                    << ',' << (row.x0_cell_saturated ? 1 : 0) << '\n';
            summary.push_back({{"seed", rd.traces[i].seed},
                               {"x0_ever_saturated", rep.x0_ever_saturated},
                               {"monitor_fired", rep.monitor_fired},
                               {"final_saturated_fraction", rep.rows.back().saturated_fraction}});
        }
    }
    write_text_file(out_base + ".csv", csv.str());
    json out;
    out["mode"] = "saturation";
    out["probe_count"] = probes;
    out["runs"] = summary;
    bool any_x0 = false;
    for (const auto& s : summary) any_x0 |= s.at("x0_ever_saturated").get<bool>();
    out["x0_ever_saturated"] = any_x0;
    write_text_file(out_base + ".json", out.dump(2) + "\n");
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"fractional-posterior GP Thompson sampling experiments"};
    app.require_subcommand(1);

    std::string config_path, out_path;
    int parallelism = 1;
    auto* run = app.add_subcommand("run", "run the Thompson-sampling experiment per seed");
    run->add_option("--config", config_path, "experiment config (JSON)")->required();
    run->add_option("--out", out_path, "output directory")->required();
    run->add_option("--parallel", parallelism, "seed-level parallelism")->default_val(1);

    std::string mode, report_out;
    std::vector<std::string> run_dirs;
    int pool = 0, probes = 257;
    uint64_t gamma_seed = 1;
    auto* report = app.add_subcommand("report", "aggregate run directories into a report");
    report->add_option("mode", mode, "regret-slope | gamma | identity | saturation")->required();
    report->add_option("run_dirs", run_dirs, "run directories (with manifest.json)");
    report->add_option("--out", report_out, "output path base (.csv/.json written)")->required();
    report->add_option("--pool", pool, "gamma pool size (default 4096*dim)");
    report->add_option("--probes", probes, "saturation probe-grid size")->default_val(257);
    report->add_option("--gamma-seed", gamma_seed, "gamma pool scramble seed")->default_val(1);

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) return cmd_run(config_path, out_path, parallelism);

        const std::string base = strip_report_ext(report_out);
        if (mode == "identity") return report_identity(base);
        if (run_dirs.empty()) throw ConfigError("report: at least one run directory is required");
        std::vector<RunDir> dirs;
        for (const std::string& d : run_dirs) dirs.push_back(load_run_dir(d, mode == "saturation"));
        if (mode == "regret-slope") return report_regret_slope(dirs, base);
        if (mode == "gamma") return report_gamma(dirs, base, pool, gamma_seed);
        if (mode == "saturation") return report_saturation(dirs, base, probes);
        throw ConfigError("unknown report mode \"" + mode + "\"");
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const InputError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const NumericError& e) {
        std::cerr << "numeric error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
