#include "fracgp/ts_loop.hpp"

#include <algorithm>
#include <cmath>

#include "fracgp/common.hpp"

namespace fracgp {

void ExperimentConfig::validate() const {
    kernel.validate(dim);
    if (dim < 1) throw ConfigError("config: dim must be >= 1");
    if (T < 1) throw ConfigError("config: T must be >= 1");
    if (!(lambda > 0.0)) throw ConfigError("config: lambda must be > 0");
    if (alpha_fixed && (!(alpha_value > 0.0) || !(alpha_value < 1.0)))
        throw ConfigError("config: fixed alpha must be in (0, 1)");
    if (!alpha_fixed && T < 2) throw ConfigError("config: the alpha schedule needs T >= 2");
    if (!(c_eps > 0.0)) throw ConfigError("config: c_eps must be > 0");
    if (!(saturation_D > 0.0)) throw ConfigError("config: saturation D must be > 0");
    if (candidate_m < 0) throw ConfigError("config: candidate_m must be >= 0");
    if (effective_m() > m_max)
        throw ConfigError("config: candidate budget exceeds m_max");
    if (seeds.empty()) throw ConfigError("config: at least one seed is required");
    if (objective.n_centers_per_dim < 1) throw ConfigError("config: objective needs >= 1 center");
    if (!(objective.target_norm > 0.0)) throw ConfigError("config: objective norm must be > 0");
}

RateModel ExperimentConfig::rate_model() const {
    RateModel r = RateModel::from_kernel(kernel, dim, c_eps, q);
    r.matern_log_exponent = matern_log_exponent;
    return r;
}

AlphaSchedule ExperimentConfig::resolve_alpha() const {
    if (alpha_fixed) return {1.0 / alpha_value, alpha_value, false};
    return alpha_from_horizon(rate_model(), T);
}

RKHSFunction objective_for_run(const ExperimentConfig& config, uint64_t seed) {
    const uint64_t obj_seed = config.objective.seed.value_or(seed);
    return synthesize_objective(config.kernel, config.dim,
                                config.objective.n_centers_per_dim * config.dim, obj_seed,
                                config.objective.target_norm, config.objective.locate_resolution);
}

RegretTrace run_gpts(const ExperimentConfig& config, uint64_t seed) {
    return run_gpts(config, seed, objective_for_run(config, seed));
}

RegretTrace run_gpts(const ExperimentConfig& config, uint64_t seed, const RKHSFunction& objective) {
    config.validate();
    const RateModel rate = config.rate_model();
    const AlphaSchedule sched = config.resolve_alpha();
    const int T = config.T;
    const int m = config.effective_m();

    RegretTrace trace;
    trace.seed = seed;
    trace.dim = config.dim;
    trace.T = T;
    trace.alpha = sched.alpha;
    trace.alpha_raw_inverse = sched.raw_inverse;
    trace.alpha_clipped = sched.clipped;

    PosteriorState state = init_state(config.kernel, config.dim, config.lambda, sched.alpha, T);

    double cum = 0.0;
    for (int t = 1; t <= T; ++t) {
        if (sched.alpha * rate.t_eps_sq(t) >= 1.0 && !trace.monitor_fired) {
            trace.monitor_fired = true;
            trace.monitor_first_round = t;
        }
        try {
            const CandidateSet cands = generate_candidates(
                config.dim, m, config.generator, seed * 0x9E3779B97F4A7C15ULL + t, config.m_max);
            RngStream path_rng(seed, Stream::SamplePath, static_cast<uint32_t>(t));
            const std::vector<double> path = sample_path(state, cands, path_rng);
            auto [idx, x_t] = select_argmax(path, cands);

            double mean_sel, var_sel;
            predict_point(state, x_t.data(), mean_sel, var_sel);

            RngStream noise_rng(seed, Stream::ObservationNoise, static_cast<uint32_t>(t));
            const double y_t = observe_noisy(objective, x_t, config.lambda, noise_rng);

            double gap = objective.f_max - evaluate_objective(objective, x_t);
            if (gap < -1e-9)
                throw NumericError("negative regret beyond the refinement tolerance: " +
                                   std::to_string(gap));
            trace.worst_negative_regret = std::min(trace.worst_negative_regret, gap);
            if (gap < 0.0) gap = 0.0;

            const double c_t = saturation_threshold(rate, config.saturation_D, sched.alpha,
                                                    static_cast<double>(t));
            const double sigma = std::sqrt(std::max(var_sel, 0.0) / sched.alpha);

            trace.x.insert(trace.x.end(), x_t.begin(), x_t.end());
            trace.y.push_back(y_t);
            trace.r_inst.push_back(gap);
            cum += gap;
            trace.r_cum.push_back(cum);
            trace.k_var.push_back(var_sel);
            trace.sigma2.push_back(var_sel / sched.alpha);
            trace.c_t.push_back(c_t);
            trace.saturated.push_back(gap >= 2.0 * c_t * sigma ? 1 : 0);

            state = incorporate(std::move(state), x_t.data(), y_t);
            trace.completed = t;
        } catch (const NumericError& e) {
            trace.error = e.what();
            break;
        }
    }
    trace.final_condition = condition_estimate(state);
    return trace;
}

std::vector<RegretTrace> run_many(const ExperimentConfig& config, int parallelism) {
    config.validate();
    const int n = static_cast<int>(config.seeds.size());
    const int threads = std::max(parallelism, 1);
    std::vector<RegretTrace> traces(n);
#pragma omp parallel for schedule(dynamic) num_threads(threads)
    for (int i = 0; i < n; ++i) {
        try {
            traces[i] = run_gpts(config, config.seeds[i]);
        } catch (const std::exception& e) {
            traces[i].seed = config.seeds[i];
            traces[i].error = e.what();
        }
    }
    return traces;
}

SaturationReport saturation_trace(const ExperimentConfig& config, const RegretTrace& trace,
                                  const RKHSFunction& objective,
                                  const std::vector<double>& probes) {
    config.validate();
    if (trace.completed == 0) throw InputError("saturation_trace: empty trace");
    const int dim = config.dim;
    const int n_probes = static_cast<int>(probes.size()) / dim;
    const RateModel rate = config.rate_model();
    const double alpha = trace.alpha;

    SaturationReport report;
    // probe nearest the located maximizer stands in for its grid cell
    double best = std::numeric_limits<double>::infinity();
    for (int j = 0; j < n_probes; ++j) {
        const double d2 = squared_distance(probes.data() + static_cast<size_t>(j) * dim,
                                           objective.x_max.data(), dim);
        if (d2 < best) {
            best = d2;
            report.x0_probe_index = j;
        }
    }

    std::vector<double> gaps(n_probes);
    for (int j = 0; j < n_probes; ++j) {
        std::span<const double> pj(probes.data() + static_cast<size_t>(j) * dim, dim);
        gaps[j] = objective.f_max - evaluate_objective(objective, pj);
    }

    PosteriorState state = init_state(config.kernel, dim, config.lambda, alpha, trace.completed);
    for (int t = 1; t <= trace.completed; ++t) {
        if (alpha * rate.t_eps_sq(t) >= 1.0) report.monitor_fired = true;
        Prediction pred = predict(state, probes.data(), n_probes);
        const double c_t = saturation_threshold(rate, config.saturation_D, alpha,
                                                static_cast<double>(t));
        SaturationRow row;
        row.t = t;
        row.c_t = c_t;
        int count = 0;
        for (int j = 0; j < n_probes; ++j) {
            const double sigma = std::sqrt(std::max(pred.tempered_var[j], 0.0));
            const bool sat = gaps[j] >= 2.0 * c_t * sigma;
            count += sat ? 1 : 0;
            if (j == report.x0_probe_index && sat) row.x0_cell_saturated = true;
        }
        row.saturated_fraction = static_cast<double>(count) / n_probes;
        row.x_t_saturated = trace.saturated[t - 1] != 0;
        report.x0_ever_saturated |= row.x0_cell_saturated;
        report.rows.push_back(row);

        const double* x_t = trace.x.data() + static_cast<size_t>(t - 1) * dim;
        state = incorporate(std::move(state), x_t, trace.y[t - 1]);
    }
    return report;
}

}  // namespace fracgp
