#pragma once

// End-to-end Thompson-sampling loop: per round, draw a tempered posterior
// path over fresh candidates, play its argmax, observe noisily, update the
// posterior, and record the regret/variance/saturation trace.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fracgp/objectives.hpp"
#include "fracgp/posterior.hpp"
#include "fracgp/rates.hpp"
#include "fracgp/sampler.hpp"

namespace fracgp {

struct ObjectiveParams {
    int n_centers_per_dim = 10;
    double target_norm = 2.0;
    std::optional<uint64_t> seed;  // unset: derived from the run seed
    int locate_resolution = 2048;
};

struct ExperimentConfig {
    KernelSpec kernel;
    int dim = 1;
    int T = 64;
    double lambda = 1.0;

    bool alpha_fixed = false;  // false: alpha^{-1} = T eps_T^2 schedule
    double alpha_value = 0.5;  // fixed mode only
    double c_eps = 1.0;
    double q = 0.0;
    std::optional<double> matern_log_exponent;

    double saturation_D = 1.0;
    int candidate_m = 0;  // 0: default 256 * dim
    CandidateGenerator generator = CandidateGenerator::LowDiscrepancy;
    int m_max = 1 << 20;

    std::vector<uint64_t> seeds{1};
    ObjectiveParams objective;

    void validate() const;  // throws ConfigError
    RateModel rate_model() const;
    AlphaSchedule resolve_alpha() const;
    int effective_m() const { return candidate_m > 0 ? candidate_m : 256 * dim; }
};

struct RegretTrace {
    uint64_t seed = 0;
    int dim = 1;
    int T = 0;                      // configured horizon
    int completed = 0;              // rounds actually finished
    std::vector<double> x;          // completed x dim, flat
    std::vector<double> y;
    std::vector<double> r_inst;     // clipped instantaneous regret
    std::vector<double> r_cum;
    std::vector<double> k_var;      // untempered k_{t-1}(x_t, x_t)
    std::vector<double> sigma2;     // tempered alpha^{-1} k_{t-1}(x_t, x_t)
    std::vector<double> c_t;        // saturation threshold C_t
    std::vector<uint8_t> saturated; // was x_t saturated at selection time

    double alpha = 0.0;
    double alpha_raw_inverse = 0.0;
    bool alpha_clipped = false;
    bool monitor_fired = false;     // any round with alpha t eps_t^2 >= 1
    int monitor_first_round = 0;
    double worst_negative_regret = 0.0;  // most negative pre-clip value seen
    double final_condition = 0.0;        // condition estimate of the last factor
    std::string error;                   // nonempty when a round aborted the run
};

// Runs Algorithm control for one seed. The objective is synthesized from
// objective.seed (or the run seed when unset). Numeric failures abort the
// run and leave the partial trace with trace.error set; pre-clip regret
// below -1e-9 throws NumericError (objective/regret accounting bug).
RegretTrace run_gpts(const ExperimentConfig& config, uint64_t seed);
RegretTrace run_gpts(const ExperimentConfig& config, uint64_t seed, const RKHSFunction& objective);

// Seeds run as independent tasks (OpenMP, `parallelism` threads); results
// land in a pre-sized vector so no trace is shared between tasks.
std::vector<RegretTrace> run_many(const ExperimentConfig& config, int parallelism);

struct SaturationRow {
    int t = 0;
    double c_t = 0.0;
    double saturated_fraction = 0.0;  // of the probe grid
    bool x_t_saturated = false;
    bool x0_cell_saturated = false;
};

struct SaturationReport {
    std::vector<SaturationRow> rows;
    int x0_probe_index = -1;          // probe nearest the located maximizer
    bool x0_ever_saturated = false;
    bool monitor_fired = false;
};

// Replays the trace against the probe grid: per round the threshold C_t,
// the saturated fraction, whether x_t was saturated, and whether the grid
// cell of the maximizer was ever saturated (it must never be).
SaturationReport saturation_trace(const ExperimentConfig& config, const RegretTrace& trace,
                                  const RKHSFunction& objective,
                                  const std::vector<double>& probes);

RKHSFunction objective_for_run(const ExperimentConfig& config, uint64_t seed);

}  // namespace fracgp
