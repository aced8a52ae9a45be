#pragma once

// Kernel-specific posterior contraction rates eps_t and the derived
// tempering schedule alpha^{-1} = T eps_T^2, plus the saturation threshold
// C_t^2 = D alpha t eps_t^2 / (1 - alpha).
//
//   SE:     eps_t = c * t^{-1/2} log^{(d+1)/2} t
//   Matern: eps_t = c * t^{-nu/(2nu+d)} log^{q/(2+d)} t   (exponent overridable)
//   RQ:     eps_t = c * t^{-nu/(2nu+d)}                    (no log factor)
//
// Logs use log(max(t, 2)) so eps_t stays positive at t = 1 and t.eps_t^2
// stays nondecreasing; values at t >= 2 are untouched.

#include <optional>

#include "fracgp/kernels.hpp"

namespace fracgp {

struct RateModel {
    KernelFamily family = KernelFamily::SquaredExponential;
    int dim = 1;
    double nu = 1.5;    // Matern / RQ smoothness
    double c_eps = 1.0; // rate constant (the paper's O(.) constant, default 1)
    double q = 0.0;     // kernel-scale prior exponent in the Matern log factor
    std::optional<double> matern_log_exponent;  // overrides q/(2+d) when set

    static RateModel from_kernel(const KernelSpec& spec, int dim, double c_eps = 1.0, double q = 0.0);

    double poly_exponent() const;   // r in eps_t ~ t^{-r}
    double log_exponent() const;    // p in eps_t ~ log^p t
    double epsilon(double t) const;
    double t_eps_sq(double t) const { const double e = epsilon(t); return t * e * e; }

    // Target exponents used by the report tooling.
    double regret_target_exponent() const;  // 1/2 (SE) or (2nu+3d)/(2(2nu+d))
    double gamma_target_exponent() const;   // 0 (SE, polylog) or d/(2nu+d)
};

struct AlphaSchedule {
    double raw_inverse = 0.0;  // T eps_T^2 before clipping
    double alpha = 0.0;        // 1 / max(raw, 1 + 1e-6)
    bool clipped = false;
};

AlphaSchedule alpha_from_horizon(const RateModel& rate, int T);

// C_t^2 = D alpha t eps_t^2 / (1 - alpha).
double saturation_threshold(const RateModel& rate, double D, double alpha, double t);

}  // namespace fracgp
