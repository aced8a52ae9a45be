#include "fracgp/rates.hpp"

#include <algorithm>
#include <cmath>

#include "fracgp/common.hpp"

namespace fracgp {

RateModel RateModel::from_kernel(const KernelSpec& spec, int dim, double c_eps, double q) {
    RateModel r;
    r.family = spec.family;
    r.dim = dim;
    r.nu = spec.nu;
    r.c_eps = c_eps;
    r.q = q;
    return r;
}

double RateModel::poly_exponent() const {
    if (family == KernelFamily::SquaredExponential) return 0.5;
    return nu / (2.0 * nu + dim);
}

double RateModel::log_exponent() const {
    switch (family) {
        case KernelFamily::SquaredExponential: return 0.5 * (dim + 1);
        case KernelFamily::Matern:
            return matern_log_exponent.value_or(q / (2.0 + dim));
        case KernelFamily::RationalQuadratic: return 0.0;
    }
    return 0.0;
}

double RateModel::epsilon(double t) const {
    if (!(t >= 1.0)) throw InputError("RateModel::epsilon: t must be >= 1");
    const double lg = std::log(std::max(t, 2.0));
    return c_eps * std::pow(t, -poly_exponent()) * std::pow(lg, log_exponent());
}

double RateModel::regret_target_exponent() const {
    if (family == KernelFamily::SquaredExponential) return 0.5;
    return (2.0 * nu + 3.0 * dim) / (2.0 * (2.0 * nu + dim));
}

double RateModel::gamma_target_exponent() const {
    if (family == KernelFamily::SquaredExponential) return 0.0;
    return dim / (2.0 * nu + dim);
}

AlphaSchedule alpha_from_horizon(const RateModel& rate, int T) {
    if (T < 2) throw ConfigError("alpha_from_horizon requires T >= 2");
    AlphaSchedule s;
    s.raw_inverse = rate.t_eps_sq(static_cast<double>(T));
    constexpr double kFloor = 1.0 + 1e-6;
    s.clipped = s.raw_inverse <= kFloor;
    s.alpha = 1.0 / std::max(s.raw_inverse, kFloor);
    return s;
}

double saturation_threshold(const RateModel& rate, double D, double alpha, double t) {
    if (!(alpha > 0.0) || !(alpha < 1.0))
        throw ConfigError("saturation_threshold requires alpha in (0, 1)");
    if (!(D > 0.0)) throw ConfigError("saturation_threshold requires D > 0");
    const double c2 = D * alpha * rate.t_eps_sq(t) / (1.0 - alpha);
    return std::sqrt(c2);
}

}  // namespace fracgp
