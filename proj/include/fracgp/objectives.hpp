#pragma once

// Ground-truth objectives: finite kernel expansions theta0(x) = sum a_i
// k(x, z_i) with an exactly rescaled RKHS norm and a located global
// maximizer, plus the noisy observation channel y = theta0(x) + N(0, lambda).

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "fracgp/kernels.hpp"
#include "fracgp/rng.hpp"

namespace fracgp {

struct RKHSFunction {
    KernelSpec spec;
    int dim = 1;
    std::vector<double> centers;  // n x dim, flat
    std::vector<double> coeffs;   // n
    double norm = 0.0;            // RKHS norm after rescaling
    std::vector<double> x_max;    // located maximizer
    double f_max = 0.0;           // theta0(x_max)
    double locate_residual = 0.0; // final refinement step size
    uint64_t seed = 0;

    int n_centers() const { return static_cast<int>(coeffs.size()); }
};

// Random centers and N(0,1) coefficients rescaled so the RKHS norm equals
// target_norm exactly; resamples (up to 5 times) when the center Gram is
// numerically singular, then locates the maximizer at the given resolution.
RKHSFunction synthesize_objective(const KernelSpec& spec, int dim, int n, uint64_t seed,
                                  double target_norm, int locate_resolution = 2048);

double evaluate_objective(const RKHSFunction& f, std::span<const double> x);

// theta0(x) + eta, eta ~ N(0, lambda); lambda = 0 is the noiseless limit.
double observe_noisy(const RKHSFunction& f, std::span<const double> x, double lambda,
                     RngStream& rng);

// Dense grid search (resolution points per dimension) followed by three
// halving passes of coordinate refinement. Throws ConfigError when the grid
// exceeds the evaluation budget (use a lower resolution or dim <= 4).
std::pair<std::vector<double>, double> locate_maximum(const RKHSFunction& f, int resolution);

// a^T k(Z, Z) a for a candidate expansion.
double rkhs_norm_squared(const KernelSpec& spec, const std::vector<double>& centers,
                         const std::vector<double>& coeffs, int dim);

// Rescales the coefficients so the expansion's norm equals target_norm
// exactly; rejects expansions that are identically zero on their span.
void rescale_to_norm(const KernelSpec& spec, const std::vector<double>& centers,
                     std::vector<double>& coeffs, int dim, double target_norm);

}  // namespace fracgp
