#pragma once

// Verifiable posterior quantities: Gaussian information gain, greedy
// max-variance gamma curves, the cumulative-variance-vs-4*gamma comparison,
// the posterior RKHS-norm identity on finite-rank kernels, equal-variance
// Gaussian Renyi divergences, and power-law slope fits.

#include <cstdint>
#include <span>
#include <vector>

#include "fracgp/kernels.hpp"
#include "fracgp/objectives.hpp"
#include "fracgp/ts_loop.hpp"

namespace fracgp {

// 0.5 log det(I + lambda^{-1} K) via Cholesky, with the usual jitter ladder.
double information_gain(const linalg::Matrix& K, double lambda);

struct GammaCurve {
    KernelSpec spec;
    int dim = 1;
    double lambda = 1.0;
    int pool_size = 0;
    uint64_t seed = 0;
    std::vector<double> gamma;  // gamma[t-1] after t greedy selections
    std::vector<int> selected;  // pool indices in selection order
};

// Greedy max-variance design over a scrambled-Sobol pool; gamma via the
// chain rule 0.5 sum log(1 + var/lambda), which tests cross-check against
// the log-det route.
GammaCurve greedy_gamma_curve(const KernelSpec& spec, int dim, double lambda, int T_max,
                              int pool_size, uint64_t seed);

struct CumvarReport {
    std::vector<int> checkpoints;      // power-of-2 horizons
    std::vector<double> avg_cumvar;    // seed-averaged sum of k_{t-1}(x_t, x_t)
    std::vector<double> gamma;         // greedy gamma at the checkpoint
    std::vector<double> ratio;         // avg_cumvar / (4 gamma)
    double max_ratio = 0.0;
    bool flagged = false;              // any ratio above 1.05
};

CumvarReport cumvar_vs_gamma(const std::vector<RegretTrace>& traces, const GammaCurve& curve);

// Finite-rank kernel instance k(x,x') = phi(x)^T Lam phi(x') with f in the
// feature span (f = phi^T coeffs) over t query points.
struct IdentityInstance {
    std::vector<double> spectrum;  // Lam diagonal, strictly positive
    linalg::Matrix features;       // D x t, column s = phi(x_s)
    std::vector<double> coeffs;    // representation of f in the feature basis
};

// Both sides of the tempered posterior-norm identity, computed by
// independent routes: the left through the posterior feature covariance
// (Woodbury direction), the right directly as ||f||^2_{k^a} + (alpha/lambda)
// sum_s f(x_s)^2.
std::pair<double, double> identity_two_routes(const IdentityInstance& inst, double lambda,
                                              double alpha);

// One random instance; returns the relative discrepancy of the two routes.
double rkhs_norm_identity(int feature_dim, int t, double lambda, double alpha, uint64_t seed);

struct IdentityReport {
    int instances = 0;
    double max_rel_error = 0.0;
    double worst_condition = 0.0;  // largest condition estimate sampled
};

IdentityReport rkhs_identity_suite(int instances, uint64_t seed);

// Order-beta Renyi divergence between the reward laws of f and g over the
// query points: (beta / (2 lambda)) sum_s (f(x_s) - g(x_s))^2.
double renyi_divergence(const RKHSFunction& f, const RKHSFunction& g,
                        const std::vector<double>& query_points, double lambda, double beta);

struct FitResult {
    double slope = 0.0;
    double intercept = 0.0;
    double r2 = 0.0;
};

FitResult linear_fit(std::span<const double> xs, std::span<const double> ys);
FitResult fit_log_slope(std::span<const double> xs, std::span<const double> ys);

}  // namespace fracgp
