#pragma once

// Sequential fractional GP posterior. The state keeps the queried points,
// observations, and a growing Cholesky factor of k(A_t, A_t) + (lambda+j) I
// (j = accumulated escalation jitter). Tempering by alpha only rescales the
// predictive covariance by 1/alpha; the mean is alpha-free.
//
// States are values: incorporate() consumes its argument and returns the
// extended state, so shared states are never mutated.

#include <vector>

#include "fracgp/kernels.hpp"
#include "fracgp/linalg.hpp"

namespace fracgp {

struct PosteriorState {
    KernelSpec spec;
    int dim = 1;
    double lambda = 1.0;
    double alpha = 1.0;
    std::vector<double> points;  // t x dim, flat
    std::vector<double> obs;     // y_{1:t}
    linalg::PackedLowerTri chol; // factor of K + (lambda + jitter) I
    std::vector<double> u;       // L^{-1} y
    double jitter = 0.0;

    int t() const { return static_cast<int>(obs.size()); }
};

struct Prediction {
    std::vector<double> mean;          // mu_t(X)
    linalg::Matrix cov;                // untempered k_t(X, X)
    std::vector<double> tempered_var;  // alpha^{-1} diag
};

PosteriorState init_state(const KernelSpec& spec, int dim, double lambda, double alpha,
                          int capacity_hint = 0);

// One observation. Extends the factor by a bordered row; on a pivot
// breakdown refactors from scratch under the escalating jitter policy
// (1e-10 x max diag, x10 steps, cap 1e-6 x max diag) and keeps the jitter
// for later rows. Throws NumericError when the ladder is exhausted.
PosteriorState incorporate(PosteriorState state, const double* x, double y);

Prediction predict(const PosteriorState& state, const double* probes, int count);

// Mean and untempered variance at a single probe (no covariance assembly).
void predict_point(const PosteriorState& state, const double* x, double& mean, double& var);

// Full refactorization from the stored (A_t, y): the brute-force oracle for
// the incremental updates. Uses the serial reference kernels throughout.
PosteriorState rebuild(const PosteriorState& state);

// Weights (K + (lambda+jitter) I)^{-1} y (two triangular solves).
std::vector<double> weights(const PosteriorState& state);

// Ratio (max diag L / min diag L)^2: a cheap condition estimate of the
// factored matrix, reported in run diagnostics.
double condition_estimate(const PosteriorState& state);

}  // namespace fracgp
