#pragma once

// Covariance kernels on [0,1]^d: squared exponential, Matern-nu, rational
// quadratic. All three are unit-variance by construction. Includes Gram
// matrix assembly and a Nystrom approximation of the Mercer spectrum.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "fracgp/linalg.hpp"

namespace fracgp {

enum class KernelFamily { SquaredExponential, Matern, RationalQuadratic };

struct KernelSpec {
    KernelFamily family = KernelFamily::SquaredExponential;
    double a = 1.0;    // inverse length-scale (SE, Matern)
    double nu = 1.5;   // smoothness (Matern) / shape (RQ)
    double ell = 1.0;  // length-scale (RQ)

    static KernelSpec se(double a);
    static KernelSpec matern(double nu, double a);
    static KernelSpec rq(double nu, double ell);

    // Positivity of hyperparameters; with a known domain dimension also the
    // Matern requirement nu > d/2.
    void validate(int domain_dim = 0) const;

    std::string family_name() const;
};

// k(x, x') for points in [0,1]^d; validates finiteness of the coordinates.
double eval_kernel(const KernelSpec& spec, std::span<const double> x, std::span<const double> y);

// Distance form used by the hot paths (r2 = squared euclidean distance).
double eval_kernel_r2(const KernelSpec& spec, double r2);

inline double squared_distance(const double* x, const double* y, int d) {
    double r2 = 0.0;
    for (int i = 0; i < d; ++i) {
        const double diff = x[i] - y[i];
        r2 += diff * diff;
    }
    return r2;
}

// Symmetric Gram matrix of the point set (flat row-major points, m x d).
linalg::Matrix gram_matrix(const KernelSpec& spec, const std::vector<double>& points, int dim);
linalg::Matrix gram_matrix_serial(const KernelSpec& spec, const std::vector<double>& points, int dim);

// Rectangular cross-kernel matrix k(A, B), |A| x |B|.
linalg::Matrix cross_kernel(const KernelSpec& spec, const std::vector<double>& a_points,
                            const double* b_points, int b_count, int dim);

// Eigenvalues of (1/m) K(X, X) over m scrambled-Sobol points, sorted
// nonincreasing. seed selects the digital scramble (0 = unscrambled).
std::vector<double> nystrom_spectrum(const KernelSpec& spec, int dim, int m, uint64_t seed);

struct DecaySlope {
    double slope = 0.0;
    double intercept = 0.0;
    double r2 = 0.0;
    int j_lo = 0;
    int j_hi = 0;
    std::string warning;  // nonempty when the window cannot be resolved
};

// Least-squares slope of log lambda_j vs log j over j in [m^0.2, m^0.6]
// (1-based), skipping nonpositive eigenvalues.
DecaySlope eigen_decay_slope(const std::vector<double>& eigenvalues);

}  // namespace fracgp
