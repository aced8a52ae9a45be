#include "fracgp/objectives.hpp"

#include <algorithm>
#include <cmath>

#include "fracgp/common.hpp"
#include "fracgp/linalg.hpp"

namespace fracgp {

double rkhs_norm_squared(const KernelSpec& spec, const std::vector<double>& centers,
                         const std::vector<double>& coeffs, int dim) {
    const int n = static_cast<int>(coeffs.size());
    linalg::Matrix K = gram_matrix_serial(spec, centers, dim);
    double q = 0.0;
    for (int i = 0; i < n; ++i) q += coeffs[i] * linalg::dot(K.row(i), coeffs.data(), n);
    return q;
}

void rescale_to_norm(const KernelSpec& spec, const std::vector<double>& centers,
                     std::vector<double>& coeffs, int dim, double target_norm) {
    if (!(target_norm > 0.0)) throw ConfigError("rescale_to_norm: target_norm must be > 0");
    const double q = rkhs_norm_squared(spec, centers, coeffs, dim);
    if (!(q > 0.0))
        throw ConfigError("rescale_to_norm: expansion is identically zero on its span");
    const double scale = target_norm / std::sqrt(q);
    for (double& a : coeffs) a *= scale;
}

double evaluate_objective(const RKHSFunction& f, std::span<const double> x) {
    double v = 0.0;
    for (int i = 0; i < f.n_centers(); ++i)
        v += f.coeffs[i] *
             eval_kernel_r2(f.spec, squared_distance(f.centers.data() + static_cast<size_t>(i) * f.dim,
                                                     x.data(), f.dim));
    return v;
}

double observe_noisy(const RKHSFunction& f, std::span<const double> x, double lambda,
                     RngStream& rng) {
    if (lambda < 0.0) throw ConfigError("observe_noisy: lambda must be >= 0");
    const double z = rng.next_normal();  // consumed even at lambda = 0 to keep streams aligned
    return evaluate_objective(f, x) + std::sqrt(lambda) * z;
}

namespace {

int grid_budget_check(int dim, int resolution) {
    if (resolution < 10) throw ConfigError("locate_maximum: resolution must be >= 10");
    if (dim > 4)
        throw ConfigError("locate_maximum: dense grid search supports dim <= 4; "
                          "lower the dimension or locate the maximizer externally");
    double total = 1.0;
    for (int i = 0; i < dim; ++i) total *= resolution;
    if (total > 2.0e7)
        throw ConfigError("locate_maximum: grid of " + std::to_string(static_cast<long long>(total)) +
                          " points exceeds the evaluation budget; lower the resolution");
    return static_cast<int>(total);
}

}  // namespace

std::pair<std::vector<double>, double> locate_maximum(const RKHSFunction& f, int resolution) {
    const int dim = f.dim;
    const int total = grid_budget_check(dim, resolution);

    std::vector<double> best_x(dim, 0.0);
    double best_v = -std::numeric_limits<double>::infinity();
    std::vector<int> idx(dim, 0);
    std::vector<double> x(dim);
    for (int it = 0; it < total; ++it) {
        for (int j = 0; j < dim; ++j) x[j] = static_cast<double>(idx[j]) / (resolution - 1);
        const double v = evaluate_objective(f, x);
        if (v > best_v) {
            best_v = v;
            best_x = x;
        }
        for (int j = dim - 1; j >= 0; --j) {
            if (++idx[j] < resolution) break;
            idx[j] = 0;
        }
    }

    // three halving passes of coordinate refinement around the grid winner
    double h = 1.0 / (resolution - 1);
    for (int pass = 0; pass < 3; ++pass) {
        h *= 0.5;
        bool improved = true;
        int sweeps = 0;
        while (improved && sweeps++ < 64) {
            improved = false;
            for (int j = 0; j < dim; ++j) {
                for (const double step : {h, -h}) {
                    std::vector<double> cand = best_x;
                    cand[j] = std::clamp(cand[j] + step, 0.0, 1.0);
                    const double v = evaluate_objective(f, cand);
                    if (v > best_v) {
                        best_v = v;
                        best_x = cand;
                        improved = true;
                    }
                }
            }
        }
    }
    return {best_x, best_v};
}

RKHSFunction synthesize_objective(const KernelSpec& spec, int dim, int n, uint64_t seed,
                                  double target_norm, int locate_resolution) {
    spec.validate(dim);
    if (n < 1) throw ConfigError("synthesize_objective: n must be >= 1");
    if (!(target_norm > 0.0)) throw ConfigError("synthesize_objective: target_norm must be > 0");

    RKHSFunction f;
    f.spec = spec;
    f.dim = dim;
    f.seed = seed;

    for (int attempt = 0;; ++attempt) {
        RngStream centers_rng(seed + static_cast<uint64_t>(attempt), Stream::ObjectiveCenters);
        RngStream coeffs_rng(seed + static_cast<uint64_t>(attempt), Stream::ObjectiveCoeffs);
        f.centers.resize(static_cast<size_t>(n) * dim);
        for (double& c : f.centers) c = centers_rng.next_unit();
        f.coeffs.resize(n);
        for (double& a : f.coeffs) a = coeffs_rng.next_normal();

        // reject numerically singular center Grams (duplicated centers)
        linalg::Matrix K = gram_matrix_serial(spec, f.centers, dim);
        linalg::Matrix L = K;
        for (int i = 0; i < n; ++i) L(i, i) += 1e-12;
        if (!linalg::cholesky_in_place_serial(L)) {
            if (attempt >= 4)
                throw NumericError("synthesize_objective: center Gram stayed singular after 5 draws");
            continue;
        }
        rescale_to_norm(spec, f.centers, f.coeffs, dim, target_norm);
        f.norm = target_norm;
        break;
    }

    auto [x0, v0] = locate_maximum(f, locate_resolution);
    f.x_max = x0;
    f.f_max = v0;
    f.locate_residual = 1.0 / (locate_resolution - 1) / 8.0;  // step size after 3 halvings
    return f;
}

}  // namespace fracgp
