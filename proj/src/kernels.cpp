#include "fracgp/kernels.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

#include "fracgp/common.hpp"
#include "fracgp/lowdisc.hpp"

namespace fracgp {

KernelSpec KernelSpec::se(double a) { return {KernelFamily::SquaredExponential, a, 0.0, 0.0}; }
KernelSpec KernelSpec::matern(double nu, double a) { return {KernelFamily::Matern, a, nu, 0.0}; }
KernelSpec KernelSpec::rq(double nu, double ell) { return {KernelFamily::RationalQuadratic, 0.0, nu, ell}; }

void KernelSpec::validate(int domain_dim) const {
    switch (family) {
        case KernelFamily::SquaredExponential:
            if (!(a > 0.0)) throw ConfigError("SE kernel requires a > 0");
            break;
        case KernelFamily::Matern:
            if (!(a > 0.0) || !(nu > 0.0)) throw ConfigError("Matern kernel requires a > 0 and nu > 0");
            if (domain_dim > 0 && !(nu > 0.5 * domain_dim))
                throw ConfigError("Matern kernel requires nu > d/2 for domain dimension " +
                                  std::to_string(domain_dim));
            break;
        case KernelFamily::RationalQuadratic:
            if (!(nu > 0.0) || !(ell > 0.0)) throw ConfigError("RQ kernel requires nu > 0 and ell > 0");
            break;
    }
}

std::string KernelSpec::family_name() const {
    switch (family) {
        case KernelFamily::SquaredExponential: return "se";
        case KernelFamily::Matern: return "matern";
        case KernelFamily::RationalQuadratic: return "rq";
    }
    return "?";
}

namespace {

double matern_value(double nu, double s) {
    // s = sqrt(2 nu) * a * r
    if (s < 1e-12) return 1.0;
    if (nu == 0.5) return std::exp(-s);
    if (nu == 1.5) return (1.0 + s) * std::exp(-s);
    if (nu == 2.5) return (1.0 + s + s * s / 3.0) * std::exp(-s);
    const double v = std::pow(2.0, 1.0 - nu) / std::tgamma(nu) * std::pow(s, nu) * std::cyl_bessel_k(nu, s);
    if (!std::isfinite(v))
        throw ConfigError("Matern Bessel evaluation overflowed (nu = " + std::to_string(nu) + ")");
    return v;
}

}  // namespace

double eval_kernel_r2(const KernelSpec& spec, double r2) {
    switch (spec.family) {
        case KernelFamily::SquaredExponential:
            return std::exp(-spec.a * spec.a * r2);
        case KernelFamily::Matern:
            return matern_value(spec.nu, std::sqrt(2.0 * spec.nu * r2) * spec.a);
        case KernelFamily::RationalQuadratic:
            return std::pow(1.0 + r2 / (2.0 * spec.nu * spec.ell * spec.ell), -spec.nu);
    }
    return 0.0;
}

double eval_kernel(const KernelSpec& spec, std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw InputError("eval_kernel: dimension mismatch");
    spec.validate();
    for (size_t i = 0; i < x.size(); ++i)
        if (!std::isfinite(x[i]) || !std::isfinite(y[i]))
            throw InputError("eval_kernel: non-finite coordinate");
    return eval_kernel_r2(spec, squared_distance(x.data(), y.data(), static_cast<int>(x.size())));
}

namespace {

template <bool Parallel>
linalg::Matrix gram_impl(const KernelSpec& spec, const std::vector<double>& pts, int dim) {
    if (pts.empty()) throw InputError("gram_matrix: empty point set");
    const int m = static_cast<int>(pts.size()) / dim;
    linalg::Matrix K(m, m);
#pragma omp parallel for schedule(dynamic, 8) if (Parallel)
    for (int i = 0; i < m; ++i) {
        const double* xi = pts.data() + static_cast<size_t>(i) * dim;
        K(i, i) = eval_kernel_r2(spec, 0.0);
        for (int j = i + 1; j < m; ++j) {
            const double* xj = pts.data() + static_cast<size_t>(j) * dim;
            const double v = eval_kernel_r2(spec, squared_distance(xi, xj, dim));
            K(i, j) = v;
            K(j, i) = v;
        }
    }
    return K;
}

}  // namespace

linalg::Matrix gram_matrix(const KernelSpec& spec, const std::vector<double>& pts, int dim) {
    return gram_impl<true>(spec, pts, dim);
}

linalg::Matrix gram_matrix_serial(const KernelSpec& spec, const std::vector<double>& pts, int dim) {
    return gram_impl<false>(spec, pts, dim);
}

linalg::Matrix cross_kernel(const KernelSpec& spec, const std::vector<double>& a_points,
                            const double* b_points, int b_count, int dim) {
    const int t = static_cast<int>(a_points.size()) / dim;
    linalg::Matrix K(t, b_count);
#pragma omp parallel for schedule(static)
    for (int s = 0; s < t; ++s) {
        const double* xs = a_points.data() + static_cast<size_t>(s) * dim;
        double* row = K.row(s);
        for (int j = 0; j < b_count; ++j)
            row[j] = eval_kernel_r2(spec, squared_distance(xs, b_points + static_cast<size_t>(j) * dim, dim));
    }
    return K;
}

std::vector<double> nystrom_spectrum(const KernelSpec& spec, int dim, int m, uint64_t seed) {
    if (m < 2) throw ConfigError("nystrom_spectrum requires m >= 2");
    spec.validate(dim);
    const std::vector<double> pts = sobol_points(dim, m, seed);
    linalg::Matrix K = gram_matrix(spec, pts, dim);

    Eigen::Map<Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> km(
        K.data.data(), m, m);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(km, Eigen::EigenvaluesOnly);
    std::vector<double> eigs(m);
    for (int i = 0; i < m; ++i) eigs[i] = solver.eigenvalues()(m - 1 - i) / m;
    return eigs;
}

DecaySlope eigen_decay_slope(const std::vector<double>& eigenvalues) {
    const int m = static_cast<int>(eigenvalues.size());
    DecaySlope out;
    out.j_lo = static_cast<int>(std::ceil(std::pow(m, 0.2)));
    out.j_hi = static_cast<int>(std::floor(std::pow(m, 0.6)));
    std::vector<double> lx, ly;
    for (int j = out.j_lo; j <= std::min(out.j_hi, m); ++j) {
        const double lam = eigenvalues[j - 1];
        if (lam > 0.0) {
            lx.push_back(std::log(static_cast<double>(j)));
            ly.push_back(std::log(lam));
        }
    }
    if (lx.size() < 3) {
        out.warning = "decay window [" + std::to_string(out.j_lo) + "," + std::to_string(out.j_hi) +
                      "] has fewer than 3 usable eigenvalues; increase m";
        return out;
    }
    // least squares on (log j, log lambda)
    const int n = static_cast<int>(lx.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
    for (int i = 0; i < n; ++i) {
        sx += lx[i]; sy += ly[i]; sxx += lx[i] * lx[i]; sxy += lx[i] * ly[i]; syy += ly[i] * ly[i];
    }
    const double denom = n * sxx - sx * sx;
    out.slope = (n * sxy - sx * sy) / denom;
    out.intercept = (sy - out.slope * sx) / n;
    double ss_res = 0, ss_tot = 0;
    const double ybar = sy / n;
    for (int i = 0; i < n; ++i) {
        const double fit = out.slope * lx[i] + out.intercept;
        ss_res += (ly[i] - fit) * (ly[i] - fit);
        ss_tot += (ly[i] - ybar) * (ly[i] - ybar);
    }
    out.r2 = (ss_tot > 0.0) ? 1.0 - ss_res / ss_tot : 1.0;
    return out;
}

}  // namespace fracgp
