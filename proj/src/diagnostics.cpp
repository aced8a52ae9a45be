#include "fracgp/diagnostics.hpp"

#include <algorithm>
#include <cmath>

#include "fracgp/common.hpp"
#include "fracgp/lowdisc.hpp"
#include "fracgp/rng.hpp"

namespace fracgp {

double information_gain(const linalg::Matrix& K, double lambda) {
    if (K.rows != K.cols) throw InputError("information_gain: K must be square");
    if (!(lambda > 0.0)) throw ConfigError("information_gain: lambda must be > 0");
    const int n = K.rows;
    linalg::Matrix A(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) A(i, j) = K(i, j) / lambda + (i == j ? 1.0 : 0.0);
    const linalg::JitteredCholesky jc = linalg::cholesky_with_jitter(std::move(A));
    double ld = 0.0;
    for (int i = 0; i < n; ++i) ld += std::log(jc.L(i, i));
    return ld;  // = 0.5 log det
}

GammaCurve greedy_gamma_curve(const KernelSpec& spec, int dim, double lambda, int T_max,
                              int pool_size, uint64_t seed) {
    if (pool_size < T_max) throw ConfigError("greedy_gamma_curve: pool_size must be >= T_max");
    spec.validate(dim);
    if (!(lambda > 0.0)) throw ConfigError("greedy_gamma_curve: lambda must be > 0");

    GammaCurve curve;
    curve.spec = spec;
    curve.dim = dim;
    curve.lambda = lambda;
    curve.pool_size = pool_size;
    curve.seed = seed;
    curve.gamma.reserve(T_max);
    curve.selected.reserve(T_max);

    const std::vector<double> pool = sobol_points(dim, pool_size, seed);
    std::vector<double> var(pool_size, eval_kernel_r2(spec, 0.0));

    // W.row(p) holds (L^{-1} k(S, x_p))^T for the noisy factor L of
    // k(S, S) + lambda I; posterior variance is var[p] - |W.row(p)|^2.
    linalg::Matrix W(pool_size, T_max);
    linalg::PackedLowerTri L;
    L.reserve_order(T_max);
    double gamma = 0.0;

    for (int t = 0; t < T_max; ++t) {
        int j_star = 0;
        for (int j = 1; j < pool_size; ++j)
            if (var[j] > var[j_star]) j_star = j;
        gamma += 0.5 * std::log1p(std::max(var[j_star], 0.0) / lambda);
        curve.gamma.push_back(gamma);
        curve.selected.push_back(j_star);

        // bordered row for the selected point (raw kernel column vs the set)
        const double* xj = pool.data() + static_cast<size_t>(j_star) * dim;
        std::vector<double> col(t);
        for (int s = 0; s < t; ++s) {
            const double* xs = pool.data() + static_cast<size_t>(curve.selected[s]) * dim;
            col[s] = eval_kernel_r2(spec, squared_distance(xs, xj, dim));
        }
        const double diag = eval_kernel_r2(spec, 0.0) + lambda;
        if (!L.push_border(col, diag))
            throw NumericError("greedy_gamma_curve: factor breakdown (lambda too small)");

        const double* Lrow = L.row(t);
        const double inv_d = 1.0 / Lrow[t];
#pragma omp parallel for schedule(static)
        for (int p = 0; p < pool_size; ++p) {
            double* Wp = W.row(p);
            double acc = eval_kernel_r2(
                spec, squared_distance(xj, pool.data() + static_cast<size_t>(p) * dim, dim));
            for (int s = 0; s < t; ++s) acc -= Lrow[s] * Wp[s];
            Wp[t] = acc * inv_d;
            var[p] -= Wp[t] * Wp[t];
        }
    }
    return curve;
}

CumvarReport cumvar_vs_gamma(const std::vector<RegretTrace>& traces, const GammaCurve& curve) {
    if (traces.empty()) throw InputError("cumvar_vs_gamma: no traces");
    int T = static_cast<int>(curve.gamma.size());
    for (const RegretTrace& tr : traces) T = std::min(T, tr.completed);
    if (T < 1) throw InputError("cumvar_vs_gamma: empty trace");

    CumvarReport rep;
    for (int cp = 1; cp <= T; cp *= 2) rep.checkpoints.push_back(cp);

    for (const int cp : rep.checkpoints) {
        double avg = 0.0;
        for (const RegretTrace& tr : traces) {
            double s = 0.0;
            for (int t = 0; t < cp; ++t) s += tr.k_var[t];
            avg += s;
        }
        avg /= static_cast<double>(traces.size());
        const double g = curve.gamma[cp - 1];
        rep.avg_cumvar.push_back(avg);
        rep.gamma.push_back(g);
        rep.ratio.push_back(avg / (4.0 * g));
    }
    rep.max_ratio = *std::max_element(rep.ratio.begin(), rep.ratio.end());
    rep.flagged = rep.max_ratio > 1.05;
    return rep;
}

namespace {

// phi_j(x) = cos(w_j . x + b_j): bounded random features on [0,1]^d (d = 1).
struct FeatureMap {
    std::vector<double> w, b;
    int dim() const { return static_cast<int>(w.size()); }
    void eval(double x, double* out) const {
        for (int j = 0; j < dim(); ++j) out[j] = std::cos(w[j] * x + b[j]);
    }
};

}  // namespace

std::pair<double, double> identity_two_routes(const IdentityInstance& inst, double lambda,
                                              double alpha) {
    if (!(lambda > 0.0)) throw ConfigError("identity_two_routes: lambda must be > 0");
    if (!(alpha > 0.0) || alpha > 1.0) throw ConfigError("identity_two_routes: alpha in (0,1]");
    const int D = static_cast<int>(inst.spectrum.size());
    const int t = inst.features.cols;
    const std::vector<double>& Lam = inst.spectrum;
    const linalg::Matrix& Phi = inst.features;
    const std::vector<double>& g = inst.coeffs;
    for (const double l : Lam)
        if (!(l > 1e-12)) throw NumericError("identity_two_routes: spectrum entry below 1e-12");

    // Tempered prior spectrum Lam^a = alpha^{-1} Lam; the posterior feature
    // covariance follows the kernel-side formula
    //   Lam_t = Lam^a - Lam^a Phi (Phi^T Lam^a Phi + (lambda/alpha) I)^{-1} Phi^T Lam^a
    // (tempering rescales kernel and regularizer together), and the left
    // side is ||f||^2_{k_t^a} = g^T Lam_t^{-1} g.
    const double inv_alpha = 1.0 / alpha;
    linalg::Matrix Lam_t(D, D);
    for (int i = 0; i < D; ++i) Lam_t(i, i) = Lam[i] * inv_alpha;

    if (t > 0) {
        linalg::Matrix M(t, t);  // Phi^T Lam^a Phi + (lambda/alpha) I
        for (int s = 0; s < t; ++s)
            for (int r = 0; r < t; ++r) {
                double acc = 0.0;
                for (int j = 0; j < D; ++j) acc += Phi(j, s) * Lam[j] * inv_alpha * Phi(j, r);
                M(s, r) = acc + (s == r ? lambda * inv_alpha : 0.0);
            }
        linalg::Matrix Lm = M;
        if (!linalg::cholesky_in_place_serial(Lm))
            throw NumericError("identity_two_routes: data Gram factorization failed");

        // B = Lm^{-1} (Phi^T Lam^a): t x D
        linalg::Matrix B(t, D);
        for (int s = 0; s < t; ++s)
            for (int j = 0; j < D; ++j) B(s, j) = Phi(j, s) * Lam[j] * inv_alpha;
        for (int s = 0; s < t; ++s) {
            for (int u = 0; u < s; ++u) {
                const double l = Lm(s, u);
                for (int j = 0; j < D; ++j) B(s, j) -= l * B(u, j);
            }
            const double inv = 1.0 / Lm(s, s);
            for (int j = 0; j < D; ++j) B(s, j) *= inv;
        }
        for (int i = 0; i < D; ++i)
            for (int j = 0; j < D; ++j) {
                double acc = 0.0;
                for (int s = 0; s < t; ++s) acc += B(s, i) * B(s, j);
                Lam_t(i, j) -= acc;
            }
    }

    // Left side: g^T Lam_t^{-1} g by a symmetric solve.
    linalg::Matrix Lt = Lam_t;
    if (!linalg::cholesky_in_place_serial(Lt))
        throw NumericError("identity_two_routes: posterior spectrum factorization failed");
    std::vector<double> sol = g;
    for (int i = 0; i < D; ++i) {
        double acc = sol[i];
        for (int j = 0; j < i; ++j) acc -= Lt(i, j) * sol[j];
        sol[i] = acc / Lt(i, i);
    }
    // |L^{-1} g|^2 differs from g^T Lam_t^{-1} g by the L^T solve; finish it.
    std::vector<double> full = sol;
    for (int i = D - 1; i >= 0; --i) {
        double acc = full[i];
        for (int j = i + 1; j < D; ++j) acc -= Lt(j, i) * full[j];
        full[i] = acc / Lt(i, i);
    }
    const double lhs = linalg::dot(g.data(), full.data(), D);

    // Right side: ||f||^2_{k^a} + alpha lambda^{-1} sum f(x_s)^2, direct.
    double rhs = 0.0;
    for (int j = 0; j < D; ++j) rhs += g[j] * g[j] / (Lam[j] * inv_alpha);
    for (int s = 0; s < t; ++s) {
        double fx = 0.0;
        for (int j = 0; j < D; ++j) fx += Phi(j, s) * g[j];
        rhs += alpha / lambda * fx * fx;
    }
    return {lhs, rhs};
}

double rkhs_norm_identity(int feature_dim, int t, double lambda, double alpha, uint64_t seed) {
    if (feature_dim < 1) throw ConfigError("rkhs_norm_identity: feature_dim must be >= 1");
    if (t < 0) throw ConfigError("rkhs_norm_identity: t must be >= 0");

    RngStream rng(seed, Stream::Generic);
    const int D = feature_dim;

    IdentityInstance inst;
    inst.spectrum.resize(D);
    for (int tries = 0;; ++tries) {
        for (double& l : inst.spectrum) l = std::exp(std::log(1e-3) * rng.next_unit());
        if (*std::min_element(inst.spectrum.begin(), inst.spectrum.end()) > 1e-12) break;
        if (tries > 16) throw NumericError("rkhs_norm_identity: degenerate spectrum");
    }

    FeatureMap phi;
    phi.w.resize(D);
    phi.b.resize(D);
    for (int j = 0; j < D; ++j) {
        phi.w[j] = 8.0 * M_PI * (rng.next_unit() - 0.5);
        phi.b[j] = 2.0 * M_PI * rng.next_unit();
    }
    inst.features = linalg::Matrix(D, t);
    std::vector<double> buf(D);
    for (int s = 0; s < t; ++s) {
        phi.eval(rng.next_unit(), buf.data());
        for (int j = 0; j < D; ++j) inst.features(j, s) = buf[j];
    }
    inst.coeffs.resize(D);
    for (double& v : inst.coeffs) v = rng.next_normal();

    const auto [lhs, rhs] = identity_two_routes(inst, lambda, alpha);
    const double denom = std::max(std::abs(lhs), std::abs(rhs));
    return denom == 0.0 ? 0.0 : std::abs(lhs - rhs) / denom;
}

IdentityReport rkhs_identity_suite(int instances, uint64_t seed) {
    IdentityReport rep;
    rep.instances = instances;
    RngStream pick(seed, Stream::Generic, 0xA11CE);
    for (int i = 0; i < instances; ++i) {
        const int D = 1 + static_cast<int>(pick.next_u32() % 16);
        const int t = static_cast<int>(pick.next_u32() % 13);
        const double lambda = 0.05 + 0.95 * pick.next_unit();
        const double alpha = 0.1 + 0.9 * pick.next_unit();
        const double err = rkhs_norm_identity(D, t, lambda, alpha, seed + 1000 + i);
        rep.max_rel_error = std::max(rep.max_rel_error, err);
    }
    return rep;
}

double renyi_divergence(const RKHSFunction& f, const RKHSFunction& g,
                        const std::vector<double>& query_points, double lambda, double beta) {
    if (!(beta > 0.0) || beta == 1.0) throw InputError("renyi_divergence: beta must be > 0, != 1");
    if (!(lambda > 0.0)) throw ConfigError("renyi_divergence: lambda must be > 0");
    const int dim = f.dim;
    const int t = static_cast<int>(query_points.size()) / dim;
    double s = 0.0;
    for (int i = 0; i < t; ++i) {
        std::span<const double> x(query_points.data() + static_cast<size_t>(i) * dim, dim);
        const double d = evaluate_objective(f, x) - evaluate_objective(g, x);
        s += d * d;
    }
    return beta / (2.0 * lambda) * s;
}

FitResult linear_fit(std::span<const double> xs, std::span<const double> ys) {
    const int n = static_cast<int>(xs.size());
    if (n < 3 || ys.size() != xs.size()) throw InputError("linear_fit: need >= 3 paired points");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (int i = 0; i < n; ++i) {
        sx += xs[i]; sy += ys[i]; sxx += xs[i] * xs[i]; sxy += xs[i] * ys[i];
    }
    FitResult r;
    const double denom = n * sxx - sx * sx;
    if (denom == 0.0) throw InputError("linear_fit: degenerate abscissae");
    r.slope = (n * sxy - sx * sy) / denom;
    r.intercept = (sy - r.slope * sx) / n;
    double ss_res = 0, ss_tot = 0;
    const double ybar = sy / n;
    for (int i = 0; i < n; ++i) {
        const double fit = r.slope * xs[i] + r.intercept;
        ss_res += (ys[i] - fit) * (ys[i] - fit);
        ss_tot += (ys[i] - ybar) * (ys[i] - ybar);
    }
    r.r2 = (ss_tot > 0.0) ? 1.0 - ss_res / ss_tot : 1.0;
    return r;
}

FitResult fit_log_slope(std::span<const double> xs, std::span<const double> ys) {
    const int n = static_cast<int>(xs.size());
    if (n < 3 || ys.size() != xs.size()) throw InputError("fit_log_slope: need >= 3 paired points");
    std::vector<double> lx(n), ly(n);
    for (int i = 0; i < n; ++i) {
        if (!(xs[i] > 0.0) || !(ys[i] > 0.0))
            throw InputError("fit_log_slope: inputs must be strictly positive");
        lx[i] = std::log(xs[i]);
        ly[i] = std::log(ys[i]);
    }
    return linear_fit(lx, ly);
}

}  // namespace fracgp
