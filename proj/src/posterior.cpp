#include "fracgp/posterior.hpp"

#include <algorithm>
#include <cmath>

#include "fracgp/common.hpp"

namespace fracgp {

PosteriorState init_state(const KernelSpec& spec, int dim, double lambda, double alpha,
                          int capacity_hint) {
    spec.validate(dim);
    if (!(lambda > 0.0)) throw ConfigError("init_state: lambda must be > 0");
    if (!(alpha > 0.0) || alpha > 1.0) throw ConfigError("init_state: alpha must be in (0, 1]");
    PosteriorState s;
    s.spec = spec;
    s.dim = dim;
    s.lambda = lambda;
    s.alpha = alpha;
    if (capacity_hint > 0) {
        s.points.reserve(static_cast<size_t>(capacity_hint) * dim);
        s.obs.reserve(capacity_hint);
        s.u.reserve(capacity_hint);
        s.chol.reserve_order(capacity_hint);
    }
    return s;
}

namespace {

// Refactor K + (lambda + jitter) I from scratch, escalating jitter until the
// factorization succeeds or the cap is reached.
void refactor(PosteriorState& s, double start_jitter) {
    const int t = s.t();
    linalg::Matrix K = gram_matrix_serial(s.spec, s.points, s.dim);
    double max_diag = 0.0;
    for (int i = 0; i < t; ++i) max_diag = std::max(max_diag, K(i, i) + s.lambda);

    double jit = start_jitter;
    while (true) {
        linalg::Matrix A = K;
        for (int i = 0; i < t; ++i) A(i, i) += s.lambda + jit;
        if (linalg::cholesky_in_place_serial(A)) {
            s.chol.n = t;
            s.chol.data.clear();
            for (int r = 0; r < t; ++r)
                s.chol.data.insert(s.chol.data.end(), A.row(r), A.row(r) + r + 1);
            s.jitter = jit;
            s.u = s.obs;
            s.chol.forward_solve(s.u.data());
            return;
        }
        if (jit >= 1e-6 * max_diag)
            throw NumericError("posterior factorization failed after jitter escalation");
        jit = (jit == 0.0) ? 1e-10 * max_diag : jit * 10.0;
    }
}

}  // namespace

PosteriorState incorporate(PosteriorState s, const double* x, double y) {
    for (int i = 0; i < s.dim; ++i)
        if (!std::isfinite(x[i])) throw InputError("incorporate: non-finite coordinate");
    if (!std::isfinite(y)) throw InputError("incorporate: non-finite observation");

    const int t = s.t();
    std::vector<double> col(t);
    for (int i = 0; i < t; ++i)
        col[i] = eval_kernel_r2(s.spec, squared_distance(s.points.data() + static_cast<size_t>(i) * s.dim,
                                                         x, s.dim));
    const double diag = eval_kernel_r2(s.spec, 0.0) + s.lambda + s.jitter;

    s.points.insert(s.points.end(), x, x + s.dim);
    s.obs.push_back(y);

    if (s.chol.push_border(col, diag)) {
        // extend u with the new bordered row
        const double* last = s.chol.row(t);
        s.u.push_back((y - linalg::dot(last, s.u.data(), t)) / last[t]);
    } else {
        refactor(s, s.jitter);
    }
    return s;
}

Prediction predict(const PosteriorState& state, const double* probes, int count) {
    const int t = state.t();
    for (int i = 0; i < count * state.dim; ++i)
        if (!std::isfinite(probes[i])) throw InputError("predict: non-finite probe coordinate");
    Prediction out;
    out.mean.assign(count, 0.0);

    // prior Gram over the probes
    std::vector<double> pvec(probes, probes + static_cast<size_t>(count) * state.dim);
    out.cov = gram_matrix(state.spec, pvec, state.dim);

    if (t > 0) {
        linalg::Matrix V = cross_kernel(state.spec, state.points, probes, count, state.dim);
        linalg::forward_solve_multi(state.chol, V);        // V = L^{-1} k(A_t, X)
        const linalg::Matrix Vt = linalg::transpose(V);    // count x t
#pragma omp parallel for schedule(static)
        for (int j = 0; j < count; ++j)
            out.mean[j] = linalg::dot(Vt.row(j), state.u.data(), t);
        linalg::subtract_gram_of(out.cov, Vt);             // k_t = K_XX - V^T V
    }

    out.tempered_var.resize(count);
    for (int j = 0; j < count; ++j) out.tempered_var[j] = out.cov(j, j) / state.alpha;
    return out;
}

void predict_point(const PosteriorState& state, const double* x, double& mean, double& var) {
    const int t = state.t();
    mean = 0.0;
    var = eval_kernel_r2(state.spec, 0.0);
    if (t == 0) return;
    std::vector<double> c(t);
    for (int i = 0; i < t; ++i)
        c[i] = eval_kernel_r2(state.spec, squared_distance(state.points.data() + static_cast<size_t>(i) * state.dim,
                                                           x, state.dim));
    state.chol.forward_solve(c.data());
    mean = linalg::dot(c.data(), state.u.data(), t);
    var -= linalg::dot(c.data(), c.data(), t);
}

PosteriorState rebuild(const PosteriorState& state) {
    PosteriorState s = init_state(state.spec, state.dim, state.lambda, state.alpha, state.t());
    s.points = state.points;
    s.obs = state.obs;
    if (s.t() > 0) refactor(s, state.jitter);
    return s;
}

std::vector<double> weights(const PosteriorState& state) {
    std::vector<double> w = state.u;
    state.chol.backward_solve(w.data());
    return w;
}

double condition_estimate(const PosteriorState& state) {
    if (state.t() == 0) return 1.0;
    double lo = state.chol.diag(0), hi = lo;
    for (int s = 1; s < state.t(); ++s) {
        lo = std::min(lo, state.chol.diag(s));
        hi = std::max(hi, state.chol.diag(s));
    }
    const double r = hi / lo;
    return r * r;
}

}  // namespace fracgp
