#include "fracgp/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "fracgp/common.hpp"

namespace fracgp::linalg {

bool PackedLowerTri::push_border(const std::vector<double>& k_col, double k_diag) {
    const int t = n;
    std::vector<double> c(k_col);
    // forward substitution against the existing rows
    for (int s = 0; s < t; ++s) {
        const double* Ls = row(s);
        c[s] = (c[s] - dot(Ls, c.data(), s)) / Ls[s];
    }
    const double d2 = k_diag - dot(c.data(), c.data(), t);
    if (!(d2 > 0.0) || !std::isfinite(d2)) return false;
    data.insert(data.end(), c.begin(), c.end());
    data.push_back(std::sqrt(d2));
    n = t + 1;
    return true;
}

void PackedLowerTri::forward_solve(double* b) const {
    for (int s = 0; s < n; ++s) {
        const double* Ls = row(s);
        b[s] = (b[s] - dot(Ls, b, s)) / Ls[s];
    }
}

void PackedLowerTri::backward_solve(double* b) const {
    for (int s = n - 1; s >= 0; --s) {
        double acc = b[s];
        for (int i = s + 1; i < n; ++i) acc -= row(i)[s] * b[i];
        b[s] = acc / row(s)[s];
    }
}

double PackedLowerTri::logdet_sq() const {
    double ld = 0.0;
    for (int s = 0; s < n; ++s) ld += std::log(diag(s));
    return 2.0 * ld;
}

namespace {

// Column-block sweep: each block of RHS columns runs the full forward
// substitution independently, keeping per-column arithmetic order fixed.
void solve_block(const PackedLowerTri& L, Matrix& B, int c0, int c1) {
    const int t = L.n;
    const int w = c1 - c0;
    for (int s = 0; s < t; ++s) {
        const double* Ls = L.row(s);
        double* Bs = B.row(s) + c0;
        for (int u = 0; u < s; ++u) {
            const double l = Ls[u];
            const double* Bu = B.row(u) + c0;
            for (int j = 0; j < w; ++j) Bs[j] -= l * Bu[j];
        }
        const double inv = 1.0 / Ls[s];
        for (int j = 0; j < w; ++j) Bs[j] *= inv;
    }
}

}  // namespace

void forward_solve_multi(const PackedLowerTri& L, Matrix& B) {
    const int m = B.cols;
    constexpr int kBlock = 64;
    const int nblocks = (m + kBlock - 1) / kBlock;
#pragma omp parallel for schedule(static)
    for (int b = 0; b < nblocks; ++b) {
        solve_block(L, B, b * kBlock, std::min(m, (b + 1) * kBlock));
    }
}

void forward_solve_multi_serial(const PackedLowerTri& L, Matrix& B) {
    solve_block(L, B, 0, B.cols);
}

namespace {

inline void schur_row(Matrix& S, const Matrix& Vt, int i) {
    const int t = Vt.cols;
    const int m = S.rows;
    const double* vi = Vt.row(i);
    for (int j = i; j < m; ++j) {
        S(i, j) -= dot(vi, Vt.row(j), t);
        S(j, i) = S(i, j);
    }
}

}  // namespace

void subtract_gram_of(Matrix& S, const Matrix& Vt) {
    const int m = S.rows;
#pragma omp parallel for schedule(dynamic, 4)
    for (int i = 0; i < m; ++i) schur_row(S, Vt, i);
}

void subtract_gram_of_serial(Matrix& S, const Matrix& Vt) {
    for (int i = 0; i < S.rows; ++i) schur_row(S, Vt, i);
}

Matrix transpose(const Matrix& A) {
    Matrix T(A.cols, A.rows);
    for (int i = 0; i < A.rows; ++i)
        for (int j = 0; j < A.cols; ++j) T(j, i) = A(i, j);
    return T;
}

namespace {

template <bool Parallel>
bool cholesky_impl(Matrix& A) {
    const int n = A.rows;
    for (int j = 0; j < n; ++j) {
        double* Lj = A.row(j);
        const double d2 = Lj[j] - dot(Lj, Lj, j);
        if (!(d2 > 0.0) || !std::isfinite(d2)) return false;
        const double dj = std::sqrt(d2);
        Lj[j] = dj;
        const double inv = 1.0 / dj;
        if constexpr (Parallel) {
#pragma omp parallel for schedule(static)
            for (int i = j + 1; i < n; ++i) {
                double* Li = A.row(i);
                Li[j] = (Li[j] - dot(Li, Lj, j)) * inv;
            }
        } else {
            for (int i = j + 1; i < n; ++i) {
                double* Li = A.row(i);
                Li[j] = (Li[j] - dot(Li, Lj, j)) * inv;
            }
        }
    }
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) A(i, j) = 0.0;
    return true;
}

}  // namespace

bool cholesky_in_place(Matrix& A) { return cholesky_impl<true>(A); }
bool cholesky_in_place_serial(Matrix& A) { return cholesky_impl<false>(A); }

JitteredCholesky cholesky_with_jitter(Matrix A, double rel_base, double rel_max) {
    const int n = A.rows;
    double max_diag = 0.0;
    for (int i = 0; i < n; ++i) max_diag = std::max(max_diag, std::abs(A(i, i)));
    if (max_diag == 0.0) max_diag = 1.0;

    double jitter = 0.0;
    const Matrix original = A;
    while (true) {
        Matrix attempt = original;
        for (int i = 0; i < n; ++i) attempt(i, i) += jitter;
        if (cholesky_in_place(attempt)) return {std::move(attempt), jitter};
        if (jitter >= rel_max * max_diag) {
            char buf[128];
            std::snprintf(buf, sizeof(buf),
                          "Cholesky failed after jitter escalation to %.3e (n=%d)", jitter, n);
            throw NumericError(buf);
        }
        jitter = (jitter == 0.0) ? rel_base * max_diag : jitter * 10.0;
    }
}

std::vector<double> lower_tri_times(const Matrix& L, const std::vector<double>& z) {
    const int n = L.rows;
    std::vector<double> y(n);
    for (int i = 0; i < n; ++i) y[i] = dot(L.row(i), z.data(), i + 1);
    return y;
}

}  // namespace fracgp::linalg
