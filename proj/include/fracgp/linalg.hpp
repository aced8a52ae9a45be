#pragma once

// Dense symmetric linear algebra used by the posterior updates and the
// information-gain machinery. The hot loops (multi-RHS triangular solves,
// Gram-style products, Cholesky elimination) have OpenMP-parallel entry
// points plus serial reference twins. Parallel variants partition output
// elements only; every element is produced by the same serial inner loop,
// so results are bit-identical for any thread count.

#include <cstddef>
#include <vector>

namespace fracgp::linalg {

struct Matrix {
    int rows = 0;
    int cols = 0;
    std::vector<double> data;  // row-major

    Matrix() = default;
    Matrix(int r, int c, double fill = 0.0) : rows(r), cols(c), data(static_cast<size_t>(r) * c, fill) {}

    double& operator()(int r, int c) { return data[static_cast<size_t>(r) * cols + c]; }
    double operator()(int r, int c) const { return data[static_cast<size_t>(r) * cols + c]; }
    double* row(int r) { return data.data() + static_cast<size_t>(r) * cols; }
    const double* row(int r) const { return data.data() + static_cast<size_t>(r) * cols; }
};

// Lower-triangular factor stored packed row-major: row s occupies
// entries [s(s+1)/2, s(s+1)/2 + s]. Grows one bordered row at a time.
struct PackedLowerTri {
    int n = 0;
    std::vector<double> data;

    void reserve_order(int order) { data.reserve(static_cast<size_t>(order) * (order + 1) / 2); }
    const double* row(int s) const { return data.data() + static_cast<size_t>(s) * (s + 1) / 2; }
    double diag(int s) const { return row(s)[s]; }

    // Appends row (c_0 .. c_{n-1}, d) where c solves L c = k and
    // d^2 = k_new_diag - |c|^2. Returns false on a nonpositive pivot,
    // leaving the factor unchanged.
    bool push_border(const std::vector<double>& k_col, double k_diag);

    // In-place solves with the implied triangular systems.
    void forward_solve(double* b) const;                   // L x = b
    void backward_solve(double* b) const;                  // L^T x = b
    double logdet_sq() const;                              // log det(L L^T)
};

// Solves L X = B for a row-major t x m right-hand side in place.
void forward_solve_multi(const PackedLowerTri& L, Matrix& B);
void forward_solve_multi_serial(const PackedLowerTri& L, Matrix& B);

// S -= Vt Vt^T where Vt is m x t (one row per output index) and S is m x m
// symmetric. Row-major Vt keeps the dot products contiguous.
void subtract_gram_of(Matrix& S, const Matrix& Vt);
void subtract_gram_of_serial(Matrix& S, const Matrix& Vt);

Matrix transpose(const Matrix& A);

// In-place lower Cholesky of a symmetric matrix (upper triangle ignored,
// strictly-upper entries of the result are zeroed). Returns false on a
// nonpositive pivot.
bool cholesky_in_place(Matrix& A);
bool cholesky_in_place_serial(Matrix& A);

struct JitteredCholesky {
    Matrix L;
    double jitter = 0.0;  // total added to the diagonal
};

// Factor A + jitter*I under the escalation policy: first attempt with no
// jitter, then rel_base*max(diag), escalating x10 up to rel_max*max(diag).
// Throws NumericError once the ladder is exhausted.
JitteredCholesky cholesky_with_jitter(Matrix A, double rel_base = 1e-10, double rel_max = 1e-6);

// y = L z for a dense lower-triangular L (rows >= cols assumed square).
std::vector<double> lower_tri_times(const Matrix& L, const std::vector<double>& z);

inline double dot(const double* a, const double* b, int n) {
    double s = 0.0;
    for (int i = 0; i < n; ++i) s += a[i] * b[i];
    return s;
}

}  // namespace fracgp::linalg
