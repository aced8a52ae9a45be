// Times the OpenMP kernels against their serial references and checks the
// outputs match bit-for-bit. Thread count comes from OMP_NUM_THREADS.

#include <chrono>
#include <cstdio>
#include <omp.h>

#include "fracgp/kernels.hpp"
#include "fracgp/linalg.hpp"
#include "fracgp/lowdisc.hpp"

using namespace fracgp;
using Clock = std::chrono::steady_clock;

namespace {

double time_of(const auto& fn, int reps) {
    fn();  // warm up
    const auto t0 = Clock::now();
    for (int r = 0; r < reps; ++r) fn();
    return std::chrono::duration<double>(Clock::now() - t0).count() / reps;
}

bool bits_equal(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size()) return false;
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i] != b[i]) return false;
    return true;
}

}  // namespace

int main() {
    std::printf("threads: %d\n\n", omp_get_max_threads());
    std::printf("%-28s %10s %10s %8s %6s\n", "kernel", "serial(s)", "omp(s)", "speedup", "bits");

    const KernelSpec se = KernelSpec::se(1.0);

    for (const int n : {256, 1024}) {
        const std::vector<double> pts = sobol_points(1, n, 7);
        linalg::Matrix Ks, Kp;
        const double ts = time_of([&] { Ks = gram_matrix_serial(se, pts, 1); }, 3);
        const double tp = time_of([&] { Kp = gram_matrix(se, pts, 1); }, 3);
        std::printf("%-28s %10.5f %10.5f %8.2fx %6s\n",
                    ("gram n=" + std::to_string(n)).c_str(), ts, tp, ts / tp,
                    bits_equal(Ks.data, Kp.data) ? "equal" : "DIFF");
    }

    for (const int t : {512, 2048}) {
        const int m = 64;
        const std::vector<double> pts = sobol_points(1, t, 11);
        linalg::Matrix K = gram_matrix(se, pts, 1);
        for (int i = 0; i < t; ++i) K(i, i) += 0.1;
        linalg::Matrix Lm = K;
        linalg::cholesky_in_place(Lm);
        linalg::PackedLowerTri L;
        L.n = t;
        for (int r = 0; r < t; ++r) L.data.insert(L.data.end(), Lm.row(r), Lm.row(r) + r + 1);

        const std::vector<double> probes = sobol_points(1, m, 23);
        const linalg::Matrix B0 = cross_kernel(se, pts, probes.data(), m, 1);
        linalg::Matrix Bs, Bp;
        const double ts = time_of([&] { Bs = B0; forward_solve_multi_serial(L, Bs); }, 3);
        const double tp = time_of([&] { Bp = B0; forward_solve_multi(L, Bp); }, 3);
        std::printf("%-28s %10.5f %10.5f %8.2fx %6s\n",
                    ("solve t=" + std::to_string(t) + " m=" + std::to_string(m)).c_str(), ts, tp,
                    ts / tp, bits_equal(Bs.data, Bp.data) ? "equal" : "DIFF");

        const linalg::Matrix Vt = linalg::transpose(Bp);
        linalg::Matrix Ss(m, m, 1.0), Sp(m, m, 1.0);
        const double ts2 = time_of([&] { linalg::Matrix S(m, m, 1.0); linalg::subtract_gram_of_serial(S, Vt); Ss = S; }, 5);
        const double tp2 = time_of([&] { linalg::Matrix S(m, m, 1.0); linalg::subtract_gram_of(S, Vt); Sp = S; }, 5);
        std::printf("%-28s %10.5f %10.5f %8.2fx %6s\n",
                    ("schur t=" + std::to_string(t) + " m=" + std::to_string(m)).c_str(), ts2, tp2,
                    ts2 / tp2, bits_equal(Ss.data, Sp.data) ? "equal" : "DIFF");
    }

    for (const int n : {256, 512}) {
        const std::vector<double> pts = sobol_points(1, n, 3);
        linalg::Matrix K = gram_matrix(se, pts, 1);
        for (int i = 0; i < n; ++i) K(i, i) += 1.0;
        linalg::Matrix Ls, Lp;
        const double ts = time_of([&] { Ls = K; linalg::cholesky_in_place_serial(Ls); }, 3);
        const double tp = time_of([&] { Lp = K; linalg::cholesky_in_place(Lp); }, 3);
        std::printf("%-28s %10.5f %10.5f %8.2fx %6s\n",
                    ("cholesky n=" + std::to_string(n)).c_str(), ts, tp, ts / tp,
                    bits_equal(Ls.data, Lp.data) ? "equal" : "DIFF");
    }
    return 0;
}
