#include <cmath>

#include "doctest.h"
#include "fracgp/common.hpp"
#include "fracgp/linalg.hpp"
#include "fracgp/rng.hpp"

using namespace fracgp;
using linalg::Matrix;

namespace {

Matrix random_spd(int n, uint64_t seed, double ridge = 0.5) {
    RngStream rng(seed, Stream::Generic);
    Matrix A(n, n);
    for (double& v : A.data) v = rng.next_normal();
    Matrix S(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            double acc = (i == j) ? ridge : 0.0;
            for (int k = 0; k < n; ++k) acc += A(i, k) * A(j, k);
            S(i, j) = acc;
        }
    return S;
}

}  // namespace

TEST_CASE("bordered factor matches the dense Cholesky") {
    const int n = 12;
    Matrix S = random_spd(n, 42);
    Matrix D = S;
    REQUIRE(linalg::cholesky_in_place_serial(D));

    linalg::PackedLowerTri L;
    for (int t = 0; t < n; ++t) {
        std::vector<double> col(t);
        for (int s = 0; s < t; ++s) col[s] = S(t, s);
        REQUIRE(L.push_border(col, S(t, t)));
    }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j <= i; ++j) CHECK(L.row(i)[j] == doctest::Approx(D(i, j)).epsilon(1e-12));
}

TEST_CASE("forward and backward solves invert the factor") {
    const int n = 20;
    Matrix S = random_spd(n, 7);
    linalg::PackedLowerTri L;
    for (int t = 0; t < n; ++t) {
        std::vector<double> col(t);
        for (int s = 0; s < t; ++s) col[s] = S(t, s);
        REQUIRE(L.push_border(col, S(t, t)));
    }
    RngStream rng(3, Stream::Generic);
    std::vector<double> b(n);
    for (double& v : b) v = rng.next_normal();
    std::vector<double> x = b;
    L.forward_solve(x.data());
    L.backward_solve(x.data());
    // S x should reproduce b
    for (int i = 0; i < n; ++i) {
        double acc = 0.0;
        for (int j = 0; j < n; ++j) acc += S(i, j) * x[j];
        CHECK(acc == doctest::Approx(b[i]).epsilon(1e-9));
    }
    // logdet agrees with the product of pivots of the dense factor
    Matrix D = S;
    linalg::cholesky_in_place_serial(D);
    double ld = 0.0;
    for (int i = 0; i < n; ++i) ld += 2.0 * std::log(D(i, i));
    CHECK(L.logdet_sq() == doctest::Approx(ld).epsilon(1e-12));
}

TEST_CASE("parallel kernels are bit-identical to their serial references") {
    for (const uint64_t seed : {1ull, 2ull, 3ull}) {
        const int t = 60, m = 37;
        Matrix S = random_spd(t, seed);
        linalg::PackedLowerTri L;
        for (int r = 0; r < t; ++r) {
            std::vector<double> col(r);
            for (int s = 0; s < r; ++s) col[s] = S(r, s);
            REQUIRE(L.push_border(col, S(r, r)));
        }
        RngStream rng(seed, Stream::Generic, 9);
        Matrix B(t, m);
        for (double& v : B.data) v = rng.next_normal();

        Matrix B1 = B, B2 = B;
        linalg::forward_solve_multi(L, B1);
        linalg::forward_solve_multi_serial(L, B2);
        CHECK(B1.data == B2.data);

        const Matrix Vt = linalg::transpose(B1);
        Matrix S1(m, m, 1.0), S2(m, m, 1.0);
        linalg::subtract_gram_of(S1, Vt);
        linalg::subtract_gram_of_serial(S2, Vt);
        CHECK(S1.data == S2.data);

        Matrix C1 = S, C2 = S;
        REQUIRE(linalg::cholesky_in_place(C1));
        REQUIRE(linalg::cholesky_in_place_serial(C2));
        CHECK(C1.data == C2.data);
    }
}

TEST_CASE("jitter ladder") {
    SUBCASE("well-conditioned input gets no jitter") {
        Matrix I3(3, 3);
        for (int i = 0; i < 3; ++i) I3(i, i) = 1.0;
        const auto jc = linalg::cholesky_with_jitter(I3);
        CHECK(jc.jitter == 0.0);
        CHECK(jc.L(0, 0) == 1.0);
    }
    SUBCASE("singular all-ones succeeds within the cap") {
        Matrix ones(3, 3, 1.0);
        const auto jc = linalg::cholesky_with_jitter(ones);
        CHECK(jc.jitter > 0.0);
        CHECK(jc.jitter <= 1e-6);
    }
    SUBCASE("indefinite input exhausts the ladder") {
        Matrix bad(2, 2);
        bad(0, 0) = 1.0;
        bad(1, 1) = -1.0;
        CHECK_THROWS_AS(linalg::cholesky_with_jitter(bad), NumericError);
    }
}

TEST_CASE("lower_tri_times applies the factor") {
    Matrix L(2, 2);
    L(0, 0) = 2.0;
    L(1, 0) = 1.0;
    L(1, 1) = 3.0;
    const std::vector<double> y = linalg::lower_tri_times(L, {1.0, 2.0});
    CHECK(y[0] == 2.0);
    CHECK(y[1] == 7.0);
}
