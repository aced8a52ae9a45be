#include <set>

#include "doctest.h"
#include "fracgp/common.hpp"
#include "fracgp/lowdisc.hpp"
#include "fracgp/rng.hpp"
#include "oracles.hpp"

using namespace fracgp;

TEST_CASE("unscrambled Sobol reproduces the reference sequence") {
    // first 8 points after the zero index, dims 1..6 (dyadic, so exact)
    const double expect[8][6] = {
        {0.5, 0.5, 0.5, 0.5, 0.5, 0.5},
        {0.75, 0.25, 0.25, 0.25, 0.75, 0.75},
        {0.25, 0.75, 0.75, 0.75, 0.25, 0.25},
        {0.375, 0.375, 0.625, 0.875, 0.375, 0.125},
        {0.875, 0.875, 0.125, 0.375, 0.875, 0.625},
        {0.625, 0.125, 0.875, 0.625, 0.625, 0.875},
        {0.125, 0.625, 0.375, 0.125, 0.125, 0.375},
        {0.1875, 0.3125, 0.9375, 0.4375, 0.5625, 0.3125},
    };
    SobolSequence seq(6);
    double pt[6];
    for (int i = 0; i < 8; ++i) {
        seq.next(pt);
        for (int j = 0; j < 6; ++j) CHECK(pt[j] == expect[i][j]);
    }
}

TEST_CASE("scrambled Sobol: seeded, deterministic, distinct, in range") {
    const auto a = sobol_points(2, 512, 1234);
    const auto b = sobol_points(2, 512, 1234);
    const auto c = sobol_points(2, 512, 4321);
    CHECK(a == b);
    CHECK(a != c);
    std::set<std::pair<double, double>> uniq;
    for (int i = 0; i < 512; ++i) {
        CHECK(a[2 * i] >= 0.0);
        CHECK(a[2 * i] < 1.0);
        uniq.insert({a[2 * i], a[2 * i + 1]});
    }
    CHECK(uniq.size() == 512);
}

TEST_CASE("Sobol dimension limits") {
    CHECK_THROWS_AS(SobolSequence(0), ConfigError);
    CHECK_THROWS_AS(SobolSequence(kSobolMaxDim + 1), ConfigError);
}

TEST_CASE("grid points") {
    CHECK(grid_points(1, 3) == std::vector<double>{0.0, 0.5, 1.0});
    CHECK(grid_points(1, 1) == std::vector<double>{0.5});
    CHECK(grid_points(2, 4) == std::vector<double>{0.0, 0.0, 0.0, 1.0, 1.0, 0.0, 1.0, 1.0});
}

TEST_CASE("scrambled Sobol beats iid uniform on star discrepancy (d=2, m=64)") {
    double sobol_avg = 0.0, iid_avg = 0.0;
    const int n_seeds = 20, m = 64;
    for (uint64_t seed = 1; seed <= n_seeds; ++seed) {
        sobol_avg += oracles::star_discrepancy_2d(sobol_points(2, m, seed));
        RngStream rng(seed, Stream::Generic, 77);
        std::vector<double> iid(2 * m);
        for (double& v : iid) v = rng.next_unit();
        iid_avg += oracles::star_discrepancy_2d(iid);
    }
    CHECK(sobol_avg / n_seeds < iid_avg / n_seeds);
}
