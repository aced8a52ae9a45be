#pragma once

// Independent reference implementations used only by the tests. These stay
// deliberately naive (quadrature, long-double summation, exhaustive search)
// and never call into the code paths they check.

#include <vector>

namespace oracles {

// K_nu(x) via the integral representation int_0^inf e^{-x cosh t} cosh(nu t) dt
// (composite Simpson; good to ~1e-10 relative for x in [0.05, 30], nu <= 5).
double bessel_k_quadrature(double nu, double x);

// Matern correlation from the Bessel definition, through the quadrature.
double matern_quadrature(double nu, double s);

// Per-term evaluation of sum_i a_i k_se(x, z_i) in long double, reversed
// summation order.
long double se_expansion_naive(const std::vector<double>& centers,
                               const std::vector<double>& coeffs, double a, double x);

// Exact star discrepancy for d = 2 over the corner grid spanned by the
// point coordinates (O(m^3), fine for m <= 128).
double star_discrepancy_2d(const std::vector<double>& pts_xy);

}  // namespace oracles
