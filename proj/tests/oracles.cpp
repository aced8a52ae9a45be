#include "oracles.hpp"

#include <algorithm>
#include <cmath>

namespace oracles {

double bessel_k_quadrature(double nu, double x) {
    // integrand decays like exp(-x cosh t); cosh 14 ~ 6e5 kills any x >= 0.05
    const double t_max = 14.0;
    const int n = 40000;  // even
    const double h = t_max / n;
    auto f = [&](double t) { return std::exp(-x * std::cosh(t)) * std::cosh(nu * t); };
    double sum = f(0.0) + f(t_max);
    for (int i = 1; i < n; ++i) sum += f(i * h) * (i % 2 == 1 ? 4.0 : 2.0);
    return sum * h / 3.0;
}

double matern_quadrature(double nu, double s) {
    if (s <= 0.0) return 1.0;
    return std::pow(2.0, 1.0 - nu) / std::tgamma(nu) * std::pow(s, nu) *
           bessel_k_quadrature(nu, s);
}

long double se_expansion_naive(const std::vector<double>& centers,
                               const std::vector<double>& coeffs, double a, double x) {
    long double acc = 0.0L;
    for (int i = static_cast<int>(coeffs.size()) - 1; i >= 0; --i) {
        const long double d = static_cast<long double>(x) - centers[i];
        acc += static_cast<long double>(coeffs[i]) *
               std::exp(-static_cast<long double>(a) * a * d * d);
    }
    return acc;
}

double star_discrepancy_2d(const std::vector<double>& pts_xy) {
    const int m = static_cast<int>(pts_xy.size()) / 2;
    std::vector<double> xs(m), ys(m);
    for (int i = 0; i < m; ++i) {
        xs[i] = pts_xy[2 * i];
        ys[i] = pts_xy[2 * i + 1];
    }
    std::vector<double> cx = xs, cy = ys;
    cx.push_back(1.0);
    cy.push_back(1.0);
    double worst = 0.0;
    for (const double bx : cx)
        for (const double by : cy) {
            int in_closed = 0, in_open = 0;
            for (int i = 0; i < m; ++i) {
                if (xs[i] <= bx && ys[i] <= by) ++in_closed;
                if (xs[i] < bx && ys[i] < by) ++in_open;
            }
            const double vol = bx * by;
            worst = std::max(worst, std::abs(static_cast<double>(in_closed) / m - vol));
            worst = std::max(worst, std::abs(static_cast<double>(in_open) / m - vol));
        }
    return worst;
}

}  // namespace oracles
