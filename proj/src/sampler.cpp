#include "fracgp/sampler.hpp"

#include <cmath>

#include "fracgp/common.hpp"
#include "fracgp/lowdisc.hpp"

namespace fracgp {

std::string generator_name(CandidateGenerator g) {
    return g == CandidateGenerator::Grid ? "grid" : "sobol-digital-shift";
}

CandidateSet generate_candidates(int dim, int m, CandidateGenerator gen, uint64_t seed, int m_max) {
    if (m < 1) throw ConfigError("generate_candidates: m must be >= 1");
    if (m > m_max)
        throw ConfigError("generate_candidates: m = " + std::to_string(m) +
                          " exceeds the candidate budget m_max = " + std::to_string(m_max));
    CandidateSet c;
    c.dim = dim;
    c.generator = gen;
    c.seed = seed;
    c.points = (gen == CandidateGenerator::Grid) ? grid_points(dim, m) : sobol_points(dim, m, seed);
    return c;
}

std::vector<double> sample_path(const PosteriorState& state, const CandidateSet& cands,
                                RngStream& rng) {
    const int m = cands.size();
    if (m < 1) throw InputError("sample_path: empty candidate set");

    Prediction pred = predict(state, cands.points.data(), m);
    linalg::JitteredCholesky jc = linalg::cholesky_with_jitter(std::move(pred.cov));

    std::vector<double> z(m);
    for (int i = 0; i < m; ++i) z[i] = rng.next_normal();

    std::vector<double> path = linalg::lower_tri_times(jc.L, z);
    const double scale = 1.0 / std::sqrt(state.alpha);
    for (int i = 0; i < m; ++i) path[i] = pred.mean[i] + scale * path[i];
    return path;
}

std::pair<int, std::vector<double>> select_argmax(const std::vector<double>& values,
                                                  const CandidateSet& cands) {
    if (values.empty() || cands.size() != static_cast<int>(values.size()))
        throw InputError("select_argmax: empty or mismatched candidate set");
    int best = 0;
    for (int i = 0; i < static_cast<int>(values.size()); ++i) {
        if (!std::isfinite(values[i])) throw InputError("select_argmax: non-finite value");
        if (values[i] > values[best]) best = i;
    }
    std::vector<double> pt(cands.point(best), cands.point(best) + cands.dim);
    return {best, pt};
}

}  // namespace fracgp
