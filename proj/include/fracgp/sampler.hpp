#pragma once

// Joint posterior draws over a finite candidate set and Thompson action
// selection. The tempered path is mu + alpha^{-1/2} L z with L the factor of
// the untempered candidate covariance, so runs with different alpha but the
// same seed consume identical normal draws.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "fracgp/posterior.hpp"
#include "fracgp/rng.hpp"

namespace fracgp {

enum class CandidateGenerator { Grid, LowDiscrepancy };

std::string generator_name(CandidateGenerator g);

struct CandidateSet {
    int dim = 1;
    std::vector<double> points;  // m x dim, flat
    CandidateGenerator generator = CandidateGenerator::LowDiscrepancy;
    uint64_t seed = 0;

    int size() const { return dim == 0 ? 0 : static_cast<int>(points.size()) / dim; }
    const double* point(int i) const { return points.data() + static_cast<size_t>(i) * dim; }
};

// m distinct points covering [0,1]^d; the low-discrepancy option is a
// digitally scrambled Sobol set keyed by the seed, the grid option ignores
// the seed. m above m_max is a configuration error.
CandidateSet generate_candidates(int dim, int m, CandidateGenerator gen, uint64_t seed,
                                 int m_max = 1 << 20);

// One draw from N(mu_{t-1}(C), alpha^{-1} k_{t-1}(C, C)), with escalating
// jitter on the candidate covariance factorization. Consumes exactly |C|
// normals from the stream.
std::vector<double> sample_path(const PosteriorState& state, const CandidateSet& cands,
                                RngStream& rng);

// Index of the maximal value; ties break toward the lowest index.
std::pair<int, std::vector<double>> select_argmax(const std::vector<double>& values,
                                                  const CandidateSet& cands);

}  // namespace fracgp
