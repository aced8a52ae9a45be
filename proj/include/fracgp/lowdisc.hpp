#pragma once

// Low-discrepancy point sets: Sobol sequences (Joe-Kuo direction numbers,
// gray-code order) with an optional seeded digital XOR scramble, plus a
// plain grid generator. Scrambling preserves the digital net structure and
// keeps per-dimension values pairwise distinct.

#include <cstdint>
#include <vector>

namespace fracgp {

inline constexpr int kSobolMaxDim = 8;

class SobolSequence {
  public:
    // seed == 0 gives the unscrambled sequence; otherwise each dimension is
    // XOR-shifted by 32 bits drawn from a Philox stream keyed by the seed.
    SobolSequence(int dim, uint64_t scramble_seed = 0);

    // Writes the next point (skips the initial all-zeros index).
    void next(double* out);

    int dim() const { return dim_; }

  private:
    int dim_;
    uint64_t index_ = 0;
    std::vector<uint32_t> state_;               // current integer coordinates
    std::vector<uint32_t> shift_;               // digital scramble
    std::vector<std::vector<uint32_t>> dirs_;   // direction numbers per dim
};

// m points from the sequence as a flat row-major array (m x dim).
std::vector<double> sobol_points(int dim, int m, uint64_t scramble_seed);

// Axis-aligned grid: per-dimension resolution ceil(m^(1/dim)), first m points
// in lexicographic order, coordinates i/(g-1) (or 0.5 when g == 1).
std::vector<double> grid_points(int dim, int m);

}  // namespace fracgp
