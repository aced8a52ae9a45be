#include "fracgp/lowdisc.hpp"

#include <bit>
#include <cmath>

#include "fracgp/common.hpp"
#include "fracgp/rng.hpp"

namespace fracgp {

namespace {

constexpr int kBits = 32;

// Joe-Kuo primitive polynomials (bit-encoded, incl. leading/constant terms)
// and initial direction numbers for dimensions 2..8; dimension 1 is the
// van der Corput sequence.
struct DimInit {
    uint32_t poly;
    std::vector<uint32_t> m;
};

const DimInit kJoeKuo[] = {
    {3, {1}},
    {7, {1, 3}},
    {11, {1, 3, 1}},
    {13, {1, 1, 1}},
    {19, {1, 1, 3, 3}},
    {25, {1, 3, 5, 13}},
    {37, {1, 1, 5, 5, 17}},
};

std::vector<uint32_t> direction_numbers(int dim_index) {
    std::vector<uint32_t> v(kBits);
    if (dim_index == 0) {
        for (int k = 0; k < kBits; ++k) v[k] = 1u << (31 - k);
        return v;
    }
    const DimInit& init = kJoeKuo[dim_index - 1];
    const int s = std::bit_width(init.poly) - 1;
    std::vector<uint32_t> m(kBits);
    for (int k = 0; k < s; ++k) m[k] = init.m[k];
    for (int k = s; k < kBits; ++k) {
        uint32_t mk = m[k - s] ^ (m[k - s] << s);
        for (int i = 1; i < s; ++i) {
            if ((init.poly >> (s - i)) & 1u) mk ^= m[k - i] << i;
        }
        m[k] = mk;
    }
    for (int k = 0; k < kBits; ++k) v[k] = m[k] << (31 - k);
    return v;
}

}  // namespace

SobolSequence::SobolSequence(int dim, uint64_t scramble_seed) : dim_(dim) {
    if (dim < 1 || dim > kSobolMaxDim)
        throw ConfigError("Sobol sequence supports 1 <= dim <= " + std::to_string(kSobolMaxDim));
    state_.assign(dim, 0);
    shift_.assign(dim, 0);
    dirs_.reserve(dim);
    for (int j = 0; j < dim; ++j) dirs_.push_back(direction_numbers(j));
    if (scramble_seed != 0) {
        RngStream rng(scramble_seed, Stream::Scramble);
        for (int j = 0; j < dim; ++j) shift_[j] = rng.next_u32();
    }
}

void SobolSequence::next(double* out) {
    // gray-code step: flip the direction number of the lowest zero bit
    const int c = std::countr_one(index_);
    ++index_;
    for (int j = 0; j < dim_; ++j) {
        state_[j] ^= dirs_[j][c];
        out[j] = static_cast<double>(state_[j] ^ shift_[j]) * 0x1.0p-32;
    }
}

std::vector<double> sobol_points(int dim, int m, uint64_t scramble_seed) {
    SobolSequence seq(dim, scramble_seed);
    std::vector<double> pts(static_cast<size_t>(m) * dim);
    for (int i = 0; i < m; ++i) seq.next(pts.data() + static_cast<size_t>(i) * dim);
    return pts;
}

std::vector<double> grid_points(int dim, int m) {
    int g = static_cast<int>(std::ceil(std::pow(static_cast<double>(m), 1.0 / dim)));
    while (std::pow(static_cast<double>(g), dim) < m) ++g;  // guard rounding
    std::vector<double> pts(static_cast<size_t>(m) * dim);
    std::vector<int> idx(dim, 0);
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < dim; ++j)
            pts[static_cast<size_t>(i) * dim + j] = (g == 1) ? 0.5 : static_cast<double>(idx[j]) / (g - 1);
        for (int j = dim - 1; j >= 0; --j) {
            if (++idx[j] < g) break;
            idx[j] = 0;
        }
    }
    return pts;
}

}  // namespace fracgp
