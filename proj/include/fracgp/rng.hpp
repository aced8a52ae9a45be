#pragma once

// Counter-based random numbers (Philox4x32-10). Streams are split by
// (experiment seed, stream id, round index), so every consumer draws from
// its own independent, reproducible sequence regardless of call order
// elsewhere in the program.

#include <array>
#include <cstdint>

namespace fracgp {

inline constexpr const char* kRngName = "philox4x32-10";

std::array<uint32_t, 4> philox4x32(std::array<uint32_t, 4> counter, std::array<uint32_t, 2> key);

// Stable ids for the independent streams an experiment consumes.
enum class Stream : uint32_t {
    Candidates = 1,
    SamplePath = 2,
    ObservationNoise = 3,
    ObjectiveCenters = 4,
    ObjectiveCoeffs = 5,
    Scramble = 6,
    Pool = 7,
    Generic = 8,
};

class RngStream {
  public:
    RngStream(uint64_t seed, Stream stream, uint32_t round = 0)
        : key_{static_cast<uint32_t>(seed), static_cast<uint32_t>(seed >> 32)},
          prefix_{static_cast<uint32_t>(stream), round} {}

    uint32_t next_u32();
    uint64_t next_u64();
    double next_unit();    // uniform in [0, 1), 53-bit
    double next_unit_pos();// uniform in (0, 1], safe under log
    double next_normal(); // standard normal, Box-Muller

  private:
    std::array<uint32_t, 2> key_;
    std::array<uint32_t, 2> prefix_;
    uint64_t block_ = 0;
    std::array<uint32_t, 4> buf_{};
    int avail_ = 0;
    double cached_normal_ = 0.0;
    bool has_cached_normal_ = false;
};

}  // namespace fracgp
