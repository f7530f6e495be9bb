#pragma once

// Philox4x32-10 counter-based generator (Salmon et al., SC'11). Each
// (key, counter) pair maps to 128 independent-looking bits, so the stream for
// any trial can be produced directly from the trial index.

#include <array>
#include <cstdint>

namespace adhoc1d {

using PhiloxCounter = std::array<std::uint32_t, 4>;
using PhiloxKey = std::array<std::uint32_t, 2>;

/// One Philox4x32 block with ten rounds.
PhiloxCounter philox4x32_10(PhiloxCounter counter, PhiloxKey key);

/// Mixes several words into a 64-bit seed (SplitMix64 finalizer chain).
std::uint64_t derive_seed(std::uint64_t root, std::uint64_t a, std::uint64_t b = 0);

/// Uniform draws for one Monte Carlo trial. The key is the root seed; the
/// counter is (block, 0, trial_lo, trial_hi), so trial t's draws never depend
/// on how trials were split across workers.
class TrialStream {
public:
    TrialStream(std::uint64_t seed, std::uint64_t trial);

    std::uint64_t next_u64();
    /// 53-bit uniform on [0, 1).
    double next_unit();

private:
    void refill();

    PhiloxKey key_;
    std::uint64_t trial_;
    std::uint32_t block_ = 0;
    PhiloxCounter buffer_{};
    int cursor_ = 4;
};

}  // namespace adhoc1d
