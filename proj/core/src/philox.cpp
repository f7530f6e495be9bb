#include "adhoc1d/philox.hpp"

namespace adhoc1d {
namespace {

constexpr std::uint32_t kMulA = 0xD2511F53;
constexpr std::uint32_t kMulB = 0xCD9E8D57;
constexpr std::uint32_t kWeylA = 0x9E3779B9;
constexpr std::uint32_t kWeylB = 0xBB67AE85;

inline void round_once(PhiloxCounter& c, const PhiloxKey& k) {
    const std::uint64_t p0 = static_cast<std::uint64_t>(kMulA) * c[0];
    const std::uint64_t p1 = static_cast<std::uint64_t>(kMulB) * c[2];
    const auto hi0 = static_cast<std::uint32_t>(p0 >> 32);
    const auto lo0 = static_cast<std::uint32_t>(p0);
    const auto hi1 = static_cast<std::uint32_t>(p1 >> 32);
    const auto lo1 = static_cast<std::uint32_t>(p1);
    c = {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
}

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

}  // namespace

PhiloxCounter philox4x32_10(PhiloxCounter counter, PhiloxKey key) {
    for (int round = 0; round < 10; ++round) {
        if (round > 0) {
            key[0] += kWeylA;
            key[1] += kWeylB;
        }
        round_once(counter, key);
    }
    return counter;
}

std::uint64_t derive_seed(std::uint64_t root, std::uint64_t a, std::uint64_t b) {
    return splitmix64(splitmix64(splitmix64(root) ^ a) ^ b);
}

TrialStream::TrialStream(std::uint64_t seed, std::uint64_t trial)
    : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
      trial_(trial) {}

void TrialStream::refill() {
    buffer_ = philox4x32_10(
        {block_, 0u, static_cast<std::uint32_t>(trial_), static_cast<std::uint32_t>(trial_ >> 32)},
        key_);
    ++block_;
    cursor_ = 0;
}

std::uint64_t TrialStream::next_u64() {
    if (cursor_ >= 4) refill();
    const std::uint64_t lo = buffer_[cursor_];
    const std::uint64_t hi = buffer_[cursor_ + 1];
    cursor_ += 2;
    return (hi << 32) | lo;
}

double TrialStream::next_unit() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

}  // namespace adhoc1d
