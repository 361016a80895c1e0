#ifndef VOTEBOUND_RNG_HPP
#define VOTEBOUND_RNG_HPP

#include <cstdint>

namespace votebound {

// Deterministic, platform-independent generator (splitmix64 core).
// No standard-library distributions are used anywhere, so identical
// seeds give bit-identical streams on every platform and compiler.
class SplitRng {
public:
    explicit SplitRng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        state_ += kGamma;
        return mix64(state_);
    }

    // Uniform on [0, 1), 53-bit resolution.
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Uniform on the open interval (0, 1); never returns an endpoint.
    double next_open01() {
        return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
    }

    bool bernoulli(double p) { return next_double() < p; }

    static std::uint64_t mix64(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

private:
    static constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ull;
    std::uint64_t state_;
};

// Seed for substream `index` of the stream rooted at `seed`. Trials and
// per-entry draws each get their own substream, so generated data does not
// depend on evaluation order and streams never overlap in practice.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
    return SplitRng::mix64(SplitRng::mix64(seed + 0x9E3779B97F4A7C15ull) ^
                           SplitRng::mix64(index + 0xD1B54A32D192ED03ull));
}

}  // namespace votebound

#endif  // VOTEBOUND_RNG_HPP
