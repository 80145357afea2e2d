#pragma once

#include <cstdint>

namespace itsp {

/// SplitMix64 (Steele, Lea, Vigna). Chosen because the whole algorithm fits
/// in a dozen lines and produces the same stream on every platform, which is
/// what makes generated instances reproducible from a seed alone.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform double in [0, 1): top 53 bits divided by 2^53.
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

private:
    std::uint64_t state_;
};

} // namespace itsp
