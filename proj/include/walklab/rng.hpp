#pragma once

#include <cstdint>

namespace walklab {

// Counter-based 64-bit generator (SplitMix64). The state is a plain counter
// advanced by a fixed odd increment; each output is a bijective mix of the
// counter, so the stream is identical on every platform for a given seed.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

    std::uint64_t next() noexcept {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0,1) using the 53 high bits.
    double uniform() noexcept {
        return static_cast<double>(next() >> 11) * 0x1.0p-53;
    }

    // Uniform integer in [0, bound), bias-free by rejection; bound >= 1.
    std::uint64_t below(std::uint64_t bound) noexcept {
        const std::uint64_t threshold = (0ULL - bound) % bound;
        for (;;) {
            const std::uint64_t r = next();
            if (r >= threshold) return r % bound;
        }
    }

private:
    std::uint64_t state_;
};

// Derived seed for substream r of a master seed. Documented protocol: mix the
// master seed with a Weyl-scrambled substream index and take one SplitMix64
// output. Replica r of a Monte Carlo run always uses split_seed(seed, r).
inline std::uint64_t split_seed(std::uint64_t seed, std::uint64_t r) noexcept {
    SplitMix64 g(seed ^ (0xd1342543de82ef95ULL * (r + 1)));
    return g.next();
}

} // namespace walklab
