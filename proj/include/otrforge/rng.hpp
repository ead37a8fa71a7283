#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace otrforge {

// SplitMix64 (Steele/Lea/Vigna). Every random draw in the project flows
// through this generator: its output is a pure integer mix of the counter,
// so permutation tables, sampled measurement outcomes and experiment CSVs
// are bit-identical across platforms and compilers.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, 2^bits); every output bit of next() is unbiased, so a
    // mask is exact. bits in [1, 32].
    std::uint32_t next_bits(int bits) {
        if (bits < 1 || bits > 32)
            throw std::invalid_argument("next_bits: bits out of range");
        const std::uint64_t mask = (bits == 64) ? ~0ULL : ((1ULL << bits) - 1);
        return static_cast<std::uint32_t>(next() & mask);
    }

    // Uniform in [0, bound) by masked rejection; no modulo bias.
    std::uint64_t next_below(std::uint64_t bound) {
        if (bound == 0) throw std::invalid_argument("next_below: bound is zero");
        if (bound == 1) return 0;
        std::uint64_t mask = bound - 1;
        mask |= mask >> 1;  mask |= mask >> 2;  mask |= mask >> 4;
        mask |= mask >> 8;  mask |= mask >> 16; mask |= mask >> 32;
        for (;;) {
            const std::uint64_t v = next() & mask;
            if (v < bound) return v;
        }
    }

private:
    std::uint64_t state_;
};

// Seed for an independent per-trial generator: the (index+1)-th raw output
// of SplitMix64(master). Trials can be derived in any order.
inline std::uint64_t trial_seed(std::uint64_t master, std::uint64_t index) {
    std::uint64_t z = master + (index + 1) * 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

template <typename T>
void fisher_yates(std::vector<T>& v, SplitMix64& rng) {
    for (std::size_t i = v.size(); i > 1; --i) {
        const std::size_t j = static_cast<std::size_t>(rng.next_below(i));
        std::swap(v[i - 1], v[j]);
    }
}

}  // namespace otrforge
