#pragma once

#include <array>
#include <cstdint>
#include <limits>

namespace tuza {

/// SplitMix64 finalizer. Used for seeding and for deriving per-trial and
/// per-stream seeds, so that every stream is a fixed function of the master seed.
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Seed for stream `index` of master seed `seed`:
///   derive_seed(s, i) = splitmix64(splitmix64(s) ^ splitmix64(i + 0x632be59bd9b4e019)).
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) noexcept {
    return splitmix64(splitmix64(seed) ^ splitmix64(index + 0x632be59bd9b4e019ULL));
}

/// Named sub-streams of one run.
enum class Stream : std::uint64_t { Edges = 1, Choice = 2, Sampling = 3 };

/// xoshiro256** (Blackman & Vigna), state filled from SplitMix64.
/// Satisfies UniformRandomBitGenerator, but the bounded draws below are
/// what the library uses, since std distributions are not portable.
class Rng {
public:
    using result_type = std::uint64_t;

    explicit Rng(std::uint64_t seed = 0) noexcept {
        // word k = splitmix64(seed + k * golden), the reference seeding sequence.
        std::uint64_t x = seed;
        for (auto& word : state_) {
            word = splitmix64(x);
            x += 0x9e3779b97f4a7c15ULL;
        }
    }

    Rng(std::uint64_t seed, Stream stream) noexcept
        : Rng(derive_seed(seed, static_cast<std::uint64_t>(stream))) {}

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

    result_type operator()() noexcept { return next(); }

    std::uint64_t next() noexcept {
        const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    /// Uniform integer in [0, bound); bound must be positive. Lemire's
    /// multiply-shift with rejection, exact for every bound.
    std::uint64_t below(std::uint64_t bound) noexcept {
        __extension__ using u128 = unsigned __int128;
        u128 product = static_cast<u128>(next()) * bound;
        auto low = static_cast<std::uint64_t>(product);
        if (low < bound) {
            const std::uint64_t threshold = (0 - bound) % bound;
            while (low < threshold) {
                product = static_cast<u128>(next()) * bound;
                low = static_cast<std::uint64_t>(product);
            }
        }
        return static_cast<std::uint64_t>(product >> 64);
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform01() noexcept { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

private:
    static constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept {
        return (x << k) | (x >> (64 - k));
    }

    std::array<std::uint64_t, 4> state_{};
};

}  // namespace tuza
