#pragma once

#include <cstdint>
#include <limits>
#include <string_view>

namespace randset {

/// Counter-based generator: the i-th output is a SplitMix64 finalizer applied
/// to (key + i * golden). Streams are derived from one campaign seed and a
/// purpose label, so draws for shuffling never shift draws for mutation.
/// Satisfies UniformRandomBitGenerator.
class Rng {
public:
    using result_type = std::uint64_t;

    Rng() = default;
    explicit Rng(std::uint64_t key) : key_(key) {}

    /// Stream for `purpose` under `seed`; e.g. Rng::stream(42, "shuffle").
    static Rng stream(std::uint64_t seed, std::string_view purpose) { return Rng(mix(seed ^ mix(fnv1a(purpose)))); }

    /// Child stream; used to hand a sub-generator to one consumer.
    Rng split(std::string_view purpose) { return Rng(mix(next() ^ fnv1a(purpose))); }

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

    result_type operator()() { return next(); }

    result_type next() { return mix(key_ + kGolden * ++counter_); }

    /// Uniform in [0, bound). bound must be > 0.
    std::uint64_t below(std::uint64_t bound)
    {
        // Lemire's multiply-shift with rejection; independent of libstdc++'s
        // distribution implementations so outputs are portable.
        auto m = static_cast<unsigned __int128>(next()) * bound;
        auto low = static_cast<std::uint64_t>(m);
        if (low < bound) {
            const std::uint64_t threshold = (0 - bound) % bound;
            while (low < threshold) {
                m = static_cast<unsigned __int128>(next()) * bound;
                low = static_cast<std::uint64_t>(m);
            }
        }
        return static_cast<std::uint64_t>(m >> 64);
    }

    /// Uniform in [0, 1).
    double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    bool bernoulli(double p) { return uniform01() < p; }

    std::uint64_t counter() const { return counter_; }

    static constexpr std::uint64_t mix(std::uint64_t z)
    {
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

private:
    static constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

    static constexpr std::uint64_t fnv1a(std::string_view s)
    {
        std::uint64_t h = 0xcbf29ce484222325ULL;
        for (char c : s) {
            h ^= static_cast<unsigned char>(c);
            h *= 0x100000001b3ULL;
        }
        return h;
    }

    std::uint64_t key_ = 0;
    std::uint64_t counter_ = 0;
};

}  // namespace randset
