#ifndef QPT_RNG_HPP
#define QPT_RNG_HPP

#include <cstdint>
#include <stdexcept>

namespace qpt {

/**
 * Seeded PRNG (splitmix64 core) with counter-based stream splitting.
 *
 * Every random choice in the project goes through this class so that runs
 * are bit-reproducible across platforms and worker counts; the standard
 * <random> distributions are implementation-defined and are not used.
 */
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    // Seed of the independent stream for trial `index` of a master seed.
    // The mapping depends only on (master, index), never on scheduling;
    // Rng(stream_seed(m, i)) reproduces the trial exactly.
    static std::uint64_t stream_seed(std::uint64_t master, std::uint64_t index) {
        return mix(master + 0x9E3779B97F4A7C15ULL * (index + 1));
    }

    static Rng for_stream(std::uint64_t master, std::uint64_t index) {
        return Rng(stream_seed(master, index));
    }

    std::uint64_t next_u64() {
        state_ += 0x9E3779B97F4A7C15ULL;
        return mix(state_);
    }

    // Unbiased uniform draw from {0, 1, ..., bound-1}, bound >= 1.
    std::uint64_t below(std::uint64_t bound) {
        if (bound == 0) throw std::invalid_argument("Rng::below: bound must be positive");
        const std::uint64_t threshold = (0 - bound) % bound;
        for (;;) {
            std::uint64_t r = next_u64();
            if (r >= threshold) return r % bound;
        }
    }

    // Uniform double in [0, 1) with 53 random bits.
    double unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    bool flip() { return (next_u64() >> 63) != 0; }

    bool bernoulli(double p) { return unit() < p; }

private:
    static std::uint64_t mix(std::uint64_t z) {
        z ^= z >> 30;
        z *= 0xBF58476D1CE4E5B9ULL;
        z ^= z >> 27;
        z *= 0x94D049BB133111EBULL;
        z ^= z >> 31;
        return z;
    }

    std::uint64_t state_;
};

} // namespace qpt

#endif
