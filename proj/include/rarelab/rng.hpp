#pragma once

#include <cstdint>
#include <random>

namespace rarelab {

// Splittable deterministic RNG. A (master_seed, stream_index) pair fully
// determines the stream; distinct stream indices give independent streams,
// so parallel workers can draw without coordination.
//
// Doubles are produced from raw engine words ((x >> 11) * 2^-53) instead of
// std::uniform_real_distribution, whose output is implementation-defined.
class SeededRng {
public:
    SeededRng(std::uint64_t master_seed, std::uint64_t stream_index)
        : master_seed_(master_seed), stream_index_(stream_index) {
        std::seed_seq seq{
            static_cast<std::uint32_t>(master_seed),
            static_cast<std::uint32_t>(master_seed >> 32),
            static_cast<std::uint32_t>(stream_index),
            static_cast<std::uint32_t>(stream_index >> 32)};
        engine_.seed(seq);
    }

    std::uint64_t master_seed() const { return master_seed_; }
    std::uint64_t stream_index() const { return stream_index_; }

    std::uint64_t next_u64() { return engine_(); }

    // uniform on [0,1)
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    // uniform on (0,1)
    double uniform_open() {
        double u;
        do {
            u = uniform();
        } while (u == 0.0);
        return u;
    }

    // uniform integer in [0, n)
    std::uint64_t below(std::uint64_t n) {
        // rejection to avoid modulo bias
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t x;
        do {
            x = engine_();
        } while (x >= limit);
        return x % n;
    }

private:
    std::uint64_t master_seed_;
    std::uint64_t stream_index_;
    std::mt19937_64 engine_;
};

} // namespace rarelab
