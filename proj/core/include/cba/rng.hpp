#pragma once

#include <array>
#include <cstdint>

namespace cba {

// Deterministic random stream backed by Philox4x32-10, the counter-based
// generator of Salmon et al., "Parallel random numbers: as easy as 1, 2, 3"
// (SC 2011). The (master_seed, stream_index) pair fully determines the
// sequence: the seed is the Philox key and the stream index occupies the
// high counter words, so distinct indices yield disjoint counter spaces.
//
// Streams are cheap value types. Each simulation iteration gets its own
// stream via make_stream; a stream must not be shared between workers.
class RngStream {
public:
    RngStream(std::uint64_t master_seed, std::uint64_t stream_index);

    std::uint64_t next_u64();

    /// Uniform draw in [0, 1), 53-bit resolution.
    double next_uniform();

    /// Uniform draw in (0, 1]; safe as a log() argument.
    double next_uniform_pos();

    std::uint64_t master_seed() const { return seed_; }
    std::uint64_t stream_index() const { return stream_; }

private:
    void refill();

    std::uint64_t seed_;
    std::uint64_t stream_;
    std::uint64_t counter_ = 0;
    std::array<std::uint32_t, 4> block_{};
    int block_pos_ = 4;  // empty; refill on first draw
};

/// Substream factory: a pure function of (master_seed, iteration_index).
RngStream make_stream(std::uint64_t master_seed, std::uint64_t iteration_index);

namespace detail {
/// One keyed Philox4x32-10 block; exposed for known-answer tests.
std::array<std::uint32_t, 4> philox4x32_10(std::array<std::uint32_t, 4> counter,
                                           std::array<std::uint32_t, 2> key);
}  // namespace detail

}  // namespace cba
