#pragma once

#include <array>
#include <cstdint>

namespace mvscale {

// Philox4x32-10 counter-based generator (Salmon et al. 2011).
// A block of four 32-bit words is a pure function of (key, counter), so
// noise streams can be assigned per particle and consumed in any schedule
// without changing the draws.
struct Philox4x32 {
    std::array<std::uint32_t, 2> key{};
    std::array<std::uint32_t, 4> counter{};

    static std::array<std::uint32_t, 4> block(std::array<std::uint32_t, 2> key,
                                              std::array<std::uint32_t, 4> ctr);

    // Next 128-bit block of this stream; advances the counter.
    std::array<std::uint32_t, 4> next();
};

std::uint64_t splitmix64(std::uint64_t x);

// Sequential stream of uniforms/normals backed by Philox. A stream is fully
// determined by (seed, stream_id); distinct ids give statistically
// independent streams.
class NoiseStream {
public:
    NoiseStream() : NoiseStream(0, 0) {}
    NoiseStream(std::uint64_t seed, std::uint64_t stream_id);

    std::uint64_t next_u64();
    // Uniform on [0, 1) with 53 random bits.
    double next_uniform();
    // Standard normal via the 128-layer ziggurat.
    double next_normal();
    // Standard normal via the polar (Marsaglia) method; reference path used
    // to cross-check the ziggurat in tests.
    double next_normal_polar();

private:
    Philox4x32 gen_;
    std::array<std::uint32_t, 4> buf_{};
    int buf_pos_ = 4;  // consumed

    std::uint32_t next_u32();
};

// Derives a child stream id from structured indices (replication, particle,
// role, ...) so that every logical noise source in an experiment has a
// collision-resistant 64-bit id.
std::uint64_t stream_id(std::uint64_t a, std::uint64_t b = 0, std::uint64_t c = 0,
                        std::uint64_t d = 0);

}  // namespace mvscale
