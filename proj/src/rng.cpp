#include "mvscale/rng.hpp"

#include <cmath>

namespace mvscale {

namespace {

constexpr std::uint32_t kPhiloxM0 = 0xD2511F53u;
constexpr std::uint32_t kPhiloxM1 = 0xCD9E8D57u;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

inline void philox_round(std::array<std::uint32_t, 4>& ctr,
                         const std::array<std::uint32_t, 2>& key) {
    const std::uint64_t p0 = static_cast<std::uint64_t>(kPhiloxM0) * ctr[0];
    const std::uint64_t p1 = static_cast<std::uint64_t>(kPhiloxM1) * ctr[2];
    const std::uint32_t hi0 = static_cast<std::uint32_t>(p0 >> 32);
    const std::uint32_t lo0 = static_cast<std::uint32_t>(p0);
    const std::uint32_t hi1 = static_cast<std::uint32_t>(p1 >> 32);
    const std::uint32_t lo1 = static_cast<std::uint32_t>(p1);
    ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
}

// 128-layer ziggurat tables for the standard normal (Marsaglia & Tsang 2000).
// x_tab[1] = r, x_tab[0] = v / pdf(r) is the virtual width of the base strip.
constexpr int kZigLayers = 128;
constexpr double kZigR = 3.442619855899;
constexpr double kZigV = 9.91256303526217e-3;

struct ZigTables {
    double x[kZigLayers + 1];
    double f[kZigLayers + 1];
    ZigTables() {
        auto pdf = [](double x) { return std::exp(-0.5 * x * x); };
        x[1] = kZigR;
        x[0] = kZigV / pdf(kZigR);
        for (int i = 2; i <= kZigLayers; ++i) {
            const double prev = x[i - 1];
            const double arg = pdf(prev) + kZigV / prev;
            x[i] = (arg >= 1.0) ? 0.0 : std::sqrt(-2.0 * std::log(arg));
        }
        x[kZigLayers] = 0.0;
        for (int i = 0; i <= kZigLayers; ++i) f[i] = pdf(x[i]);
    }
};

const ZigTables& zig() {
    static const ZigTables tables;
    return tables;
}

}  // namespace

std::array<std::uint32_t, 4> Philox4x32::block(std::array<std::uint32_t, 2> key,
                                               std::array<std::uint32_t, 4> ctr) {
    for (int round = 0; round < 10; ++round) {
        philox_round(ctr, key);
        key[0] += kWeyl0;
        key[1] += kWeyl1;
    }
    return ctr;
}

std::array<std::uint32_t, 4> Philox4x32::next() {
    const auto out = block(key, counter);
    // 128-bit counter increment
    if (++counter[0] == 0)
        if (++counter[1] == 0)
            if (++counter[2] == 0) ++counter[3];
    return out;
}

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

std::uint64_t stream_id(std::uint64_t a, std::uint64_t b, std::uint64_t c,
                        std::uint64_t d) {
    std::uint64_t h = splitmix64(a);
    h = splitmix64(h ^ (b + 0x9E3779B97F4A7C15ull));
    h = splitmix64(h ^ (c + 0xC2B2AE3D27D4EB4Full));
    h = splitmix64(h ^ (d + 0x165667B19E3779F9ull));
    return h;
}

NoiseStream::NoiseStream(std::uint64_t seed, std::uint64_t id) {
    const std::uint64_t k = splitmix64(seed ^ splitmix64(id));
    const std::uint64_t c = splitmix64(k ^ 0xD6E8FEB86659FD93ull);
    gen_.key = {static_cast<std::uint32_t>(k), static_cast<std::uint32_t>(k >> 32)};
    // High counter words carry stream salt; the low 64 bits count blocks.
    gen_.counter = {0, 0, static_cast<std::uint32_t>(c),
                    static_cast<std::uint32_t>(c >> 32)};
}

std::uint32_t NoiseStream::next_u32() {
    if (buf_pos_ == 4) {
        buf_ = gen_.next();
        buf_pos_ = 0;
    }
    return buf_[buf_pos_++];
}

std::uint64_t NoiseStream::next_u64() {
    const std::uint64_t lo = next_u32();
    const std::uint64_t hi = next_u32();
    return lo | (hi << 32);
}

double NoiseStream::next_uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double NoiseStream::next_normal() {
    const auto& t = zig();
    for (;;) {
        const std::uint64_t bits = next_u64();
        const int layer = static_cast<int>(bits & 127u);
        const double sign = (bits & 128u) ? -1.0 : 1.0;
        const double u = static_cast<double>(bits >> 11) * 0x1.0p-53;
        const double x = u * t.x[layer];
        if (x < t.x[layer + 1]) return sign * x;
        if (layer == 0) {
            // Tail beyond r (Marsaglia 1964).
            double ex, ey;
            do {
                ex = -std::log(1.0 - next_uniform()) / kZigR;
                ey = -std::log(1.0 - next_uniform());
            } while (2.0 * ey < ex * ex);
            return sign * (kZigR + ex);
        }
        const double fx = std::exp(-0.5 * x * x);
        if (t.f[layer] + next_uniform() * (t.f[layer + 1] - t.f[layer]) < fx)
            return sign * x;
    }
}

double NoiseStream::next_normal_polar() {
    for (;;) {
        const double u = 2.0 * next_uniform() - 1.0;
        const double v = 2.0 * next_uniform() - 1.0;
        const double s = u * u + v * v;
        if (s > 0.0 && s < 1.0) {
            return u * std::sqrt(-2.0 * std::log(s) / s);
        }
    }
}

}  // namespace mvscale
