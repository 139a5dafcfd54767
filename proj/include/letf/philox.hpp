#pragma once

// Philox4x32-10 counter-based generator. Draws are a pure function of
// (seed, stream, block), so simulations are reproducible independently of
// thread count and evaluation order: each path owns a stream and each time
// step owns a block.

#include <array>
#include <cmath>
#include <cstdint>

namespace letf {

class Philox {
public:
    Philox(std::uint64_t seed, std::uint64_t stream)
        : k0_(static_cast<std::uint32_t>(seed)),
          k1_(static_cast<std::uint32_t>(seed >> 32)),
          c2_(static_cast<std::uint32_t>(stream)),
          c3_(static_cast<std::uint32_t>(stream >> 32)) {}

    std::array<std::uint32_t, 4> block(std::uint64_t n) const {
        std::uint32_t x0 = static_cast<std::uint32_t>(n);
        std::uint32_t x1 = static_cast<std::uint32_t>(n >> 32);
        std::uint32_t x2 = c2_, x3 = c3_;
        std::uint32_t k0 = k0_, k1 = k1_;
        for (int round = 0; round < 10; ++round) {
            const std::uint64_t p0 = std::uint64_t{0xD2511F53u} * x0;
            const std::uint64_t p1 = std::uint64_t{0xCD9E8D57u} * x2;
            const std::uint32_t y0 = static_cast<std::uint32_t>(p1 >> 32) ^ x1 ^ k0;
            const std::uint32_t y1 = static_cast<std::uint32_t>(p1);
            const std::uint32_t y2 = static_cast<std::uint32_t>(p0 >> 32) ^ x3 ^ k1;
            const std::uint32_t y3 = static_cast<std::uint32_t>(p0);
            x0 = y0;
            x1 = y1;
            x2 = y2;
            x3 = y3;
            k0 += 0x9E3779B9u;
            k1 += 0xBB67AE85u;
        }
        return {x0, x1, x2, x3};
    }

    // Two independent standard normals from one counter block: the four
    // 32-bit words form two 53-bit uniforms in (0,1), then Box-Muller.
    std::array<double, 2> normal_pair(std::uint64_t n) const {
        const auto w = block(n);
        const std::uint64_t a = (std::uint64_t{w[0]} << 32) | w[1];
        const std::uint64_t b = (std::uint64_t{w[2]} << 32) | w[3];
        const double u1 = (static_cast<double>(a >> 11) + 0.5) * 0x1.0p-53;
        const double u2 = (static_cast<double>(b >> 11) + 0.5) * 0x1.0p-53;
        const double rad = std::sqrt(-2.0 * std::log(u1));
        const double ang = 6.283185307179586476925286766559 * u2;
        return {rad * std::cos(ang), rad * std::sin(ang)};
    }

    // One uniform in (0,1) from a counter block (parameter sampling).
    double uniform(std::uint64_t n) const {
        const auto w = block(n);
        const std::uint64_t a = (std::uint64_t{w[0]} << 32) | w[1];
        return (static_cast<double>(a >> 11) + 0.5) * 0x1.0p-53;
    }

private:
    std::uint32_t k0_, k1_, c2_, c3_;
};

}  // namespace letf
