#pragma once

// Philox4x32-10 counter-based generator (Salmon et al., SC'11).

#include <array>
#include <cstdint>
#include <numbers>

namespace risphase::rng {

using Counter = std::array<std::uint32_t, 4>;
using Key = std::array<std::uint32_t, 2>;

namespace detail {

inline constexpr std::uint32_t philox_m0 = 0xD2511F53u;
inline constexpr std::uint32_t philox_m1 = 0xCD9E8D57u;
inline constexpr std::uint32_t philox_w0 = 0x9E3779B9u;
inline constexpr std::uint32_t philox_w1 = 0xBB67AE85u;

constexpr void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo) {
    const std::uint64_t product = static_cast<std::uint64_t>(a) * b;
    hi = static_cast<std::uint32_t>(product >> 32);
    lo = static_cast<std::uint32_t>(product);
}

} // namespace detail

constexpr Counter philox4x32(Counter ctr, Key key) {
    for (int round = 0; round < 10; ++round) {
        std::uint32_t hi0 = 0, lo0 = 0, hi1 = 0, lo1 = 0;
        detail::mulhilo(detail::philox_m0, ctr[0], hi0, lo0);
        detail::mulhilo(detail::philox_m1, ctr[2], hi1, lo1);
        ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
        key[0] += detail::philox_w0;
        key[1] += detail::philox_w1;
    }
    return ctr;
}

/// Stream tags; each random quantity of the simulator draws from its own
/// counter subspace.
enum class Tag : std::uint32_t { Slow = 1, Fast = 2, Moments = 3 };

/// Stateless keyed stream: block(tag, slow, fast, element_block) is a pure
/// function of its arguments and the seed.
class Stream {
public:
    explicit constexpr Stream(std::uint64_t seed)
        : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)} {}

    /// The slow index is limited to 56 bits.
    constexpr Counter block(Tag tag, std::uint64_t slow, std::uint32_t fast, std::uint32_t element_block) const {
        const Counter ctr{element_block, fast, static_cast<std::uint32_t>(slow),
                          (static_cast<std::uint32_t>(tag) << 24) |
                              static_cast<std::uint32_t>((slow >> 32) & 0xFFFFFFu)};
        return philox4x32(ctr, key_);
    }

private:
    Key key_;
};

/// Uniform double in [0, 1) with 53 random bits.
constexpr double to_unit(std::uint32_t hi, std::uint32_t lo) {
    const std::uint64_t bits = (static_cast<std::uint64_t>(hi) << 32) | lo;
    return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

/// Uniform phase in [0, 2 pi) from 32 random bits.
constexpr double to_phase(std::uint32_t bits) {
    return static_cast<double>(bits) * (2.0 * std::numbers::pi * 0x1.0p-32);
}

/// Uniform index in {0, ..., levels - 1} from 32 random bits.
constexpr std::uint32_t to_level(std::uint32_t bits, std::uint32_t levels) {
    return static_cast<std::uint32_t>((static_cast<std::uint64_t>(bits) * levels) >> 32);
}

} // namespace risphase::rng
