#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <string>

#include "mixnorm/errors.hpp"

namespace mixnorm {

/// Seed for one logical random stream. Distinct (masterSeed, streamId)
/// pairs give statistically independent streams, which is what makes
/// replica-parallel sampling independent of scheduling.
struct SeedSpec {
    std::uint64_t master_seed = 0;
    std::uint64_t stream_id = 0;
};

/// Packs a stream id from a purpose lane, a position in the n schedule and
/// a replica index, so no two logical draws in an experiment share a stream.
inline std::uint64_t make_stream_id(std::uint64_t lane, std::uint64_t n_index, std::uint64_t replica) {
    if (lane >= (1ull << 16) || n_index >= (1ull << 16) || replica >= (1ull << 32))
        raise(errc::invalid_argument, "stream id component out of range");
    return (lane << 48) | (n_index << 32) | replica;
}

namespace philox {

inline constexpr std::uint32_t mult_a = 0xD2511F53u;
inline constexpr std::uint32_t mult_b = 0xCD9E8D57u;
inline constexpr std::uint32_t weyl_a = 0x9E3779B9u;
inline constexpr std::uint32_t weyl_b = 0xBB67AE85u;

using counter_t = std::array<std::uint32_t, 4>;
using key_t = std::array<std::uint32_t, 2>;

inline counter_t round_once(const counter_t& c, const key_t& k) {
    const std::uint64_t prod0 = static_cast<std::uint64_t>(mult_a) * c[0];
    const std::uint64_t prod1 = static_cast<std::uint64_t>(mult_b) * c[2];
    const auto hi0 = static_cast<std::uint32_t>(prod0 >> 32);
    const auto lo0 = static_cast<std::uint32_t>(prod0);
    const auto hi1 = static_cast<std::uint32_t>(prod1 >> 32);
    const auto lo1 = static_cast<std::uint32_t>(prod1);
    return {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
}

/// Philox4x32 with 10 rounds: a stateless 128-bit block cipher keyed by
/// 64 bits; the block index is the counter, so any block is computable
/// directly without sequential state.
inline counter_t philox4x32_10(counter_t counter, key_t key) {
    counter = round_once(counter, key);
    for (int r = 1; r < 10; ++r) {
        key[0] += weyl_a;
        key[1] += weyl_b;
        counter = round_once(counter, key);
    }
    return counter;
}

} // namespace philox

/// Deterministic random stream: Philox keyed by the master seed, with the
/// stream id in the high counter words and a block index in the low words.
/// Every draw sequence is a pure function of the SeedSpec.
class RandomStream {
public:
    explicit RandomStream(SeedSpec seed)
        : key_{static_cast<std::uint32_t>(seed.master_seed), static_cast<std::uint32_t>(seed.master_seed >> 32)},
          stream_lo_(static_cast<std::uint32_t>(seed.stream_id)),
          stream_hi_(static_cast<std::uint32_t>(seed.stream_id >> 32)) {}

    std::uint32_t next_u32() {
        if (pos_ == 4) {
            buffer_ = philox::philox4x32_10(
                {static_cast<std::uint32_t>(block_), static_cast<std::uint32_t>(block_ >> 32), stream_lo_, stream_hi_},
                key_);
            ++block_;
            pos_ = 0;
        }
        return buffer_[pos_++];
    }

    std::uint64_t next_u64() {
        const std::uint64_t lo = next_u32();
        const std::uint64_t hi = next_u32();
        return (hi << 32) | lo;
    }

    /// Uniform draw on the open interval (0, 1); never returns 0 or 1, so
    /// logs of uniforms are always finite.
    double uniform() { return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53; }

    /// Standard normal via Box-Muller; generates pairs, caches the spare.
    double gaussian() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        const double radius = std::sqrt(-2.0 * std::log(uniform()));
        const double angle = 6.283185307179586476925286766559 * uniform();
        spare_ = radius * std::sin(angle);
        has_spare_ = true;
        return radius * std::cos(angle);
    }

    /// +1 or -1 with equal probability.
    double rademacher() { return (next_u32() >> 31) != 0 ? 1.0 : -1.0; }

    /// Standard exponential, rate 1.
    double exponential() { return -std::log(uniform()); }

    /// Symmetric Weibull with shape q: P(|W| > t) = exp(-t^q), sign uniform.
    double weibull_symmetric(double q) {
        const double sign = rademacher();
        return sign * std::pow(exponential(), 1.0 / q);
    }

    /// Exponential recentred to mean zero (unit rate, unit variance).
    double centered_exponential() { return exponential() - 1.0; }

private:
    philox::key_t key_;
    std::uint32_t stream_lo_ = 0;
    std::uint32_t stream_hi_ = 0;
    std::uint64_t block_ = 0;
    philox::counter_t buffer_{};
    int pos_ = 4;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

} // namespace mixnorm
