#pragma once

#include <cstdint>
#include <random>

namespace tempest::rng {

// Stream purposes. Every random draw in the library comes from an engine
// keyed by (seed, purpose, index, subindex), so replicates and trials never
// share state and any value can be regenerated in isolation.
namespace purpose {
inline constexpr std::uint64_t wild_x = 0x01;
inline constexpr std::uint64_t wild_y = 0x02;
inline constexpr std::uint64_t wild_paired = 0x03;
inline constexpr std::uint64_t permutation = 0x04;
inline constexpr std::uint64_t shift = 0x05;
inline constexpr std::uint64_t median_heuristic = 0x06;
inline constexpr std::uint64_t gen_gibbs = 0x10;
inline constexpr std::uint64_t gen_iid = 0x11;
inline constexpr std::uint64_t gen_pitch = 0x12;
inline constexpr std::uint64_t gen_extinct = 0x13;
inline constexpr std::uint64_t gen_vec = 0x14;
inline constexpr std::uint64_t gen_oscillator = 0x15;
inline constexpr std::uint64_t gen_ar = 0x16;
inline constexpr std::uint64_t trial = 0x20;
}  // namespace purpose

/// splitmix64 finalizer; bijective on 64-bit words.
constexpr std::uint64_t mix(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Engine for the stream keyed by (seed, purpose, index, subindex).
inline std::mt19937_64 stream(std::uint64_t seed, std::uint64_t purpose,
                              std::uint64_t index = 0,
                              std::uint64_t subindex = 0) {
    const std::uint64_t a = mix(seed);
    const std::uint64_t b = mix(a ^ mix(purpose));
    const std::uint64_t c = mix(b ^ mix(index));
    const std::uint64_t d = mix(c ^ mix(subindex));
    std::seed_seq seq{
        static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(a >> 32),
        static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(b >> 32),
        static_cast<std::uint32_t>(c), static_cast<std::uint32_t>(c >> 32),
        static_cast<std::uint32_t>(d), static_cast<std::uint32_t>(d >> 32)};
    return std::mt19937_64(seq);
}

/// Per-trial seed for experiment harnesses: independent of, and stable
/// under, how many trials run or in which order.
inline std::uint64_t trial_seed(std::uint64_t suite_seed, std::uint64_t trial_index) {
    return mix(mix(suite_seed) ^ mix(purpose::trial + (trial_index << 8)));
}

}  // namespace tempest::rng
