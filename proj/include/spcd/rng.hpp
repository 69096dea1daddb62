#pragma once

// Counter-based random streams built on the SplitMix64 finalizer
// (Steele, Lea & Flood 2014; Stafford mix13 constants).
//
// Every random word is a pure function of (seed, stream tag, index, counter),
// so a simulated trial is reproducible bit-for-bit no matter how callers
// schedule work across threads. There is no generator state to share or
// advance; distinct tuples give independent-looking streams.

#include <cstdint>

#include "spcd/normal.hpp"

namespace spcd::rng {

// Stream tags. One tag per random variable in the trial DGP plus the
// permutation and seeding streams used by the harness.
enum Stream : std::uint64_t {
    kStreamBaseline = 1,    // Y0 draw, per participant
    kStreamLatent = 2,      // L draw, per participant
    kStreamNoise1 = 3,      // epsilon_1, per participant
    kStreamNoise2 = 4,      // epsilon_2, per participant
    kStreamStage1Perm = 5,  // Fisher-Yates words for stage-1 allocation
    kStreamStage2Perm = 6,  // Fisher-Yates words for stage-2 re-randomization
    kStreamCell = 7,        // grid cell seeds from the master seed
    kStreamReplicate = 8,   // replicate seeds from a cell seed
};

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

constexpr std::uint64_t mix64(std::uint64_t x) {
    x ^= x >> 30;
    x *= 0xbf58476d1ce4e5b9ULL;
    x ^= x >> 27;
    x *= 0x94d049bb133111ebULL;
    x ^= x >> 31;
    return x;
}

// k-th 64-bit word of the stream identified by (seed, tag, index).
constexpr std::uint64_t word(std::uint64_t seed, std::uint64_t tag, std::uint64_t index,
                             std::uint64_t k = 0) {
    std::uint64_t h = mix64(seed + kGolden * (tag + 1));
    h = mix64(h + kGolden * (index + 1));
    return mix64(h + kGolden * (k + 1));
}

// Derive a child seed, e.g. per grid cell or per replicate.
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t tag, std::uint64_t index) {
    return word(seed, tag, index);
}

// Uniform on the open interval (0, 1) with 53-bit resolution.
inline double to_uniform(std::uint64_t bits) {
    return (static_cast<double>(bits >> 11) + 0.5) * 0x1.0p-53;
}

// Standard normal via the inverse CDF; one word, one draw.
inline double to_normal(std::uint64_t bits) {
    return normal_quantile(to_uniform(bits));
}

// Map a word to an integer in [0, bound) through a 128-bit multiply.
inline std::uint64_t to_bounded(std::uint64_t bits, std::uint64_t bound) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(bits) * bound) >> 64);
}

}  // namespace spcd::rng
