#pragma once

#include <cstdint>
#include <random>

namespace wormhole {

inline constexpr std::uint64_t kDefaultSeed = 20190521;

/// Independent generator for one (seed, stream, index) triple. Every Monte
/// Carlo trial draws from its own substream, so results do not depend on how
/// trials are scheduled across threads.
std::mt19937_64 substream(std::uint64_t seed, std::uint64_t stream, std::uint64_t index);

/// Uniform integer in [0, bound) by rejection; portable across standard
/// library implementations, unlike std::uniform_int_distribution.
std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound);

}  // namespace wormhole
