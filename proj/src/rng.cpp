#include "wormhole/rng.hpp"

#include <array>

namespace wormhole {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

}  // namespace

std::mt19937_64 substream(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
    const std::uint64_t a = splitmix64(seed);
    const std::uint64_t b = splitmix64(a ^ splitmix64(stream + 0x632be59bd9b4e019ULL));
    const std::uint64_t c = splitmix64(b ^ splitmix64(index + 0x8cb92ba72f3d8dd7ULL));
    std::array<std::uint32_t, 6> words{
        static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(a >> 32),
        static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(b >> 32),
        static_cast<std::uint32_t>(c), static_cast<std::uint32_t>(c >> 32)};
    std::seed_seq seq(words.begin(), words.end());
    return std::mt19937_64(seq);
}

std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t x = rng();
    while (x >= limit) x = rng();
    return x % bound;
}

}  // namespace wormhole
