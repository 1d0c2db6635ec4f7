#pragma once

#include <cstdint>
#include <string_view>

namespace capsim::rng {

// splitmix64 finalizer; bijective 64-bit mix.
constexpr std::uint64_t mix(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

// Stream seeds are derived from (master seed, label/index) so adding a
// consumer never perturbs another consumer's stream.
inline std::uint64_t derive(std::uint64_t master, std::uint64_t index) {
    return mix(mix(master) ^ mix(index + 0x517cc1b727220a95ull));
}

inline std::uint64_t derive(std::uint64_t master, std::string_view label) {
    std::uint64_t h = 0xcbf29ce484222325ull;  // FNV-1a
    for (char c : label) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ull;
    }
    return mix(mix(master) ^ h);
}

}  // namespace capsim::rng
