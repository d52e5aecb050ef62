#pragma once

#include <cstdint>
#include <cstdio>
#include <string>
#include <string_view>

namespace driftlab {

// 64-bit FNV-1a content hashes, used to bind models to feature spaces and to
// record input/config fingerprints in run manifests. Not cryptographic.
inline constexpr std::uint64_t kFnv64Offset = 1469598103934665603ULL;
inline constexpr std::uint64_t kFnv64Prime = 1099511628211ULL;

constexpr std::uint64_t fnv1a64(std::string_view bytes, std::uint64_t h = kFnv64Offset) {
    for (unsigned char c : bytes) {
        h ^= c;
        h *= kFnv64Prime;
    }
    return h;
}

// Feeds the 8 little-endian bytes of `v` into an ongoing FNV-1a state.
constexpr std::uint64_t fnv1a64_u64(std::uint64_t v, std::uint64_t h) {
    for (int i = 0; i < 8; ++i) {
        h ^= (v >> (8 * i)) & 0xffU;
        h *= kFnv64Prime;
    }
    return h;
}

constexpr std::uint64_t fnv1a64_f64(double v, std::uint64_t h) {
    std::uint64_t bits = __builtin_bit_cast(std::uint64_t, v);
    return fnv1a64_u64(bits, h);
}

inline std::string hex64(std::uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
    return std::string(buf, 16);
}

}  // namespace driftlab
