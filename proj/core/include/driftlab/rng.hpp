#pragma once

// Deterministic randomness. Every sampled decision in the project flows
// through SplitMix64 so that a fixed seed reproduces byte-identical results
// on any platform and standard library. The generator is Vigna's reference
// splitmix64; bounded draws use Lemire's multiply-shift rejection method.
// Seed derivation for independent subtasks is documented in the README.

#include <cstdint>
#include <initializer_list>
#include <numeric>
#include <vector>

namespace driftlab {

inline constexpr std::uint64_t kGolden64 = 0x9E3779B97F4A7C15ULL;

// splitmix64 output mixing function (also used as the seed-derivation mixer).
constexpr std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() { return mix64(state_ += kGolden64); }

    // Unbiased draw from [0, n); n must be > 0.
    std::uint64_t bounded(std::uint64_t n) {
        unsigned __int128 m = static_cast<unsigned __int128>(next()) * n;
        auto low = static_cast<std::uint64_t>(m);
        if (low < n) {
            const std::uint64_t threshold = (0 - n) % n;
            while (low < threshold) {
                m = static_cast<unsigned __int128>(next()) * n;
                low = static_cast<std::uint64_t>(m);
            }
        }
        return static_cast<std::uint64_t>(m >> 64);
    }

    // Uniform in [0, 1) with 53 random bits.
    double next_double() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

private:
    std::uint64_t state_;
};

// derive_seed(base, {p0, p1, ...}) = fold of mix64 over hash-combined parts.
// Used to hand independent deterministic streams to subtasks (per arm, per
// chunk, per record) so execution order can never change results.
constexpr std::uint64_t derive_seed(std::uint64_t base, std::initializer_list<std::uint64_t> parts) {
    std::uint64_t h = mix64(base + kGolden64);
    for (std::uint64_t p : parts) {
        h ^= mix64(p + kGolden64 + (h << 6) + (h >> 2));
    }
    return h;
}

// Stream tags for derive_seed. Values are part of the reproducibility
// contract; never renumber.
namespace seed_tag {
inline constexpr std::uint64_t kBalance = 1;
inline constexpr std::uint64_t kControlSample = 2;
inline constexpr std::uint64_t kHoldout = 3;
inline constexpr std::uint64_t kChunkEqualize = 4;
inline constexpr std::uint64_t kTrainShuffle = 5;
inline constexpr std::uint64_t kRecord = 6;
inline constexpr std::uint64_t kWindow = 7;
inline constexpr std::uint64_t kSplit = 8;
}  // namespace seed_tag

// In-place Fisher-Yates shuffle.
template <class T>
void shuffle(std::vector<T>& v, SplitMix64& rng) {
    for (std::size_t i = v.size(); i > 1; --i) {
        const auto j = static_cast<std::size_t>(rng.bounded(i));
        using std::swap;
        swap(v[i - 1], v[j]);
    }
}

// k distinct indices from [0, n), uniform without replacement (partial
// Fisher-Yates). Order of the result is the selection order.
inline std::vector<std::size_t> sample_indices(std::size_t n, std::size_t k, SplitMix64& rng) {
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    for (std::size_t i = 0; i < k && i + 1 < n; ++i) {
        const auto j = i + static_cast<std::size_t>(rng.bounded(n - i));
        std::swap(idx[i], idx[j]);
    }
    idx.resize(k);
    return idx;
}

}  // namespace driftlab
