#pragma once

// Seeded randomness shared by every module.
//
// std::mt19937_64 has a fully specified output sequence, but the standard
// distributions and std::shuffle do not, so the draws built on top of the raw
// engine are implemented here. That keeps record files identical across
// standard library implementations.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <random>
#include <span>
#include <string_view>
#include <type_traits>
#include <utility>

namespace ihbag {

using Engine = std::mt19937_64;
using Seed = std::uint64_t;

constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

constexpr std::uint64_t fnv1a(std::string_view text) noexcept {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

namespace detail {
constexpr std::uint64_t seed_part(std::string_view s) noexcept { return fnv1a(s); }
constexpr std::uint64_t seed_part(const char* s) noexcept { return fnv1a(s); }
template <typename T>
    requires std::is_integral_v<T>
constexpr std::uint64_t seed_part(T v) noexcept {
    return static_cast<std::uint64_t>(v);
}
} // namespace detail

/// Derives a child seed from a parent and any mix of integer / string tags.
/// Stable across platforms and runs.
template <typename... Parts>
constexpr Seed mix_seed(Seed parent, const Parts&... parts) noexcept {
    std::uint64_t h = splitmix64(parent);
    ((h = splitmix64(h ^ splitmix64(detail::seed_part(parts)))), ...);
    return h;
}

/// Uniform double in [0, 1) with 53 random bits.
inline double uniform01(Engine& eng) {
    return static_cast<double>(eng() >> 11) * 0x1.0p-53;
}

/// Uniform integer in [0, n). n must be positive. Lemire's multiply-shift
/// with rejection, so the result is unbiased and usually division free.
inline std::uint64_t uniform_below(Engine& eng, std::uint64_t n) {
    __extension__ using u128 = unsigned __int128;
    u128 m = static_cast<u128>(eng()) * n;
    auto low = static_cast<std::uint64_t>(m);
    if (low < n) {
        const std::uint64_t threshold = (0 - n) % n;
        while (low < threshold) {
            m = static_cast<u128>(eng()) * n;
            low = static_cast<std::uint64_t>(m);
        }
    }
    return static_cast<std::uint64_t>(m >> 64);
}

/// Standard normal deviate (Box-Muller, one value per call).
inline double standard_normal(Engine& eng) {
    const double u1 = 1.0 - uniform01(eng); // (0, 1]
    const double u2 = uniform01(eng);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

/// Fisher-Yates shuffle.
template <typename T>
void shuffle(std::span<T> items, Engine& eng) {
    for (std::size_t i = items.size(); i > 1; --i) {
        const auto j = static_cast<std::size_t>(uniform_below(eng, i));
        std::swap(items[i - 1], items[j]);
    }
}

} // namespace ihbag
