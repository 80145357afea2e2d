#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <utility>

namespace itsp {

/// Unordered vertex pairs are stored in a triangular array:
/// idx(u, v) = v(v-1)/2 + u for u < v, a bijection onto [0, n(n-1)/2).

inline std::size_t edge_count(std::uint32_t n) {
    return static_cast<std::size_t>(n) * (n - 1) / 2;
}

inline std::uint32_t edge_index(std::uint32_t u, std::uint32_t v) {
    if (u == v) throw std::invalid_argument("edge_index: u == v");
    if (u > v) std::swap(u, v);
    return v * (v - 1) / 2 + u;
}

/// Inverse of edge_index: returns (u, v) with u < v.
inline std::pair<std::uint32_t, std::uint32_t> edge_endpoints(std::uint32_t idx) {
    // v is the largest integer with v(v-1)/2 <= idx.
    auto v = static_cast<std::uint32_t>((1.0 + std::sqrt(1.0 + 8.0 * static_cast<double>(idx))) / 2.0);
    while (static_cast<std::uint64_t>(v) * (v - 1) / 2 > idx) --v;
    while (static_cast<std::uint64_t>(v + 1) * v / 2 <= idx) ++v;
    return {idx - v * (v - 1) / 2, v};
}

} // namespace itsp
