#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "itsp/instance.hpp"
#include "itsp/rng.hpp"

namespace itsp {

/// Unit-square coordinates are turned into integers by scaling with 2^14.
inline constexpr double kCoordinateScale = 16384.0;

/// Nearest integer with halves rounded away from zero. Inputs here are
/// always nonnegative, so this is floor(x + 0.5).
inline std::int64_t nint(double x) {
    return static_cast<std::int64_t>(std::floor(x + 0.5));
}

inline std::int64_t scaled_euclidean_weight(const Point& a, const Point& b) {
    const double dx = a.x - b.x;
    const double dy = a.y - b.y;
    return nint(kCoordinateScale * std::sqrt(dx * dx + dy * dy));
}

inline std::vector<std::int64_t> scaled_weights_from_points(const std::vector<Point>& pts) {
    const auto n = static_cast<std::uint32_t>(pts.size());
    std::vector<std::int64_t> w(edge_count(n));
    for (std::uint32_t v = 1; v < n; ++v)
        for (std::uint32_t u = 0; u < v; ++u)
            w[edge_index(u, v)] = scaled_euclidean_weight(pts[u], pts[v]);
    return w;
}

/// n uniform points in [0,1]^2 from a SplitMix64 stream (x then y per point).
/// Equal (n, seed) gives an identical instance on every platform.
inline Instance gen_random_euclidean(std::uint32_t n, std::uint64_t seed) {
    if (n < 3) throw std::invalid_argument("gen_random_euclidean: n must be at least 3");
    SplitMix64 rng(seed);
    std::vector<Point> pts(n);
    for (auto& p : pts) {
        p.x = rng.next_double();
        p.y = rng.next_double();
    }
    auto w = scaled_weights_from_points(pts);
    return Instance("RE_" + std::to_string(seed) + "_" + std::to_string(n),
                    Source::random_euclidean, n, std::move(w), std::move(pts));
}

/// 3 x cols mesh with unit spacing; vertex id = row * cols + col.
inline Instance gen_mesh(std::uint32_t cols) {
    if (cols < 4 || cols % 2 != 0)
        throw std::invalid_argument("gen_mesh: cols must be even and at least 4");
    std::vector<Point> pts;
    pts.reserve(3u * cols);
    for (std::uint32_t row = 0; row < 3; ++row)
        for (std::uint32_t col = 0; col < cols; ++col)
            pts.push_back({static_cast<double>(col), static_cast<double>(row)});
    auto w = scaled_weights_from_points(pts);
    return Instance("mesh3x" + std::to_string(cols), Source::mesh,
                    static_cast<std::uint32_t>(pts.size()), std::move(w), std::move(pts));
}

} // namespace itsp
