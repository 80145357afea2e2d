#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <vector>

#include "itsp/engine.hpp"
#include "itsp/model.hpp"

namespace itsp {

/// Arithmetic mean of the per-instance quotients b_i / a_i, a being the
/// baseline column.
inline double mean_ratio(const std::vector<double>& baseline, const std::vector<double>& other) {
    if (baseline.size() != other.size())
        throw std::invalid_argument("mean_ratio: column lengths differ");
    if (baseline.empty()) throw std::invalid_argument("mean_ratio: empty columns");
    double sum = 0.0;
    for (std::size_t i = 0; i < baseline.size(); ++i) {
        if (baseline[i] <= 0.0 || other[i] <= 0.0)
            throw std::invalid_argument("mean_ratio: times must be positive");
        sum += other[i] / baseline[i];
    }
    return sum / static_cast<double>(baseline.size());
}

using KeySet = std::set<CanonicalKey>;

inline std::size_t intersection_size(const KeySet& a, const KeySet& b) {
    std::size_t count = 0;
    const KeySet& small = a.size() <= b.size() ? a : b;
    const KeySet& large = a.size() <= b.size() ? b : a;
    for (const auto& k : small) count += large.count(k);
    return count;
}

/// |S1 n S2| / |S1|: how many of the pre-generated SECs the final model of
/// the plain run actually contains.
inline double p_used(const KeySet& s1, const KeySet& s2) {
    if (s1.empty()) throw std::invalid_argument("p_used: S1 is empty");
    return static_cast<double>(intersection_size(s1, s2)) / static_cast<double>(s1.size());
}

/// |S1 n S2| / |S2|: how much of the final model the pre-phase covered.
inline double p_cov(const KeySet& s1, const KeySet& s2) {
    if (s2.empty()) throw std::invalid_argument("p_cov: S2 is empty");
    return static_cast<double>(intersection_size(s1, s2)) / static_cast<double>(s2.size());
}

struct CurvePoint {
    double position = 0.0; // iteration scaled into [0, resolution]
    double mean_subtours = 0.0;
};

struct SubtourCurve {
    std::uint32_t iteration_count = 0; // the K this group shares
    std::size_t runs = 0;
    std::vector<CurvePoint> points;
};

/// Groups complete runs by their iteration count K and, per group, averages
/// the subtour count at each iteration. Iteration k is plotted at
/// resolution*(k-1)/(K-1); runs with K = 1 sit at position 0.
inline std::vector<SubtourCurve> subtour_curve(const std::vector<RunReport>& reports,
                                               double resolution = 10.0) {
    std::map<std::uint32_t, std::vector<const RunReport*>> groups;
    for (const auto& r : reports) {
        if (r.status != RunStatus::optimal)
            throw std::invalid_argument("subtour_curve: report is incomplete");
        groups[r.iterations].push_back(&r);
    }
    std::vector<SubtourCurve> curves;
    for (const auto& [k, group] : groups) {
        SubtourCurve curve;
        curve.iteration_count = k;
        curve.runs = group.size();
        for (std::uint32_t it = 0; it < k; ++it) {
            double sum = 0.0;
            for (const auto* r : group) sum += r->per_iteration[it].subtours;
            const double pos = (k == 1) ? 0.0 : resolution * it / static_cast<double>(k - 1);
            curve.points.push_back({pos, sum / static_cast<double>(group.size())});
        }
        curves.push_back(std::move(curve));
    }
    return curves;
}

struct SqrtAsymptoticPoint {
    std::uint32_t n = 0;
    std::size_t samples = 0;
    double mean_ratio = 0.0;     // mean of value / sqrt(n)
    double standard_error = 0.0; // of that mean
};

/// Per-n mean and standard error of value / sqrt(n). Values are expected in
/// unit-square units (scaled integers divided by 2^14).
inline std::vector<SqrtAsymptoticPoint> sqrt_asymptotic(
    const std::vector<std::pair<std::uint32_t, double>>& lengths) {
    std::map<std::uint32_t, std::vector<double>> by_n;
    for (const auto& [n, value] : lengths) by_n[n].push_back(value / std::sqrt(static_cast<double>(n)));
    std::vector<SqrtAsymptoticPoint> points;
    for (const auto& [n, ratios] : by_n) {
        SqrtAsymptoticPoint p;
        p.n = n;
        p.samples = ratios.size();
        double sum = 0.0;
        for (double r : ratios) sum += r;
        p.mean_ratio = sum / static_cast<double>(ratios.size());
        if (ratios.size() > 1) {
            double var = 0.0;
            for (double r : ratios) var += (r - p.mean_ratio) * (r - p.mean_ratio);
            var /= static_cast<double>(ratios.size() - 1);
            p.standard_error = std::sqrt(var / static_cast<double>(ratios.size()));
        }
        points.push_back(p);
    }
    return points;
}

} // namespace itsp
