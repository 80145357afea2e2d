#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "itsp/instance.hpp"

namespace itsp {

/// A Hamiltonian tour: a permutation of the vertices plus its closed length.
struct Tour {
    std::vector<std::uint32_t> order;
    std::int64_t length = 0;
};

inline std::int64_t tour_length(const Instance& inst, const std::vector<std::uint32_t>& order) {
    std::int64_t total = 0;
    for (std::size_t i = 0; i < order.size(); ++i)
        total += inst.weight(order[i], order[(i + 1) % order.size()]);
    return total;
}

inline Tour make_tour(const Instance& inst, std::vector<std::uint32_t> order) {
    if (order.size() != inst.n()) throw std::invalid_argument("tour: wrong vertex count");
    std::vector<bool> seen(inst.n(), false);
    for (auto v : order) {
        if (v >= inst.n() || seen[v]) throw std::invalid_argument("tour: not a permutation");
        seen[v] = true;
    }
    Tour t{std::move(order), 0};
    t.length = tour_length(inst, t.order);
    return t;
}

/// Greedy construction; distance ties pick the smallest vertex id.
inline Tour nearest_neighbor(const Instance& inst, std::uint32_t start) {
    if (start >= inst.n()) throw std::invalid_argument("nearest_neighbor: start out of range");
    std::vector<bool> visited(inst.n(), false);
    std::vector<std::uint32_t> order;
    order.reserve(inst.n());
    order.push_back(start);
    visited[start] = true;
    for (std::uint32_t step = 1; step < inst.n(); ++step) {
        const std::uint32_t cur = order.back();
        std::uint32_t best = inst.n();
        std::int64_t best_w = 0;
        for (std::uint32_t v = 0; v < inst.n(); ++v) {
            if (visited[v]) continue;
            const std::int64_t w = inst.weight(cur, v);
            if (best == inst.n() || w < best_w) {
                best = v;
                best_w = w;
            }
        }
        order.push_back(best);
        visited[best] = true;
    }
    return make_tour(inst, std::move(order));
}

/// First-improvement 2-opt; the scan restarts after every applied move, so
/// the result is a deterministic local optimum no longer than the input.
inline Tour two_opt(const Instance& inst, Tour tour) {
    const std::size_t n = tour.order.size();
    if (n < 4) return tour;
    auto& o = tour.order;
    bool improved = true;
    while (improved) {
        improved = false;
        for (std::size_t i = 0; i + 1 < n && !improved; ++i) {
            for (std::size_t j = i + 1; j < n && !improved; ++j) {
                if (i == 0 && j == n - 1) continue; // whole-tour reversal is a no-op
                const std::uint32_t a = o[(i + n - 1) % n], b = o[i];
                const std::uint32_t c = o[j], d = o[(j + 1) % n];
                const std::int64_t delta =
                    inst.weight(a, c) + inst.weight(b, d) - inst.weight(a, b) - inst.weight(c, d);
                if (delta < 0) {
                    std::reverse(o.begin() + static_cast<std::ptrdiff_t>(i),
                                 o.begin() + static_cast<std::ptrdiff_t>(j) + 1);
                    tour.length += delta;
                    improved = true;
                }
            }
        }
    }
    return tour;
}

/// Or-opt: relocates segments of length 1..3 (forward orientation),
/// first-improvement with a fixed scan order. Length never increases.
inline Tour or_opt(const Instance& inst, Tour tour) {
    const std::size_t n = tour.order.size();
    if (n < 5) return tour;
    auto& o = tour.order;
    bool improved = true;
    while (improved) {
        improved = false;
        for (std::size_t seg = 1; seg <= 3 && !improved; ++seg) {
            if (n < seg + 2) break;
            for (std::size_t i = 0; i + seg <= n && !improved; ++i) {
                const std::uint32_t before = o[(i + n - 1) % n];
                const std::uint32_t first = o[i];
                const std::uint32_t last = o[i + seg - 1];
                const std::uint32_t after = o[(i + seg) % n];
                const std::int64_t removed = inst.weight(before, first) + inst.weight(last, after) -
                                             inst.weight(before, after);
                // remaining tour with the segment cut out; `before` -> `after`
                // stay cyclically adjacent in it
                std::vector<std::uint32_t> rest;
                rest.reserve(n - seg);
                for (std::size_t k = 0; k < n; ++k)
                    if (k < i || k >= i + seg) rest.push_back(o[k]);

                for (std::size_t j = 0; j < rest.size() && !improved; ++j) {
                    const std::uint32_t p = rest[j];
                    const std::uint32_t q = rest[(j + 1) % rest.size()];
                    if (p == before) continue; // reinserting in place
                    const std::int64_t added =
                        inst.weight(p, first) + inst.weight(last, q) - inst.weight(p, q);
                    if (added - removed < 0) {
                        std::vector<std::uint32_t> next;
                        next.reserve(n);
                        for (std::size_t k = 0; k < rest.size(); ++k) {
                            next.push_back(rest[k]);
                            if (k == j)
                                next.insert(next.end(), o.begin() + static_cast<std::ptrdiff_t>(i),
                                            o.begin() + static_cast<std::ptrdiff_t>(i + seg));
                        }
                        o = std::move(next);
                        tour.length += added - removed;
                        improved = true;
                    }
                }
            }
        }
    }
    return tour;
}

/// 2-opt and Or-opt to a common fixed point.
inline Tour improve_tour(const Instance& inst, Tour tour) {
    while (true) {
        const std::int64_t before = tour.length;
        tour = two_opt(inst, std::move(tour));
        tour = or_opt(inst, std::move(tour));
        if (tour.length == before) return tour;
    }
}

} // namespace itsp
