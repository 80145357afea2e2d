#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "itsp/instance.hpp"
#include "itsp/model.hpp"

namespace itsp {

/// An integer point of the model: the set of chosen edges. Degree rows force
/// every vertex to degree 2, so the set decomposes into disjoint cycles.
struct IntegerSolution {
    std::vector<std::uint32_t> chosen; // sorted edge indices

    std::int64_t objective(const Instance& inst) const {
        std::int64_t total = 0;
        for (auto e : chosen) total += inst.weight_at(e);
        return total;
    }
};

/// One cycle of a solution, in walk order starting from its smallest vertex.
struct Cycle {
    std::vector<std::uint32_t> order;

    std::size_t size() const { return order.size(); }
    std::vector<std::uint32_t> sorted_vertices() const {
        auto v = order;
        std::sort(v.begin(), v.end());
        return v;
    }
    std::int64_t length(const Instance& inst) const {
        std::int64_t total = 0;
        for (std::size_t i = 0; i < order.size(); ++i)
            total += inst.weight(order[i], order[(i + 1) % order.size()]);
        return total;
    }
};

/// Splits a degree-2 edge set into its cycles. A vertex with degree != 2
/// means the backend violated the degree rows, which is an integrity error.
inline std::vector<Cycle> extract_subtours(const IntegerSolution& sol, std::uint32_t n) {
    std::vector<std::vector<std::uint32_t>> adj(n);
    for (auto e : sol.chosen) {
        auto [u, v] = edge_endpoints(e);
        adj[u].push_back(v);
        adj[v].push_back(u);
    }
    for (std::uint32_t v = 0; v < n; ++v)
        if (adj[v].size() != 2)
            throw std::logic_error("solution vertex " + std::to_string(v) + " has degree " +
                                   std::to_string(adj[v].size()) + ", expected 2");

    std::vector<bool> visited(n, false);
    std::vector<Cycle> cycles;
    for (std::uint32_t start = 0; start < n; ++start) {
        if (visited[start]) continue;
        Cycle cycle;
        std::uint32_t prev = start;
        std::uint32_t cur = std::min(adj[start][0], adj[start][1]);
        cycle.order.push_back(start);
        visited[start] = true;
        while (cur != start) {
            cycle.order.push_back(cur);
            visited[cur] = true;
            std::uint32_t next = (adj[cur][0] == prev) ? adj[cur][1] : adj[cur][0];
            prev = cur;
            cur = next;
        }
        cycles.push_back(std::move(cycle));
    }
    return cycles;
}

/// Deduplicated store of SECs keyed by canonical subset. Insertion order is
/// kept for deterministic reporting.
class SecPool {
public:
    std::size_t size() const { return entries_.size(); }
    const Sec& operator[](std::size_t i) const { return entries_[i]; }
    const std::vector<Sec>& entries() const { return entries_; }

    std::optional<std::size_t> find(const CanonicalKey& key) const {
        auto it = by_key_.find(key);
        if (it == by_key_.end()) return std::nullopt;
        return it->second;
    }

    /// Inserts unless the canonical key is already present. Returns the index
    /// or nullopt when deduplicated away.
    std::optional<std::size_t> insert(Sec sec) {
        auto [it, added] = by_key_.try_emplace(sec.key, entries_.size());
        if (!added) return std::nullopt;
        entries_.push_back(std::move(sec));
        return entries_.size() - 1;
    }

    /// One SEC per cycle that is new to the pool; cycles spanning all of V
    /// are skipped. Returns how many entries were inserted.
    std::size_t add_violated(const std::vector<Cycle>& cycles, std::uint32_t n, SecOrigin origin,
                             SecStatus status = SecStatus::active) {
        std::size_t added = 0;
        for (const auto& c : cycles) {
            if (c.size() < 3) throw std::invalid_argument("add_violated: cycle shorter than 3");
            if (c.size() == n) continue;
            if (insert(Sec(c.sorted_vertices(), n, origin, status))) ++added;
        }
        return added;
    }

    std::size_t harvest_incumbents(const std::vector<IntegerSolution>& incumbents,
                                   std::uint32_t n) {
        std::size_t added = 0;
        for (const auto& inc : incumbents)
            added += add_violated(extract_subtours(inc, n), n, SecOrigin::incumbent());
        return added;
    }

    /// HCD rule: a regenerated cycle matching a `considered` entry is proof of
    /// global relevance, so the entry is fixed. Returns the promoted indices.
    std::vector<std::size_t> reconcile_considered(const std::vector<Cycle>& regenerated,
                                                  std::uint32_t n) {
        std::vector<std::size_t> promoted;
        for (const auto& c : regenerated) {
            if (c.size() == n) continue;
            auto idx = find(canonical_key(c.sorted_vertices(), n));
            if (idx && entries_[*idx].status == SecStatus::considered) {
                entries_[*idx].status = SecStatus::fixed;
                promoted.push_back(*idx);
            }
        }
        return promoted;
    }

    /// Removes the entries still marked considered (HCD drop at node
    /// completion). Returns how many were dropped.
    std::size_t drop_considered() {
        std::size_t before = entries_.size();
        std::vector<Sec> kept;
        kept.reserve(before);
        for (auto& e : entries_)
            if (e.status != SecStatus::considered) kept.push_back(std::move(e));
        entries_ = std::move(kept);
        by_key_.clear();
        for (std::size_t i = 0; i < entries_.size(); ++i) by_key_[entries_[i].key] = i;
        return before - entries_.size();
    }

    void set_status(std::size_t i, SecStatus s) { entries_[i].status = s; }

    std::size_t count_status(SecStatus s) const {
        std::size_t c = 0;
        for (const auto& e : entries_)
            if (e.status == s) ++c;
        return c;
    }

    std::size_t count_origin(SecOrigin::Kind k) const {
        std::size_t c = 0;
        for (const auto& e : entries_)
            if (e.origin.kind == k) ++c;
        return c;
    }

    /// Debug dump, one SEC per line: status, origin, sorted vertex ids.
    void dump(std::ostream& out) const {
        for (const auto& e : entries_) {
            out << to_string(e.status) << " " << to_string(e.origin);
            for (auto v : e.subset) out << " " << v;
            out << "\n";
        }
    }

private:
    std::vector<Sec> entries_;
    std::map<CanonicalKey, std::size_t> by_key_;
};

/// The proportion p of all C(n,3) triangles with the smallest perimeter,
/// ties broken by vertex triple. Intended as model seed rows.
inline std::vector<Sec> seed_triangle_secs(const Instance& inst, double p) {
    if (p < 0.0 || p > 1.0) throw std::invalid_argument("seed_triangle_secs: p must be in [0, 1]");
    const std::uint32_t n = inst.n();
    const std::size_t total = static_cast<std::size_t>(n) * (n - 1) * (n - 2) / 6;
    const auto want = static_cast<std::size_t>(p * static_cast<double>(total));
    if (want == 0) return {};

    struct Triangle {
        std::int64_t perimeter;
        std::uint32_t a, b, c;
    };
    std::vector<Triangle> tris;
    tris.reserve(total);
    for (std::uint32_t a = 0; a + 2 < n; ++a)
        for (std::uint32_t b = a + 1; b + 1 < n; ++b)
            for (std::uint32_t c = b + 1; c < n; ++c)
                tris.push_back({inst.weight(a, b) + inst.weight(a, c) + inst.weight(b, c), a, b, c});
    std::sort(tris.begin(), tris.end(), [](const Triangle& x, const Triangle& y) {
        return std::tie(x.perimeter, x.a, x.b, x.c) < std::tie(y.perimeter, y.a, y.b, y.c);
    });

    std::vector<Sec> secs;
    secs.reserve(want);
    for (std::size_t i = 0; i < want; ++i)
        secs.emplace_back(std::vector<std::uint32_t>{tris[i].a, tris[i].b, tris[i].c}, n,
                          SecOrigin::seed_triangle());
    return secs;
}

enum class FilterKey { cardinality, length };

inline const char* to_string(FilterKey k) {
    return k == FilterKey::cardinality ? "card" : "len";
}

/// Indices of the ceil(p*k) smallest cycles under the chosen key; ties
/// broken by vertex set. At least one cycle always survives so the loop can
/// progress.
inline std::vector<std::size_t> filter_subtour_indices(const std::vector<Cycle>& cycles, double p,
                                                       FilterKey key, const Instance& inst) {
    if (p <= 0.0 || p > 1.0) throw std::invalid_argument("filter_subtours: p must be in (0, 1]");
    if (cycles.empty()) return {};
    const auto keep = static_cast<std::size_t>(std::ceil(p * static_cast<double>(cycles.size())));

    std::vector<std::pair<std::int64_t, std::vector<std::uint32_t>>> ranks;
    ranks.reserve(cycles.size());
    for (const auto& c : cycles)
        ranks.emplace_back(key == FilterKey::cardinality ? static_cast<std::int64_t>(c.size())
                                                         : c.length(inst),
                           c.sorted_vertices());
    std::vector<std::size_t> idx(cycles.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(),
              [&](std::size_t a, std::size_t b) { return ranks[a] < ranks[b]; });
    idx.resize(std::min(keep, idx.size()));
    return idx;
}

inline std::vector<Cycle> filter_subtours(std::vector<Cycle> cycles, double p, FilterKey key,
                                          const Instance& inst) {
    std::vector<Cycle> out;
    for (auto i : filter_subtour_indices(cycles, p, key, inst)) out.push_back(std::move(cycles[i]));
    return out;
}

} // namespace itsp
