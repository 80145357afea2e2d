#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "itsp/edge_index.hpp"
#include "itsp/instance.hpp"

namespace itsp {

/// How a subtour elimination constraint is written down. The packing form
/// bounds the edges inside S, the cut form demands two edges leaving S, and
/// the hybrid picks whichever has fewer nonzero coefficients.
enum class SecForm { packing, cut, hybrid };

inline const char* to_string(SecForm f) {
    switch (f) {
        case SecForm::packing: return "packing";
        case SecForm::cut: return "cut";
        case SecForm::hybrid: return "hybrid";
    }
    return "?";
}

/// S and V\S induce the same pair of constraints, so the pool key is the
/// preferred side: smaller cardinality, ties broken lexicographically.
using CanonicalKey = std::vector<std::uint32_t>;

inline CanonicalKey canonical_key(const std::vector<std::uint32_t>& subset, std::uint32_t n) {
    if (subset.empty() || subset.size() >= n)
        throw std::invalid_argument("canonical_key: subset size must be in [1, n-1]");
    CanonicalKey side(subset);
    std::sort(side.begin(), side.end());
    CanonicalKey other;
    other.reserve(n - side.size());
    std::size_t k = 0;
    for (std::uint32_t v = 0; v < n; ++v) {
        if (k < side.size() && side[k] == v) ++k;
        else other.push_back(v);
    }
    if (other.size() < side.size() || (other.size() == side.size() && other < side))
        return other;
    return side;
}

enum class SecStatus { active, considered, fixed };

inline const char* to_string(SecStatus s) {
    switch (s) {
        case SecStatus::active: return "active";
        case SecStatus::considered: return "considered";
        case SecStatus::fixed: return "fixed";
    }
    return "?";
}

struct SecOrigin {
    enum class Kind { iteration, incumbent, cluster, seed_triangle, cluster_tour };
    Kind kind = Kind::iteration;
    std::int64_t param = -1; // iteration number or cluster node rank

    static SecOrigin iteration(std::int64_t k) { return {Kind::iteration, k}; }
    static SecOrigin incumbent() { return {Kind::incumbent, -1}; }
    static SecOrigin cluster(std::int64_t node) { return {Kind::cluster, node}; }
    static SecOrigin seed_triangle() { return {Kind::seed_triangle, -1}; }
    static SecOrigin cluster_tour(std::int64_t node) { return {Kind::cluster_tour, node}; }
};

inline std::string to_string(const SecOrigin& o) {
    switch (o.kind) {
        case SecOrigin::Kind::iteration: return "iteration(" + std::to_string(o.param) + ")";
        case SecOrigin::Kind::incumbent: return "incumbent";
        case SecOrigin::Kind::cluster: return "cluster(" + std::to_string(o.param) + ")";
        case SecOrigin::Kind::seed_triangle: return "seed_triangle";
        case SecOrigin::Kind::cluster_tour: return "cluster_tour(" + std::to_string(o.param) + ")";
    }
    return "?";
}

/// One subtour elimination constraint. The subset is kept exactly as it was
/// generated (never complemented); only the key is canonical. The hybrid
/// form in sec_row depends on the stored subset's cardinality.
struct Sec {
    std::vector<std::uint32_t> subset; // sorted vertex ids, 3 <= |S| <= n-1
    CanonicalKey key;
    SecStatus status = SecStatus::active;
    SecOrigin origin;

    Sec(std::vector<std::uint32_t> s, std::uint32_t n, SecOrigin org,
        SecStatus st = SecStatus::active)
        : subset(std::move(s)), status(st), origin(org) {
        std::sort(subset.begin(), subset.end());
        if (subset.size() < 3 || subset.size() >= n)
            throw std::invalid_argument("sec: subset size must be in [3, n-1]");
        key = canonical_key(subset, n);
    }
};

enum class Sense { le, ge, eq };

struct LinearConstraint {
    std::vector<std::pair<std::uint32_t, std::int32_t>> terms; // (edge index, coefficient)
    Sense sense = Sense::eq;
    std::int64_t rhs = 0;
};

/// The integer program: minimize total edge weight subject to degree-2
/// equations, any subtour rows added so far, and binary edge variables.
struct IlpModel {
    const Instance* instance = nullptr;
    std::vector<LinearConstraint> degree_rows;
    std::vector<LinearConstraint> sec_rows;

    std::uint32_t n() const { return instance->n(); }
    std::size_t var_count() const { return instance->m(); }
};

inline IlpModel build_base_model(const Instance& inst) {
    IlpModel model;
    model.instance = &inst;
    model.degree_rows.reserve(inst.n());
    for (std::uint32_t v = 0; v < inst.n(); ++v) {
        LinearConstraint row;
        row.sense = Sense::eq;
        row.rhs = 2;
        row.terms.reserve(inst.n() - 1);
        for (std::uint32_t u = 0; u < inst.n(); ++u)
            if (u != v) row.terms.emplace_back(edge_index(u, v), 1);
        std::sort(row.terms.begin(), row.terms.end());
        model.degree_rows.push_back(std::move(row));
    }
    return model;
}

/// Builds the row for one SEC. The hybrid threshold |S| <= (2n+1)/3 is
/// evaluated as 3|S| <= 2n+1 to keep the boundary exact.
inline LinearConstraint sec_row(const Sec& sec, SecForm form, std::uint32_t n) {
    const auto s = sec.subset.size();
    if (s < 3 || s >= n) throw std::invalid_argument("sec_row: subset size must be in [3, n-1]");
    if (form == SecForm::hybrid)
        form = (3 * s <= 2 * static_cast<std::size_t>(n) + 1) ? SecForm::packing : SecForm::cut;

    LinearConstraint row;
    if (form == SecForm::packing) {
        row.sense = Sense::le;
        row.rhs = static_cast<std::int64_t>(s) - 1;
        row.terms.reserve(s * (s - 1) / 2);
        for (std::size_t j = 1; j < s; ++j)
            for (std::size_t i = 0; i < j; ++i)
                row.terms.emplace_back(edge_index(sec.subset[i], sec.subset[j]), 1);
    } else {
        row.sense = Sense::ge;
        row.rhs = 2;
        std::vector<bool> in_s(n, false);
        for (auto v : sec.subset) in_s[v] = true;
        row.terms.reserve(s * (n - s));
        for (auto u : sec.subset)
            for (std::uint32_t v = 0; v < n; ++v)
                if (!in_s[v]) row.terms.emplace_back(edge_index(u, v), 1);
    }
    std::sort(row.terms.begin(), row.terms.end());
    return row;
}

} // namespace itsp
