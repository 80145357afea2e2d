#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "itsp/instance.hpp"

namespace itsp {

namespace detail {

class UnionFind {
public:
    explicit UnionFind(std::uint32_t n) : parent_(n), size_(n, 1) {
        std::iota(parent_.begin(), parent_.end(), 0u);
    }
    std::uint32_t find(std::uint32_t x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }
    bool unite(std::uint32_t a, std::uint32_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        if (size_[a] < size_[b]) std::swap(a, b);
        parent_[b] = a;
        size_[a] += size_[b];
        return true;
    }
    std::uint32_t component_size(std::uint32_t x) { return size_[find(x)]; }

private:
    std::vector<std::uint32_t> parent_;
    std::vector<std::uint32_t> size_;
};

/// Edge indices sorted by (weight, index); the index tie-break keeps every
/// run of the agglomeration deterministic.
inline std::vector<std::uint32_t> edges_by_weight(const Instance& inst) {
    std::vector<std::uint32_t> order(inst.m());
    std::iota(order.begin(), order.end(), 0u);
    std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
        return std::tie(inst.weights()[a], a) < std::tie(inst.weights()[b], b);
    });
    return order;
}

} // namespace detail

/// A partition of the vertices; parts are sorted internally and ordered by
/// their smallest member.
struct Clustering {
    std::vector<std::vector<std::uint32_t>> parts;

    std::size_t c_actual() const { return parts.size(); }
};

namespace detail {

inline Clustering components_to_clustering(UnionFind& uf, std::uint32_t n) {
    std::vector<std::vector<std::uint32_t>> by_root(n);
    for (std::uint32_t v = 0; v < n; ++v) by_root[uf.find(v)].push_back(v);
    Clustering out;
    for (auto& part : by_root)
        if (!part.empty()) out.parts.push_back(std::move(part));
    std::sort(out.parts.begin(), out.parts.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });
    return out;
}

} // namespace detail

/// Single-linkage agglomeration: scan edges in nondecreasing weight order,
/// merging components until exactly c remain. Edges inside one component are
/// skipped without effect.
inline Clustering cluster(const Instance& inst, std::uint32_t c) {
    const std::uint32_t n = inst.n();
    if (c < 1 || c > n) throw std::invalid_argument("cluster: c must be in [1, n]");
    detail::UnionFind uf(n);
    std::uint32_t components = n;
    for (auto e : detail::edges_by_weight(inst)) {
        if (components == c) break;
        auto [u, v] = edge_endpoints(e);
        if (uf.unite(u, v)) --components;
    }
    return detail::components_to_clustering(uf, n);
}

/// Same scan, but after reaching c clusters the walk continues and an edge
/// is admitted only when one endpoint lies in a component of size one or
/// two. Stops once every component has at least min_size vertices.
inline Clustering restricted_cluster(const Instance& inst, std::uint32_t c,
                                     std::uint32_t min_size = 3) {
    const std::uint32_t n = inst.n();
    if (c < 1 || c > n) throw std::invalid_argument("restricted_cluster: c must be in [1, n]");
    detail::UnionFind uf(n);
    std::uint32_t components = n;
    std::uint32_t small = (min_size > 1) ? n : 0; // components below min_size
    const auto order = detail::edges_by_weight(inst);
    auto unite_tracked = [&](std::uint32_t u, std::uint32_t v) {
        const auto su = uf.component_size(u), sv = uf.component_size(v);
        if (!uf.unite(u, v)) return false;
        --components;
        small -= (su < min_size) + (sv < min_size);
        if (su + sv < min_size) ++small;
        return true;
    };
    std::size_t i = 0;
    for (; i < order.size() && components > c; ++i) {
        auto [u, v] = edge_endpoints(order[i]);
        unite_tracked(u, v);
    }
    for (; i < order.size() && components > 1 && small > 0; ++i) {
        auto [u, v] = edge_endpoints(order[i]);
        if (uf.component_size(u) >= min_size && uf.component_size(v) >= min_size) continue;
        unite_tracked(u, v);
    }
    return detail::components_to_clustering(uf, n);
}

/// Binary merge tree of the agglomeration run to a single cluster. Leaves
/// are the vertices; internal node k records the k-th effective merge.
struct ClusterTree {
    struct Node {
        std::int32_t left = -1;  // node ids; -1 for leaves
        std::int32_t right = -1;
        std::uint32_t size = 1;
        std::uint32_t merge_rank = 0;             // 0 for leaves, 1..n-1 for merges
        std::vector<std::uint32_t> cluster;       // sorted leaf descendants
    };
    std::vector<Node> nodes; // 0..n-1 leaves, then internal nodes in merge order
    std::uint32_t n = 0;

    std::uint32_t root() const { return static_cast<std::uint32_t>(nodes.size()) - 1; }
};

inline ClusterTree build_cluster_tree(const Instance& inst) {
    const std::uint32_t n = inst.n();
    ClusterTree tree;
    tree.n = n;
    tree.nodes.resize(n);
    for (std::uint32_t v = 0; v < n; ++v) tree.nodes[v].cluster = {v};

    detail::UnionFind uf(n);
    std::vector<std::uint32_t> root_node(n); // union-find root -> tree node id
    std::iota(root_node.begin(), root_node.end(), 0u);
    std::uint32_t merges = 0;
    for (auto e : detail::edges_by_weight(inst)) {
        if (merges == n - 1) break;
        auto [u, v] = edge_endpoints(e);
        const auto ru = uf.find(u), rv = uf.find(v);
        if (ru == rv) continue;
        ClusterTree::Node node;
        node.left = static_cast<std::int32_t>(root_node[ru]);
        node.right = static_cast<std::int32_t>(root_node[rv]);
        node.merge_rank = ++merges;
        const auto& lc = tree.nodes[static_cast<std::size_t>(node.left)].cluster;
        const auto& rc = tree.nodes[static_cast<std::size_t>(node.right)].cluster;
        node.cluster.resize(lc.size() + rc.size());
        std::merge(lc.begin(), lc.end(), rc.begin(), rc.end(), node.cluster.begin());
        node.size = static_cast<std::uint32_t>(node.cluster.size());
        tree.nodes.push_back(std::move(node));
        uf.unite(u, v);
        root_node[uf.find(u)] = static_cast<std::uint32_t>(tree.nodes.size()) - 1;
    }
    return tree;
}

/// Maximal tree nodes whose cluster size is at most u; together they cover
/// every vertex exactly once (singletons included).
inline std::vector<std::uint32_t> cut_tree_at(const ClusterTree& tree, std::uint32_t u) {
    if (u < 3) throw std::invalid_argument("cut_tree_at: u must be at least 3");
    std::vector<std::uint32_t> result;
    std::vector<std::uint32_t> stack{tree.root()};
    while (!stack.empty()) {
        const auto id = stack.back();
        stack.pop_back();
        const auto& node = tree.nodes[id];
        if (node.size <= u) {
            result.push_back(id);
        } else {
            stack.push_back(static_cast<std::uint32_t>(node.right));
            stack.push_back(static_cast<std::uint32_t>(node.left));
        }
    }
    std::sort(result.begin(), result.end(), [&](std::uint32_t a, std::uint32_t b) {
        return tree.nodes[a].cluster.front() < tree.nodes[b].cluster.front();
    });
    return result;
}

} // namespace itsp
