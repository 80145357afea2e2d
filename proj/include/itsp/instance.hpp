#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "itsp/edge_index.hpp"

namespace itsp {

enum class Source { tsplib, random_euclidean, mesh, explicit_matrix };

inline const char* to_string(Source s) {
    switch (s) {
        case Source::tsplib: return "tsplib";
        case Source::random_euclidean: return "random_euclidean";
        case Source::mesh: return "mesh";
        case Source::explicit_matrix: return "explicit";
    }
    return "?";
}

struct Point {
    double x = 0.0;
    double y = 0.0;
};

/// A complete graph with integer edge weights, one entry per unordered
/// vertex pair. Immutable after construction.
class Instance {
public:
    Instance(std::string name, Source source, std::uint32_t n,
             std::vector<std::int64_t> weights,
             std::optional<std::vector<Point>> coords = std::nullopt)
        : name_(std::move(name)), source_(source), n_(n),
          weights_(std::move(weights)), coords_(std::move(coords)) {
        if (n_ < 3) throw std::invalid_argument("instance: need at least 3 vertices");
        if (weights_.size() != edge_count(n_))
            throw std::invalid_argument("instance: weight count does not match n(n-1)/2");
        for (std::int64_t w : weights_)
            if (w < 0) throw std::invalid_argument("instance: negative edge weight");
        if (coords_ && coords_->size() != n_)
            throw std::invalid_argument("instance: coordinate count does not match n");
    }

    std::uint32_t n() const { return n_; }
    std::size_t m() const { return weights_.size(); }
    const std::string& name() const { return name_; }
    Source source() const { return source_; }
    const std::vector<std::int64_t>& weights() const { return weights_; }
    const std::optional<std::vector<Point>>& coords() const { return coords_; }

    std::int64_t weight(std::uint32_t u, std::uint32_t v) const {
        if (u == v) throw std::invalid_argument("edge weight: u == v");
        if (u >= n_ || v >= n_) throw std::invalid_argument("edge weight: vertex out of range");
        return weights_[edge_index(u, v)];
    }

    std::int64_t weight_at(std::uint32_t edge_idx) const { return weights_[edge_idx]; }

private:
    std::string name_;
    Source source_;
    std::uint32_t n_;
    std::vector<std::int64_t> weights_;
    std::optional<std::vector<Point>> coords_;
};

/// Induced sub-instance over a vertex subset, keeping the map back to the
/// original vertex ids.
struct SubInstance {
    Instance instance;
    std::vector<std::uint32_t> to_original; // local id -> original id
};

inline SubInstance induce(const Instance& inst, const std::vector<std::uint32_t>& vertices,
                          std::string name) {
    const auto k = static_cast<std::uint32_t>(vertices.size());
    std::vector<std::int64_t> w(edge_count(k));
    for (std::uint32_t v = 1; v < k; ++v)
        for (std::uint32_t u = 0; u < v; ++u)
            w[edge_index(u, v)] = inst.weight(vertices[u], vertices[v]);
    std::optional<std::vector<Point>> coords;
    if (inst.coords()) {
        coords.emplace();
        coords->reserve(k);
        for (auto v : vertices) coords->push_back((*inst.coords())[v]);
    }
    return SubInstance{Instance(std::move(name), inst.source(), k, std::move(w), std::move(coords)),
                       vertices};
}

} // namespace itsp
