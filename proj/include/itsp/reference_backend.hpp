#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <limits>
#include <memory>
#include <numeric>
#include <optional>
#include <vector>

#include "itsp/backend.hpp"
#include "itsp/errors.hpp"

namespace itsp {

namespace detail {

/// Depth-first branch and bound over edge variables in increasing weight
/// order. Pruning: vertex degree feasibility (nobody may exceed degree 2 or
/// lose the chance to reach it), an admissible completion bound against the
/// best known cost, and SEC row checks. Equal-cost leaves are resolved to
/// the lexicographically smallest chosen-edge set.
class EdgeSearch {
public:
    EdgeSearch(const IlpModel& model, const SolveLimits& limits) : inst_(*model.instance) {
        n_ = inst_.n();
        m_ = inst_.m();
        order_.resize(m_);
        std::iota(order_.begin(), order_.end(), 0u);
        std::sort(order_.begin(), order_.end(), [&](std::uint32_t a, std::uint32_t b) {
            return std::tie(inst_.weights()[a], a) < std::tie(inst_.weights()[b], b);
        });
        incident_.resize(n_);
        for (std::uint32_t e = 0; e < m_; ++e) {
            auto [u, v] = edge_endpoints(e);
            incident_[u].push_back(e);
            incident_[v].push_back(e);
        }
        for (auto& inc : incident_)
            std::sort(inc.begin(), inc.end(), [&](std::uint32_t a, std::uint32_t b) {
                return std::tie(inst_.weights()[a], a) < std::tie(inst_.weights()[b], b);
            });

        rows_of_edge_.resize(m_);
        for (const auto& row : model.sec_rows) {
            const auto r = static_cast<std::uint32_t>(rows_.size());
            for (const auto& [e, coeff] : row.terms) {
                if (coeff != 1)
                    throw std::invalid_argument("reference backend supports coefficient-1 rows only");
                if (e >= m_) throw std::invalid_argument("row references edge out of range");
                rows_of_edge_[e].push_back(r);
            }
            rows_.push_back({row.sense, row.rhs, 0, static_cast<std::int64_t>(row.terms.size())});
        }

        state_.assign(m_, kUndecided);
        deg_.assign(n_, 0);
        undecided_inc_.assign(n_, static_cast<std::uint32_t>(n_ - 1));

        node_limit_ = limits.node_limit;
        if (limits.time_limit_seconds)
            deadline_ = std::chrono::steady_clock::now() +
                        std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                            std::chrono::duration<double>(*limits.time_limit_seconds));
    }

    void seed_warm_start(const Tour& tour) {
        if (tour.order.size() != n_)
            throw std::invalid_argument("warm start tour has the wrong vertex count");
        std::vector<std::uint32_t> edges;
        edges.reserve(n_);
        for (std::size_t i = 0; i < tour.order.size(); ++i)
            edges.push_back(edge_index(tour.order[i], tour.order[(i + 1) % tour.order.size()]));
        std::sort(edges.begin(), edges.end());
        // a Hamiltonian tour satisfies the degree rows and every SEC form,
        // but the caller may hand us an arbitrary permutation, so check
        std::vector<std::int64_t> lhs(rows_.size(), 0);
        for (auto e : edges)
            for (auto r : rows_of_edge_[e]) ++lhs[r];
        for (std::size_t r = 0; r < rows_.size(); ++r) {
            const bool ok = rows_[r].sense == Sense::le   ? lhs[r] <= rows_[r].rhs
                            : rows_[r].sense == Sense::ge ? lhs[r] >= rows_[r].rhs
                                                          : lhs[r] == rows_[r].rhs;
            if (!ok) throw std::invalid_argument("warm start tour violates a model row");
        }
        best_set_ = edges;
        best_cost_ = 0;
        for (auto e : edges) best_cost_ += inst_.weights()[e];
        have_best_ = true;
        incumbents_.push_back(IntegerSolution{edges});
    }

    SolveOutcome run() {
        dfs(0);
        SolveOutcome out;
        if (limit_hit_) out.status = SolveStatus::limit_reached;
        else out.status = have_best_ ? SolveStatus::optimal : SolveStatus::infeasible;
        if (have_best_) {
            out.best = IntegerSolution{best_set_};
            out.objective = best_cost_;
        }
        out.incumbents = std::move(incumbents_);
        return out;
    }

private:
    static constexpr std::uint8_t kUndecided = 0, kIncluded = 1, kExcluded = 2;

    struct Row {
        Sense sense;
        std::int64_t rhs;
        std::int64_t included;
        std::int64_t undecided;
    };

    bool hit_limits() {
        ++nodes_;
        if (node_limit_ && nodes_ > *node_limit_) return true;
        if (deadline_ && (nodes_ & 1023u) == 0 && std::chrono::steady_clock::now() > *deadline_)
            return true;
        return false;
    }

    // Half of the sum of the cheapest undecided incident edges needed to
    // finish every vertex; any completion costs at least this much.
    std::int64_t completion_bound() {
        std::int64_t sum = 0;
        for (std::uint32_t v = 0; v < n_; ++v) {
            std::uint32_t need = 2 - deg_[v];
            if (need == 0) continue;
            for (auto e : incident_[v]) {
                if (state_[e] != kUndecided) continue;
                sum += inst_.weights()[e];
                if (--need == 0) break;
            }
            if (need != 0) return std::numeric_limits<std::int64_t>::max(); // cannot complete
        }
        return (sum + 1) / 2;
    }

    bool apply_exclude(std::uint32_t e) {
        state_[e] = kExcluded;
        trail_.emplace_back(kExcluded, e);
        auto [u, v] = edge_endpoints(e);
        --undecided_inc_[u];
        --undecided_inc_[v];
        for (auto r : rows_of_edge_[e]) {
            --rows_[r].undecided;
            if (rows_[r].sense == Sense::ge &&
                rows_[r].included + rows_[r].undecided < rows_[r].rhs)
                return false;
        }
        return deg_[u] + undecided_inc_[u] >= 2 && deg_[v] + undecided_inc_[v] >= 2;
    }

    bool apply_include(std::uint32_t e) {
        auto [u, v] = edge_endpoints(e);
        if (deg_[u] == 2 || deg_[v] == 2) return false;
        state_[e] = kIncluded;
        trail_.emplace_back(kIncluded, e);
        cost_ += inst_.weights()[e];
        chosen_.push_back(e);
        ++deg_[u];
        ++deg_[v];
        --undecided_inc_[u];
        --undecided_inc_[v];
        for (auto r : rows_of_edge_[e]) {
            ++rows_[r].included;
            --rows_[r].undecided;
            if (rows_[r].sense == Sense::le && rows_[r].included > rows_[r].rhs) return false;
            if (rows_[r].sense == Sense::ge &&
                rows_[r].included + rows_[r].undecided < rows_[r].rhs)
                return false;
        }
        if (deg_[u] + undecided_inc_[u] < 2 || deg_[v] + undecided_inc_[v] < 2) return false;
        // saturated endpoints force their remaining edges out
        for (auto w : {u, v}) {
            if (deg_[w] != 2) continue;
            for (auto f : incident_[w])
                if (state_[f] == kUndecided && !apply_exclude(f)) return false;
        }
        return true;
    }

    void rollback(std::size_t mark) {
        while (trail_.size() > mark) {
            auto [op, e] = trail_.back();
            trail_.pop_back();
            auto [u, v] = edge_endpoints(e);
            state_[e] = kUndecided;
            if (op == kIncluded) {
                cost_ -= inst_.weights()[e];
                chosen_.pop_back();
                --deg_[u];
                --deg_[v];
                ++undecided_inc_[u];
                ++undecided_inc_[v];
                for (auto r : rows_of_edge_[e]) {
                    --rows_[r].included;
                    ++rows_[r].undecided;
                }
            } else {
                ++undecided_inc_[u];
                ++undecided_inc_[v];
                for (auto r : rows_of_edge_[e]) ++rows_[r].undecided;
            }
        }
    }

    void at_leaf() {
        for (std::uint32_t v = 0; v < n_; ++v)
            if (deg_[v] != 2) return; // unreachable under the feasibility pruning
        for (const auto& row : rows_) {
            const bool ok = row.sense == Sense::le   ? row.included <= row.rhs
                            : row.sense == Sense::ge ? row.included >= row.rhs
                                                     : row.included == row.rhs;
            if (!ok) return;
        }
        std::vector<std::uint32_t> set = chosen_;
        std::sort(set.begin(), set.end());
        if (!have_best_ || cost_ < best_cost_) {
            have_best_ = true;
            best_cost_ = cost_;
            best_set_ = set;
            incumbents_.push_back(IntegerSolution{std::move(set)});
        } else if (cost_ == best_cost_ && set < best_set_) {
            best_set_ = std::move(set); // documented tie-break, not an improvement
        }
    }

    void dfs(std::size_t pos) {
        if (limit_hit_) return;
        if (hit_limits()) {
            limit_hit_ = true;
            return;
        }
        if (have_best_) {
            const std::int64_t lb = completion_bound();
            if (lb == std::numeric_limits<std::int64_t>::max() || cost_ + lb > best_cost_) return;
        }
        while (pos < m_ && state_[order_[pos]] != kUndecided) ++pos;
        if (pos == m_) {
            at_leaf();
            return;
        }
        const std::uint32_t e = order_[pos];
        const std::size_t mark = trail_.size();
        if (apply_include(e)) dfs(pos + 1);
        rollback(mark);
        if (limit_hit_) return;
        if (apply_exclude(e)) dfs(pos + 1);
        rollback(mark);
    }

    const Instance& inst_;
    std::uint32_t n_ = 0;
    std::size_t m_ = 0;
    std::vector<std::uint32_t> order_;
    std::vector<std::vector<std::uint32_t>> incident_;
    std::vector<Row> rows_;
    std::vector<std::vector<std::uint32_t>> rows_of_edge_;

    std::vector<std::uint8_t> state_;
    std::vector<std::uint32_t> deg_;
    std::vector<std::uint32_t> undecided_inc_;
    std::int64_t cost_ = 0;
    std::vector<std::uint32_t> chosen_;
    std::vector<std::pair<std::uint8_t, std::uint32_t>> trail_;

    bool have_best_ = false;
    std::int64_t best_cost_ = 0;
    std::vector<std::uint32_t> best_set_;
    std::vector<IntegerSolution> incumbents_;

    std::uint64_t nodes_ = 0;
    std::optional<std::uint64_t> node_limit_;
    std::optional<std::chrono::steady_clock::time_point> deadline_;
    bool limit_hit_ = false;
};

} // namespace detail

/// Exact solver for desk-scale models. Deterministic: same model, same
/// answer, and among equal-cost optima the lexicographically smallest edge
/// set. Every strictly improving leaf is recorded as an incumbent.
class ReferenceBackend final : public Backend {
public:
    explicit ReferenceBackend(std::uint32_t vertex_cap = 16) : cap_(vertex_cap) {}

    BackendCapabilities capabilities() const override { return {true, true, true}; }

    SolveOutcome solve(const IlpModel& model, const std::optional<Tour>& warm_start,
                       const SolveLimits& limits) override {
        if (model.instance == nullptr) throw std::invalid_argument("model has no instance");
        limits.validate();
        if (model.n() > cap_)
            throw BackendError("instance has " + std::to_string(model.n()) +
                               " vertices, above the reference backend cap of " +
                               std::to_string(cap_));
        detail::EdgeSearch search(model, limits);
        if (warm_start) search.seed_warm_start(*warm_start);
        return search.run();
    }

    std::unique_ptr<Backend> clone() const override {
        return std::make_unique<ReferenceBackend>(cap_);
    }

private:
    std::uint32_t cap_;
};

} // namespace itsp
