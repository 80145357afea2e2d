#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <future>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "itsp/backend.hpp"
#include "itsp/clustering.hpp"
#include "itsp/heuristics.hpp"
#include "itsp/instance.hpp"
#include "itsp/model.hpp"
#include "itsp/subtours.hpp"

namespace itsp {

enum class Variant { basic, cluster, restricted, restricted_n, hc, hcd };

struct FilterConfig {
    double p = 1.0;
    FilterKey key = FilterKey::cardinality;
};

struct VariantConfig {
    Variant variant = Variant::basic;
    std::optional<std::uint32_t> cluster_count; // c for cluster/restricted
    std::optional<std::uint32_t> size_bound;    // u for hc/hcd
    SecForm sec_form = SecForm::hybrid;
    bool harvest_incumbents = true; // on = BasicIntegerTSP behavior
    bool warm_start = false;
    double seed_triangles_p = 0.0;
    std::optional<FilterConfig> filter;
    SolveLimits limits;
    bool parallel_clusters = false;

    /// Default hierarchical size bound: floor(4n / log2 n).
    static std::uint32_t default_size_bound(std::uint32_t n) {
        return static_cast<std::uint32_t>(std::floor(4.0 * n / std::log2(static_cast<double>(n))));
    }

    std::uint32_t resolved_size_bound(std::uint32_t n) const {
        const std::uint32_t u = size_bound ? *size_bound : default_size_bound(n);
        if (u < 3) throw std::invalid_argument("size bound u must be at least 3");
        return u;
    }
};

inline std::string variant_name(const VariantConfig& cfg, std::uint32_t n) {
    switch (cfg.variant) {
        case Variant::basic: return "basic";
        case Variant::cluster: return "c:" + std::to_string(cfg.cluster_count.value_or(1));
        case Variant::restricted: return "rc3:" + std::to_string(cfg.cluster_count.value_or(1));
        case Variant::restricted_n: return "rc3n";
        case Variant::hc: return "hc:" + std::to_string(cfg.resolved_size_bound(n));
        case Variant::hcd: return "hcd:" + std::to_string(cfg.resolved_size_bound(n));
    }
    return "?";
}

enum class RunStatus { optimal, limit_reached };

inline const char* to_string(RunStatus s) {
    return s == RunStatus::optimal ? "optimal" : "limit_reached";
}

struct IterationStat {
    std::int64_t objective = 0;
    std::uint32_t subtours = 0;
    std::uint32_t secs_added = 0;
};

struct PoolSummary {
    std::size_t total = 0;
    std::size_t active = 0;
    std::size_t considered = 0;
    std::size_t fixed = 0;
    std::size_t dropped = 0;
    std::size_t origin_iteration = 0;
    std::size_t origin_incumbent = 0;
    std::size_t origin_cluster = 0;
    std::size_t origin_seed_triangle = 0;
    std::size_t origin_cluster_tour = 0;
};

struct RunReport {
    std::string instance_name;
    std::uint32_t n = 0;
    std::string variant;
    SecForm sec_form = SecForm::hybrid;
    RunStatus status = RunStatus::optimal;
    std::int64_t objective = 0;
    std::optional<Tour> tour;
    std::uint32_t iterations = 0;        // main-loop solver calls only
    std::uint32_t constraints_final = 0; // SEC rows in the model of the last iteration
    double seconds = 0.0;
    std::vector<IterationStat> per_iteration;
    std::vector<CanonicalKey> final_model_keys; // SEC rows before the last iteration
    std::vector<CanonicalKey> prephase_keys;    // SECs handed to the main loop up front
    PoolSummary pool;
};

namespace detail {

struct LoopResult {
    RunStatus status = RunStatus::optimal;
    std::int64_t objective = 0;
    std::optional<Tour> tour;
    std::vector<IterationStat> per_iteration;
    std::uint32_t constraints_final = 0;
    std::vector<CanonicalKey> final_model_keys;
};

inline SecForm row_form(const Sec& sec, const VariantConfig& cfg) {
    // three terms are always minimal for a triangle, regardless of the
    // configured representation
    return sec.origin.kind == SecOrigin::Kind::seed_triangle ? SecForm::packing : cfg.sec_form;
}

/// The cutting-plane loop: solve to integer optimality, add the SECs of all
/// cycles found (and of incumbent solutions when harvesting), repeat until
/// the solution is one tour. Pool entries that arrive `considered` stay out
/// of the model until a cycle regenerates them.
inline LoopResult run_loop(const Instance& inst, Backend& backend, const VariantConfig& cfg,
                           SecPool& pool, const std::optional<Tour>& warm_start) {
    const std::uint32_t n = inst.n();
    IlpModel model = build_base_model(inst);
    std::vector<CanonicalKey> row_keys;
    std::set<CanonicalKey> row_key_set;
    auto add_row = [&](const Sec& sec) {
        model.sec_rows.push_back(sec_row(sec, row_form(sec, cfg), n));
        row_keys.push_back(sec.key);
        row_key_set.insert(sec.key);
    };
    for (std::size_t i = 0; i < pool.size(); ++i)
        if (pool[i].status != SecStatus::considered) add_row(pool[i]);

    LoopResult result;
    std::optional<std::int64_t> prev_objective;
    const bool harvest = cfg.harvest_incumbents && backend.capabilities().reports_incumbents;

    for (std::uint32_t iteration = 1;; ++iteration) {
        SolveOutcome outcome = backend.solve(model, warm_start, cfg.limits);
        if (outcome.status == SolveStatus::limit_reached) {
            result.status = RunStatus::limit_reached;
            if (outcome.best && outcome.objective)
                result.per_iteration.push_back(
                    {*outcome.objective,
                     static_cast<std::uint32_t>(extract_subtours(*outcome.best, n).size()), 0});
            result.constraints_final = static_cast<std::uint32_t>(row_keys.size());
            result.final_model_keys = row_keys;
            return result;
        }
        if (outcome.status != SolveStatus::optimal || !outcome.best || !outcome.objective)
            throw std::logic_error("backend reported an infeasible model");

        const std::int64_t objective = *outcome.objective;
        if (prev_objective && objective < *prev_objective)
            throw std::logic_error("objective decreased between iterations");
        prev_objective = objective;

        const std::vector<Cycle> cycles = extract_subtours(*outcome.best, n);
        if (cycles.size() == 1) {
            result.per_iteration.push_back({objective, 1, 0});
            result.status = RunStatus::optimal;
            result.objective = objective;
            result.tour = make_tour(inst, cycles.front().order);
            result.constraints_final = static_cast<std::uint32_t>(row_keys.size());
            result.final_model_keys = row_keys;
            return result;
        }

        // a violated subtour can never already be a row of the model it violates
        for (const auto& c : cycles)
            if (row_key_set.count(canonical_key(c.sorted_vertices(), n)))
                throw std::logic_error("backend returned a solution violating an existing SEC row");

        struct Candidate {
            Cycle cycle;
            SecOrigin origin;
        };
        std::vector<Candidate> candidates;
        std::set<CanonicalKey> seen;
        auto offer = [&](const Cycle& c, SecOrigin origin) {
            if (c.size() == n) return;
            auto key = canonical_key(c.sorted_vertices(), n);
            if (!seen.insert(std::move(key)).second) return;
            candidates.push_back({c, origin});
        };
        for (const auto& c : cycles) offer(c, SecOrigin::iteration(iteration));
        if (harvest)
            for (const auto& inc : outcome.incumbents)
                for (const auto& c : extract_subtours(inc, n)) offer(c, SecOrigin::incumbent());

        std::vector<std::size_t> kept(candidates.size());
        for (std::size_t i = 0; i < kept.size(); ++i) kept[i] = i;
        if (cfg.filter) {
            std::vector<Cycle> cycle_list;
            cycle_list.reserve(candidates.size());
            for (const auto& c : candidates) cycle_list.push_back(c.cycle);
            kept = filter_subtour_indices(cycle_list, cfg.filter->p, cfg.filter->key, inst);
        }

        std::uint32_t added = 0;
        for (auto idx : kept) {
            const auto& cand = candidates[idx];
            const auto key = canonical_key(cand.cycle.sorted_vertices(), n);
            if (auto existing = pool.find(key)) {
                if (pool[*existing].status == SecStatus::considered) {
                    pool.set_status(*existing, SecStatus::fixed);
                    add_row(pool[*existing]);
                    ++added;
                }
                // an active/fixed hit would already be a model row; the
                // novelty check above rules that out
            } else {
                pool.insert(Sec(cand.cycle.sorted_vertices(), n, cand.origin));
                add_row(pool[pool.size() - 1]);
                ++added;
            }
        }
        if (added == 0) throw std::logic_error("iteration added no constraints; loop cannot progress");
        result.per_iteration.push_back({objective, static_cast<std::uint32_t>(cycles.size()), added});
    }
}

inline PoolSummary summarize(const SecPool& pool, std::size_t dropped) {
    PoolSummary s;
    s.total = pool.size();
    s.active = pool.count_status(SecStatus::active);
    s.considered = pool.count_status(SecStatus::considered);
    s.fixed = pool.count_status(SecStatus::fixed);
    s.dropped = dropped;
    s.origin_iteration = pool.count_origin(SecOrigin::Kind::iteration);
    s.origin_incumbent = pool.count_origin(SecOrigin::Kind::incumbent);
    s.origin_cluster = pool.count_origin(SecOrigin::Kind::cluster);
    s.origin_seed_triangle = pool.count_origin(SecOrigin::Kind::seed_triangle);
    s.origin_cluster_tour = pool.count_origin(SecOrigin::Kind::cluster_tour);
    return s;
}

inline std::optional<Tour> build_warm_start(const Instance& inst, const VariantConfig& cfg,
                                            const Backend& backend) {
    if (!cfg.warm_start || !backend.capabilities().accepts_warm_start) return std::nullopt;
    return improve_tour(inst, nearest_neighbor(inst, 0));
}

inline std::vector<CanonicalKey> pool_keys(const SecPool& pool) {
    std::vector<CanonicalKey> keys;
    keys.reserve(pool.size());
    for (std::size_t i = 0; i < pool.size(); ++i) keys.push_back(pool[i].key);
    return keys;
}

inline RunReport finish_report(const Instance& inst, const VariantConfig& cfg, SecPool& pool,
                               std::size_t dropped, const std::vector<CanonicalKey>& prephase,
                               LoopResult lr, std::chrono::steady_clock::time_point t0) {
    RunReport report;
    report.instance_name = inst.name();
    report.n = inst.n();
    report.variant = variant_name(cfg, inst.n());
    report.sec_form = cfg.sec_form;
    report.status = lr.status;
    report.objective = lr.objective;
    report.tour = std::move(lr.tour);
    report.iterations = static_cast<std::uint32_t>(lr.per_iteration.size());
    report.constraints_final = lr.constraints_final;
    report.per_iteration = std::move(lr.per_iteration);
    report.final_model_keys = std::move(lr.final_model_keys);
    report.prephase_keys = prephase;
    report.pool = summarize(pool, dropped);
    report.seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return report;
}

} // namespace detail

/// Algorithm variant `basic`: the plain loop on the full instance, with
/// incumbent harvesting governed by the config.
inline RunReport basic_integer_tsp(const Instance& inst, Backend& backend,
                                   const VariantConfig& cfg) {
    const auto t0 = std::chrono::steady_clock::now();
    SecPool pool;
    for (auto& sec : seed_triangle_secs(inst, cfg.seed_triangles_p)) pool.insert(std::move(sec));
    const auto prephase = detail::pool_keys(pool);
    const auto warm = detail::build_warm_start(inst, cfg, backend);
    auto lr = detail::run_loop(inst, backend, cfg, pool, warm);
    return detail::finish_report(inst, cfg, pool, 0, prephase, std::move(lr), t0);
}

namespace detail {

struct ClusterPhaseResult {
    std::vector<Sec> secs; // original vertex ids, insertion order
    bool limit_hit = false;
};

/// Solves one induced sub-TSP and rewrites everything its pool produced
/// (plus its optimal tour) in original vertex ids.
inline ClusterPhaseResult solve_cluster(const Instance& inst,
                                        const std::vector<std::uint32_t>& members,
                                        std::int64_t origin_node, Backend& backend,
                                        const VariantConfig& cfg,
                                        const std::vector<Sec>& fixed_in,
                                        const std::vector<Sec>& considered_in,
                                        std::vector<Sec>* promoted_out,
                                        std::size_t* dropped_out) {
    SubInstance sub =
        induce(inst, members, inst.name() + "#" + std::to_string(origin_node));
    const std::uint32_t k = sub.instance.n();
    std::vector<std::uint32_t> to_local(inst.n(), 0);
    for (std::uint32_t i = 0; i < k; ++i) to_local[sub.to_original[i]] = i;
    auto localize = [&](const Sec& sec, SecStatus status) {
        std::vector<std::uint32_t> s;
        s.reserve(sec.subset.size());
        for (auto v : sec.subset) s.push_back(to_local[v]);
        return Sec(std::move(s), k, sec.origin, status);
    };
    auto globalize = [&](const Sec& sec, SecOrigin origin) {
        std::vector<std::uint32_t> s;
        s.reserve(sec.subset.size());
        for (auto v : sec.subset) s.push_back(sub.to_original[v]);
        return Sec(std::move(s), inst.n(), origin, sec.status);
    };

    VariantConfig sub_cfg = cfg;
    sub_cfg.variant = Variant::basic;
    sub_cfg.seed_triangles_p = 0.0;
    sub_cfg.filter.reset();

    SecPool pool;
    std::set<CanonicalKey> considered_keys;
    for (const auto& sec : fixed_in) pool.insert(localize(sec, SecStatus::fixed));
    for (const auto& sec : considered_in) {
        auto local = localize(sec, SecStatus::considered);
        if (auto idx = pool.insert(std::move(local))) considered_keys.insert(pool[*idx].key);
    }
    const std::size_t seeded = pool.size();

    const auto warm = build_warm_start(sub.instance, sub_cfg, backend);
    LoopResult lr = run_loop(sub.instance, backend, sub_cfg, pool, warm);

    ClusterPhaseResult out;
    if (lr.status == RunStatus::limit_reached) {
        out.limit_hit = true;
        return out;
    }
    for (std::size_t i = 0; i < seeded; ++i) {
        const auto& e = pool[i];
        if (e.status == SecStatus::fixed && considered_keys.count(e.key) && promoted_out)
            promoted_out->push_back(globalize(e, e.origin));
    }
    if (dropped_out) *dropped_out += pool.count_status(SecStatus::considered);
    for (std::size_t i = seeded; i < pool.size(); ++i)
        out.secs.push_back(globalize(pool[i], SecOrigin::cluster(origin_node)));
    if (k < inst.n()) {
        std::vector<std::uint32_t> all(members);
        out.secs.emplace_back(std::move(all), inst.n(), SecOrigin::cluster_tour(origin_node),
                              SecStatus::active);
    }
    return out;
}

} // namespace detail

/// Variants C|c, RC3|c and RC3|n: solve each cluster of size >= 3 as its own
/// TSP, turn everything it generated (and its optimal tour) into SECs for
/// the master model, then run the main loop.
inline RunReport run_with_clustering(const Instance& inst, Backend& backend,
                                     const VariantConfig& cfg) {
    const auto t0 = std::chrono::steady_clock::now();
    Clustering clustering;
    switch (cfg.variant) {
        case Variant::cluster:
            clustering = cluster(inst, cfg.cluster_count.value_or(1));
            break;
        case Variant::restricted:
            clustering = restricted_cluster(inst, cfg.cluster_count.value_or(1));
            break;
        case Variant::restricted_n:
            clustering = restricted_cluster(inst, inst.n());
            break;
        default:
            throw std::invalid_argument("run_with_clustering: wrong variant");
    }

    std::vector<std::size_t> jobs;
    for (std::size_t i = 0; i < clustering.parts.size(); ++i) {
        const auto sz = clustering.parts[i].size();
        if (sz >= 3 && sz < inst.n()) jobs.push_back(i);
    }

    std::vector<detail::ClusterPhaseResult> results(jobs.size());
    auto solve_one = [&](std::size_t j, Backend& be) {
        results[j] = detail::solve_cluster(inst, clustering.parts[jobs[j]],
                                           static_cast<std::int64_t>(jobs[j]), be, cfg, {}, {},
                                           nullptr, nullptr);
    };
    if (cfg.parallel_clusters && jobs.size() > 1) {
        std::vector<std::future<void>> futures;
        futures.reserve(jobs.size());
        for (std::size_t j = 0; j < jobs.size(); ++j)
            futures.push_back(std::async(std::launch::async, [&, j] {
                auto be = backend.clone();
                solve_one(j, *be);
            }));
        for (auto& f : futures) f.get();
    } else {
        for (std::size_t j = 0; j < jobs.size(); ++j) solve_one(j, backend);
    }

    SecPool pool;
    bool limit_hit = false;
    for (auto& r : results) {
        limit_hit = limit_hit || r.limit_hit;
        for (auto& sec : r.secs) pool.insert(std::move(sec));
    }
    for (auto& sec : seed_triangle_secs(inst, cfg.seed_triangles_p)) pool.insert(std::move(sec));
    const auto prephase = detail::pool_keys(pool);

    if (limit_hit) {
        detail::LoopResult lr;
        lr.status = RunStatus::limit_reached;
        return detail::finish_report(inst, cfg, pool, 0, prephase, std::move(lr), t0);
    }
    const auto warm = detail::build_warm_start(inst, cfg, backend);
    auto lr = detail::run_loop(inst, backend, cfg, pool, warm);
    return detail::finish_report(inst, cfg, pool, 0, prephase, std::move(lr), t0);
}

/// Hierarchical variants HC|u and HCD|u: walk the clustering tree bottom-up,
/// solving every node of size in [3, u]. HC propagates every SEC upward;
/// HCD hands child SECs to the parent as `considered` and keeps only the
/// regenerated ones, except that the maximal solved clusters pass all their
/// SECs to the root.
inline RunReport run_hierarchical(const Instance& inst, Backend& backend,
                                  const VariantConfig& cfg) {
    if (cfg.variant != Variant::hc && cfg.variant != Variant::hcd)
        throw std::invalid_argument("run_hierarchical: wrong variant");
    const bool dropping = cfg.variant == Variant::hcd;
    const auto t0 = std::chrono::steady_clock::now();
    const std::uint32_t n = inst.n();
    const std::uint32_t u = cfg.resolved_size_bound(n);

    const ClusterTree tree = build_cluster_tree(inst);
    auto solvable = [&](std::uint32_t id) {
        const auto& node = tree.nodes[id];
        return node.left >= 0 && node.size >= 3 && node.size <= u && node.size < n;
    };

    struct NodeResult {
        std::vector<Sec> fixed;      // rows for every ancestor
        std::vector<Sec> candidates; // HC: propagated rows; HCD: considered
    };
    std::vector<NodeResult> node_results(tree.nodes.size());
    std::vector<char> done(tree.nodes.size(), 0);
    std::size_t dropped = 0;
    bool limit_hit = false;

    std::vector<std::uint32_t> todo;
    for (std::uint32_t id = 0; id < tree.nodes.size(); ++id) {
        if (solvable(id)) todo.push_back(id);
        else if (tree.nodes[id].left < 0 || tree.nodes[id].size < 3) done[id] = 1;
    }
    // nodes are already in merge order, so children precede parents

    auto solve_node = [&](std::uint32_t id, Backend& be, std::size_t* dropped_acc) {
        const auto& node = tree.nodes[id];
        const auto& left = node_results[static_cast<std::size_t>(node.left)];
        const auto& right = node_results[static_cast<std::size_t>(node.right)];
        std::vector<Sec> fixed_in;
        std::vector<Sec> considered_in;
        fixed_in.insert(fixed_in.end(), left.fixed.begin(), left.fixed.end());
        fixed_in.insert(fixed_in.end(), right.fixed.begin(), right.fixed.end());
        if (dropping) {
            considered_in.insert(considered_in.end(), left.candidates.begin(),
                                 left.candidates.end());
            considered_in.insert(considered_in.end(), right.candidates.begin(),
                                 right.candidates.end());
        } else {
            fixed_in.insert(fixed_in.end(), left.candidates.begin(), left.candidates.end());
            fixed_in.insert(fixed_in.end(), right.candidates.begin(), right.candidates.end());
        }

        NodeResult result;
        std::vector<Sec> promoted;
        auto phase = detail::solve_cluster(inst, node.cluster, node.merge_rank, be, cfg, fixed_in,
                                           considered_in, &promoted, dropped_acc);
        if (phase.limit_hit) return std::make_pair(result, true);
        if (dropping) {
            result.fixed = std::move(fixed_in);
            for (auto& sec : promoted) result.fixed.push_back(std::move(sec));
            result.candidates = std::move(phase.secs);
        } else {
            result.candidates = std::move(fixed_in);
            for (auto& sec : phase.secs) result.candidates.push_back(std::move(sec));
        }
        return std::make_pair(std::move(result), false);
    };

    // bottom-up, in waves of ready nodes; parallel siblings fold back in
    // merge order so reports stay identical
    std::size_t next = 0;
    while (next < todo.size() && !limit_hit) {
        std::vector<std::uint32_t> wave;
        for (std::size_t i = next; i < todo.size(); ++i) {
            const auto id = todo[i];
            const auto& node = tree.nodes[id];
            if (done[static_cast<std::size_t>(node.left)] &&
                done[static_cast<std::size_t>(node.right)])
                wave.push_back(id);
            else
                break; // merge order guarantees children come first
        }
        if (wave.empty()) throw std::logic_error("cluster tree scheduling stalled");
        if (cfg.parallel_clusters && wave.size() > 1) {
            std::vector<std::future<std::pair<NodeResult, bool>>> futures;
            std::vector<std::size_t> local_drops(wave.size(), 0);
            for (std::size_t w = 0; w < wave.size(); ++w)
                futures.push_back(std::async(std::launch::async, [&, w] {
                    auto be = backend.clone();
                    return solve_node(wave[w], *be, &local_drops[w]);
                }));
            for (std::size_t w = 0; w < wave.size(); ++w) {
                auto [res, limited] = futures[w].get();
                limit_hit = limit_hit || limited;
                node_results[wave[w]] = std::move(res);
                done[wave[w]] = 1;
                dropped += local_drops[w];
            }
        } else {
            for (auto id : wave) {
                auto [res, limited] = solve_node(id, backend, &dropped);
                limit_hit = limit_hit || limited;
                node_results[id] = std::move(res);
                done[id] = 1;
                if (limit_hit) break;
            }
        }
        next += wave.size();
    }

    // collect the contributions of the maximal solved clusters
    SecPool pool;
    if (!limit_hit) {
        std::vector<std::uint32_t> stack{tree.root()};
        std::vector<std::uint32_t> cut_nodes;
        while (!stack.empty()) {
            const auto id = stack.back();
            stack.pop_back();
            const auto& node = tree.nodes[id];
            if (solvable(id)) {
                cut_nodes.push_back(id);
            } else if (node.left >= 0 && node.size >= 3) {
                stack.push_back(static_cast<std::uint32_t>(node.right));
                stack.push_back(static_cast<std::uint32_t>(node.left));
            }
        }
        std::sort(cut_nodes.begin(), cut_nodes.end());
        for (auto id : cut_nodes) {
            for (auto& sec : node_results[id].fixed) pool.insert(std::move(sec));
            for (auto& sec : node_results[id].candidates) {
                sec.status = SecStatus::active; // maximal clusters pass everything to the root
                pool.insert(std::move(sec));
            }
        }
    }
    for (auto& sec : seed_triangle_secs(inst, cfg.seed_triangles_p)) pool.insert(std::move(sec));
    const auto prephase = detail::pool_keys(pool);

    if (limit_hit) {
        detail::LoopResult lr;
        lr.status = RunStatus::limit_reached;
        return detail::finish_report(inst, cfg, pool, dropped, prephase, std::move(lr), t0);
    }
    const auto warm = detail::build_warm_start(inst, cfg, backend);
    auto lr = detail::run_loop(inst, backend, cfg, pool, warm);
    return detail::finish_report(inst, cfg, pool, dropped, prephase, std::move(lr), t0);
}

/// Runs the configured variant.
inline RunReport run(const Instance& inst, Backend& backend, const VariantConfig& cfg) {
    switch (cfg.variant) {
        case Variant::basic: return basic_integer_tsp(inst, backend, cfg);
        case Variant::cluster:
        case Variant::restricted:
        case Variant::restricted_n: return run_with_clustering(inst, backend, cfg);
        case Variant::hc:
        case Variant::hcd: return run_hierarchical(inst, backend, cfg);
    }
    throw std::invalid_argument("unknown variant");
}

} // namespace itsp
