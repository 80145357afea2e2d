#pragma once

#include <algorithm>
#include <climits>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "itsp/backend.hpp"
#include "itsp/engine.hpp"
#include "itsp/generate.hpp"
#include "itsp/metrics.hpp"

namespace itsp {

namespace detail {

inline std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6f", v);
    return buf;
}

/// Seed labels in the RE_X_n style: A..Z, then S27, S28, ...
inline std::string seed_label(std::uint32_t ordinal) {
    if (ordinal < 26) return std::string(1, static_cast<char>('A' + ordinal));
    return "S" + std::to_string(ordinal + 1);
}

} // namespace detail

struct ExperimentSpec {
    std::vector<std::uint32_t> ns;
    std::uint32_t seeds_per_n = 1;
    std::vector<VariantConfig> variants; // first one is the ratio baseline
};

struct ExperimentResult {
    std::vector<RunReport> reports;          // row order: n, seed, variant
    std::vector<std::uint64_t> seeds;        // parallel to reports
    std::string runs_csv;
    std::string summary_csv;
};

/// Sweeps instances x variants, producing the run table and the derived
/// metric summary. Instances are RE_<label>_<n> with seed = ordinal + 1.
inline ExperimentResult run_experiment(const ExperimentSpec& spec, Backend& backend) {
    if (spec.variants.empty()) throw std::invalid_argument("experiment: no variants");
    ExperimentResult result;
    std::ostringstream runs;
    runs << "instance,n,variant,sec_form,seed,seconds,iterations,constraints_final,objective,"
            "status\n";

    struct InstanceRuns {
        std::map<std::string, const RunReport*> by_variant;
    };
    std::map<std::string, InstanceRuns> per_instance;
    std::vector<std::string> variant_names;

    for (const auto n : spec.ns) {
        for (std::uint32_t s = 0; s < spec.seeds_per_n; ++s) {
            const std::uint64_t seed = s + 1;
            Instance inst = gen_random_euclidean(n, seed);
            const std::string label = "RE_" + detail::seed_label(s) + "_" + std::to_string(n);
            for (const auto& cfg : spec.variants) {
                RunReport report = run(inst, backend, cfg);
                report.instance_name = label;
                runs << label << "," << n << "," << report.variant << ","
                     << to_string(report.sec_form) << "," << seed << ","
                     << detail::format_double(report.seconds) << "," << report.iterations << ","
                     << report.constraints_final << "," << report.objective << ","
                     << to_string(report.status) << "\n";
                result.reports.push_back(std::move(report));
                result.seeds.push_back(seed);
            }
        }
    }

    for (const auto& r : result.reports) {
        per_instance[r.instance_name].by_variant[r.variant] = &r;
        if (std::find(variant_names.begin(), variant_names.end(), r.variant) ==
            variant_names.end())
            variant_names.push_back(r.variant);
    }

    std::ostringstream summary;
    summary << "metric,variant,value\n";
    if (!variant_names.empty()) {
        const std::string& baseline = variant_names.front();
        for (const auto& name : variant_names) {
            std::vector<double> base_times, times;
            for (const auto& [inst, runs_of] : per_instance) {
                auto b = runs_of.by_variant.find(baseline);
                auto v = runs_of.by_variant.find(name);
                if (b == runs_of.by_variant.end() || v == runs_of.by_variant.end()) continue;
                if (b->second->status != RunStatus::optimal ||
                    v->second->status != RunStatus::optimal)
                    continue;
                // wall clocks can resolve to zero at desk scale; keep ratios finite
                base_times.push_back(std::max(b->second->seconds, 1e-9));
                times.push_back(std::max(v->second->seconds, 1e-9));
            }
            if (!base_times.empty())
                summary << "mean_ratio_seconds," << name << ","
                        << detail::format_double(mean_ratio(base_times, times)) << "\n";
        }
        // pre-phase quality against the plain run's final model
        for (const auto& name : variant_names) {
            std::vector<double> used, cov;
            for (const auto& [inst, runs_of] : per_instance) {
                auto b = runs_of.by_variant.find("basic");
                auto v = runs_of.by_variant.find(name);
                if (b == runs_of.by_variant.end() || v == runs_of.by_variant.end()) continue;
                if (v->second->prephase_keys.empty() || b->second->final_model_keys.empty())
                    continue;
                KeySet s1(v->second->prephase_keys.begin(), v->second->prephase_keys.end());
                KeySet s2(b->second->final_model_keys.begin(),
                          b->second->final_model_keys.end());
                used.push_back(p_used(s1, s2));
                cov.push_back(p_cov(s1, s2));
            }
            if (!used.empty()) {
                double us = 0, cs = 0;
                for (double x : used) us += x;
                for (double x : cov) cs += x;
                summary << "p_used_mean," << name << ","
                        << detail::format_double(us / static_cast<double>(used.size())) << "\n";
                summary << "p_cov_mean," << name << ","
                        << detail::format_double(cs / static_cast<double>(cov.size())) << "\n";
            }
        }
    }

    result.runs_csv = runs.str();
    result.summary_csv = summary.str();
    return result;
}

struct StatsSpec {
    std::vector<std::uint32_t> ns;
    std::uint32_t count = 100; // instances per n, seeds 1..count
    bool iters = true;
    bool lengths = true;
    bool curve = true;
    bool cprime = true;
};

struct StatsResult {
    std::string iters_csv;
    std::string lengths_csv;
    std::string curve_csv;
    std::string cprime_csv;
};

/// Per-n statistics over generated instances: mean iteration counts, mean
/// tour and 2-matching lengths (unit-square units), subtour-count curves,
/// and the cluster count c' of restricted clustering at c = n.
inline StatsResult run_stats(const StatsSpec& spec, Backend& backend) {
    StatsResult out;
    const bool solving = spec.iters || spec.lengths || spec.curve;

    std::ostringstream iters, lengths, curve, cprime;
    iters << "n,runs,mean_iterations\n";
    lengths << "n,runs,mean_tour_length,mean_two_matching_length,tour_over_sqrt_n,"
               "two_matching_over_sqrt_n\n";
    curve << "n,iterations_class,runs,position,mean_subtours\n";
    cprime << "n,samples,mean_cprime,stddev,min,max\n";

    for (const auto n : spec.ns) {
        if (solving) {
            std::vector<RunReport> reports;
            reports.reserve(spec.count);
            VariantConfig cfg; // plain run
            double iter_sum = 0, tour_sum = 0, matching_sum = 0;
            for (std::uint32_t s = 1; s <= spec.count; ++s) {
                Instance inst = gen_random_euclidean(n, s);
                RunReport r = run(inst, backend, cfg);
                if (r.status != RunStatus::optimal)
                    throw BackendError("stats run hit a limit on " + inst.name());
                iter_sum += r.iterations;
                tour_sum += static_cast<double>(r.objective) / kCoordinateScale;
                matching_sum +=
                    static_cast<double>(r.per_iteration.front().objective) / kCoordinateScale;
                reports.push_back(std::move(r));
            }
            const double cnt = spec.count;
            if (spec.iters)
                iters << n << "," << spec.count << "," << detail::format_double(iter_sum / cnt)
                      << "\n";
            if (spec.lengths) {
                const double sq = std::sqrt(static_cast<double>(n));
                lengths << n << "," << spec.count << "," << detail::format_double(tour_sum / cnt)
                        << "," << detail::format_double(matching_sum / cnt) << ","
                        << detail::format_double(tour_sum / cnt / sq) << ","
                        << detail::format_double(matching_sum / cnt / sq) << "\n";
            }
            if (spec.curve)
                for (const auto& c : subtour_curve(reports))
                    for (const auto& p : c.points)
                        curve << n << "," << c.iteration_count << "," << c.runs << ","
                              << detail::format_double(p.position) << ","
                              << detail::format_double(p.mean_subtours) << "\n";
        }
        if (spec.cprime) {
            double sum = 0, sum2 = 0;
            std::size_t lo = SIZE_MAX, hi = 0;
            for (std::uint32_t s = 1; s <= spec.count; ++s) {
                Instance inst = gen_random_euclidean(n, s);
                const std::size_t c = restricted_cluster(inst, n).c_actual();
                sum += static_cast<double>(c);
                sum2 += static_cast<double>(c) * static_cast<double>(c);
                lo = std::min(lo, c);
                hi = std::max(hi, c);
            }
            const double cnt = spec.count;
            const double mean = sum / cnt;
            const double var = spec.count > 1 ? (sum2 - cnt * mean * mean) / (cnt - 1) : 0.0;
            cprime << n << "," << spec.count << "," << detail::format_double(mean) << ","
                   << detail::format_double(std::sqrt(std::max(var, 0.0))) << "," << lo << ","
                   << hi << "\n";
        }
    }
    out.iters_csv = iters.str();
    out.lengths_csv = lengths.str();
    out.curve_csv = curve.str();
    out.cprime_csv = cprime.str();
    return out;
}

inline void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path);
    out << content;
    if (!out) throw std::runtime_error("cannot write " + path.string());
}

} // namespace itsp
