#pragma once

#include <ostream>
#include <string>

#include <json.hpp>

#include "itsp/engine.hpp"

namespace itsp {

/// Report document, schema version 1. Everything except `seconds` is
/// deterministic for a fixed instance, variant and configuration.
inline nlohmann::json report_to_json(const RunReport& report) {
    nlohmann::json j;
    j["schema"] = 1;
    j["instance"] = report.instance_name;
    j["n"] = report.n;
    j["variant"] = report.variant;
    j["sec_form"] = to_string(report.sec_form);
    j["status"] = to_string(report.status);
    j["objective"] = report.objective;
    j["iterations"] = report.iterations;
    j["constraints_final"] = report.constraints_final;
    j["seconds"] = report.seconds;
    if (report.tour) j["tour"] = report.tour->order;
    auto iterations = nlohmann::json::array();
    for (const auto& it : report.per_iteration)
        iterations.push_back({{"objective", it.objective},
                              {"subtours", it.subtours},
                              {"secs_added", it.secs_added}});
    j["per_iteration"] = std::move(iterations);
    j["pool"] = {{"total", report.pool.total},
                 {"active", report.pool.active},
                 {"considered", report.pool.considered},
                 {"fixed", report.pool.fixed},
                 {"dropped", report.pool.dropped},
                 {"origins",
                  {{"iteration", report.pool.origin_iteration},
                   {"incumbent", report.pool.origin_incumbent},
                   {"cluster", report.pool.origin_cluster},
                   {"seed_triangle", report.pool.origin_seed_triangle},
                   {"cluster_tour", report.pool.origin_cluster_tour}}}};
    j["prephase_secs"] = report.prephase_keys.size();
    return j;
}

/// Tour file: one vertex id per line, cyclic order.
inline void write_tour(std::ostream& out, const Tour& tour) {
    for (auto v : tour.order) out << v << "\n";
}

} // namespace itsp
