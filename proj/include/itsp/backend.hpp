#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <vector>

#include "itsp/heuristics.hpp"
#include "itsp/model.hpp"
#include "itsp/subtours.hpp"

namespace itsp {

struct SolveLimits {
    std::optional<double> time_limit_seconds;
    std::optional<std::uint64_t> node_limit;

    void validate() const {
        if (time_limit_seconds && *time_limit_seconds <= 0.0)
            throw std::invalid_argument("time limit must be positive");
        if (node_limit && *node_limit == 0)
            throw std::invalid_argument("node limit must be positive");
    }
};

enum class SolveStatus { optimal, infeasible, limit_reached };

inline const char* to_string(SolveStatus s) {
    switch (s) {
        case SolveStatus::optimal: return "optimal";
        case SolveStatus::infeasible: return "infeasible";
        case SolveStatus::limit_reached: return "limit_reached";
    }
    return "?";
}

struct SolveOutcome {
    SolveStatus status = SolveStatus::infeasible;
    std::optional<IntegerSolution> best;
    std::optional<std::int64_t> objective;
    std::vector<IntegerSolution> incumbents; // integer-feasible points seen on the way
};

struct BackendCapabilities {
    bool reports_incumbents = false;
    bool accepts_warm_start = false;
    bool deterministic = false;
};

/// A MILP solving contract. One handle runs one solve at a time; use clone()
/// to solve on several threads.
class Backend {
public:
    virtual ~Backend() = default;
    virtual BackendCapabilities capabilities() const = 0;
    virtual SolveOutcome solve(const IlpModel& model, const std::optional<Tour>& warm_start,
                               const SolveLimits& limits) = 0;
    virtual std::unique_ptr<Backend> clone() const = 0;
};

} // namespace itsp
