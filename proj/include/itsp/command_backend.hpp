#pragma once

#include <atomic>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>
#include <unistd.h>

#include "itsp/backend.hpp"
#include "itsp/errors.hpp"
#include "itsp/lp_format.hpp"

namespace itsp {

namespace detail {

inline std::string run_shell_capture(const std::string& command, int& exit_code) {
    std::string output;
    FILE* pipe = ::popen((command + " 2>&1").c_str(), "r");
    if (pipe == nullptr) throw BackendError("failed to launch: " + command);
    char buf[4096];
    std::size_t got;
    while ((got = std::fread(buf, 1, sizeof(buf), pipe)) > 0) output.append(buf, got);
    const int status = ::pclose(pipe);
    exit_code = (status == -1) ? -1 : WEXITSTATUS(status);
    return output;
}

inline std::string replace_all(std::string text, const std::string& from, const std::string& to) {
    std::size_t pos = 0;
    while ((pos = text.find(from, pos)) != std::string::npos) {
        text.replace(pos, from.size(), to);
        pos += to.size();
    }
    return text;
}

} // namespace detail

/// Runs an external MILP solver through the filesystem: write the model as
/// an LP file, invoke a user command with {lp} and {sol} substituted, then
/// read the solution file back. Keeps the solver a black box.
class CommandBackend final : public Backend {
public:
    explicit CommandBackend(std::string command_template, bool keep_files = false)
        : template_(std::move(command_template)), keep_files_(keep_files) {
        if (template_.find("{lp}") == std::string::npos ||
            template_.find("{sol}") == std::string::npos)
            throw std::invalid_argument("command template must contain {lp} and {sol}");
    }

    BackendCapabilities capabilities() const override { return {false, false, false}; }

    SolveOutcome solve(const IlpModel& model, const std::optional<Tour>& /*warm_start*/,
                       const SolveLimits& limits) override {
        if (model.instance == nullptr) throw std::invalid_argument("model has no instance");
        limits.validate();

        namespace fs = std::filesystem;
        static std::atomic<std::uint64_t> counter{0};
        const auto tag = std::to_string(::getpid()) + "_" + std::to_string(counter++);
        const fs::path lp_path = fs::temp_directory_path() / ("itsp_" + tag + ".lp");
        const fs::path sol_path = fs::temp_directory_path() / ("itsp_" + tag + ".sol");

        {
            std::ofstream out(lp_path);
            out << write_lp(model);
            if (!out) throw BackendError("cannot write LP file " + lp_path.string());
        }

        const std::string cmd = detail::replace_all(
            detail::replace_all(template_, "{lp}", lp_path.string()), "{sol}", sol_path.string());
        int exit_code = 0;
        const std::string output = detail::run_shell_capture(cmd, exit_code);
        auto cleanup = [&]() {
            if (!keep_files_) {
                std::error_code ec;
                fs::remove(lp_path, ec);
                fs::remove(sol_path, ec);
            }
        };
        if (exit_code != 0) {
            cleanup();
            throw BackendError("solver command failed (exit " + std::to_string(exit_code) +
                               "): " + cmd + "\n" + output);
        }

        std::string sol_text;
        {
            std::ifstream in(sol_path);
            if (!in) {
                cleanup();
                throw BackendError("solver wrote no solution file " + sol_path.string() + "\n" +
                                   output);
            }
            std::ostringstream ss;
            ss << in.rdbuf();
            sol_text = ss.str();
        }
        cleanup();

        const ParsedSolution parsed = parse_solution_file(sol_text);
        IntegerSolution solution = solution_from_values(parsed, model);
        verify_solution(model, solution);

        SolveOutcome out;
        out.status = SolveStatus::optimal;
        out.objective = solution.objective(*model.instance);
        if (parsed.objective && *parsed.objective != *out.objective)
            throw BackendError("solution file objective " + std::to_string(*parsed.objective) +
                               " does not match recomputed " + std::to_string(*out.objective));
        out.best = std::move(solution);
        return out;
    }

    std::unique_ptr<Backend> clone() const override {
        return std::make_unique<CommandBackend>(template_, keep_files_);
    }

private:
    static void verify_solution(const IlpModel& model, const IntegerSolution& sol) {
        std::vector<char> chosen(model.var_count(), 0);
        for (auto e : sol.chosen) chosen[e] = 1;
        auto check = [&](const LinearConstraint& row, const std::string& what) {
            std::int64_t lhs = 0;
            for (const auto& [e, coeff] : row.terms) lhs += coeff * chosen[e];
            const bool ok = row.sense == Sense::le   ? lhs <= row.rhs
                            : row.sense == Sense::ge ? lhs >= row.rhs
                                                     : lhs == row.rhs;
            if (!ok) throw BackendError("solver returned a point violating " + what);
        };
        for (std::size_t i = 0; i < model.degree_rows.size(); ++i)
            check(model.degree_rows[i], "degree row d" + std::to_string(i));
        for (std::size_t i = 0; i < model.sec_rows.size(); ++i)
            check(model.sec_rows[i], "SEC row s" + std::to_string(i));
    }

    std::string template_;
    bool keep_files_;
};

} // namespace itsp
