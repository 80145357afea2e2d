#pragma once

#include <cctype>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "itsp/errors.hpp"
#include "itsp/model.hpp"
#include "itsp/subtours.hpp"

namespace itsp {

inline std::string lp_var_name(std::uint32_t edge_idx) {
    auto [u, v] = edge_endpoints(edge_idx);
    return "x_" + std::to_string(u) + "_" + std::to_string(v);
}

/// CPLEX-LP text for the model. Degree rows are named d<N>, SEC rows s<K>;
/// ordering is deterministic so repeated renders are byte-identical.
inline std::string write_lp(const IlpModel& model) {
    if (model.instance == nullptr) throw std::invalid_argument("model has no instance");
    const auto& inst = *model.instance;
    std::ostringstream out;
    out << "Minimize\n obj:";
    for (std::uint32_t e = 0; e < inst.m(); ++e)
        out << (e == 0 ? " " : " + ") << inst.weight_at(e) << " " << lp_var_name(e);
    out << "\nSubject To\n";
    auto emit_row = [&](const std::string& name, const LinearConstraint& row) {
        out << " " << name << ":";
        bool first = true;
        for (const auto& [e, coeff] : row.terms) {
            if (coeff == 1) out << (first ? " " : " + ") << lp_var_name(e);
            else if (coeff == -1) out << (first ? " - " : " - ") << lp_var_name(e);
            else out << (first ? " " : (coeff < 0 ? " " : " + ")) << coeff << " " << lp_var_name(e);
            first = false;
        }
        out << (row.sense == Sense::le ? " <= " : row.sense == Sense::ge ? " >= " : " = ")
            << row.rhs << "\n";
    };
    for (std::size_t i = 0; i < model.degree_rows.size(); ++i)
        emit_row("d" + std::to_string(i), model.degree_rows[i]);
    for (std::size_t i = 0; i < model.sec_rows.size(); ++i)
        emit_row("s" + std::to_string(i), model.sec_rows[i]);
    out << "Binary\n";
    for (std::uint32_t e = 0; e < inst.m(); ++e) out << " " << lp_var_name(e) << "\n";
    out << "End\n";
    return out.str();
}

struct ParsedLp {
    std::map<std::string, std::int64_t> objective;                   // var -> coefficient
    struct Row {
        std::string name;
        std::map<std::string, std::int64_t> terms;
        Sense sense;
        std::int64_t rhs;
    };
    std::vector<Row> rows;
    std::vector<std::string> binaries;
};

/// Reads back the subset of CPLEX-LP that write_lp emits. Used for
/// round-trip checks and adapter debugging, not as a general LP parser.
inline ParsedLp parse_lp(const std::string& text) {
    ParsedLp lp;
    enum class Part { none, objective, rows, binaries } part = Part::none;
    std::istringstream in(text);
    std::string line;
    auto parse_terms = [](const std::string& expr, std::map<std::string, std::int64_t>& terms) {
        std::istringstream ts(expr);
        std::string tok;
        std::int64_t sign = 1;
        std::optional<std::int64_t> pending;
        while (ts >> tok) {
            if (tok == "+") { sign = 1; continue; }
            if (tok == "-") { sign = -1; continue; }
            if (!tok.empty() && (std::isdigit(static_cast<unsigned char>(tok[0])) || tok[0] == '-')) {
                pending = std::stoll(tok) * (tok[0] == '-' ? 1 : sign);
                if (tok[0] == '-') sign = 1;
                continue;
            }
            terms[tok] += pending.value_or(sign);
            pending.reset();
            sign = 1;
        }
    };
    while (std::getline(in, line)) {
        std::string t = line;
        while (!t.empty() && (t.back() == '\r' || t.back() == ' ')) t.pop_back();
        std::size_t b = t.find_first_not_of(' ');
        if (b == std::string::npos) continue;
        std::string stripped = t.substr(b);
        if (stripped == "Minimize") { part = Part::objective; continue; }
        if (stripped == "Subject To") { part = Part::rows; continue; }
        if (stripped == "Binary") { part = Part::binaries; continue; }
        if (stripped == "End") break;
        switch (part) {
            case Part::objective: {
                auto colon = stripped.find(':');
                parse_terms(stripped.substr(colon + 1), lp.objective);
                break;
            }
            case Part::rows: {
                auto colon = stripped.find(':');
                ParsedLp::Row row;
                row.name = stripped.substr(0, colon);
                std::string rest = stripped.substr(colon + 1);
                std::size_t op_pos;
                if ((op_pos = rest.find("<=")) != std::string::npos) row.sense = Sense::le;
                else if ((op_pos = rest.find(">=")) != std::string::npos) row.sense = Sense::ge;
                else if ((op_pos = rest.find('=')) != std::string::npos) row.sense = Sense::eq;
                else throw ParseError("constraint without comparison: " + stripped);
                const std::size_t op_len = (row.sense == Sense::eq) ? 1 : 2;
                parse_terms(rest.substr(0, op_pos), row.terms);
                row.rhs = std::stoll(rest.substr(op_pos + op_len));
                lp.rows.push_back(std::move(row));
                break;
            }
            case Part::binaries:
                lp.binaries.push_back(stripped);
                break;
            case Part::none:
                throw ParseError("unexpected LP line: " + stripped);
        }
    }
    return lp;
}

/// Solution file: `name value` pairs, one per line, plus an `=obj=` line.
/// Values must sit within 1e-6 of an integer. Lines starting with # are
/// comments.
struct ParsedSolution {
    std::map<std::string, std::int64_t> values;
    std::optional<std::int64_t> objective;
};

inline ParsedSolution parse_solution_file(const std::string& text) {
    ParsedSolution sol;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream ls(line);
        std::string name;
        if (!(ls >> name)) continue;
        if (name[0] == '#') continue;
        double value;
        if (!(ls >> value))
            throw BackendError("solution line " + std::to_string(line_no) + " has no value: " + line);
        const double rounded = std::round(value);
        if (std::abs(value - rounded) > 1e-6)
            throw BackendError("solution value for " + name + " is not integral: " +
                               std::to_string(value));
        if (name == "=obj=") sol.objective = static_cast<std::int64_t>(rounded);
        else sol.values[name] = static_cast<std::int64_t>(rounded);
    }
    return sol;
}

/// Extracts the chosen-edge set for a model from parsed variable values.
inline IntegerSolution solution_from_values(const ParsedSolution& sol, const IlpModel& model) {
    IntegerSolution out;
    for (std::uint32_t e = 0; e < model.var_count(); ++e) {
        auto it = sol.values.find(lp_var_name(e));
        if (it == sol.values.end()) continue;
        if (it->second == 1) out.chosen.push_back(e);
        else if (it->second != 0)
            throw BackendError("binary variable " + it->first + " has value " +
                               std::to_string(it->second));
    }
    return out;
}

} // namespace itsp
