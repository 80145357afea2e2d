// itsp: exact TSP solving from pure integer solutions.
//
// Subcommands: solve one instance, sweep an experiment grid to CSV, or
// collect per-n statistics. See README.md for the file formats.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "itsp/experiments.hpp"
#include "itsp/itsp.hpp"

namespace {

constexpr int kExitOptimal = 0;
constexpr int kExitError = 1;
constexpr int kExitLimit = 2;
constexpr int kExitUsage = 64;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, sep)) parts.push_back(item);
    return parts;
}

itsp::VariantConfig parse_variant(const std::string& text) {
    itsp::VariantConfig cfg;
    auto parts = split(text, ':');
    const std::string& head = parts[0];
    auto want_number = [&](const char* what) -> std::uint32_t {
        if (parts.size() != 2) throw UsageError(std::string("variant ") + head + " needs " + what);
        try {
            return static_cast<std::uint32_t>(std::stoul(parts[1]));
        } catch (const std::exception&) {
            throw UsageError("bad number in variant '" + text + "'");
        }
    };
    if (head == "basic") {
        cfg.variant = itsp::Variant::basic;
        if (parts.size() != 1) throw UsageError("variant basic takes no parameter");
    } else if (head == "c") {
        cfg.variant = itsp::Variant::cluster;
        cfg.cluster_count = want_number(":<clusters>");
    } else if (head == "rc3") {
        cfg.variant = itsp::Variant::restricted;
        cfg.cluster_count = want_number(":<clusters>");
    } else if (head == "rc3n") {
        cfg.variant = itsp::Variant::restricted_n;
        if (parts.size() != 1) throw UsageError("variant rc3n takes no parameter");
    } else if (head == "hc" || head == "hcd") {
        cfg.variant = head == "hc" ? itsp::Variant::hc : itsp::Variant::hcd;
        if (parts.size() == 2) cfg.size_bound = want_number(":<bound>");
        else if (parts.size() != 1) throw UsageError("variant " + head + " takes at most one parameter");
    } else {
        throw UsageError("unknown variant '" + text + "'");
    }
    return cfg;
}

itsp::SecForm parse_sec_form(const std::string& text) {
    if (text == "packing") return itsp::SecForm::packing;
    if (text == "cut") return itsp::SecForm::cut;
    if (text == "hybrid") return itsp::SecForm::hybrid;
    throw UsageError("unknown SEC form '" + text + "'");
}

std::optional<itsp::FilterConfig> parse_filter(const std::string& text) {
    if (text.empty()) return std::nullopt;
    std::string body = text;
    if (body.rfind("p:", 0) == 0) body = body.substr(2);
    auto parts = split(body, ',');
    if (parts.size() != 2) throw UsageError("filter must look like 0.5,card or 0.5,len");
    itsp::FilterConfig f;
    try {
        f.p = std::stod(parts[0]);
    } catch (const std::exception&) {
        throw UsageError("bad filter proportion '" + parts[0] + "'");
    }
    if (parts[1] == "card") f.key = itsp::FilterKey::cardinality;
    else if (parts[1] == "len") f.key = itsp::FilterKey::length;
    else throw UsageError("filter key must be card or len");
    if (f.p <= 0.0 || f.p > 1.0) throw UsageError("filter proportion must be in (0, 1]");
    return f;
}

std::unique_ptr<itsp::Backend> make_backend(const std::string& text, std::uint32_t ref_cap) {
    if (text == "reference") return std::make_unique<itsp::ReferenceBackend>(ref_cap);
    if (text.rfind("cmd:", 0) == 0) {
        try {
            return std::make_unique<itsp::CommandBackend>(text.substr(4));
        } catch (const std::invalid_argument& e) {
            throw UsageError(e.what());
        }
    }
    throw UsageError("backend must be 'reference' or 'cmd:<template>'");
}

std::vector<std::uint32_t> parse_n_list(const std::string& text) {
    std::vector<std::uint32_t> ns;
    for (const auto& part : split(text, ',')) {
        try {
            ns.push_back(static_cast<std::uint32_t>(std::stoul(part)));
        } catch (const std::exception&) {
            throw UsageError("bad vertex count '" + part + "'");
        }
    }
    if (ns.empty()) throw UsageError("empty n list");
    return ns;
}

struct SharedFlags {
    std::string sec_form = "hybrid";
    std::string backend = "reference";
    std::uint32_t ref_cap = 16;
    bool warm_start = false;
    bool no_incumbents = false;
    double seed_triangles = 0.0;
    std::string filter;
    double time_limit = 0.0;
    bool parallel = false;
    std::string out_dir = ".";

    void attach(CLI::App* cmd) {
        cmd->add_option("--sec-form", sec_form, "SEC representation: packing|cut|hybrid");
        cmd->add_option("--backend", backend, "reference or cmd:\"<solver> {lp} {sol}\"");
        cmd->add_option("--ref-cap", ref_cap, "vertex cap of the reference backend");
        cmd->add_flag("--warm-start", warm_start, "seed solves with a heuristic tour");
        cmd->add_flag("--no-incumbents", no_incumbents, "ignore incumbent solutions");
        cmd->add_option("--seed-triangles", seed_triangles,
                        "proportion of shortest triangles to add up front");
        cmd->add_option("--filter", filter, "keep only <p>,card|len of each iteration's subtours");
        cmd->add_option("--time-limit", time_limit, "per-solve time limit in seconds");
        cmd->add_flag("--parallel", parallel, "solve sibling clusters concurrently");
        cmd->add_option("--out", out_dir, "output directory");
    }

    void apply(itsp::VariantConfig& cfg) const {
        cfg.sec_form = parse_sec_form(sec_form);
        cfg.harvest_incumbents = !no_incumbents;
        cfg.warm_start = warm_start;
        cfg.seed_triangles_p = seed_triangles;
        if (seed_triangles < 0.0 || seed_triangles > 1.0)
            throw UsageError("--seed-triangles must be in [0, 1]");
        cfg.filter = parse_filter(filter);
        if (time_limit != 0.0) {
            if (time_limit < 0.0) throw UsageError("--time-limit must be positive");
            cfg.limits.time_limit_seconds = time_limit;
        }
        cfg.parallel_clusters = parallel;
    }
};

int cmd_solve(const std::string& instance_path, const std::string& random_spec,
              std::uint32_t mesh_cols, const std::string& variant, const SharedFlags& shared) {
    const int sources = (!instance_path.empty()) + (!random_spec.empty()) + (mesh_cols != 0);
    if (sources != 1)
        throw UsageError("give exactly one of --instance, --random, --mesh");

    std::optional<itsp::Instance> inst;
    if (!instance_path.empty()) {
        std::ifstream in(instance_path);
        if (!in) throw std::runtime_error("cannot open instance file " + instance_path);
        std::ostringstream ss;
        ss << in.rdbuf();
        inst = itsp::parse_tsplib(ss.str());
    } else if (!random_spec.empty()) {
        auto parts = split(random_spec, ',');
        if (parts.size() != 2) throw UsageError("--random needs n,seed");
        try {
            inst = itsp::gen_random_euclidean(static_cast<std::uint32_t>(std::stoul(parts[0])),
                                              std::stoull(parts[1]));
        } catch (const std::invalid_argument& e) {
            throw UsageError(std::string("--random: ") + e.what());
        } catch (const std::out_of_range&) {
            throw UsageError("--random: number out of range");
        }
    } else {
        try {
            inst = itsp::gen_mesh(mesh_cols);
        } catch (const std::invalid_argument& e) {
            throw UsageError(std::string("--mesh: ") + e.what());
        }
    }

    itsp::VariantConfig cfg = parse_variant(variant);
    shared.apply(cfg);
    auto backend = make_backend(shared.backend, shared.ref_cap);

    const itsp::RunReport report = itsp::run(*inst, *backend, cfg);

    namespace fs = std::filesystem;
    fs::create_directories(shared.out_dir);
    {
        std::ofstream out(fs::path(shared.out_dir) / "report.json");
        out << itsp::report_to_json(report).dump(2) << "\n";
    }
    if (report.tour) {
        std::ofstream out(fs::path(shared.out_dir) / "tour.txt");
        itsp::write_tour(out, *report.tour);
    }

    std::cout << report.instance_name << " n=" << report.n << " variant=" << report.variant
              << " status=" << to_string(report.status) << " objective=" << report.objective
              << " iterations=" << report.iterations
              << " constraints=" << report.constraints_final << "\n";
    return report.status == itsp::RunStatus::optimal ? kExitOptimal : kExitLimit;
}

int cmd_experiment(const std::string& n_list, std::uint32_t seeds, const std::string& variants,
                   const SharedFlags& shared) {
    itsp::ExperimentSpec spec;
    spec.ns = parse_n_list(n_list);
    spec.seeds_per_n = seeds;
    for (const auto& v : split(variants, ',')) {
        itsp::VariantConfig cfg = parse_variant(v);
        shared.apply(cfg);
        spec.variants.push_back(cfg);
    }
    if (spec.variants.empty()) throw UsageError("empty variant list");
    auto backend = make_backend(shared.backend, shared.ref_cap);

    const itsp::ExperimentResult result = itsp::run_experiment(spec, *backend);
    namespace fs = std::filesystem;
    fs::create_directories(shared.out_dir);
    itsp::write_file(fs::path(shared.out_dir) / "runs.csv", result.runs_csv);
    itsp::write_file(fs::path(shared.out_dir) / "summary.csv", result.summary_csv);
    std::cout << "wrote " << result.reports.size() << " runs to " << shared.out_dir << "\n";
    return kExitOptimal;
}

int cmd_stats(const std::string& n_list, std::uint32_t count, const std::string& what,
              const SharedFlags& shared) {
    itsp::StatsSpec spec;
    spec.ns = parse_n_list(n_list);
    spec.count = count;
    if (!what.empty()) {
        spec.iters = spec.lengths = spec.curve = spec.cprime = false;
        for (const auto& part : split(what, ',')) {
            if (part == "iters") spec.iters = true;
            else if (part == "lengths") spec.lengths = true;
            else if (part == "curve") spec.curve = true;
            else if (part == "cprime") spec.cprime = true;
            else throw UsageError("unknown stats selector '" + part + "'");
        }
    }
    auto backend = make_backend(shared.backend, shared.ref_cap);

    const itsp::StatsResult result = itsp::run_stats(spec, *backend);
    namespace fs = std::filesystem;
    fs::create_directories(shared.out_dir);
    if (spec.iters) itsp::write_file(fs::path(shared.out_dir) / "iters.csv", result.iters_csv);
    if (spec.lengths)
        itsp::write_file(fs::path(shared.out_dir) / "lengths.csv", result.lengths_csv);
    if (spec.curve) itsp::write_file(fs::path(shared.out_dir) / "curve.csv", result.curve_csv);
    if (spec.cprime) itsp::write_file(fs::path(shared.out_dir) / "cprime.csv", result.cprime_csv);
    std::cout << "wrote statistics to " << shared.out_dir << "\n";
    return kExitOptimal;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact TSP solving from pure integer solutions"};
    app.require_subcommand(1);

    // solve
    auto* solve = app.add_subcommand("solve", "solve one instance");
    std::string instance_path, random_spec, variant = "basic";
    std::uint32_t mesh_cols = 0;
    SharedFlags solve_flags;
    solve->add_option("--instance", instance_path, "TSPLIB file");
    solve->add_option("--random", random_spec, "random Euclidean instance: n,seed");
    solve->add_option("--mesh", mesh_cols, "3 x cols mesh instance");
    solve->add_option("--variant", variant, "basic|c:K|rc3:K|rc3n|hc[:U]|hcd[:U]");
    solve_flags.attach(solve);

    // experiment
    auto* experiment = app.add_subcommand("experiment", "sweep instances x variants to CSV");
    std::string exp_ns, exp_variants = "basic";
    std::uint32_t exp_seeds = 1;
    SharedFlags exp_flags;
    experiment->add_option("--n", exp_ns, "comma-separated vertex counts")->required();
    experiment->add_option("--seeds", exp_seeds, "instances per n");
    experiment->add_option("--variants", exp_variants, "comma-separated variant list");
    exp_flags.attach(experiment);

    // stats
    auto* stats = app.add_subcommand("stats", "per-n statistics to CSV");
    std::string stats_ns, stats_what;
    std::uint32_t stats_count = 100;
    SharedFlags stats_flags;
    stats->add_option("--n", stats_ns, "comma-separated vertex counts")->required();
    stats->add_option("--count", stats_count, "instances per n");
    stats->add_option("--what", stats_what, "subset of iters,lengths,curve,cprime");
    stats_flags.attach(stats);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (solve->parsed())
            return cmd_solve(instance_path, random_spec, mesh_cols, variant, solve_flags);
        if (experiment->parsed()) return cmd_experiment(exp_ns, exp_seeds, exp_variants, exp_flags);
        if (stats->parsed()) return cmd_stats(stats_ns, stats_count, stats_what, stats_flags);
        return kExitUsage;
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    }
}
