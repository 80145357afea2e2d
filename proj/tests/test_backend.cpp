#include <catch2/catch_amalgamated.hpp>

#include "itsp/generate.hpp"
#include "itsp/reference_backend.hpp"
#include "oracles.hpp"

using namespace itsp;

namespace {

/// Two unit-perimeter triangles, 1000 apart: {0,1,2} and {3,4,5}.
Instance two_far_triangles() {
    std::vector<std::int64_t> w(edge_count(6), 1000);
    for (auto [a, b] : {std::pair{0, 1}, {0, 2}, {1, 2}, {3, 4}, {3, 5}, {4, 5}})
        w[edge_index(a, b)] = 1;
    return Instance("two_triangles", Source::explicit_matrix, 6, std::move(w));
}

} // namespace

TEST_CASE("triangle base model solves to the only 2-matching") {
    Instance tri("tri", Source::explicit_matrix, 3, {5, 7, 9});
    auto model = build_base_model(tri);
    ReferenceBackend backend;
    auto outcome = backend.solve(model, std::nullopt, {});
    REQUIRE(outcome.status == SolveStatus::optimal);
    REQUIRE(outcome.objective == 21);
    REQUIRE(outcome.best->chosen.size() == 3);
}

TEST_CASE("far triangles: the unconstrained optimum is two 3-cycles") {
    auto inst = two_far_triangles();
    auto model = build_base_model(inst);
    ReferenceBackend backend;
    auto outcome = backend.solve(model, std::nullopt, {});

    auto oracle = oracles::enumerate_two_matchings(inst);
    REQUIRE(outcome.objective == oracle.best);
    REQUIRE(*outcome.objective == 6);
    REQUIRE(extract_subtours(*outcome.best, 6).size() == 2);

    // one triangle SEC kills the split (its complement is the other triangle)
    Sec left({0, 1, 2}, 6, SecOrigin::iteration(1));
    model.sec_rows.push_back(sec_row(left, SecForm::hybrid, 6));
    auto constrained = backend.solve(model, std::nullopt, {});
    REQUIRE(extract_subtours(*constrained.best, 6).size() == 1);
    REQUIRE(constrained.objective == oracles::brute_force_tour_optimum(inst));
}

TEST_CASE("reference solve equals exhaustive 2-matching enumeration") {
    ReferenceBackend backend;
    for (std::uint64_t seed = 1; seed <= 200; ++seed) {
        const std::uint32_t n = 5 + static_cast<std::uint32_t>(seed % 6);
        auto inst = gen_random_euclidean(n, seed);
        auto outcome = backend.solve(build_base_model(inst), std::nullopt, {});
        REQUIRE(outcome.status == SolveStatus::optimal);
        REQUIRE(*outcome.objective == oracles::enumerate_two_matchings(inst).best);
    }
}

TEST_CASE("equal-cost optima resolve to the lexicographically smallest edge set") {
    // K4 with uniform weights: three tours, all of cost 4
    Instance inst("k4", Source::explicit_matrix, 4, {1, 1, 1, 1, 1, 1});
    ReferenceBackend backend;
    auto outcome = backend.solve(build_base_model(inst), std::nullopt, {});
    REQUIRE(*outcome.objective == 4);
    REQUIRE(outcome.best->chosen == std::vector<std::uint32_t>{0, 1, 4, 5});
}

TEST_CASE("incumbents never beat the final optimum and include improvements") {
    auto inst = gen_random_euclidean(9, 4);
    ReferenceBackend backend;
    REQUIRE(backend.capabilities().reports_incumbents);
    auto outcome = backend.solve(build_base_model(inst), std::nullopt, {});
    REQUIRE_FALSE(outcome.incumbents.empty());
    for (const auto& inc : outcome.incumbents)
        REQUIRE(inc.objective(inst) >= *outcome.objective);
    REQUIRE(outcome.incumbents.back().objective(inst) == *outcome.objective);
}

TEST_CASE("warm start does not change the optimum") {
    auto inst = gen_random_euclidean(10, 8);
    ReferenceBackend backend;
    auto cold = backend.solve(build_base_model(inst), std::nullopt, {});
    auto tour = improve_tour(inst, nearest_neighbor(inst, 0));
    auto warm = backend.solve(build_base_model(inst), tour, {});
    REQUIRE(cold.objective == warm.objective);
    REQUIRE(cold.best->chosen == warm.best->chosen);
    // the provided tour is reported as the first incumbent
    REQUIRE(warm.incumbents.front().objective(inst) == tour.length);
}

TEST_CASE("limits abort the search") {
    auto inst = gen_random_euclidean(12, 3);
    ReferenceBackend backend;
    SolveLimits limits;
    limits.node_limit = 1;
    auto outcome = backend.solve(build_base_model(inst), std::nullopt, limits);
    REQUIRE(outcome.status == SolveStatus::limit_reached);

    SolveLimits bad;
    bad.time_limit_seconds = -1.0;
    REQUIRE_THROWS_AS(backend.solve(build_base_model(inst), std::nullopt, bad),
                      std::invalid_argument);
}

TEST_CASE("vertex cap is enforced") {
    auto inst = gen_random_euclidean(20, 1);
    ReferenceBackend backend; // default cap 16
    REQUIRE_THROWS_AS(backend.solve(build_base_model(inst), std::nullopt, {}), BackendError);
    ReferenceBackend wider(20);
    SolveLimits limits;
    limits.node_limit = 10;
    REQUIRE_NOTHROW(wider.solve(build_base_model(inst), std::nullopt, limits));
}

TEST_CASE("solutions satisfy every SEC row that was added") {
    // two far triangles with only the cut form of one side
    auto inst = two_far_triangles();
    auto model = build_base_model(inst);
    Sec left({0, 1, 2}, 6, SecOrigin::iteration(1));
    for (auto form : {SecForm::packing, SecForm::cut}) {
        auto with_row = model;
        with_row.sec_rows.push_back(sec_row(left, form, 6));
        ReferenceBackend backend;
        auto outcome = backend.solve(with_row, std::nullopt, {});
        REQUIRE(outcome.status == SolveStatus::optimal);
        // both forms forbid the two-triangle split, forcing the tour
        REQUIRE(extract_subtours(*outcome.best, 6).size() == 1);
    }
}
