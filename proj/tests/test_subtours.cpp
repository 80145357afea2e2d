#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

#include "itsp/generate.hpp"
#include "itsp/rng.hpp"
#include "itsp/subtours.hpp"

using namespace itsp;

namespace {

IntegerSolution cycles_to_solution(const std::vector<std::vector<std::uint32_t>>& cycles) {
    IntegerSolution sol;
    for (const auto& c : cycles)
        for (std::size_t i = 0; i < c.size(); ++i)
            sol.chosen.push_back(edge_index(c[i], c[(i + 1) % c.size()]));
    std::sort(sol.chosen.begin(), sol.chosen.end());
    return sol;
}

Cycle make_cycle(std::vector<std::uint32_t> order) { return Cycle{std::move(order)}; }

} // namespace

TEST_CASE("extract_subtours splits a solution into its cycles") {
    auto two_triangles = cycles_to_solution({{0, 1, 2}, {3, 4, 5}});
    auto cycles = extract_subtours(two_triangles, 6);
    REQUIRE(cycles.size() == 2);
    REQUIRE(cycles[0].sorted_vertices() == std::vector<std::uint32_t>{0, 1, 2});
    REQUIRE(cycles[1].sorted_vertices() == std::vector<std::uint32_t>{3, 4, 5});

    auto tour = cycles_to_solution({{0, 3, 1, 4, 2}});
    auto tour_cycles = extract_subtours(tour, 5);
    REQUIRE(tour_cycles.size() == 1);
    REQUIRE(tour_cycles[0].size() == 5);

    auto three = cycles_to_solution({{0, 1, 2}, {3, 4, 5}, {6, 7, 8}});
    REQUIRE(extract_subtours(three, 9).size() == 3);
}

TEST_CASE("extract_subtours rejects degree violations") {
    IntegerSolution bad;
    bad.chosen = {edge_index(0, 1), edge_index(1, 2), edge_index(2, 0), edge_index(0, 3)};
    REQUIRE_THROWS_AS(extract_subtours(bad, 4), std::logic_error);
}

TEST_CASE("extracted cycles partition the vertex set, fuzzed") {
    SplitMix64 rng(17);
    for (int round = 0; round < 50; ++round) {
        // random cycle cover: shuffle, then chop into pieces of size >= 3
        const std::uint32_t n = 6 + static_cast<std::uint32_t>(rng.next_u64() % 10);
        std::vector<std::uint32_t> perm(n);
        std::iota(perm.begin(), perm.end(), 0u);
        for (std::uint32_t i = n - 1; i > 0; --i)
            std::swap(perm[i], perm[rng.next_u64() % (i + 1)]);
        std::vector<std::vector<std::uint32_t>> pieces;
        std::size_t at = 0;
        while (n - at >= 3) {
            std::size_t len = 3 + rng.next_u64() % 3;
            if (n - at - len < 3) len = n - at;
            pieces.emplace_back(perm.begin() + at, perm.begin() + at + len);
            at += len;
        }
        auto cycles = extract_subtours(cycles_to_solution(pieces), n);
        std::set<std::uint32_t> seen;
        std::size_t total = 0;
        for (const auto& c : cycles) {
            total += c.size();
            for (auto v : c.order) REQUIRE(seen.insert(v).second);
        }
        REQUIRE(total == n);
        REQUIRE(cycles.size() == pieces.size());
    }
}

TEST_CASE("pool deduplicates by canonical key") {
    SecPool pool;
    const std::uint32_t n = 6;
    REQUIRE(pool.add_violated({make_cycle({0, 1, 2})}, n, SecOrigin::iteration(1)) == 1);
    REQUIRE(pool.add_violated({make_cycle({2, 1, 0})}, n, SecOrigin::iteration(2)) == 0);
    // complement of {0,1,2} in 6 vertices
    REQUIRE(pool.add_violated({make_cycle({3, 4, 5})}, n, SecOrigin::iteration(2)) == 0);
    REQUIRE(pool.size() == 1);
    // a full tour contributes nothing
    REQUIRE(pool.add_violated({make_cycle({0, 1, 2, 3, 4, 5})}, n, SecOrigin::iteration(3)) == 0);
    REQUIRE(pool.size() == 1);
}

TEST_CASE("pool never holds two entries with one key, fuzzed") {
    SplitMix64 rng(23);
    SecPool pool;
    const std::uint32_t n = 9;
    for (int round = 0; round < 300; ++round) {
        std::vector<std::uint32_t> subset;
        for (std::uint32_t v = 0; v < n; ++v)
            if (rng.next_u64() & 1) subset.push_back(v);
        if (subset.size() < 3 || subset.size() > n - 1) continue;
        pool.insert(Sec(subset, n, SecOrigin::iteration(round)));
    }
    std::set<CanonicalKey> keys;
    for (std::size_t i = 0; i < pool.size(); ++i) REQUIRE(keys.insert(pool[i].key).second);
}

TEST_CASE("incumbent harvesting walks every incumbent") {
    SecPool pool;
    const std::uint32_t n = 6;
    REQUIRE(pool.harvest_incumbents({}, n) == 0);

    std::vector<IntegerSolution> incumbents{cycles_to_solution({{0, 1, 2}, {3, 4, 5}}),
                                            cycles_to_solution({{0, 1, 3}, {2, 4, 5}})};
    // the two solutions share complement-paired cycles
    REQUIRE(pool.harvest_incumbents(incumbents, n) == 2);
    REQUIRE(pool.size() == 2);
    for (std::size_t i = 0; i < pool.size(); ++i)
        REQUIRE(pool[i].origin.kind == SecOrigin::Kind::incumbent);
}

TEST_CASE("triangle seeding picks the shortest triangles") {
    auto inst = gen_random_euclidean(5, 11);
    REQUIRE(seed_triangle_secs(inst, 0.0).empty());
    auto all = seed_triangle_secs(inst, 1.0);
    REQUIRE(all.size() == 10); // C(5,3)
    for (const auto& sec : all) REQUIRE(sec.origin.kind == SecOrigin::Kind::seed_triangle);

    // perimeters are nondecreasing in the emitted order
    auto perimeter = [&](const Sec& s) {
        return inst.weight(s.subset[0], s.subset[1]) + inst.weight(s.subset[0], s.subset[2]) +
               inst.weight(s.subset[1], s.subset[2]);
    };
    for (std::size_t i = 1; i < all.size(); ++i)
        REQUIRE(perimeter(all[i - 1]) <= perimeter(all[i]));

    auto large = gen_random_euclidean(150, 3);
    REQUIRE(seed_triangle_secs(large, 0.001).size() == 551); // floor(C(150,3)/1000)
}

TEST_CASE("filter keeps the ceil(p k) smallest and never goes empty") {
    auto inst = gen_random_euclidean(12, 5);
    std::vector<Cycle> cycles{make_cycle({0, 1, 2, 3, 4}), make_cycle({5, 6, 7}),
                              make_cycle({8, 9, 10, 11})};
    auto identity = filter_subtours(cycles, 1.0, FilterKey::cardinality, inst);
    REQUIRE(identity.size() == 3);

    auto third = filter_subtours(cycles, 1.0 / 3.0, FilterKey::cardinality, inst);
    REQUIRE(third.size() == 1);
    REQUIRE(third[0].size() == 3);

    auto by_length = filter_subtours(cycles, 1.0 / 3.0, FilterKey::length, inst);
    REQUIRE(by_length.size() == 1);
    std::int64_t min_len = std::min({cycles[0].length(inst), cycles[1].length(inst),
                                     cycles[2].length(inst)});
    REQUIRE(by_length[0].length(inst) == min_len);

    REQUIRE_THROWS_AS(filter_subtours(cycles, 0.0, FilterKey::cardinality, inst),
                      std::invalid_argument);
}

TEST_CASE("hcd reconcile promotes regenerated considered entries") {
    SecPool pool;
    const std::uint32_t n = 9;
    pool.insert(Sec({0, 1, 2}, n, SecOrigin::cluster(1), SecStatus::considered));
    pool.insert(Sec({3, 4, 5}, n, SecOrigin::cluster(2), SecStatus::considered));
    pool.insert(Sec({6, 7, 8}, n, SecOrigin::cluster(3), SecStatus::fixed));

    auto promoted = pool.reconcile_considered({make_cycle({2, 0, 1})}, n);
    REQUIRE(promoted.size() == 1);
    REQUIRE(pool[promoted[0]].subset == std::vector<std::uint32_t>{0, 1, 2});
    REQUIRE(pool[promoted[0]].status == SecStatus::fixed);

    // the fixed entry stays fixed, the unregenerated considered one is dropped
    REQUIRE(pool.drop_considered() == 1);
    REQUIRE(pool.size() == 2);
    REQUIRE(pool.find(canonical_key({3, 4, 5}, n)) == std::nullopt);
    REQUIRE(pool.find(canonical_key({6, 7, 8}, n)).has_value());
}

TEST_CASE("pool dump lists status, origin and vertices per line") {
    SecPool pool;
    pool.insert(Sec({0, 1, 2}, 6, SecOrigin::iteration(2)));
    pool.insert(Sec({1, 2, 3}, 6, SecOrigin::seed_triangle(), SecStatus::considered));
    std::ostringstream out;
    pool.dump(out);
    REQUIRE(out.str() == "active iteration(2) 0 1 2\nconsidered seed_triangle 1 2 3\n");
}
