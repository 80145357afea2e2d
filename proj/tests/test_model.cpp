#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <numeric>
#include <set>

#include "itsp/generate.hpp"
#include "itsp/model.hpp"
#include "itsp/rng.hpp"

using namespace itsp;

namespace {

// all degree-2 edge sets of K_n, by recursive cycle-cover construction
void all_two_matchings(std::uint32_t n, std::vector<std::vector<std::uint32_t>>& out) {
    std::vector<bool> used(n, false);
    std::vector<std::uint32_t> path;
    std::vector<std::uint32_t> edges;

    auto next_free = [&]() {
        for (std::uint32_t v = 0; v < n; ++v)
            if (!used[v]) return v;
        return n;
    };
    auto cover = [&](auto&& self) -> void {
        const std::uint32_t r = next_free();
        if (r == n) {
            auto sorted = edges;
            std::sort(sorted.begin(), sorted.end());
            out.push_back(std::move(sorted));
            return;
        }
        used[r] = true;
        path.assign(1, r);
        auto grow = [&](auto&& grow_self) -> void {
            for (std::uint32_t v = r + 1; v < n; ++v) {
                if (used[v]) continue;
                path.push_back(v);
                used[v] = true;
                if (path.size() >= 3 && path[1] < path.back()) {
                    const auto saved = path;
                    for (std::size_t i = 0; i < saved.size(); ++i)
                        edges.push_back(edge_index(saved[i], saved[(i + 1) % saved.size()]));
                    self(self);
                    edges.resize(edges.size() - saved.size());
                    path = saved;
                }
                grow_self(grow_self);
                used[v] = false;
                path.pop_back();
            }
        };
        grow(grow);
        used[r] = false;
    };
    cover(cover);
}

bool satisfies(const LinearConstraint& row, const std::vector<std::uint32_t>& edge_set) {
    std::int64_t lhs = 0;
    std::set<std::uint32_t> chosen(edge_set.begin(), edge_set.end());
    for (const auto& [e, c] : row.terms) lhs += c * (chosen.count(e) ? 1 : 0);
    switch (row.sense) {
        case Sense::le: return lhs <= row.rhs;
        case Sense::ge: return lhs >= row.rhs;
        case Sense::eq: return lhs == row.rhs;
    }
    return false;
}

} // namespace

TEST_CASE("base model shape") {
    Instance tri("tri", Source::explicit_matrix, 3, {5, 7, 9});
    auto model = build_base_model(tri);
    REQUIRE(model.degree_rows.size() == 3);
    REQUIRE(model.var_count() == 3);
    REQUIRE(model.sec_rows.empty());
    for (const auto& row : model.degree_rows) {
        REQUIRE(row.sense == Sense::eq);
        REQUIRE(row.rhs == 2);
        REQUIRE(row.terms.size() == 2);
    }

    auto five = gen_random_euclidean(5, 1);
    auto m5 = build_base_model(five);
    REQUIRE(m5.degree_rows.size() == 5);
    REQUIRE(m5.var_count() == 10);
}

TEST_CASE("sec_row forms and the hybrid threshold") {
    const std::uint32_t n = 10;
    Sec small({0, 1, 2}, n, SecOrigin::iteration(1));
    auto packing = sec_row(small, SecForm::packing, n);
    REQUIRE(packing.terms.size() == 3);
    REQUIRE(packing.sense == Sense::le);
    REQUIRE(packing.rhs == 2);

    Sec big({0, 1, 2, 3, 4, 5, 6, 7}, n, SecOrigin::iteration(1));
    auto hybrid_big = sec_row(big, SecForm::hybrid, n);
    REQUIRE(hybrid_big.sense == Sense::ge); // 8 > (2*10+1)/3 = 7
    REQUIRE(hybrid_big.terms.size() == 8 * 2);
    REQUIRE(hybrid_big.rhs == 2);

    Sec boundary({0, 1, 2, 3, 4, 5, 6}, n, SecOrigin::iteration(1));
    auto hybrid_boundary = sec_row(boundary, SecForm::hybrid, n);
    REQUIRE(hybrid_boundary.sense == Sense::le); // 7 <= 7: still the packing side
    REQUIRE(hybrid_boundary.terms.size() == 7 * 6 / 2);

    auto cut = sec_row(small, SecForm::cut, n);
    REQUIRE(cut.sense == Sense::ge);
    REQUIRE(cut.terms.size() == 3 * 7);
}

TEST_CASE("hybrid always picks the sparser row") {
    for (std::uint32_t n = 6; n <= 40; ++n) {
        for (std::uint32_t s = 3; s <= n - 1; ++s) {
            std::vector<std::uint32_t> subset(s);
            std::iota(subset.begin(), subset.end(), 0u);
            Sec sec(std::move(subset), n, SecOrigin::iteration(1));
            const auto chosen = sec_row(sec, SecForm::hybrid, n);
            const std::size_t packing_terms = std::size_t{s} * (s - 1) / 2;
            const std::size_t cut_terms = std::size_t{s} * (n - s);
            const std::size_t other =
                chosen.sense == Sense::le ? cut_terms : packing_terms;
            REQUIRE(chosen.terms.size() <= other);
            const bool at_threshold = 3 * s == 2 * n + 1;
            if (chosen.terms.size() == other) REQUIRE(at_threshold);
        }
    }
}

TEST_CASE("canonical keys identify complements") {
    REQUIRE(canonical_key({0, 1}, 5) == canonical_key({2, 3, 4}, 5));
    REQUIRE(canonical_key({0, 1, 2}, 6) == std::vector<std::uint32_t>{0, 1, 2});
    REQUIRE(canonical_key({3, 4, 5}, 6) == std::vector<std::uint32_t>{0, 1, 2});
    REQUIRE(canonical_key({0, 2, 4}, 6) != canonical_key({0, 1, 2}, 6));
    REQUIRE_THROWS_AS(canonical_key({}, 5), std::invalid_argument);
    REQUIRE_THROWS_AS(canonical_key({0, 1, 2, 3, 4}, 5), std::invalid_argument);
}

TEST_CASE("canonical key is stable under complementation, fuzzed") {
    SplitMix64 rng(99);
    for (int round = 0; round < 200; ++round) {
        const std::uint32_t n = 4 + static_cast<std::uint32_t>(rng.next_u64() % 12);
        std::vector<std::uint32_t> subset;
        for (std::uint32_t v = 0; v < n; ++v)
            if (rng.next_u64() & 1) subset.push_back(v);
        if (subset.empty() || subset.size() == n) continue;
        std::vector<std::uint32_t> complement;
        for (std::uint32_t v = 0; v < n; ++v)
            if (std::find(subset.begin(), subset.end(), v) == subset.end())
                complement.push_back(v);
        const auto key = canonical_key(subset, n);
        REQUIRE(key == canonical_key(complement, n));
        REQUIRE(canonical_key(key, n) == key);
    }
}

TEST_CASE("packing and cut rows admit exactly the same 2-matchings") {
    SplitMix64 rng(5);
    for (std::uint32_t n = 5; n <= 7; ++n) {
        std::vector<std::vector<std::uint32_t>> matchings;
        all_two_matchings(n, matchings);
        for (int round = 0; round < 12; ++round) {
            std::vector<std::uint32_t> subset;
            for (std::uint32_t v = 0; v < n; ++v)
                if (rng.next_u64() & 1) subset.push_back(v);
            if (subset.size() < 3 || subset.size() > n - 1) continue;
            Sec sec(subset, n, SecOrigin::iteration(1));
            const auto packing = sec_row(sec, SecForm::packing, n);
            const auto cut = sec_row(sec, SecForm::cut, n);
            for (const auto& m : matchings)
                REQUIRE(satisfies(packing, m) == satisfies(cut, m));
        }
    }
}

TEST_CASE("sec subset size limits") {
    REQUIRE_THROWS_AS(Sec({0, 1}, 5, SecOrigin::incumbent()), std::invalid_argument);
    REQUIRE_THROWS_AS(Sec({0, 1, 2, 3, 4}, 5, SecOrigin::incumbent()), std::invalid_argument);
}
