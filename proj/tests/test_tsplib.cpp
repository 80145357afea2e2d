#include <catch2/catch_amalgamated.hpp>

#include <string>

#include "itsp/generate.hpp"
#include "itsp/tsplib.hpp"

using namespace itsp;

namespace {

std::string euc_entry(const std::string& body) {
    return "NAME: t\nTYPE: TSP\nDIMENSION: 3\nEDGE_WEIGHT_TYPE: EUC_2D\nNODE_COORD_SECTION\n" +
           body + "EOF\n";
}

} // namespace

TEST_CASE("EUC_2D rounding") {
    auto inst = parse_tsplib(euc_entry("1 0 0\n2 3 4\n3 0 1\n"));
    REQUIRE(inst.n() == 3);
    REQUIRE(inst.weight(0, 1) == 5); // exact 3-4-5
    REQUIRE(inst.weight(0, 2) == 1);

    auto diag = parse_tsplib(euc_entry("1 0 0\n2 1 1\n3 5 5\n"));
    REQUIRE(diag.weight(0, 1) == 1); // nint(1.4142...) = 1
    REQUIRE(diag.weight(0, 2) == 7); // nint(7.071...) = 7
}

TEST_CASE("CEIL_2D rounds up") {
    std::string text =
        "TYPE: TSP\nDIMENSION: 3\nEDGE_WEIGHT_TYPE: CEIL_2D\nNODE_COORD_SECTION\n"
        "1 0 0\n2 1 1\n3 0 3\nEOF\n";
    auto inst = parse_tsplib(text);
    REQUIRE(inst.weight(0, 1) == 2); // ceil(1.414...)
    REQUIRE(inst.weight(0, 2) == 3);
}

TEST_CASE("ATT pseudo-Euclidean rule") {
    std::string text =
        "TYPE: TSP\nDIMENSION: 3\nEDGE_WEIGHT_TYPE: ATT\nNODE_COORD_SECTION\n"
        "1 0 0\n2 10 0\n3 0 7\nEOF\n";
    auto inst = parse_tsplib(text);
    // r = sqrt(100/10) = 3.1622..; nint = 3 < r so 4
    REQUIRE(inst.weight(0, 1) == 4);
    // r = sqrt(49/10) = 2.2135..; nint = 2 < r so 3
    REQUIRE(inst.weight(0, 2) == 3);
}

TEST_CASE("GEO distances") {
    // TSPLIB95 geographical rule: DDD.MM coordinates, truncated degrees,
    // RRR * acos(...) + 1 truncated. Identical coordinates give 1, not 0:
    // the formula's +1 survives the truncation.
    std::string text =
        "TYPE: TSP\nDIMENSION: 3\nEDGE_WEIGHT_TYPE: GEO\nNODE_COORD_SECTION\n"
        "1 48.23 10.53\n2 48.23 10.53\n3 16.47 96.10\nEOF\n";
    auto inst = parse_tsplib(text);
    REQUIRE(inst.weight(0, 1) == 1);
    REQUIRE(inst.weight(0, 2) == inst.weight(1, 2));
    REQUIRE(inst.weight(0, 2) > 7000); // Augsburg to Rangoon, sanity range
    REQUIRE(inst.weight(0, 2) < 9500);
}

TEST_CASE("EXPLICIT formats agree") {
    // the same 4-vertex matrix in every supported layout
    const std::string full =
        "TYPE: TSP\nDIMENSION: 4\nEDGE_WEIGHT_TYPE: EXPLICIT\nEDGE_WEIGHT_FORMAT: FULL_MATRIX\n"
        "EDGE_WEIGHT_SECTION\n0 1 2 3\n1 0 4 5\n2 4 0 6\n3 5 6 0\nEOF\n";
    const std::string upper =
        "TYPE: TSP\nDIMENSION: 4\nEDGE_WEIGHT_TYPE: EXPLICIT\nEDGE_WEIGHT_FORMAT: UPPER_ROW\n"
        "EDGE_WEIGHT_SECTION\n1 2 3\n4 5\n6\nEOF\n";
    const std::string lower =
        "TYPE: TSP\nDIMENSION: 4\nEDGE_WEIGHT_TYPE: EXPLICIT\nEDGE_WEIGHT_FORMAT: LOWER_ROW\n"
        "EDGE_WEIGHT_SECTION\n1\n2 4\n3 5 6\nEOF\n";
    const std::string upper_diag =
        "TYPE: TSP\nDIMENSION: 4\nEDGE_WEIGHT_TYPE: EXPLICIT\nEDGE_WEIGHT_FORMAT: UPPER_DIAG_ROW\n"
        "EDGE_WEIGHT_SECTION\n0 1 2 3\n0 4 5\n0 6\n0\nEOF\n";
    const std::string lower_diag =
        "TYPE: TSP\nDIMENSION: 4\nEDGE_WEIGHT_TYPE: EXPLICIT\nEDGE_WEIGHT_FORMAT: LOWER_DIAG_ROW\n"
        "EDGE_WEIGHT_SECTION\n0\n1 0\n2 4 0\n3 5 6 0\nEOF\n";

    auto reference = parse_tsplib(full);
    for (const auto* text : {&upper, &lower, &upper_diag, &lower_diag}) {
        auto inst = parse_tsplib(*text);
        REQUIRE(inst.weights() == reference.weights());
    }
    REQUIRE(reference.weight(1, 3) == 5);
}

TEST_CASE("asymmetric FULL_MATRIX is rejected") {
    const std::string text =
        "TYPE: TSP\nDIMENSION: 3\nEDGE_WEIGHT_TYPE: EXPLICIT\nEDGE_WEIGHT_FORMAT: FULL_MATRIX\n"
        "EDGE_WEIGHT_SECTION\n0 1 2\n9 0 3\n2 3 0\nEOF\n";
    REQUIRE_THROWS_AS(parse_tsplib(text), ParseError);
}

TEST_CASE("unsupported keywords name the line") {
    const std::string text = "TYPE: TSP\nDIMENSION: 3\nWEIRD_KEYWORD: yes\n";
    try {
        parse_tsplib(text);
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        REQUIRE(std::string(e.what()).find("WEIRD_KEYWORD") != std::string::npos);
        REQUIRE(e.line() == 3);
    }
    REQUIRE_THROWS_AS(
        parse_tsplib("TYPE: TSP\nDIMENSION: 3\nEDGE_WEIGHT_TYPE: MAX_2D\n"), ParseError);
    REQUIRE_THROWS_AS(parse_tsplib("TYPE: ATSP\nDIMENSION: 3\n"), ParseError);
}

TEST_CASE("dimension mismatches are structural errors") {
    REQUIRE_THROWS_AS(parse_tsplib(euc_entry("1 0 0\n2 3 4\n")), ParseError); // one node short
    const std::string short_matrix =
        "TYPE: TSP\nDIMENSION: 4\nEDGE_WEIGHT_TYPE: EXPLICIT\nEDGE_WEIGHT_FORMAT: UPPER_ROW\n"
        "EDGE_WEIGHT_SECTION\n1 2 3\n4\nEOF\n";
    REQUIRE_THROWS_AS(parse_tsplib(short_matrix), ParseError);
}

TEST_CASE("display data section is tolerated and skipped") {
    const std::string text =
        "TYPE: TSP\nDIMENSION: 3\nEDGE_WEIGHT_TYPE: EXPLICIT\nEDGE_WEIGHT_FORMAT: UPPER_ROW\n"
        "DISPLAY_DATA_TYPE: TWOD_DISPLAY\n"
        "EDGE_WEIGHT_SECTION\n1 2\n3\n"
        "DISPLAY_DATA_SECTION\n1 0 0\n2 1 0\n3 0 1\nEOF\n";
    auto inst = parse_tsplib(text);
    REQUIRE(inst.weight(1, 2) == 3);
    REQUIRE_FALSE(inst.coords().has_value());
}

TEST_CASE("explicit render round-trips bit-exactly") {
    for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
        auto inst = gen_random_euclidean(9, seed);
        auto back = parse_tsplib(render_tsplib_explicit(inst));
        REQUIRE(back.n() == inst.n());
        REQUIRE(back.name() == inst.name());
        REQUIRE(back.weights() == inst.weights());
    }
}
