#pragma once

#include <cctype>
#include <cmath>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "itsp/errors.hpp"
#include "itsp/generate.hpp"
#include "itsp/instance.hpp"

namespace itsp {

// TSPLIB95 distance functions. The exact rounding of each rule matters:
// published optima are only reproducible bit by bit.

inline std::int64_t tsplib_euc_2d(const Point& a, const Point& b) {
    const double dx = a.x - b.x;
    const double dy = a.y - b.y;
    return nint(std::sqrt(dx * dx + dy * dy));
}

inline std::int64_t tsplib_ceil_2d(const Point& a, const Point& b) {
    const double dx = a.x - b.x;
    const double dy = a.y - b.y;
    return static_cast<std::int64_t>(std::ceil(std::sqrt(dx * dx + dy * dy)));
}

inline std::int64_t tsplib_att(const Point& a, const Point& b) {
    const double dx = a.x - b.x;
    const double dy = a.y - b.y;
    const double r = std::sqrt((dx * dx + dy * dy) / 10.0);
    const std::int64_t t = nint(r);
    return (static_cast<double>(t) < r) ? t + 1 : t;
}

namespace detail {
// Coordinates are DDD.MM (degrees and minutes); truncate to get the degrees,
// as in the TSPLIB95 FAQ reference code.
inline double geo_radians(double x) {
    constexpr double kPi = 3.141592;
    const double deg = std::trunc(x);
    const double min = x - deg;
    return kPi * (deg + 5.0 * min / 3.0) / 180.0;
}
} // namespace detail

inline std::int64_t tsplib_geo(const Point& a, const Point& b) {
    constexpr double kEarthRadius = 6378.388;
    const double lat_a = detail::geo_radians(a.x);
    const double lon_a = detail::geo_radians(a.y);
    const double lat_b = detail::geo_radians(b.x);
    const double lon_b = detail::geo_radians(b.y);
    const double q1 = std::cos(lon_a - lon_b);
    const double q2 = std::cos(lat_a - lat_b);
    const double q3 = std::cos(lat_a + lat_b);
    return static_cast<std::int64_t>(kEarthRadius * std::acos(0.5 * ((1.0 + q1) * q2 - (1.0 - q1) * q3)) + 1.0);
}

namespace detail {

inline std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return {};
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

struct TsplibHeader {
    std::string name = "unnamed";
    std::string type;
    std::string weight_type;
    std::string weight_format;
    std::uint32_t dimension = 0;
};

} // namespace detail

/// Parses a TSPLIB95 TSP entry. Supported EDGE_WEIGHT_TYPEs: EUC_2D,
/// CEIL_2D, ATT, GEO, EXPLICIT (FULL_MATRIX and the four ROW formats).
/// Anything else is rejected rather than approximated.
inline Instance parse_tsplib(const std::string& text) {
    std::vector<std::string> lines;
    {
        std::istringstream in(text);
        std::string line;
        while (std::getline(in, line)) lines.push_back(line);
    }

    detail::TsplibHeader hdr;
    std::vector<Point> coords;
    std::vector<bool> coord_seen;
    std::vector<std::int64_t> matrix_values;
    bool saw_coords = false;
    bool saw_matrix = false;

    std::size_t i = 0;
    const int total = static_cast<int>(lines.size());
    auto line_no = [&]() { return static_cast<int>(i) + 1; };

    // Pulls `count` numeric tokens starting after the current line.
    auto read_numbers = [&](std::size_t count, auto&& push) {
        std::size_t got = 0;
        while (got < count) {
            if (++i >= lines.size())
                throw ParseError("EDGE_WEIGHT_SECTION ended after " + std::to_string(got) +
                                     " of " + std::to_string(count) + " entries",
                                 total);
            std::istringstream ls(lines[i]);
            std::string tok;
            while (got < count && ls >> tok) {
                if (tok == "EOF")
                    throw ParseError("EDGE_WEIGHT_SECTION ended after " + std::to_string(got) +
                                         " of " + std::to_string(count) + " entries",
                                     line_no());
                try {
                    std::size_t pos = 0;
                    long long v = std::stoll(tok, &pos);
                    if (pos != tok.size()) throw std::invalid_argument(tok);
                    push(v);
                } catch (const std::exception&) {
                    throw ParseError("expected integer edge weight, got '" + tok + "'", line_no());
                }
                ++got;
            }
        }
    };

    for (; i < lines.size(); ++i) {
        std::string line = detail::trim(lines[i]);
        if (line.empty()) continue;
        if (line == "EOF") break;

        std::string keyword, value;
        if (auto colon = line.find(':'); colon != std::string::npos) {
            keyword = detail::trim(line.substr(0, colon));
            value = detail::trim(line.substr(colon + 1));
        } else {
            keyword = line;
        }

        if (keyword == "NAME") {
            hdr.name = value;
        } else if (keyword == "TYPE") {
            hdr.type = value;
            if (value != "TSP")
                throw ParseError("unsupported TYPE '" + value + "' (only TSP)", line_no());
        } else if (keyword == "COMMENT" || keyword == "DISPLAY_DATA_TYPE" ||
                   keyword == "NODE_COORD_TYPE") {
            // informational; nothing to keep
        } else if (keyword == "DIMENSION") {
            try {
                hdr.dimension = static_cast<std::uint32_t>(std::stoul(value));
            } catch (const std::exception&) {
                throw ParseError("bad DIMENSION '" + value + "'", line_no());
            }
        } else if (keyword == "EDGE_WEIGHT_TYPE") {
            hdr.weight_type = value;
            if (value != "EUC_2D" && value != "CEIL_2D" && value != "ATT" && value != "GEO" &&
                value != "EXPLICIT")
                throw ParseError("unsupported EDGE_WEIGHT_TYPE '" + value + "'", line_no());
        } else if (keyword == "EDGE_WEIGHT_FORMAT") {
            hdr.weight_format = value;
            if (value != "FULL_MATRIX" && value != "UPPER_ROW" && value != "LOWER_ROW" &&
                value != "UPPER_DIAG_ROW" && value != "LOWER_DIAG_ROW")
                throw ParseError("unsupported EDGE_WEIGHT_FORMAT '" + value + "'", line_no());
        } else if (keyword == "NODE_COORD_SECTION") {
            if (hdr.dimension == 0) throw ParseError("NODE_COORD_SECTION before DIMENSION", line_no());
            coords.assign(hdr.dimension, Point{});
            coord_seen.assign(hdr.dimension, false);
            for (std::uint32_t k = 0; k < hdr.dimension; ++k) {
                if (++i >= lines.size())
                    throw ParseError("NODE_COORD_SECTION ended after " + std::to_string(k) +
                                         " of " + std::to_string(hdr.dimension) + " nodes",
                                     total);
                std::istringstream ls(lines[i]);
                long long id;
                double x, y;
                if (!(ls >> id >> x >> y))
                    throw ParseError("bad node coordinate line '" + detail::trim(lines[i]) + "'",
                                     line_no());
                if (id < 1 || id > static_cast<long long>(hdr.dimension))
                    throw ParseError("node id " + std::to_string(id) + " out of range", line_no());
                coords[static_cast<std::size_t>(id - 1)] = Point{x, y};
                coord_seen[static_cast<std::size_t>(id - 1)] = true;
            }
            for (std::uint32_t k = 0; k < hdr.dimension; ++k)
                if (!coord_seen[k])
                    throw ParseError("node " + std::to_string(k + 1) + " has no coordinates",
                                     line_no());
            saw_coords = true;
        } else if (keyword == "EDGE_WEIGHT_SECTION") {
            if (hdr.dimension == 0) throw ParseError("EDGE_WEIGHT_SECTION before DIMENSION", line_no());
            const std::uint64_t n = hdr.dimension;
            std::uint64_t count = 0;
            if (hdr.weight_format == "FULL_MATRIX") count = n * n;
            else if (hdr.weight_format == "UPPER_ROW" || hdr.weight_format == "LOWER_ROW")
                count = n * (n - 1) / 2;
            else if (hdr.weight_format == "UPPER_DIAG_ROW" || hdr.weight_format == "LOWER_DIAG_ROW")
                count = n * (n + 1) / 2;
            else
                throw ParseError("EDGE_WEIGHT_SECTION without a supported EDGE_WEIGHT_FORMAT",
                                 line_no());
            matrix_values.reserve(count);
            read_numbers(count, [&](long long v) { matrix_values.push_back(v); });
            saw_matrix = true;
        } else if (keyword == "DISPLAY_DATA_SECTION") {
            if (hdr.dimension == 0) throw ParseError("DISPLAY_DATA_SECTION before DIMENSION", line_no());
            i += hdr.dimension; // display coordinates are not used
            if (i >= lines.size())
                throw ParseError("DISPLAY_DATA_SECTION shorter than DIMENSION", total);
        } else {
            throw ParseError("unsupported keyword '" + keyword + "'", line_no());
        }
    }

    if (hdr.dimension < 3) throw ParseError("DIMENSION must be at least 3", total);
    if (hdr.weight_type.empty()) throw ParseError("missing EDGE_WEIGHT_TYPE", total);

    const std::uint32_t n = hdr.dimension;
    std::vector<std::int64_t> weights(edge_count(n), 0);

    if (hdr.weight_type == "EXPLICIT") {
        if (!saw_matrix) throw ParseError("EXPLICIT instance without EDGE_WEIGHT_SECTION", total);
        auto at = [&](std::uint32_t r, std::uint32_t c) { return matrix_values[std::size_t(r) * n + c]; };
        if (hdr.weight_format == "FULL_MATRIX") {
            for (std::uint32_t v = 1; v < n; ++v)
                for (std::uint32_t u = 0; u < v; ++u) {
                    if (at(u, v) != at(v, u))
                        throw ParseError("FULL_MATRIX is not symmetric at (" + std::to_string(u + 1) +
                                             "," + std::to_string(v + 1) + ")",
                                         total);
                    weights[edge_index(u, v)] = at(u, v);
                }
        } else {
            std::size_t pos = 0;
            auto take = [&]() { return matrix_values[pos++]; };
            if (hdr.weight_format == "UPPER_ROW") {
                for (std::uint32_t u = 0; u < n; ++u)
                    for (std::uint32_t v = u + 1; v < n; ++v) weights[edge_index(u, v)] = take();
            } else if (hdr.weight_format == "LOWER_ROW") {
                for (std::uint32_t v = 1; v < n; ++v)
                    for (std::uint32_t u = 0; u < v; ++u) weights[edge_index(u, v)] = take();
            } else if (hdr.weight_format == "UPPER_DIAG_ROW") {
                for (std::uint32_t u = 0; u < n; ++u)
                    for (std::uint32_t v = u; v < n; ++v) {
                        auto w = take();
                        if (v > u) weights[edge_index(u, v)] = w;
                    }
            } else { // LOWER_DIAG_ROW
                for (std::uint32_t v = 0; v < n; ++v)
                    for (std::uint32_t u = 0; u <= v; ++u) {
                        auto w = take();
                        if (u < v) weights[edge_index(u, v)] = w;
                    }
            }
        }
        for (auto w : weights)
            if (w < 0) throw ParseError("negative edge weight in EDGE_WEIGHT_SECTION", total);
        return Instance(hdr.name, Source::tsplib, n, std::move(weights),
                        saw_coords ? std::optional(coords) : std::nullopt);
    }

    if (!saw_coords)
        throw ParseError(hdr.weight_type + " instance without NODE_COORD_SECTION", total);
    std::int64_t (*dist)(const Point&, const Point&) = nullptr;
    if (hdr.weight_type == "EUC_2D") dist = &tsplib_euc_2d;
    else if (hdr.weight_type == "CEIL_2D") dist = &tsplib_ceil_2d;
    else if (hdr.weight_type == "ATT") dist = &tsplib_att;
    else dist = &tsplib_geo;
    for (std::uint32_t v = 1; v < n; ++v)
        for (std::uint32_t u = 0; u < v; ++u)
            weights[edge_index(u, v)] = dist(coords[u], coords[v]);
    return Instance(hdr.name, Source::tsplib, n, std::move(weights), std::move(coords));
}

/// Writes the instance as an EXPLICIT/UPPER_ROW TSPLIB entry. parse_tsplib
/// on the result reproduces the weight array bit-exactly.
inline std::string render_tsplib_explicit(const Instance& inst) {
    std::ostringstream out;
    out << "NAME: " << inst.name() << "\n";
    out << "TYPE: TSP\n";
    out << "DIMENSION: " << inst.n() << "\n";
    out << "EDGE_WEIGHT_TYPE: EXPLICIT\n";
    out << "EDGE_WEIGHT_FORMAT: UPPER_ROW\n";
    out << "EDGE_WEIGHT_SECTION\n";
    for (std::uint32_t u = 0; u < inst.n(); ++u) {
        bool first = true;
        for (std::uint32_t v = u + 1; v < inst.n(); ++v) {
            out << (first ? "" : " ") << inst.weight(u, v);
            first = false;
        }
        if (!first) out << "\n";
    }
    out << "EOF\n";
    return out.str();
}

} // namespace itsp
