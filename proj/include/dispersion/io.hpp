#pragma once

// Serialization of point sets, boxes and reports.
//
// Point CSV: header "x1,...,xd", one point per row, LF line endings.
// Point JSON: array of arrays. Boxes: {"family": "axis"|"periodic",
// "intervals": [...]} with {"lower","upper"} records for axis boxes and
// {"kind":"arc","x","y"} / {"kind":"coarc","y","x"} records for periodic ones.
// Floating-point output always uses 17 significant digits.

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "exact.hpp"
#include "geometry.hpp"

namespace dispersion {

using Json = nlohmann::ordered_json;

class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

namespace detail {

inline std::vector<std::string_view> split_commas(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = line.find(',', start);
        out.push_back(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

inline double parse_double(std::string_view s, std::size_t line_no) {
    s = trim(s);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size())
        throw ParseError("line " + std::to_string(line_no) + ": invalid number '" + std::string(s) + "'");
    return v;
}

inline void write_number(std::ostream& os, double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    os << buf;
}

}  // namespace detail

inline PointSet read_points_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line)) throw ParseError("empty CSV input: missing header");
    const auto header = detail::split_commas(detail::trim(line));
    const std::size_t d = header.size();
    for (std::size_t k = 0; k < d; ++k)
        if (detail::trim(header[k]) != "x" + std::to_string(k + 1))
            throw ParseError("CSV header must be x1,...,xd");
    std::vector<double> data;
    std::size_t line_no = 1;
    while (std::getline(is, line)) {
        ++line_no;
        const auto t = detail::trim(line);
        if (t.empty()) continue;
        const auto cells = detail::split_commas(t);
        if (cells.size() != d)
            throw ParseError("line " + std::to_string(line_no) + ": expected " + std::to_string(d) + " columns");
        for (auto c : cells) data.push_back(detail::parse_double(c, line_no));
    }
    return PointSet(d, std::move(data));
}

inline void write_points_csv(std::ostream& os, const PointSet& P) {
    for (std::size_t k = 0; k < P.dim(); ++k) os << (k ? "," : "") << 'x' << (k + 1);
    os << '\n';
    for (std::size_t i = 0; i < P.size(); ++i) {
        for (std::size_t k = 0; k < P.dim(); ++k) {
            if (k) os << ',';
            detail::write_number(os, P.coord(i, k));
        }
        os << '\n';
    }
}

inline Json points_to_json(const PointSet& P) {
    Json arr = Json::array();
    for (std::size_t i = 0; i < P.size(); ++i) {
        Json row = Json::array();
        for (double c : P[i]) row.push_back(c);
        arr.push_back(std::move(row));
    }
    return arr;
}

/// An empty array needs the dimension from the caller.
inline PointSet points_from_json(const Json& j, std::size_t dim_if_empty = 0) {
    if (!j.is_array()) throw ParseError("point JSON must be an array of arrays");
    if (j.empty()) {
        if (dim_if_empty == 0) throw ParseError("empty point array: dimension unknown");
        return PointSet(dim_if_empty);
    }
    std::vector<std::vector<double>> rows;
    for (const auto& r : j) {
        if (!r.is_array()) throw ParseError("point JSON must be an array of arrays");
        rows.push_back(r.get<std::vector<double>>());
    }
    return PointSet::from_rows(rows, rows.front().size());
}

inline Json box_to_json(const AxisBox& b) {
    Json ivs = Json::array();
    for (std::size_t k = 0; k < b.dim(); ++k) ivs.push_back(Json{{"lower", b.lower[k]}, {"upper", b.upper[k]}});
    return Json{{"family", "axis"}, {"intervals", std::move(ivs)}};
}

inline Json box_to_json(const PeriodicBox& b) {
    Json ivs = Json::array();
    for (const auto& iv : b.intervals) {
        if (const auto* a = std::get_if<Arc>(&iv))
            ivs.push_back(Json{{"kind", "arc"}, {"x", a->x}, {"y", a->y}});
        else {
            const auto& c = std::get<CoArc>(iv);
            ivs.push_back(Json{{"kind", "coarc"}, {"y", c.y}, {"x", c.x}});
        }
    }
    return Json{{"family", "periodic"}, {"intervals", std::move(ivs)}};
}

inline std::variant<AxisBox, PeriodicBox> box_from_json(const Json& j) {
    const auto fam = parse_family(j.at("family").get<std::string>());
    const auto& ivs = j.at("intervals");
    if (fam == Family::axis) {
        std::vector<double> lo, hi;
        for (const auto& iv : ivs) {
            lo.push_back(iv.at("lower").get<double>());
            hi.push_back(iv.at("upper").get<double>());
        }
        return AxisBox(std::move(lo), std::move(hi));
    }
    std::vector<AxisInterval> out;
    for (const auto& iv : ivs) {
        const auto kind = iv.at("kind").get<std::string>();
        if (kind == "arc")
            out.emplace_back(Arc{iv.at("x").get<double>(), iv.at("y").get<double>()});
        else if (kind == "coarc")
            out.emplace_back(CoArc{iv.at("y").get<double>(), iv.at("x").get<double>()});
        else
            throw ParseError("unknown interval kind '" + kind + "'");
    }
    return PeriodicBox(std::move(out));
}

inline Json report_to_json(const DispersionReport& r, double elapsed_ms) {
    Json j;
    j["family"] = std::string(to_string(r.family));
    j["value"] = r.value;
    j["witness"] = std::visit([](const auto& b) { return box_to_json(b); }, r.witness);
    j["n"] = r.n;
    j["d"] = r.d;
    j["elapsed_ms"] = elapsed_ms;
    return j;
}

/// Compact JSON text with doubles printed to 17 significant digits.
inline void write_json(std::ostream& os, const Json& j) {
    switch (j.type()) {
        case Json::value_t::object: {
            os << '{';
            bool first = true;
            for (auto it = j.begin(); it != j.end(); ++it) {
                if (!first) os << ',';
                first = false;
                os << Json(it.key()).dump() << ':';
                write_json(os, it.value());
            }
            os << '}';
            break;
        }
        case Json::value_t::array: {
            os << '[';
            for (std::size_t i = 0; i < j.size(); ++i) {
                if (i) os << ',';
                write_json(os, j[i]);
            }
            os << ']';
            break;
        }
        case Json::value_t::number_float: {
            const double v = j.get<double>();
            if (std::isfinite(v))
                detail::write_number(os, v);
            else
                os << "null";
            break;
        }
        default:
            os << j.dump();
    }
}

inline std::string to_json_text(const Json& j) {
    std::ostringstream os;
    write_json(os, j);
    return os.str();
}

/// Reads a point file; ".json" selects JSON, anything else CSV.
inline PointSet read_points_file(const std::string& path, std::size_t dim_if_empty = 0) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    if (path.size() >= 5 && path.compare(path.size() - 5, 5, ".json") == 0)
        return points_from_json(Json::parse(in), dim_if_empty);
    return read_points_csv(in);
}

}  // namespace dispersion
