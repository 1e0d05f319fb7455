#pragma once

#include <algorithm>
#include <cmath>
#include <compare>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace dispersion {

class DimensionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

enum class Family { axis, periodic };

inline std::string_view to_string(Family f) {
    return f == Family::axis ? "axis" : "periodic";
}

inline Family parse_family(std::string_view s) {
    if (s == "axis" || s == "ex") return Family::axis;
    if (s == "periodic" || s == "per") return Family::periodic;
    throw std::invalid_argument("unknown family '" + std::string(s) + "'");
}

inline bool in_unit_interval(double c) { return c >= 0.0 && c <= 1.0; }

/// A point of the unit cube [0,1]^d.
class Point {
public:
    explicit Point(std::vector<double> coords) : coords_(std::move(coords)) {
        if (coords_.empty()) throw DimensionError("point dimension must be >= 1");
        for (double c : coords_)
            if (!in_unit_interval(c))
                throw std::invalid_argument("point coordinate outside [0,1]: " + std::to_string(c));
    }
    Point(std::initializer_list<double> coords) : Point(std::vector<double>(coords)) {}

    std::size_t dim() const { return coords_.size(); }
    double operator[](std::size_t k) const { return coords_[k]; }
    std::span<const double> coords() const { return coords_; }

    friend bool operator==(const Point&, const Point&) = default;

private:
    std::vector<double> coords_;
};

/// Immutable collection of n points sharing one dimension d. Stored row-major.
class PointSet {
public:
    /// Empty set of dimension d.
    explicit PointSet(std::size_t d) : d_(d) {
        if (d_ == 0) throw DimensionError("point set dimension must be >= 1");
    }

    PointSet(std::size_t d, std::vector<double> row_major) : d_(d), data_(std::move(row_major)) {
        if (d_ == 0) throw DimensionError("point set dimension must be >= 1");
        if (data_.size() % d_ != 0)
            throw DimensionError("coordinate count is not a multiple of the dimension");
        for (double c : data_)
            if (!in_unit_interval(c))
                throw std::invalid_argument("point coordinate outside [0,1]: " + std::to_string(c));
    }

    PointSet(std::size_t d, const std::vector<Point>& points) : d_(d) {
        if (d_ == 0) throw DimensionError("point set dimension must be >= 1");
        data_.reserve(points.size() * d);
        for (const auto& p : points) {
            if (p.dim() != d_) throw DimensionError("all points must share one dimension");
            data_.insert(data_.end(), p.coords().begin(), p.coords().end());
        }
    }

    static PointSet from_rows(const std::vector<std::vector<double>>& rows, std::size_t d) {
        std::vector<double> flat;
        flat.reserve(rows.size() * d);
        for (const auto& r : rows) {
            if (r.size() != d) throw DimensionError("all points must share one dimension");
            flat.insert(flat.end(), r.begin(), r.end());
        }
        return PointSet(d, std::move(flat));
    }

    std::size_t dim() const { return d_; }
    std::size_t size() const { return d_ == 0 ? 0 : data_.size() / d_; }
    bool empty() const { return data_.empty(); }

    std::span<const double> operator[](std::size_t i) const {
        return std::span<const double>(data_).subspan(i * d_, d_);
    }
    double coord(std::size_t i, std::size_t k) const { return data_[i * d_ + k]; }
    std::span<const double> data() const { return data_; }

    /// Copy with one extra point appended.
    PointSet with_point(std::span<const double> p) const {
        if (p.size() != d_) throw DimensionError("point dimension mismatch");
        auto copy = data_;
        copy.insert(copy.end(), p.begin(), p.end());
        return PointSet(d_, std::move(copy));
    }

    /// Copy with coordinate axes reordered: new axis k is old axis perm[k].
    PointSet permute_axes(std::span<const std::size_t> perm) const {
        if (perm.size() != d_) throw DimensionError("permutation length mismatch");
        std::vector<double> out(data_.size());
        for (std::size_t i = 0; i < size(); ++i)
            for (std::size_t k = 0; k < d_; ++k) out[i * d_ + k] = data_[i * d_ + perm[k]];
        return PointSet(d_, std::move(out));
    }

    friend bool operator==(const PointSet&, const PointSet&) = default;

private:
    std::size_t d_;
    std::vector<double> data_;
};

/// Half-open axis-parallel box prod_k [lower_k, upper_k).
struct AxisBox {
    std::vector<double> lower;
    std::vector<double> upper;

    AxisBox() = default;
    AxisBox(std::vector<double> lo, std::vector<double> hi) : lower(std::move(lo)), upper(std::move(hi)) {
        if (lower.size() != upper.size() || lower.empty())
            throw DimensionError("box corners must have equal nonzero dimension");
        for (std::size_t k = 0; k < lower.size(); ++k)
            if (!(0.0 <= lower[k] && lower[k] < upper[k] && upper[k] <= 1.0))
                throw std::invalid_argument("axis box requires 0 <= lower < upper <= 1 on every axis");
    }

    static AxisBox unit(std::size_t d) {
        return AxisBox(std::vector<double>(d, 0.0), std::vector<double>(d, 1.0));
    }

    std::size_t dim() const { return lower.size(); }

    friend bool operator==(const AxisBox&, const AxisBox&) = default;
    friend auto operator<=>(const AxisBox&, const AxisBox&) = default;
};

/// Open arc (x, y) with x < y.
struct Arc {
    double x;
    double y;
    friend bool operator==(const Arc&, const Arc&) = default;
    friend auto operator<=>(const Arc&, const Arc&) = default;
};

/// Complement [0,1] \ [y, x] with y <= x. y == x removes a single point.
struct CoArc {
    double y;
    double x;
    friend bool operator==(const CoArc&, const CoArc&) = default;
    friend auto operator<=>(const CoArc&, const CoArc&) = default;
};

using AxisInterval = std::variant<Arc, CoArc>;

inline void validate(const AxisInterval& iv) {
    if (const auto* a = std::get_if<Arc>(&iv)) {
        if (!(0.0 <= a->x && a->x < a->y && a->y <= 1.0))
            throw std::invalid_argument("arc requires 0 <= x < y <= 1");
    } else {
        const auto& c = std::get<CoArc>(iv);
        if (!(0.0 <= c.y && c.y <= c.x && c.x <= 1.0))
            throw std::invalid_argument("co-arc requires 0 <= y <= x <= 1");
    }
}

/// The per-axis periodic interval I(x, y): an arc when x < y, else a complement.
inline AxisInterval periodic_interval(double x, double y) {
    if (x < y) return Arc{x, y};
    return CoArc{y, x};
}

inline double measure(const AxisInterval& iv) {
    if (const auto* a = std::get_if<Arc>(&iv)) return a->y - a->x;
    const auto& c = std::get<CoArc>(iv);
    return 1.0 - (c.x - c.y);
}

inline bool contains(const AxisInterval& iv, double p) {
    if (const auto* a = std::get_if<Arc>(&iv)) return a->x < p && p < a->y;
    const auto& c = std::get<CoArc>(iv);
    return p < c.y || p > c.x;
}

/// Product of per-axis periodic intervals: an element of the torus box family.
struct PeriodicBox {
    std::vector<AxisInterval> intervals;

    PeriodicBox() = default;
    explicit PeriodicBox(std::vector<AxisInterval> ivs) : intervals(std::move(ivs)) {
        if (intervals.empty()) throw DimensionError("periodic box dimension must be >= 1");
        for (const auto& iv : intervals) validate(iv);
    }

    std::size_t dim() const { return intervals.size(); }

    friend bool operator==(const PeriodicBox&, const PeriodicBox&) = default;
};

inline PeriodicBox to_periodic(const AxisBox& b) {
    std::vector<AxisInterval> ivs;
    ivs.reserve(b.dim());
    for (std::size_t k = 0; k < b.dim(); ++k) ivs.emplace_back(Arc{b.lower[k], b.upper[k]});
    return PeriodicBox(std::move(ivs));
}

inline bool contains(const AxisBox& b, std::span<const double> p) {
    if (p.size() != b.dim()) throw DimensionError("box and point dimensions differ");
    for (std::size_t k = 0; k < p.size(); ++k)
        if (!(b.lower[k] <= p[k] && p[k] < b.upper[k])) return false;
    return true;
}

inline bool contains(const PeriodicBox& b, std::span<const double> p) {
    if (p.size() != b.dim()) throw DimensionError("box and point dimensions differ");
    for (std::size_t k = 0; k < p.size(); ++k)
        if (!contains(b.intervals[k], p[k])) return false;
    return true;
}

inline bool contains(const AxisBox& b, const Point& p) { return contains(b, p.coords()); }
inline bool contains(const PeriodicBox& b, const Point& p) { return contains(b, p.coords()); }

inline double volume(const AxisBox& b) {
    double v = 1.0;
    for (std::size_t k = 0; k < b.dim(); ++k) v *= b.upper[k] - b.lower[k];
    return v;
}

inline double volume(const PeriodicBox& b) {
    double v = 1.0;
    for (const auto& iv : b.intervals) v *= measure(iv);
    return v;
}

}  // namespace dispersion
