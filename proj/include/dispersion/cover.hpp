#pragma once

// Grid delta-covers of the periodic and the axis-parallel box families.
//
// Elements are addressed by one index pair (i, j) per axis with i, j in
// {0, ..., m}. For the periodic family the pair denotes I(i/m, j/m); for the
// axis family (i < j) it denotes [i/m, j/m). Volumes are integer numerators
// over m^d and all point/grid comparisons are exact.

#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "exact.hpp"
#include "geometry.hpp"
#include "parallel.hpp"

namespace dispersion {

using u128 = unsigned __int128;

/// Grid resolution for a cover: points i/m per axis, m = ceil(2d / delta).
struct GridSpec {
    std::size_t d = 1;
    std::uint64_t m = 1;
    double delta = 2.0;

    static GridSpec from_delta(std::size_t d, double delta) {
        if (d == 0) throw DimensionError("cover dimension must be >= 1");
        if (!(delta > 0.0) || !std::isfinite(delta)) throw std::invalid_argument("delta must be positive and finite");
        const double twice_d = 2.0 * static_cast<double>(d);
        double m = std::ceil(twice_d / delta);
        if (m < 1.0) m = 1.0;
        if (m > 9.0e15) throw std::invalid_argument("delta too small for a representable grid");
        // Exact sign of delta*m - 2d settles ties the division may have rounded.
        while (std::fma(delta, m, -twice_d) < 0.0) m += 1.0;
        while (m > 1.0 && std::fma(delta, m - 1.0, -twice_d) >= 0.0) m -= 1.0;
        return GridSpec{d, static_cast<std::uint64_t>(m), delta};
    }

    /// Grid of resolution m; delta is the implied 2d/m.
    static GridSpec from_m(std::size_t d, std::uint64_t m) {
        if (d == 0) throw DimensionError("cover dimension must be >= 1");
        if (m == 0) throw std::invalid_argument("grid resolution m must be >= 1");
        return GridSpec{d, m, 2.0 * static_cast<double>(d) / static_cast<double>(m)};
    }

    /// 2d/m, the bracket gap bound.
    double gap_bound() const { return 2.0 * static_cast<double>(d) / static_cast<double>(m); }

    /// m^d when it fits in 63 bits.
    std::optional<std::uint64_t> denominator() const {
        u128 acc = 1;
        for (std::size_t k = 0; k < d; ++k) {
            acc *= m;
            if (acc > (u128(1) << 63)) return std::nullopt;
        }
        return static_cast<std::uint64_t>(acc);
    }
};

/// Per-axis element index: I(i/m, j/m) for periodic covers, [i/m, j/m) for axis covers.
struct IndexPair {
    std::uint64_t i = 0;
    std::uint64_t j = 0;
    friend bool operator==(const IndexPair&, const IndexPair&) = default;
    friend auto operator<=>(const IndexPair&, const IndexPair&) = default;
};

namespace detail {

/// Position of a coordinate relative to the grid, doubled: 2t when c == t/m,
/// 2t+1 when t/m < c < (t+1)/m.
inline std::uint64_t grid_slot(double c, std::uint64_t m) {
    const double md = static_cast<double>(m);
    double t = std::floor(md * c);
    if (std::fma(md, c, -t) < 0.0) t -= 1.0;
    if (std::fma(md, c, -(t + 1.0)) >= 0.0) t += 1.0;
    const bool on_grid = std::fma(md, c, -t) == 0.0;
    return 2 * static_cast<std::uint64_t>(t) + (on_grid ? 0 : 1);
}

/// floor(m*c) and ceil(m*c), exact.
inline std::uint64_t grid_floor(double c, std::uint64_t m) { return grid_slot(c, m) / 2; }
inline std::uint64_t grid_ceil(double c, std::uint64_t m) {
    const auto s = grid_slot(c, m);
    return s / 2 + (s % 2);
}

inline u128 ipow(std::uint64_t base, std::size_t e) {
    u128 r = 1;
    for (std::size_t k = 0; k < e; ++k) r *= base;
    return r;
}

}  // namespace detail

/// Sign of i/m - c, exact.
inline int compare_grid(std::uint64_t i, std::uint64_t m, double c) {
    const auto s = detail::grid_slot(c, m);
    const auto twice = 2 * i;
    return twice < s ? -1 : (twice > s ? 1 : 0);
}

/// Lazily enumerable grid cover; never materializes its elements.
class DeltaCover {
public:
    DeltaCover(GridSpec spec, Family family) : spec_(spec), family_(family) {}

    const GridSpec& spec() const { return spec_; }
    Family family() const { return family_; }
    std::size_t dim() const { return spec_.d; }
    std::uint64_t m() const { return spec_.m; }

    /// Number of index pairs on one axis.
    std::uint64_t pairs_per_axis() const {
        const auto m = spec_.m;
        return family_ == Family::periodic ? (m + 1) * (m + 1) : m * (m + 1) / 2;
    }

    /// Exact number of index tuples, or nullopt when it exceeds 64 bits.
    std::optional<std::uint64_t> cardinality() const {
        const u128 per = pairs_per_axis();
        u128 acc = 1;
        for (std::size_t k = 0; k < spec_.d; ++k) {
            acc *= per;
            if (acc > std::numeric_limits<std::uint64_t>::max()) return std::nullopt;
        }
        return static_cast<std::uint64_t>(acc);
    }

    /// Natural log of the cardinality; 2d log(m+1) for periodic covers.
    double cardinality_log() const {
        if (family_ == Family::periodic)
            return 2.0 * static_cast<double>(spec_.d) * std::log(static_cast<double>(spec_.m + 1));
        return static_cast<double>(spec_.d) * std::log(static_cast<double>(pairs_per_axis()));
    }

    /// All index pairs of one axis in lexicographic order.
    std::vector<IndexPair> axis_pairs() const {
        std::vector<IndexPair> out;
        out.reserve(pairs_per_axis());
        for (std::uint64_t i = 0; i <= spec_.m; ++i)
            for (std::uint64_t j = 0; j <= spec_.m; ++j)
                if (family_ == Family::periodic || i < j) out.push_back({i, j});
        return out;
    }

    /// Integer measure numerator (over m) of one axis interval.
    std::uint64_t numerator(IndexPair p) const {
        if (family_ == Family::axis) return p.j - p.i;
        return p.i < p.j ? p.j - p.i : spec_.m - (p.i - p.j);
    }

    /// Volume numerator over m^d.
    u128 volume_numerator(std::span<const IndexPair> idx) const {
        u128 v = 1;
        for (const auto& p : idx) v *= numerator(p);
        return v;
    }

    double volume(std::span<const IndexPair> idx) const {
        return static_cast<double>(volume_numerator(idx)) /
               static_cast<double>(detail::ipow(spec_.m, spec_.d));
    }

    /// 1-D membership of a coordinate in the element interval, exact.
    bool axis_contains(IndexPair p, double c) const {
        const auto s = detail::grid_slot(c, spec_.m);
        const auto a = 2 * p.i, b = 2 * p.j;
        if (family_ == Family::axis) return a <= s && s < b;
        if (p.i < p.j) return a < s && s < b;
        return s < b || s > a;
    }

    bool contains(std::span<const IndexPair> idx, std::span<const double> pt) const {
        for (std::size_t k = 0; k < idx.size(); ++k)
            if (!axis_contains(idx[k], pt[k])) return false;
        return true;
    }

    PeriodicBox periodic_element(std::span<const IndexPair> idx) const {
        const double md = static_cast<double>(spec_.m);
        std::vector<AxisInterval> ivs;
        ivs.reserve(idx.size());
        for (const auto& p : idx) ivs.push_back(periodic_interval(p.i / md, p.j / md));
        return PeriodicBox(std::move(ivs));
    }

    AxisBox axis_element(std::span<const IndexPair> idx) const {
        const double md = static_cast<double>(spec_.m);
        std::vector<double> lo, hi;
        for (const auto& p : idx) {
            lo.push_back(p.i / md);
            hi.push_back(p.j / md);
        }
        return AxisBox(std::move(lo), std::move(hi));
    }

    /// Visits every element in lexicographic index order; stop by returning false.
    void for_each(const std::function<bool(std::span<const IndexPair>)>& visit) const {
        const auto pairs = axis_pairs();
        std::vector<std::size_t> pos(spec_.d, 0);
        std::vector<IndexPair> cur(spec_.d, pairs.front());
        while (true) {
            if (!visit(cur)) return;
            std::size_t k = spec_.d;
            while (k > 0) {
                --k;
                if (++pos[k] < pairs.size()) {
                    cur[k] = pairs[pos[k]];
                    break;
                }
                pos[k] = 0;
                cur[k] = pairs.front();
                if (k == 0) return;
            }
        }
    }

private:
    GridSpec spec_;
    Family family_;
};

inline DeltaCover build_cover(std::size_t d, double delta, Family family = Family::periodic) {
    return DeltaCover(GridSpec::from_delta(d, delta), family);
}

inline double cardinality_log(const DeltaCover& cover) { return cover.cardinality_log(); }

/// Lower and upper cover elements sandwiching a box.
struct Bracket {
    std::vector<IndexPair> lower_index;
    std::vector<IndexPair> upper_index;
    PeriodicBox lower;
    PeriodicBox upper;
    bool lower_empty = false;
    u128 lower_numerator = 0;
    u128 upper_numerator = 0;
    u128 gap_numerator = 0;  ///< over m^d
    double gap = 0.0;
};

namespace detail {

/// sum_k prod_{i<k} l_i (u_k - l_k) prod_{i>k} u_i
inline u128 telescoping_gap(std::span<const std::uint64_t> lo, std::span<const std::uint64_t> up) {
    u128 total = 0;
    for (std::size_t k = 0; k < lo.size(); ++k) {
        u128 term = up[k] - lo[k];
        for (std::size_t i = 0; i < k; ++i) term *= lo[i];
        for (std::size_t i = k + 1; i < lo.size(); ++i) term *= up[i];
        total += term;
    }
    return total;
}

}  // namespace detail

/// Four-case grid bracket of a periodic box.
///
/// Per axis, with a = floor(m x), abar = ceil(m x), b = floor(m y),
/// bbar = ceil(m y) (in grid units):
///   |x-y| <= 1/m, x <  y : L = empty,              U = I(a, bbar)
///   |x-y| <= 1/m, x >= y : L = [0,1] \ [b, abar],  U = [0,1] \ {a}
///   |x-y| >  1/m, x <  y : L = I(abar, b),         U = I(a, bbar)
///   |x-y| >  1/m, x >= y : L = [0,1] \ [b, abar],  U = [0,1] \ [bbar, a]
/// The empty interval is the grid element [0,1] \ [0,1], index (m, 0). When
/// abar == b in the third case the open interval (abar, b) is empty and is
/// mapped there too; I(abar, abar) would be the full axis minus a point.
/// L is contained in B exactly; U covers B up to at most one point per axis.
inline Bracket bracket_periodic(const PeriodicBox& B, const GridSpec& spec) {
    if (B.dim() != spec.d) throw DimensionError("box dimension differs from the grid spec");
    const std::uint64_t m = spec.m;
    const double md = static_cast<double>(m);
    const DeltaCover cover(spec, Family::periodic);
    const IndexPair empty{m, 0};

    Bracket br;
    std::vector<std::uint64_t> lo_num, up_num;
    for (const auto& iv : B.intervals) {
        double x, y;
        if (const auto* a = std::get_if<Arc>(&iv)) {
            x = a->x;
            y = a->y;
        } else {
            const auto& c = std::get<CoArc>(iv);
            x = c.x;
            y = c.y;
        }
        const auto a = detail::grid_floor(x, m), abar = detail::grid_ceil(x, m);
        const auto b = detail::grid_floor(y, m), bbar = detail::grid_ceil(y, m);
        const bool near = std::abs(x - y) * md <= 1.0;

        IndexPair L, U;
        if (x < y) {
            U = {a, bbar};
            L = (near || abar >= b) ? empty : IndexPair{abar, b};
        } else {
            L = {abar, b};
            U = (near || bbar > a) ? IndexPair{a, a} : IndexPair{a, bbar};
        }
        br.lower_index.push_back(L);
        br.upper_index.push_back(U);
        lo_num.push_back(cover.numerator(L));
        up_num.push_back(cover.numerator(U));
        if (lo_num.back() == 0) br.lower_empty = true;
    }
    br.lower = cover.periodic_element(br.lower_index);
    br.upper = cover.periodic_element(br.upper_index);
    br.lower_numerator = cover.volume_numerator(br.lower_index);
    br.upper_numerator = cover.volume_numerator(br.upper_index);
    br.gap_numerator = detail::telescoping_gap(lo_num, up_num);
    br.gap = static_cast<double>(br.gap_numerator) / static_cast<double>(detail::ipow(m, spec.d));
    return br;
}

/// Largest empty cover element.
struct CoverMaximum {
    double value = 0.0;
    u128 numerator = 0;
    std::vector<IndexPair> element;  ///< empty when no element avoids P
};

namespace detail {

class CoverSearch {
public:
    CoverSearch(const PointSet& P, const DeltaCover& cover) : P_(P), cover_(cover), d_(cover.dim()) {
        auto pairs = cover.axis_pairs();
        std::stable_sort(pairs.begin(), pairs.end(), [&](IndexPair l, IndexPair r) {
            return cover.numerator(l) > cover.numerator(r);
        });
        pairs_ = std::move(pairs);
        tail_.assign(d_ + 1, 1);
        for (std::size_t k = d_; k-- > 0;) tail_[k] = tail_[k + 1] * cover.m();
        full_ = family_full();
        slots_.resize(P.size() * d_);
        for (std::size_t i = 0; i < P.size(); ++i)
            for (std::size_t k = 0; k < d_; ++k) slots_[i * d_ + k] = grid_slot(P.coord(i, k), cover.m());
    }

    CoverMaximum run(unsigned workers) const {
        std::vector<State> locals(workers, State(d_, P_.size()));
        run_workers(workers, [&](unsigned w) {
            auto& s = locals[w];
            for (std::size_t i = 0; i < P_.size(); ++i) s.active[0].push_back(i);
            descend(0, 1, s, w, workers);
        });
        State* best = nullptr;
        for (auto& s : locals)
            if (s.found && (!best || s.best_num > best->best_num ||
                            (s.best_num == best->best_num && s.best_idx < best->best_idx)))
                best = &s;
        CoverMaximum out;
        if (best) {
            out.numerator = best->best_num;
            out.element = best->best_idx;
            out.value = static_cast<double>(best->best_num) / static_cast<double>(tail_[0]);
        }
        return out;
    }

private:
    struct State {
        State(std::size_t d, std::size_t n) : cur(d), active(d + 1) {
            for (auto& a : active) a.reserve(n);
        }
        std::vector<IndexPair> cur;
        std::vector<std::vector<std::size_t>> active;
        bool found = false;
        u128 best_num = 0;
        std::vector<IndexPair> best_idx;

        void offer(u128 v, const std::vector<IndexPair>& idx) {
            if (!found || v > best_num || (v == best_num && idx < best_idx)) {
                found = true;
                best_num = v;
                best_idx = idx;
            }
        }
    };

    IndexPair family_full() const {
        return cover_.family() == Family::periodic ? IndexPair{0, 0} : IndexPair{0, cover_.m()};
    }

    bool inside(IndexPair p, std::uint64_t s) const {
        const auto a = 2 * p.i, b = 2 * p.j;
        if (cover_.family() == Family::axis) return a <= s && s < b;
        if (p.i < p.j) return a < s && s < b;
        return s < b || s > a;
    }

    void descend(std::size_t k, u128 partial, State& st, unsigned worker, unsigned workers) const {
        for (std::size_t ci = 0; ci < pairs_.size(); ++ci) {
            if (k == 0 && ci % workers != worker) continue;
            const auto p = pairs_[ci];
            const u128 v = partial * cover_.numerator(p);
            if (st.found && v * tail_[k + 1] < st.best_num) break;
            auto& next = st.active[k + 1];
            next.clear();
            for (std::size_t i : st.active[k])
                if (inside(p, slots_[i * d_ + k])) next.push_back(i);
            st.cur[k] = p;
            if (k + 1 == d_) {
                if (next.empty()) st.offer(v, st.cur);
            } else if (next.empty()) {
                for (std::size_t r = k + 1; r < d_; ++r) st.cur[r] = full_;
                st.offer(v * tail_[k + 1], st.cur);
            } else {
                descend(k + 1, v, st, worker, workers);
            }
        }
    }

    const PointSet& P_;
    const DeltaCover& cover_;
    std::size_t d_;
    std::vector<IndexPair> pairs_;
    std::vector<u128> tail_;
    IndexPair full_;
    std::vector<std::uint64_t> slots_;
};

}  // namespace detail

/// Largest volume of a cover element containing no point of P (0 if none).
inline CoverMaximum cover_maximum(const PointSet& P, const DeltaCover& cover,
                                  const EnumerationOptions& opt = {}) {
    if (P.dim() != cover.dim()) throw DimensionError("point set and cover dimensions differ");
    if (!cover.spec().denominator()) throw std::invalid_argument("grid too fine for exact volumes (m^d >= 2^63)");
    const auto card = cover.cardinality();
    check_budget(card ? static_cast<double>(*card) : std::exp(cover.cardinality_log()), opt);
    const unsigned workers = static_cast<unsigned>(
        std::min<std::uint64_t>(detail::resolve_threads(opt.threads), cover.pairs_per_axis()));
    return detail::CoverSearch(P, cover).run(workers);
}

inline double cover_dispersion(const PointSet& P, const DeltaCover& cover, const EnumerationOptions& opt = {}) {
    return cover_maximum(P, cover, opt).value;
}

/// CSV dump of every element's index tuple: header i1,j1,...,id,jd.
inline void write_cover_csv(std::ostream& os, const DeltaCover& cover) {
    for (std::size_t k = 1; k <= cover.dim(); ++k) os << (k > 1 ? "," : "") << 'i' << k << ",j" << k;
    os << '\n';
    cover.for_each([&](std::span<const IndexPair> idx) {
        for (std::size_t k = 0; k < idx.size(); ++k)
            os << (k ? "," : "") << static_cast<unsigned long long>(idx[k].i) << ','
               << static_cast<unsigned long long>(idx[k].j);
        os << '\n';
        return true;
    });
}

}  // namespace dispersion
