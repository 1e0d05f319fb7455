#pragma once

// Exact dispersion of a point set with respect to axis-parallel boxes and
// periodic (torus) boxes.
//
// The supremum over empty test sets is attained in the closure of the family
// by a box whose faces lie on point coordinates (or on 0 and 1 for the cube).
// Enumeration therefore runs over per-axis candidate intervals built from the
// distinct coordinates, treats every candidate as an open set when testing
// emptiness, and reports the largest volume with a lexicographically minimal
// witness. Axes are processed one at a time with the set of still-blocking
// points narrowed at each level, and a branch is cut as soon as its partial
// volume falls strictly below the incumbent.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "geometry.hpp"
#include "parallel.hpp"

namespace dispersion {

struct DispersionReport {
    Family family = Family::axis;
    double value = 0.0;
    std::variant<AxisBox, PeriodicBox> witness;
    std::size_t n = 0;
    std::size_t d = 0;
};

/// Thrown when an enumeration would exceed the configured candidate budget.
class InstanceTooLarge : public std::runtime_error {
public:
    InstanceTooLarge(double candidates, double limit)
        : std::runtime_error("instance too large: " + std::to_string(candidates) +
                             " candidates exceed the limit of " + std::to_string(limit)),
          candidates_(candidates),
          limit_(limit) {}
    double candidates() const { return candidates_; }
    double limit() const { return limit_; }

private:
    double candidates_;
    double limit_;
};

inline constexpr double default_candidate_limit = 1e9;

struct EnumerationOptions {
    unsigned threads = 1;  ///< 0 picks the hardware concurrency
    double max_candidates = default_candidate_limit;
    bool ignore_limit = false;
};

inline void check_budget(double candidates, const EnumerationOptions& opt) {
    if (!opt.ignore_limit && candidates > opt.max_candidates)
        throw InstanceTooLarge(candidates, opt.max_candidates);
}

namespace detail {

/// Sorted distinct coordinates of every axis.
inline std::vector<std::vector<double>> distinct_coordinates(const PointSet& P) {
    std::vector<std::vector<double>> out(P.dim());
    for (std::size_t k = 0; k < P.dim(); ++k) {
        auto& v = out[k];
        v.reserve(P.size());
        for (std::size_t i = 0; i < P.size(); ++i) v.push_back(P.coord(i, k));
        std::sort(v.begin(), v.end());
        v.erase(std::unique(v.begin(), v.end()), v.end());
    }
    return out;
}

/// One per-axis candidate. For the cube family (a, b) is the open interval
/// (a, b); for the torus family it parameterizes I(a, b).
struct AxisCandidate {
    double a;
    double b;
    double length;
};

inline std::vector<AxisCandidate> axis_candidates(const std::vector<double>& coords) {
    std::vector<double> v;
    v.reserve(coords.size() + 2);
    v.push_back(0.0);
    v.insert(v.end(), coords.begin(), coords.end());
    v.push_back(1.0);
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    std::vector<AxisCandidate> out;
    for (std::size_t i = 0; i < v.size(); ++i)
        for (std::size_t j = i + 1; j < v.size(); ++j) out.push_back({v[i], v[j], v[j] - v[i]});
    return out;
}

inline std::vector<AxisCandidate> periodic_candidates(const std::vector<double>& coords) {
    std::vector<AxisCandidate> out;
    out.reserve(coords.size() * coords.size());
    for (double x : coords)
        for (double y : coords) out.push_back({x, y, measure(periodic_interval(x, y))});
    return out;
}

inline void sort_by_length(std::vector<AxisCandidate>& c) {
    std::sort(c.begin(), c.end(), [](const AxisCandidate& l, const AxisCandidate& r) {
        if (l.length != r.length) return l.length > r.length;
        if (l.a != r.a) return l.a < r.a;
        return l.b < r.b;
    });
}

/// Incumbent of a max-volume search: volume desc, then (a_1..a_d, b_1..b_d) asc.
struct Incumbent {
    double value = -1.0;
    std::vector<double> a;
    std::vector<double> b;

    bool found() const { return value >= 0.0; }

    bool better(double v, const std::vector<double>& ca, const std::vector<double>& cb) const {
        if (v != value) return v > value;
        if (ca != a) return ca < a;
        return cb < b;
    }

    void offer(double v, const std::vector<double>& ca, const std::vector<double>& cb) {
        if (better(v, ca, cb)) {
            value = v;
            a = ca;
            b = cb;
        }
    }
};

template <Family F>
bool inside(const AxisCandidate& c, double p) {
    if constexpr (F == Family::axis) {
        return c.a < p && p < c.b;
    } else {
        return c.a < c.b ? (c.a < p && p < c.b) : (p < c.b || p > c.a);
    }
}

template <Family F>
class BoxSearch {
public:
    BoxSearch(const PointSet& P, std::vector<std::vector<AxisCandidate>> cands,
              std::vector<AxisCandidate> full)
        : P_(P), cands_(std::move(cands)), full_(std::move(full)), d_(P.dim()) {}

    Incumbent run(unsigned workers) const {
        std::vector<Incumbent> locals(workers);
        run_workers(workers, [&](unsigned w) {
            Frame f(d_, P_.size());
            for (std::size_t i = 0; i < P_.size(); ++i) f.active[0].push_back(i);
            descend(0, 1.0, f, locals[w], w, workers);
        });
        Incumbent best;
        for (const auto& l : locals)
            if (l.found()) best.offer(l.value, l.a, l.b);
        return best;
    }

private:
    struct Frame {
        Frame(std::size_t d, std::size_t n) : a(d), b(d), active(d + 1) {
            for (auto& v : active) v.reserve(n);
        }
        std::vector<double> a;
        std::vector<double> b;
        std::vector<std::vector<std::size_t>> active;
    };

    void descend(std::size_t k, double partial, Frame& f, Incumbent& best, unsigned worker,
                 unsigned workers) const {
        const auto& list = cands_[k];
        for (std::size_t ci = 0; ci < list.size(); ++ci) {
            if (k == 0 && ci % workers != worker) continue;
            const auto& c = list[ci];
            const double v = partial * c.length;
            if (v < best.value) break;  // lists are sorted by length, nothing later can win
            auto& next = f.active[k + 1];
            next.clear();
            for (std::size_t i : f.active[k])
                if (inside<F>(c, P_.coord(i, k))) next.push_back(i);
            f.a[k] = c.a;
            f.b[k] = c.b;
            if (k + 1 == d_) {
                if (next.empty()) best.offer(v, f.a, f.b);
            } else if (next.empty()) {
                // Nothing blocks any more: every remaining axis takes its longest candidate.
                double w = v;
                for (std::size_t r = k + 1; r < d_; ++r) {
                    f.a[r] = full_[r].a;
                    f.b[r] = full_[r].b;
                    w *= full_[r].length;
                }
                best.offer(w, f.a, f.b);
            } else {
                descend(k + 1, v, f, best, worker, workers);
            }
        }
    }

    const PointSet& P_;
    std::vector<std::vector<AxisCandidate>> cands_;
    std::vector<AxisCandidate> full_;
    std::size_t d_;
};

inline AxisBox axis_box_from(const Incumbent& inc) { return AxisBox(inc.a, inc.b); }

inline PeriodicBox periodic_box_from(const Incumbent& inc) {
    std::vector<AxisInterval> ivs;
    ivs.reserve(inc.a.size());
    for (std::size_t k = 0; k < inc.a.size(); ++k) ivs.push_back(periodic_interval(inc.a[k], inc.b[k]));
    return PeriodicBox(std::move(ivs));
}

}  // namespace detail

/// Number of candidate boxes the cube-family enumeration ranges over.
inline double candidate_count_axis(const PointSet& P) {
    double total = 1.0;
    for (const auto& v : detail::distinct_coordinates(P)) {
        std::size_t m = v.size() + 2;
        if (!v.empty() && v.front() == 0.0) --m;
        if (!v.empty() && v.back() == 1.0) --m;
        total *= 0.5 * static_cast<double>(m) * static_cast<double>(m - 1);
    }
    return total;
}

/// Number of candidate boxes the torus-family enumeration ranges over.
inline double candidate_count_periodic(const PointSet& P) {
    double total = 1.0;
    for (const auto& v : detail::distinct_coordinates(P)) total *= static_cast<double>(v.size() * v.size());
    return total;
}

/// Largest volume of an axis-parallel box in [0,1]^d containing no point of P.
inline DispersionReport dispersion_axis(const PointSet& P, const EnumerationOptions& opt = {}) {
    DispersionReport r{Family::axis, 1.0, AxisBox::unit(P.dim()), P.size(), P.dim()};
    if (P.empty()) return r;
    check_budget(candidate_count_axis(P), opt);

    const auto coords = detail::distinct_coordinates(P);
    std::vector<std::vector<detail::AxisCandidate>> cands;
    std::vector<detail::AxisCandidate> full;
    for (const auto& v : coords) {
        auto c = detail::axis_candidates(v);
        detail::sort_by_length(c);
        full.push_back(c.front());
        cands.push_back(std::move(c));
    }
    const unsigned workers = static_cast<unsigned>(
        std::min<std::size_t>(detail::resolve_threads(opt.threads), cands.front().size()));
    const auto best = detail::BoxSearch<Family::axis>(P, std::move(cands), std::move(full)).run(workers);
    r.value = best.value;
    r.witness = detail::axis_box_from(best);
    return r;
}

/// Largest volume of a periodic box (torus box) containing no point of P.
inline DispersionReport dispersion_periodic(const PointSet& P, const EnumerationOptions& opt = {}) {
    std::vector<AxisInterval> whole(P.dim(), CoArc{0.0, 0.0});
    DispersionReport r{Family::periodic, 1.0, PeriodicBox(std::move(whole)), P.size(), P.dim()};
    if (P.empty()) return r;
    check_budget(candidate_count_periodic(P), opt);

    const auto coords = detail::distinct_coordinates(P);
    std::vector<std::vector<detail::AxisCandidate>> cands;
    std::vector<detail::AxisCandidate> full;
    for (const auto& v : coords) {
        auto c = detail::periodic_candidates(v);
        detail::sort_by_length(c);
        full.push_back(c.front());
        cands.push_back(std::move(c));
    }
    const unsigned workers = static_cast<unsigned>(
        std::min<std::size_t>(detail::resolve_threads(opt.threads), cands.front().size()));
    const auto best =
        detail::BoxSearch<Family::periodic>(P, std::move(cands), std::move(full)).run(workers);
    r.value = best.value;
    r.witness = detail::periodic_box_from(best);
    return r;
}

inline DispersionReport dispersion(const PointSet& P, Family f, const EnumerationOptions& opt = {}) {
    return f == Family::axis ? dispersion_axis(P, opt) : dispersion_periodic(P, opt);
}

/// Largest empty axis-parallel rectangle in the unit square, O(n^2).
///
/// For each bottom edge (0 or a point ordinate) the points above it form a
/// skyline of zero-width spikes along x; every maximal rectangle on that
/// bottom is either a gap between neighbouring spikes with top 1, or the span
/// between the nearest strictly lower spikes on either side of some spike,
/// topped by that spike.
inline DispersionReport largest_empty_rect_2d(const PointSet& P) {
    if (P.dim() != 2) throw DimensionError("largest_empty_rect_2d requires d = 2");
    DispersionReport r{Family::axis, 1.0, AxisBox::unit(2), P.size(), 2};
    if (P.empty()) return r;

    struct Pt {
        double x, y;
    };
    std::vector<Pt> pts;
    pts.reserve(P.size());
    for (std::size_t i = 0; i < P.size(); ++i) pts.push_back({P.coord(i, 0), P.coord(i, 1)});
    std::sort(pts.begin(), pts.end(), [](const Pt& l, const Pt& r) { return l.x < r.x || (l.x == r.x && l.y < r.y); });

    std::vector<double> bottoms{0.0};
    for (const auto& p : pts) bottoms.push_back(p.y);
    std::sort(bottoms.begin(), bottoms.end());
    bottoms.erase(std::unique(bottoms.begin(), bottoms.end()), bottoms.end());

    detail::Incumbent best;
    struct Spike {
        double x, top;
    };
    std::vector<Spike> spikes;
    std::vector<std::size_t> left(pts.size() + 2), right(pts.size() + 2), stack;
    std::vector<double> ca(2), cb(2);

    auto offer = [&](double l, double rr, double bottom, double top) {
        const double v = (rr - l) * (top - bottom);
        ca[0] = l;
        ca[1] = bottom;
        cb[0] = rr;
        cb[1] = top;
        best.offer(v, ca, cb);
    };

    for (double b : bottoms) {
        if (b >= 1.0) continue;
        spikes.clear();
        spikes.push_back({0.0, b});
        for (const auto& p : pts) {
            if (!(p.y > b && p.y < 1.0)) continue;
            if (spikes.back().x == p.x)
                spikes.back().top = std::min(spikes.back().top, p.y);
            else
                spikes.push_back({p.x, p.y});
        }
        if (spikes.back().x == 1.0)
            spikes.back().top = b;
        else
            spikes.push_back({1.0, b});

        const std::size_t s = spikes.size();
        for (std::size_t i = 0; i + 1 < s; ++i) offer(spikes[i].x, spikes[i + 1].x, b, 1.0);

        stack.clear();
        for (std::size_t i = 0; i < s; ++i) {
            while (!stack.empty() && spikes[stack.back()].top >= spikes[i].top) stack.pop_back();
            left[i] = stack.empty() ? 0 : stack.back();
            stack.push_back(i);
        }
        stack.clear();
        for (std::size_t i = s; i-- > 0;) {
            while (!stack.empty() && spikes[stack.back()].top >= spikes[i].top) stack.pop_back();
            right[i] = stack.empty() ? s - 1 : stack.back();
            stack.push_back(i);
        }
        for (std::size_t i = 1; i + 1 < s; ++i) offer(spikes[left[i]].x, spikes[right[i]].x, b, spikes[i].top);
    }

    r.value = best.value;
    r.witness = detail::axis_box_from(best);
    return r;
}

/// True when no point of P lies in the open interior of the witness, i.e. the
/// witness is empty in the closure sense used by the enumeration.
inline bool witness_is_empty(const DispersionReport& rep, const PointSet& P) {
    for (std::size_t i = 0; i < P.size(); ++i) {
        const auto p = P[i];
        bool in = true;
        for (std::size_t k = 0; k < P.dim() && in; ++k) {
            if (rep.family == Family::axis) {
                const auto& b = std::get<AxisBox>(rep.witness);
                in = b.lower[k] < p[k] && p[k] < b.upper[k];
            } else {
                in = contains(std::get<PeriodicBox>(rep.witness).intervals[k], p[k]);
            }
        }
        if (in) return false;
    }
    return true;
}

inline double witness_volume(const DispersionReport& rep) {
    return std::visit([](const auto& b) { return volume(b); }, rep.witness);
}

}  // namespace dispersion
