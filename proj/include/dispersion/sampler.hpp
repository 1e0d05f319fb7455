#pragma once

// Uniform random point sets and cover-based dispersion certificates.
//
// Generator contract (part of the reproducibility guarantee): coordinates are
// drawn from std::mt19937_64 seeded with the 64-bit seed, each coordinate
// being (draw >> 11) * 2^-53, filled point by point, axis by axis. Trial t of
// a search uses the t-th output (t = 0, 1, ...) of SplitMix64 started at the
// base seed as its point-set seed.

#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <stdexcept>
#include <vector>

#include "cover.hpp"
#include "exact.hpp"
#include "geometry.hpp"
#include "parallel.hpp"

namespace dispersion {

inline std::uint64_t splitmix64(std::uint64_t state_after_increment) {
    std::uint64_t z = state_after_increment;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Seed of trial t derived from a base seed.
inline std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t t) {
    return splitmix64(seed + (t + 1) * 0x9e3779b97f4a7c15ULL);
}

/// n iid uniform points in [0,1)^d.
inline PointSet sample_uniform(std::size_t n, std::size_t d, std::uint64_t seed) {
    if (d == 0) throw DimensionError("dimension must be >= 1");
    std::mt19937_64 engine(seed);
    std::vector<double> data(n * d);
    for (auto& c : data) c = static_cast<double>(engine() >> 11) * 0x1.0p-53;
    return PointSet(d, std::move(data));
}

/// A point set with a cover-verified dispersion bound for the cover's family.
struct Certificate {
    PointSet point_set{1};
    Family family = Family::periodic;
    double delta = 0.0;
    std::uint64_t m = 0;
    double cardinality_log = 0.0;
    double target = 0.0;     ///< threshold cover_max had to meet
    double cover_max = 1.0;  ///< largest empty cover element
    double certified_bound = 0.0;  ///< delta + cover_max, a true dispersion bound
    bool certified = false;        ///< cover_max <= target
    std::uint64_t trials_used = 0;
    std::uint64_t seed = 0;        ///< base seed
    std::uint64_t point_seed = 0;  ///< seed that generated point_set
};

/// Builds the grid cover for (d, delta) and checks the largest empty cover
/// element against delta. A certified set has dispersion at most 2 delta.
inline Certificate certify(const PointSet& P, double delta, Family family = Family::periodic,
                           const EnumerationOptions& opt = {}) {
    if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("delta must lie in (0,1)");
    const auto cover = build_cover(P.dim(), delta, family);
    Certificate c;
    c.point_set = P;
    c.family = family;
    c.delta = delta;
    c.m = cover.m();
    c.cardinality_log = cover.cardinality_log();
    c.target = delta;
    c.cover_max = cover_dispersion(P, cover, opt);
    c.certified_bound = delta + c.cover_max;
    c.certified = c.cover_max <= delta;
    c.trials_used = 1;
    return c;
}

/// Samples uniform sets until the largest empty cover element is at most
/// log|Gamma_delta| / n. On success the set has dispersion at most
/// log|Gamma_delta| / n + delta. On exhaustion returns the best attempt
/// (smallest cover_max, earliest trial on ties) with certified = false.
inline Certificate find_good_set(std::size_t n, std::size_t d, double delta, std::uint64_t max_trials,
                                 std::uint64_t seed, Family family = Family::periodic,
                                 const EnumerationOptions& opt = {}) {
    if (n == 0) throw std::invalid_argument("n must be >= 1");
    if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("delta must lie in (0,1)");
    if (max_trials == 0) throw std::invalid_argument("max_trials must be >= 1");
    const auto cover = build_cover(d, delta, family);
    const double target = cover.cardinality_log() / static_cast<double>(n);

    EnumerationOptions inner = opt;
    inner.threads = 1;
    const unsigned workers = static_cast<unsigned>(
        std::min<std::uint64_t>(detail::resolve_threads(opt.threads), max_trials));

    struct Attempt {
        std::uint64_t trial = std::numeric_limits<std::uint64_t>::max();
        double cover_max = std::numeric_limits<double>::infinity();
    };
    Attempt best;
    std::uint64_t success = std::numeric_limits<std::uint64_t>::max();
    std::vector<Attempt> batch(workers);
    for (std::uint64_t start = 0; start < max_trials && success == std::numeric_limits<std::uint64_t>::max();
         start += workers) {
        detail::run_workers(workers, [&](unsigned w) {
            const std::uint64_t t = start + w;
            batch[w] = Attempt{};
            if (t >= max_trials) return;
            const auto P = sample_uniform(n, d, trial_seed(seed, t));
            batch[w] = Attempt{t, cover_dispersion(P, cover, inner)};
        });
        for (const auto& a : batch) {
            if (a.trial == std::numeric_limits<std::uint64_t>::max()) continue;
            if (a.cover_max <= target && a.trial < success) success = a.trial;
            if (a.cover_max < best.cover_max || (a.cover_max == best.cover_max && a.trial < best.trial)) best = a;
        }
    }

    const bool ok = success != std::numeric_limits<std::uint64_t>::max();
    const std::uint64_t chosen = ok ? success : best.trial;
    Certificate c;
    c.point_seed = trial_seed(seed, chosen);
    c.point_set = sample_uniform(n, d, c.point_seed);
    c.family = family;
    c.delta = delta;
    c.m = cover.m();
    c.cardinality_log = cover.cardinality_log();
    c.target = target;
    c.cover_max = cover_dispersion(c.point_set, cover, inner);
    c.certified_bound = delta + c.cover_max;
    c.certified = ok;
    c.trials_used = ok ? success + 1 : max_trials;
    c.seed = seed;
    return c;
}

}  // namespace dispersion
