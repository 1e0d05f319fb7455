#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "bounds.hpp"
#include "geometry.hpp"
#include "sampler.hpp"

namespace dispersion {

enum class GeneratorKind { equispaced_1d, lattice_grid, halton, uniform_random };

inline std::string_view to_string(GeneratorKind k) {
    switch (k) {
        case GeneratorKind::equispaced_1d: return "equispaced_1d";
        case GeneratorKind::lattice_grid: return "lattice_grid";
        case GeneratorKind::halton: return "halton";
        case GeneratorKind::uniform_random: return "uniform_random";
    }
    return "unknown";
}

inline GeneratorKind parse_generator(std::string_view s) {
    if (s == "equispaced_1d") return GeneratorKind::equispaced_1d;
    if (s == "lattice_grid") return GeneratorKind::lattice_grid;
    if (s == "halton") return GeneratorKind::halton;
    if (s == "uniform_random") return GeneratorKind::uniform_random;
    throw std::invalid_argument("unknown generator kind '" + std::string(s) + "'");
}

struct GeneratorSpec {
    GeneratorKind kind = GeneratorKind::uniform_random;
    std::size_t n = 1;
    std::size_t d = 1;
    std::optional<std::uint64_t> seed;
};

/// Integer k with k^d == n, if any.
inline std::optional<std::size_t> integer_root(std::size_t n, std::size_t d) {
    auto k = static_cast<std::size_t>(std::llround(std::pow(static_cast<double>(n), 1.0 / static_cast<double>(d))));
    for (std::size_t c = (k > 0 ? k - 1 : 0); c <= k + 1; ++c) {
        std::size_t p = 1;
        bool overflow = false;
        for (std::size_t i = 0; i < d && !overflow; ++i) {
            if (c != 0 && p > n / c + 1) overflow = true;
            p *= c;
        }
        if (!overflow && p == n) return c;
    }
    return std::nullopt;
}

/// Van der Corput radical inverse of i in the given base.
inline double radical_inverse(std::uint64_t i, std::uint64_t base) {
    const double inv = 1.0 / static_cast<double>(base);
    double f = inv, r = 0.0;
    while (i > 0) {
        r += f * static_cast<double>(i % base);
        i /= base;
        f *= inv;
    }
    return r;
}

inline void validate(const GeneratorSpec& s) {
    if (s.n == 0) throw std::invalid_argument("generator requires n >= 1");
    if (s.d == 0) throw std::invalid_argument("generator requires d >= 1");
    if (s.kind == GeneratorKind::equispaced_1d && s.d != 1)
        throw std::invalid_argument("equispaced_1d requires d = 1");
    if (s.kind == GeneratorKind::lattice_grid && !integer_root(s.n, s.d))
        throw std::invalid_argument("lattice_grid requires n = k^d for an integer k");
    if (s.kind == GeneratorKind::uniform_random && !s.seed)
        throw std::invalid_argument("uniform_random requires an explicit seed");
}

inline PointSet generate(const GeneratorSpec& s) {
    validate(s);
    std::vector<double> data;
    data.reserve(s.n * s.d);
    switch (s.kind) {
        case GeneratorKind::equispaced_1d:
            for (std::size_t i = 1; i <= s.n; ++i) data.push_back(static_cast<double>(i) / static_cast<double>(s.n + 1));
            break;
        case GeneratorKind::lattice_grid: {
            const std::size_t k = *integer_root(s.n, s.d);
            std::vector<std::size_t> idx(s.d, 0);
            for (std::size_t p = 0; p < s.n; ++p) {
                for (std::size_t j = 0; j < s.d; ++j)
                    data.push_back(static_cast<double>(2 * idx[j] + 1) / static_cast<double>(2 * k));
                for (std::size_t j = s.d; j-- > 0;) {
                    if (++idx[j] < k) break;
                    idx[j] = 0;
                }
            }
            break;
        }
        case GeneratorKind::halton: {
            const auto primes = first_primes(s.d);
            for (std::size_t i = 0; i < s.n; ++i)
                for (std::size_t j = 0; j < s.d; ++j) data.push_back(radical_inverse(i, primes[j]));
            break;
        }
        case GeneratorKind::uniform_random:
            return sample_uniform(s.n, s.d, *s.seed);
    }
    return PointSet(s.d, std::move(data));
}

}  // namespace dispersion
