#pragma once

// Closed-form upper and lower bounds on the minimal dispersion and its inverse.
// Logarithms are natural unless a bound is stated with log2.

#include <algorithm>
#include <array>
#include <cstdio>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <numbers>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace dispersion {

enum class BoundId {
    theorem1,
    vc_upper,
    vc_inverse,
    bex_upper,
    bex_inverse,
    aistleitner_lower,
    larcher_rt_upper,
    larcher_inverse,
    sosnovec_inverse,
    bper_upper,
    bper_inverse,
    ullrich_lower,
    tractability,
    gnewuch_cardinality_log,
    gnewuch_cardinality_log_relaxed,
    remark_inverse,
    remark_sample_size,
    remark_success_prob,
};

enum class BoundSide { upper, lower, inverse, cardinality, sample_size, probability };

struct BoundInfo {
    BoundId id;
    std::string_view name;
    BoundSide side;
};

inline constexpr std::array<BoundInfo, 18> bound_catalogue{{
    {BoundId::theorem1, "theorem1", BoundSide::upper},
    {BoundId::vc_upper, "vc_upper", BoundSide::upper},
    {BoundId::vc_inverse, "vc_inverse", BoundSide::inverse},
    {BoundId::bex_upper, "bex_upper", BoundSide::upper},
    {BoundId::bex_inverse, "bex_inverse", BoundSide::inverse},
    {BoundId::aistleitner_lower, "aistleitner_lower", BoundSide::lower},
    {BoundId::larcher_rt_upper, "larcher_rt_upper", BoundSide::upper},
    {BoundId::larcher_inverse, "larcher_inverse", BoundSide::inverse},
    {BoundId::sosnovec_inverse, "sosnovec_inverse", BoundSide::inverse},
    {BoundId::bper_upper, "bper_upper", BoundSide::upper},
    {BoundId::bper_inverse, "bper_inverse", BoundSide::inverse},
    {BoundId::ullrich_lower, "ullrich_lower", BoundSide::lower},
    {BoundId::tractability, "tractability", BoundSide::upper},
    {BoundId::gnewuch_cardinality_log, "gnewuch_cardinality_log", BoundSide::cardinality},
    {BoundId::gnewuch_cardinality_log_relaxed, "gnewuch_cardinality_log_relaxed", BoundSide::cardinality},
    {BoundId::remark_inverse, "remark_inverse", BoundSide::inverse},
    {BoundId::remark_sample_size, "remark_sample_size", BoundSide::sample_size},
    {BoundId::remark_success_prob, "remark_success_prob", BoundSide::probability},
}};

inline std::string_view to_string(BoundId id) {
    for (const auto& b : bound_catalogue)
        if (b.id == id) return b.name;
    return "unknown";
}

inline std::string_view to_string(BoundSide s) {
    switch (s) {
        case BoundSide::upper: return "upper";
        case BoundSide::lower: return "lower";
        case BoundSide::inverse: return "inverse";
        case BoundSide::cardinality: return "cardinality";
        case BoundSide::sample_size: return "sample_size";
        case BoundSide::probability: return "probability";
    }
    return "unknown";
}

inline BoundId parse_bound(std::string_view name) {
    for (const auto& b : bound_catalogue)
        if (b.name == name) return b.id;
    throw std::invalid_argument("unknown bound id '" + std::string(name) + "'");
}

inline BoundSide side_of(BoundId id) {
    for (const auto& b : bound_catalogue)
        if (b.id == id) return b.side;
    return BoundSide::upper;
}

/// Named parameters: n, d, epsilon, delta, d_vc, c1, c2, c3, alpha,
/// gamma_cardinality or gamma_cardinality_log.
struct BoundQuery {
    BoundId id;
    std::map<std::string, double, std::less<>> params;
};

struct BoundResult {
    double value = std::numeric_limits<double>::quiet_NaN();
    double log_value = std::numeric_limits<double>::quiet_NaN();  ///< ln(value) when value > 0
    bool valid = false;
    BoundSide side = BoundSide::upper;
};

class MissingParameter : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// First k primes by trial-free sieve.
inline std::vector<std::uint64_t> first_primes(std::size_t k) {
    std::vector<std::uint64_t> out;
    if (k == 0) return out;
    std::size_t limit = 16;
    while (true) {
        std::vector<bool> composite(limit + 1, false);
        out.clear();
        for (std::size_t i = 2; i <= limit && out.size() < k; ++i) {
            if (composite[i]) continue;
            out.push_back(i);
            for (std::size_t j = i * i; j <= limit; j += i) composite[j] = true;
        }
        if (out.size() == k) return out;
        limit *= 2;
    }
}

/// ln(2^{7d+1}) and ln(2^{d-1} prod_{i<d} p_i); the Larcher/Rote-Tichy constants.
struct LarcherBranches {
    double log_net;     ///< (t,m,d)-net branch 2^{7d+1}
    double log_halton;  ///< Halton branch 2^{d-1} prod p_i
    double log_min() const { return std::min(log_net, log_halton); }
    bool net_is_min() const { return log_net <= log_halton; }
};

inline LarcherBranches larcher_branches(std::size_t d) {
    if (d == 0) throw DomainError("d must be >= 1");
    const double ln2 = std::numbers::ln2;
    double halton = static_cast<double>(d - 1) * ln2;
    for (auto p : first_primes(d - 1)) halton += std::log(static_cast<double>(p));
    return {static_cast<double>(7 * d + 1) * ln2, halton};
}

/// ln n* where n* solves larcher_rt_upper(n, d) = bex_upper(n, d); above it the
/// Larcher/Rote-Tichy bound is smaller.
inline double log_crossover_larcher_vs_bex(std::size_t d) {
    const double dd = static_cast<double>(d);
    return std::exp(larcher_branches(d).log_min()) / (4.0 * dd) + std::log(dd / 9.0);
}

/// log|Gamma_delta| of the periodic grid cover: 2d log(ceil(2d/delta) + 1).
inline double periodic_cover_log_cardinality(double d, double delta) {
    double m = std::max(1.0, std::ceil(2.0 * d / delta));
    while (std::fma(delta, m, -2.0 * d) < 0.0) m += 1.0;
    while (m > 1.0 && std::fma(delta, m - 1.0, -2.0 * d) >= 0.0) m -= 1.0;
    return 2.0 * d * std::log(m + 1.0);
}

namespace detail {

class Params {
public:
    explicit Params(const BoundQuery& q) : q_(q) {}

    double get(std::string_view key) const {
        auto it = q_.params.find(key);
        if (it == q_.params.end())
            throw MissingParameter("bound " + std::string(to_string(q_.id)) + " requires parameter '" +
                                   std::string(key) + "'");
        return it->second;
    }
    bool has(std::string_view key) const { return q_.params.contains(key); }

    double positive_integer(std::string_view key) const {
        const double v = get(key);
        if (!(v >= 1.0) || std::floor(v) != v)
            throw DomainError("parameter '" + std::string(key) + "' must be a positive integer");
        return v;
    }

    double epsilon() const {
        const double e = get("epsilon");
        if (!(e > 0.0 && e < 1.0)) throw DomainError("epsilon must lie in (0,1)");
        return e;
    }

    double positive(std::string_view key) const {
        const double v = get(key);
        if (!(v > 0.0) || !std::isfinite(v))
            throw DomainError("parameter '" + std::string(key) + "' must be positive");
        return v;
    }

    /// log|Gamma| from gamma_cardinality_log or gamma_cardinality, else the periodic grid cover.
    double gamma_log(std::optional<double> delta_for_default) const {
        if (has("gamma_cardinality_log")) {
            const double g = get("gamma_cardinality_log");
            if (!(g >= 0.0)) throw DomainError("log-cardinality must be >= 0");
            return g;
        }
        if (has("gamma_cardinality")) {
            const double g = get("gamma_cardinality");
            if (!(g >= 1.0)) throw DomainError("cover cardinality must be >= 1");
            return std::log(g);
        }
        if (delta_for_default && has("d"))
            return periodic_cover_log_cardinality(positive_integer("d"), *delta_for_default);
        throw MissingParameter("bound " + std::string(to_string(q_.id)) +
                               " requires gamma_cardinality_log, gamma_cardinality, or d");
    }

private:
    const BoundQuery& q_;
};

inline BoundResult make_result(BoundId id, double value, bool valid = true) {
    BoundResult r;
    r.side = side_of(id);
    r.valid = valid;
    r.value = value;
    r.log_value = value > 0.0 ? std::log(value) : -std::numeric_limits<double>::infinity();
    return r;
}

inline BoundResult from_log(BoundId id, double log_value) {
    BoundResult r = make_result(id, std::exp(log_value));
    r.log_value = log_value;
    return r;
}

inline BoundResult invalid(BoundId id) {
    BoundResult r;
    r.side = side_of(id);
    return r;
}

}  // namespace detail

/// Evaluates one bound. Returns valid=false when the bound's precondition on
/// (n, d) fails; bex_upper then carries its fallback value 1. Throws
/// MissingParameter or DomainError for malformed queries.
inline BoundResult evaluate_bound(const BoundQuery& q) {
    const detail::Params p(q);
    const auto id = q.id;
    using detail::from_log;
    using detail::make_result;

    switch (id) {
        case BoundId::theorem1: {
            const double n = p.positive_integer("n");
            const double delta = p.positive("delta");
            return make_result(id, p.gamma_log(delta) / n + delta);
        }
        case BoundId::vc_upper: {
            const double n = p.positive_integer("n");
            const double dvc = p.positive_integer("d_vc");
            if (n < dvc) return detail::invalid(id);
            return make_result(id, 2.0 * dvc / n * std::log2(6.0 * n / dvc));
        }
        case BoundId::vc_inverse: {
            const double e = p.epsilon();
            const double dvc = p.positive_integer("d_vc");
            return make_result(id, 8.0 * dvc / e * std::log2(13.0 / e));
        }
        case BoundId::bex_upper: {
            const double n = p.positive_integer("n");
            const double d = p.positive_integer("d");
            if (n <= 2.0 * d) return make_result(id, 1.0, false);
            return make_result(id, 4.0 * d / n * std::log(9.0 * n / d));
        }
        case BoundId::bex_inverse: {
            const double e = p.epsilon();
            const double d = p.positive_integer("d");
            return make_result(id, 8.0 * d / e * std::log(33.0 / e));
        }
        case BoundId::aistleitner_lower: {
            const double n = p.positive_integer("n");
            const double d = p.positive_integer("d");
            const double l2 = std::log2(d);
            return make_result(id, l2 / (4.0 * (n + l2)));
        }
        case BoundId::larcher_rt_upper: {
            const double n = p.positive_integer("n");
            const double d = p.positive_integer("d");
            return from_log(id, larcher_branches(static_cast<std::size_t>(d)).log_min() - std::log(n));
        }
        case BoundId::larcher_inverse: {
            const double e = p.epsilon();
            const double d = p.positive_integer("d");
            return from_log(id, (7.0 * d + 1.0) * std::numbers::ln2 - std::log(e));
        }
        case BoundId::sosnovec_inverse: {
            const double e = p.epsilon();
            const double d = p.positive_integer("d");
            const double inv = 1.0 / e;
            if (!(e < 0.25) || std::abs(inv - std::round(inv)) > 1e-9 * inv) return detail::invalid(id);
            const double k = std::round(inv);
            // c_eps = eps^{-(eps^{-2}+2)} (4 log eps^{-1} + 1)
            const double log_c = (k * k + 2.0) * std::log(k) + std::log(4.0 * std::log(k) + 1.0);
            if (d == 1.0) return make_result(id, 0.0);
            return from_log(id, log_c + std::log(std::log2(d)));
        }
        case BoundId::bper_upper: {
            const double n = p.positive_integer("n");
            const double d = p.positive_integer("d");
            if (n < 2.0) return detail::invalid(id);
            return make_result(id, 4.0 * d / n * std::log(2.0 * n));
        }
        case BoundId::bper_inverse: {
            const double e = p.epsilon();
            const double d = p.positive_integer("d");
            return make_result(id, 8.0 * d / e * (std::log(8.0 * d) + std::log(1.0 / e)));
        }
        case BoundId::ullrich_lower: {
            const double n = p.positive_integer("n");
            const double d = p.positive_integer("d");
            return make_result(id, std::min(1.0, d / n));
        }
        case BoundId::tractability: {
            const double n = p.positive_integer("n");
            const double d = p.positive_integer("d");
            const double c1 = p.get("c1"), c2 = p.get("c2"), c3 = p.get("c3");
            if (!(c1 >= 1.0) || !(c2 >= 0.0) || !(c3 > 0.0))
                throw DomainError("tractability requires c1 >= 1, c2 >= 0, c3 > 0");
            if (!(n > c3 * d)) return detail::invalid(id);
            if (p.has("delta") && (p.has("gamma_cardinality_log") || p.has("gamma_cardinality"))) {
                // |Gamma_delta| <= (c1 d^c2 / delta)^{c3 d}
                const double delta = p.positive("delta");
                const double cap = c3 * d * (std::log(c1) + c2 * std::log(d) - std::log(delta));
                if (p.gamma_log(std::nullopt) > cap) return detail::invalid(id);
            }
            return make_result(id, c3 * d / n * (std::log(c1 * std::pow(d, c2 - 1.0) * n / c3) + 1.0));
        }
        case BoundId::gnewuch_cardinality_log: {
            const double d = p.positive_integer("d");
            const double delta = p.positive("delta");
            // log[(1/2)(2/delta+1)^{2d} (2d)^{2d} / (d!)^2]
            const double v = -std::numbers::ln2 + 2.0 * d * std::log(2.0 / delta + 1.0) +
                             2.0 * d * std::log(2.0 * d) - 2.0 * std::lgamma(d + 1.0);
            return make_result(id, v);
        }
        case BoundId::gnewuch_cardinality_log_relaxed: {
            const double d = p.positive_integer("d");
            const double delta = p.positive("delta");
            return make_result(id, 2.0 * d * std::log(6.0 * std::numbers::e / delta));
        }
        case BoundId::remark_inverse: {
            const double e = p.epsilon();
            return make_result(id, 2.0 / e * p.gamma_log(e / 2.0));
        }
        case BoundId::remark_sample_size: {
            const double delta = p.positive("delta");
            const double alpha = p.get("alpha");
            if (!(alpha > 0.0 && alpha <= 1.0)) throw DomainError("alpha must lie in (0,1]");
            return make_result(id, (p.gamma_log(delta) - std::log(alpha)) / delta);
        }
        case BoundId::remark_success_prob: {
            const double n = p.get("n");
            if (!(n >= 0.0) || std::floor(n) != n) throw DomainError("n must be a nonnegative integer");
            const double delta = p.positive("delta");
            if (!(delta < 1.0)) throw DomainError("delta must lie in (0,1)");
            // 1 - |Gamma| (1 - delta)^n
            const double log_fail = p.gamma_log(delta) + n * std::log1p(-delta);
            return make_result(id, std::max(0.0, -std::expm1(log_fail)));
        }
    }
    throw std::invalid_argument("unhandled bound id");
}

inline BoundResult evaluate_bound(BoundId id, std::map<std::string, double, std::less<>> params) {
    return evaluate_bound(BoundQuery{id, std::move(params)});
}

struct BoundTableRow {
    std::uint64_t n;
    std::uint64_t d;
    std::vector<BoundResult> cells;
};

/// Evaluates every bound on every (n, d) pair. Extra parameters (epsilon,
/// delta, ...) are shared by all cells; failures become valid=false cells.
inline std::vector<BoundTableRow> bound_table(const std::vector<std::uint64_t>& n_values,
                                              const std::vector<std::uint64_t>& d_values,
                                              const std::vector<BoundId>& bounds,
                                              const std::map<std::string, double, std::less<>>& extra = {}) {
    if (n_values.empty() || d_values.empty()) throw std::invalid_argument("bound table ranges must be nonempty");
    std::vector<BoundTableRow> rows;
    for (auto d : d_values)
        for (auto n : n_values) {
            BoundTableRow row{n, d, {}};
            for (auto id : bounds) {
                auto params = extra;
                params["n"] = static_cast<double>(n);
                params["d"] = static_cast<double>(d);
                try {
                    row.cells.push_back(evaluate_bound(id, std::move(params)));
                } catch (const std::exception&) {
                    row.cells.push_back(detail::invalid(id));
                }
            }
            rows.push_back(std::move(row));
        }
    return rows;
}

inline std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

/// CSV with columns n,d,<id>,<id>_valid per bound.
inline void write_bound_table_csv(std::ostream& os, const std::vector<BoundTableRow>& rows,
                                  const std::vector<BoundId>& bounds) {
    os << "n,d";
    for (auto id : bounds) os << ',' << to_string(id) << ',' << to_string(id) << "_valid";
    os << '\n';
    for (const auto& r : rows) {
        os << r.n << ',' << r.d;
        for (const auto& c : r.cells) os << ',' << format_double(c.value) << ',' << (c.valid ? 1 : 0);
        os << '\n';
    }
}

}  // namespace dispersion
