#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "bounds.hpp"
#include "exact.hpp"
#include "generators.hpp"
#include "io.hpp"

namespace dispersion {

/// One benchmarked point set: measured dispersions next to the bounds.
struct BenchRow {
    GeneratorSpec spec;
    std::optional<double> disp_ex;
    std::optional<double> disp_per;
    BoundResult ullrich_lower;
    BoundResult aistleitner_lower;
    BoundResult bex_upper;
    BoundResult bper_upper;
    std::string status = "ok";  ///< "ok", or which family hit the size guard
};

inline BenchRow bench_one(const GeneratorSpec& spec, const EnumerationOptions& opt = {}) {
    BenchRow row;
    row.spec = spec;
    const auto P = generate(spec);
    std::vector<std::string> skipped;
    try {
        row.disp_ex = spec.d == 2 ? largest_empty_rect_2d(P).value : dispersion_axis(P, opt).value;
    } catch (const InstanceTooLarge&) {
        skipped.push_back("axis");
    }
    try {
        row.disp_per = dispersion_periodic(P, opt).value;
    } catch (const InstanceTooLarge&) {
        skipped.push_back("periodic");
    }
    if (!skipped.empty()) {
        row.status = "skipped:";
        for (std::size_t i = 0; i < skipped.size(); ++i) row.status += (i ? "+" : "") + skipped[i];
    }
    const std::map<std::string, double, std::less<>> nd{{"n", static_cast<double>(spec.n)},
                                                        {"d", static_cast<double>(spec.d)}};
    row.ullrich_lower = evaluate_bound(BoundId::ullrich_lower, nd);
    row.aistleitner_lower = evaluate_bound(BoundId::aistleitner_lower, nd);
    row.bex_upper = evaluate_bound(BoundId::bex_upper, nd);
    row.bper_upper = evaluate_bound(BoundId::bper_upper, nd);
    return row;
}

inline std::vector<BenchRow> run_bench(const std::vector<GeneratorSpec>& specs, const EnumerationOptions& opt = {}) {
    std::vector<BenchRow> rows;
    rows.reserve(specs.size());
    for (const auto& s : specs) rows.push_back(bench_one(s, opt));
    return rows;
}

/// Lattices, Halton prefixes, equispaced sets and seeded uniform sets small
/// enough for exact enumeration.
inline std::vector<GeneratorSpec> default_bench_suite() {
    std::vector<GeneratorSpec> s;
    for (std::size_t n : {1, 2, 3, 4, 5, 7, 8, 15, 31})
        s.push_back({GeneratorKind::equispaced_1d, n, 1, std::nullopt});
    for (std::size_t k : {1, 2, 4, 8}) s.push_back({GeneratorKind::lattice_grid, k, 1, std::nullopt});
    for (std::size_t k : {1, 2, 4}) s.push_back({GeneratorKind::lattice_grid, k * k, 2, std::nullopt});
    for (std::size_t k : {1, 2}) s.push_back({GeneratorKind::lattice_grid, k * k * k, 3, std::nullopt});
    for (std::size_t n = 1; n <= 16; ++n) s.push_back({GeneratorKind::halton, n, 2, std::nullopt});
    for (std::size_t n = 1; n <= 10; ++n) s.push_back({GeneratorKind::halton, n, 3, std::nullopt});
    for (std::size_t n : {2, 4, 6}) s.push_back({GeneratorKind::halton, n, 4, std::nullopt});
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        s.push_back({GeneratorKind::uniform_random, 8, 1, seed});
        s.push_back({GeneratorKind::uniform_random, 12, 2, seed});
        s.push_back({GeneratorKind::uniform_random, 7, 3, seed});
    }
    return s;
}

namespace detail {
inline std::string cell(const std::optional<double>& v) {
    return v ? format_double(*v) : std::string();
}
inline std::string cell(const BoundResult& r, bool keep_fallback = false) {
    return (r.valid || keep_fallback) ? format_double(r.value) : std::string();
}
}  // namespace detail

/// CSV: kind,n,d,disp_ex,disp_per,ullrich_lower,aistleitner_lower,bex_upper,bper_upper,status.
/// Skipped or invalid cells are left empty; bex_upper keeps its fallback value 1.
inline void write_bench_csv(std::ostream& os, const std::vector<BenchRow>& rows) {
    os << "kind,n,d,disp_ex,disp_per,ullrich_lower,aistleitner_lower,bex_upper,bper_upper,status\n";
    for (const auto& r : rows) {
        os << to_string(r.spec.kind) << ',' << r.spec.n << ',' << r.spec.d << ',' << detail::cell(r.disp_ex) << ','
           << detail::cell(r.disp_per) << ',' << detail::cell(r.ullrich_lower) << ','
           << detail::cell(r.aistleitner_lower) << ',' << detail::cell(r.bex_upper, true) << ','
           << detail::cell(r.bper_upper) << ',' << r.status << '\n';
    }
}

}  // namespace dispersion
