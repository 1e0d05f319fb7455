// Command-line front end: compute | cover | bounds | certify | gen | bench.
//
// Exit codes: 0 success, 2 bad flags or preconditions, 3 instance-size guard,
// 4 certificate search exhausted. Errors are reported as a single line
// "error: <message>" on stderr.

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include <dispersion/dispersion.hpp>

namespace {

using namespace dispersion;

constexpr int exit_ok = 0;
constexpr int exit_usage = 2;
constexpr int exit_guard = 3;
constexpr int exit_exhausted = 4;

struct CommonOptions {
    unsigned threads = 1;
    double max_candidates = default_candidate_limit;
    bool force = false;

    EnumerationOptions enumeration() const { return {threads, max_candidates, force}; }
};

void emit(const Json& j, const std::string& path = {}) {
    if (path.empty()) {
        write_json(std::cout, j);
        std::cout << '\n';
        return;
    }
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    write_json(out, j);
    out << '\n';
}

template <class Fn>
void with_output(const std::string& path, Fn&& fn) {
    if (path.empty() || path == "-") {
        fn(std::cout);
        return;
    }
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    fn(out);
}

Json certificate_json(const Certificate& c) {
    Json j;
    j["family"] = std::string(to_string(c.family));
    j["n"] = c.point_set.size();
    j["d"] = c.point_set.dim();
    j["delta"] = c.delta;
    j["m"] = c.m;
    j["cardinality_log"] = c.cardinality_log;
    j["target"] = c.target;
    j["cover_max"] = c.cover_max;
    j["certified_bound"] = c.certified_bound;
    j["certified"] = c.certified;
    j["trials_used"] = c.trials_used;
    j["seed"] = c.seed;
    j["point_seed"] = c.point_seed;
    return j;
}

// ---- compute -------------------------------------------------------------

struct ComputeArgs {
    std::string family = "axis";
    std::string points;
    std::string method = "auto";
    std::size_t dim = 0;
};

int run_compute(const ComputeArgs& a, const CommonOptions& common) {
    const auto fam = parse_family(a.family);
    const auto P = read_points_file(a.points, a.dim);
    const auto t0 = std::chrono::steady_clock::now();
    DispersionReport rep;
    if (fam == Family::axis && (a.method == "sweep2d" || (a.method == "auto" && P.dim() == 2)))
        rep = largest_empty_rect_2d(P);
    else
        rep = dispersion::dispersion(P, fam, common.enumeration());
    const auto t1 = std::chrono::steady_clock::now();
    emit(report_to_json(rep, std::chrono::duration<double, std::milli>(t1 - t0).count()));
    return exit_ok;
}

// ---- cover ---------------------------------------------------------------

struct CoverArgs {
    std::size_t d = 1;
    double delta = 0.0;
    std::uint64_t m = 0;
    std::string family = "periodic";
    std::string dump;
    std::string points;
};

int run_cover(const CoverArgs& a, const CommonOptions& common) {
    if (a.m == 0 && !(a.delta > 0.0)) throw std::invalid_argument("cover requires --delta > 0 or --m >= 1");
    const auto spec = a.m ? GridSpec::from_m(a.d, a.m) : GridSpec::from_delta(a.d, a.delta);
    const DeltaCover cover(spec, parse_family(a.family));
    Json j;
    j["d"] = spec.d;
    j["delta"] = spec.delta;
    j["m"] = spec.m;
    if (const auto card = cover.cardinality())
        j["cardinality"] = *card;
    else
        j["cardinality"] = nullptr;
    j["cardinality_log"] = cover.cardinality_log();
    j["family"] = std::string(to_string(cover.family()));
    if (!a.points.empty()) {
        const auto P = read_points_file(a.points, a.d);
        const auto best = cover_maximum(P, cover, common.enumeration());
        j["cover_max"] = best.value;
        j["dispersion_bound"] = spec.delta + best.value;
    }
    if (!a.dump.empty()) {
        const auto card = cover.cardinality();
        if (!common.force && (!card || static_cast<double>(*card) > common.max_candidates))
            throw InstanceTooLarge(card ? static_cast<double>(*card) : std::exp(cover.cardinality_log()),
                                   common.max_candidates);
        with_output(a.dump, [&](std::ostream& os) { write_cover_csv(os, cover); });
    }
    emit(j);
    return exit_ok;
}

// ---- bounds --------------------------------------------------------------

struct BoundsArgs {
    std::vector<std::string> bounds;
    std::map<std::string, double> params;
    bool table = false;
    std::string n_range;
    std::string d_range;
    std::string csv_out;
};

/// "a:b" or "a:b:step" or "a,b,c" or "a".
std::vector<std::uint64_t> parse_range(const std::string& s) {
    std::vector<std::uint64_t> out;
    if (s.find(':') != std::string::npos) {
        std::vector<std::uint64_t> parts;
        std::stringstream ss(s);
        std::string tok;
        while (std::getline(ss, tok, ':')) parts.push_back(std::stoull(tok));
        if (parts.size() < 2 || parts.size() > 3) throw std::invalid_argument("range must be a:b or a:b:step");
        const std::uint64_t step = parts.size() == 3 ? parts[2] : 1;
        if (step == 0 || parts[0] > parts[1]) throw std::invalid_argument("invalid range '" + s + "'");
        for (auto v = parts[0]; v <= parts[1]; v += step) out.push_back(v);
    } else {
        std::stringstream ss(s);
        std::string tok;
        while (std::getline(ss, tok, ',')) out.push_back(std::stoull(tok));
    }
    if (out.empty()) throw std::invalid_argument("empty range '" + s + "'");
    return out;
}

std::vector<BoundId> parse_bound_list(const std::vector<std::string>& names) {
    std::vector<BoundId> out;
    for (const auto& entry : names) {
        std::stringstream ss(entry);
        std::string tok;
        while (std::getline(ss, tok, ',')) out.push_back(parse_bound(tok));
    }
    return out;
}

int run_bounds(const BoundsArgs& a) {
    const auto ids = parse_bound_list(a.bounds);
    if (ids.empty()) throw std::invalid_argument("bounds requires --bound");
    std::map<std::string, double, std::less<>> params(a.params.begin(), a.params.end());

    if (a.table) {
        const auto ns = parse_range(a.n_range.empty() ? std::to_string(static_cast<std::uint64_t>(params.at("n")))
                                                      : a.n_range);
        const auto ds = parse_range(a.d_range.empty() ? std::to_string(static_cast<std::uint64_t>(params.at("d")))
                                                      : a.d_range);
        params.erase("n");
        params.erase("d");
        const auto rows = bound_table(ns, ds, ids, params);
        with_output(a.csv_out, [&](std::ostream& os) { write_bound_table_csv(os, rows, ids); });
        return exit_ok;
    }

    Json out = Json::array();
    for (auto id : ids) {
        const auto r = evaluate_bound(id, params);
        Json j;
        j["bound"] = std::string(to_string(id));
        j["value"] = r.value;
        j["log_value"] = r.log_value;
        j["valid"] = r.valid;
        j["side"] = std::string(to_string(r.side));
        out.push_back(std::move(j));
    }
    if (!a.csv_out.empty()) {
        const auto rows = bound_table({static_cast<std::uint64_t>(params.count("n") ? params.at("n") : 1)},
                                      {static_cast<std::uint64_t>(params.count("d") ? params.at("d") : 1)}, ids,
                                      params);
        with_output(a.csv_out, [&](std::ostream& os) { write_bound_table_csv(os, rows, ids); });
    }
    emit(out.size() == 1 ? out[0] : out);
    return exit_ok;
}

// ---- certify -------------------------------------------------------------

struct CertifyArgs {
    std::optional<std::size_t> n;
    std::size_t d = 1;
    double delta = 0.0;
    double alpha = 0.05;
    std::optional<std::uint64_t> seed;
    std::uint64_t max_trials = 1;
    std::string mode = "remark";
    std::string family = "periodic";
    std::string emit_points;
};

int run_certify(const CertifyArgs& a, const CommonOptions& common) {
    if (!a.seed) throw std::invalid_argument("certify requires an explicit --seed");
    if (!(a.delta > 0.0 && a.delta < 1.0)) throw std::invalid_argument("--delta must lie in (0,1)");
    const auto fam = parse_family(a.family);
    const auto cover = build_cover(a.d, a.delta, fam);

    std::size_t n;
    if (a.n) {
        n = *a.n;
    } else {
        const auto r = evaluate_bound(BoundId::remark_sample_size, {{"delta", a.delta},
                                                                   {"alpha", a.alpha},
                                                                   {"gamma_cardinality_log", cover.cardinality_log()}});
        n = static_cast<std::size_t>(std::ceil(r.value));
    }

    Certificate cert;
    if (a.mode == "theorem") {
        cert = find_good_set(n, a.d, a.delta, a.max_trials, *a.seed, fam, common.enumeration());
    } else if (a.mode == "remark") {
        if (a.max_trials == 0) throw std::invalid_argument("--max-trials must be >= 1");
        for (std::uint64_t t = 0; t < a.max_trials; ++t) {
            const auto s = a.max_trials == 1 ? *a.seed : trial_seed(*a.seed, t);
            auto c = certify(sample_uniform(n, a.d, s), a.delta, fam, common.enumeration());
            c.seed = *a.seed;
            c.point_seed = s;
            c.trials_used = t + 1;
            const bool better = t == 0 || c.certified || c.cover_max < cert.cover_max;
            if (better) cert = std::move(c);
            if (cert.certified) break;
        }
    } else {
        throw std::invalid_argument("--mode must be remark or theorem");
    }

    if (!a.emit_points.empty())
        with_output(a.emit_points, [&](std::ostream& os) { write_points_csv(os, cert.point_set); });
    emit(certificate_json(cert));
    return cert.certified ? exit_ok : exit_exhausted;
}

// ---- gen -----------------------------------------------------------------

struct GenArgs {
    std::string kind;
    std::size_t n = 1;
    std::size_t d = 1;
    std::optional<std::uint64_t> seed;
    std::string out = "csv";
    std::string output;
};

int run_gen(const GenArgs& a) {
    const GeneratorSpec spec{parse_generator(a.kind), a.n, a.d, a.seed};
    const auto P = generate(spec);
    with_output(a.output, [&](std::ostream& os) {
        if (a.out == "json") {
            write_json(os, points_to_json(P));
            os << '\n';
        } else {
            write_points_csv(os, P);
        }
    });
    return exit_ok;
}

// ---- bench ---------------------------------------------------------------

struct BenchArgs {
    std::vector<std::string> specs;
    bool default_suite = false;
    std::string csv_out;
};

/// kind:n:d[:seed]
GeneratorSpec parse_spec(const std::string& s) {
    std::vector<std::string> parts;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ':')) parts.push_back(tok);
    if (parts.size() < 3 || parts.size() > 4) throw std::invalid_argument("generator spec must be kind:n:d[:seed]");
    GeneratorSpec g{parse_generator(parts[0]), std::stoull(parts[1]), std::stoull(parts[2]), std::nullopt};
    if (parts.size() == 4) g.seed = std::stoull(parts[3]);
    return g;
}

int run_bench_cmd(const BenchArgs& a, const CommonOptions& common) {
    std::vector<GeneratorSpec> specs;
    if (a.default_suite) specs = default_bench_suite();
    for (const auto& s : a.specs) specs.push_back(parse_spec(s));
    for (const auto& s : specs) validate(s);
    const auto rows = run_bench(specs, common.enumeration());
    with_output(a.csv_out, [&](std::ostream& os) { write_bench_csv(os, rows); });
    return exit_ok;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Dispersion of point sets: exact computation, delta-covers, bounds and certificates"};
    app.require_subcommand(1, 1);
    app.fallthrough();

    CommonOptions common;
    if (const char* env = std::getenv("DISPERSION_MAX_CANDIDATES")) {
        try {
            common.max_candidates = std::stod(env);
        } catch (const std::exception&) {
            std::cerr << "error: DISPERSION_MAX_CANDIDATES is not a number\n";
            return exit_usage;
        }
    }
    app.add_option("--threads", common.threads, "Worker threads (0 = hardware concurrency)");
    app.add_option("--max-candidates", common.max_candidates, "Instance-size guard (candidate boxes)");
    app.add_flag("--force", common.force, "Ignore the instance-size guard");

    ComputeArgs compute;
    auto* c_compute = app.add_subcommand("compute", "Exact dispersion of a point file");
    c_compute->add_option("--family", compute.family, "axis|periodic (aliases ex|per)");
    c_compute->add_option("--points", compute.points, "CSV or .json point file")->required();
    c_compute->add_option("--method", compute.method, "auto|brute|sweep2d")
        ->check(CLI::IsMember({"auto", "brute", "sweep2d"}));
    c_compute->add_option("--dim", compute.dim, "Dimension for an empty JSON point array");

    CoverArgs cover;
    auto* c_cover = app.add_subcommand("cover", "Grid delta-cover summary");
    c_cover->add_option("--d", cover.d, "Dimension")->required();
    c_cover->add_option("--delta", cover.delta, "Cover accuracy delta");
    c_cover->add_option("--m", cover.m, "Grid resolution (overrides --delta)");
    c_cover->add_option("--family", cover.family, "periodic|axis");
    c_cover->add_option("--dump", cover.dump, "Write every element's index tuple as CSV");
    c_cover->add_option("--points", cover.points, "Also report the largest empty element for this point file");

    BoundsArgs bounds;
    auto* c_bounds = app.add_subcommand("bounds", "Evaluate closed-form bounds");
    c_bounds->add_option("--bound", bounds.bounds, "Bound id(s), comma separated or repeated")->required();
    for (const char* key : {"n", "d", "epsilon", "delta", "alpha", "c1", "c2", "c3"}) {
        c_bounds->add_option_function<double>(
            std::string("--") + key, [&bounds, key](double v) { bounds.params[key] = v; }, key);
    }
    c_bounds->add_option_function<double>(
        "--d-vc", [&bounds](double v) { bounds.params["d_vc"] = v; }, "VC dimension");
    c_bounds->add_option_function<double>(
        "--gamma", [&bounds](double v) { bounds.params["gamma_cardinality"] = v; }, "Cover cardinality");
    c_bounds->add_option_function<double>(
        "--gamma-log", [&bounds](double v) { bounds.params["gamma_cardinality_log"] = v; },
        "Natural log of the cover cardinality");
    c_bounds->add_flag("--table", bounds.table, "Emit a CSV table over --n-range x --d-range");
    c_bounds->add_option("--n-range", bounds.n_range, "a:b[:step] or a,b,c");
    c_bounds->add_option("--d-range", bounds.d_range, "a:b[:step] or a,b,c");
    c_bounds->add_option("--csv-out", bounds.csv_out, "CSV destination (default stdout)");

    CertifyArgs cert;
    auto* c_cert = app.add_subcommand("certify", "Certify a random point set via the grid cover");
    c_cert->add_option("--n", cert.n, "Points (default: sample size for --alpha)");
    c_cert->add_option("--d", cert.d, "Dimension")->required();
    c_cert->add_option("--delta", cert.delta, "Cover accuracy delta in (0,1)")->required();
    c_cert->add_option("--alpha", cert.alpha, "Confidence level for the automatic n");
    c_cert->add_option("--seed", cert.seed, "Base seed (required)");
    c_cert->add_option("--max-trials", cert.max_trials, "Sampling attempts");
    c_cert->add_option("--mode", cert.mode, "remark: cover_max <= delta; theorem: cover_max <= log|Gamma|/n")
        ->check(CLI::IsMember({"remark", "theorem"}));
    c_cert->add_option("--family", cert.family, "periodic|axis");
    c_cert->add_option("--emit-points", cert.emit_points, "Write the certified point set as CSV");

    GenArgs gen;
    auto* c_gen = app.add_subcommand("gen", "Generate a point set");
    c_gen->add_option("--kind", gen.kind, "equispaced_1d|lattice_grid|halton|uniform_random")->required();
    c_gen->add_option("--n", gen.n, "Number of points")->required();
    c_gen->add_option("--d", gen.d, "Dimension");
    c_gen->add_option("--seed", gen.seed, "Seed (uniform_random)");
    c_gen->add_option("--out", gen.out, "csv|json")->check(CLI::IsMember({"csv", "json"}));
    c_gen->add_option("--output", gen.output, "Destination file (default stdout)");

    BenchArgs bench;
    auto* c_bench = app.add_subcommand("bench", "Measured dispersion against bounds for generated sets");
    c_bench->add_option("--spec", bench.specs, "Generator spec kind:n:d[:seed], repeatable");
    c_bench->add_flag("--default-suite", bench.default_suite, "Include the built-in benchmark suite");
    c_bench->add_option("--csv-out", bench.csv_out, "CSV destination (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_usage;
    }

    try {
        if (*c_compute) return run_compute(compute, common);
        if (*c_cover) return run_cover(cover, common);
        if (*c_bounds) return run_bounds(bounds);
        if (*c_cert) return run_certify(cert, common);
        if (*c_gen) return run_gen(gen);
        if (*c_bench) return run_bench_cmd(bench, common);
    } catch (const InstanceTooLarge& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_guard;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_usage;
    }
    return exit_usage;
}
