#include <gtest/gtest.h>

#include <sstream>

#include <dispersion/bench.hpp>
#include <dispersion/io.hpp>

using namespace dispersion;

TEST(PointCsv, RoundTripIsBitExact) {
    const PointSet P(2, {0.1, 1.0 / 3.0, 0.0, 1.0, 0.7000000000000001, 5e-300});
    std::ostringstream os;
    write_points_csv(os, P);
    EXPECT_EQ(os.str().substr(0, 6), "x1,x2\n");
    std::istringstream is(os.str());
    EXPECT_EQ(read_points_csv(is), P);
}

TEST(PointCsv, Errors) {
    std::istringstream empty("");
    EXPECT_THROW(read_points_csv(empty), ParseError);
    std::istringstream bad_header("a,b\n0.1,0.2\n");
    EXPECT_THROW(read_points_csv(bad_header), ParseError);
    std::istringstream ragged("x1,x2\n0.1\n");
    EXPECT_THROW(read_points_csv(ragged), ParseError);
    std::istringstream junk("x1\nabc\n");
    EXPECT_THROW(read_points_csv(junk), ParseError);
    std::istringstream range("x1\n1.5\n");
    EXPECT_THROW(read_points_csv(range), std::invalid_argument);
}

TEST(PointCsv, CrlfAndBlankLines) {
    std::istringstream is("x1,x2\r\n0.25,0.5\r\n\r\n0.75, 1\r\n");
    const auto P = read_points_csv(is);
    EXPECT_EQ(P, PointSet(2, {0.25, 0.5, 0.75, 1.0}));
}

TEST(PointJson, RoundTrip) {
    const PointSet P(3, {0.1, 0.2, 0.3, 0.4, 0.5, 0.6});
    const auto text = to_json_text(points_to_json(P));
    EXPECT_EQ(points_from_json(Json::parse(text)), P);
    EXPECT_THROW(points_from_json(Json::parse("[]")), ParseError);
    EXPECT_EQ(points_from_json(Json::parse("[]"), 2).dim(), 2u);
    EXPECT_THROW(points_from_json(Json::parse("{}")), ParseError);
}

TEST(BoxJson, RoundTrip) {
    const AxisBox a({0.0, 0.25}, {0.5, 1.0});
    EXPECT_EQ(std::get<AxisBox>(box_from_json(box_to_json(a))), a);
    const PeriodicBox p({Arc{0.1, 0.2}, CoArc{0.3, 0.9}});
    EXPECT_EQ(std::get<PeriodicBox>(box_from_json(box_to_json(p))), p);
    EXPECT_EQ(to_json_text(box_to_json(p)),
              R"({"family":"periodic","intervals":[{"kind":"arc","x":0.10000000000000001,"y":0.20000000000000001},)"
              R"({"kind":"coarc","y":0.29999999999999999,"x":0.90000000000000002}]})");
}

TEST(ReportJson, Schema) {
    const PointSet P(2, {1.0 / 3, 1.0 / 3, 2.0 / 3, 2.0 / 3});
    const auto j = report_to_json(dispersion_axis(P), 1.5);
    std::vector<std::string> keys;
    for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
    EXPECT_EQ(keys, (std::vector<std::string>{"family", "value", "witness", "n", "d", "elapsed_ms"}));
    EXPECT_EQ(j["family"], "axis");
    EXPECT_EQ(j["n"], 2);
    EXPECT_EQ(j["witness"]["family"], "axis");
    EXPECT_EQ(to_json_text(j["value"]), "0.44444444444444448");
}

TEST(Json, NonFiniteBecomesNull) {
    Json j;
    j["a"] = std::numeric_limits<double>::infinity();
    j["b"] = 0.5;
    EXPECT_EQ(to_json_text(j), R"({"a":null,"b":0.5})");
}

TEST(BenchCsv, Layout) {
    const auto rows = run_bench({{GeneratorKind::equispaced_1d, 4, 1, std::nullopt}});
    std::ostringstream os;
    write_bench_csv(os, rows);
    EXPECT_EQ(os.str(),
              "kind,n,d,disp_ex,disp_per,ullrich_lower,aistleitner_lower,bex_upper,bper_upper,status\n"
              "equispaced_1d,4,1,0.20000000000000007,0.39999999999999991,0.25,0,"
              "3.5835189384561099,2.0794415416798357,ok\n");
}

TEST(BenchCsv, GuardSkipsAreRecorded) {
    const auto rows = run_bench({{GeneratorKind::halton, 6, 3, std::nullopt}}, {.max_candidates = 10});
    ASSERT_EQ(rows.size(), 1u);
    EXPECT_FALSE(rows[0].disp_ex);
    EXPECT_FALSE(rows[0].disp_per);
    EXPECT_EQ(rows[0].status, "skipped:axis+periodic");
}

TEST(BenchSuite, DefaultSuiteIsValid) {
    const auto suite = default_bench_suite();
    EXPECT_GT(suite.size(), 50u);
    for (const auto& s : suite) EXPECT_NO_THROW(validate(s));
}
