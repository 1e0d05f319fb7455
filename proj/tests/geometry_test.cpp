#include <gtest/gtest.h>

#include <dispersion/geometry.hpp>

using namespace dispersion;

TEST(Point, RejectsOutOfRangeCoordinates) {
    EXPECT_THROW(Point({0.5, 1.5}), std::invalid_argument);
    EXPECT_THROW(Point({-0.1}), std::invalid_argument);
    EXPECT_THROW(Point(std::vector<double>{}), DimensionError);
    EXPECT_NO_THROW(Point({0.0, 1.0}));
}

TEST(PointSet, ShapeAndAccess) {
    PointSet P(2, {0.1, 0.2, 0.3, 0.4});
    EXPECT_EQ(P.dim(), 2u);
    EXPECT_EQ(P.size(), 2u);
    EXPECT_DOUBLE_EQ(P.coord(1, 0), 0.3);
    EXPECT_EQ(P[1][1], 0.4);
    EXPECT_THROW(PointSet(2, std::vector<double>{0.1, 0.2, 0.3}), std::exception);
    EXPECT_THROW(PointSet(2, std::vector<double>{0.1, 2.0}), std::invalid_argument);
}

TEST(PointSet, EmptyAndWithPoint) {
    PointSet P(3);
    EXPECT_TRUE(P.empty());
    EXPECT_EQ(P.size(), 0u);
    const double p[] = {0.5, 0.5, 0.5};
    const auto Q = P.with_point(p);
    EXPECT_EQ(Q.size(), 1u);
    const double bad[] = {0.5, 0.5};
    EXPECT_THROW(P.with_point(bad), DimensionError);
}

TEST(PointSet, PermuteAxes) {
    PointSet P(3, {0.1, 0.2, 0.3});
    const std::size_t perm[] = {2, 0, 1};
    const auto Q = P.permute_axes(perm);
    EXPECT_EQ(Q.coord(0, 0), 0.3);
    EXPECT_EQ(Q.coord(0, 1), 0.1);
    EXPECT_EQ(Q.coord(0, 2), 0.2);
}

TEST(AxisBox, HalfOpenMembership) {
    AxisBox b({0.25, 0.0}, {0.75, 0.5});
    EXPECT_TRUE(contains(b, Point({0.25, 0.0})));
    EXPECT_FALSE(contains(b, Point({0.75, 0.1})));
    EXPECT_FALSE(contains(b, Point({0.5, 0.5})));
    EXPECT_DOUBLE_EQ(volume(b), 0.25);
    EXPECT_THROW(AxisBox({0.5}, {0.5}), std::invalid_argument);
    EXPECT_THROW(AxisBox({0.5}, {0.6, 0.7}), DimensionError);
}

TEST(PeriodicInterval, ArcAndComplement) {
    const auto arc = periodic_interval(0.2, 0.7);
    ASSERT_TRUE(std::holds_alternative<Arc>(arc));
    EXPECT_TRUE(contains(arc, 0.5));
    EXPECT_FALSE(contains(arc, 0.2));
    EXPECT_FALSE(contains(arc, 0.7));
    EXPECT_DOUBLE_EQ(measure(arc), 0.5);

    const auto co = periodic_interval(0.8, 0.3);
    ASSERT_TRUE(std::holds_alternative<CoArc>(co));
    EXPECT_TRUE(contains(co, 0.1));
    EXPECT_TRUE(contains(co, 0.9));
    EXPECT_TRUE(contains(co, 0.0));
    EXPECT_TRUE(contains(co, 1.0));
    EXPECT_FALSE(contains(co, 0.3));
    EXPECT_FALSE(contains(co, 0.5));
    EXPECT_FALSE(contains(co, 0.8));
    EXPECT_DOUBLE_EQ(measure(co), 0.5);
}

TEST(PeriodicInterval, DegenerateComplementRemovesOnePoint) {
    const auto co = periodic_interval(0.4, 0.4);
    EXPECT_EQ(measure(co), 1.0);
    EXPECT_FALSE(contains(co, 0.4));
    EXPECT_TRUE(contains(co, 0.39));
    EXPECT_TRUE(contains(co, 0.41));
}

TEST(PeriodicInterval, EmptyComplement) {
    const auto co = periodic_interval(1.0, 0.0);
    EXPECT_EQ(measure(co), 0.0);
    for (double p : {0.0, 0.5, 1.0}) EXPECT_FALSE(contains(co, p));
}

TEST(PeriodicBox, ValidationAndVolume) {
    EXPECT_THROW(PeriodicBox({Arc{0.5, 0.2}}), std::invalid_argument);
    EXPECT_THROW(PeriodicBox({CoArc{0.7, 0.2}}), std::invalid_argument);
    PeriodicBox b({Arc{0.0, 0.5}, CoArc{0.25, 0.5}});
    EXPECT_DOUBLE_EQ(volume(b), 0.375);
    EXPECT_TRUE(contains(b, Point({0.1, 0.9})));
    EXPECT_FALSE(contains(b, Point({0.1, 0.3})));
}

TEST(PeriodicBox, AxisBoxEmbedsWithSameVolume) {
    AxisBox a({0.1, 0.2}, {0.6, 0.9});
    const auto p = to_periodic(a);
    EXPECT_EQ(volume(a), volume(p));
    EXPECT_TRUE(contains(p, Point({0.3, 0.3})));
}

TEST(Family, Parse) {
    EXPECT_EQ(parse_family("axis"), Family::axis);
    EXPECT_EQ(parse_family("per"), Family::periodic);
    EXPECT_EQ(to_string(Family::periodic), "periodic");
    EXPECT_THROW(parse_family("torus"), std::invalid_argument);
}
