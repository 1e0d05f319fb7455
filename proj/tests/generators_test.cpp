#include <gtest/gtest.h>

#include <dispersion/exact.hpp>
#include <dispersion/generators.hpp>

#include "oracles.hpp"

using namespace dispersion;

TEST(Generators, Equispaced) {
    const auto P = generate({GeneratorKind::equispaced_1d, 3, 1, std::nullopt});
    EXPECT_EQ(std::vector<double>(P.data().begin(), P.data().end()), (std::vector<double>{0.25, 0.5, 0.75}));
    EXPECT_THROW(generate({GeneratorKind::equispaced_1d, 3, 2, std::nullopt}), std::invalid_argument);
}

TEST(Generators, Lattice) {
    const auto P = generate({GeneratorKind::lattice_grid, 4, 2, std::nullopt});
    EXPECT_EQ(std::vector<double>(P.data().begin(), P.data().end()),
              (std::vector<double>{0.25, 0.25, 0.25, 0.75, 0.75, 0.25, 0.75, 0.75}));
    EXPECT_THROW(generate({GeneratorKind::lattice_grid, 5, 2, std::nullopt}), std::invalid_argument);
    EXPECT_EQ(generate({GeneratorKind::lattice_grid, 27, 3, std::nullopt}).size(), 27u);
}

TEST(Generators, HaltonBaseTwo) {
    const auto P = generate({GeneratorKind::halton, 4, 1, std::nullopt});
    EXPECT_EQ(std::vector<double>(P.data().begin(), P.data().end()), (std::vector<double>{0.0, 0.5, 0.25, 0.75}));
}

TEST(Generators, HaltonTwoDimensional) {
    const auto P = generate({GeneratorKind::halton, 4, 2, std::nullopt});
    EXPECT_EQ(P.coord(1, 1), 1.0 / 3.0);
    EXPECT_DOUBLE_EQ(P.coord(2, 1), 2.0 / 3.0);
    EXPECT_DOUBLE_EQ(P.coord(3, 1), 1.0 / 9.0);
    EXPECT_EQ(P.coord(3, 0), 0.75);
}

TEST(Generators, HaltonDistinct) {
    const auto P = generate({GeneratorKind::halton, 64, 1, std::nullopt});
    std::vector<double> c(P.data().begin(), P.data().end());
    std::sort(c.begin(), c.end());
    EXPECT_EQ(std::adjacent_find(c.begin(), c.end()), c.end());
}

TEST(Generators, UniformNeedsSeed) {
    EXPECT_THROW(generate({GeneratorKind::uniform_random, 3, 2, std::nullopt}), std::invalid_argument);
    EXPECT_EQ(generate({GeneratorKind::uniform_random, 3, 2, 5}), sample_uniform(3, 2, 5));
}

TEST(Generators, RejectsZeroSizes) {
    EXPECT_THROW(generate({GeneratorKind::halton, 0, 2, std::nullopt}), std::invalid_argument);
    EXPECT_THROW(generate({GeneratorKind::halton, 2, 0, std::nullopt}), std::invalid_argument);
}

TEST(Generators, ParseNames) {
    for (auto k : {GeneratorKind::equispaced_1d, GeneratorKind::lattice_grid, GeneratorKind::halton,
                   GeneratorKind::uniform_random})
        EXPECT_EQ(parse_generator(to_string(k)), k);
    EXPECT_THROW(parse_generator("sobol"), std::invalid_argument);
}

TEST(Generators, IntegerRoot) {
    EXPECT_EQ(integer_root(27, 3), 3u);
    EXPECT_EQ(integer_root(1, 5), 1u);
    EXPECT_FALSE(integer_root(26, 3));
    EXPECT_EQ(integer_root(1u << 20, 20), 2u);
}

TEST(Generators, LatticeDispersionMatchesBruteForce) {
    for (std::size_t k = 1; k <= 4; ++k) {
        const auto P = generate({GeneratorKind::lattice_grid, k * k, 2, std::nullopt});
        EXPECT_EQ(dispersion_axis(P).value, oracle::brute_force_axis(P));
    }
}

TEST(Generators, EquispacedDispersion) {
    for (std::size_t n : {1u, 3u, 7u, 15u}) {
        const auto P = generate({GeneratorKind::equispaced_1d, n, 1, std::nullopt});
        EXPECT_EQ(dispersion_axis(P).value, 1.0 / double(n + 1));
    }
}
