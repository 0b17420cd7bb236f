#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "icnopt/grid.hpp"

using namespace icnopt;

namespace {

Grid3 random_grid(std::size_t ch, std::size_t h, std::size_t w, std::mt19937_64& rng) {
    Grid3 g(ch, h, w);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    for (auto& v : g.data) v = dist(rng);
    return g;
}

Kernel3 random_kernel(std::size_t depth, std::size_t side, std::mt19937_64& rng) {
    Kernel3 k(depth, side, side);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    for (auto& w : k.weights) w = dist(rng);
    return k;
}

} // namespace

TEST_CASE("conv2d_same: 1x1 identity kernel reproduces the input") {
    Grid3 in(1, 3, 4);
    for (std::size_t i = 0; i < in.data.size(); ++i) in.data[i] = static_cast<double>(i) * 0.5;
    Kernel3 k(1, 1, 1);
    k.weights[0] = 1.0;
    const auto out = conv2d_same(in, k);
    REQUIRE(out.channels == 1);
    REQUIRE(out.height == 3);
    REQUIRE(out.width == 4);
    for (std::size_t i = 0; i < in.data.size(); ++i)
        CHECK(out.data[i] == in.data[i]);
}

TEST_CASE("conv2d_same: all-ones 2x2 input under all-ones 3x3 kernel") {
    // hand summation: at every output position exactly 4 taps land on real
    // pixels, the other 5 on zero padding
    Grid3 in(1, 2, 2, 1.0);
    Kernel3 k(1, 3, 3, 1.0);
    const auto out = conv2d_same(in, k);
    for (double v : out.data) CHECK(v == doctest::Approx(4.0));
}

TEST_CASE("conv2d_same: center-tap difference kernel computes x2 - x1 per pixel") {
    std::mt19937_64 rng(7);
    Grid3 in = random_grid(2, 3, 3, rng);
    Kernel3 k(2, 3, 3);
    k.at(0, 1, 1) = -1.0;
    k.at(1, 1, 1) = 1.0;
    const auto out = conv2d_same(in, k);
    for (std::size_t r = 0; r < 3; ++r)
        for (std::size_t c = 0; c < 3; ++c)
            CHECK(out.at(0, r, c) ==
                  doctest::Approx(in.at(1, r, c) - in.at(0, r, c)).epsilon(1e-15));
}

TEST_CASE("conv2d_same: contract violations") {
    Grid3 in(2, 3, 3, 1.0);
    Kernel3 k(1, 3, 3, 1.0);
    CHECK_THROWS_AS(conv2d_same(in, k), std::invalid_argument);
    CHECK_THROWS_AS(Kernel3(1, 2, 3), std::invalid_argument);
    CHECK_THROWS_AS(Kernel3(1, 3, 4), std::invalid_argument);
}

TEST_CASE("conv2d_same is linear in the input") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        const auto a = random_grid(3, 4, 4, rng);
        const auto b = random_grid(3, 4, 4, rng);
        const auto k = random_kernel(3, 3, rng);
        const double alpha = 0.7, beta = -1.3;

        Grid3 combo(3, 4, 4);
        for (std::size_t i = 0; i < combo.data.size(); ++i)
            combo.data[i] = alpha * a.data[i] + beta * b.data[i];

        const auto lhs = conv2d_same(combo, k);
        const auto ca = conv2d_same(a, k);
        const auto cb = conv2d_same(b, k);
        for (std::size_t i = 0; i < lhs.data.size(); ++i) {
            const double rhs = alpha * ca.data[i] + beta * cb.data[i];
            const double scale = std::max({std::abs(lhs.data[i]), std::abs(rhs), 1.0});
            CHECK(std::abs(lhs.data[i] - rhs) / scale < 1e-12);
        }
    }
}

TEST_CASE("conv2d_same with a center-only kernel is a per-pixel channel combination") {
    std::mt19937_64 rng(13);
    const auto in = random_grid(4, 5, 5, rng);
    Kernel3 k(4, 3, 3);
    const std::vector<double> weights = {0.5, -2.0, 0.0, 3.0};
    for (std::size_t ch = 0; ch < 4; ++ch) k.at(ch, 1, 1) = weights[ch];

    const auto out = conv2d_same(in, k);
    for (std::size_t r = 0; r < 5; ++r)
        for (std::size_t c = 0; c < 5; ++c) {
            double expect = 0.0;
            for (std::size_t ch = 0; ch < 4; ++ch) expect += weights[ch] * in.at(ch, r, c);
            CHECK(out.at(0, r, c) == doctest::Approx(expect).epsilon(1e-14));
        }
}

TEST_CASE("hadamard identities") {
    std::mt19937_64 rng(5);
    const auto a = random_grid(2, 3, 3, rng);

    Grid3 ones(2, 3, 3, 1.0);
    const auto same = hadamard(a, ones);
    for (std::size_t i = 0; i < a.data.size(); ++i) CHECK(same.data[i] == a.data[i]);

    Grid3 zeros(2, 3, 3, 0.0);
    for (double v : hadamard(a, zeros).data) CHECK(v == 0.0);

    Grid3 x(1, 1, 2), y(1, 1, 2);
    x.data = {2.0, 3.0};
    y.data = {4.0, 5.0};
    const auto xy = hadamard(x, y);
    CHECK(xy.data[0] == 8.0);
    CHECK(xy.data[1] == 15.0);

    Grid3 bad(2, 3, 4);
    CHECK_THROWS_AS(hadamard(a, bad), std::invalid_argument);
}

TEST_CASE("hadamard is commutative and associative elementwise") {
    std::mt19937_64 rng(17);
    const auto a = random_grid(2, 4, 3, rng);
    const auto b = random_grid(2, 4, 3, rng);
    const auto c = random_grid(2, 4, 3, rng);

    const auto ab = hadamard(a, b);
    const auto ba = hadamard(b, a);
    for (std::size_t i = 0; i < ab.data.size(); ++i) CHECK(ab.data[i] == ba.data[i]);

    const auto left = hadamard(hadamard(a, b), c);
    const auto right = hadamard(a, hadamard(b, c));
    for (std::size_t i = 0; i < left.data.size(); ++i)
        CHECK(left.data[i] == doctest::Approx(right.data[i]).epsilon(1e-15));
}

TEST_CASE("weighted_channel_sum") {
    Grid3 m1(1, 1, 1), m2(1, 1, 1);
    m1.data = {1.0};
    m2.data = {2.0};

    const auto single = weighted_channel_sum({m1}, {1.0});
    CHECK(single.data[0] == 1.0);

    const auto cancel = weighted_channel_sum({m1, m1}, {1.0, -1.0});
    CHECK(cancel.data[0] == 0.0);

    const auto combo = weighted_channel_sum({m1, m2}, {3.0, 4.0});
    CHECK(combo.data[0] == 11.0);

    CHECK_THROWS_AS(weighted_channel_sum({m1, m2}, {1.0}), std::invalid_argument);
}

TEST_CASE("operations on finite inputs stay finite") {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 10; ++trial) {
        const auto g = random_grid(3, 4, 4, rng);
        const auto k = random_kernel(3, 5, rng);
        for (double v : conv2d_same(g, k).data) CHECK(std::isfinite(v));
        for (double v : hadamard(g, g).data) CHECK(std::isfinite(v));
    }
}
