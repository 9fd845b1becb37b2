#include <doctest.h>

#include <random>

#include "chz/error.hpp"
#include "chz/minkowski.hpp"

using namespace chz;

TEST_CASE("causal precedence examples") {
    CHECK(causally_precedes({Vec2{0, 0}, 0}, {Vec2{0, 0}, 1}));
    CHECK_FALSE(causally_precedes({Vec2{2, 0}, 0}, {Vec2{0, 0}, 1}));
    CHECK(causally_precedes({Vec2{1, 0}, 0}, {Vec2{0, 0}, 1}));
}

TEST_CASE("chronological precedence examples") {
    CHECK(chronologically_precedes({Vec2{0, 0}, 0}, {Vec2{0, 0}, 1}));
    CHECK_FALSE(chronologically_precedes({Vec2{1, 0}, 0}, {Vec2{0, 0}, 1}));
    CHECK(chronologically_precedes({Vec2{0.3, 0}, 0.2}, {Vec2{0, 0}, 1}));
}

TEST_CASE("precedence is not reflexive in time order") {
    CHECK_FALSE(causally_precedes({Vec2{0, 0}, 1}, {Vec2{0, 0}, 0}));
    CHECK_FALSE(chronologically_precedes({Vec2{0, 0}, 1}, {Vec2{0, 0}, 1}));
}

TEST_CASE("past cone slices") {
    SphereSlice s = past_cone_slice({Vec2{0, 0}, 1}, 0.5);
    CHECK(s.center == std::vector<double>{0, 0});
    CHECK(s.radius == doctest::Approx(0.5));
    CHECK(s.normal_curvature() == doctest::Approx(2.0));
    CHECK(s.max_normal_curvature() == s.min_normal_curvature());

    s = past_cone_slice({Vec2{3, 4}, 2}, 0);
    CHECK(s.center == std::vector<double>{3, 4});
    CHECK(s.radius == doctest::Approx(2.0));

    const std::vector<double> in{3.5, 4.0};
    const std::vector<double> rim{5.0, 4.0};
    CHECK(s.interior_contains(in));
    CHECK_FALSE(s.interior_contains(rim));
}

TEST_CASE("past cone slice at or above the apex is empty") {
    CHECK_THROWS_AS(past_cone_slice({Vec2{0, 0}, 1}, 1.0), Error);
    try {
        past_cone_slice({Vec2{0, 0}, 1}, 2.0);
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::EmptySlice);
    }
}

TEST_CASE("dimension mismatch is rejected") {
    const SpacetimePoint a(std::vector<double>{0, 0, 0}, 1);
    const SpacetimePoint b(std::vector<double>{0, 0}, 0);
    CHECK_THROWS_AS(causally_precedes(b, a), Error);
}

TEST_CASE("property: transitivity and chronological implies causal") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> U(-1, 1);
    auto pt = [&] { return SpacetimePoint(Vec2{U(rng), U(rng)}, 2 * U(rng)); };
    int chains = 0;
    for (int i = 0; i < 20000; ++i) {
        const SpacetimePoint a = pt(), b = pt(), c = pt();
        if (causally_precedes(a, b) && causally_precedes(b, c)) {
            ++chains;
            CHECK(causally_precedes(a, c));
        }
        if (chronologically_precedes(a, b)) CHECK(causally_precedes(a, b));
    }
    CHECK(chains > 100);
}

TEST_CASE("property: slice curvature grows as the apex approaches the plane") {
    double last = 0.0;
    for (double t = 3.0; t > 0.01; t *= 0.8) {
        const double k = past_cone_slice({Vec2{0.2, -0.1}, t}, 0.0).normal_curvature();
        CHECK(k > last);
        last = k;
    }
}

TEST_CASE("higher spatial dimension") {
    const SpacetimePoint p(std::vector<double>{1, 2, 3}, 2);
    const SphereSlice s = past_cone_slice(p, 0.5);
    CHECK(s.radius == doctest::Approx(1.5));
    CHECK(causally_precedes(SpacetimePoint(std::vector<double>{1, 2, 4.5}, 0.5), p));
}
