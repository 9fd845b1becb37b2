#include <doctest.h>

#include <cmath>
#include <random>

#include "chz/error.hpp"
#include "chz/horizon.hpp"
#include "chz/pipeline.hpp"
#include "chz/scene.hpp"

using namespace chz;

namespace {

Region unit_disk() { return Region({Disk{{0, 0}, 1}}); }
Region slab() { return Region({HalfPlane{{0, 1}, -1}, HalfPlane{{0, -1}, -1}}); }
Region half_plane() { return Region({HalfPlane{{0, 1}, 0}}); }

const Multiplicity kOne{1, false};
const Multiplicity kTwo{2, false};

}  // namespace

TEST_CASE("in_development examples") {
    CHECK(in_development(unit_disk(), {Vec2{0, 0}, 0.5}));
    CHECK_FALSE(in_development(unit_disk(), {Vec2{0, 0}, 1.5}));
    CHECK_FALSE(in_development(unit_disk(), {Vec2{0, 0}, 1.0}));
    CHECK_FALSE(in_development(unit_disk(), {Vec2{2, 0}, 0.1}));
}

TEST_CASE("development oracle examples") {
    CHECK(development_oracle(half_plane(), {Vec2{0, 5}, 1}, 200));
    CHECK_FALSE(development_oracle(half_plane(), {Vec2{0, 0.5}, 1}, 200));
    CHECK_FALSE(development_oracle(unit_disk(), {Vec2{0, 0}, 1.5}, 200));
}

TEST_CASE("development oracle agrees with the closed form on the slab") {
    const Region s = slab();
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> U(-2, 2), T(0, 2);
    int agree = 0;
    for (int i = 0; i < 1000; ++i) {
        const SpacetimePoint p{Vec2{U(rng), U(rng)}, T(rng)};
        agree += in_development(s, p) == development_oracle(s, p, 200, static_cast<std::uint64_t>(i));
    }
    CHECK(agree == 1000);
}

TEST_CASE("development oracle near the horizon") {
    // Points just above the horizon are outside; the oracle must find the exit.
    const Region e({Ellipse{{0, 0}, 2, 1}});
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> U(-1, 1);
    int n = 0;
    for (int i = 0; i < 400 && n < 100; ++i) {
        const Vec2 x{2 * U(rng), U(rng)};
        if (!e.contains(x)) continue;
        const double r = e.distance_to_complement(x);
        ++n;
        CHECK_FALSE(development_oracle(e, {x, r * (1 + 1e-6)}, 200, 1));
        CHECK(development_oracle(e, {x, r * (1 - 1e-6)}, 200, 1));
    }
    CHECK(n == 100);
}

TEST_CASE("horizon point examples") {
    CHECK(horizon_point(unit_disk(), {0.5, 0}).height == doctest::Approx(0.5));
    CHECK(horizon_point(slab(), {2, -0.25}).height == doctest::Approx(0.75));
    CHECK(horizon_point(half_plane(), {0, 2}).height == doctest::Approx(2.0));
    CHECK_THROWS_AS(horizon_point(unit_disk(), {1.5, 0}), Error);
}

TEST_CASE("trace generator examples") {
    Generator g = trace_generator(unit_disk(), {1, 0});
    REQUIRE(g.cut_point);
    CHECK(std::abs(g.cut_point->base.x) < 2e-8);  // ties within tol_near end the bisection
    CHECK(std::abs(g.cut_point->base.y) < 1e-8);
    CHECK(g.cut_point->height == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(g.cut_multiplicity.unbounded);
    CHECK(g.domain_kind == DomainKind::HalfOpenAtFuture);

    g = trace_generator(slab(), {0, 1});
    REQUIRE(g.cut_point);
    CHECK(std::abs(g.cut_point->base.y) < 1e-8);
    CHECK(g.cut_point->height == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(g.cut_multiplicity == kTwo);

    g = trace_generator(half_plane(), {0, 0});
    CHECK(g.open());
    CHECK(std::isinf(g.cut_parameter));
    CHECK_FALSE(g.cut_point);
}

TEST_CASE("trace generator errors") {
    const Region square({HalfPlane{{1, 0}, -1}, HalfPlane{{-1, 0}, -1}, HalfPlane{{0, 1}, -1}, HalfPlane{{0, -1}, -1}});
    try {
        trace_generator(square, {1, 1});
        FAIL("corner accepted");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::Corner);
    }
    CHECK_THROWS_AS(trace_generator(unit_disk(), {0.5, 0}), Error);
}

TEST_CASE("generator multiplicity examples") {
    CHECK(generator_multiplicity(slab(), {{0, 0}, 1}) == kTwo);
    CHECK(generator_multiplicity(slab(), {{0, 0.5}, 0.5}) == kOne);
    CHECK(generator_multiplicity(unit_disk(), {{0, 0}, 1}).unbounded);
}

TEST_CASE("property: corpus generators have unique interior points") {
    for (const Scene& sc : builtin_corpus()) {
        const Region r = sc.region();
        for (const Vec2& f : sc.generators) {
            const Generator g = trace_generator(r, f, trace_options(sc));
            const double range = g.open() ? 10 * sc.scale : g.cut_parameter;
            for (int i = 1; i <= 50; ++i) {
                const HorizonPoint p = g.at(range * i / 51.0);
                CHECK_MESSAGE(generator_multiplicity(r, p, sc.tol_near) == kOne, sc.name);
            }
        }
    }
}

TEST_CASE("property: multiplicity equals the number of traced generators") {
    int checked = 0;
    for (const Scene& sc : builtin_corpus()) {
        if (sc.name == "jump") continue;  // crease feet sit on 1e-16-wide ties
        const Region r = sc.region();
        const CreaseSet cs = crease_sample(r, sc.window, (sc.window.xmax - sc.window.xmin) / 40, sc.tol_near);
        std::size_t used = 0;
        for (const Vec2& q : cs.samples) {
            if (used++ >= 20) break;
            const HorizonPoint p = horizon_point(r, q);
            const Multiplicity m = generator_multiplicity(r, p, sc.tol_near);
            if (m.unbounded) continue;
            const auto gens = generators_through(r, p, trace_options(sc));
            CHECK_MESSAGE(gens.size() == m.value, sc.name);
            for (const Generator& g : gens) {
                // Each traced generator reaches p: p lies on it, before its cut.
                const double s = p.height;
                CHECK(distance(g.at(s).base, p.base) <= 1e-7);
                CHECK(g.cut_parameter >= s - 1e-7);
            }
            ++checked;
        }
    }
    CHECK(checked > 40);
}

TEST_CASE("two-disk union generators") {
    const Region u({DiskUnion({{{-2, 0}, 1}, {{2, 0}, 1}})});
    const Generator g = trace_generator(u, {1, 0});
    REQUIRE(g.cut_point);
    CHECK(g.cut_point->base.x == doctest::Approx(2.0).epsilon(1e-8));
    CHECK(g.cut_multiplicity.unbounded);
}
