#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "chz/error.hpp"
#include "chz/region.hpp"

using namespace chz;

namespace {

const double kPi = std::numbers::pi;

Region unit_disk() { return Region({Disk{{0, 0}, 1}}); }
Region slab() { return Region({HalfPlane{{0, 1}, -1}, HalfPlane{{0, -1}, -1}}); }
Region two_disk_union() { return Region({DiskUnion({{{-2, 0}, 1}, {{2, 0}, 1}})}); }
Region ellipse() { return Region({Ellipse{{0, 0}, 2, 1}}); }

// Dense discretization of a boundary piece for the argmin oracle.
struct Samples {
    std::vector<Vec2> pts;
    double spacing = 0.0;
};

Samples circle_samples(Vec2 c, double r, int n) {
    Samples s;
    for (int i = 0; i < n; ++i) {
        const double a = 2 * kPi * i / n;
        s.pts.push_back(c + Vec2{std::cos(a), std::sin(a)} * r);
    }
    s.spacing = 2 * kPi * r / n;
    return s;
}

Samples ellipse_samples(double a, double b, int n) {
    Samples s;
    for (int i = 0; i < n; ++i) {
        const double t = 2 * kPi * i / n;
        s.pts.push_back({a * std::cos(t), b * std::sin(t)});
    }
    s.spacing = 2 * kPi * std::max(a, b) / n;
    return s;
}

Samples graph_samples(const BumpGraph& g, double x0, double x1, int n) {
    Samples s;
    double longest = 0.0;
    for (int i = 0; i < n; ++i) {
        const double x = x0 + (x1 - x0) * i / (n - 1);
        s.pts.push_back({x, g.value(x)});
        if (i > 0) longest = std::max(longest, distance(s.pts[i], s.pts[i - 1]));
    }
    s.spacing = longest;
    return s;
}

Vec2 argmin(const Samples& s, Vec2 x, double* d) {
    Vec2 best;
    *d = 1e300;
    for (const Vec2& p : s.pts) {
        const double e = distance(p, x);
        if (e < *d) {
            *d = e;
            best = p;
        }
    }
    return best;
}

double nearest_member(const NearestSet& ns, Vec2 p) {
    double best = 1e300;
    for (const Vec2& q : ns.points) best = std::min(best, distance(p, q));
    return best;
}

}  // namespace

TEST_CASE("distance to complement examples") {
    CHECK(unit_disk().distance_to_complement({0, 0}) == doctest::Approx(1.0));
    CHECK(slab().distance_to_complement({7, 0.25}) == doctest::Approx(0.75));
    CHECK(two_disk_union().distance_to_complement({0, 0}) == 0.0);
    CHECK_FALSE(two_disk_union().contains({0, 0}));
}

TEST_CASE("nearest boundary set examples") {
    NearestSet ns = unit_disk().nearest_boundary_set({0.5, 0});
    REQUIRE(ns.unique());
    CHECK(ns.points[0].x == doctest::Approx(1.0));
    CHECK(ns.points[0].y == doctest::Approx(0.0));
    CHECK(ns.distance == doctest::Approx(0.5));

    ns = slab().nearest_boundary_set({0, 0});
    REQUIRE(ns.points.size() == 2);
    CHECK(ns.distance == doctest::Approx(1.0));
    CHECK(nearest_member(ns, {0, 1}) < 1e-12);
    CHECK(nearest_member(ns, {0, -1}) < 1e-12);

    ns = unit_disk().nearest_boundary_set({0, 0});
    CHECK(ns.continuum);
    CHECK(ns.count() == 0);
    CHECK(ns.distance == doctest::Approx(1.0));
}

TEST_CASE("gradient examples") {
    Vec2 g = unit_disk().gradient({0.5, 0});
    CHECK(g.x == doctest::Approx(-1.0));
    CHECK(g.y == doctest::Approx(0.0));
    g = slab().gradient({3, 0.5});
    CHECK(g.x == doctest::Approx(0.0));
    CHECK(g.y == doctest::Approx(-1.0));
    CHECK_THROWS_AS(slab().gradient({0, 0}), Error);
    CHECK_THROWS_AS(unit_disk().gradient({2, 0}), Error);
}

TEST_CASE("crease sample examples") {
    const CreaseSet s = crease_sample(slab(), {-1, 1, -1, 1}, 0.05);
    REQUIRE_FALSE(s.samples.empty());
    for (const Vec2& p : s.samples) CHECK(std::abs(p.y) <= 1e-3);

    CHECK(crease_sample(unit_disk(), {0.2, 0.9, 0.1, 0.6}, 0.05).samples.empty());

    const Region two({AntiDisk{{-2, 0}, 1}, AntiDisk{{2, 0}, 1}});
    const CreaseSet t = crease_sample(two, {-0.5, 0.5, -3, 3}, 0.05);
    REQUIRE(t.samples.size() > 10);
    for (const Vec2& p : t.samples) {
        CHECK(std::abs(p.x) <= 1e-3);
        // Brute-force equidistance to both circles.
        double d1, d2;
        argmin(circle_samples({-2, 0}, 1, 10000), p, &d1);
        argmin(circle_samples({2, 0}, 1, 10000), p, &d2);
        CHECK(std::abs(d1 - d2) <= 1e-3);
    }
}

TEST_CASE("property: 1-Lipschitz, unit gradient, nearest distance equals rho") {
    const Region scenes[] = {unit_disk(), slab(), two_disk_union(), ellipse(),
                             Region({AntiDisk{{-2, 0}, 1}, AntiDisk{{2, 0}, 1}}),
                             Region({BumpGraph(0.0, {{0.5, 0.2, 0.05}, {-0.4, 0.3, -0.08}})})};
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> U(-3, 3);
    for (const Region& r : scenes) {
        for (int i = 0; i < 3000; ++i) {
            const Vec2 x{U(rng), U(rng)};
            const Vec2 y = (i % 2) ? Vec2{U(rng), U(rng)} : x + Vec2{U(rng), U(rng)} * 1e-4;
            const double dx = r.distance_to_complement(x);
            CHECK(std::abs(dx - r.distance_to_complement(y)) <= distance(x, y) + 1e-12);
            if (!r.contains(x)) continue;
            const NearestSet ns = r.nearest_boundary_set(x);
            CHECK(std::abs(ns.distance - dx) <= 1e-12);
            if (ns.unique()) CHECK(std::abs(norm(r.gradient(x)) - 1.0) <= 1e-12);
        }
    }
}

TEST_CASE("property: nearest sets agree with a 10^4-sample boundary argmin") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> U(-1, 1);
    const int n = 10000;
    struct Case {
        Region region;
        Samples samples;
        Rect window;
    };
    const BumpGraph bg(0.0, {{0.3, 0.25, 0.1}, {-0.5, 0.2, 0.05}});
    const Case cases[] = {
        {unit_disk(), circle_samples({0, 0}, 1, n), {-1, 1, -1, 1}},
        {ellipse(), ellipse_samples(2, 1, n), {-2, 2, -1, 1}},
        {Region({Ellipse{{0, 0}, 1, 3}}), ellipse_samples(1, 3, n), {-1, 1, -3, 3}},
        {Region({bg}), graph_samples(bg, -4, 4, n), {-1, 1, -2, 0}},
    };
    for (const Case& c : cases) {
        int checked = 0;
        for (int i = 0; i < 300; ++i) {
            const Vec2 x{0.5 * (c.window.xmin + c.window.xmax) + 0.5 * (c.window.xmax - c.window.xmin) * U(rng),
                         0.5 * (c.window.ymin + c.window.ymax) + 0.5 * (c.window.ymax - c.window.ymin) * U(rng)};
            if (!c.region.contains(x)) continue;
            const NearestSet ns = c.region.nearest_boundary_set(x);
            if (ns.continuum) continue;
            double d;
            const Vec2 b = argmin(c.samples, x, &d);
            ++checked;
            // The sampled minimum can only overshoot, by at most a chord sagitta.
            CHECK(ns.distance <= d + 1e-12);
            CHECK(d - ns.distance <= c.samples.spacing);
            CHECK(nearest_member(ns, b) <= 2 * std::sqrt(c.samples.spacing * ns.distance) + c.samples.spacing);
        }
        CHECK(checked > 100);
    }
}

TEST_CASE("property: ellipse gradient matches central differences") {
    const Region e = ellipse();
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> U(-1, 1);
    int checked = 0;
    for (int i = 0; i < 2000 && checked < 400; ++i) {
        const Vec2 x{2 * U(rng), U(rng)};
        if (!e.contains(x) || e.distance_to_complement(x) < 1e-3 || std::abs(x.y) < 1e-2) continue;
        const NearestSet ns = e.nearest_boundary_set(x);
        if (!ns.unique()) continue;
        const double h = 1e-5;
        const Vec2 fd{(e.distance_to_complement(x + Vec2{h, 0}) - e.distance_to_complement(x - Vec2{h, 0})) / (2 * h),
                      (e.distance_to_complement(x + Vec2{0, h}) - e.distance_to_complement(x - Vec2{0, h})) / (2 * h)};
        const Vec2 g = e.gradient(x);
        CHECK(norm(g - fd) <= 1e-6);
        ++checked;
    }
    CHECK(checked >= 300);
}

TEST_CASE("ellipse medial axis") {
    const Region e = ellipse();
    // Off-axis points on the medial segment |x| < c^2/a have two mirror feet.
    const NearestSet ns = e.nearest_boundary_set({0.7, 0});
    REQUIRE(ns.points.size() == 2);
    CHECK(ns.points[0].x == doctest::Approx(ns.points[1].x));
    CHECK(ns.points[0].y == doctest::Approx(-ns.points[1].y));
    // Beyond the medial endpoint (1.5, 0) the vertex is the unique foot.
    const NearestSet v = e.nearest_boundary_set({1.7, 0});
    REQUIRE(v.unique());
    CHECK(v.points[0].x == doctest::Approx(2.0));
    CHECK(v.distance == doctest::Approx(0.3));
}

TEST_CASE("anti-disk and disk union") {
    const Region two({AntiDisk{{-2, 0}, 1}, AntiDisk{{2, 0}, 1}});
    CHECK(two.distance_to_complement({0, 0}) == doctest::Approx(1.0));
    CHECK(two.nearest_boundary_set({0, 0}).points.size() == 2);
    CHECK_FALSE(two.contains({2, 0}));

    const Region u = two_disk_union();
    CHECK(u.distance_to_complement({-2, 0}) == doctest::Approx(1.0));
    CHECK(u.nearest_boundary_set({-2, 0}).continuum);
    CHECK(u.distance_to_complement({2.5, 0}) == doctest::Approx(0.5));

    // Overlapping disks: the lens boundary is the union of two outer arcs.
    const Region lens({DiskUnion({{{-0.5, 0}, 1}, {{0.5, 0}, 1}})});
    CHECK(lens.distance_to_complement({0, 0}) == doctest::Approx(std::sqrt(0.75)));
    CHECK(lens.nearest_boundary_set({0, 0}).points.size() == 2);
    CHECK(lens.distance_to_complement({1.2, 0}) == doctest::Approx(0.3));
}

TEST_CASE("bump graph profile") {
    const BumpValue z = bump_profile(0.0);
    CHECK(z.value == doctest::Approx(1.0));
    CHECK(z.d1 == doctest::Approx(0.0));
    CHECK(bump_profile(1.0).value == 0.0);
    CHECK(bump_profile(-1.5).value == 0.0);
    const BumpGraph g(1.0, {{0.0, 0.5, 0.2}});
    CHECK(g.value(0.0) == doctest::Approx(0.8));
    CHECK(g.value(2.0) == doctest::Approx(1.0));
    const double h = 1e-6;
    for (double x : {-0.3, 0.1, 0.44}) {
        CHECK(g.d1(x) == doctest::Approx((g.value(x + h) - g.value(x - h)) / (2 * h)).epsilon(1e-6));
        CHECK(g.d2(x) == doctest::Approx((g.d1(x + h) - g.d1(x - h)) / (2 * h)).epsilon(1e-5));
    }
    CHECK_THROWS_AS(BumpGraph(0.0, {{0.0, 0.5, 0.1}, {0.6, 0.5, 0.1}}), Error);
}

TEST_CASE("inward normals and corners") {
    const Vec2 n = ellipse().inward_normal({2, 0});
    CHECK(n.x == doctest::Approx(-1.0));
    const Region square({HalfPlane{{1, 0}, -1}, HalfPlane{{-1, 0}, -1}, HalfPlane{{0, 1}, -1}, HalfPlane{{0, -1}, -1}});
    CHECK_THROWS_AS(square.inward_normal({1, 1}), Error);
    CHECK(square.inward_normal({1, 0.3}).x == doctest::Approx(-1.0));
}
