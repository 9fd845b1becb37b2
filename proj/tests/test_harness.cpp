#include <doctest.h>

#include <cmath>
#include <limits>

#include "chz/curvature.hpp"
#include "chz/error.hpp"
#include "chz/harness.hpp"
#include "chz/pipeline.hpp"
#include "chz/scene.hpp"

using namespace chz;

namespace {

Region slab() { return Region({HalfPlane{{0, 1}, -1}, HalfPlane{{0, -1}, -1}}); }

const HarnessRun& jump_run() {
    static const HarnessRun run = run_scene_harness(builtin_scene("jump"));
    return run;
}

const HarnessRun& two_disk_run() {
    static const HarnessRun run = run_scene_harness(builtin_scene("two_disks"));
    return run;
}

std::vector<const HarnessTerm*> processed(const HarnessReport& r) {
    std::vector<const HarnessTerm*> out;
    for (const HarnessTerm& t : r.terms) {
        if (t.found && t.theta_ok) out.push_back(&t);
    }
    return out;
}

ErrorCode code_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("no error raised");
    return ErrorCode::InvalidArgument;
}

}  // namespace

TEST_CASE("select_params rejects past points below the slice plane") {
    const Region s = slab();
    const Generator g = trace_generator(s, {0, 1});
    CHECK(code_of([&] { select_params(s, g, 0.5, {0.1, 0.1, 0.1}); }) == ErrorCode::PreconditionFailed);
    CHECK(code_of([&] { select_params(s, g, 0.5, {0.0, 0.0, 0.0}); }) == ErrorCode::InvalidArgument);
    CHECK_THROWS_AS(select_params(s, g, 1.5, {0.2, 0.1, 0.1}), Error);  // jump beyond the generator
}

TEST_CASE("select_params on the slab: flat cone-slice arithmetic") {
    const Region s = slab();
    const HarnessParams p = select_params(s, trace_generator(s, {0, 1}), 0.5, {0.2, 0.1, 0.1});
    // u measured from the cut at height 1: time = 1 - u.
    CHECK(p.gamma_f.height == doctest::Approx(0.7));
    CHECK(p.gamma_p.height == doctest::Approx(0.6));
    CHECK(p.time_R == doctest::Approx(0.4));
    CHECK(p.kappa_f == doctest::Approx(1 / 0.3));
    CHECK(p.kappa_p == doctest::Approx(1 / 0.2));
    CHECK(0 < p.kappa_f);
    CHECK(p.kappa_f < p.kappa);
    CHECK(p.kappa + 1 < p.kappa_p);
    // Anchor strictly inside the gamma_p slice, on the normal line at gamma_minus.
    CHECK(distance(p.anchor, p.gamma_p.base) < p.gamma_p.height - p.time_R);
    CHECK(std::abs(p.anchor.x - p.gamma_minus.base.x) < 1e-12);
}

TEST_CASE("jump scene parameters") {
    const HarnessParams& p = jump_run().params;
    CHECK(p.kappa_f < p.kappa_p);
    CHECK(p.kappa_f < p.kappa);
    CHECK(p.kappa + 1 < p.kappa_p);
    CHECK(p.kappa_f == doctest::Approx(1 / (p.gamma_f.height - p.time_R)));
    CHECK(p.kappa_p == doctest::Approx(1 / (p.gamma_p.height - p.time_R)));
    const double target = (p.kappa_f + p.kappa_p) / 2 - 0.5;
    if (p.kappa_f < target && target + 1 < p.kappa_p) CHECK(p.kappa == doctest::Approx(target));
    CHECK(p.gamma_f.height > p.gamma_p.height);
    CHECK(p.gamma_p.height > p.gamma_minus.height);
}

TEST_CASE("jump scene run: curvature comparison and convergence") {
    const HarnessReport& r = jump_run().report;
    const auto terms = processed(r);
    REQUIRE(terms.size() >= 10);
    const HarnessParams& p = r.params;
    for (const HarnessTerm* t : terms) {
        CHECK(t->q_multiplicity >= 2);
        CHECK(t->kappa_theta >= t->kappa_n * (1 - 1e-3));
        CHECK(t->comparison_ok);
        CHECK(std::abs(1 / t->kappa_n - 1 / p.kappa_p) <= 2 * t->resolution);
        CHECK(t->tangency_res1 <= t->tangency_tol);
        CHECK(t->tangency_res2 <= t->tangency_tol);
        // q_n approaches gamma(t^p) within its shrinking window.
        CHECK(distance(t->q.base, p.gamma_p.base) <= t->window);
    }
    const HarnessTerm* first = terms.front();
    const HarnessTerm* last = terms.back();
    // Chord endpoints approach gamma(t^-).
    CHECK(distance(last->p1, p.gamma_minus.base) <= distance(first->p1, p.gamma_minus.base) + 1e-12);
    CHECK(distance(last->p2, p.gamma_minus.base) <= distance(first->p2, p.gamma_minus.base) + 1e-12);
    CHECK(distance(last->p1, p.gamma_minus.base) <= 2 * last->window);
    // Cone slice of q_n on R converges to that of gamma(t^p).
    const double gap = distance(last->q.base, p.gamma_p.base) +
                       std::abs((last->q.height - p.time_R) - (p.gamma_p.height - p.time_R));
    CHECK(gap <= 2 * last->window);
    // Limit of generators: the feet through q_n approach the footpoint at (0, 0).
    CHECK(distance(last->foot1, p.generator.footpoint) <= distance(first->foot1, p.generator.footpoint) + 1e-12);
    CHECK(distance(last->foot1, p.generator.footpoint) <= 4 * last->window);
}

TEST_CASE("jump scene verdict") {
    const Verdict& v = jump_run().verdict;
    CHECK(v.liminf_ok);
    CHECK(v.non_stabilization);
    CHECK(v.achronal);
    CHECK(v.theta_checked > 0);
    CHECK(v.pass());
}

TEST_CASE("two-disk control: symmetric construction") {
    const HarnessReport& r = two_disk_run().report;
    const auto terms = processed(r);
    REQUIRE_FALSE(terms.empty());
    for (const HarnessTerm* t : terms) {
        CHECK(std::abs(t->q.base.x) <= 1e-6);  // crease x = 0
        CHECK(t->q_multiplicity == 2);
        CHECK(t->foot1.x * t->foot2.x < 0);  // opposite disks
        CHECK(t->p1.x == doctest::Approx(-t->p2.x).epsilon(1e-6));
        CHECK(t->p1.y == doctest::Approx(t->p2.y).epsilon(1e-6));
        CHECK(t->tangency_res1 <= t->tangency_tol);
        CHECK(t->tangency_res2 <= t->tangency_tol);
    }
}

TEST_CASE("two-disk control verdict: estimates stabilize, achronality holds") {
    const Verdict& v = two_disk_run().verdict;
    CHECK_FALSE(v.non_stabilization);
    CHECK(v.achronal);
    CHECK_FALSE(v.pass());
}

TEST_CASE("disk apex: crease exhaustion") {
    const HarnessRun run = run_scene_harness(builtin_scene("disk"));
    CHECK(run.report.exhausted);
    CHECK(processed(run.report).empty());
    CHECK(run.report.terms.back().note == "crease exhausted");
}

TEST_CASE("synthetic theta on an exact circle passes the liminf clause") {
    HarnessReport rep = jump_run().report;
    const double k = rep.params.kappa_p + 1;
    for (HarnessTerm& t : rep.terms) {
        if (!(t.found && t.theta_ok)) continue;
        // Circle of curvature k through r_n with the inward normal (0, 1).
        const Vec2 r{0, 0};
        const double a = 0.3;
        const Vec2 q{std::sin(a) / k, (1 - std::cos(a)) / k};
        t.kappa_theta = tangent_circle_curvature(r, {0, 1}, q);
        CHECK(t.kappa_theta == doctest::Approx(k).epsilon(1e-12));
    }
    const Verdict v = contradiction_summary(builtin_scene("jump").region(), rep);
    CHECK(v.liminf_ok);
}

TEST_CASE("estimate stabilization rule") {
    CHECK(estimates_stabilize({1.0, 1.001, 1.0005, 1.0002}));
    CHECK_FALSE(estimates_stabilize({1.0, 2.0, 4.0, 8.0}));
    CHECK_FALSE(estimates_stabilize({1.0, 1.0}));
    CHECK_FALSE(estimates_stabilize({1.0, 1.0, std::numeric_limits<double>::infinity()}));
}

TEST_CASE("Lmodel reconstruction: half-plane") {
    const Region hp({HalfPlane{{0, 1}, 0}});
    const HorizonPoint c{{0, 2}, 2};
    const double spacing = 0.3 / 50;
    const Region rec = lmodel_reconstruct(hp, c, 0.3, 1.0);
    CHECK(lmodel_verify(hp, rec, c, 0.3, spacing, 1.0) <= 2 * spacing);
    const Region half = lmodel_drop_half(rec, c.base, hp.gradient(c.base));
    CHECK(lmodel_verify(hp, half, c, 0.3, spacing, 1.0) > 2 * spacing);
}

TEST_CASE("Lmodel reconstruction: unit disk") {
    const Region d({Disk{{0, 0}, 1}});
    const HorizonPoint c{{0.5, 0}, 0.5};
    const double spacing = 0.1 / 50;
    const Region rec = lmodel_reconstruct(d, c, 0.1, 0.0);
    // S' lies inside S: every disk I^-(q) cut at t = 0 sits under the horizon.
    for (const Disk& k : std::get<DiskUnion>(rec.primitives().front()).disks()) {
        CHECK(norm(k.center) + k.radius <= 1 + 1e-9);
    }
    CHECK(lmodel_verify(d, rec, c, 0.1, spacing, 0.0) <= 2 * spacing);
    const Region half = lmodel_drop_half(rec, c.base, d.gradient(c.base));
    CHECK(lmodel_verify(d, half, c, 0.1, spacing, 0.0) > 0.0);
}

TEST_CASE("Lmodel degenerate neighbourhood: one disk, its cone touching H at the center") {
    const Region d({Disk{{0, 0}, 1}});
    const HorizonPoint c{{0.5, 0}, 0.5};
    const Region rec = lmodel_reconstruct(d, c, 1e-9, 0.0, 1.0);
    const auto& disks = std::get<DiskUnion>(rec.primitives().front()).disks();
    REQUIRE(disks.size() == 1);
    CHECK(rec.distance_to_complement(c.base) == doctest::Approx(c.height));
    // The cone over the disk has its apex at the center and stays below H.
    for (double a = 0; a < 6.28; a += 0.5) {
        for (double r : {0.01, 0.1, 0.4}) {
            const Vec2 x = c.base + Vec2{std::cos(a), std::sin(a)} * r;
            CHECK(rec.distance_to_complement(x) == doctest::Approx(c.height - r));
            CHECK(d.distance_to_complement(x) >= rec.distance_to_complement(x) - 1e-12);
        }
    }
}

TEST_CASE("scene L-model runs") {
    for (const char* name : {"half_plane", "disk"}) {
        const LmodelRun lm = run_scene_lmodel(builtin_scene(name));
        CHECK_MESSAGE(lm.pass(), name);
        CHECK(lm.gap <= lm.bound);
        CHECK(lm.control_gap > lm.bound);
    }
}
