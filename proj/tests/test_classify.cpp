#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "chz/classify.hpp"
#include "chz/error.hpp"
#include "chz/pipeline.hpp"
#include "chz/scene.hpp"

using namespace chz;

namespace {

Region slab() { return Region({HalfPlane{{0, 1}, -1}, HalfPlane{{0, -1}, -1}}); }
Region ellipse() { return Region({Ellipse{{0, 0}, 2, 1}}); }

// Shared by several cases; computed on first use.
const GeneratorProfile& jump_profile() {
    static const GeneratorProfile prof = [] {
        const Scene sc = builtin_scene("jump");
        const Region r = sc.region();
        const Generator g = trace_generator(r, {0, 0}, trace_options(sc));
        GeneratorProfile p = classify_generator(r, g, 24, classify_options(sc));
        p.jump = locate_jump(p, 12);
        return p;
    }();
    return prof;
}

bool any_crease_within(const Region& r, Vec2 x, double radius, double tol) {
    const CreaseSet cs = crease_sample(r, {x.x - radius, x.x + radius, x.y - radius, x.y + radius}, radius / 20, tol);
    return std::any_of(cs.samples.begin(), cs.samples.end(), [&](Vec2 q) { return distance(q, x) <= radius; });
}

// Cut samples with N >= 2 take their label from the traced multiplicity.
bool probe_free(const GeneratorProfile& p, const ProfileSample& s) {
    return s.u == 0.0 && p.generator.cut_multiplicity.at_least_two();
}

}  // namespace

TEST_CASE("classify point examples") {
    CHECK(classify_point(slab(), {{0, 0}, 1}).label == DiffLabel::NotDifferentiable);
    CHECK(classify_point(slab(), {{0, 0.5}, 0.5}).label == DiffLabel::C2Plus);
    const Region e = ellipse();
    const DiffClass c = classify_point(e, {{1.5, 0}, e.distance_to_complement({1.5, 0})});
    CHECK(c.label == DiffLabel::DifferentiableOnly);
    CHECK(c.multiplicity.value == 1);
    // Gradient oscillation stays bounded below as the probe radius shrinks.
    for (double w : c.omega) CHECK(w >= 1e-2);
}

TEST_CASE("label names round-trip") {
    for (DiffLabel l : {DiffLabel::NotDifferentiable, DiffLabel::DifferentiableOnly, DiffLabel::C1NotC2,
                        DiffLabel::C2Plus}) {
        CHECK(parse_label(to_string(l)) == l);
    }
    CHECK_FALSE(parse_label("C3"));
}

TEST_CASE("classify generator: slab") {
    const Region s = slab();
    const GeneratorProfile p = classify_generator(s, trace_generator(s, {0, 1}), 16);
    REQUIRE(p.samples.size() == 16);
    CHECK(p.samples[0].cls.label == DiffLabel::NotDifferentiable);
    for (std::size_t i = 1; i < p.samples.size(); ++i) CHECK(p.samples[i].cls.label == DiffLabel::C2Plus);
    CHECK_FALSE(p.jump);
    CHECK_FALSE(locate_jump(p, 8));
    const StructureReport rep = verify_structure(p);
    CHECK(rep.pass());
    CHECK_FALSE(rep.k_clause_active);
}

TEST_CASE("classify generator: ellipse vertex") {
    const Region e = ellipse();
    const GeneratorProfile p = classify_generator(e, trace_generator(e, {2, 0}), 16);
    CHECK(p.samples[0].cls.label == DiffLabel::DifferentiableOnly);
    CHECK(p.samples[0].point.base.x == doctest::Approx(1.5).epsilon(1e-6));
    for (std::size_t i = 1; i < p.samples.size(); ++i) CHECK(p.samples[i].cls.label == DiffLabel::C2Plus);
    CHECK_FALSE(p.jump);
    CHECK_FALSE(locate_jump(p, 8));
    CHECK(verify_structure(p).pass());
}

TEST_CASE("classify generator rejects too few samples") {
    const Region s = slab();
    CHECK_THROWS_AS(classify_generator(s, trace_generator(s, {0, 1}), 4), Error);
}

TEST_CASE("jump scene profile") {
    const GeneratorProfile& p = jump_profile();
    REQUIRE(p.jump);
    const double u0 = *p.jump;
    CHECK(u0 > 0.0);
    CHECK(u0 < p.range);
    for (const ProfileSample& s : p.samples) {
        if (s.u <= 0.0) continue;
        CHECK(s.cls.label == (s.u <= u0 ? DiffLabel::DifferentiableOnly : DiffLabel::C1NotC2));
    }
    const StructureReport rep = verify_structure(p);
    CHECK(rep.pass());
    CHECK(rep.k_clause_active);
}

TEST_CASE("jump location matches direct crease-distance measurements") {
    const GeneratorProfile& p = jump_profile();
    REQUIRE(p.jump);
    const Region& r = *p.region;
    const double rmax = default_probe_radii(r).front();
    const double du = 1e-3 * p.range;
    // Below the jump the crease accumulates on the generator, above it stays away.
    for (double u : {*p.jump - du, *p.jump - 10 * du}) {
        CHECK(any_crease_within(r, p.point_at(u).base, rmax, p.options.tol_near));
    }
    for (double u : {*p.jump + du, *p.jump + 10 * du}) {
        CHECK_FALSE(any_crease_within(r, p.point_at(u).base, rmax, p.options.tol_near));
    }
}

TEST_CASE("negative control: corrupted profiles are reported") {
    GeneratorProfile p = jump_profile();
    REQUIRE(p.jump);
    auto past = std::find_if(p.samples.begin(), p.samples.end(), [&](const ProfileSample& s) { return s.u > *p.jump; });
    REQUIRE(past != p.samples.end());

    GeneratorProfile c2 = p;
    c2.samples[static_cast<std::size_t>(past - p.samples.begin())].cls.label = DiffLabel::C2Plus;
    const StructureReport a = verify_structure(c2);
    CHECK_FALSE(a.pass());
    CHECK_FALSE(a.k_equals_one);

    GeneratorProfile back = p;
    back.samples.back().cls.label = DiffLabel::DifferentiableOnly;
    const StructureReport b = verify_structure(back);
    CHECK_FALSE(b.pass());
    CHECK_FALSE(b.monotone);

    GeneratorProfile cut = p;
    cut.samples.front().cls.label = DiffLabel::DifferentiableOnly;  // cut has N >= 2
    CHECK_FALSE(verify_structure(cut).pass());
}

TEST_CASE("jump search family members") {
    const JumpFamily fam;
    // No dips: a flat boundary, every sample C2Plus.
    {
        const Region r = make_jump_region(fam, 0.3, 0.0, 0.0);
        TraceOptions t;
        t.tol_near = fam.tol_near;
        const Generator g = trace_generator(r, {0, 0}, t);
        CHECK(g.open());
    }
    // Constant dip amplitude: the crease reaches the generator at its footpoint.
    {
        const Region r = make_jump_region(fam, 0.3, 0.5, 0.0);
        TraceOptions t;
        t.tol_near = fam.tol_near;
        const Generator g = trace_generator(r, {0, 0}, t);
        CHECK(g.cut_parameter < 1e-5 * fam.scale);
    }
    const JumpSearchResult res = search_jump_scene(fam, 24);
    REQUIRE(res.attempts.size() >= 2);
    CHECK(res.attempts.front().amplitude == 0.0);
    CHECK(res.attempts.front().c2 == static_cast<std::size_t>(fam.n_samples));
    CHECK_FALSE(res.attempts.front().pass);
    CHECK(res.attempts.back().pass);
    for (std::size_t i = 0; i + 1 < res.attempts.size(); ++i) CHECK_FALSE(res.attempts[i].pass);
    CHECK(res.profile.jump);
    CHECK(res.structure.k_clause_active);

    try {
        search_jump_scene(fam, 2);
        FAIL("budget of 2 found a jump");
    } catch (const JumpSearchError& e) {
        CHECK(e.code() == ErrorCode::NoSceneFound);
        CHECK(e.attempts().size() == 2);
    }
}

TEST_CASE("property: labels agree with multiplicity on corpus profiles") {
    for (const Scene& sc : builtin_corpus()) {
        if (sc.name == "jump") continue;
        const Region r = sc.region();
        for (const Vec2& f : sc.generators) {
            const GeneratorProfile p =
                classify_generator(r, trace_generator(r, f, trace_options(sc)), 12, classify_options(sc));
            for (const ProfileSample& s : p.samples) {
                CHECK_MESSAGE((s.cls.label == DiffLabel::NotDifferentiable) == s.cls.multiplicity.at_least_two(),
                              sc.name);
            }
            CHECK_MESSAGE(verify_structure(p).pass(), sc.name);
        }
    }
    for (const ProfileSample& s : jump_profile().samples) {
        CHECK((s.cls.label == DiffLabel::NotDifferentiable) == s.cls.multiplicity.at_least_two());
    }
}

TEST_CASE("property: halving the probe radii keeps every label") {
    auto halved = [](const Region& r, ClassifyOptions o) {
        o.probe_radii = default_probe_radii(r);
        for (double& x : o.probe_radii) x *= 0.5;
        return o;
    };
    for (const Scene& sc : builtin_corpus()) {
        if (sc.name == "jump") continue;
        const Region r = sc.region();
        const ClassifyOptions half = halved(r, classify_options(sc));
        for (const Vec2& f : sc.generators) {
            const GeneratorProfile p =
                classify_generator(r, trace_generator(r, f, trace_options(sc)), 12, classify_options(sc));
            for (const ProfileSample& s : p.samples) {
                if (probe_free(p, s)) continue;
                CHECK_MESSAGE(classify_point(r, s.point, half).label == s.cls.label, sc.name, " u=", s.u);
            }
        }
    }
    const GeneratorProfile& p = jump_profile();
    const ClassifyOptions half = halved(*p.region, p.options);
    for (const ProfileSample& s : p.samples) {
        if (probe_free(p, s)) continue;
        CHECK_MESSAGE(classify_point(*p.region, s.point, half).label == s.cls.label, "jump u=", s.u);
    }
}
