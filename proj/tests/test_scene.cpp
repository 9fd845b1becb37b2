#include <doctest.h>

#include <cmath>
#include <string>
#include <variant>

#include "chz/error.hpp"
#include "chz/scene.hpp"

using namespace chz;

namespace {

const std::string kDisk = "name = d\nprimitive = disk center=0,0 radius=1\n";

// Returns the message of the parse error, or "" when parsing succeeds.
std::string parse_error(const std::string& text) {
    try {
        parse_scene(text, "s.scene");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::Parse);
        return e.what();
    }
    return "";
}

bool mentions(const std::string& msg, const std::string& part) { return msg.find(part) != std::string::npos; }

}  // namespace

TEST_CASE("minimal scene and defaults") {
    const Scene sc = parse_scene(kDisk);
    CHECK(sc.name == "d");
    CHECK(sc.dimension == 2);
    CHECK(sc.scale == 1.0);
    CHECK(sc.tol_near == kTolNear);
    REQUIRE(sc.primitives.size() == 1);
    CHECK(std::holds_alternative<Disk>(sc.primitives[0]));
    CHECK_FALSE(sc.harness.present);
    CHECK_FALSE(sc.lmodel.present);
}

TEST_CASE("comments and blank lines are ignored") {
    const Scene sc = parse_scene("# header\n\n  name = d   # trailing\nprimitive = disk center=0,0 radius=2\n\n");
    CHECK(sc.name == "d");
    CHECK(sc.region().distance_to_complement({0, 0}) == doctest::Approx(2.0));
}

TEST_CASE("parse errors name the source line") {
    CHECK(mentions(parse_error(kDisk + "colour = red\n"), "s.scene:3"));
    CHECK(mentions(parse_error(kDisk + "colour = red\n"), "unknown key"));
    CHECK(mentions(parse_error("name = d\nprimitive = disk center=0,0 radius=1 spin=2\n"), "s.scene:2"));
    CHECK(mentions(parse_error(kDisk + "name = e\n"), "duplicate key"));
    CHECK(mentions(parse_error(kDisk + "scale = 1.0x\n"), "bad number"));
    CHECK(mentions(parse_error(kDisk + "scale = -1\n"), "s.scene:3"));
    CHECK(mentions(parse_error(kDisk + "dimension = 3\n"), "dimension"));
    CHECK(mentions(parse_error(kDisk + "window = 1,0,0,1\n"), "window"));
    CHECK(mentions(parse_error(kDisk + "just words\n"), "s.scene:3"));
    CHECK(mentions(parse_error("name = d\nprimitive = blob\n"), "s.scene:2"));
    CHECK(mentions(parse_error("name = d\nprimitive = disk center=0,0 radius=1 radius=2\n"), "duplicate parameter"));
    CHECK(mentions(parse_error("name = d\nprimitive = disk center=0,0\n"), "s.scene:2"));
}

TEST_CASE("missing required fields") {
    CHECK(mentions(parse_error("primitive = disk center=0,0 radius=1\n"), "missing 'name'"));
    CHECK(mentions(parse_error("name = d\n"), "no primitives"));
    CHECK(mentions(parse_error(kDisk + "harness.margins = 0.1,0.1,0.1\n"), "harness.footpoint"));
    CHECK(mentions(parse_error(kDisk + "harness.footpoint = 1,0\n"), "harness.margins"));
}

TEST_CASE("jump family width range") {
    const std::string base = "name = j\nprimitive = jump_family level=0 dips=4 amplitude=0.5 decay=1 width=";
    CHECK(parse_error(base + "0.3\n").empty());
    CHECK(mentions(parse_error(base + "0\n"), "width"));
    CHECK(mentions(parse_error(base + "0.34\n"), "width"));
}

TEST_CASE("polygon primitive becomes half-planes") {
    const Scene sc = parse_scene("name = sq\nprimitive = polygon vertices=-1,-1;1,-1;1,1;-1,1\n");
    REQUIRE(sc.primitives.size() == 4);
    const Region r = sc.region();
    CHECK(r.distance_to_complement({0, 0}) == doctest::Approx(1.0));
    CHECK(r.distance_to_complement({0.5, 0.25}) == doctest::Approx(0.5));
    CHECK_FALSE(r.contains({1.5, 0}));

    // Either orientation gives the same region.
    const auto cw = polygon_half_planes({{-1, -1}, {-1, 1}, {1, 1}, {1, -1}});
    const Region r2(std::vector<Primitive>(cw.begin(), cw.end()));
    CHECK(r2.distance_to_complement({0.5, 0.25}) == doctest::Approx(0.5));

    CHECK_THROWS_AS(polygon_half_planes({{0, 0}, {1, 0}}), Error);
    CHECK_THROWS_AS(polygon_half_planes({{0, 0}, {2, 0}, {1, 0.2}, {1, 2}, {0, 2}}), Error);
}

TEST_CASE("format_scene round-trips") {
    for (const Scene& sc : builtin_corpus()) {
        const std::string once = format_scene(sc);
        const std::string twice = format_scene(parse_scene(once, sc.name));
        CHECK_MESSAGE(once == twice, sc.name);
    }
}

TEST_CASE("builtin corpus") {
    const auto corpus = builtin_corpus();
    CHECK(corpus.size() == 7);
    for (const char* n : {"half_plane", "slab", "disk", "two_disks", "two_disk_union", "ellipse", "jump"}) {
        CHECK(builtin_scene(n).name == n);
    }
    CHECK_THROWS_AS(builtin_scene("nope"), Error);
}

TEST_CASE("bundled scene files match the built-in corpus") {
    for (const Scene& sc : builtin_corpus()) {
        const std::string path = std::string(CHZ_SOURCE_DIR) + "/scenes/" + sc.name + ".scene";
        CHECK_MESSAGE(format_scene(load_scene(path)) == format_scene(sc), path);
    }
    CHECK_THROWS_AS(load_scene(std::string(CHZ_SOURCE_DIR) + "/scenes/missing.scene"), Error);
}
