#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "chz/harness.hpp"
#include "chz/region.hpp"

namespace chz {

struct HarnessBlock {
    bool present = false;
    std::optional<Vec2> footpoint;
    std::optional<double> jump;  // absent: located from the classifier profile
    Margins margins;             // in units of the scene scale
    int terms = 10;
};

struct LmodelBlock {
    bool present = false;
    Vec2 center;
    double radius = 0.1;
    double plane_time = 0.0;
};

/// Parsed scene file. Grammar: docs/scene-format.md.
struct Scene {
    std::string name;
    int dimension = 2;
    std::uint64_t seed = 1;
    double scale = 1.0;
    double tol_near = kTolNear;
    Rect window{-2.0, 2.0, -2.0, 2.0};
    std::vector<Primitive> primitives;
    std::vector<Vec2> generators;
    HarnessBlock harness;
    LmodelBlock lmodel;

    Region region() const;
};

/// Strict parser: unknown keys, malformed numbers and missing primitives
/// raise Error(ErrorCode::Parse) naming the source and line.
Scene parse_scene(const std::string& text, const std::string& source = "<scene>");
Scene load_scene(const std::string& path);
std::string format_scene(const Scene& scene);
std::string format_primitive(const Primitive& p);

/// Convex polygon as half-planes; vertices in either orientation.
std::vector<HalfPlane> polygon_half_planes(const std::vector<Vec2>& vertices);

/// Bundled corpus: half_plane, slab, disk, two_disks, two_disk_union,
/// ellipse, jump.
std::vector<Scene> builtin_corpus();
Scene builtin_scene(const std::string& name);

}  // namespace chz
