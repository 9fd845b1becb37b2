#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "chz/vec.hpp"

namespace chz {

inline constexpr double kTolNear = 1e-8;

// Primitive catalog. Each primitive describes an open set S_i; a Region is the
// intersection of its primitives, so its complement is the union of the
// primitive complements and the distance to it is the minimum of the
// per-primitive distances.

/// {x : normal . x > offset}; normal has unit length.
struct HalfPlane {
    Vec2 normal{0.0, 1.0};
    double offset = 0.0;
};

/// Open disk.
struct Disk {
    Vec2 center;
    double radius = 1.0;
};

/// Exterior of a closed disk.
struct AntiDisk {
    Vec2 center;
    double radius = 1.0;
};

/// Open axis-aligned ellipse with semi-axes a (along x) and b (along y).
struct Ellipse {
    Vec2 center;
    double a = 1.0;
    double b = 1.0;
};

/// One term depth * phi((x - center) / half_width) of a bump graph.
struct Bump {
    double center = 0.0;
    double half_width = 1.0;
    double depth = 0.0;
};

/// Smooth compactly supported profile phi(z) = exp(1 - 1/(1 - z^2)) on |z| < 1,
/// normalized to phi(0) = 1, together with its first two derivatives.
struct BumpValue {
    double value = 0.0;
    double d1 = 0.0;
    double d2 = 0.0;
};
BumpValue bump_profile(double z);

/// {(x, y) : y < B(x)} with B(x) = level - sum_k depth_k phi((x - c_k) / w_k).
/// Bump supports must be pairwise disjoint.
class BumpGraph {
public:
    BumpGraph(double level, std::vector<Bump> bumps);

    double level() const { return level_; }
    const std::vector<Bump>& bumps() const { return bumps_; }

    double value(double x) const;
    double d1(double x) const;
    double d2(double x) const;

private:
    /// Index of the bump whose open support contains x, or -1.
    int bump_at(double x) const;

    double level_;
    std::vector<Bump> bumps_;  // sorted by center
};

/// Uncovered piece of one circle of a disk union: angles [start, start + length].
struct Arc {
    std::size_t disk = 0;
    double start = 0.0;
    double length = 0.0;
    Vec2 bound_center;  // enclosing circle of the arc
    double bound_radius = 0.0;
};

/// Union of open disks, stored with the arcs of its boundary.
class DiskUnion {
public:
    explicit DiskUnion(std::vector<Disk> disks);

    const std::vector<Disk>& disks() const { return disks_; }
    const std::vector<Arc>& arcs() const { return arcs_; }

private:
    std::vector<Disk> disks_;
    std::vector<Arc> arcs_;
};

using Primitive = std::variant<HalfPlane, Disk, AntiDisk, Ellipse, BumpGraph, DiskUnion>;

const char* primitive_name(const Primitive& p);

/// Nearest points of the complement. `continuum` marks an infinite nearest set
/// (e.g. the center of a disk); `points` is then empty.
struct NearestSet {
    double distance = 0.0;
    std::vector<Vec2> points;
    bool continuum = false;

    /// Number of nearest points, or 0 for a continuum.
    std::size_t count() const { return continuum ? 0 : points.size(); }
    bool unique() const { return !continuum && points.size() == 1; }
};

/// Open subset S of the initial plane built from primitives.
class Region {
public:
    Region() = default;
    explicit Region(std::vector<Primitive> primitives, std::string name = {}, double scale = 1.0);

    const std::vector<Primitive>& primitives() const { return primitives_; }
    const std::string& name() const { return name_; }
    /// Characteristic length used to scale probe radii and windows.
    double scale() const { return scale_; }

    bool contains(Vec2 x) const;
    /// rho(x) = dist(x, R^2 \ S); zero outside S.
    double distance_to_complement(Vec2 x) const;
    /// All global minimizers of the distance to the boundary. Distances within
    /// tol of the minimum count as ties; points closer than tol are merged.
    NearestSet nearest_boundary_set(Vec2 x, double tol = kTolNear) const;
    /// Gradient (x - y) / rho(x) at a point with a unique nearest point y.
    Vec2 gradient(Vec2 x, double tol = kTolNear) const;
    /// Inward unit normal at a boundary point; throws on corners.
    Vec2 inward_normal(Vec2 boundary_point, double tol = 1e-9) const;

private:
    std::vector<Primitive> primitives_;
    std::string name_;
    double scale_ = 1.0;
};

/// Points with at least two nearest boundary points found in a window.
struct CreaseSet {
    std::vector<Vec2> samples;
    Rect window;
    double step = 0.0;
};

/// Grid scan of the window; every grid edge whose nearest-point identity
/// changes is bisected down to a point where the nearest set has two members.
CreaseSet crease_sample(const Region& region, Rect window, double step, double tol = kTolNear);

/// Bisection on the segment [a, b] for a jump of the nearest-point map.
/// Returns a point whose nearest set has at least two members, if any.
std::optional<Vec2> locate_crease(const Region& region, Vec2 a, Vec2 b, double tol = kTolNear);

}  // namespace chz
