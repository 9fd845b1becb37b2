#pragma once

#include <span>
#include <vector>

#include "chz/vec.hpp"

namespace chz {

/// Event in flat d+1 Minkowski space: spatial position x and time t.
struct SpacetimePoint {
    std::vector<double> x;
    double t = 0.0;

    SpacetimePoint() = default;
    SpacetimePoint(std::vector<double> x_, double t_);
    SpacetimePoint(Vec2 base, double t_) : SpacetimePoint(std::vector<double>{base.x, base.y}, t_) {}

    std::size_t dimension() const { return x.size(); }
    /// Spatial part as a plane point; only valid for d = 2.
    Vec2 base() const;
};

/// Boundary of the slice of a past cone by the plane {t = plane_time}. In flat
/// space this is exactly a round sphere of the given radius.
struct SphereSlice {
    std::vector<double> center;
    double radius = 0.0;
    double plane_time = 0.0;

    /// Normal curvature with respect to the inward normal; identical in every
    /// tangent direction, so it is both the maximum and the minimum.
    double normal_curvature() const { return 1.0 / radius; }
    double max_normal_curvature() const { return normal_curvature(); }
    double min_normal_curvature() const { return normal_curvature(); }
    /// Open ball membership (interior of the slice, i.e. the chronological past).
    bool interior_contains(std::span<const double> p) const;
};

double spatial_distance(std::span<const double> a, std::span<const double> b);

/// q in J^-(p): |x_q - x_p| <= t_p - t_q.
bool causally_precedes(const SpacetimePoint& q, const SpacetimePoint& p);
/// q in I^-(p): |x_q - x_p| < t_p - t_q.
bool chronologically_precedes(const SpacetimePoint& q, const SpacetimePoint& p);

SphereSlice past_cone_slice(const SpacetimePoint& p, double plane_time);

}  // namespace chz
