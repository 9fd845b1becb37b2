#include "chz/minkowski.hpp"

#include <cmath>
#include <string>

#include "chz/error.hpp"

namespace chz {

namespace {

void require_finite(const SpacetimePoint& p) {
    for (double c : p.x) {
        if (!std::isfinite(c)) throw Error(ErrorCode::InvalidArgument, "non-finite coordinate");
    }
    if (!std::isfinite(p.t)) throw Error(ErrorCode::InvalidArgument, "non-finite time");
}

void require_same_dimension(const SpacetimePoint& a, const SpacetimePoint& b) {
    if (a.dimension() != b.dimension()) {
        throw Error(ErrorCode::DimensionMismatch,
                    std::to_string(a.dimension()) + " vs " + std::to_string(b.dimension()));
    }
}

}  // namespace

SpacetimePoint::SpacetimePoint(std::vector<double> x_, double t_) : x(std::move(x_)), t(t_) {
    if (x.empty()) throw Error(ErrorCode::InvalidArgument, "spatial dimension must be >= 1");
    require_finite(*this);
}

Vec2 SpacetimePoint::base() const {
    if (x.size() != 2) throw Error(ErrorCode::DimensionMismatch, "base() needs d = 2");
    return {x[0], x[1]};
}

double spatial_distance(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) throw Error(ErrorCode::DimensionMismatch, "spatial distance");
    // Scaled accumulation keeps the result exact-ish for widely different magnitudes.
    double scale = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) scale = std::max(scale, std::abs(a[i] - b[i]));
    if (scale == 0.0) return 0.0;
    double sum = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = (a[i] - b[i]) / scale;
        sum += d * d;
    }
    return scale * std::sqrt(sum);
}

bool causally_precedes(const SpacetimePoint& q, const SpacetimePoint& p) {
    require_same_dimension(q, p);
    return spatial_distance(q.x, p.x) <= p.t - q.t;
}

bool chronologically_precedes(const SpacetimePoint& q, const SpacetimePoint& p) {
    require_same_dimension(q, p);
    return spatial_distance(q.x, p.x) < p.t - q.t;
}

SphereSlice past_cone_slice(const SpacetimePoint& p, double plane_time) {
    if (!(plane_time < p.t)) {
        throw Error(ErrorCode::EmptySlice, "plane at or above the cone vertex");
    }
    return SphereSlice{p.x, p.t - plane_time, plane_time};
}

bool SphereSlice::interior_contains(std::span<const double> p) const {
    return spatial_distance(p, center) < radius;
}

}  // namespace chz
