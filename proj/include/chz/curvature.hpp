#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "chz/minkowski.hpp"

namespace chz {

enum class Provenance { ClosedForm, Sampled };

/// Function graph t -> (t, f(t)) over [alpha, beta] with pointwise first and
/// second derivatives (the second may be discontinuous).
struct PlaneGraph {
    double alpha = 0.0;
    double beta = 1.0;
    std::function<double(double)> eval;
    std::function<double(double)> deriv1;
    std::function<double(double)> deriv2;
    Provenance provenance = Provenance::ClosedForm;
    double step = 0.0;  // difference step of sampled graphs

    bool in_domain(double t) const { return t >= alpha && t <= beta; }

    static PlaneGraph closed_form(double alpha, double beta, std::function<double(double)> f,
                                  std::function<double(double)> d1, std::function<double(double)> d2);
    /// Derivatives by central differences at `step` with one Richardson step.
    static PlaneGraph from_function(double alpha, double beta, std::function<double(double)> f, double step);
    /// Uniform samples over [alpha, beta], interpolated by local cubics.
    static PlaneGraph from_samples(double alpha, double beta, std::vector<double> values);
};

/// Largest deviation of deriv1/deriv2 from finite differences of eval and
/// deriv1 at n random interior points.
double derivative_consistency(const PlaneGraph& g, int n = 20, std::uint64_t seed = 7);

/// f''/(1+f'^2)^(3/2); positive when bending toward (-f', 1).
double formal_curvature(const PlaneGraph& g, double t0);

/// Reciprocal radius of the circle tangent at t0 through (t, f(t)).
double tangent_circle_curvature(const PlaneGraph& g, double t0, double t);
/// Same estimator from a point, a unit normal there, and a second point.
double tangent_circle_curvature(Vec2 p0, Vec2 normal, Vec2 p);

/// First t* scanning t0 +- radius * 2^-k toward t0 with f(t*) < g(t*) - 1e-12.
std::optional<double> separation_point(const PlaneGraph& f, const PlaneGraph& g, double t0, double radius);

struct HighCurvature {
    double t_star = 0.0;
    double kappa_g = 0.0;
    double min_kappa_f = 0.0;  // over the scan grid and t_star
    double gap = 0.0;          // max(f - g)
};

/// Touching parameter of f - C and g, C = max(f - g), for g <= f tangent at
/// both endpoints (values and slopes within tangency_tol).
HighCurvature high_curvature_point(const PlaneGraph& f, const PlaneGraph& g, int grid = 2000,
                                   double tangency_tol = 1e-6);

/// Plane through `point` spanned by u and v.
struct AffinePlane {
    std::vector<double> point;
    std::vector<double> u;
    std::vector<double> v;
};

/// Curvature of the circle cut from the sphere by a plane through y on it.
double meusnier_section_curvature(const SphereSlice& sphere, const AffinePlane& plane);

}  // namespace chz
