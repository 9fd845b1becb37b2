#include "chz/curvature.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <random>

#include "chz/error.hpp"

namespace chz {

namespace {

double fd1(const std::function<double(double)>& f, double t, double h, double a, double b) {
    if (t - 2.0 * h >= a && t + 2.0 * h <= b) {
        const double d1 = (f(t + h) - f(t - h)) / (2.0 * h);
        const double d2 = (f(t + 2.0 * h) - f(t - 2.0 * h)) / (4.0 * h);
        return (4.0 * d1 - d2) / 3.0;
    }
    if (t - 2.0 * h < a) return (-3.0 * f(t) + 4.0 * f(t + h) - f(t + 2.0 * h)) / (2.0 * h);
    return (3.0 * f(t) - 4.0 * f(t - h) + f(t - 2.0 * h)) / (2.0 * h);
}

double fd2(const std::function<double(double)>& f, double t, double h, double a, double b) {
    if (t - 2.0 * h >= a && t + 2.0 * h <= b) {
        const double f0 = f(t);
        const double d1 = (f(t + h) - 2.0 * f0 + f(t - h)) / (h * h);
        const double d2 = (f(t + 2.0 * h) - 2.0 * f0 + f(t - 2.0 * h)) / (4.0 * h * h);
        return (4.0 * d1 - d2) / 3.0;
    }
    const double s = (t - 2.0 * h < a) ? h : -h;
    return (2.0 * f(t) - 5.0 * f(t + s) + 4.0 * f(t + 2.0 * s) - f(t + 3.0 * s)) / (h * h);
}

}  // namespace

PlaneGraph PlaneGraph::closed_form(double alpha, double beta, std::function<double(double)> f,
                                   std::function<double(double)> d1, std::function<double(double)> d2) {
    if (!(beta > alpha)) throw Error(ErrorCode::InvalidArgument, "graph domain is empty");
    PlaneGraph g;
    g.alpha = alpha;
    g.beta = beta;
    g.eval = std::move(f);
    g.deriv1 = std::move(d1);
    g.deriv2 = std::move(d2);
    g.provenance = Provenance::ClosedForm;
    return g;
}

PlaneGraph PlaneGraph::from_function(double alpha, double beta, std::function<double(double)> f, double step) {
    if (!(beta > alpha)) throw Error(ErrorCode::InvalidArgument, "graph domain is empty");
    if (!(step > 0.0) || 3.0 * step > beta - alpha) throw Error(ErrorCode::InvalidArgument, "bad difference step");
    PlaneGraph g;
    g.alpha = alpha;
    g.beta = beta;
    g.eval = f;
    g.deriv1 = [f, step, alpha, beta](double t) { return fd1(f, t, step, alpha, beta); };
    g.deriv2 = [f, step, alpha, beta](double t) { return fd2(f, t, step, alpha, beta); };
    g.provenance = Provenance::Sampled;
    g.step = step;
    return g;
}

PlaneGraph PlaneGraph::from_samples(double alpha, double beta, std::vector<double> values) {
    if (values.size() < 4) throw Error(ErrorCode::InvalidArgument, "need at least 4 samples");
    const double h = (beta - alpha) / static_cast<double>(values.size() - 1);
    auto shared = std::make_shared<const std::vector<double>>(std::move(values));
    auto f = [shared, alpha, h](double t) {
        const auto& v = *shared;
        const auto n = static_cast<long>(v.size());
        long i = static_cast<long>(std::floor((t - alpha) / h)) - 1;
        i = std::clamp(i, 0L, n - 4);
        // Cubic Lagrange interpolation through samples i..i+3.
        const double x = (t - alpha) / h - static_cast<double>(i);
        const double l0 = -(x - 1) * (x - 2) * (x - 3) / 6.0;
        const double l1 = x * (x - 2) * (x - 3) / 2.0;
        const double l2 = -x * (x - 1) * (x - 3) / 2.0;
        const double l3 = x * (x - 1) * (x - 2) / 6.0;
        return l0 * v[i] + l1 * v[i + 1] + l2 * v[i + 2] + l3 * v[i + 3];
    };
    return from_function(alpha, beta, f, h);
}

double derivative_consistency(const PlaneGraph& g, int n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    const double len = g.beta - g.alpha;
    std::uniform_real_distribution<double> pick(g.alpha + 0.05 * len, g.beta - 0.05 * len);
    const double h = g.provenance == Provenance::ClosedForm ? 1e-5 * std::max(1.0, len) : g.step;
    double worst = 0.0;
    for (int i = 0; i < n; ++i) {
        const double t = pick(rng);
        const double fd_1 = (g.eval(t + h) - g.eval(t - h)) / (2.0 * h);
        const double fd_2 = (g.deriv1(t + h) - g.deriv1(t - h)) / (2.0 * h);
        worst = std::max({worst, std::abs(fd_1 - g.deriv1(t)), std::abs(fd_2 - g.deriv2(t))});
    }
    return worst;
}

double formal_curvature(const PlaneGraph& g, double t0) {
    if (!g.in_domain(t0)) throw Error(ErrorCode::InvalidArgument, "t0 outside the graph domain");
    const double d1 = g.deriv1(t0);
    return g.deriv2(t0) / std::pow(1.0 + d1 * d1, 1.5);
}

double tangent_circle_curvature(Vec2 p0, Vec2 normal, Vec2 p) {
    const Vec2 dp = p - p0;
    const double len2 = dot(dp, dp);
    if (!(len2 > 0.0)) throw Error(ErrorCode::CoincidentPoints, "tangent circle through coincident points");
    return 2.0 * dot(normal, dp) / len2;
}

double tangent_circle_curvature(const PlaneGraph& g, double t0, double t) {
    if (!g.in_domain(t0) || !g.in_domain(t)) throw Error(ErrorCode::InvalidArgument, "parameter outside domain");
    if (t == t0) throw Error(ErrorCode::CoincidentPoints, "t equals t0");
    const double d1 = g.deriv1(t0);
    const Vec2 n = Vec2{-d1, 1.0} / std::sqrt(1.0 + d1 * d1);
    return tangent_circle_curvature(Vec2{t0, g.eval(t0)}, n, Vec2{t, g.eval(t)});
}

std::optional<double> separation_point(const PlaneGraph& f, const PlaneGraph& g, double t0, double radius) {
    if (!f.in_domain(t0) || !g.in_domain(t0)) throw Error(ErrorCode::PreconditionFailed, "t0 outside domains");
    if (std::abs(f.eval(t0) - g.eval(t0)) > 1e-9 || std::abs(f.deriv1(t0) - g.deriv1(t0)) > 1e-9) {
        throw Error(ErrorCode::PreconditionFailed, "graphs are not tangent at t0");
    }
    if (!(formal_curvature(f, t0) < formal_curvature(g, t0))) {
        throw Error(ErrorCode::PreconditionFailed, "curvature gap is not strict");
    }
    if (!(radius > 0.0)) throw Error(ErrorCode::InvalidArgument, "radius must be > 0");
    for (int k = 0; k < 60; ++k) {
        const double h = std::ldexp(radius, -k);
        for (double t : {t0 + h, t0 - h}) {
            if (f.in_domain(t) && g.in_domain(t) && f.eval(t) < g.eval(t) - 1e-12) return t;
        }
    }
    return std::nullopt;
}

HighCurvature high_curvature_point(const PlaneGraph& f, const PlaneGraph& g, int grid, double tangency_tol) {
    if (f.alpha != g.alpha || f.beta != g.beta) throw Error(ErrorCode::PreconditionFailed, "domains differ");
    if (grid < 4) throw Error(ErrorCode::InvalidArgument, "grid too small");
    for (double t : {f.alpha, f.beta}) {
        if (std::abs(f.eval(t) - g.eval(t)) > tangency_tol || std::abs(f.deriv1(t) - g.deriv1(t)) > tangency_tol) {
            throw Error(ErrorCode::PreconditionFailed, "graphs are not tangent at an endpoint");
        }
    }
    const double h = (f.beta - f.alpha) / grid;
    HighCurvature out;
    out.gap = -1.0;
    out.min_kappa_f = formal_curvature(f, f.alpha);
    int best = 0;
    for (int i = 0; i <= grid; ++i) {
        const double t = (i == grid) ? f.beta : f.alpha + h * i;
        const double d = f.eval(t) - g.eval(t);
        if (d < -tangency_tol) throw Error(ErrorCode::PreconditionFailed, "g exceeds f");
        if (d > out.gap) {
            out.gap = d;
            best = i;
        }
        out.min_kappa_f = std::min(out.min_kappa_f, formal_curvature(f, t));
    }
    // Golden-section refinement of the maximum of f - g.
    double lo = std::max(f.alpha, f.alpha + h * (best - 1));
    double hi = std::min(f.beta, f.alpha + h * (best + 1));
    const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
    auto gap = [&](double t) { return f.eval(t) - g.eval(t); };
    double a = hi - phi * (hi - lo);
    double b = lo + phi * (hi - lo);
    double ga = gap(a);
    double gb = gap(b);
    for (int it = 0; it < 100 && hi - lo > 1e-14 * (1.0 + std::abs(lo)); ++it) {
        if (ga > gb) {
            hi = b;
            b = a;
            gb = ga;
            a = hi - phi * (hi - lo);
            ga = gap(a);
        } else {
            lo = a;
            a = b;
            ga = gb;
            b = lo + phi * (hi - lo);
            gb = gap(b);
        }
    }
    const double t_ref = 0.5 * (lo + hi);
    out.t_star = gap(t_ref) >= out.gap ? t_ref : f.alpha + h * best;
    out.gap = std::max(out.gap, gap(out.t_star));
    out.kappa_g = formal_curvature(g, out.t_star);
    out.min_kappa_f = std::min(out.min_kappa_f, formal_curvature(f, out.t_star));
    return out;
}

double meusnier_section_curvature(const SphereSlice& sphere, const AffinePlane& plane) {
    const std::size_t m = sphere.center.size();
    if (plane.point.size() != m || plane.u.size() != m || plane.v.size() != m) {
        throw Error(ErrorCode::DimensionMismatch, "plane and sphere dimensions differ");
    }
    if (m < 2) throw Error(ErrorCode::DimensionMismatch, "sphere needs dimension >= 2");
    auto dotv = [m](const std::vector<double>& a, const std::vector<double>& b) {
        double s = 0.0;
        for (std::size_t i = 0; i < m; ++i) s += a[i] * b[i];
        return s;
    };
    // Orthonormal basis of the plane directions.
    std::vector<double> e1 = plane.u;
    const double n1 = std::sqrt(dotv(e1, e1));
    if (!(n1 > 0.0)) throw Error(ErrorCode::InvalidArgument, "degenerate plane");
    for (double& x : e1) x /= n1;
    std::vector<double> e2 = plane.v;
    const double c = dotv(e2, e1);
    for (std::size_t i = 0; i < m; ++i) e2[i] -= c * e1[i];
    const double n2 = std::sqrt(dotv(e2, e2));
    if (!(n2 > 1e-12 * std::sqrt(dotv(plane.v, plane.v)))) throw Error(ErrorCode::InvalidArgument, "degenerate plane");
    for (double& x : e2) x /= n2;

    std::vector<double> w(m);
    for (std::size_t i = 0; i < m; ++i) w[i] = sphere.center[i] - plane.point[i];
    const double R = sphere.radius;
    if (std::abs(std::sqrt(dotv(w, w)) - R) > 1e-9 * std::max(1.0, R)) {
        throw Error(ErrorCode::InvalidArgument, "plane point is not on the sphere");
    }
    // Offset of the center from the plane.
    const double a1 = dotv(w, e1);
    const double a2 = dotv(w, e2);
    const double off2 = std::max(0.0, dotv(w, w) - a1 * a1 - a2 * a2);
    const double r2 = R * R - off2;
    if (!(r2 > 1e-24 * R * R)) throw Error(ErrorCode::TangentPlane, "plane is tangent to the sphere");
    return 1.0 / std::sqrt(r2);
}

}  // namespace chz
