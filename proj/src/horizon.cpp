#include "chz/horizon.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <vector>

#include "chz/error.hpp"

namespace chz {

const char* to_string(DomainKind kind) {
    return kind == DomainKind::Open ? "open" : "half_open_at_future";
}

bool in_development(const Region& region, const SpacetimePoint& p) {
    if (p.t < 0.0) throw Error(ErrorCode::NegativeTime, "development query below the initial plane");
    const Vec2 x = p.base();
    return region.contains(x) && p.t < region.distance_to_complement(x);
}

bool development_oracle(const Region& region, const SpacetimePoint& p, int n_curves, std::uint64_t seed) {
    if (!(p.t > 0.0)) throw Error(ErrorCode::InvalidArgument, "oracle needs p.t > 0");
    if (n_curves < 1) throw Error(ErrorCode::InvalidArgument, "oracle needs at least one curve");
    const Vec2 x0 = p.base();
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    constexpr double kTwoPi = 2.0 * std::numbers::pi;

    // The vertical line lands at x0.
    if (!region.contains(x0)) return false;

    // Straight past-directed causal lines land anywhere in the disk of radius
    // p.t around x0. Along each direction we find the first landing point that
    // leaves S (marching, then bisecting on membership); an exit at radius
    // <= p.t is a curve missing S. Exit radii beyond p.t rank the directions
    // for refinement.
    bool hit = false;
    auto first_exit = [&](double theta) {
        const Vec2 e{std::cos(theta), std::sin(theta)};
        constexpr int kMarch = 32;
        double lo = 0.0;
        double hi = -1.0;
        for (int k = 1; k <= kMarch; ++k) {
            const double r = 2.0 * p.t * k / kMarch;
            if (!region.contains(x0 + e * r)) {
                hi = r;
                break;
            }
            lo = r;
        }
        if (hi < 0.0) return std::numeric_limits<double>::infinity();
        for (int it = 0; it < 50 && hi > p.t; ++it) {
            const double mid = 0.5 * (lo + hi);
            if (region.contains(x0 + e * mid)) lo = mid; else hi = mid;
        }
        if (hi <= p.t) hit = true;
        return hi;
    };

    const int n_rays = std::max(1, n_curves / 2);
    const int n_refine = n_curves / 4;
    const double offset = unit(rng);
    std::vector<std::pair<double, double>> depth;  // (exit radius, theta)
    for (int i = 0; i < n_rays; ++i) {
        const double theta = kTwoPi * (i + offset) / n_rays;
        depth.emplace_back(first_exit(theta), theta);
        if (hit) return false;
    }
    // Golden-section refinement around the earliest exits, one line per step.
    if (n_refine > 0) {
        std::sort(depth.begin(), depth.end());
        const int n_seeds = std::min<int>(3, static_cast<int>(depth.size()));
        const int steps = std::max(1, n_refine / n_seeds);
        const double g = 0.5 * (std::sqrt(5.0) - 1.0);
        for (int k = 0; k < n_seeds && std::isfinite(depth[static_cast<std::size_t>(k)].first); ++k) {
            double a = depth[static_cast<std::size_t>(k)].second - kTwoPi / n_rays;
            double b = depth[static_cast<std::size_t>(k)].second + kTwoPi / n_rays;
            double c = b - g * (b - a);
            double d = a + g * (b - a);
            double fc = first_exit(c);
            double fd = first_exit(d);
            for (int it = 0; it < steps && !hit; ++it) {
                if (fc < fd) {
                    b = d;
                    d = c;
                    fd = fc;
                    c = b - g * (b - a);
                    fc = first_exit(c);
                } else {
                    a = c;
                    c = d;
                    fc = fd;
                    d = a + g * (b - a);
                    fd = first_exit(d);
                }
            }
            if (hit) return false;
        }
    }
    // Random piecewise-linear causal curves, stopped where they cross t = 0.
    for (int i = n_rays + n_refine; i < n_curves; ++i) {
        Vec2 x = x0;
        double t = p.t;
        bool crossed = false;
        while (!crossed) {
            const double dt = p.t * (0.05 + 0.45 * unit(rng));
            const double theta = kTwoPi * unit(rng);
            const double speed = std::sqrt(unit(rng));  // |dx| <= dt
            const Vec2 step = Vec2{std::cos(theta), std::sin(theta)} * (speed * dt);
            if (t - dt <= 0.0) {
                x += step * (t / dt);
                crossed = true;
            } else {
                x += step;
                t -= dt;
            }
        }
        if (!region.contains(x)) return false;
    }
    return true;
}

HorizonPoint horizon_point(const Region& region, Vec2 x) {
    if (!region.contains(x)) throw Error(ErrorCode::OutsideRegion, "horizon point requested outside S");
    return {x, region.distance_to_complement(x)};
}

namespace {

bool valid_generator_point(const Region& region, Vec2 y, Vec2 n, double s, const TraceOptions& opts) {
    const Vec2 x = y + n * s;
    if (!region.contains(x)) return false;
    const NearestSet ns = region.nearest_boundary_set(x, opts.tol_near);
    if (!ns.unique()) return false;
    return distance(ns.points.front(), y) <= opts.foot_match * std::max(1.0, region.scale());
}

}  // namespace

Generator trace_generator(const Region& region, Vec2 footpoint, const TraceOptions& opts) {
    Generator g;
    g.footpoint = footpoint;
    g.normal = region.inward_normal(footpoint);
    g.direction = -g.normal;

    const double limit = opts.max_extent * region.scale();
    double lo = 0.0;
    double hi = 1e-3 * region.scale();
    while (valid_generator_point(region, footpoint, g.normal, hi, opts)) {
        lo = hi;
        if (hi > limit) {
            g.cut_parameter = std::numeric_limits<double>::infinity();
            g.domain_kind = DomainKind::Open;
            g.cut_multiplicity = Multiplicity{1, false};
            return g;
        }
        hi *= 2.0;
    }
    while (hi - lo > opts.tol) {
        const double mid = 0.5 * (lo + hi);
        if (valid_generator_point(region, footpoint, g.normal, mid, opts)) lo = mid; else hi = mid;
    }
    g.cut_parameter = lo;
    const Vec2 base = footpoint + g.normal * lo;
    g.cut_point = HorizonPoint{base, region.distance_to_complement(base)};
    // The bisection stops where points stop being unique at tol_near, or where
    // rounding moves the computed foot by foot_match (near a focal point the
    // foot direction carries an error of about eps * scale / gap).
    const double foot_limit = 4.0 * std::numeric_limits<double>::epsilon() / opts.foot_match * region.scale();
    const double cut_tol = 2.0 * opts.tol_near + 4.0 * opts.tol + foot_limit;
    const NearestSet ns = region.nearest_boundary_set(base, cut_tol);
    g.cut_multiplicity = ns.continuum ? Multiplicity::infinite() : Multiplicity{ns.points.size(), false};
    g.domain_kind = DomainKind::HalfOpenAtFuture;
    return g;
}

Multiplicity generator_multiplicity(const Region& region, const HorizonPoint& p, double tol_near) {
    if (!region.contains(p.base)) throw Error(ErrorCode::NotOnHorizon, "base outside S");
    const double rho = region.distance_to_complement(p.base);
    if (std::abs(rho - p.height) > 1e-9 * (1.0 + rho)) {
        throw Error(ErrorCode::NotOnHorizon, "height differs from rho(base)");
    }
    const NearestSet ns = region.nearest_boundary_set(p.base, tol_near);
    if (ns.continuum) return Multiplicity::infinite();
    return Multiplicity{ns.points.size(), false};
}

std::vector<Generator> generators_through(const Region& region, const HorizonPoint& p, const TraceOptions& opts) {
    const NearestSet ns = region.nearest_boundary_set(p.base, opts.tol_near);
    if (ns.continuum) throw Error(ErrorCode::InvalidArgument, "infinitely many generators");
    std::vector<Generator> out;
    out.reserve(ns.points.size());
    for (const Vec2& y : ns.points) out.push_back(trace_generator(region, y, opts));
    return out;
}

}  // namespace chz
