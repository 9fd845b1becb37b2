#include "chz/harness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "chz/curvature.hpp"
#include "chz/error.hpp"

namespace chz {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

/// y with rho(origin + y * dir) = tau, searched from y_hint. rho is assumed to
/// increase along dir near the root.
std::optional<double> level_root(const Region& region, Vec2 origin, Vec2 dir, double tau, double y_hint,
                                 double step, double tol_near) {
    auto f = [&](double y) { return region.distance_to_complement(origin + dir * y) - tau; };
    double lo = y_hint;
    double hi = y_hint;
    double flo = f(lo);
    double fhi = flo;
    double d = step;
    for (int it = 0; it < 200 && flo >= 0.0; ++it) {
        hi = lo;
        fhi = flo;
        lo = hi - d;
        flo = f(lo);
        d *= 2.0;
    }
    for (int it = 0; it < 200 && fhi < 0.0; ++it) {
        lo = hi;
        flo = fhi;
        hi = lo + d;
        fhi = f(hi);
        d *= 2.0;
    }
    if (!(flo < 0.0 && fhi >= 0.0)) return std::nullopt;
    double y = 0.5 * (lo + hi);
    for (int it = 0; it < 200; ++it) {
        const Vec2 x = origin + dir * y;
        double fy = -tau;
        double slope = 0.0;
        if (region.contains(x)) {
            const NearestSet ns = region.nearest_boundary_set(x, tol_near);
            fy = ns.distance - tau;
            if (ns.unique()) slope = dot((x - ns.points.front()) / ns.distance, dir);
        }
        if (fy < 0.0) lo = y; else hi = y;
        if (fy == 0.0) return y;
        double next = slope > 0.0 ? y - fy / slope : 0.5 * (lo + hi);
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        if (next == y || hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * (std::abs(y) + 1e-300)) {
            return next;
        }
        y = next;
    }
    return y;
}

}  // namespace

HarnessParams select_params(const Region& region, const Generator& gen, double jump, const Margins& margins,
                            int n_terms, double tol_near) {
    if (gen.open()) throw Error(ErrorCode::PreconditionFailed, "harness needs a generator with a cut point");
    if (!(margins.m_f > 0.0) || !(margins.m_p > 0.0) || !(margins.m_minus > 0.0)) {
        throw Error(ErrorCode::InvalidArgument, "margins must be positive");
    }
    const double range = gen.cut_parameter;
    if (!(jump > 0.0 && jump < range)) throw Error(ErrorCode::PreconditionFailed, "jump is not interior");
    HarnessParams p;
    p.generator = gen;
    p.range = range;
    p.jump = jump;
    p.u_f = jump - margins.m_f;
    p.u_p = jump - margins.m_p;
    p.u_minus = jump + margins.m_minus;
    p.n_terms = n_terms;
    p.tol_near = tol_near;
    if (p.u_f < 0.0) throw Error(ErrorCode::PreconditionFailed, "t^f lies beyond the cut point");
    if (!(p.u_minus < range)) throw Error(ErrorCode::PreconditionFailed, "t^- lies below the initial plane");
    auto point = [&](double u) {
        HorizonPoint h = gen.at(range - u);
        h.height = region.distance_to_complement(h.base);
        return h;
    };
    p.gamma_f = point(p.u_f);
    p.gamma_p = point(p.u_p);
    p.gamma_minus = point(p.u_minus);
    p.time_R = p.gamma_minus.height;
    const double tf = p.gamma_f.height;
    const double tp = p.gamma_p.height;
    if (!(tf > tp && tp > p.time_R)) {
        throw Error(ErrorCode::PreconditionFailed, "slice times must decrease: time(t^f) > time(t^p) > time(t^-)");
    }
    // Both slices are round spheres in flat space.
    const SphereSlice sf = past_cone_slice(p.gamma_f.spacetime(), p.time_R);
    const SphereSlice sp = past_cone_slice(p.gamma_p.spacetime(), p.time_R);
    p.kappa_f = sf.max_normal_curvature();
    p.kappa_p = sp.min_normal_curvature();
    if (!(p.kappa_p - p.kappa_f > 1.0)) {
        throw Error(ErrorCode::PreconditionFailed, "slice curvatures differ by <= 1");
    }
    const double lo = p.kappa_f;
    const double hi = p.kappa_p - 1.0;
    const double eps = 1e-3 * (hi - lo);
    p.kappa = std::clamp(0.5 * (p.kappa_f + p.kappa_p) - 0.5, lo + eps, hi - eps);
    p.anchor = (p.gamma_minus.base + p.gamma_p.base) * 0.5;
    return p;
}

std::size_t HarnessReport::processed() const {
    return static_cast<std::size_t>(
        std::count_if(terms.begin(), terms.end(), [](const HarnessTerm& t) { return t.found && t.theta_ok; }));
}

HarnessReport run_harness(const Region& region, const HarnessParams& params) {
    HarnessReport rep;
    rep.params = params;
    const double tau = params.time_R;
    const Vec2 base_p = params.gamma_p.base;
    const Vec2 base_minus = params.gamma_minus.base;
    const double radius_p = params.gamma_p.height - tau;

    for (int n = 1; n <= params.n_terms; ++n) {
        HarnessTerm term;
        term.n = n;
        term.window = std::ldexp(region.scale(), -n);
        term.resolution = 2.0 * term.window / 8.0;
        const Rect win{base_p.x - term.window, base_p.x + term.window, base_p.y - term.window,
                       base_p.y + term.window};
        const CreaseSet cs = crease_sample(region, win, term.resolution, params.tol_near);
        // Nearest crease sample with a finite nearest set.
        std::optional<Vec2> q;
        double best = kInf;
        NearestSet qset;
        for (const Vec2& s : cs.samples) {
            const double d = distance(s, base_p);
            if (d > term.window || d >= best) continue;
            NearestSet ns = region.nearest_boundary_set(s, params.tol_near);
            if (ns.continuum || ns.points.size() < 2) continue;
            best = d;
            q = s;
            qset = std::move(ns);
        }
        if (!q) {
            term.note = "crease exhausted";
            rep.terms.push_back(term);
            rep.exhausted = true;
            break;
        }
        term.found = true;
        term.q = {*q, qset.distance};
        term.q_multiplicity = qset.points.size();
        // Widest pair of feet.
        double sep = -1.0;
        for (std::size_t i = 0; i < qset.points.size(); ++i) {
            for (std::size_t j = i + 1; j < qset.points.size(); ++j) {
                const double d = distance(qset.points[i], qset.points[j]);
                if (d > sep) {
                    sep = d;
                    term.foot1 = qset.points[i];
                    term.foot2 = qset.points[j];
                }
            }
        }
        const double rho_n = term.q.height;
        if (!(rho_n > tau)) {
            term.note = "q_n below R";
            rep.terms.push_back(term);
            continue;
        }
        const Vec2 xn = term.q.base;
        const double rad = rho_n - tau;
        term.kappa_n = 1.0 / rad;
        term.kappa_converges = std::abs(rad - radius_p) <= 2.0 * term.resolution;
        term.p1 = xn + (term.foot1 - xn) * (rad / rho_n);
        term.p2 = xn + (term.foot2 - xn) * (rad / rho_n);
        const double L = distance(term.p1, term.p2);
        term.chord = L;
        if (!(L > 0.0)) {
            term.note = "degenerate chord";
            rep.terms.push_back(term);
            continue;
        }
        const Vec2 e = (term.p2 - term.p1) / L;
        Vec2 o = params.anchor;
        if (std::abs(cross(e, o - term.p1)) <= 1e-12 * norm(o - term.p1)) {
            // Move o along the normal line at gamma(t^-).
            o = o + (base_p - base_minus) * 0.25;
            term.anchor_perturbed = true;
        }
        Vec2 nu = perp(e);
        if (dot(nu, o - term.p1) < 0.0) nu = -nu;

        // phi_n: arc of the circle around x_n, height measured toward o.
        const double ct = dot(xn - term.p1, e);
        const double cy = dot(xn - term.p1, nu);
        auto phi = [=](double t) { return cy - std::sqrt(std::max(0.0, rad * rad - (t - ct) * (t - ct))); };
        auto dphi = [=](double t) {
            return (t - ct) / std::sqrt(std::max(1e-300, rad * rad - (t - ct) * (t - ct)));
        };
        auto ddphi = [=](double t) {
            const double w = std::max(1e-300, rad * rad - (t - ct) * (t - ct));
            return rad * rad / (w * std::sqrt(w));
        };
        const PlaneGraph phig = PlaneGraph::closed_form(0.0, L, phi, dphi, ddphi);

        const double tol_near = params.tol_near;
        const Vec2 p1 = term.p1;
        bool theta_failed = false;
        auto theta = [&, p1, e, nu, L](double t) {
            const auto y = level_root(region, p1 + e * t, nu, tau, phi(t), 1e-3 * L + 1e-300, tol_near);
            if (!y) {
                theta_failed = true;
                return phi(t);
            }
            return *y;
        };
        auto dtheta = [&, p1, e, nu, L](double t) {
            const Vec2 x = p1 + e * t + nu * theta(t);
            const NearestSet ns = region.nearest_boundary_set(x, tol_near);
            if (ns.unique()) {
                const Vec2 g = x - ns.points.front();
                return -dot(g, e) / dot(g, nu);
            }
            const double h = 1e-4 * L;
            const double a = std::max(0.0, t - h);
            const double b = std::min(L, t + h);
            return (theta(b) - theta(a)) / (b - a);
        };
        auto ddtheta = [&, L](double t) {
            const double h = 1e-4 * L;
            const double a = std::max(0.0, t - h);
            const double b = std::min(L, t + h);
            return (dtheta(b) - dtheta(a)) / (b - a);
        };
        const PlaneGraph thg = PlaneGraph::closed_form(0.0, L, theta, dtheta, ddtheta);

        constexpr int kGrid = 2000;
        term.tangency_tol = 10.0 * L / kGrid;
        term.tangency_res1 = std::max(std::abs(theta(0.0) - phi(0.0)), std::abs(dtheta(0.0) - dphi(0.0)) * L);
        term.tangency_res2 = std::max(std::abs(theta(L) - phi(L)), std::abs(dtheta(L) - dphi(L)) * L);
        try {
            const HighCurvature hc = high_curvature_point(phig, thg, kGrid, term.tangency_tol);
            if (theta_failed) throw Error(ErrorCode::PreconditionFailed, "theta extraction failed");
            term.t_star = hc.t_star;
            const double ts = hc.t_star;
            const double y0 = theta(ts);
            term.r = p1 + e * ts + nu * y0;
            const double s0 = dtheta(ts);
            const Vec2 nrm = normalized(nu - e * s0);
            auto pt = [&](double t) { return p1 + e * t + nu * theta(t); };
            double h = std::min(ts, L - ts);
            if (h >= L / 32.0) {
                term.kappa_theta = 0.5 * (tangent_circle_curvature(term.r, nrm, pt(ts + h)) +
                                          tangent_circle_curvature(term.r, nrm, pt(ts - h)));
            } else {
                h = 0.25 * L;
                const double t1 = (ts < 0.5 * L) ? ts + h : ts - h;
                term.kappa_theta = tangent_circle_curvature(term.r, nrm, pt(t1));
                term.note = "one-sided curvature estimate";
            }
            term.kappa_theta_formal = hc.kappa_g;
            term.theta_ok = !theta_failed;
            term.comparison_ok = term.kappa_theta >= term.kappa_n * (1.0 - 1e-3);
            for (int i = 0; i <= 16; ++i) rep.theta_samples.push_back(pt(L * i / 16.0));
        } catch (const Error& err) {
            term.theta_ok = false;
            term.note = err.what();
        }
        rep.terms.push_back(term);
    }
    return rep;
}

bool estimates_stabilize(const std::vector<double>& est, double rel_tol) {
    if (est.size() < 3) return false;
    for (double v : est) {
        if (!std::isfinite(v)) return false;
    }
    const auto tail = std::vector<double>(est.end() - 3, est.end());
    const auto [mn, mx] = std::minmax_element(tail.begin(), tail.end());
    const double mean = (tail[0] + tail[1] + tail[2]) / 3.0;
    return *mx - *mn <= rel_tol * std::max(1.0, std::abs(mean));
}

Verdict contradiction_summary(const Region& region, const HarnessReport& report) {
    Verdict v;
    const HarnessParams& p = report.params;
    const double tau = p.time_R;

    // (i) liminf of kappa_theta(r_n) over the tail of the processed terms.
    std::vector<const HarnessTerm*> done;
    for (const HarnessTerm& t : report.terms) {
        if (t.found && t.theta_ok) done.push_back(&t);
    }
    if (done.empty()) {
        v.failures.push_back("(i) no processed terms");
    } else {
        const std::size_t start = done.size() / 2;
        v.liminf = kInf;
        double dev = 0.0;
        for (std::size_t i = start; i < done.size(); ++i) {
            v.liminf = std::min(v.liminf, done[i]->kappa_theta);
            dev = std::max(dev, std::abs(done[i]->kappa_n - p.kappa_p));
        }
        v.liminf_tol = 1e-3 * p.kappa_p + dev;
        v.liminf_ok = v.liminf >= p.kappa_p - v.liminf_tol;
        if (!v.liminf_ok) v.failures.push_back("(i) liminf kappa_theta(r_n) below kappa^p");
    }

    // (ii) tangent-circle estimates of theta at gamma(t^-) from both sides.
    const Vec2 b = p.gamma_minus.base;
    std::vector<Vec2> level_points;
    const NearestSet ns = region.nearest_boundary_set(b, p.tol_near);
    if (ns.unique()) {
        const Vec2 n0 = (b - ns.points.front()) / ns.distance;
        const Vec2 T = perp(n0);
        for (int side : {-1, 1}) {
            auto& est = side < 0 ? v.left_estimates : v.right_estimates;
            for (int j = 2; j <= 6; ++j) {
                const double h = std::pow(10.0, -j) * region.scale();
                const Vec2 origin = b + T * (side * h);
                const auto y = level_root(region, origin, n0, tau, 0.0, 1e-3 * h, p.tol_near);
                if (!y) {
                    est.push_back(std::numeric_limits<double>::quiet_NaN());
                    continue;
                }
                const Vec2 pt = origin + n0 * *y;
                level_points.push_back(pt);
                est.push_back(tangent_circle_curvature(b, n0, pt));
            }
        }
        const bool sl = estimates_stabilize(v.left_estimates);
        const bool sr = estimates_stabilize(v.right_estimates);
        const double l = v.left_estimates.back();
        const double r = v.right_estimates.back();
        const bool common = sl && sr && std::abs(l - r) <= 1e-2 * std::max(1.0, std::abs(0.5 * (l + r)));
        const bool below = 0.5 * (l + r) < p.kappa_p - 1e-3 * p.kappa_p;
        v.non_stabilization = !(common && below);
    } else {
        // No unique normal at gamma(t^-): no stable second-order limit either.
        v.non_stabilization = true;
    }
    if (!v.non_stabilization) v.failures.push_back("(ii) curvature estimates of theta stabilize below kappa^p");

    // (iii) no sampled theta point lies in I^-(gamma(t^f)).
    const double rf = p.gamma_f.height - tau;
    const double margin = 1e-12 * region.scale();
    v.achronal = true;
    auto check = [&](Vec2 x) {
        ++v.theta_checked;
        if (distance(x, p.gamma_f.base) < rf - margin) v.achronal = false;
    };
    for (const Vec2& x : report.theta_samples) check(x);
    for (const Vec2& x : level_points) check(x);
    if (!v.achronal) v.failures.push_back("(iii) a theta sample is chronologically before gamma(t^f)");
    return v;
}

Region lmodel_reconstruct(const Region& region, const HorizonPoint& center, double radius_U, double plane_time_F,
                          double spacing) {
    if (!(radius_U > 0.0)) throw Error(ErrorCode::InvalidArgument, "radius_U must be > 0");
    if (spacing <= 0.0) spacing = radius_U / 50.0;
    const int m = static_cast<int>(std::floor(radius_U / spacing));
    std::vector<Disk> disks;
    for (int j = -m; j <= m; ++j) {
        for (int i = -m; i <= m; ++i) {
            const Vec2 off{i * spacing, j * spacing};
            if (norm(off) > radius_U) continue;
            const Vec2 x = center.base + off;
            if (!region.contains(x)) throw Error(ErrorCode::PreconditionFailed, "ball leaves S");
            const double h = region.distance_to_complement(x);
            if (!(h > plane_time_F)) {
                throw Error(ErrorCode::PreconditionFailed, "horizon point at or below the plane F");
            }
            disks.push_back({x, h - plane_time_F});
        }
    }
    return Region({DiskUnion(std::move(disks))}, region.name() + "-lmodel", region.scale());
}

double lmodel_verify(const Region& original, const Region& reconstructed, const HorizonPoint& center,
                     double radius_U, double grid, double plane_time_F) {
    if (!(grid > 0.0)) throw Error(ErrorCode::InvalidArgument, "grid must be > 0");
    const int m = static_cast<int>(std::ceil(radius_U / grid));
    double gap = 0.0;
    for (int j = -m; j <= m; ++j) {
        for (int i = -m; i <= m; ++i) {
            const Vec2 off{(i + 0.5) * grid, (j + 0.5) * grid};
            if (norm(off) > radius_U) continue;
            const Vec2 x = center.base + off;
            const double h0 = original.distance_to_complement(x);
            const double h1 = plane_time_F + reconstructed.distance_to_complement(x);
            gap = std::max(gap, std::abs(h0 - h1));
        }
    }
    return gap;
}

Region lmodel_drop_half(const Region& reconstructed, Vec2 center, Vec2 direction) {
    std::vector<Disk> kept;
    for (const Primitive& prim : reconstructed.primitives()) {
        const auto* du = std::get_if<DiskUnion>(&prim);
        if (!du) throw Error(ErrorCode::InvalidArgument, "expected a disk-union region");
        for (const Disk& d : du->disks()) {
            if (dot(d.center - center, direction) <= 0.0) kept.push_back(d);
        }
    }
    if (kept.empty()) throw Error(ErrorCode::InvalidArgument, "no disks left");
    return Region({DiskUnion(std::move(kept))}, reconstructed.name() + "-half", reconstructed.scale());
}

}  // namespace chz
