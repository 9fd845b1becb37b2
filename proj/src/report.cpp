#include "chz/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>

#include "chz/error.hpp"

namespace chz {

std::string fmt(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace {

std::string quote(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

std::string flag(bool b) { return b ? "1" : "0"; }

std::string mult_cell(const Multiplicity& m) { return m.unbounded ? "inf" : std::to_string(m.value); }

}  // namespace

void CsvTable::add(std::vector<std::string> row) {
    if (row.size() != header.size()) throw Error(ErrorCode::InvalidArgument, "csv row width differs from header");
    rows.push_back(std::move(row));
}

std::string CsvTable::str() const {
    std::string out;
    auto line = [&](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) out += ',';
            out += quote(cells[i]);
        }
        out += '\n';
    };
    line(header);
    for (const auto& r : rows) line(r);
    return out;
}

CsvTable horizon_table(const Region& region, Rect window, int nx, int ny, double tol_near) {
    if (nx < 2 || ny < 2) throw Error(ErrorCode::InvalidArgument, "horizon grid needs at least 2x2 points");
    CsvTable t{{"x", "y", "height", "multiplicity"}, {}};
    for (int j = 0; j < ny; ++j) {
        const double y = window.ymin + (window.ymax - window.ymin) * j / (ny - 1);
        for (int i = 0; i < nx; ++i) {
            const double x = window.xmin + (window.xmax - window.xmin) * i / (nx - 1);
            if (!region.contains({x, y})) {
                t.add({fmt(x), fmt(y), fmt(0.0), "0"});
                continue;
            }
            const NearestSet ns = region.nearest_boundary_set({x, y}, tol_near);
            const std::string m = ns.continuum ? "inf" : std::to_string(ns.points.size());
            t.add({fmt(x), fmt(y), fmt(ns.distance), m});
        }
    }
    return t;
}

CsvTable generators_table(const std::vector<Generator>& gens) {
    CsvTable t{{"footpoint_x", "footpoint_y", "normal_x", "normal_y", "domain", "cut_parameter", "cut_x", "cut_y",
                "cut_t", "cut_multiplicity"},
               {}};
    for (const Generator& g : gens) {
        const double nan = std::nan("");
        const Vec2 c = g.cut_point ? g.cut_point->base : Vec2{nan, nan};
        const double h = g.cut_point ? g.cut_point->height : nan;
        t.add({fmt(g.footpoint.x), fmt(g.footpoint.y), fmt(g.normal.x), fmt(g.normal.y), to_string(g.domain_kind),
               fmt(g.cut_parameter), fmt(c.x), fmt(c.y), fmt(h), mult_cell(g.cut_multiplicity)});
    }
    return t;
}

CsvTable profile_table(const GeneratorProfile& profile) {
    const std::size_t k = profile.options.probe_radii.size();
    CsvTable t;
    t.header = {"u", "base_x", "base_y", "height", "multiplicity", "label"};
    for (std::size_t i = 0; i < k; ++i) t.header.push_back("omega_r" + std::to_string(i + 1));
    for (std::size_t i = 0; i < k; ++i) t.header.push_back("hessian_osc_r" + std::to_string(i + 1));
    t.header.push_back("crease_dist");
    for (const ProfileSample& s : profile.samples) {
        std::vector<std::string> row{fmt(s.u), fmt(s.point.base.x), fmt(s.point.base.y), fmt(s.point.height),
                                     mult_cell(s.cls.multiplicity), to_string(s.cls.label)};
        for (std::size_t i = 0; i < k; ++i) row.push_back(fmt(i < s.cls.omega.size() ? s.cls.omega[i] : std::nan("")));
        for (std::size_t i = 0; i < k; ++i) {
            row.push_back(fmt(i < s.cls.hessian_osc.size() ? s.cls.hessian_osc[i] : std::nan("")));
        }
        row.push_back(fmt(s.cls.crease_distance));
        t.add(std::move(row));
    }
    return t;
}

CsvTable jump_attempts_table(const std::vector<JumpAttempt>& attempts) {
    CsvTable t{{"attempt", "width_factor", "amplitude", "decay", "not_diff", "diff_only", "c1_not_c2", "c2_plus",
                "jump_u", "pass"},
               {}};
    for (std::size_t i = 0; i < attempts.size(); ++i) {
        const JumpAttempt& a = attempts[i];
        t.add({std::to_string(i + 1), fmt(a.width_factor), fmt(a.amplitude), fmt(a.decay),
               std::to_string(a.not_diff), std::to_string(a.diff_only), std::to_string(a.c1), std::to_string(a.c2),
               a.jump ? fmt(*a.jump) : "none", flag(a.pass)});
    }
    return t;
}

CsvTable harness_table(const HarnessReport& report) {
    CsvTable t{{"n", "window", "resolution", "found", "q_x", "q_y", "q_t", "q_multiplicity", "p1_x", "p1_y", "p2_x",
                "p2_y", "chord", "theta_ok", "tangency_res1", "tangency_res2", "tangency_tol", "r_x", "r_y", "t_star",
                "kappa_theta_rn", "kappa_theta_formal", "kappa_n", "comparison_ok", "kappa_converges", "note"},
               {}};
    for (const HarnessTerm& h : report.terms) {
        t.add({std::to_string(h.n), fmt(h.window), fmt(h.resolution), flag(h.found), fmt(h.q.base.x),
               fmt(h.q.base.y), fmt(h.q.height), std::to_string(h.q_multiplicity), fmt(h.p1.x), fmt(h.p1.y),
               fmt(h.p2.x), fmt(h.p2.y), fmt(h.chord), flag(h.theta_ok), fmt(h.tangency_res1), fmt(h.tangency_res2),
               fmt(h.tangency_tol), fmt(h.r.x), fmt(h.r.y), fmt(h.t_star), fmt(h.kappa_theta),
               fmt(h.kappa_theta_formal), fmt(h.kappa_n), flag(h.comparison_ok), flag(h.kappa_converges), h.note});
    }
    return t;
}

CsvTable harness_params_table(const HarnessParams& p) {
    CsvTable t{{"key", "value"}, {}};
    auto kv = [&](const std::string& k, double v) { t.add({k, fmt(v)}); };
    kv("footpoint_x", p.generator.footpoint.x);
    kv("footpoint_y", p.generator.footpoint.y);
    kv("range", p.range);
    kv("jump_u", p.jump);
    kv("u_f", p.u_f);
    kv("u_p", p.u_p);
    kv("u_minus", p.u_minus);
    kv("gamma_f_t", p.gamma_f.height);
    kv("gamma_p_t", p.gamma_p.height);
    kv("gamma_minus_t", p.gamma_minus.height);
    kv("time_R", p.time_R);
    kv("kappa_f", p.kappa_f);
    kv("kappa_p", p.kappa_p);
    kv("kappa", p.kappa);
    kv("anchor_x", p.anchor.x);
    kv("anchor_y", p.anchor.y);
    t.add({"n_terms", std::to_string(p.n_terms)});
    return t;
}

CsvTable verdict_table(const Verdict& v) {
    CsvTable t{{"key", "value"}, {}};
    t.add({"liminf_ok", flag(v.liminf_ok)});
    t.add({"liminf", fmt(v.liminf)});
    t.add({"liminf_tol", fmt(v.liminf_tol)});
    t.add({"non_stabilization", flag(v.non_stabilization)});
    for (std::size_t i = 0; i < v.left_estimates.size(); ++i) {
        t.add({"left_estimate_" + std::to_string(i + 1), fmt(v.left_estimates[i])});
    }
    for (std::size_t i = 0; i < v.right_estimates.size(); ++i) {
        t.add({"right_estimate_" + std::to_string(i + 1), fmt(v.right_estimates[i])});
    }
    t.add({"achronal", flag(v.achronal)});
    t.add({"theta_checked", std::to_string(v.theta_checked)});
    t.add({"pass", flag(v.pass())});
    for (const auto& f : v.failures) t.add({"failure", f});
    return t;
}

// ---- SVG ---------------------------------------------------------------------------

namespace {

class Canvas {
public:
    Canvas(Rect world, double x0, double y0, double width, double height) : world_(world), x0_(x0), y0_(y0) {
        const double sx = width / (world.xmax - world.xmin);
        const double sy = height / (world.ymax - world.ymin);
        s_ = std::min(sx, sy);
    }

    double px(double x) const { return x0_ + (x - world_.xmin) * s_; }
    double py(double y) const { return y0_ + (world_.ymax - y) * s_; }
    double len(double l) const { return l * s_; }

private:
    Rect world_;
    double x0_;
    double y0_;
    double s_ = 1.0;
};

std::string n3(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    return buf;
}

std::string svg_open(double w, double h) {
    return "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" "
           "width=\"" + n3(w) + "\" height=\"" + n3(h) + "\" viewBox=\"0 0 " + n3(w) + " " + n3(h) + "\">\n" +
           "<rect x=\"0\" y=\"0\" width=\"" + n3(w) + "\" height=\"" + n3(h) + "\" fill=\"white\"/>\n";
}

std::string polyline(const Canvas& c, const std::vector<Vec2>& pts, const std::string& stroke, double width) {
    std::string s = "<polyline fill=\"none\" stroke=\"" + stroke + "\" stroke-width=\"" + n3(width) + "\" points=\"";
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (i) s += ' ';
        s += n3(c.px(pts[i].x)) + "," + n3(c.py(pts[i].y));
    }
    return s + "\"/>\n";
}

std::string circle(const Canvas& c, Vec2 p, double r_px, const std::string& fill, const std::string& stroke = "none") {
    return "<circle cx=\"" + n3(c.px(p.x)) + "\" cy=\"" + n3(c.py(p.y)) + "\" r=\"" + n3(r_px) + "\" fill=\"" + fill +
           "\" stroke=\"" + stroke + "\"/>\n";
}

std::string world_circle(const Canvas& c, Vec2 p, double r, const std::string& stroke) {
    return "<circle cx=\"" + n3(c.px(p.x)) + "\" cy=\"" + n3(c.py(p.y)) + "\" r=\"" + n3(c.len(r)) +
           "\" fill=\"none\" stroke=\"" + stroke + "\" stroke-width=\"0.6\"/>\n";
}

std::string label(double x, double y, const std::string& text, int size = 12) {
    return "<text x=\"" + n3(x) + "\" y=\"" + n3(y) + "\" font-family=\"sans-serif\" font-size=\"" +
           std::to_string(size) + "\">" + text + "</text>\n";
}

std::string frame(const Canvas& c, Rect w) {
    return polyline(c, {{w.xmin, w.ymin}, {w.xmax, w.ymin}, {w.xmax, w.ymax}, {w.xmin, w.ymax}, {w.xmin, w.ymin}},
                    "#999999", 0.8);
}

}  // namespace

std::string horizon_svg(const Region& region, Rect window, int nx, int ny, const CreaseSet& crease, double) {
    if (nx < 2 || ny < 2) throw Error(ErrorCode::InvalidArgument, "horizon grid needs at least 2x2 points");
    std::vector<double> h(static_cast<std::size_t>(nx * ny));
    double hmax = 0.0;
    auto at = [&](int i, int j) -> double& { return h[static_cast<std::size_t>(j * nx + i)]; };
    auto X = [&](int i) { return window.xmin + (window.xmax - window.xmin) * i / (nx - 1); };
    auto Y = [&](int j) { return window.ymin + (window.ymax - window.ymin) * j / (ny - 1); };
    for (int j = 0; j < ny; ++j) {
        for (int i = 0; i < nx; ++i) {
            at(i, j) = region.distance_to_complement({X(i), Y(j)});
            hmax = std::max(hmax, at(i, j));
        }
    }
    const double W = 640.0;
    const double H = 640.0;
    const Canvas c(window, 40.0, 40.0, W - 80.0, H - 80.0);
    std::string s = svg_open(W, H);
    s += frame(c, window);
    constexpr int kLevels = 10;
    for (int l = 1; l <= kLevels && hmax > 0.0; ++l) {
        const double level = hmax * l / (kLevels + 1);
        // Marching squares, one segment per crossing pair.
        for (int j = 0; j + 1 < ny; ++j) {
            for (int i = 0; i + 1 < nx; ++i) {
                const double v[4] = {at(i, j) - level, at(i + 1, j) - level, at(i + 1, j + 1) - level,
                                     at(i, j + 1) - level};
                const Vec2 p[4] = {{X(i), Y(j)}, {X(i + 1), Y(j)}, {X(i + 1), Y(j + 1)}, {X(i), Y(j + 1)}};
                std::vector<Vec2> cross_pts;
                for (int e = 0; e < 4; ++e) {
                    const double a = v[e];
                    const double b = v[(e + 1) % 4];
                    if ((a < 0.0) != (b < 0.0)) {
                        const double t = a / (a - b);
                        cross_pts.push_back(p[e] + (p[(e + 1) % 4] - p[e]) * t);
                    }
                }
                for (std::size_t k = 0; k + 1 < cross_pts.size(); k += 2) {
                    s += polyline(c, {cross_pts[k], cross_pts[k + 1]}, "#1f5fa8", 0.8);
                }
            }
        }
    }
    for (const Vec2& q : crease.samples) s += circle(c, q, 1.6, "#c0392b");
    s += label(40.0, 24.0, region.name() + ": height contours of the horizon, max " + fmt(hmax) +
                               "; red dots are crease samples");
    return s + "</svg>\n";
}

std::string harness_svg(const HarnessReport& rep) {
    const HarnessParams& p = rep.params;
    std::vector<const HarnessTerm*> done;
    for (const auto& t : rep.terms) {
        if (t.found && t.theta_ok) done.push_back(&t);
    }
    const double W = 1200.0;
    const double H = 600.0;
    std::string s = svg_open(W, H);

    // Panel 1: the slice R in the plane of bases.
    std::vector<Vec2> pts{p.gamma_f.base, p.gamma_p.base, p.gamma_minus.base};
    for (const Vec2& x : rep.theta_samples) pts.push_back(x);
    for (const auto* t : done) pts.push_back(t->q.base);
    Rect w{pts[0].x, pts[0].x, pts[0].y, pts[0].y};
    for (const Vec2& x : pts) {
        w.xmin = std::min(w.xmin, x.x);
        w.xmax = std::max(w.xmax, x.x);
        w.ymin = std::min(w.ymin, x.y);
        w.ymax = std::max(w.ymax, x.y);
    }
    const double pad = 0.15 * std::max({w.xmax - w.xmin, w.ymax - w.ymin, 1e-12});
    w = {w.xmin - pad, w.xmax + pad, w.ymin - pad, w.ymax + pad};
    const Canvas c1(w, 30.0, 50.0, 540.0, 520.0);
    s += frame(c1, w);
    for (const Vec2& x : rep.theta_samples) s += circle(c1, x, 1.0, "#1f5fa8");
    for (const auto* t : done) {
        s += world_circle(c1, t->q.base, t->q.height - p.time_R, "#7f8c8d");
        s += circle(c1, t->q.base, 2.0, "#c0392b");
        s += polyline(c1, {t->p1, t->p2}, "#27ae60", 0.8);
    }
    s += circle(c1, p.gamma_f.base, 3.0, "none", "#8e44ad");
    s += circle(c1, p.gamma_p.base, 3.0, "#8e44ad");
    s += circle(c1, p.gamma_minus.base, 3.0, "#2c3e50");
    s += label(30.0, 24.0, "slice t = " + fmt(p.time_R) + ": theta (blue), q_n (red), phi_n (grey), chords (green)");
    s += label(30.0, 40.0, "gamma(t^f) open, gamma(t^p) filled purple, gamma(t^-) black", 11);

    // Panel 2: chord view of the last processed term.
    if (!done.empty()) {
        const HarnessTerm& t = *done.back();
        const Vec2 mid = (t.p1 + t.p2) * 0.5;
        const double half = std::max(0.5 * t.chord, 1e-15);
        const Rect w2{mid.x - 1.6 * half, mid.x + 1.6 * half, mid.y - 1.6 * half, mid.y + 1.6 * half};
        const Canvas c2(w2, 630.0, 50.0, 540.0, 520.0);
        s += frame(c2, w2);
        std::vector<Vec2> arc;
        const double rad = t.q.height - p.time_R;
        const double a1 = std::atan2(t.p1.y - t.q.base.y, t.p1.x - t.q.base.x);
        double a2 = std::atan2(t.p2.y - t.q.base.y, t.p2.x - t.q.base.x);
        if (a2 - a1 > std::numbers::pi) a2 -= 2.0 * std::numbers::pi;
        if (a1 - a2 > std::numbers::pi) a2 += 2.0 * std::numbers::pi;
        for (int i = 0; i <= 64; ++i) {
            const double a = a1 + (a2 - a1) * i / 64.0;
            arc.push_back(t.q.base + Vec2{std::cos(a), std::sin(a)} * rad);
        }
        s += polyline(c2, arc, "#7f8c8d", 1.0);
        s += polyline(c2, {t.p1, t.p2}, "#27ae60", 1.0);
        for (const Vec2& x : rep.theta_samples) {
            if (w2.contains(x)) s += circle(c2, x, 1.5, "#1f5fa8");
        }
        s += circle(c2, t.p1, 3.0, "#27ae60");
        s += circle(c2, t.p2, 3.0, "#27ae60");
        s += circle(c2, t.r, 3.5, "#e67e22");
        s += label(630.0, 24.0, "chord view, n = " + std::to_string(t.n) + ": phi_n (grey), theta (blue), r_n (orange)");
        s += label(630.0, 40.0, "kappa_theta(r_n) = " + fmt(t.kappa_theta) + ", kappa_n = " + fmt(t.kappa_n), 11);
    } else {
        s += label(630.0, 300.0, "no processed terms");
    }
    return s + "</svg>\n";
}

void write_text(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error(ErrorCode::InvalidArgument, "cannot write " + path);
    f << content;
    if (!f) throw Error(ErrorCode::InvalidArgument, "write failed for " + path);
}

}  // namespace chz
