#include "chz/classify.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>

#include "chz/error.hpp"

namespace chz {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

bool is_differentiable(DiffLabel l) { return l != DiffLabel::NotDifferentiable; }
bool is_cut_phase(DiffLabel l) { return l == DiffLabel::NotDifferentiable || l == DiffLabel::DifferentiableOnly; }

/// Chords across the ball; returns the closest crease point found, if any.
std::optional<Vec2> crease_in_ball(const Region& region, Vec2 c, double r, double tol) {
    static constexpr std::array<double, 5> kOffsets{-2.0 / 3.0, -1.0 / 3.0, 0.0, 1.0 / 3.0, 2.0 / 3.0};
    constexpr int kPieces = 8;
    for (int axis = 0; axis < 2; ++axis) {
        for (double o : kOffsets) {
            const double half = r * std::sqrt(1.0 - o * o);
            for (int k = 0; k < kPieces; ++k) {
                const double a0 = -half + 2.0 * half * k / kPieces;
                const double a1 = -half + 2.0 * half * (k + 1) / kPieces;
                const Vec2 a = axis == 0 ? Vec2{c.x + a0, c.y + o * r} : Vec2{c.x + o * r, c.y + a0};
                const Vec2 b = axis == 0 ? Vec2{c.x + a1, c.y + o * r} : Vec2{c.x + o * r, c.y + a1};
                if (!region.contains(a) || !region.contains(b)) continue;
                if (auto q = locate_crease(region, a, b, tol)) return q;
            }
        }
    }
    return std::nullopt;
}

struct Probe {
    Vec2 x;
    Vec2 grad;
};

std::vector<Probe> probes_in_ball(const Region& region, Vec2 c, double r, const ClassifyOptions& opts) {
    std::vector<Probe> out;
    auto add = [&](Vec2 x) {
        if (!region.contains(x)) return;
        const NearestSet ns = region.nearest_boundary_set(x, opts.tol_near);
        if (!ns.unique()) return;
        out.push_back({x, (x - ns.points.front()) / ns.distance});
    };
    add(c);
    for (int ring = 1; ring <= opts.rings; ++ring) {
        const double rr = r * ring / opts.rings;
        for (int k = 0; k < opts.probes_per_ring; ++k) {
            const double theta = 2.0 * std::numbers::pi * (k + 0.5 * ring) / opts.probes_per_ring;
            add(c + Vec2{std::cos(theta), std::sin(theta)} * rr);
        }
    }
    return out;
}

double gradient_oscillation(const std::vector<Probe>& probes) {
    double omega = 0.0;
    for (std::size_t i = 0; i < probes.size(); ++i) {
        for (std::size_t j = i + 1; j < probes.size(); ++j) {
            omega = std::max(omega, angle_between(probes[i].grad, probes[j].grad));
        }
    }
    return omega;
}

/// Hessian of rho by central differences of the exact gradient.
std::optional<std::array<double, 3>> hessian_at(const Region& region, Vec2 x, double h, double tol) {
    std::array<Vec2, 4> g;
    const std::array<Vec2, 4> offs{Vec2{h, 0}, Vec2{-h, 0}, Vec2{0, h}, Vec2{0, -h}};
    for (int i = 0; i < 4; ++i) {
        const Vec2 q = x + offs[i];
        if (!region.contains(q)) return std::nullopt;
        const NearestSet ns = region.nearest_boundary_set(q, tol);
        if (!ns.unique()) return std::nullopt;
        g[i] = (q - ns.points.front()) / ns.distance;
    }
    const Vec2 dx = (g[0] - g[1]) / (2.0 * h);
    const Vec2 dy = (g[2] - g[3]) / (2.0 * h);
    return std::array<double, 3>{dx.x, 0.5 * (dx.y + dy.x), dy.y};
}

double hessian_oscillation(const Region& region, const std::vector<Probe>& probes, double r, double tol) {
    std::vector<std::array<double, 3>> hs;
    for (const Probe& p : probes) {
        if (auto h = hessian_at(region, p.x, r * 1e-3, tol)) hs.push_back(*h);
    }
    if (hs.size() < 2) return kNaN;
    double osc = 0.0;
    for (std::size_t i = 0; i < hs.size(); ++i) {
        for (std::size_t j = i + 1; j < hs.size(); ++j) {
            const double a = hs[i][0] - hs[j][0];
            const double b = hs[i][1] - hs[j][1];
            const double c = hs[i][2] - hs[j][2];
            osc = std::max(osc, std::sqrt(a * a + 2.0 * b * b + c * c));
        }
    }
    return osc;
}

}  // namespace

const char* to_string(DiffLabel label) {
    switch (label) {
        case DiffLabel::NotDifferentiable: return "NotDifferentiable";
        case DiffLabel::DifferentiableOnly: return "DifferentiableOnly";
        case DiffLabel::C1NotC2: return "C1NotC2";
        case DiffLabel::C2Plus: return "C2Plus";
    }
    return "?";
}

std::optional<DiffLabel> parse_label(const std::string& s) {
    for (DiffLabel l : {DiffLabel::NotDifferentiable, DiffLabel::DifferentiableOnly, DiffLabel::C1NotC2,
                        DiffLabel::C2Plus}) {
        if (s == to_string(l)) return l;
    }
    return std::nullopt;
}

std::vector<double> default_probe_radii(const Region& region) {
    const double s = region.scale();
    return {1e-2 * s, 1e-3 * s, 1e-4 * s, 1e-5 * s};
}

DiffClass classify_point(const Region& region, const HorizonPoint& p, const ClassifyOptions& opts) {
    DiffClass out;
    out.radii = opts.probe_radii.empty() ? default_probe_radii(region) : opts.probe_radii;
    for (std::size_t i = 1; i < out.radii.size(); ++i) {
        if (!(out.radii[i] < out.radii[i - 1])) throw Error(ErrorCode::InvalidArgument, "probe radii must decrease");
    }
    if (out.radii.empty() || !(out.radii.back() > 0.0)) {
        throw Error(ErrorCode::InvalidArgument, "probe radii must be positive");
    }
    out.multiplicity = generator_multiplicity(region, p, opts.tol_near);
    const std::size_t n = out.radii.size();
    out.omega.assign(n, kNaN);
    out.hessian_osc.assign(n, kNaN);
    out.crease_in_ball.assign(n, 0);
    out.crease_distance = kInf;
    if (out.multiplicity.at_least_two()) {
        out.label = DiffLabel::NotDifferentiable;
        out.crease_distance = 0.0;
        return out;
    }

    // Balls are nested, so a crease in the smallest one is in all of them.
    std::optional<Vec2> smallest = crease_in_ball(region, p.base, out.radii.back(), opts.tol_near);
    if (smallest) {
        std::fill(out.crease_in_ball.begin(), out.crease_in_ball.end(), 1);
        out.crease_distance = distance(*smallest, p.base);
    } else {
        for (std::size_t i = 0; i + 1 < n; ++i) {
            if (auto q = crease_in_ball(region, p.base, out.radii[i], opts.tol_near)) {
                out.crease_in_ball[i] = 1;
                out.crease_distance = std::min(out.crease_distance, distance(*q, p.base));
            }
        }
    }

    for (std::size_t i = 0; i < n; ++i) {
        const std::vector<Probe> probes = probes_in_ball(region, p.base, out.radii[i], opts);
        if (probes.size() < 4) throw Error(ErrorCode::InsufficientProbes, "too few multiplicity-1 probes");
        out.omega[i] = gradient_oscillation(probes);
        if (!out.crease_in_ball[i]) {
            out.hessian_osc[i] = hessian_oscillation(region, probes, out.radii[i], opts.tol_near);
        }
    }

    if (smallest) {
        out.label = DiffLabel::DifferentiableOnly;
        return out;
    }
    const double last = out.hessian_osc[n - 1];
    if (std::isnan(last)) throw Error(ErrorCode::InsufficientProbes, "no Hessian estimates at the smallest radius");
    if (last < opts.hessian_threshold) {
        out.label = DiffLabel::C2Plus;
    } else if (n >= 2 && !out.crease_in_ball[n - 2] && !std::isnan(out.hessian_osc[n - 2]) &&
               last <= opts.hessian_decay * out.hessian_osc[n - 2]) {
        out.label = DiffLabel::C2Plus;
    } else {
        out.label = DiffLabel::C1NotC2;
    }
    return out;
}

GeneratorProfile classify_generator(const Region& region, const Generator& gen, int n_samples,
                                    const ClassifyOptions& opts) {
    if (n_samples < 8) throw Error(ErrorCode::InvalidArgument, "classify_generator needs n_samples >= 8");
    GeneratorProfile prof;
    prof.generator = gen;
    prof.region = std::make_shared<const Region>(region);
    prof.options = opts;
    if (prof.options.probe_radii.empty()) prof.options.probe_radii = default_probe_radii(region);
    const double r_max = prof.options.probe_radii.front();
    prof.range = gen.open() ? 10.0 * region.scale() : gen.cut_parameter;

    const double h_min = 4.0 * r_max;
    const double u_min = gen.open() ? 0.0 : 2.0 * r_max;
    const double u_max = prof.range - h_min;
    std::vector<double> us;
    if (u_max > u_min) {
        const int m = n_samples - (gen.open() ? 0 : 1);
        const int n_geo = m / 3;
        const int n_top = m / 3;
        const int n_uni = m - n_geo - n_top;
        const double u_lo = std::max(u_min, 1e-9 * prof.range);
        for (int i = 0; i < n_geo; ++i) {
            us.push_back(u_lo * std::pow(u_max / u_lo, static_cast<double>(i) / std::max(1, n_geo)));
        }
        for (int i = 0; i < n_uni; ++i) us.push_back(u_lo + (u_max - u_lo) * (i + 0.5) / n_uni);
        // Heights geometric toward the footpoint.
        for (int i = 0; i < n_top; ++i) {
            const double h = h_min * std::pow(prof.range / (2.0 * h_min), static_cast<double>(i) / std::max(1, n_top));
            us.push_back(prof.range - h);
        }
        std::sort(us.begin(), us.end());
        us.erase(std::unique(us.begin(), us.end(),
                             [&](double a, double b) { return std::abs(a - b) <= 1e-12 * prof.range; }),
                 us.end());
        us.erase(std::remove_if(us.begin(), us.end(), [&](double u) { return u < u_min || u > u_max; }), us.end());
    }

    if (!gen.open()) {
        ProfileSample cut;
        cut.u = 0.0;
        cut.point = *gen.cut_point;
        if (gen.cut_multiplicity.at_least_two()) {
            cut.cls.label = DiffLabel::NotDifferentiable;
            cut.cls.multiplicity = gen.cut_multiplicity;
            cut.cls.radii = prof.options.probe_radii;
            cut.cls.omega.assign(cut.cls.radii.size(), kNaN);
            cut.cls.hessian_osc.assign(cut.cls.radii.size(), kNaN);
            cut.cls.crease_in_ball.assign(cut.cls.radii.size(), 1);
            cut.cls.crease_distance = 0.0;
        } else {
            cut.cls = classify_point(region, cut.point, prof.options);
        }
        prof.samples.push_back(cut);
    }
    for (double u : us) {
        ProfileSample s;
        s.u = u;
        s.point = prof.point_at(u);
        s.point.height = region.distance_to_complement(s.point.base);
        s.cls = classify_point(region, s.point, prof.options);
        prof.samples.push_back(s);
    }

    const StructureReport rep = verify_structure(prof);
    if (!rep.monotone) {
        throw Error(ErrorCode::StructureViolation, rep.violations.empty() ? "non-monotone labels" : rep.violations.front());
    }
    prof.jump = locate_jump(prof, 0);
    return prof;
}

std::optional<double> locate_jump(const GeneratorProfile& profile, int refine_steps) {
    const auto& s = profile.samples;
    std::size_t i_last = s.size();
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i].cls.label == DiffLabel::DifferentiableOnly) i_last = i;
    }
    // The jump is interior only when a sample past the cut is DifferentiableOnly.
    if (i_last == s.size() || s[i_last].u <= 0.0 || i_last + 1 >= s.size()) return std::nullopt;
    if (s[i_last + 1].cls.label != DiffLabel::C1NotC2 && s[i_last + 1].cls.label != DiffLabel::C2Plus) {
        return std::nullopt;
    }
    double lo = s[i_last].u;
    double hi = s[i_last + 1].u;
    for (int k = 0; k < refine_steps && profile.region; ++k) {
        const double mid = 0.5 * (lo + hi);
        HorizonPoint p = profile.point_at(mid);
        p.height = profile.region->distance_to_complement(p.base);
        const DiffClass c = classify_point(*profile.region, p, profile.options);
        if (is_cut_phase(c.label)) lo = mid; else hi = mid;
    }
    return 0.5 * (lo + hi);
}

StructureReport verify_structure(const GeneratorProfile& profile) {
    StructureReport rep;
    const auto& s = profile.samples;
    const bool has_cut = !profile.generator.open() && !s.empty() && s.front().u == 0.0;
    bool seen_regular = false;
    bool seen_c1 = false;
    bool seen_c2 = false;
    bool interior_diff_only = false;
    for (std::size_t i = 0; i < s.size(); ++i) {
        const DiffLabel l = s[i].cls.label;
        const bool interior = !(has_cut && i == 0);
        if (interior && l == DiffLabel::NotDifferentiable) {
            rep.monotone = false;
            rep.violations.push_back("NotDifferentiable at interior sample u=" + std::to_string(s[i].u));
        }
        if (is_cut_phase(l) && seen_regular) {
            rep.monotone = false;
            rep.violations.push_back(std::string(to_string(l)) + " after a C1 sample at u=" + std::to_string(s[i].u));
        }
        if (l == DiffLabel::DifferentiableOnly && interior) interior_diff_only = true;
        if (!is_cut_phase(l)) seen_regular = true;
        if (l == DiffLabel::C1NotC2) seen_c1 = true;
        if (l == DiffLabel::C2Plus) seen_c2 = true;
    }
    if (seen_c1 && seen_c2) {
        rep.monotone = false;
        rep.violations.push_back("C1NotC2 and C2Plus mixed on one generator");
    }
    const bool jump = interior_diff_only && seen_regular;
    if (jump) {
        rep.k_clause_active = true;
        if (seen_c2) {
            rep.k_equals_one = false;
            rep.violations.push_back("C2Plus past the jump");
        }
    }
    if (has_cut) {
        const bool differentiable = is_differentiable(s.front().cls.label);
        const bool single = !profile.generator.cut_multiplicity.at_least_two();
        if (differentiable != single) {
            rep.endpoint_rule = false;
            rep.violations.push_back("cut point differentiability disagrees with N=1");
        }
    }
    if (seen_c2 && jump) {
        rep.corollary = false;
        rep.violations.push_back("jump on a generator with a C2Plus interior sample");
    }
    return rep;
}

Region make_jump_region(const JumpFamily& family, double width_factor, double amplitude, double decay) {
    std::vector<Bump> bumps;
    for (int k = 1; k <= family.n_dips; ++k) {
        const double xk = std::ldexp(1.0, -k);
        const double eps = amplitude * std::pow(2.0, -decay * k);
        if (eps == 0.0) continue;
        bumps.push_back({xk, width_factor * xk, eps * xk});
    }
    return Region({BumpGraph(family.level, std::move(bumps))}, "jump", family.scale);
}

JumpSearchResult search_jump_scene(const JumpFamily& family, int budget) {
    JumpSearchResult result;
    int tried = 0;
    ClassifyOptions opts;
    opts.tol_near = family.tol_near;
    TraceOptions topts;
    topts.tol_near = family.tol_near;
    for (double amplitude : family.amplitudes) {
        for (double decay : family.decays) {
            for (double width : family.width_factors) {
                if (tried >= budget) break;
                // A flat boundary is the same for every decay and width.
                if (amplitude == 0.0 && (decay != family.decays.front() || width != family.width_factors.front())) {
                    continue;
                }
                ++tried;
                JumpAttempt at;
                at.width_factor = width;
                at.amplitude = amplitude;
                at.decay = decay;
                Region region = make_jump_region(family, width, amplitude, decay);
                try {
                    const Generator gen = trace_generator(region, {0.0, family.level}, topts);
                    GeneratorProfile prof = classify_generator(region, gen, family.n_samples, opts);
                    for (const auto& s : prof.samples) {
                        switch (s.cls.label) {
                            case DiffLabel::NotDifferentiable: ++at.not_diff; break;
                            case DiffLabel::DifferentiableOnly: ++at.diff_only; break;
                            case DiffLabel::C1NotC2: ++at.c1; break;
                            case DiffLabel::C2Plus: ++at.c2; break;
                        }
                    }
                    at.jump = prof.jump;
                    const StructureReport rep = verify_structure(prof);
                    at.pass = prof.jump.has_value() && rep.pass() && rep.k_clause_active && at.c2 == 0;
                    result.attempts.push_back(at);
                    if (at.pass) {
                        prof.jump = locate_jump(prof, 12);
                        result.attempts.back().jump = prof.jump;
                        result.region = std::move(region);
                        result.profile = std::move(prof);
                        result.structure = rep;
                        return result;
                    }
                } catch (const Error&) {
                    result.attempts.push_back(at);
                }
            }
        }
    }
    throw JumpSearchError("jump search budget exhausted after " + std::to_string(tried) + " attempts",
                          std::move(result.attempts));
}

}  // namespace chz
