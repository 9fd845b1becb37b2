#include "chz/region.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "chz/error.hpp"

namespace chz {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * kPi;

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

/// Nearest points of one primitive's complement.
struct Local {
    double distance = kInf;
    std::vector<Vec2> points;
    bool continuum = false;
};

void push_unique(std::vector<Vec2>& pts, Vec2 p, double tol) {
    for (const Vec2& q : pts) {
        if (distance(p, q) <= tol) return;
    }
    pts.push_back(p);
}

/// Keeps the candidates whose distance is within tol of the smallest one.
Local select_ties(const std::vector<std::pair<double, Vec2>>& cands, double tol) {
    Local out;
    for (const auto& c : cands) out.distance = std::min(out.distance, c.first);
    for (const auto& c : cands) {
        if (c.first <= out.distance + tol) push_unique(out.points, c.second, tol);
    }
    return out;
}

/// Root of h in [lo, hi] with h(lo) < 0 <= h(hi): Newton steps, bisection
/// fallback when a step leaves the bracket.
template <class H, class DH>
double bracketed_root(H&& h, DH&& dh, double lo, double hi) {
    double s = 0.5 * (lo + hi);
    for (int it = 0; it < 100; ++it) {
        const double hs = h(s);
        if (hs == 0.0) return s;
        if (hs < 0.0) lo = s; else hi = s;
        const double slope = dh(s);
        double next = (slope > 0.0) ? s - hs / slope : 0.5 * (lo + hi);
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        if (std::abs(next - s) <= 1e-17 * (1.0 + std::abs(s)) || hi - lo <= 4e-16 * (1.0 + std::abs(s))) {
            return next;
        }
        s = next;
    }
    return s;
}

// ---- half-plane -------------------------------------------------------------

bool contains_of(const HalfPlane& h, Vec2 q) { return dot(h.normal, q) > h.offset; }
double distance_of(const HalfPlane& h, Vec2 q) { return std::max(0.0, dot(h.normal, q) - h.offset); }
Local nearest_of(const HalfPlane& h, Vec2 q, double) {
    const double d = dot(h.normal, q) - h.offset;
    return Local{d, {q - h.normal * d}, false};
}

// ---- disk / anti-disk ---------------------------------------------------------

bool contains_of(const Disk& c, Vec2 q) { return distance(q, c.center) < c.radius; }
double distance_of(const Disk& c, Vec2 q) { return std::max(0.0, c.radius - distance(q, c.center)); }
Local nearest_of(const Disk& c, Vec2 q, double tol) {
    const Vec2 w = q - c.center;
    const double dw = norm(w);
    if (dw <= tol) return Local{c.radius - dw, {}, true};
    return Local{c.radius - dw, {c.center + w * (c.radius / dw)}, false};
}

bool contains_of(const AntiDisk& c, Vec2 q) { return distance(q, c.center) > c.radius; }
double distance_of(const AntiDisk& c, Vec2 q) { return std::max(0.0, distance(q, c.center) - c.radius); }
Local nearest_of(const AntiDisk& c, Vec2 q, double) {
    const Vec2 w = q - c.center;
    const double dw = norm(w);
    return Local{dw - c.radius, {c.center + w * (c.radius / dw)}, false};
}

// ---- ellipse ----------------------------------------------------------------

bool contains_of(const Ellipse& e, Vec2 q) {
    const double u = (q.x - e.center.x) / e.a;
    const double v = (q.y - e.center.y) / e.b;
    return u * u + v * v < 1.0;
}

/// Root of f on (lo, hi) where f changes sign, by bisection to full precision.
template <class F>
double bisect_root(F&& f, double lo, double hi) {
    const bool rising = f(lo) < f(hi);
    for (int it = 0; it < 2000; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (!(mid > lo && mid < hi)) break;
        const double v = f(mid);
        if (v == 0.0) return mid;
        if ((v < 0.0) == rising) lo = mid; else hi = mid;
    }
    return 0.5 * (lo + hi);
}

/// Critical points of the distance from (u, v) to x^2/a^2 + y^2/b^2 = 1 with
/// a > b. A foot satisfies x = a^2 u / (a^2 - m), y = b^2 v / (b^2 - m) for a
/// multiplier m; the constraint is monotone in m below b^2 (one root, the
/// nearest foot in the quadrant of (u, v)) and convex on (b^2, a^2) (zero to
/// two roots). The farthest point, m > a^2, is never a minimizer.
std::vector<Vec2> ellipse_critical_points(double a, double b, double u, double v) {
    const double c = a * a - b * b;
    std::vector<Vec2> out;
    if (v != 0.0) {
        auto g = [&](double d) {
            const double x = a * u / (c + d);
            const double y = b * v / d;
            return x * x + y * y - 1.0;
        };
        const double hi = 2.0 * std::sqrt(a * a * u * u + b * b * v * v);
        const double d = bisect_root(g, 0.0, hi);
        out.push_back({a * a * u / (c + d), b * b * v / d});
    } else {
        out.push_back({u < 0.0 ? -a : a, 0.0});
        if (a * std::abs(u) < c) {
            const double x = a * a * u / c;
            const double y = b * std::sqrt(std::max(0.0, 1.0 - (x / a) * (x / a)));
            out.push_back({x, y});
            out.push_back({x, -y});
        }
    }
    if (u == 0.0) {
        out.push_back({0.0, v < 0.0 ? -b : b});
        out.push_back({0.0, v < 0.0 ? b : -b});
        if (b * std::abs(v) < c) {
            const double y = -b * b * v / c;
            const double x = a * std::sqrt(std::max(0.0, 1.0 - (y / b) * (y / b)));
            out.push_back({x, y});
            out.push_back({-x, y});
        }
    } else if (v != 0.0) {
        auto f = [&](double e) {
            const double x = a * u / (c - e);
            const double y = b * v / e;
            return x * x + y * y - 1.0;
        };
        const double k = std::cbrt((b * v) * (b * v) / ((a * u) * (a * u)));
        const double e_min = c * k / (1.0 + k);
        if (f(e_min) <= 0.0) {
            for (double e : {bisect_root(f, 0.0, e_min), bisect_root(f, e_min, c)}) {
                out.push_back({a * a * u / (c - e), -b * b * v / e});
            }
        }
    }
    return out;
}

Local nearest_of(const Ellipse& e, Vec2 q, double tol) {
    const double u = q.x - e.center.x;
    const double v = q.y - e.center.y;
    if (e.a == e.b) {
        const double dw = std::hypot(u, v);
        if (dw <= tol) return Local{e.a - dw, {}, true};
        return Local{std::abs(e.a - dw), {e.center + Vec2{u, v} * (e.a / dw)}, false};
    }
    const bool swap = e.a < e.b;
    std::vector<Vec2> feet = swap ? ellipse_critical_points(e.b, e.a, v, u) : ellipse_critical_points(e.a, e.b, u, v);
    std::vector<std::pair<double, Vec2>> cands;
    for (Vec2 f : feet) {
        if (swap) f = {f.y, f.x};
        const Vec2 p = e.center + f;
        cands.emplace_back(distance(q, p), p);
    }
    return select_ties(cands, tol);
}

double distance_of(const Ellipse& e, Vec2 q) {
    if (!contains_of(e, q)) return 0.0;
    return nearest_of(e, q, 0.0).distance;
}

// ---- bump graph ---------------------------------------------------------------

bool contains_of(const BumpGraph& g, Vec2 q) { return q.y < g.value(q.x); }

Local nearest_of(const BumpGraph& g, Vec2 q, double tol) {
    const auto& bumps = g.bumps();
    const double level = g.level();
    const double below = level - q.y;  // > 0 away from bumps
    std::vector<std::pair<double, Vec2>> cands;
    double best = kInf;
    // Flat pieces between bump supports.
    double lo = -kInf;
    for (std::size_t k = 0; k <= bumps.size(); ++k) {
        const double hi = (k < bumps.size()) ? bumps[k].center - bumps[k].half_width : kInf;
        const double s = std::clamp(q.x, lo, hi);
        if (std::isfinite(s)) {
            // Exact vertical offset on the flat level.
            const double dx = s - q.x;
            const double d = std::hypot(dx, below);
            best = std::min(best, d);
            cands.emplace_back(d, Vec2{s, level});
        }
        if (k < bumps.size()) lo = bumps[k].center + bumps[k].half_width;
    }
    // Bumps, nearest bounding boxes first.
    std::vector<std::pair<double, std::size_t>> order;
    order.reserve(bumps.size());
    for (std::size_t k = 0; k < bumps.size(); ++k) {
        const Bump& bp = bumps[k];
        const double dx = std::max(0.0, std::abs(q.x - bp.center) - bp.half_width);
        const double ylo = std::min(level, level - bp.depth);
        const double yhi = std::max(level, level - bp.depth);
        const double dy = (q.y < ylo) ? ylo - q.y : (q.y > yhi ? q.y - yhi : 0.0);
        order.emplace_back(std::hypot(dx, dy), k);
    }
    std::sort(order.begin(), order.end());
    constexpr int kSamples = 32;
    for (const auto& [lb, k] : order) {
        if (lb > best + tol) break;
        const Bump& bp = bumps[k];
        const double w = bp.half_width;
        // Offsets relative to the flat level keep tiny depths resolved.
        auto local = [&](double s, double& off, double& d1, double& d2) {
            const BumpValue phi = bump_profile((s - bp.center) / w);
            off = -bp.depth * phi.value;  // B(s) - level
            d1 = -bp.depth * phi.d1 / w;
            d2 = -bp.depth * phi.d2 / (w * w);
        };
        auto h = [&](double s) {
            double off, d1, d2;
            local(s, off, d1, d2);
            return (s - q.x) + (below + off) * d1;  // B - y = below + off
        };
        auto dh = [&](double s) {
            double off, d1, d2;
            local(s, off, d1, d2);
            return 1.0 + d1 * d1 + (below + off) * d2;
        };
        const double a = bp.center - w;
        double s_prev = a;
        double h_prev = h(s_prev);
        for (int i = 1; i <= kSamples; ++i) {
            const double s = a + 2.0 * w * i / kSamples;
            const double hs = h(s);
            if (h_prev < 0.0 && hs >= 0.0) {
                const double root = bracketed_root(h, dh, s_prev, s);
                double off, d1, d2;
                local(root, off, d1, d2);
                const double d = std::hypot(root - q.x, below + off);
                best = std::min(best, d);
                cands.emplace_back(d, Vec2{root, level + off});
            }
            s_prev = s;
            h_prev = hs;
        }
    }
    // Tied candidates inside one distance well (e.g. where the profile is flat
    // to all orders near a support edge) are a single minimizer.
    std::vector<std::pair<double, Vec2>> ties;
    for (const auto& c : cands) {
        if (c.first <= best + tol) ties.push_back(c);
    }
    std::sort(ties.begin(), ties.end(), [](const auto& a, const auto& b) { return a.second.x < b.second.x; });
    Local out;
    out.distance = best;
    std::pair<double, Vec2> kept = ties.front();
    auto flush = [&] { push_unique(out.points, kept.second, tol); };
    for (std::size_t i = 1; i < ties.size(); ++i) {
        const auto& c = ties[i];
        const double ceiling = std::max(kept.first, c.first) + tol;
        bool same_well = true;
        for (int j = 1; j <= 3 && same_well; ++j) {
            const double s = kept.second.x + (c.second.x - kept.second.x) * j / 4.0;
            const double off = g.value(s) - level;
            same_well = std::hypot(s - q.x, below + off) <= ceiling;
        }
        if (same_well) {
            if (c.first < kept.first) kept = c;
        } else {
            flush();
            kept = c;
        }
    }
    flush();
    return out;
}

double distance_of(const BumpGraph& g, Vec2 q) {
    if (!contains_of(g, q)) return 0.0;
    return nearest_of(g, q, 0.0).distance;
}

// ---- disk union ---------------------------------------------------------------

bool angle_in_arc(double theta, const Arc& arc) {
    double rel = std::fmod(theta - arc.start, kTwoPi);
    if (rel < 0.0) rel += kTwoPi;
    return rel <= arc.length;
}

bool contains_of(const DiskUnion& du, Vec2 q) {
    for (const Disk& d : du.disks()) {
        if (distance(q, d.center) < d.radius) return true;
    }
    return false;
}

Local nearest_of(const DiskUnion& du, Vec2 q, double tol) {
    std::vector<std::pair<double, Vec2>> cands;
    Local out;
    double continuum_distance = kInf;
    // Every arc point lies within bound_radius of bound_center.
    double upper = kInf;
    for (const Arc& arc : du.arcs()) upper = std::min(upper, distance(q, arc.bound_center) + arc.bound_radius);
    for (const Arc& arc : du.arcs()) {
        if (distance(q, arc.bound_center) - arc.bound_radius > upper + tol) continue;
        const Disk& d = du.disks()[arc.disk];
        const Vec2 w = q - d.center;
        const double dw = norm(w);
        if (dw <= tol) {
            continuum_distance = std::min(continuum_distance, d.radius);
            continue;
        }
        const double theta = std::atan2(w.y, w.x);
        if (angle_in_arc(theta, arc)) {
            cands.emplace_back(std::abs(d.radius - dw), d.center + w * (d.radius / dw));
        } else {
            for (double ang : {arc.start, arc.start + arc.length}) {
                const Vec2 p = d.center + Vec2{std::cos(ang), std::sin(ang)} * d.radius;
                cands.emplace_back(distance(q, p), p);
            }
        }
    }
    if (!cands.empty()) out = select_ties(cands, tol);
    if (continuum_distance <= out.distance + tol) {
        out.distance = std::min(out.distance, continuum_distance);
        out.points.clear();
        out.continuum = true;
    }
    return out;
}

double distance_of(const DiskUnion& du, Vec2 q) {
    if (!contains_of(du, q)) return 0.0;
    return nearest_of(du, q, 0.0).distance;
}

// ---- inward normals -------------------------------------------------------------

struct NormalQuery {
    bool on_boundary = false;
    bool corner = false;
    Vec2 normal;
};

NormalQuery normal_of(const HalfPlane& h, Vec2 y, double tol) {
    if (std::abs(dot(h.normal, y) - h.offset) > tol) return {};
    return {true, false, h.normal};
}
NormalQuery normal_of(const Disk& c, Vec2 y, double tol) {
    if (std::abs(distance(y, c.center) - c.radius) > tol) return {};
    return {true, false, normalized(c.center - y)};
}
NormalQuery normal_of(const AntiDisk& c, Vec2 y, double tol) {
    if (std::abs(distance(y, c.center) - c.radius) > tol) return {};
    return {true, false, normalized(y - c.center)};
}
NormalQuery normal_of(const Ellipse& e, Vec2 y, double tol) {
    const double u = y.x - e.center.x;
    const double v = y.y - e.center.y;
    const double level = std::sqrt((u / e.a) * (u / e.a) + (v / e.b) * (v / e.b));
    if (std::abs(level - 1.0) * std::min(e.a, e.b) > tol) return {};
    return {true, false, normalized(Vec2{-u / (e.a * e.a), -v / (e.b * e.b)})};
}
NormalQuery normal_of(const BumpGraph& g, Vec2 y, double tol) {
    if (std::abs(y.y - g.value(y.x)) > tol) return {};
    return {true, false, normalized(Vec2{g.d1(y.x), -1.0})};
}
NormalQuery normal_of(const DiskUnion& du, Vec2 y, double tol) {
    NormalQuery out;
    for (const Arc& arc : du.arcs()) {
        const Disk& d = du.disks()[arc.disk];
        if (std::abs(distance(y, d.center) - d.radius) > tol) continue;
        const Vec2 w = y - d.center;
        const double theta = std::atan2(w.y, w.x);
        if (!angle_in_arc(theta, arc)) continue;
        const double margin = tol / d.radius;
        double rel = std::fmod(theta - arc.start, kTwoPi);
        if (rel < 0.0) rel += kTwoPi;
        if (arc.length < kTwoPi && (rel <= margin || rel >= arc.length - margin)) {
            return {true, true, {}};
        }
        out = {true, false, normalized(d.center - y)};
    }
    return out;
}

}  // namespace

// ---- public -----------------------------------------------------------------------

BumpValue bump_profile(double z) {
    if (!(std::abs(z) < 1.0)) return {};
    const double q = 1.0 - z * z;
    const double phi = std::exp(1.0 - 1.0 / q);
    const double g1 = -2.0 * z / (q * q);
    const double g2 = -2.0 / (q * q) - 8.0 * z * z / (q * q * q);
    return {phi, phi * g1, phi * (g1 * g1 + g2)};
}

BumpGraph::BumpGraph(double level, std::vector<Bump> bumps) : level_(level), bumps_(std::move(bumps)) {
    std::sort(bumps_.begin(), bumps_.end(),
              [](const Bump& a, const Bump& b) { return a.center < b.center; });
    for (std::size_t k = 0; k < bumps_.size(); ++k) {
        if (!(bumps_[k].half_width > 0.0)) throw Error(ErrorCode::InvalidArgument, "bump width must be > 0");
        if (k > 0 && bumps_[k - 1].center + bumps_[k - 1].half_width > bumps_[k].center - bumps_[k].half_width) {
            throw Error(ErrorCode::InvalidArgument, "bump supports overlap");
        }
    }
}

int BumpGraph::bump_at(double x) const {
    auto it = std::upper_bound(bumps_.begin(), bumps_.end(), x,
                               [](double v, const Bump& b) { return v < b.center; });
    for (int cand : {static_cast<int>(it - bumps_.begin()) - 1, static_cast<int>(it - bumps_.begin())}) {
        if (cand >= 0 && cand < static_cast<int>(bumps_.size()) &&
            std::abs(x - bumps_[cand].center) < bumps_[cand].half_width) {
            return cand;
        }
    }
    return -1;
}

double BumpGraph::value(double x) const {
    const int k = bump_at(x);
    if (k < 0) return level_;
    const Bump& b = bumps_[k];
    return level_ - b.depth * bump_profile((x - b.center) / b.half_width).value;
}

double BumpGraph::d1(double x) const {
    const int k = bump_at(x);
    if (k < 0) return 0.0;
    const Bump& b = bumps_[k];
    return -b.depth * bump_profile((x - b.center) / b.half_width).d1 / b.half_width;
}

double BumpGraph::d2(double x) const {
    const int k = bump_at(x);
    if (k < 0) return 0.0;
    const Bump& b = bumps_[k];
    return -b.depth * bump_profile((x - b.center) / b.half_width).d2 / (b.half_width * b.half_width);
}

namespace {

/// Circle enclosing the arc: the chord's Thales circle for arcs up to pi,
/// the whole circle otherwise.
void bound_arc(const Disk& d, double start, double length, Vec2& center, double& radius) {
    if (length <= kPi) {
        const Vec2 p0 = d.center + Vec2{std::cos(start), std::sin(start)} * d.radius;
        const Vec2 p1 = d.center + Vec2{std::cos(start + length), std::sin(start + length)} * d.radius;
        center = (p0 + p1) * 0.5;
        radius = 0.5 * distance(p0, p1) * (1.0 + 1e-12) + 1e-15 * d.radius;
    } else {
        center = d.center;
        radius = d.radius * (1.0 + 1e-12);
    }
}

using Intervals = std::vector<std::pair<double, double>>;

void add_cover(const Disk& a, const Disk& b, Intervals& covered) {
    const double dx = b.center.x - a.center.x;
    const double dy = b.center.y - a.center.y;
    const double d2 = dx * dx + dy * dy;
    const double rsum = a.radius + b.radius;
    if (d2 >= rsum * rsum) return;
    const double d = std::sqrt(d2);
    if (d + b.radius <= a.radius) return;
    const double c = (a.radius * a.radius + d2 - b.radius * b.radius) / (2.0 * a.radius * d);
    const double half = std::acos(std::clamp(c, -1.0, 1.0));
    const double mid = std::atan2(dy, dx);
    double lo = std::fmod(mid - half, kTwoPi);
    if (lo < 0.0) lo += kTwoPi;
    const double hi = lo + 2.0 * half;
    if (hi > kTwoPi) {
        covered.emplace_back(lo, kTwoPi);
        covered.emplace_back(0.0, hi - kTwoPi);
    } else {
        covered.emplace_back(lo, hi);
    }
}

/// Uncovered angle intervals of [0, 2 pi); a gap through angle 0 is joined.
Intervals uncovered(Intervals covered) {
    std::sort(covered.begin(), covered.end());
    double cursor = 0.0;
    Intervals gaps;
    for (const auto& [lo, hi] : covered) {
        if (lo > cursor) gaps.emplace_back(cursor, lo);
        cursor = std::max(cursor, hi);
    }
    if (cursor < kTwoPi) gaps.emplace_back(cursor, kTwoPi);
    if (gaps.size() >= 2 && gaps.front().first == 0.0 && gaps.back().second == kTwoPi) {
        gaps.front().first = gaps.back().first - kTwoPi;
        gaps.pop_back();
    }
    return gaps;
}

}  // namespace

DiskUnion::DiskUnion(std::vector<Disk> disks) : disks_(std::move(disks)) {
    if (disks_.empty()) throw Error(ErrorCode::InvalidArgument, "disk union needs at least one disk");
    for (const Disk& d : disks_) {
        if (!(d.radius > 0.0)) throw Error(ErrorCode::InvalidArgument, "disk radius must be > 0");
    }
    const std::size_t n = disks_.size();
    // Drop circles lying in the closure of another disk: their boundary points
    // are interior to the union or shared with the container's circle.
    std::vector<char> alive(n, 1);
    for (std::size_t i = 0; i < n; ++i) {
        const Disk& a = disks_[i];
        for (std::size_t j = 0; j < n && alive[i]; ++j) {
            if (j == i || !alive[j]) continue;
            const Disk& b = disks_[j];
            const double eps = 1e-12 * (1.0 + b.radius);
            if (b.radius + eps < a.radius) continue;
            const double d = distance(a.center, b.center);
            if (d + a.radius <= b.radius + eps) {
                const bool identical = d + b.radius <= a.radius + eps;
                if (!identical || i > j) alive[i] = 0;
            }
        }
    }
    std::vector<std::size_t> live;
    for (std::size_t i = 0; i < n; ++i) {
        if (alive[i]) live.push_back(i);
    }
    // Nearest neighbours first; the rest only matter where they reach a gap.
    constexpr std::size_t kFirst = 24;
    std::vector<std::pair<double, std::size_t>> order;
    for (std::size_t i : live) {
        const Disk& a = disks_[i];
        order.clear();
        for (std::size_t j : live) {
            if (j != i) order.emplace_back(distance(a.center, disks_[j].center), j);
        }
        const std::size_t k = std::min(kFirst, order.size());
        std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k), order.end());
        Intervals covered;
        for (std::size_t m = 0; m < k; ++m) add_cover(a, disks_[order[m].second], covered);
        Intervals gaps = uncovered(covered);
        std::vector<std::pair<Vec2, double>> bounds;
        for (const auto& [lo, hi] : gaps) {
            Vec2 c;
            double r = 0.0;
            bound_arc(a, lo, hi - lo, c, r);
            bounds.emplace_back(c, r);
        }
        for (std::size_t m = k; m < order.size() && !gaps.empty(); ++m) {
            const Disk& b = disks_[order[m].second];
            bool reaches = false;
            for (const auto& [c, r] : bounds) reaches = reaches || distance(c, b.center) < b.radius + r;
            if (reaches) add_cover(a, b, covered);
        }
        gaps = uncovered(std::move(covered));
        for (const auto& [lo, hi] : gaps) {
            Arc arc{i, lo, hi - lo, {}, 0.0};
            bound_arc(a, arc.start, arc.length, arc.bound_center, arc.bound_radius);
            arcs_.push_back(arc);
        }
    }
}

const char* primitive_name(const Primitive& p) {
    return std::visit(Overloaded{
                          [](const HalfPlane&) { return "half_plane"; },
                          [](const Disk&) { return "disk"; },
                          [](const AntiDisk&) { return "anti_disk"; },
                          [](const Ellipse&) { return "ellipse"; },
                          [](const BumpGraph&) { return "bump_graph"; },
                          [](const DiskUnion&) { return "disk_union"; },
                      },
                      p);
}

Region::Region(std::vector<Primitive> primitives, std::string name, double scale)
    : primitives_(std::move(primitives)), name_(std::move(name)), scale_(scale) {
    if (primitives_.empty()) throw Error(ErrorCode::InvalidArgument, "region needs at least one primitive");
    if (!(scale_ > 0.0)) throw Error(ErrorCode::InvalidArgument, "region scale must be > 0");
}

bool Region::contains(Vec2 x) const {
    for (const Primitive& p : primitives_) {
        if (!std::visit([&](const auto& prim) { return contains_of(prim, x); }, p)) return false;
    }
    return true;
}

double Region::distance_to_complement(Vec2 x) const {
    double rho = kInf;
    for (const Primitive& p : primitives_) {
        rho = std::min(rho, std::visit([&](const auto& prim) { return distance_of(prim, x); }, p));
        if (rho == 0.0) break;
    }
    return rho;
}

NearestSet Region::nearest_boundary_set(Vec2 x, double tol) const {
    if (!contains(x)) throw Error(ErrorCode::OutsideRegion, "nearest set requested outside S");
    std::vector<Local> locals;
    locals.reserve(primitives_.size());
    double best = kInf;
    for (const Primitive& p : primitives_) {
        locals.push_back(std::visit([&](const auto& prim) { return nearest_of(prim, x, tol); }, p));
        best = std::min(best, locals.back().distance);
    }
    NearestSet out;
    out.distance = best;
    for (const Local& l : locals) {
        if (l.distance > best + tol) continue;
        if (l.continuum) out.continuum = true;
        for (const Vec2& pt : l.points) {
            if (distance(x, pt) <= best + tol) push_unique(out.points, pt, tol);
        }
    }
    if (out.continuum) out.points.clear();
    return out;
}

Vec2 Region::gradient(Vec2 x, double tol) const {
    const NearestSet ns = nearest_boundary_set(x, tol);
    if (!ns.unique()) throw Error(ErrorCode::NotDifferentiable, "multiple nearest boundary points");
    return (x - ns.points.front()) / ns.distance;
}

Vec2 Region::inward_normal(Vec2 y, double tol) const {
    std::vector<Vec2> normals;
    for (const Primitive& p : primitives_) {
        const NormalQuery nq = std::visit([&](const auto& prim) { return normal_of(prim, y, tol); }, p);
        if (nq.corner) throw Error(ErrorCode::Corner, "boundary point is a corner");
        if (nq.on_boundary) {
            normals.push_back(nq.normal);
        } else if (!std::visit([&](const auto& prim) { return contains_of(prim, y); }, p)) {
            throw Error(ErrorCode::InvalidArgument, "point is not on the boundary of S");
        }
    }
    if (normals.empty()) throw Error(ErrorCode::InvalidArgument, "point is not on the boundary of S");
    for (const Vec2& n : normals) {
        if (distance(n, normals.front()) > 1e-9) throw Error(ErrorCode::Corner, "boundary point is a corner");
    }
    return normals.front();
}

// ---- crease location ------------------------------------------------------------

namespace {

struct FootSample {
    bool crease = false;
    Vec2 foot;
};

FootSample foot_at(const Region& region, Vec2 x, double tol) {
    const NearestSet ns = region.nearest_boundary_set(x, tol);
    if (!ns.unique()) return {true, {}};
    return {false, ns.points.front()};
}

std::optional<Vec2> locate_between(const Region& region, Vec2 a, FootSample fa, Vec2 b, FootSample fb,
                                   double tol) {
    if (fa.crease) return a;
    if (fb.crease) return b;
    const double coord = std::max({1.0, std::abs(a.x), std::abs(a.y), std::abs(b.x), std::abs(b.y)});
    const double stop = std::max(0.25 * tol, 16.0 * std::numeric_limits<double>::epsilon() * coord);
    Vec2 p = a;
    Vec2 q = b;
    Vec2 fp = fa.foot;
    Vec2 fq = fb.foot;
    double gap = distance(fp, fq);
    int shrinking = 0;
    while (distance(p, q) > stop) {
        if (gap == 0.0) return std::nullopt;
        const Vec2 m = (p + q) * 0.5;
        if (!region.contains(m)) return std::nullopt;
        const FootSample fm = foot_at(region, m, tol);
        if (fm.crease) return m;
        const double g1 = distance(fp, fm.foot);
        const double g2 = distance(fm.foot, fq);
        const double next = std::max(g1, g2);
        if (g1 >= g2) {
            q = m;
            fq = fm.foot;
        } else {
            p = m;
            fp = fm.foot;
        }
        // A smooth nearest-point map halves the gap with the segment; a jump keeps it.
        shrinking = (next <= 0.6 * gap) ? shrinking + 1 : 0;
        gap = next;
        if (shrinking >= 5) return std::nullopt;
    }
    if (gap <= std::max(1e3 * stop, 10.0 * tol)) return std::nullopt;
    const Vec2 m = (p + q) * 0.5;
    const NearestSet ns = region.nearest_boundary_set(m, tol);
    if (ns.count() >= 2 || ns.continuum) return m;
    return std::nullopt;
}

}  // namespace

std::optional<Vec2> locate_crease(const Region& region, Vec2 a, Vec2 b, double tol) {
    if (!region.contains(a) || !region.contains(b)) {
        throw Error(ErrorCode::OutsideRegion, "crease segment endpoint outside S");
    }
    return locate_between(region, a, foot_at(region, a, tol), b, foot_at(region, b, tol), tol);
}

CreaseSet crease_sample(const Region& region, Rect window, double step, double tol) {
    if (!(step > 0.0)) throw Error(ErrorCode::InvalidArgument, "crease step must be > 0");
    if (window.empty()) throw Error(ErrorCode::EmptyWindow, "crease window is empty");
    CreaseSet out;
    out.window = window;
    out.step = step;
    const auto nx = static_cast<std::size_t>(std::floor((window.xmax - window.xmin) / step + 1e-9)) + 1;
    const auto ny = static_cast<std::size_t>(std::floor((window.ymax - window.ymin) / step + 1e-9)) + 1;
    std::vector<Vec2> pts(nx * ny);
    std::vector<char> inside(nx * ny, 0);
    std::vector<FootSample> feet(nx * ny);
    for (std::size_t j = 0; j < ny; ++j) {
        for (std::size_t i = 0; i < nx; ++i) {
            const std::size_t k = j * nx + i;
            pts[k] = {window.xmin + step * static_cast<double>(i), window.ymin + step * static_cast<double>(j)};
            inside[k] = region.contains(pts[k]) ? 1 : 0;
            if (inside[k]) {
                feet[k] = foot_at(region, pts[k], tol);
                if (feet[k].crease) out.samples.push_back(pts[k]);
            }
        }
    }
    auto edge = [&](std::size_t k0, std::size_t k1) {
        if (!inside[k0] || !inside[k1] || feet[k0].crease || feet[k1].crease) return;
        if (auto c = locate_between(region, pts[k0], feet[k0], pts[k1], feet[k1], tol)) {
            out.samples.push_back(*c);
        }
    };
    for (std::size_t j = 0; j < ny; ++j) {
        for (std::size_t i = 0; i < nx; ++i) {
            const std::size_t k = j * nx + i;
            if (i + 1 < nx) edge(k, k + 1);
            if (j + 1 < ny) edge(k, k + nx);
        }
    }
    return out;
}

}  // namespace chz
