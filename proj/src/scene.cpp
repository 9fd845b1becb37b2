#include "chz/scene.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

#include "chz/classify.hpp"
#include "chz/error.hpp"

namespace chz {

namespace {

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(trim(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(trim(cur));
    return out;
}

class LineParser {
public:
    LineParser(std::string source, int line) : source_(std::move(source)), line_(line) {}

    [[noreturn]] void fail(const std::string& msg) const {
        throw Error(ErrorCode::Parse, source_ + ":" + std::to_string(line_) + ": " + msg);
    }

    double number(const std::string& s) const {
        if (s.empty()) fail("empty number");
        errno = 0;
        char* end = nullptr;
        const double v = std::strtod(s.c_str(), &end);
        if (errno != 0 || end != s.c_str() + s.size() || !std::isfinite(v)) fail("bad number '" + s + "'");
        return v;
    }

    long integer(const std::string& s) const {
        const double v = number(s);
        if (v != std::floor(v) || std::fabs(v) > 9.0e15) fail("expected an integer, got '" + s + "'");
        return static_cast<long>(v);
    }

    std::vector<double> numbers(const std::string& s, std::size_t expect) const {
        std::vector<double> out;
        for (const auto& part : split(s, ',')) out.push_back(number(part));
        if (expect != 0 && out.size() != expect) {
            fail("expected " + std::to_string(expect) + " comma-separated numbers, got '" + s + "'");
        }
        return out;
    }

    Vec2 vec(const std::string& s) const {
        const auto v = numbers(s, 2);
        return {v[0], v[1]};
    }

    std::vector<std::vector<double>> tuples(const std::string& s, std::size_t expect) const {
        std::vector<std::vector<double>> out;
        for (const auto& part : split(s, ';')) {
            if (part.empty()) continue;
            out.push_back(numbers(part, expect));
        }
        if (out.empty()) fail("empty list");
        return out;
    }

private:
    std::string source_;
    int line_;
};

using Args = std::map<std::string, std::string>;

Args primitive_args(const LineParser& lp, const std::vector<std::string>& words) {
    Args args;
    for (std::size_t i = 1; i < words.size(); ++i) {
        if (words[i].empty()) continue;
        const auto eq = words[i].find('=');
        if (eq == std::string::npos) lp.fail("expected name=value, got '" + words[i] + "'");
        const std::string k = words[i].substr(0, eq);
        if (args.count(k)) lp.fail("duplicate parameter '" + k + "'");
        args[k] = words[i].substr(eq + 1);
    }
    return args;
}

const std::string& need(const LineParser& lp, Args& args, const std::string& key) {
    auto it = args.find(key);
    if (it == args.end()) lp.fail("missing parameter '" + key + "'");
    return it->second;
}

void reject_rest(const LineParser& lp, const Args& args, const std::vector<std::string>& known) {
    for (const auto& [k, v] : args) {
        bool ok = false;
        for (const auto& n : known) ok = ok || n == k;
        if (!ok) lp.fail("unknown parameter '" + k + "'");
    }
}

std::vector<Primitive> parse_primitive(const LineParser& lp, const std::string& value) {
    std::vector<std::string> words;
    std::istringstream in(value);
    for (std::string w; in >> w;) words.push_back(w);
    if (words.empty()) lp.fail("empty primitive");
    const std::string& type = words[0];
    Args a = primitive_args(lp, words);

    auto positive = [&](double v, const char* what) {
        if (!(v > 0.0)) lp.fail(std::string(what) + " must be positive");
        return v;
    };

    if (type == "half_plane") {
        reject_rest(lp, a, {"normal", "offset"});
        Vec2 n = lp.vec(need(lp, a, "normal"));
        const double len = norm(n);
        if (!(len > 0.0)) lp.fail("zero normal");
        return {HalfPlane{n / len, lp.number(need(lp, a, "offset")) / len}};
    }
    if (type == "slab") {
        // {|normal . x - center| < half_width}
        reject_rest(lp, a, {"normal", "center", "half_width"});
        Vec2 n = lp.vec(need(lp, a, "normal"));
        const double len = norm(n);
        if (!(len > 0.0)) lp.fail("zero normal");
        n = n / len;
        const double c = a.count("center") ? lp.number(a["center"]) : 0.0;
        const double h = positive(lp.number(need(lp, a, "half_width")), "half_width");
        return {HalfPlane{n, c - h}, HalfPlane{-n, -c - h}};
    }
    if (type == "disk" || type == "anti_disk") {
        reject_rest(lp, a, {"center", "radius"});
        const Vec2 c = lp.vec(need(lp, a, "center"));
        const double r = positive(lp.number(need(lp, a, "radius")), "radius");
        if (type == "disk") return {Disk{c, r}};
        return {AntiDisk{c, r}};
    }
    if (type == "ellipse") {
        reject_rest(lp, a, {"center", "a", "b"});
        const Vec2 c = a.count("center") ? lp.vec(a["center"]) : Vec2{};
        return {Ellipse{c, positive(lp.number(need(lp, a, "a")), "a"), positive(lp.number(need(lp, a, "b")), "b")}};
    }
    if (type == "polygon") {
        reject_rest(lp, a, {"vertices"});
        std::vector<Vec2> vs;
        for (const auto& t : lp.tuples(need(lp, a, "vertices"), 2)) vs.push_back({t[0], t[1]});
        std::vector<Primitive> out;
        try {
            for (const auto& h : polygon_half_planes(vs)) out.push_back(h);
        } catch (const Error& e) {
            lp.fail(e.what());
        }
        return out;
    }
    if (type == "bump_graph") {
        reject_rest(lp, a, {"level", "bumps"});
        std::vector<Bump> bumps;
        for (const auto& t : lp.tuples(need(lp, a, "bumps"), 3)) {
            bumps.push_back({t[0], positive(t[1], "bump half width"), t[2]});
        }
        try {
            return {BumpGraph(lp.number(need(lp, a, "level")), std::move(bumps))};
        } catch (const Error& e) {
            lp.fail(e.what());
        }
    }
    if (type == "jump_family") {
        reject_rest(lp, a, {"level", "dips", "width", "amplitude", "decay"});
        JumpFamily fam;
        fam.level = a.count("level") ? lp.number(a["level"]) : 0.0;
        fam.n_dips = static_cast<int>(lp.integer(need(lp, a, "dips")));
        if (fam.n_dips < 1 || fam.n_dips > 60) lp.fail("dips must be in [1, 60]");
        const double w = lp.number(need(lp, a, "width"));
        if (!(w > 0.0 && w < 1.0 / 3.0)) lp.fail("width must be in (0, 1/3)");
        const Region r = make_jump_region(fam, w, lp.number(need(lp, a, "amplitude")), lp.number(need(lp, a, "decay")));
        return r.primitives();
    }
    if (type == "disk_union") {
        reject_rest(lp, a, {"disks"});
        std::vector<Disk> disks;
        for (const auto& t : lp.tuples(need(lp, a, "disks"), 3)) {
            disks.push_back({{t[0], t[1]}, positive(t[2], "disk radius")});
        }
        return {DiskUnion(std::move(disks))};
    }
    lp.fail("unknown primitive type '" + type + "'");
}

}  // namespace

std::vector<HalfPlane> polygon_half_planes(const std::vector<Vec2>& vs) {
    if (vs.size() < 3) throw Error(ErrorCode::InvalidArgument, "polygon needs at least 3 vertices");
    double area = 0.0;
    for (std::size_t i = 0; i < vs.size(); ++i) area += cross(vs[i], vs[(i + 1) % vs.size()]);
    if (area == 0.0) throw Error(ErrorCode::InvalidArgument, "degenerate polygon");
    const double orient = area > 0.0 ? 1.0 : -1.0;
    std::vector<HalfPlane> out;
    for (std::size_t i = 0; i < vs.size(); ++i) {
        const Vec2 a = vs[i];
        const Vec2 b = vs[(i + 1) % vs.size()];
        const Vec2 e = b - a;
        if (norm(e) == 0.0) throw Error(ErrorCode::InvalidArgument, "repeated polygon vertex");
        const Vec2 n = normalized(perp(e)) * orient;  // inward for the orientation
        for (std::size_t j = 0; j < vs.size(); ++j) {
            if (dot(n, vs[j] - a) < -1e-12 * (1.0 + norm(vs[j]))) {
                throw Error(ErrorCode::InvalidArgument, "polygon is not convex");
            }
        }
        out.push_back({n, dot(n, a)});
    }
    return out;
}

Region Scene::region() const { return Region(primitives, name, scale); }

Scene parse_scene(const std::string& text, const std::string& source) {
    Scene sc;
    bool have_name = false;
    std::istringstream in(text);
    std::string raw;
    int line_no = 0;
    std::map<std::string, int> seen;
    while (std::getline(in, raw)) {
        ++line_no;
        const LineParser lp(source, line_no);
        const auto hash = raw.find('#');
        const std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) lp.fail("expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (value.empty()) lp.fail("empty value for '" + key + "'");
        if (key != "primitive" && key != "generator" && seen[key]++ > 0) lp.fail("duplicate key '" + key + "'");

        if (key == "name") {
            sc.name = value;
            have_name = true;
        } else if (key == "dimension") {
            sc.dimension = static_cast<int>(lp.integer(value));
            if (sc.dimension != 2) lp.fail("only dimension = 2 scenes are supported");
        } else if (key == "seed") {
            const long s = lp.integer(value);
            if (s < 0) lp.fail("seed must be non-negative");
            sc.seed = static_cast<std::uint64_t>(s);
        } else if (key == "scale") {
            sc.scale = lp.number(value);
            if (!(sc.scale > 0.0)) lp.fail("scale must be positive");
        } else if (key == "tol_near") {
            sc.tol_near = lp.number(value);
            if (!(sc.tol_near > 0.0)) lp.fail("tol_near must be positive");
        } else if (key == "window") {
            const auto w = lp.numbers(value, 4);
            sc.window = {w[0], w[1], w[2], w[3]};
            if (!(w[0] < w[1] && w[2] < w[3])) lp.fail("window needs xmin < xmax and ymin < ymax");
        } else if (key == "primitive") {
            for (auto& p : parse_primitive(lp, value)) sc.primitives.push_back(std::move(p));
        } else if (key == "generator") {
            sc.generators.push_back(lp.vec(value));
        } else if (key == "harness.footpoint") {
            sc.harness.present = true;
            sc.harness.footpoint = lp.vec(value);
        } else if (key == "harness.jump") {
            sc.harness.present = true;
            if (value != "auto") sc.harness.jump = lp.number(value);
        } else if (key == "harness.margins") {
            sc.harness.present = true;
            const auto m = lp.numbers(value, 3);
            sc.harness.margins = {m[0], m[1], m[2]};
        } else if (key == "harness.terms") {
            sc.harness.present = true;
            sc.harness.terms = static_cast<int>(lp.integer(value));
            if (sc.harness.terms < 1) lp.fail("harness.terms must be at least 1");
        } else if (key == "lmodel.center") {
            sc.lmodel.present = true;
            sc.lmodel.center = lp.vec(value);
        } else if (key == "lmodel.radius") {
            sc.lmodel.present = true;
            sc.lmodel.radius = lp.number(value);
            if (!(sc.lmodel.radius > 0.0)) lp.fail("lmodel.radius must be positive");
        } else if (key == "lmodel.plane_time") {
            sc.lmodel.present = true;
            sc.lmodel.plane_time = lp.number(value);
        } else {
            lp.fail("unknown key '" + key + "'");
        }
    }
    if (!have_name) throw Error(ErrorCode::Parse, source + ": missing 'name'");
    if (sc.primitives.empty()) throw Error(ErrorCode::Parse, source + ": no primitives");
    if (sc.harness.present && !sc.harness.footpoint) {
        throw Error(ErrorCode::Parse, source + ": harness block needs harness.footpoint");
    }
    if (sc.harness.present && !(sc.harness.margins.m_f > 0.0)) {
        throw Error(ErrorCode::Parse, source + ": harness block needs harness.margins");
    }
    if (sc.lmodel.present && !(sc.lmodel.plane_time >= 0.0)) {
        throw Error(ErrorCode::Parse, source + ": lmodel.plane_time must be non-negative");
    }
    return sc;
}

Scene load_scene(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw Error(ErrorCode::Parse, "cannot open scene file " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return parse_scene(ss.str(), path);
}

std::string format_primitive(const Primitive& p) {
    std::string out;
    std::visit(
        [&](const auto& q) {
            using T = std::decay_t<decltype(q)>;
            if constexpr (std::is_same_v<T, HalfPlane>) {
                out = "half_plane normal=" + num(q.normal.x) + "," + num(q.normal.y) + " offset=" + num(q.offset);
            } else if constexpr (std::is_same_v<T, Disk> || std::is_same_v<T, AntiDisk>) {
                out = std::string(std::is_same_v<T, Disk> ? "disk" : "anti_disk") + " center=" + num(q.center.x) +
                      "," + num(q.center.y) + " radius=" + num(q.radius);
            } else if constexpr (std::is_same_v<T, Ellipse>) {
                out = "ellipse center=" + num(q.center.x) + "," + num(q.center.y) + " a=" + num(q.a) +
                      " b=" + num(q.b);
            } else if constexpr (std::is_same_v<T, BumpGraph>) {
                out = "bump_graph level=" + num(q.level()) + " bumps=";
                for (std::size_t i = 0; i < q.bumps().size(); ++i) {
                    const Bump& b = q.bumps()[i];
                    if (i) out += ";";
                    out += num(b.center) + "," + num(b.half_width) + "," + num(b.depth);
                }
            } else {
                out = "disk_union disks=";
                for (std::size_t i = 0; i < q.disks().size(); ++i) {
                    const Disk& d = q.disks()[i];
                    if (i) out += ";";
                    out += num(d.center.x) + "," + num(d.center.y) + "," + num(d.radius);
                }
            }
        },
        p);
    return out;
}

std::string format_scene(const Scene& sc) {
    std::ostringstream o;
    o << "name = " << sc.name << "\n";
    o << "dimension = " << sc.dimension << "\n";
    o << "seed = " << sc.seed << "\n";
    o << "scale = " << num(sc.scale) << "\n";
    o << "tol_near = " << num(sc.tol_near) << "\n";
    o << "window = " << num(sc.window.xmin) << "," << num(sc.window.xmax) << "," << num(sc.window.ymin) << ","
      << num(sc.window.ymax) << "\n";
    for (const auto& p : sc.primitives) o << "primitive = " << format_primitive(p) << "\n";
    for (const auto& g : sc.generators) o << "generator = " << num(g.x) << "," << num(g.y) << "\n";
    if (sc.harness.present) {
        o << "harness.footpoint = " << num(sc.harness.footpoint->x) << "," << num(sc.harness.footpoint->y) << "\n";
        o << "harness.jump = " << (sc.harness.jump ? num(*sc.harness.jump) : std::string("auto")) << "\n";
        o << "harness.margins = " << num(sc.harness.margins.m_f) << "," << num(sc.harness.margins.m_p) << ","
          << num(sc.harness.margins.m_minus) << "\n";
        o << "harness.terms = " << sc.harness.terms << "\n";
    }
    if (sc.lmodel.present) {
        o << "lmodel.center = " << num(sc.lmodel.center.x) << "," << num(sc.lmodel.center.y) << "\n";
        o << "lmodel.radius = " << num(sc.lmodel.radius) << "\n";
        o << "lmodel.plane_time = " << num(sc.lmodel.plane_time) << "\n";
    }
    return o.str();
}

namespace {

const char* const kCorpus[] = {
    R"(name = half_plane
scale = 1
window = -2,2,0,4
primitive = half_plane normal=0,1 offset=0
generator = 0,0
lmodel.center = 0,2
lmodel.radius = 0.3
lmodel.plane_time = 1
)",
    R"(name = slab
scale = 1
window = -2,2,-1,1
primitive = slab normal=0,1 half_width=1
generator = 0,1
generator = 0,-1
generator = 3,1
)",
    R"(name = disk
scale = 1
window = -1,1,-1,1
primitive = disk center=0,0 radius=1
generator = 1,0
generator = 0,1
generator = -0.6,-0.8
harness.footpoint = 1,0
harness.jump = 0.5
harness.margins = 0.3,0.1,0.1
harness.terms = 10
lmodel.center = 0.5,0
lmodel.radius = 0.1
lmodel.plane_time = 0
)",
    R"(name = two_disks
scale = 1
window = -4,4,-3,3
primitive = anti_disk center=-2,0 radius=1
primitive = anti_disk center=2,0 radius=1
generator = 1,0
generator = -1,0
generator = -2,1
harness.footpoint = 1.1339745962155614,0.5
harness.jump = 0.15
harness.margins = 0.1,0.05,0.1
harness.terms = 10
)",
    R"(name = two_disk_union
scale = 1
window = -3,3,-1,1
primitive = disk_union disks=-2,0,1;2,0,1
generator = 1,0
generator = -3,0
)",
    R"(name = ellipse
scale = 1
window = -2,2,-1,1
primitive = ellipse center=0,0 a=2 b=1
generator = 2,0
generator = 0,1
generator = -2,0
)",
    R"(name = jump
scale = 0.1
tol_near = 1e-16
window = -0.1,0.6,-0.3,0
primitive = jump_family level=0 dips=22 width=0.3 amplitude=0.5 decay=1
generator = 0,0
harness.footpoint = 0,0
harness.jump = auto
harness.margins = 0.05,0.02,0.02
harness.terms = 12
)",
};

}  // namespace

std::vector<Scene> builtin_corpus() {
    std::vector<Scene> out;
    for (const char* text : kCorpus) {
        Scene s = parse_scene(text, "<builtin>");
        out.push_back(std::move(s));
    }
    return out;
}

Scene builtin_scene(const std::string& name) {
    for (const char* text : kCorpus) {
        Scene s = parse_scene(text, "<builtin>");
        if (s.name == name) return s;
    }
    throw Error(ErrorCode::InvalidArgument, "no built-in scene named '" + name + "'");
}

}  // namespace chz
