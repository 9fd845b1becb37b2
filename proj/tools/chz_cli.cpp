// chz: batch front end over scene files.
//
// Exit codes: 0 success, 1 failed assertion or runtime error, 2 bad
// command line or scene parse error.
#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "chz/acceptance.hpp"
#include "chz/classify.hpp"
#include "chz/error.hpp"
#include "chz/harness.hpp"
#include "chz/horizon.hpp"
#include "chz/pipeline.hpp"
#include "chz/report.hpp"
#include "chz/scene.hpp"

namespace fs = std::filesystem;

namespace {

struct SceneArgs {
    std::string file;
    std::string builtin;
    std::string out = ".";

    chz::Scene load() const {
        if (!file.empty() && !builtin.empty()) {
            throw chz::Error(chz::ErrorCode::Parse, "give either a scene file or --builtin, not both");
        }
        if (!builtin.empty()) return chz::builtin_scene(builtin);
        if (file.empty()) throw chz::Error(chz::ErrorCode::Parse, "no scene given (file or --builtin)");
        return chz::load_scene(file);
    }

    std::string path(const std::string& name) const {
        fs::create_directories(out);
        return (fs::path(out) / name).string();
    }
};

void add_scene_args(CLI::App* cmd, SceneArgs& a) {
    cmd->add_option("scene", a.file, "scene file");
    cmd->add_option("--builtin", a.builtin, "bundled corpus scene by name");
    cmd->add_option("--out", a.out, "output directory")->capture_default_str();
}

void emit(const SceneArgs& a, const std::string& name, const std::string& text) {
    chz::write_text(a.path(name), text);
    std::cout << "wrote " << a.path(name) << "\n";
}

int cmd_horizon(const SceneArgs& a, int nx, int ny) {
    const chz::Scene sc = a.load();
    const chz::Region region = sc.region();
    emit(a, "horizon.csv", chz::horizon_table(region, sc.window, nx, ny, sc.tol_near).str());
    const double step = std::max(sc.window.xmax - sc.window.xmin, sc.window.ymax - sc.window.ymin) / 100.0;
    const chz::CreaseSet cs = chz::crease_sample(region, sc.window, step, sc.tol_near);
    emit(a, "horizon.svg", chz::horizon_svg(region, sc.window, nx, ny, cs, sc.tol_near));
    return 0;
}

std::vector<chz::Vec2> footpoints(const chz::Scene& sc, const std::vector<std::vector<double>>& from) {
    if (from.empty()) return sc.generators;
    std::vector<chz::Vec2> out;
    for (const auto& f : from) out.push_back({f.at(0), f.at(1)});
    return out;
}

int cmd_generators(const SceneArgs& a, const std::vector<std::vector<double>>& from) {
    const chz::Scene sc = a.load();
    const chz::Region region = sc.region();
    std::vector<chz::Generator> gens;
    for (const chz::Vec2& f : footpoints(sc, from)) gens.push_back(chz::trace_generator(region, f, chz::trace_options(sc)));
    emit(a, "generators.csv", chz::generators_table(gens).str());
    return 0;
}

int cmd_classify(const SceneArgs& a, const std::vector<std::vector<double>>& from, int samples) {
    const chz::Scene sc = a.load();
    const chz::Region region = sc.region();
    chz::CsvTable summary{{"index", "footpoint_x", "footpoint_y", "cut_multiplicity", "jump_u", "structure_pass",
                           "violations"},
                          {}};
    bool ok = true;
    int i = 0;
    for (const chz::Vec2& f : footpoints(sc, from)) {
        const chz::Generator gen = chz::trace_generator(region, f, chz::trace_options(sc));
        const chz::GeneratorProfile prof = chz::classify_generator(region, gen, samples, chz::classify_options(sc));
        const chz::StructureReport rep = chz::verify_structure(prof);
        ok = ok && rep.pass();
        std::string viol;
        for (const auto& v : rep.violations) viol += (viol.empty() ? "" : "; ") + v;
        summary.add({std::to_string(i), chz::fmt(f.x), chz::fmt(f.y), gen.cut_multiplicity.str(),
                     prof.jump ? chz::fmt(*prof.jump) : "", rep.pass() ? "1" : "0", viol});
        emit(a, "profile_" + std::to_string(i) + ".csv", chz::profile_table(prof).str());
        ++i;
    }
    emit(a, "classify_summary.csv", summary.str());
    return ok ? 0 : 1;
}

int cmd_jump_search(const SceneArgs& a, int budget) {
    const chz::JumpFamily fam;
    try {
        const chz::JumpSearchResult res = chz::search_jump_scene(fam, budget);
        const chz::JumpAttempt& win = res.attempts.back();
        char prim[256];
        std::snprintf(prim, sizeof prim, "jump_family level=%.17g dips=%d width=%.17g amplitude=%.17g decay=%.17g",
                      fam.level, fam.n_dips, win.width_factor, win.amplitude, win.decay);
        char head[256];
        std::snprintf(head, sizeof head, "name = jump\nscale = %.17g\ntol_near = %.17g\n", fam.scale, fam.tol_near);
        const std::string text = std::string(head) + "primitive = " + prim + "\ngenerator = 0," + chz::fmt(fam.level) +
                                 "\nharness.footpoint = 0," + chz::fmt(fam.level) +
                                 "\nharness.jump = auto\nharness.margins = 0.05,0.02,0.02\nharness.terms = 12\n";
        const chz::Scene sc = chz::parse_scene(text, "jump-search");
        emit(a, "jump.scene", chz::format_scene(sc));
        emit(a, "jump_attempts.csv", chz::jump_attempts_table(res.attempts).str());
        emit(a, "jump_profile.csv", chz::profile_table(res.profile).str());
        std::cout << "jump at u0 = " << chz::fmt(*res.profile.jump) << " after " << res.attempts.size()
                  << " attempts\n";
        return 0;
    } catch (const chz::JumpSearchError& e) {
        emit(a, "jump_attempts.csv", chz::jump_attempts_table(e.attempts()).str());
        throw;
    }
}

int cmd_harness(const SceneArgs& a) {
    const chz::Scene sc = a.load();
    const chz::HarnessRun run = chz::run_scene_harness(sc);
    if (run.profile) emit(a, "harness_profile.csv", chz::profile_table(*run.profile).str());
    emit(a, "harness_params.csv", chz::harness_params_table(run.params).str());
    emit(a, "harness.csv", chz::harness_table(run.report).str());
    emit(a, "harness_verdict.csv", chz::verdict_table(run.verdict).str());
    emit(a, "harness.svg", chz::harness_svg(run.report));
    std::cout << "verdict: " << (run.verdict.pass() ? "pass" : "fail") << "\n";
    return 0;
}

int cmd_lmodel(const SceneArgs& a) {
    const chz::Scene sc = a.load();
    const chz::LmodelRun lm = chz::run_scene_lmodel(sc);
    chz::CsvTable t{{"key", "value"}, {}};
    t.add({"center_x", chz::fmt(lm.center.base.x)});
    t.add({"center_y", chz::fmt(lm.center.base.y)});
    t.add({"center_t", chz::fmt(lm.center.height)});
    t.add({"radius_U", chz::fmt(lm.radius)});
    t.add({"plane_time", chz::fmt(lm.plane_time)});
    t.add({"spacing", chz::fmt(lm.spacing)});
    t.add({"disks", std::to_string(lm.disks)});
    t.add({"gap", chz::fmt(lm.gap)});
    t.add({"bound", chz::fmt(lm.bound)});
    t.add({"control_gap", chz::fmt(lm.control_gap)});
    t.add({"pass", lm.pass() ? "1" : "0"});
    emit(a, "lmodel.csv", t.str());
    std::cout << "gap " << chz::fmt(lm.gap) << " (bound " << chz::fmt(lm.bound) << "), control "
              << chz::fmt(lm.control_gap) << "\n";
    return lm.pass() ? 0 : 1;
}

int cmd_verify(const std::string& out, std::uint64_t seed) {
    chz::AcceptanceOptions opts;
    opts.seed = seed;
    const chz::AcceptanceRun run = chz::run_acceptance(opts);
    for (const auto& c : run.criteria) std::cout << c.line() << "\n";
    if (!out.empty()) {
        fs::create_directories(out);
        for (const auto& [name, text] : run.csv) chz::write_text((fs::path(out) / name).string(), text);
    }
    std::cout << (run.pass() ? "ALL PASS" : "FAILED") << "\n";
    return run.pass() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Cauchy horizons of planar regions in 2+1 Minkowski space"};
    app.require_subcommand(1);

    SceneArgs args;
    int nx = 101, ny = 101, samples = 24, budget = 24;
    std::vector<std::vector<double>> from;
    std::uint64_t seed = 1;
    std::string verify_out;

    auto* horizon = app.add_subcommand("horizon", "sample rho over the scene window: CSV and SVG contours");
    add_scene_args(horizon, args);
    horizon->add_option("--nx", nx, "grid columns")->capture_default_str()->check(CLI::Range(2, 100000));
    horizon->add_option("--ny", ny, "grid rows")->capture_default_str()->check(CLI::Range(2, 100000));

    auto* generators = app.add_subcommand("generators", "trace generators from the scene footpoints");
    add_scene_args(generators, args);
    generators->add_option("--from", from, "footpoint x y (repeatable), replaces the scene list")->expected(2);

    auto* classify = app.add_subcommand("classify", "differentiability profiles along generators");
    add_scene_args(classify, args);
    classify->add_option("--from", from, "footpoint x y (repeatable), replaces the scene list")->expected(2);
    classify->add_option("--samples", samples, "samples per generator")->capture_default_str()->check(
        CLI::Range(2, 10000));

    auto* jump = app.add_subcommand("jump-search", "tune the dip family until a jump appears");
    jump->add_option("--budget", budget, "family members to try")->capture_default_str()->check(CLI::Range(1, 1000));
    jump->add_option("--out", args.out, "output directory")->capture_default_str();

    auto* harness = app.add_subcommand("harness", "run the curvature-comparison harness of the scene");
    add_scene_args(harness, args);

    auto* lmodel = app.add_subcommand("lmodel", "local disk-union reconstruction gap");
    add_scene_args(lmodel, args);

    auto* verify = app.add_subcommand("verify", "run the acceptance criteria on the bundled corpus");
    verify->add_option("--seed", seed, "RNG seed")->capture_default_str();
    verify->add_option("--out", verify_out, "directory for the CSV tables");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*horizon) return cmd_horizon(args, nx, ny);
        if (*generators) return cmd_generators(args, from);
        if (*classify) return cmd_classify(args, from, samples);
        if (*jump) return cmd_jump_search(args, budget);
        if (*harness) return cmd_harness(args);
        if (*lmodel) return cmd_lmodel(args);
        if (*verify) return cmd_verify(verify_out, seed);
    } catch (const chz::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.code() == chz::ErrorCode::Parse ? 2 : 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
