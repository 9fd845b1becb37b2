#include "chz/pipeline.hpp"

#include "chz/error.hpp"

namespace chz {

TraceOptions trace_options(const Scene& scene) {
    TraceOptions t;
    t.tol_near = scene.tol_near;
    return t;
}

ClassifyOptions classify_options(const Scene& scene) {
    ClassifyOptions c;
    c.tol_near = scene.tol_near;
    return c;
}

namespace {

HarnessRun finish(const Scene& scene, const Region& region, const Generator& gen, double jump) {
    const Margins& m = scene.harness.margins;
    const Margins abs{m.m_f * scene.scale, m.m_p * scene.scale, m.m_minus * scene.scale};
    HarnessRun run;
    run.params = select_params(region, gen, jump, abs, scene.harness.terms, scene.tol_near);
    run.report = run_harness(region, run.params);
    run.verdict = contradiction_summary(region, run.report);
    return run;
}

}  // namespace

HarnessRun run_scene_harness(const Scene& scene, int n_samples) {
    if (!scene.harness.present) throw Error(ErrorCode::InvalidArgument, "scene has no harness block");
    const Region region = scene.region();
    const Generator gen = trace_generator(region, *scene.harness.footpoint, trace_options(scene));
    if (scene.harness.jump) return finish(scene, region, gen, *scene.harness.jump);
    GeneratorProfile prof = classify_generator(region, gen, n_samples, classify_options(scene));
    if (!prof.jump) throw Error(ErrorCode::PreconditionFailed, "profile shows no interior jump");
    prof.jump = locate_jump(prof, 12);
    HarnessRun run = finish(scene, region, gen, *prof.jump);
    run.profile = std::move(prof);
    return run;
}

HarnessRun run_scene_harness(const Scene& scene, const Region& region, const GeneratorProfile& profile) {
    if (!scene.harness.present) throw Error(ErrorCode::InvalidArgument, "scene has no harness block");
    if (!profile.jump) throw Error(ErrorCode::PreconditionFailed, "profile shows no interior jump");
    HarnessRun run = finish(scene, region, profile.generator, *profile.jump);
    run.profile = profile;
    return run;
}

LmodelRun run_scene_lmodel(const Scene& scene) {
    if (!scene.lmodel.present) throw Error(ErrorCode::InvalidArgument, "scene has no lmodel block");
    const Region region = scene.region();
    LmodelRun run;
    run.center = horizon_point(region, scene.lmodel.center);
    run.radius = scene.lmodel.radius;
    run.plane_time = scene.lmodel.plane_time;
    run.spacing = run.radius / 50.0;
    run.bound = 2.0 * run.spacing;
    const Region rec = lmodel_reconstruct(region, run.center, run.radius, run.plane_time, run.spacing);
    run.disks = std::get<DiskUnion>(rec.primitives().front()).disks().size();
    run.gap = lmodel_verify(region, rec, run.center, run.radius, run.spacing, run.plane_time);
    const Region half = lmodel_drop_half(rec, run.center.base, region.gradient(run.center.base, scene.tol_near));
    run.control_gap = lmodel_verify(region, half, run.center, run.radius, run.spacing, run.plane_time);
    return run;
}

}  // namespace chz
