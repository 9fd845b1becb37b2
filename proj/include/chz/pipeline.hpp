#pragma once

#include <optional>

#include "chz/classify.hpp"
#include "chz/harness.hpp"
#include "chz/horizon.hpp"
#include "chz/scene.hpp"

namespace chz {

TraceOptions trace_options(const Scene& scene);
ClassifyOptions classify_options(const Scene& scene);

struct HarnessRun {
    std::optional<GeneratorProfile> profile;  // set when the jump was located here
    HarnessParams params;
    HarnessReport report;
    Verdict verdict;
};

/// Harness block of a scene: traces the generator, locates the jump when it
/// is "auto", scales the margins by the scene scale and runs the harness.
HarnessRun run_scene_harness(const Scene& scene, int n_samples = 24);
/// Same, with a profile (and its jump) computed elsewhere.
HarnessRun run_scene_harness(const Scene& scene, const Region& region, const GeneratorProfile& profile);

struct LmodelRun {
    HorizonPoint center;
    double radius = 0.0;
    double plane_time = 0.0;
    double spacing = 0.0;
    std::size_t disks = 0;
    double gap = 0.0;
    double bound = 0.0;        // 2 * spacing
    double control_gap = 0.0;  // upslope half of the disks dropped

    bool pass() const { return gap <= bound && control_gap > bound; }
};

LmodelRun run_scene_lmodel(const Scene& scene);

}  // namespace chz
