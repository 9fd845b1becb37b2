#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "chz/error.hpp"
#include "chz/horizon.hpp"
#include "chz/region.hpp"

namespace chz {

enum class DiffLabel {
    NotDifferentiable,
    DifferentiableOnly,
    C1NotC2,
    C2Plus,
};

const char* to_string(DiffLabel label);
std::optional<DiffLabel> parse_label(const std::string& s);

struct ClassifyOptions {
    std::vector<double> probe_radii;  // decreasing; empty selects default_probe_radii
    double tol_near = kTolNear;
    double hessian_threshold = 0.1;
    /// Hessian oscillation shrinking by at least this factor between the two
    /// smallest crease-free radii counts as convergence.
    double hessian_decay = 0.3;
    int rings = 3;
    int probes_per_ring = 12;
};

/// 1e-2 .. 1e-5 times the scene scale.
std::vector<double> default_probe_radii(const Region& region);

struct DiffClass {
    DiffLabel label = DiffLabel::C2Plus;
    Multiplicity multiplicity;
    std::vector<double> radii;
    std::vector<double> omega;        // max pairwise gradient angle per radius
    std::vector<double> hessian_osc;  // NaN where the ball holds a crease
    std::vector<char> crease_in_ball;
    double crease_distance = 0.0;     // to the closest crease found, +inf if none
};

DiffClass classify_point(const Region& region, const HorizonPoint& p, const ClassifyOptions& opts = {});

struct ProfileSample {
    double u = 0.0;  // distance from the cut point toward the footpoint
    HorizonPoint point;
    DiffClass cls;
};

struct GeneratorProfile {
    Generator generator;
    double range = 0.0;  // s* or, for open generators, a virtual range
    std::vector<ProfileSample> samples;  // ascending u; samples[0] is the cut
    std::optional<double> jump;
    std::shared_ptr<const Region> region;
    ClassifyOptions options;

    HorizonPoint point_at(double u) const { return generator.at(range - u); }
};

GeneratorProfile classify_generator(const Region& region, const Generator& gen, int n_samples,
                                    const ClassifyOptions& opts = {});

std::optional<double> locate_jump(const GeneratorProfile& profile, int refine_steps);

struct StructureReport {
    bool monotone = true;
    bool k_equals_one = true;
    bool k_clause_active = false;
    bool endpoint_rule = true;
    bool corollary = true;
    std::vector<std::string> violations;

    bool pass() const { return violations.empty(); }
};

StructureReport verify_structure(const GeneratorProfile& profile);

/// Bump family {y < B(x)}, B = level - sum depth_k phi((x - x_k)/w_k) with
/// x_k = 2^-k, w_k = width_factor * 2^-k, depth_k = eps_k * 2^-k and
/// eps_k = amplitude * 2^(-decay * k).
struct JumpFamily {
    double level = 0.0;
    int n_dips = 22;
    std::vector<double> width_factors{0.3, 0.25};
    std::vector<double> amplitudes{0.0, 0.5, 0.25};
    std::vector<double> decays{0.0, 0.5, 1.0, 1.5};
    double tol_near = 1e-16;
    double scale = 0.1;
    int n_samples = 24;
};

Region make_jump_region(const JumpFamily& family, double width_factor, double amplitude, double decay);

struct JumpAttempt {
    double width_factor = 0.0;
    double amplitude = 0.0;
    double decay = 0.0;
    std::size_t not_diff = 0;
    std::size_t diff_only = 0;
    std::size_t c1 = 0;
    std::size_t c2 = 0;
    std::optional<double> jump;
    bool pass = false;
};

struct JumpSearchResult {
    Region region;
    GeneratorProfile profile;
    StructureReport structure;
    std::vector<JumpAttempt> attempts;
};

/// Raised when the budget runs out; carries the attempts made.
class JumpSearchError : public Error {
public:
    JumpSearchError(const std::string& what, std::vector<JumpAttempt> attempts)
        : Error(ErrorCode::NoSceneFound, what), attempts_(std::move(attempts)) {}
    const std::vector<JumpAttempt>& attempts() const { return attempts_; }

private:
    std::vector<JumpAttempt> attempts_;
};

/// Tries family members in order until a generator from (0, level) shows an
/// interior jump with a passing structure report. Throws JumpSearchError.
JumpSearchResult search_jump_scene(const JumpFamily& family, int budget);

}  // namespace chz
