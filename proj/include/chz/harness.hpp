#pragma once

#include <optional>
#include <string>
#include <vector>

#include "chz/horizon.hpp"
#include "chz/region.hpp"

namespace chz {

/// Distances from the jump along the generator: the future points sit at
/// u0 - m_f and u0 - m_p, the past point at u0 + m_minus.
struct Margins {
    double m_f = 0.0;
    double m_p = 0.0;
    double m_minus = 0.0;
};

struct HarnessParams {
    Generator generator;
    double range = 0.0;  // u = range - s along the generator
    double jump = 0.0;
    double u_f = 0.0;
    double u_p = 0.0;
    double u_minus = 0.0;
    HorizonPoint gamma_f;
    HorizonPoint gamma_p;
    HorizonPoint gamma_minus;
    double time_R = 0.0;  // slice plane R = {t = time_R} through gamma_minus
    double kappa_f = 0.0;
    double kappa_p = 0.0;
    double kappa = 0.0;
    Vec2 anchor;
    int n_terms = 10;
    double tol_near = kTolNear;
};

HarnessParams select_params(const Region& region, const Generator& gen, double jump, const Margins& margins,
                            int n_terms = 10, double tol_near = kTolNear);

struct HarnessTerm {
    int n = 0;
    double window = 0.0;      // crease window radius around gamma_p's base
    double resolution = 0.0;  // crease grid step
    bool found = false;       // a crease point q_n was found
    HorizonPoint q;
    std::size_t q_multiplicity = 0;
    Vec2 foot1;
    Vec2 foot2;
    Vec2 p1;
    Vec2 p2;
    double chord = 0.0;
    bool anchor_perturbed = false;
    double plane_angle = 0.0;  // angle between P_n and the limit plane; 0 for d = 2
    bool theta_ok = false;
    double tangency_res1 = 0.0;
    double tangency_res2 = 0.0;
    double tangency_tol = 0.0;
    Vec2 r;
    double t_star = 0.0;
    double kappa_theta = 0.0;  // two-sided tangent-circle estimate at r_n
    double kappa_theta_formal = 0.0;
    double kappa_n = 0.0;
    bool comparison_ok = false;
    bool kappa_converges = false;  // |1/kappa_n - 1/kappa_p| <= 2 * resolution
    std::string note;
};

struct HarnessReport {
    HarnessParams params;
    std::vector<HarnessTerm> terms;
    bool exhausted = false;  // ran out of crease points before n_terms
    std::vector<Vec2> theta_samples;

    std::size_t processed() const;
};

HarnessReport run_harness(const Region& region, const HarnessParams& params);

struct Verdict {
    bool liminf_ok = false;        // (i)
    double liminf = 0.0;
    double liminf_tol = 0.0;
    bool non_stabilization = false;  // (ii)
    std::vector<double> left_estimates;
    std::vector<double> right_estimates;
    bool achronal = false;         // (iii)
    std::size_t theta_checked = 0;
    std::vector<std::string> failures;

    bool pass() const { return failures.empty(); }
};

Verdict contradiction_summary(const Region& region, const HarnessReport& report);

/// Non-C2 test on a list of curvature estimates ordered by decreasing step:
/// stable when the last three agree within rel_tol; a non-finite estimate is never stable.
bool estimates_stabilize(const std::vector<double>& est, double rel_tol = 1e-2);

/// Union of the disks I^-(q) cut at t = plane_time_F, for q on a grid of
/// spacing radius_U / 50 in the ball.
Region lmodel_reconstruct(const Region& region, const HorizonPoint& center, double radius_U, double plane_time_F,
                          double spacing = 0.0);

/// Max height gap between H and the horizon of the reconstruction (shifted by
/// plane_time_F) on a grid offset by half a cell inside the ball.
double lmodel_verify(const Region& original, const Region& reconstructed, const HorizonPoint& center,
                     double radius_U, double grid, double plane_time_F);

/// Keeps only the disks centered in the half-plane behind `center` along
/// `direction` (pass the gradient of rho to drop the upslope half); negative control.
Region lmodel_drop_half(const Region& reconstructed, Vec2 center, Vec2 direction);

}  // namespace chz
