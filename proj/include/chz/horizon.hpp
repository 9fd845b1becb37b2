#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "chz/minkowski.hpp"
#include "chz/region.hpp"

namespace chz {

/// Point (base, rho(base)) of the Cauchy horizon, the graph of rho over S.
struct HorizonPoint {
    Vec2 base;
    double height = 0.0;

    SpacetimePoint spacetime() const { return {base, height}; }
};

/// Number of generators through a horizon point.
struct Multiplicity {
    std::size_t value = 1;
    bool unbounded = false;

    static Multiplicity infinite() { return {0, true}; }
    bool at_least_two() const { return unbounded || value >= 2; }
    std::string str() const { return unbounded ? "unbounded" : std::to_string(value); }
    bool operator==(const Multiplicity&) const = default;
};

enum class DomainKind {
    HalfOpenAtFuture,  // [alpha, beta): the cut point belongs to the horizon
    Open,              // (alpha, beta): no future endpoint
};

const char* to_string(DomainKind kind);

/// Null generator lifted from a boundary footpoint along the inward normal.
/// Its point at parameter s >= 0 is (footpoint + s * normal, s).
struct Generator {
    Vec2 footpoint;
    Vec2 normal;     // inward unit normal at the footpoint
    Vec2 direction;  // from the cut base toward the footpoint, i.e. -normal
    double cut_parameter = 0.0;  // s*, +inf for open generators
    std::optional<HorizonPoint> cut_point;
    DomainKind domain_kind = DomainKind::HalfOpenAtFuture;
    Multiplicity cut_multiplicity;

    HorizonPoint at(double s) const { return {footpoint + normal * s, s}; }
    bool open() const { return domain_kind == DomainKind::Open; }
};

struct TraceOptions {
    double tol = 1e-10;         // bisection tolerance on the cut parameter
    double tol_near = kTolNear; // tie tolerance for nearest sets
    double foot_match = 1e-9;   // footpoint identity radius
    double max_extent = 1e6;    // open when valid beyond max_extent * scale
};

/// Closed form: p.x in S and p.t < rho(p.x).
bool in_development(const Region& region, const SpacetimePoint& p);

/// Definition-level check with past-directed causal curves: straight lines
/// in stratified directions (landing anywhere up to the cone rim), directions
/// refined toward the earliest exit from S, and random piecewise-linear
/// curves. Only S membership is consulted. One-sided: may answer true falsely.
bool development_oracle(const Region& region, const SpacetimePoint& p, int n_curves, std::uint64_t seed = 1);

HorizonPoint horizon_point(const Region& region, Vec2 x);

Generator trace_generator(const Region& region, Vec2 footpoint, const TraceOptions& opts = {});

Multiplicity generator_multiplicity(const Region& region, const HorizonPoint& p, double tol_near = kTolNear);

/// Generators traced from each nearest boundary point of p.base.
std::vector<Generator> generators_through(const Region& region, const HorizonPoint& p,
                                          const TraceOptions& opts = {});

}  // namespace chz
