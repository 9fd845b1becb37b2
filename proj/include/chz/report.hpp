#pragma once

#include <string>
#include <vector>

#include "chz/classify.hpp"
#include "chz/harness.hpp"
#include "chz/horizon.hpp"
#include "chz/region.hpp"

namespace chz {

/// %.17g, with "nan", "inf" and "-inf" spelled out.
std::string fmt(double v);

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    void add(std::vector<std::string> row);
    std::string str() const;
};

/// Grid of (x, y, height, multiplicity) over the window, endpoints included;
/// points outside S get height 0 and multiplicity 0.
CsvTable horizon_table(const Region& region, Rect window, int nx, int ny, double tol_near = kTolNear);
CsvTable generators_table(const std::vector<Generator>& gens);
CsvTable profile_table(const GeneratorProfile& profile);
CsvTable jump_attempts_table(const std::vector<JumpAttempt>& attempts);
CsvTable harness_table(const HarnessReport& report);
CsvTable harness_params_table(const HarnessParams& params);
CsvTable verdict_table(const Verdict& verdict);

/// Height contours of H+(S) over the window with crease samples overlaid.
std::string horizon_svg(const Region& region, Rect window, int nx, int ny, const CreaseSet& crease,
                        double tol_near = kTolNear);
/// Two panels: the slice R with theta, the crease points and the cone
/// slices phi_n; and the chord view of the last processed term.
std::string harness_svg(const HarnessReport& report);

void write_text(const std::string& path, const std::string& content);

}  // namespace chz
