#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "chz/scene.hpp"

namespace chz {

struct AcceptanceOptions {
    std::uint64_t seed = 1;
    int eikonal_pairs = 10000;
    int horizon_points = 1500;
    int development_points = 1000;
    int development_curves = 200;
    int curvature_pairs = 100;
    int jump_budget = 24;
};

struct CriterionResult {
    int id = 0;
    std::string title;
    bool pass = false;
    std::string detail;

    std::string line() const;  // "PASS  3  generator structure: ..."
};

struct AcceptanceRun {
    std::vector<CriterionResult> criteria;
    std::vector<std::pair<std::string, std::string>> csv;  // file name, contents

    bool pass() const;
};

/// Criteria 1 to 7 over the given corpus.
AcceptanceRun run_criteria(const std::vector<Scene>& corpus, const AcceptanceOptions& opts);

/// Criteria 1 to 7 twice over the bundled corpus, plus criterion 8 comparing
/// the CSV output of both runs byte for byte.
AcceptanceRun run_acceptance(const AcceptanceOptions& opts);

}  // namespace chz
