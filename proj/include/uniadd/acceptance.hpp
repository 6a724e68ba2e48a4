#pragma once

#include <string>
#include <utility>
#include <vector>

#include "uniadd/classifier.hpp"
#include "uniadd/polynomial.hpp"

namespace uniadd {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0;
};

struct AcceptanceOptions {
    int threads = 1;
};

// The fixed polynomial/policy catalog the acceptance criteria quantify over.
const std::vector<std::pair<std::string, Polynomial>>& acceptance_catalog();
const std::vector<ExtensionPolicy>& acceptance_policies();

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options);

}  // namespace uniadd
