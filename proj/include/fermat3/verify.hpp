#pragma once

#include "fermat3/workspace.hpp"

#include <string>
#include <vector>

namespace fermat3 {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    double seconds = 0;
    double budget = 0; // stated runtime budget, seconds (0 = none)
    std::string detail;
    bool within_budget() const { return budget == 0 || seconds < budget; }
};

// The acceptance suite; one entry per criterion, in order. "full" additionally
// runs the extended property sweeps (class-group laws for d <= 500, the
// ring-class-polynomial stability sweep).
std::vector<CriterionResult> run_acceptance(Workspace& ws, bool full);

std::string acceptance_json(const std::vector<CriterionResult>& rs);
// one pass/fail line per criterion
std::string acceptance_text(const std::vector<CriterionResult>& rs);

// paper fixtures used by the suite and the tests
const DensePoly& fixture_pd(long d);   // d in {23,44,59,83,92,104,107,419}
const DensePoly& fixture_qd(long d);   // the eleven printed q_d
std::vector<long> props73_74_list();   // all discriminants of Props 7.3-7.4

} // namespace fermat3
