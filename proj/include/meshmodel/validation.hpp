#ifndef MESHMODEL_VALIDATION_HPP
#define MESHMODEL_VALIDATION_HPP

#include <string>
#include <vector>

#include "meshmodel/reliability.hpp"

namespace meshmodel::validation {

struct SuiteReport {
    std::string name;
    int cases = 0;
    double max_error = 0.0;
    double tolerance = 0.0;
    bool pass = false;
    std::string worst_case;
};

/// Closed-form tau / b000 / idle against the explicit stationary solve over
/// the full parameter grid (both fed the rounded dwell times).
SuiteReport run_chain_suite();

/// Total stationary mass of the closed-form distribution against 1, over the
/// same grid, with the production (real-valued) dwell times.
SuiteReport run_chain_normalization_suite();

/// Product-form some_sending against the literal power-set sum on random
/// (tau, alpha) vectors.
SuiteReport run_powerset_suite();

/// Matrix-power link reliability against exhaustive path enumeration on
/// randomized collision breakdowns; also checks row stochasticity.
SuiteReport run_retrans_suite();

std::vector<SuiteReport> run_suites(const std::string& which);  // chain|powerset|retrans|all

/// Absorption probability into succ from (0,0) within `steps` steps, summed
/// path by path. Exponential in steps; test-scale inputs only.
double retrans_success_by_enumeration(const RetransChain& chain, int steps);

}  // namespace meshmodel::validation

#endif
