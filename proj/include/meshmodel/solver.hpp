#ifndef MESHMODEL_SOLVER_HPP
#define MESHMODEL_SOLVER_HPP

#include <functional>
#include <vector>

#include "meshmodel/model_config.hpp"
#include "meshmodel/neighborhood.hpp"
#include "meshmodel/reliability.hpp"
#include "meshmodel/topology.hpp"

namespace meshmodel {

struct SolverConfig {
    double damping = 0.5;  // Picard relaxation factor, in (0, 1]
    double tol = 1e-9;     // max-norm residual threshold
    int max_iter = 10000;
    double init_r = 1.0;
    double init_alpha = 0.0;
    double init_tau = 0.0;
    double init_pnoack = 0.0;
    std::function<void(int, double)> on_iteration;  // optional trace hook

    void validate() const;
};

/// The per-link unknowns of the fixed point, indexed by link id.
struct LinkState {
    std::vector<double> f;
    std::vector<double> p_send;
    std::vector<double> tau;
    std::vector<double> alpha;
    std::vector<double> p_noack;
    std::vector<double> r;
};

struct ModelSolution {
    LinkState links;
    std::vector<CollisionBreakdown> breakdown;
    PathReliability paths;
    int iterations = 0;
    double final_residual = 0.0;
    bool converged = false;
    double damping_final = 0.0;
};

/// Max-norm distance over all per-link unknowns.
double residual(const LinkState& a, const LinkState& b);

/// One undamped sweep through traffic distribution, neighborhood analysis,
/// the CSMA chain and the retransmission chain, reading only the previous
/// iterate. Optionally returns the per-link breakdowns it computed.
LinkState pipeline_pass(const Topology& topo, const ProtocolParams& params,
                        const DerivedTiming& timing, const LinkState& current,
                        std::vector<CollisionBreakdown>* breakdown_out = nullptr);

/// Damped Picard iteration to the fixed point. Non-convergence is reported
/// in the solution, not thrown; NaN/Inf in any unknown is a hard error.
ModelSolution solve(const Topology& topo, const ProtocolParams& params,
                    const DerivedTiming& timing, const SolverConfig& config);

}  // namespace meshmodel

#endif
