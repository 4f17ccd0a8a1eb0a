#include "meshmodel/solver.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "meshmodel/csma_chain.hpp"
#include "meshmodel/traffic.hpp"

namespace meshmodel {

void SolverConfig::validate() const {
    if (!(damping > 0.0 && damping <= 1.0))
        throw std::invalid_argument("damping: must be in (0, 1]");
    if (!(tol > 0.0)) throw std::invalid_argument("tol: must be > 0");
    if (max_iter < 1) throw std::invalid_argument("max_iter: must be >= 1");
}

namespace {

constexpr double kDampingFloor = 1.0 / 64.0;
constexpr int kStagnationWindow = 50;

const char* kVariableNames[6] = {"f", "p_send", "tau", "alpha", "p_noack", "r"};

std::array<const std::vector<double>*, 6> arrays(const LinkState& s) {
    return {&s.f, &s.p_send, &s.tau, &s.alpha, &s.p_noack, &s.r};
}

std::array<std::vector<double>*, 6> arrays(LinkState& s) {
    return {&s.f, &s.p_send, &s.tau, &s.alpha, &s.p_noack, &s.r};
}

void check_finite(const LinkState& s) {
    const auto views = arrays(s);
    for (std::size_t v = 0; v < views.size(); ++v)
        for (std::size_t l = 0; l < views[v]->size(); ++l)
            if (!std::isfinite((*views[v])[l]))
                throw std::runtime_error("non-finite value of " + std::string(kVariableNames[v]) +
                                         " on link " + std::to_string(l));
}

}  // namespace

double residual(const LinkState& a, const LinkState& b) {
    const auto va = arrays(a);
    const auto vb = arrays(b);
    double r = 0.0;
    for (std::size_t v = 0; v < va.size(); ++v) {
        if (va[v]->size() != vb[v]->size())
            throw std::invalid_argument("residual: link sets differ");
        for (std::size_t l = 0; l < va[v]->size(); ++l)
            r = std::max(r, std::abs((*va[v])[l] - (*vb[v])[l]));
    }
    return r;
}

LinkState pipeline_pass(const Topology& topo, const ProtocolParams& params,
                        const DerivedTiming& timing, const LinkState& current,
                        std::vector<CollisionBreakdown>* breakdown_out) {
    const std::size_t link_count = topo.links.size();
    LinkState next;

    const FlowState flow = distribute_traffic(topo, timing, current.r);
    next.f = flow.rate;
    next.p_send = flow.p_send;

    const SendingState snapshot{current.tau, current.alpha};
    const RepeatedCollisionProbs repeat = repeated_collision_probs(params, timing);
    next.tau.resize(link_count);
    next.alpha.resize(link_count);
    next.p_noack.resize(link_count);
    next.r.resize(link_count);
    if (breakdown_out) breakdown_out->resize(link_count);

    for (std::size_t l = 0; l < link_count; ++l) {
        const Link& link = topo.links[l];
        const CollisionBreakdown breakdown =
            collision_probabilities(link, topo.conflict[l], snapshot, timing);
        next.alpha[l] = breakdown.alpha;
        next.p_noack[l] = breakdown.p_noack;

        ChainInputs chain;
        chain.alpha = breakdown.alpha;
        chain.p_noack = breakdown.p_noack;
        chain.p_send = next.p_send[l];
        chain.params = params;
        chain.timing = timing;
        next.tau[l] = closed_form(chain).tau;

        const RetransChain retrans = build_retrans_chain(breakdown, params, repeat);
        next.r[l] = link_reliability(retrans, params.mac_max_frame_retries);
        if (breakdown_out) (*breakdown_out)[l] = breakdown;
    }
    check_finite(next);
    return next;
}

ModelSolution solve(const Topology& topo, const ProtocolParams& params,
                    const DerivedTiming& timing, const SolverConfig& config) {
    config.validate();
    params.validate();
    const std::size_t link_count = topo.links.size();

    LinkState x;
    x.f.assign(link_count, 0.0);
    x.p_send.assign(link_count, 0.0);
    x.tau.assign(link_count, config.init_tau);
    x.alpha.assign(link_count, config.init_alpha);
    x.p_noack.assign(link_count, config.init_pnoack);
    x.r.assign(link_count, config.init_r);

    double damping = config.damping;
    double best_residual = std::numeric_limits<double>::infinity();
    int since_improvement = 0;

    ModelSolution best;
    ModelSolution result;
    for (int iter = 1; iter <= config.max_iter; ++iter) {
        std::vector<CollisionBreakdown> breakdown;
        LinkState next = pipeline_pass(topo, params, timing, x, &breakdown);
        const double res = residual(x, next);
        if (config.on_iteration) config.on_iteration(iter, res);

        if (res < best_residual) {
            best_residual = res;
            since_improvement = 0;
            best.links = next;
            best.breakdown = breakdown;
            best.iterations = iter;
            best.final_residual = res;
        } else if (++since_improvement >= kStagnationWindow) {
            since_improvement = 0;
            if (damping <= kDampingFloor) break;  // give up, report best iterate
            damping = std::max(damping / 2.0, kDampingFloor);
        }

        if (res <= config.tol) {
            result.links = std::move(next);
            result.breakdown = std::move(breakdown);
            result.iterations = iter;
            result.final_residual = res;
            result.converged = true;
            result.damping_final = damping;
            result.paths = path_reliabilities(topo, result.links.r);
            return result;
        }

        const auto xs = arrays(x);
        const auto ns = arrays(static_cast<const LinkState&>(next));
        for (std::size_t v = 0; v < xs.size(); ++v) {
            auto& dst = *xs[v];
            for (std::size_t l = 0; l < dst.size(); ++l)
                dst[l] = (1.0 - damping) * dst[l] + damping * (*ns[v])[l];
        }
    }

    result = std::move(best);
    result.converged = false;
    result.damping_final = damping;
    result.paths = path_reliabilities(topo, result.links.r);
    return result;
}

}  // namespace meshmodel
