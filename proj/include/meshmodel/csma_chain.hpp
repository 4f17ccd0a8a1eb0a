#ifndef MESHMODEL_CSMA_CHAIN_HPP
#define MESHMODEL_CSMA_CHAIN_HPP

#include "meshmodel/model_config.hpp"

namespace meshmodel {

/// Per-link inputs of the CSMA/CA Markov chain.
struct ChainInputs {
    double alpha = 0.0;    // channel sensed busy
    double p_noack = 0.0;  // no acknowledgement arrives
    double p_send = 0.0;   // pending packet within one time unit
    ProtocolParams params;
    DerivedTiming timing;
};

/// Stationary quantities of the chain.
struct ChainOutputs {
    double y = 0.0;     // P_noack * (1 - alpha^(m+1)), the per-attempt retry weight
    double b000 = 0.0;  // first channel-sensing state
    double tau = 0.0;   // any channel-sensing state
    double idle = 0.0;
};

/// Partial geometric sum 1 + x + ... + x^(terms-1). Near x = 1 the closed
/// form loses all precision, so within 1e-9 of 1 the limit value `terms`
/// is returned instead.
double geometric_sum(double x, int terms);

/// Closed-form stationary solution. A link with p_send = 0 never leaves
/// idle; that case short-circuits to tau = 0, idle = 1 instead of
/// evaluating the divergent 1/p_send terms.
ChainOutputs closed_form(const ChainInputs& in);

/// Stationary probability of backoff state (i, k, j):
/// b000 * y^j * alpha^i * (W_i - k) / W_i.
double stationary_probability(const ChainInputs& in, int i, int k, int j);

/// Common per-step probability of the success dwell states (-1, h, j).
double sending_state_probability(const ChainInputs& in, int j);

/// Common per-step probability of the collision dwell states (-2, h, j).
double colliding_state_probability(const ChainInputs& in, int j);

}  // namespace meshmodel

#endif
