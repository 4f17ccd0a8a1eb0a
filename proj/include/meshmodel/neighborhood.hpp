#ifndef MESHMODEL_NEIGHBORHOOD_HPP
#define MESHMODEL_NEIGHBORHOOD_HPP

#include <array>
#include <span>
#include <vector>

#include "meshmodel/model_config.hpp"
#include "meshmodel/topology.hpp"

namespace meshmodel {

/// Snapshot of the per-link sensing/busy probabilities the neighborhood
/// formulas read. Indexed by link id; taken from the previous solver iterate.
struct SendingState {
    std::vector<double> tau;
    std::vector<double> alpha;
};

/// Per-link collision-event probabilities and their aggregates.
struct CollisionBreakdown {
    std::array<double, 7> c{};  // packet collision events
    std::array<double, 2> a{};  // acknowledgement collision events
    double p_coll_packet = 0.0;
    double p_lost_packet = 0.0;
    double p_coll_ack = 0.0;
    double p_lost_ack = 0.0;
    double p_noack = 0.0;
    double alpha_pkt = 0.0;
    double alpha_ack = 0.0;
    double alpha = 0.0;
    double mutual_hidden = 0.0;   // mutual disturbance among hidden senders
    double mutual_visible = 0.0;  // mutual disturbance among visible senders
};

/// Probability that at least one of the given links starts transmitting at a
/// given point in time: 1 - prod(tau_j alpha_j + (1 - tau_j)).
double some_sending(std::span<const int> links, const SendingState& state);

/// Extension to a window of t time units (real t allowed; Poisson rates
/// scale proportionally): 1 - (1 - some_sending)^t.
double some_occupy(double t, std::span<const int> links, const SendingState& state);

/// Literal power-set sum over every non-empty subset of senders. Exponential
/// in |links|; exists purely to validate the product form.
double some_sending_powerset_oracle(std::span<const int> links, const SendingState& state);

/// Union probability of independent events: 1 - prod(1 - p_i).
double union_independent(std::span<const double> probabilities);

/// Evaluates every collision event of one link against the precomputed
/// conflict sets and folds them into the lost-packet / lost-ACK / no-ACK
/// probabilities and the channel-busy probability.
CollisionBreakdown collision_probabilities(const Link& link, const LinkSets& sets,
                                           const SendingState& state,
                                           const DerivedTiming& timing);

}  // namespace meshmodel

#endif
