#ifndef MESHMODEL_RELIABILITY_HPP
#define MESHMODEL_RELIABILITY_HPP

#include <array>
#include <vector>

#include "meshmodel/neighborhood.hpp"
#include "meshmodel/topology.hpp"

namespace meshmodel {

/// Probability that a retransmission scheduled after a mutual disturbance
/// collides again, for one hidden (bc) or one visible (bsc) disturber.
/// With zero pending disturbers both probabilities are zero.
struct RepeatedCollisionProbs {
    int omega = 0;  // backoff offsets that separate two retransmitted packets
    double p_bc1 = 0.0;
    double p_bsc1 = 0.0;
};

/// Absorbing chain over one packet's retransmission attempts.
/// State order: succ, cf, (0,0), (1,0), (0,1), (1,1) where the pair flags
/// pending hidden / visible disturbers.
struct RetransChain {
    static constexpr int kSucc = 0;
    static constexpr int kCf = 1;
    static constexpr int kNoPending = 2;

    std::array<std::array<double, 6>, 6> matrix{};
    double b = 0.0;  // 1 - alpha^(m+1), the chance of winning channel access
    RepeatedCollisionProbs repeat;
};

/// Per-node end-to-end reliabilities.
struct PathReliability {
    std::vector<double> r_up;
    std::vector<double> r_down;
};

RepeatedCollisionProbs repeated_collision_probs(const ProtocolParams& params,
                                                const DerivedTiming& timing);

/// Builds the 6x6 transition matrix from one link's collision breakdown.
/// Entries outside [-1e-12, 1 + 1e-12] indicate a model inconsistency and
/// raise; rounding defects up to 1e-9 per row are renormalized away.
RetransChain build_retrans_chain(const CollisionBreakdown& breakdown,
                                 const ProtocolParams& params,
                                 const RepeatedCollisionProbs& repeat);

/// Probability of reaching succ from (0,0) within n+1 steps, via the
/// (n+1)-th matrix power.
double link_reliability(const RetransChain& chain, int max_frame_retries);

/// Products of the link reliabilities along every routing path.
PathReliability path_reliabilities(const Topology& topo,
                                   const std::vector<double>& link_r);

}  // namespace meshmodel

#endif
