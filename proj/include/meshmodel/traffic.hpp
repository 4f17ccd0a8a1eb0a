#ifndef MESHMODEL_TRAFFIC_HPP
#define MESHMODEL_TRAFFIC_HPP

#include <vector>

#include "meshmodel/model_config.hpp"
#include "meshmodel/topology.hpp"

namespace meshmodel {

/// Per-link offered rate, forwarded rate and pending-packet probability,
/// indexed by link id.
struct FlowState {
    std::vector<double> rate;       // f, packets per time unit
    std::vector<double> forwarded;  // share surviving the link and travelling on
    std::vector<double> p_send;     // 1 - exp(-f)
};

/// Propagates generated traffic through the tree, thinning it by the current
/// link reliabilities. Upstream accumulates leaf-to-root; downstream splits
/// root-to-leaf in proportion to the subtree sizes, each node consuming its
/// own share.
FlowState distribute_traffic(const Topology& topo, const DerivedTiming& timing,
                             const std::vector<double>& reliability);

}  // namespace meshmodel

#endif
