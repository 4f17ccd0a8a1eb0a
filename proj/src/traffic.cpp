#include "meshmodel/traffic.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace meshmodel {

FlowState distribute_traffic(const Topology& topo, const DerivedTiming& timing,
                             const std::vector<double>& reliability) {
    const std::size_t link_count = topo.links.size();
    if (reliability.size() != link_count)
        throw std::invalid_argument("reliability vector size does not match link count");
    for (std::size_t i = 0; i < link_count; ++i)
        if (!(reliability[i] >= 0.0 && reliability[i] <= 1.0))
            throw std::invalid_argument("reliability of link " + std::to_string(i) +
                                        " outside [0, 1]");

    const int n = topo.node_count();
    const int gw = topo.gateway();
    FlowState flow;
    flow.rate.assign(link_count, 0.0);
    flow.forwarded.assign(link_count, 0.0);
    flow.p_send.assign(link_count, 0.0);

    // Nodes ordered by depth: reversed it is leaf-to-root.
    std::vector<int> order(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) order[static_cast<std::size_t>(v)] = v;
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        const auto da = topo.tree.depth[static_cast<std::size_t>(a)];
        const auto db = topo.tree.depth[static_cast<std::size_t>(b)];
        return da != db ? da < db : a < b;
    });

    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        const int v = *it;
        if (v == gw) continue;
        const int l = topo.up_link_of[static_cast<std::size_t>(v)];
        double f = timing.rate_up;
        for (int c : topo.tree.children[static_cast<std::size_t>(v)]) {
            const int cl = topo.up_link_of[static_cast<std::size_t>(c)];
            f += flow.forwarded[static_cast<std::size_t>(cl)];
        }
        flow.rate[static_cast<std::size_t>(l)] = f;
        flow.forwarded[static_cast<std::size_t>(l)] = f * reliability[static_cast<std::size_t>(l)];
    }

    for (int v : order) {
        const auto dv = topo.tree.descendant_count[static_cast<std::size_t>(v)];
        if (dv == 0) continue;
        const double inflow =
            v == gw ? timing.rate_down
                    : flow.forwarded[static_cast<std::size_t>(
                          topo.down_link_of[static_cast<std::size_t>(v)])];
        for (int w : topo.tree.children[static_cast<std::size_t>(v)]) {
            const int l = topo.down_link_of[static_cast<std::size_t>(w)];
            const auto dw = topo.tree.descendant_count[static_cast<std::size_t>(w)];
            const double f = (1.0 + dw) / dv * inflow;
            flow.rate[static_cast<std::size_t>(l)] = f;
            flow.forwarded[static_cast<std::size_t>(l)] =
                f * reliability[static_cast<std::size_t>(l)] * dw / (1.0 + dw);
        }
    }

    for (std::size_t i = 0; i < link_count; ++i)
        flow.p_send[i] = 1.0 - std::exp(-flow.rate[i]);
    return flow;
}

}  // namespace meshmodel
