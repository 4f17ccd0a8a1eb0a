#include "meshmodel/topology.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <set>
#include <sstream>
#include <stdexcept>

namespace meshmodel {

CandidateGraph::CandidateGraph(int node_count)
    : n_(node_count),
      ber_(static_cast<std::size_t>(node_count) * node_count, 1.0),
      edge_(static_cast<std::size_t>(node_count) * node_count, 0),
      range_(static_cast<std::size_t>(node_count) * node_count, 0) {
    if (node_count < 2)
        throw std::invalid_argument("topology: need the gateway plus at least one client");
}

void CandidateGraph::set_edge(int a, int b, double ber) {
    ber_[idx(a, b)] = ber;
    ber_[idx(b, a)] = ber;
    edge_[idx(a, b)] = 1;
    edge_[idx(b, a)] = 1;
}

void CandidateGraph::set_in_range(int a, int b, bool value) {
    range_[idx(a, b)] = value ? 1 : 0;
    range_[idx(b, a)] = value ? 1 : 0;
}

void validate_nodes(const std::vector<Node>& nodes) {
    const int n = static_cast<int>(nodes.size());
    if (n < 2)
        throw std::invalid_argument("topology: need the gateway plus at least one client, got " +
                                    std::to_string(n));
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    int gateways = 0;
    for (const Node& node : nodes) {
        if (node.id < 0 || node.id >= n)
            throw std::invalid_argument("node id " + std::to_string(node.id) +
                                        " outside dense range [0, " + std::to_string(n) + ")");
        if (seen[static_cast<std::size_t>(node.id)])
            throw std::invalid_argument("duplicate node id " + std::to_string(node.id));
        seen[static_cast<std::size_t>(node.id)] = 1;
        if (node.is_gateway) ++gateways;
    }
    if (gateways != 1)
        throw std::invalid_argument("topology: exactly one gateway required, got " +
                                    std::to_string(gateways));
}

CandidateGraph build_links(const std::vector<Node>& nodes, const RadioParams& radio) {
    validate_nodes(nodes);
    radio.validate();
    const int n = static_cast<int>(nodes.size());

    std::vector<Node> by_id(static_cast<std::size_t>(n));
    for (const Node& node : nodes) {
        if (!node.has_position)
            throw std::invalid_argument("node " + std::to_string(node.id) +
                                        ": position required in geometric mode");
        by_id[static_cast<std::size_t>(node.id)] = node;
    }

    CandidateGraph g(n);
    for (int a = 0; a < n; ++a) {
        for (int b = a + 1; b < n; ++b) {
            const double dx = by_id[a].x - by_id[b].x;
            const double dy = by_id[a].y - by_id[b].y;
            const double d = std::hypot(dx, dy);
            if (d <= 0.0)
                throw std::invalid_argument("nodes " + std::to_string(a) + " and " +
                                            std::to_string(b) + " share a position");
            const double rx = received_power_dbm(radio, d);
            const double ber = bit_error_rate(snr_linear(rx, radio.noise_power_dbm));
            g.set_edge(a, b, ber);
            g.set_in_range(a, b, in_range(radio, d));
        }
    }
    return g;
}

CandidateGraph build_links(const ExplicitTopologyInput& input) {
    CandidateGraph g(input.node_count);
    if (input.gateway < 0 || input.gateway >= input.node_count)
        throw std::invalid_argument("gateway id out of range");

    std::set<std::pair<int, int>> seen;
    for (const ExplicitLinkInput& l : input.links) {
        if (l.a < 0 || l.a >= input.node_count || l.b < 0 || l.b >= input.node_count)
            throw std::invalid_argument("explicit link endpoint out of range");
        if (l.a == l.b)
            throw std::invalid_argument("explicit link from node " + std::to_string(l.a) +
                                        " to itself");
        if (l.ber < 0.0 || l.ber > 1.0)
            throw std::invalid_argument("explicit link ber must be in [0, 1]");
        auto key = std::minmax(l.a, l.b);
        if (!seen.insert(key).second)
            throw std::invalid_argument("duplicate explicit link " + std::to_string(l.a) + "-" +
                                        std::to_string(l.b));
        g.set_edge(l.a, l.b, l.ber);
    }
    for (const auto& [a, b] : input.in_range_pairs) {
        if (a < 0 || a >= input.node_count || b < 0 || b >= input.node_count)
            throw std::invalid_argument("in_range pair endpoint out of range");
        if (a == b)
            throw std::invalid_argument("in_range pair from node " + std::to_string(a) +
                                        " to itself");
        g.set_in_range(a, b, true);
    }
    return g;
}

RoutingTree build_routing_tree(const CandidateGraph& graph, int gateway) {
    const int n = graph.node_count();
    if (gateway < 0 || gateway >= n)
        throw std::invalid_argument("gateway id out of range");

    constexpr double kInf = std::numeric_limits<double>::infinity();
    std::vector<double> dist(static_cast<std::size_t>(n), kInf);
    std::vector<int> parent(static_cast<std::size_t>(n), -1);
    std::vector<char> done(static_cast<std::size_t>(n), 0);
    dist[static_cast<std::size_t>(gateway)] = 0.0;

    using Entry = std::pair<double, int>;
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> queue;
    queue.emplace(0.0, gateway);
    while (!queue.empty()) {
        auto [d, u] = queue.top();
        queue.pop();
        if (done[static_cast<std::size_t>(u)]) continue;
        done[static_cast<std::size_t>(u)] = 1;
        for (int v = 0; v < n; ++v) {
            if (v == u || !graph.has_edge(u, v)) continue;
            const double ber = graph.ber(u, v);
            if (ber >= 1.0) continue;
            const double w = -std::log1p(-ber) + 1e-3;
            const double nd = d + w;
            auto& dv = dist[static_cast<std::size_t>(v)];
            auto& pv = parent[static_cast<std::size_t>(v)];
            if (nd < dv) {
                dv = nd;
                pv = u;
                queue.emplace(nd, v);
            } else if (nd == dv && u < pv) {
                pv = u;  // deterministic tie-break: smaller parent id
            }
        }
    }

    std::vector<int> unreachable;
    for (int v = 0; v < n; ++v)
        if (!done[static_cast<std::size_t>(v)]) unreachable.push_back(v);
    if (!unreachable.empty()) {
        std::ostringstream msg;
        msg << "graph is disconnected; unreachable node ids:";
        for (int v : unreachable) msg << ' ' << v;
        throw std::invalid_argument(msg.str());
    }

    RoutingTree tree;
    tree.gateway = gateway;
    tree.parent = std::move(parent);
    tree.depth.assign(static_cast<std::size_t>(n), 0);
    tree.children.assign(static_cast<std::size_t>(n), {});
    for (int v = 0; v < n; ++v) {
        if (v == gateway) continue;
        tree.children[static_cast<std::size_t>(tree.parent[static_cast<std::size_t>(v)])]
            .push_back(v);
        int depth = 0;
        for (int p = v; p != gateway; p = tree.parent[static_cast<std::size_t>(p)]) ++depth;
        tree.depth[static_cast<std::size_t>(v)] = depth;
    }
    for (auto& kids : tree.children) std::sort(kids.begin(), kids.end());

    tree.descendant_count.assign(static_cast<std::size_t>(n), 0);
    std::vector<int> order(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) order[static_cast<std::size_t>(v)] = v;
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        return tree.depth[static_cast<std::size_t>(a)] > tree.depth[static_cast<std::size_t>(b)];
    });
    for (int v : order) {
        int sum = 0;
        for (int c : tree.children[static_cast<std::size_t>(v)])
            sum += 1 + tree.descendant_count[static_cast<std::size_t>(c)];
        tree.descendant_count[static_cast<std::size_t>(v)] = sum;
    }
    return tree;
}

std::vector<LinkSets> build_conflict_sets(const std::vector<Link>& links,
                                          const CandidateGraph& graph) {
    std::vector<LinkSets> sets(links.size());
    for (const Link& l : links) {
        LinkSets& s = sets[static_cast<std::size_t>(l.id)];
        for (const Link& k : links) {
            if (k.sender == l.sender) continue;  // the v1 != v2 clause, covers k == l
            const bool ss = graph.in_range(l.sender, k.sender);
            const bool rs = graph.in_range(l.receiver, k.sender);
            const bool sr = graph.in_range(l.sender, k.receiver);
            const bool rr = graph.in_range(l.receiver, k.receiver);
            if (ss) s.ss.push_back(k.id);
            if (rs) s.rs.push_back(k.id);
            if (sr) s.sr.push_back(k.id);
            if (rr) s.rr.push_back(k.id);
            if (rs && ss) s.c0.push_back(k.id);
            if (rs && !ss) s.c1.push_back(k.id);
            if (ss && sr && rr) s.c2.push_back(k.id);
            if (sr && rr && !ss) s.c3.push_back(k.id);
            if (ss && rr && !sr) s.c4.push_back(k.id);
            if (rs && rr && !ss && !sr) s.c5.push_back(k.id);
            if (rr && !ss && !sr && !rs) s.c6.push_back(k.id);
            if (ss && rs) s.a0.push_back(k.id);
            if (ss && !rs) s.a1.push_back(k.id);
            if (rs && sr && !ss) s.mutual_hidden.push_back(k.id);
            if (rs && sr && ss) s.mutual_visible.push_back(k.id);
        }
    }
    return sets;
}

Topology assemble_topology(std::vector<Node> nodes, CandidateGraph graph, int gateway,
                           const ProtocolParams& protocol) {
    protocol.validate();
    RoutingTree tree = build_routing_tree(graph, gateway);
    const int n = graph.node_count();

    std::vector<Link> links;
    links.reserve(2 * static_cast<std::size_t>(n - 1));
    std::vector<int> up(static_cast<std::size_t>(n), -1);
    std::vector<int> down(static_cast<std::size_t>(n), -1);
    auto push = [&](int sender, int receiver, Direction dir) {
        Link l;
        l.id = static_cast<int>(links.size());
        l.sender = sender;
        l.receiver = receiver;
        l.direction = dir;
        l.ber = graph.ber(sender, receiver);
        l.per_packet = packet_error_rate(l.ber, protocol.packet_bytes);
        l.per_ack = packet_error_rate(l.ber, ProtocolParams::ack_bytes);
        links.push_back(l);
        return l.id;
    };
    for (int c = 0; c < n; ++c) {
        if (c == gateway) continue;
        up[static_cast<std::size_t>(c)] = push(c, tree.parent[static_cast<std::size_t>(c)], Direction::up);
    }
    for (int c = 0; c < n; ++c) {
        if (c == gateway) continue;
        down[static_cast<std::size_t>(c)] = push(tree.parent[static_cast<std::size_t>(c)], c, Direction::down);
    }

    std::vector<LinkSets> conflict = build_conflict_sets(links, graph);
    return Topology{std::move(nodes), std::move(graph), std::move(tree), std::move(links),
                    std::move(conflict), std::move(up), std::move(down)};
}

Topology build_topology(std::vector<Node> nodes, const RadioParams& radio,
                        const ProtocolParams& protocol) {
    CandidateGraph graph = build_links(nodes, radio);
    int gateway = -1;
    for (const Node& node : nodes)
        if (node.is_gateway) gateway = node.id;
    std::sort(nodes.begin(), nodes.end(), [](const Node& a, const Node& b) { return a.id < b.id; });
    return assemble_topology(std::move(nodes), std::move(graph), gateway, protocol);
}

Topology build_topology(const ExplicitTopologyInput& input, const ProtocolParams& protocol) {
    CandidateGraph graph = build_links(input);
    std::vector<Node> nodes(static_cast<std::size_t>(input.node_count));
    for (int v = 0; v < input.node_count; ++v) {
        nodes[static_cast<std::size_t>(v)].id = v;
        nodes[static_cast<std::size_t>(v)].is_gateway = (v == input.gateway);
    }
    return assemble_topology(std::move(nodes), std::move(graph), input.gateway, protocol);
}

}  // namespace meshmodel
