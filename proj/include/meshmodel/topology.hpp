#ifndef MESHMODEL_TOPOLOGY_HPP
#define MESHMODEL_TOPOLOGY_HPP

#include <utility>
#include <vector>

#include "meshmodel/analog_model.hpp"
#include "meshmodel/model_config.hpp"

namespace meshmodel {

struct Node {
    int id = 0;
    double x = 0.0;
    double y = 0.0;
    bool has_position = false;
    bool is_gateway = false;
};

enum class Direction { up, down };

/// An active (tree) link. PERs are derived from the link BER and the frame
/// lengths once, at build time.
struct Link {
    int id = 0;
    int sender = 0;
    int receiver = 0;
    Direction direction = Direction::up;
    double ber = 0.0;
    double per_packet = 0.0;
    double per_ack = 0.0;
};

/// Pairwise link qualities and the interference predicate, before routing.
/// in_range is stored symmetrically; self-pairs are excluded (a node's own
/// activity is already serialized by its MAC chain, so it never counts as
/// interference to itself).
class CandidateGraph {
  public:
    explicit CandidateGraph(int node_count);

    int node_count() const { return n_; }
    bool has_edge(int a, int b) const { return edge_[idx(a, b)]; }
    double ber(int a, int b) const { return ber_[idx(a, b)]; }
    bool in_range(int a, int b) const { return range_[idx(a, b)]; }

    void set_edge(int a, int b, double ber);
    void set_in_range(int a, int b, bool value);

  private:
    std::size_t idx(int a, int b) const { return static_cast<std::size_t>(a) * n_ + b; }
    int n_;
    std::vector<double> ber_;
    std::vector<char> edge_;
    std::vector<char> range_;
};

struct RoutingTree {
    int gateway = 0;
    std::vector<int> parent;            // -1 for the gateway
    std::vector<int> depth;             // hops to the gateway
    std::vector<int> descendant_count;  // proper descendants
    std::vector<std::vector<int>> children;
};

/// Conflict sets of one link, as sorted link-id lists. The combination sets
/// consumed by the collision events are precomputed here so the per-link
/// probability evaluation stays linear in the neighborhood size.
struct LinkSets {
    std::vector<int> ss, rs, sr, rr;
    std::vector<int> c0;              // RS & SS
    std::vector<int> c1;              // RS \ SS
    std::vector<int> c2;              // SS & SR & RR
    std::vector<int> c3;              // (SR & RR) \ SS
    std::vector<int> c4;              // (SS & RR) \ SR
    std::vector<int> c5;              // (RS & RR) \ SS \ SR
    std::vector<int> c6;              // RR \ SS \ SR \ RS
    std::vector<int> a0;              // SS & RS
    std::vector<int> a1;              // SS \ RS
    std::vector<int> mutual_hidden;   // (RS & SR) \ SS
    std::vector<int> mutual_visible;  // RS & SR & SS
};

/// Explicit-quality input: per-link BER plus a symmetric adjacency list for
/// the interference predicate, bypassing node positions entirely.
struct ExplicitLinkInput {
    int a = 0;
    int b = 0;
    double ber = 0.0;
};

struct ExplicitTopologyInput {
    int node_count = 0;
    int gateway = 0;
    std::vector<ExplicitLinkInput> links;
    std::vector<std::pair<int, int>> in_range_pairs;
};

struct Topology {
    std::vector<Node> nodes;
    CandidateGraph graph;
    RoutingTree tree;
    std::vector<Link> links;          // all up links (by client id), then all down links
    std::vector<LinkSets> conflict;   // indexed by link id
    std::vector<int> up_link_of;      // client -> link id, -1 for the gateway
    std::vector<int> down_link_of;

    int node_count() const { return static_cast<int>(nodes.size()); }
    int gateway() const { return tree.gateway; }
};

/// Full pairwise quality matrix from node positions.
CandidateGraph build_links(const std::vector<Node>& nodes, const RadioParams& radio);

/// Candidate graph taken verbatim from an explicit link list.
CandidateGraph build_links(const ExplicitTopologyInput& input);

/// Shortest-path tree towards the gateway under the edge weight
/// -log(1 - BER) + 1e-3. Equal-cost parents resolve to the smaller node id.
RoutingTree build_routing_tree(const CandidateGraph& graph, int gateway);

std::vector<LinkSets> build_conflict_sets(const std::vector<Link>& links,
                                          const CandidateGraph& graph);

/// Runs the whole preprocessing chain: candidate graph (already built),
/// routing tree, active links with PERs, conflict sets.
Topology assemble_topology(std::vector<Node> nodes, CandidateGraph graph, int gateway,
                           const ProtocolParams& protocol);

/// Geometric-mode convenience wrapper.
Topology build_topology(std::vector<Node> nodes, const RadioParams& radio,
                        const ProtocolParams& protocol);

/// Explicit-mode convenience wrapper.
Topology build_topology(const ExplicitTopologyInput& input, const ProtocolParams& protocol);

/// Validates ids dense in [0, N), exactly one gateway, N >= 2.
void validate_nodes(const std::vector<Node>& nodes);

}  // namespace meshmodel

#endif
