#include "meshmodel/solution_io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>

namespace meshmodel {

using nlohmann::json;

namespace {

json link_record(const Topology& topo, const ModelSolution& s, std::size_t l) {
    const Link& link = topo.links[l];
    const CollisionBreakdown& b = s.breakdown[l];
    return json{{"id", link.id},
                {"sender", link.sender},
                {"receiver", link.receiver},
                {"direction", link.direction == Direction::up ? "up" : "down"},
                {"ber", link.ber},
                {"per_packet", link.per_packet},
                {"per_ack", link.per_ack},
                {"f", s.links.f[l]},
                {"p_send", s.links.p_send[l]},
                {"tau", s.links.tau[l]},
                {"alpha", s.links.alpha[l]},
                {"p_noack", s.links.p_noack[l]},
                {"r", s.links.r[l]},
                {"breakdown",
                 json{{"c", b.c},
                      {"a", b.a},
                      {"p_coll_packet", b.p_coll_packet},
                      {"p_lost_packet", b.p_lost_packet},
                      {"p_coll_ack", b.p_coll_ack},
                      {"p_lost_ack", b.p_lost_ack},
                      {"alpha_pkt", b.alpha_pkt},
                      {"alpha_ack", b.alpha_ack},
                      {"mutual_hidden", b.mutual_hidden},
                      {"mutual_visible", b.mutual_visible}}}};
}

std::string fmt(double v) {
    char buffer[32];
    std::snprintf(buffer, sizeof buffer, "%.17g", v);
    return buffer;
}

}  // namespace

json solution_to_json(const Topology& topo, const ModelSolution& solution,
                      const SolverConfig& config) {
    json links = json::array();
    for (std::size_t l = 0; l < topo.links.size(); ++l)
        links.push_back(link_record(topo, solution, l));

    json nodes = json::array();
    for (const Node& node : topo.nodes) {
        const auto id = static_cast<std::size_t>(node.id);
        nodes.push_back(json{{"id", node.id},
                             {"gateway", node.is_gateway},
                             {"parent", topo.tree.parent[id]},
                             {"depth", topo.tree.depth[id]},
                             {"descendants", topo.tree.descendant_count[id]},
                             {"r_up", solution.paths.r_up[id]},
                             {"r_down", solution.paths.r_down[id]}});
    }

    return json{{"schema", "meshmodel-solution-v1"},
                {"solver",
                 json{{"converged", solution.converged},
                      {"iterations", solution.iterations},
                      {"final_residual", solution.final_residual},
                      {"damping_final", solution.damping_final},
                      {"tol", config.tol},
                      {"max_iter", config.max_iter},
                      {"damping", config.damping}}},
                {"links", links},
                {"nodes", nodes}};
}

void write_solution_json(const std::string& path, const Topology& topo,
                         const ModelSolution& solution, const SolverConfig& config) {
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("cannot open output file '" + path + "'");
    out << solution_to_json(topo, solution, config).dump(2) << '\n';
}

void write_solution_csv(const std::string& path, const Topology& topo,
                        const ModelSolution& solution) {
    const std::filesystem::path base(path);
    std::filesystem::path links_path = base;
    links_path.replace_extension();
    std::filesystem::path nodes_path = links_path;
    links_path += ".links.csv";
    nodes_path += ".nodes.csv";

    std::ofstream links(links_path);
    if (!links) throw std::invalid_argument("cannot open output file '" + links_path.string() + "'");
    links << "id,sender,receiver,direction,ber,per_packet,per_ack,f,p_send,tau,alpha,p_noack,r,"
             "c0,c1,c2,c3,c4,c5,c6,a0,a1,p_coll_packet,p_lost_packet,p_coll_ack,p_lost_ack,"
             "alpha_pkt,alpha_ack,mutual_hidden,mutual_visible\n";
    for (std::size_t l = 0; l < topo.links.size(); ++l) {
        const Link& link = topo.links[l];
        const CollisionBreakdown& b = solution.breakdown[l];
        links << link.id << ',' << link.sender << ',' << link.receiver << ','
              << (link.direction == Direction::up ? "up" : "down") << ',' << fmt(link.ber) << ','
              << fmt(link.per_packet) << ',' << fmt(link.per_ack) << ','
              << fmt(solution.links.f[l]) << ',' << fmt(solution.links.p_send[l]) << ','
              << fmt(solution.links.tau[l]) << ',' << fmt(solution.links.alpha[l]) << ','
              << fmt(solution.links.p_noack[l]) << ',' << fmt(solution.links.r[l]);
        for (double c : b.c) links << ',' << fmt(c);
        for (double a : b.a) links << ',' << fmt(a);
        links << ',' << fmt(b.p_coll_packet) << ',' << fmt(b.p_lost_packet) << ','
              << fmt(b.p_coll_ack) << ',' << fmt(b.p_lost_ack) << ',' << fmt(b.alpha_pkt) << ','
              << fmt(b.alpha_ack) << ',' << fmt(b.mutual_hidden) << ',' << fmt(b.mutual_visible)
              << '\n';
    }

    std::ofstream nodes(nodes_path);
    if (!nodes) throw std::invalid_argument("cannot open output file '" + nodes_path.string() + "'");
    nodes << "id,gateway,parent,depth,descendants,r_up,r_down\n";
    for (const Node& node : topo.nodes) {
        const auto id = static_cast<std::size_t>(node.id);
        nodes << node.id << ',' << (node.is_gateway ? 1 : 0) << ',' << topo.tree.parent[id] << ','
              << topo.tree.depth[id] << ',' << topo.tree.descendant_count[id] << ','
              << fmt(solution.paths.r_up[id]) << ',' << fmt(solution.paths.r_down[id]) << '\n';
    }
}

}  // namespace meshmodel
