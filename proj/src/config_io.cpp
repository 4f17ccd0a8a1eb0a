#include "meshmodel/config_io.hpp"

#include <fstream>
#include <random>
#include <stdexcept>

namespace meshmodel {

using nlohmann::json;

namespace {

// Rejects typos instead of silently ignoring them.
void check_keys(const json& j, const char* section, std::initializer_list<const char*> known) {
    for (const auto& [key, value] : j.items()) {
        bool ok = false;
        for (const char* k : known) ok = ok || key == k;
        if (!ok)
            throw std::invalid_argument(std::string("unknown key '") + key + "' in " + section);
    }
}

GeneratorSpec parse_generator(const json& j) {
    check_keys(j, "topology.generator",
               {"kind", "rows", "cols", "spacing_m", "count", "extent_m", "seed", "gateway"});
    GeneratorSpec spec;
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "grid") {
        spec.kind = GeneratorSpec::Kind::grid;
        spec.rows = j.at("rows").get<int>();
        spec.cols = j.at("cols").get<int>();
        spec.spacing_m = j.at("spacing_m").get<double>();
    } else if (kind == "uniform") {
        spec.kind = GeneratorSpec::Kind::uniform_random;
        spec.count = j.at("count").get<int>();
        spec.extent_m = j.at("extent_m").get<double>();
    } else {
        throw std::invalid_argument("topology.generator.kind: expected 'grid' or 'uniform'");
    }
    if (!j.contains("seed"))
        throw std::invalid_argument("topology.generator.seed: required for reproducibility");
    spec.seed = j.at("seed").get<std::uint64_t>();
    spec.gateway = j.value("gateway", 0);
    return spec;
}

std::vector<Node> parse_nodes(const json& j) {
    std::vector<Node> nodes;
    for (const json& item : j) {
        check_keys(item, "topology.nodes[]", {"id", "x", "y", "gateway"});
        Node node;
        node.id = item.at("id").get<int>();
        node.x = item.at("x").get<double>();
        node.y = item.at("y").get<double>();
        node.has_position = true;
        node.is_gateway = item.value("gateway", false);
        nodes.push_back(node);
    }
    return nodes;
}

ExplicitTopologyInput parse_explicit(const json& j) {
    check_keys(j, "topology.explicit", {"node_count", "gateway", "links", "in_range"});
    ExplicitTopologyInput input;
    input.node_count = j.at("node_count").get<int>();
    input.gateway = j.at("gateway").get<int>();
    for (const json& item : j.at("links")) {
        check_keys(item, "topology.explicit.links[]", {"a", "b", "ber"});
        input.links.push_back({item.at("a").get<int>(), item.at("b").get<int>(),
                               item.at("ber").get<double>()});
    }
    if (j.contains("in_range"))
        for (const json& pair : j.at("in_range")) {
            if (!pair.is_array() || pair.size() != 2)
                throw std::invalid_argument("topology.explicit.in_range: expected [a, b] pairs");
            input.in_range_pairs.emplace_back(pair[0].get<int>(), pair[1].get<int>());
        }
    return input;
}

}  // namespace

TopologySource topology_source_from_json(const json& j) {
    const bool has_nodes = j.contains("nodes");
    const bool has_explicit = j.contains("explicit");
    const bool has_generator = j.contains("generator");
    const int sources = int(has_nodes) + int(has_explicit) + int(has_generator);
    if (sources != 1)
        throw std::invalid_argument(
            "topology: exactly one of 'nodes', 'explicit' or 'generator' required");

    TopologySource source;
    if (has_nodes) {
        source.mode = TopologySource::Mode::nodes;
        source.nodes = parse_nodes(j.at("nodes"));
    } else if (has_explicit) {
        source.mode = TopologySource::Mode::explicit_links;
        source.explicit_input = parse_explicit(j.at("explicit"));
    } else {
        source.mode = TopologySource::Mode::generator;
        source.generator = parse_generator(j.at("generator"));
    }
    return source;
}

ExperimentConfig parse_config(const json& j) {
    check_keys(j, "config", {"radio", "protocol", "traffic", "topology", "solver", "schema"});
    ExperimentConfig config;

    if (j.contains("radio")) {
        const json& r = j.at("radio");
        check_keys(r, "radio", {"tx_power_dbm", "noise_power_dbm", "disturb_threshold_dbm"});
        config.radio.tx_power_dbm = r.value("tx_power_dbm", config.radio.tx_power_dbm);
        config.radio.noise_power_dbm = r.value("noise_power_dbm", config.radio.noise_power_dbm);
        config.radio.disturb_threshold_dbm =
            r.value("disturb_threshold_dbm", config.radio.disturb_threshold_dbm);
        config.radio.validate();
    }
    if (j.contains("protocol")) {
        const json& p = j.at("protocol");
        check_keys(p, "protocol",
                   {"mac_min_be", "mac_max_be", "mac_max_csma_backoffs", "mac_max_frame_retries",
                    "packet_bytes"});
        config.protocol.mac_min_be = p.value("mac_min_be", config.protocol.mac_min_be);
        config.protocol.mac_max_be = p.value("mac_max_be", config.protocol.mac_max_be);
        config.protocol.mac_max_csma_backoffs =
            p.value("mac_max_csma_backoffs", config.protocol.mac_max_csma_backoffs);
        config.protocol.mac_max_frame_retries =
            p.value("mac_max_frame_retries", config.protocol.mac_max_frame_retries);
        config.protocol.packet_bytes = p.value("packet_bytes", config.protocol.packet_bytes);
        config.protocol.validate();
    }
    if (j.contains("traffic")) {
        const json& t = j.at("traffic");
        check_keys(t, "traffic",
                   {"interval_up_s", "interval_down_s", "upstream_enabled", "downstream_enabled"});
        config.traffic.interval_up_s = t.value("interval_up_s", config.traffic.interval_up_s);
        config.traffic.interval_down_s = t.value("interval_down_s", config.traffic.interval_down_s);
        config.traffic.upstream_enabled =
            t.value("upstream_enabled", config.traffic.upstream_enabled);
        config.traffic.downstream_enabled =
            t.value("downstream_enabled", config.traffic.downstream_enabled);
        config.traffic.validate();
    }
    if (!j.contains("topology")) throw std::invalid_argument("config: 'topology' section required");
    const json& topo = j.at("topology");
    if (topo.is_object() && topo.contains("file")) {
        check_keys(topo, "topology", {"file"});
        std::ifstream in(topo.at("file").get<std::string>());
        if (!in)
            throw std::invalid_argument("topology.file: cannot open '" +
                                        topo.at("file").get<std::string>() + "'");
        json loaded;
        in >> loaded;
        config.topology = topology_source_from_json(loaded);
    } else {
        config.topology = topology_source_from_json(topo);
    }
    if (j.contains("solver")) {
        const json& s = j.at("solver");
        check_keys(s, "solver",
                   {"damping", "tol", "max_iter", "init_r", "init_alpha", "init_tau",
                    "init_pnoack"});
        config.solver.damping = s.value("damping", config.solver.damping);
        config.solver.tol = s.value("tol", config.solver.tol);
        config.solver.max_iter = s.value("max_iter", config.solver.max_iter);
        config.solver.init_r = s.value("init_r", config.solver.init_r);
        config.solver.init_alpha = s.value("init_alpha", config.solver.init_alpha);
        config.solver.init_tau = s.value("init_tau", config.solver.init_tau);
        config.solver.init_pnoack = s.value("init_pnoack", config.solver.init_pnoack);
        config.solver.validate();
    }
    return config;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config file '" + path + "'");
    json j;
    in >> j;
    return parse_config(j);
}

std::vector<Node> generate_nodes(const GeneratorSpec& spec) {
    std::vector<Node> nodes;
    if (spec.kind == GeneratorSpec::Kind::grid) {
        if (spec.rows < 1 || spec.cols < 1 || spec.rows * spec.cols < 2)
            throw std::invalid_argument(
                "generator: grid needs at least 2 nodes (gateway plus one client)");
        if (!(spec.spacing_m > 0.0)) throw std::invalid_argument("generator: zero grid spacing");
        for (int r = 0; r < spec.rows; ++r)
            for (int c = 0; c < spec.cols; ++c) {
                Node node;
                node.id = r * spec.cols + c;
                node.x = c * spec.spacing_m;
                node.y = r * spec.spacing_m;
                node.has_position = true;
                nodes.push_back(node);
            }
    } else {
        if (spec.count < 2)
            throw std::invalid_argument(
                "generator: need at least 2 nodes (gateway plus one client)");
        if (!(spec.extent_m > 0.0)) throw std::invalid_argument("generator: zero placement area");
        std::mt19937_64 rng(spec.seed);
        // Raw 53-bit draws keep placement bit-stable across standard libraries.
        auto draw = [&rng] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
        for (int i = 0; i < spec.count; ++i) {
            Node node;
            node.id = i;
            node.x = draw() * spec.extent_m;
            node.y = draw() * spec.extent_m;
            node.has_position = true;
            nodes.push_back(node);
        }
    }
    if (spec.gateway < 0 || static_cast<std::size_t>(spec.gateway) >= nodes.size())
        throw std::invalid_argument("generator: gateway id out of range");
    nodes[static_cast<std::size_t>(spec.gateway)].is_gateway = true;
    return nodes;
}

json nodes_to_json(const std::vector<Node>& nodes) {
    json list = json::array();
    for (const Node& node : nodes) {
        json item{{"id", node.id}, {"x", node.x}, {"y", node.y}};
        if (node.is_gateway) item["gateway"] = true;
        list.push_back(item);
    }
    return json{{"schema", "meshmodel-topology-v1"}, {"nodes", list}};
}

Topology build_from_config(const ExperimentConfig& config) {
    switch (config.topology.mode) {
        case TopologySource::Mode::nodes:
            return build_topology(config.topology.nodes, config.radio, config.protocol);
        case TopologySource::Mode::explicit_links:
            return build_topology(config.topology.explicit_input, config.protocol);
        case TopologySource::Mode::generator:
            return build_topology(generate_nodes(config.topology.generator), config.radio,
                                  config.protocol);
    }
    throw std::logic_error("unhandled topology mode");
}

json topology_debug_json(const Topology& topo) {
    json nodes = json::array();
    for (const Node& node : topo.nodes) {
        json item{{"id", node.id},
                  {"gateway", node.is_gateway},
                  {"parent", topo.tree.parent[static_cast<std::size_t>(node.id)]},
                  {"depth", topo.tree.depth[static_cast<std::size_t>(node.id)]},
                  {"descendants", topo.tree.descendant_count[static_cast<std::size_t>(node.id)]}};
        if (node.has_position) {
            item["x"] = node.x;
            item["y"] = node.y;
        }
        nodes.push_back(item);
    }
    json links = json::array();
    for (const Link& link : topo.links) {
        const LinkSets& s = topo.conflict[static_cast<std::size_t>(link.id)];
        links.push_back(json{{"id", link.id},
                             {"sender", link.sender},
                             {"receiver", link.receiver},
                             {"direction", link.direction == Direction::up ? "up" : "down"},
                             {"ber", link.ber},
                             {"per_packet", link.per_packet},
                             {"per_ack", link.per_ack},
                             {"ss", s.ss},
                             {"rs", s.rs},
                             {"sr", s.sr},
                             {"rr", s.rr}});
    }
    json in_range = json::array();
    const int n = topo.node_count();
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            if (topo.graph.in_range(a, b)) in_range.push_back(json::array({a, b}));
    return json{{"schema", "meshmodel-graph-v1"},
                {"nodes", nodes},
                {"links", links},
                {"in_range", in_range}};
}

}  // namespace meshmodel
