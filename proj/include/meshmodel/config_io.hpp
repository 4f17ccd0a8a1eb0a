#ifndef MESHMODEL_CONFIG_IO_HPP
#define MESHMODEL_CONFIG_IO_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "meshmodel/analog_model.hpp"
#include "meshmodel/model_config.hpp"
#include "meshmodel/solver.hpp"
#include "meshmodel/topology.hpp"

namespace meshmodel {

struct GeneratorSpec {
    enum class Kind { grid, uniform_random };
    Kind kind = Kind::grid;
    int rows = 0, cols = 0;      // grid
    double spacing_m = 0.0;      // grid
    int count = 0;               // uniform
    double extent_m = 0.0;       // uniform
    std::uint64_t seed = 0;      // mandatory for reproducibility
    int gateway = 0;
};

struct TopologySource {
    enum class Mode { nodes, explicit_links, generator };
    Mode mode = Mode::nodes;
    std::vector<Node> nodes;
    ExplicitTopologyInput explicit_input;
    GeneratorSpec generator;
};

struct ExperimentConfig {
    RadioParams radio;
    ProtocolParams protocol;
    TrafficParams traffic;
    TopologySource topology;
    SolverConfig solver;
};

ExperimentConfig parse_config(const nlohmann::json& j);
ExperimentConfig load_config(const std::string& path);

/// Deterministic node placement from the generator spec.
std::vector<Node> generate_nodes(const GeneratorSpec& spec);

/// Topology-file round trip (the `generate` output format).
nlohmann::json nodes_to_json(const std::vector<Node>& nodes);
TopologySource topology_source_from_json(const nlohmann::json& j);

/// Materializes whichever topology source the config carries.
Topology build_from_config(const ExperimentConfig& config);

/// Debug dump: adjacency, tree and conflict sets.
nlohmann::json topology_debug_json(const Topology& topo);

}  // namespace meshmodel

#endif
