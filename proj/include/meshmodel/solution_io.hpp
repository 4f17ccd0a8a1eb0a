#ifndef MESHMODEL_SOLUTION_IO_HPP
#define MESHMODEL_SOLUTION_IO_HPP

#include <string>

#include <json.hpp>

#include "meshmodel/solver.hpp"
#include "meshmodel/topology.hpp"

namespace meshmodel {

nlohmann::json solution_to_json(const Topology& topo, const ModelSolution& solution,
                                const SolverConfig& config);

void write_solution_json(const std::string& path, const Topology& topo,
                         const ModelSolution& solution, const SolverConfig& config);

/// Writes `<stem>.links.csv` and `<stem>.nodes.csv` next to the given path.
/// Values match the JSON dump digit for digit.
void write_solution_csv(const std::string& path, const Topology& topo,
                        const ModelSolution& solution);

}  // namespace meshmodel

#endif
