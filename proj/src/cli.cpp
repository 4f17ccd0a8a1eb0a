#include "meshmodel/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>

#include "meshmodel/config_io.hpp"
#include "meshmodel/solution_io.hpp"
#include "meshmodel/validation.hpp"

namespace meshmodel::cli {

using nlohmann::json;

namespace {

std::optional<double> env_double(const char* name) {
    const char* value = std::getenv(name);
    if (!value || !*value) return std::nullopt;
    return std::strtod(value, nullptr);
}

}  // namespace

int cmd_generate(const std::string& config_path, const std::string& out_path,
                 std::optional<std::uint64_t> seed_override) {
    try {
        ExperimentConfig config = load_config(config_path);
        if (config.topology.mode != TopologySource::Mode::generator) {
            std::cerr << "generate: config has no topology.generator section\n";
            return kExitInputError;
        }
        if (seed_override) config.topology.generator.seed = *seed_override;
        const std::vector<Node> nodes = generate_nodes(config.topology.generator);
        validate_nodes(nodes);
        std::ofstream out(out_path);
        if (!out) {
            std::cerr << "generate: cannot open '" << out_path << "'\n";
            return kExitInputError;
        }
        out << nodes_to_json(nodes).dump(2) << '\n';
        return kExitOk;
    } catch (const std::exception& e) {
        std::cerr << "generate: " << e.what() << '\n';
        return kExitInputError;
    }
}

int cmd_solve(const std::string& config_path, const std::string& out_path,
              const std::string& format, bool verbose, const std::string& graph_dump_path) {
    try {
        ExperimentConfig config = load_config(config_path);
        if (const auto tol = env_double("MESHMODEL_TOL")) config.solver.tol = *tol;
        if (const auto iters = env_double("MESHMODEL_MAX_ITER"))
            config.solver.max_iter = static_cast<int>(*iters);
        config.solver.validate();

        const Topology topo = build_from_config(config);
        if (!graph_dump_path.empty()) {
            std::ofstream gout(graph_dump_path);
            if (!gout) {
                std::cerr << "solve: cannot open '" << graph_dump_path << "'\n";
                return kExitInputError;
            }
            gout << topology_debug_json(topo).dump(2) << '\n';
        }

        const DerivedTiming timing =
            derive_timing(config.protocol, config.traffic, topo.node_count());
        if (verbose)
            config.solver.on_iteration = [](int iter, double res) {
                std::cerr << "iteration " << iter << " residual " << res << '\n';
            };

        const ModelSolution solution = solve(topo, config.protocol, timing, config.solver);
        if (format == "json") {
            write_solution_json(out_path, topo, solution, config.solver);
        } else if (format == "csv") {
            write_solution_csv(out_path, topo, solution);
        } else {
            std::cerr << "solve: unknown format '" << format << "' (expected json or csv)\n";
            return kExitInputError;
        }
        if (!solution.converged) {
            std::cerr << "solve: no fixed point within " << config.solver.max_iter
                      << " iterations (best residual " << solution.final_residual << ")\n";
            return kExitNotConverged;
        }
        return kExitOk;
    } catch (const std::exception& e) {
        std::cerr << "solve: " << e.what() << '\n';
        return kExitInputError;
    }
}

int cmd_validate(const std::string& suite, const std::string& report_path) {
    try {
        const std::vector<validation::SuiteReport> reports = validation::run_suites(suite);
        json out = json::array();
        bool all_pass = true;
        for (const auto& report : reports) {
            all_pass = all_pass && report.pass;
            std::cout << (report.pass ? "[PASS] " : "[FAIL] ") << report.name << ": max error "
                      << report.max_error << " over " << report.cases << " cases (tolerance "
                      << report.tolerance << ")";
            if (!report.pass) std::cout << " worst at " << report.worst_case;
            std::cout << '\n';
            out.push_back(json{{"suite", report.name},
                               {"cases", report.cases},
                               {"max_error", report.max_error},
                               {"tolerance", report.tolerance},
                               {"pass", report.pass},
                               {"worst_case", report.worst_case}});
        }
        if (!report_path.empty()) {
            std::ofstream file(report_path);
            if (!file) {
                std::cerr << "validate: cannot open '" << report_path << "'\n";
                return kExitInputError;
            }
            file << json{{"schema", "meshmodel-validation-v1"},
                         {"pass", all_pass},
                         {"suites", out}}
                        .dump(2)
                 << '\n';
        }
        return all_pass ? kExitOk : kExitOracleMismatch;
    } catch (const std::exception& e) {
        std::cerr << "validate: " << e.what() << '\n';
        return kExitInputError;
    }
}

}  // namespace meshmodel::cli
