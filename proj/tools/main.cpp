#include <CLI11.hpp>

#include <cstdint>
#include <optional>
#include <string>

#include "meshmodel/cli.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Analytical performance model for IEEE 802.15.4 multi-hop networks"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_path;
    std::string format = "json";
    std::string graph_dump;
    std::string suite = "all";
    std::string report_path;
    bool verbose = false;
    std::optional<std::uint64_t> seed;

    CLI::App* generate = app.add_subcommand("generate", "Write a topology file from a generator spec");
    generate->add_option("--config", config_path, "experiment config file")->required();
    generate->add_option("--out", out_path, "output topology file")->required();
    generate->add_option("--seed", seed, "override the generator seed");

    CLI::App* solve = app.add_subcommand("solve", "Solve the model to its fixed point");
    solve->add_option("--config", config_path, "experiment config file")->required();
    solve->add_option("--out", out_path, "solution dump path")->required();
    solve->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    solve->add_option("--dump-graph", graph_dump, "also write the preprocessed graph as JSON");
    solve->add_flag("--verbose", verbose, "trace per-iteration residuals to stderr");

    CLI::App* validate = app.add_subcommand("validate", "Run the oracle cross-check suites");
    validate->add_option("suite", suite, "chain, powerset, retrans or all")
        ->check(CLI::IsMember({"chain", "powerset", "retrans", "all"}));
    validate->add_option("--out", report_path, "machine-readable report path");

    CLI11_PARSE(app, argc, argv);

    if (generate->parsed()) return meshmodel::cli::cmd_generate(config_path, out_path, seed);
    if (solve->parsed())
        return meshmodel::cli::cmd_solve(config_path, out_path, format, verbose, graph_dump);
    return meshmodel::cli::cmd_validate(suite, report_path);
}
