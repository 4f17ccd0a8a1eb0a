#ifndef MESHMODEL_CLI_HPP
#define MESHMODEL_CLI_HPP

#include <cstdint>
#include <optional>
#include <string>

namespace meshmodel::cli {

// Exit codes shared with CI: 0 ok, 1 input error, 2 non-convergence,
// 3 oracle mismatch.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInputError = 1;
inline constexpr int kExitNotConverged = 2;
inline constexpr int kExitOracleMismatch = 3;

int cmd_generate(const std::string& config_path, const std::string& out_path,
                 std::optional<std::uint64_t> seed_override);

int cmd_solve(const std::string& config_path, const std::string& out_path,
              const std::string& format, bool verbose,
              const std::string& graph_dump_path = "");

int cmd_validate(const std::string& suite, const std::string& report_path = "");

}  // namespace meshmodel::cli

#endif
