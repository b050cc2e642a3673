// cli_commands.hpp - The five commands behind the CLI, exposed as library
// functions so they can be driven from tests.
//
// SPDX-License-Identifier: Apache-2.0
//

#ifndef SLICEBOUND_CLI_COMMANDS_HPP
#define SLICEBOUND_CLI_COMMANDS_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace slicebound {

inline constexpr const char* kVersion = "0.3.1";

// Exit codes shared by every command.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInputError = 1;
inline constexpr int kExitInfeasible = 2;
inline constexpr int kExitBudgetExceeded = 3;

struct GlobalOptions {
    std::string scenario_path;
    std::string out_dir;       // empty: no artifacts written
    std::string format = "csv";  // csv | json-lines
    std::uint64_t seed = 1;
    double grid_step = 0.01;
};

struct CatalogOptions {
    std::string override_path;  // optional catalog JSON
};

struct AnalyzeOptions {
    std::string solution_path;  // decision JSON; falls back to the scenario's
};

struct OptimizeOptions {
    std::string solver = "bnb";  // bnb | exhaustive
    bool compare = false;        // run the fixed-split comparison as well
    // Search ticks; evaluation-scale scenarios finish their warm starts and a
    // useful slice of the branch-and-bound within this in a few seconds.
    std::uint64_t budget = 20'000'000;
};

struct SimulateOptions {
    std::string solution_path;
    std::string model = "token_bucket";  // token_bucket | poisson
    double duration_s = 1.0;
    std::string sweep;  // "vdu:from:to" for the UE-count sweep
    std::vector<std::uint64_t> seeds;
};

struct CashflowOptions {
    std::string statement_path;
    int vdu_count = 4;
    double eta = 0.2585;
    int f_max = 320;
};

int command_catalog(const GlobalOptions& global, const CatalogOptions& options,
                    std::ostream& out, std::ostream& err);
int command_analyze(const GlobalOptions& global, const AnalyzeOptions& options,
                    std::ostream& out, std::ostream& err);
int command_optimize(const GlobalOptions& global, const OptimizeOptions& options,
                     std::ostream& out, std::ostream& err);
int command_simulate(const GlobalOptions& global, const SimulateOptions& options,
                     std::ostream& out, std::ostream& err);
int command_cashflow(const GlobalOptions& global, const CashflowOptions& options,
                     std::ostream& out, std::ostream& err);

}  // namespace slicebound

#endif  // SLICEBOUND_CLI_COMMANDS_HPP
