// slicebound_main.cpp - CLI entry point: catalog, analyze, optimize, simulate,
// cashflow.
//
// SPDX-License-Identifier: Apache-2.0
//

#include <iostream>

#include <CLI11.hpp>

#include "slicebound/cli_commands.hpp"

int main(int argc, char** argv)
{
    using namespace slicebound;

    CLI::App app{"Worst-case delay bounds and profit-optimal resource allocation "
                 "for sliced RAN transport networks"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);
    app.fallthrough();  // global flags may follow the subcommand

    GlobalOptions global;
    app.add_option("--scenario", global.scenario_path, "Scenario file (JSON)");
    app.add_option("--out-dir", global.out_dir, "Directory for CSV/JSON artifacts");
    app.add_option("--format", global.format, "Output format: csv or json-lines")
        ->check(CLI::IsMember({"csv", "json-lines"}));
    app.add_option("--seed", global.seed, "PRNG seed");
    app.add_option("--grid-step", global.grid_step, "Share discretization step")
        ->check(CLI::PositiveNumber);

    CatalogOptions catalog;
    CLI::App* cmd_catalog = app.add_subcommand("catalog", "Dump the functional split catalog");
    cmd_catalog->add_option("--config", catalog.override_path, "Catalog override (JSON)");

    AnalyzeOptions analyze;
    CLI::App* cmd_analyze =
        app.add_subcommand("analyze", "Per-flow worst-case delay breakdown for a decision");
    cmd_analyze->add_option("--solution", analyze.solution_path, "Decision/solution file (JSON)");

    OptimizeOptions optimize;
    CLI::App* cmd_optimize = app.add_subcommand("optimize", "Solve the allocation problem");
    cmd_optimize->add_option("--solver", optimize.solver, "bnb or exhaustive")
        ->check(CLI::IsMember({"bnb", "exhaustive"}));
    cmd_optimize->add_flag("--compare", optimize.compare,
                           "Also solve the O1-only and O9-only baselines");
    cmd_optimize->add_option("--budget", optimize.budget, "Search budget");

    SimulateOptions simulate;
    CLI::App* cmd_simulate = app.add_subcommand("simulate", "Packet-level simulation");
    cmd_simulate->add_option("--solution", simulate.solution_path,
                             "Decision/solution file (JSON)");
    cmd_simulate->add_option("--model", simulate.model, "token_bucket or poisson")
        ->check(CLI::IsMember({"token_bucket", "poisson"}));
    cmd_simulate->add_option("--duration", simulate.duration_s, "Simulated seconds")
        ->check(CLI::PositiveNumber);
    cmd_simulate->add_option("--sweep", simulate.sweep, "UE-count sweep: vdu:from:to");
    cmd_simulate->add_option("--seeds", simulate.seeds, "Seeds for the sweep");

    CashflowOptions cashflow;
    CLI::App* cmd_cashflow =
        app.add_subcommand("cashflow", "Break-even analysis from a financial statement");
    cmd_cashflow->add_option("statement", cashflow.statement_path, "Statement file (JSON)")
        ->required();
    cmd_cashflow->add_option("--vdus", cashflow.vdu_count, "vDU count for gamma");
    cmd_cashflow->add_option("--eta", cashflow.eta, "CU/DU cost ratio");
    cmd_cashflow->add_option("--f-max", cashflow.f_max, "UE capacity for gamma");

    CLI11_PARSE(app, argc, argv);

    if (cmd_catalog->parsed()) {
        return command_catalog(global, catalog, std::cout, std::cerr);
    }
    if (cmd_analyze->parsed()) {
        return command_analyze(global, analyze, std::cout, std::cerr);
    }
    if (cmd_optimize->parsed()) {
        return command_optimize(global, optimize, std::cout, std::cerr);
    }
    if (cmd_simulate->parsed()) {
        return command_simulate(global, simulate, std::cout, std::cerr);
    }
    if (cmd_cashflow->parsed()) {
        return command_cashflow(global, cashflow, std::cout, std::cerr);
    }
    return kExitInputError;
}
