// cli_commands.cpp - Command implementations. See cli_commands.hpp.
//
// SPDX-License-Identifier: Apache-2.0
//

#include "slicebound/cli_commands.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "slicebound/analysis.hpp"
#include "slicebound/optimizer.hpp"
#include "slicebound/scenario.hpp"
#include "slicebound/simulator.hpp"

namespace slicebound {

namespace {

using Clock = std::chrono::steady_clock;

std::string read_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) {
        throw ScenarioError("cannot open " + path);
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

// One artifact on disk plus its role, for the run report.
struct Artifact {
    std::string role;
    std::string path;
};

class RunReport {
public:
    RunReport(std::string command) : command_(std::move(command)), start_(Clock::now()) {}

    void set_digest(std::uint64_t digest) { digest_ = digest; }
    void add(std::string role, std::string path) { artifacts_.push_back({std::move(role), std::move(path)}); }

    void print(std::ostream& out) const
    {
        const auto wall =
            std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - start_);
        out << "# command=" << command_ << " version=" << kVersion;
        if (digest_ != 0) {
            out << " scenario_digest=" << std::hex << std::setw(16) << std::setfill('0')
                << digest_ << std::dec << std::setfill(' ');
        }
        out << " wall_ms=" << wall.count();
        for (const Artifact& a : artifacts_) {
            out << ' ' << a.role << '=' << a.path;
        }
        out << '\n';
    }

private:
    std::string command_;
    Clock::time_point start_;
    std::uint64_t digest_ = 0;
    std::vector<Artifact> artifacts_;
};

std::string write_artifact(const GlobalOptions& global, const std::string& name,
                           const std::string& content)
{
    if (global.out_dir.empty()) {
        return "";
    }
    std::filesystem::create_directories(global.out_dir);
    const std::string path = (std::filesystem::path(global.out_dir) / name).string();
    std::ofstream out(path);
    out << content;
    return path;
}

Decision load_decision(const Scenario& scenario, const std::string& solution_path)
{
    if (!solution_path.empty()) {
        const nlohmann::json j = nlohmann::json::parse(read_file(solution_path));
        // Accept either a bare decision document or a solution wrapper.
        const std::string text = j.contains("decision") ? j.at("decision").dump() : j.dump();
        Decision d = decision_from_json(text);
        // Fill link distances from the topology.
        for (auto& [key, path] : d.paths) {
            path.link_distances_m.clear();
            for (std::size_t i = 0; i + 1 < path.nodes.size(); ++i) {
                path.link_distances_m.push_back(
                    scenario.topology.link_distance(path.nodes[i], path.nodes[i + 1]));
            }
        }
        return d;
    }
    if (scenario.decision.has_value()) {
        return *scenario.decision;
    }
    throw ScenarioError("no decision: pass --solution or embed one in the scenario");
}

std::string rows_to_json_lines(const std::vector<FlowDelayRow>& rows)
{
    std::ostringstream out;
    for (const FlowDelayRow& row : rows) {
        nlohmann::json j;
        j["flow"] = row.flow_id;
        j["slice"] = row.key.slice;
        j["vdu"] = row.key.vdu;
        j["path"] = row.path;
        j["d_net_s"] = row.breakdown.queueing_s;
        j["d_ran_s"] = row.breakdown.processing_s();
        j["d_pd_s"] = row.breakdown.propagation_s;
        j["total_s"] = row.breakdown.total_s();
        j["sla_s"] = row.sla_s;
        j["sla_margin_s"] = row.sla_margin_s;
        out << j.dump() << '\n';
    }
    return out.str();
}

}  // namespace

int command_catalog(const GlobalOptions& global, const CatalogOptions& options, std::ostream& out,
                    std::ostream& err)
{
    RunReport report("catalog");
    try {
        SplitCatalog catalog;
        if (!options.override_path.empty()) {
            catalog = SplitCatalog::from_json(read_file(options.override_path));
        } else if (!global.scenario_path.empty()) {
            catalog = Scenario::load(global.scenario_path).make_catalog();
        }
        const std::string csv = catalog.to_csv();
        out << csv;
        const std::string path = write_artifact(global, "catalog.csv", csv);
        if (!path.empty()) {
            report.add("catalog", path);
        }
        report.print(out);
        return kExitOk;
    } catch (const std::exception& e) {
        err << "catalog: " << e.what() << '\n';
        return kExitInputError;
    }
}

int command_analyze(const GlobalOptions& global, const AnalyzeOptions& options, std::ostream& out,
                    std::ostream& err)
{
    RunReport report("analyze");
    Scenario scenario;
    Decision decision;
    try {
        scenario = Scenario::load(global.scenario_path);
        report.set_digest(scenario.digest());
        decision = load_decision(scenario, options.solution_path);
    } catch (const std::exception& e) {
        err << "analyze: " << e.what() << '\n';
        return kExitInputError;
    }
    try {
        const FeasibilityReport feasibility = check_feasibility(scenario, decision);
        const std::vector<FlowDelayRow> rows = analyze_all(scenario, decision);
        const std::string body =
            global.format == "json-lines" ? rows_to_json_lines(rows) : delay_rows_to_csv(rows);
        out << body;
        const std::string path = write_artifact(global, "delays.csv", delay_rows_to_csv(rows));
        if (!path.empty()) {
            report.add("delays", path);
        }
        report.print(out);
        if (!feasibility.feasible) {
            err << "analyze: decision is infeasible: " << feasibility.summary() << '\n';
            return kExitInfeasible;
        }
        return kExitOk;
    } catch (const std::exception& e) {
        err << "analyze: " << e.what() << '\n';
        return kExitInfeasible;
    }
}

int command_optimize(const GlobalOptions& global, const OptimizeOptions& options,
                     std::ostream& out, std::ostream& err)
{
    RunReport report("optimize");
    Scenario scenario;
    try {
        scenario = Scenario::load(global.scenario_path);
        report.set_digest(scenario.digest());
    } catch (const std::exception& e) {
        err << "optimize: " << e.what() << '\n';
        return kExitInputError;
    }
    SolveOptions solve_options;
    solve_options.grid_step = global.grid_step;
    solve_options.budget = options.budget;
    const SolveResult result = options.solver == "exhaustive"
                                   ? solve_exhaustive(scenario, solve_options)
                                   : solve_bnb(scenario, solve_options);

    if (result.status == SolveStatus::Infeasible) {
        err << "optimize: no feasible decision\n";
        return kExitInfeasible;
    }
    if (!result.has_solution) {
        err << "optimize: search budget exhausted before any feasible decision\n";
        return kExitBudgetExceeded;
    }
    const std::string csv = solution_to_csv(scenario, result.solution);
    const std::string json = solution_to_json(scenario, result.solution);
    out << (global.format == "json-lines" ? json : csv);
    if (!global.out_dir.empty()) {
        report.add("solution_csv", write_artifact(global, "solution.csv", csv));
        report.add("solution_json", write_artifact(global, "solution.json", json));
    }

    if (options.compare) {
        const ModeComparison cmp = compare_modes(scenario, solve_options);
        std::ostringstream c;
        c.precision(10);
        c << "mode,status,profit,admitted\n";
        auto mode_row = [&](const char* name, const SolveResult& r) {
            c << name << ','
              << (r.status == SolveStatus::Optimal
                      ? "optimal"
                      : r.status == SolveStatus::Infeasible ? "infeasible" : "budget")
              << ',' << r.solution.profit << ',' << r.solution.total_admitted << '\n';
        };
        mode_row("ffs", cmp.ffs);
        mode_row("o1", cmp.o1_only);
        mode_row("o9", cmp.o9_only);
        c << "split,count\n";
        for (const auto& [split, count] : cmp.ffs_split_histogram) {
            c << to_string(split) << ',' << count << '\n';
        }
        out << c.str();
        if (!global.out_dir.empty()) {
            report.add("compare", write_artifact(global, "compare.csv", c.str()));
        }
    }
    report.print(out);
    return result.status == SolveStatus::BudgetExceeded ? kExitBudgetExceeded : kExitOk;
}

int command_simulate(const GlobalOptions& global, const SimulateOptions& options,
                     std::ostream& out, std::ostream& err)
{
    RunReport report("simulate");
    Scenario scenario;
    Decision decision;
    try {
        scenario = Scenario::load(global.scenario_path);
        report.set_digest(scenario.digest());
        decision = load_decision(scenario, options.solution_path);
    } catch (const std::exception& e) {
        err << "simulate: " << e.what() << '\n';
        return kExitInputError;
    }
    try {
        SimOptions sim;
        sim.model = options.model == "poisson" ? TrafficModel::Poisson : TrafficModel::TokenBucket;
        sim.seed = global.seed;
        sim.duration_s = options.duration_s;

        if (!options.sweep.empty()) {
            // vdu:from:to
            const auto first = options.sweep.find(':');
            const auto second = options.sweep.find(':', first + 1);
            if (first == std::string::npos || second == std::string::npos) {
                err << "simulate: --sweep expects vdu:from:to\n";
                return kExitInputError;
            }
            const NodeId vdu = options.sweep.substr(0, first);
            const int from = std::stoi(options.sweep.substr(first + 1, second - first - 1));
            const int to = std::stoi(options.sweep.substr(second + 1));
            std::vector<std::uint64_t> seeds = options.seeds;
            if (seeds.empty()) {
                seeds.push_back(global.seed);
            }
            const auto points = sweep_ue_count(scenario, decision, vdu, from, to, seeds, sim);
            const std::string csv = sweep_to_csv(points);
            out << csv;
            if (!global.out_dir.empty()) {
                report.add("sweep", write_artifact(global, "sweep.csv", csv));
            }
            report.print(out);
            return kExitOk;
        }

        const DelayStats stats = run_simulation(scenario, decision, sim);
        const std::string csv = stats_to_csv(stats);
        out << csv;
        out << "# delivered=" << stats.packets_delivered << " dropped=" << stats.packets_dropped
            << " max_delay_s=" << stats.max_delay_s()
            << " conformant=" << (stats.conformance_ok ? "yes" : "no") << " prng=" << stats.prng
            << " seed=" << sim.seed << '\n';
        if (!global.out_dir.empty()) {
            report.add("stats", write_artifact(global, "sim_stats.csv", csv));
        }
        report.print(out);
        return kExitOk;
    } catch (const std::exception& e) {
        err << "simulate: " << e.what() << '\n';
        return kExitInfeasible;
    }
}

int command_cashflow(const GlobalOptions& global, const CashflowOptions& options,
                     std::ostream& out, std::ostream& err)
{
    RunReport report("cashflow");
    try {
        const nlohmann::json j = nlohmann::json::parse(read_file(options.statement_path));
        CashFlowInput input;
        input.wireless_revenue = j.at("wireless_revenue_millions").get<double>();
        input.wireless_cost = j.at("wireless_cost_millions").get<double>();
        input.arpu_per_month = j.at("arpu_per_month").get<double>();
        input.months = j.value("months", 3);
        input.total_connections = j.at("total_connections_millions").get<double>();

        const CashFlowResult result = zeta_from_cashflow(input);
        const double g =
            gamma(options.vdu_count, static_cast<int>(kVnfCount), options.eta, result.zeta,
                  options.f_max);
        if (global.format == "json-lines") {
            nlohmann::json o;
            o["f_be_millions"] = result.break_even_connections;
            o["zeta"] = result.zeta;
            o["gamma"] = g;
            out << o.dump() << '\n';
        } else {
            out.precision(10);
            out << "f_be_millions," << result.break_even_connections << '\n';
            out << "zeta," << result.zeta << '\n';
            out << "gamma," << g << '\n';
        }
        report.print(out);
        return kExitOk;
    } catch (const std::exception& e) {
        err << "cashflow: " << e.what() << '\n';
        return kExitInputError;
    }
}

}  // namespace slicebound
